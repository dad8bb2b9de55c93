//! Synthetic point clouds: wrapped Gaussian blobs, uniform boxes, the
//! bundled demonstration presets, and randomized test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::dbscan::DbscanParams;
use crate::error::{check_shape, Error, Result};
use crate::geometry::{Boundary, Domain, PointSet};

/// Axis-aligned Gaussian blob.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlobSpec {
    pub center: Vec<f64>,
    /// Standard deviation per dimension.
    pub sigma: Vec<f64>,
    pub count: usize,
}

impl BlobSpec {
    pub fn new(center: Vec<f64>, sigma: Vec<f64>, count: usize) -> Self {
        BlobSpec { center, sigma, count }
    }

    /// Same standard deviation in every dimension.
    pub fn isotropic(center: Vec<f64>, sigma: f64, count: usize) -> Self {
        let sigma = vec![sigma; center.len()];
        BlobSpec { center, sigma, count }
    }

    fn validate(&self, domain: &Domain) -> Result<()> {
        check_shape(domain.dim(), self.center.len())?;
        check_shape(domain.dim(), self.sigma.len())?;
        if let Some(s) = self.sigma.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::Parameter(format!(
                "blob sigma must be positive and finite, got {s}"
            )));
        }
        for (d, (&c, bc)) in self.center.iter().zip(domain.boundaries()).enumerate() {
            if !bc.contains_wrapped(c) {
                return Err(Error::Parameter(format!(
                    "blob center coordinate {d} = {c} lies outside the domain"
                )));
            }
        }
        Ok(())
    }
}

/// Draws each blob in turn and wraps periodic coordinates into the domain.
pub fn generate_blobs(specs: &[BlobSpec], domain: &Domain, seed: u64) -> Result<PointSet> {
    for spec in specs {
        spec.validate(domain)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = domain.dim();
    let total = specs.iter().map(|s| s.count).sum::<usize>();
    let mut coords = Vec::with_capacity(total * dim);
    for spec in specs {
        let normals = spec
            .center
            .iter()
            .zip(&spec.sigma)
            .map(|(&c, &s)| Normal::new(c, s).map_err(|e| Error::Parameter(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        for _ in 0..spec.count {
            for (normal, bc) in normals.iter().zip(domain.boundaries()) {
                coords.push(bc.wrap(normal.sample(&mut rng)));
            }
        }
    }
    PointSet::new(dim, coords)
}

/// Uniform points in an explicit box `[lo, hi)` per dimension.
pub fn generate_uniform_box(n: usize, bounds: &[(f64, f64)], seed: u64) -> Result<PointSet> {
    if bounds.is_empty() {
        return Err(Error::Parameter(
            "uniform box needs at least one dimension".into(),
        ));
    }
    if let Some((lo, hi)) = bounds
        .iter()
        .find(|(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo < hi))
    {
        return Err(Error::Parameter(format!("invalid box extent [{lo}, {hi})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(n * bounds.len());
    for _ in 0..n {
        for &(lo, hi) in bounds {
            coords.push(rng.random_range(lo..hi));
        }
    }
    PointSet::new(bounds.len(), coords)
}

/// Uniform points over the domain box. Periodic dimensions use their period;
/// open dimensions, which carry no extent, use `[0, 1)`.
pub fn generate_uniform(n: usize, domain: &Domain, seed: u64) -> Result<PointSet> {
    let bounds: Vec<(f64, f64)> = domain
        .boundaries()
        .iter()
        .map(|b| match *b {
            Boundary::Periodic { lower, upper } => (lower, upper),
            Boundary::Open => (0.0, 1.0),
        })
        .collect();
    generate_uniform_box(n, &bounds, seed)
}

/// A bundled demonstration dataset with its recommended parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub domain: Domain,
    pub params: DbscanParams,
    pub blobs: Vec<BlobSpec>,
    /// Index into `blobs` of the blob placed across a periodic boundary.
    pub straddling: usize,
    pub seed: u64,
}

impl Preset {
    pub fn generate(&self) -> Result<PointSet> {
        generate_blobs(&self.blobs, &self.domain, self.seed)
    }

    pub fn generate_with_seed(&self, seed: u64) -> Result<PointSet> {
        generate_blobs(&self.blobs, &self.domain, seed)
    }

    /// Point index range occupied by blob `k` in the generated data.
    pub fn blob_range(&self, k: usize) -> std::ops::Range<usize> {
        let start: usize = self.blobs[..k].iter().map(|b| b.count).sum();
        start..start + self.blobs[k].count
    }
}

pub const PRESET_NAMES: [&str; 5] = ["fig1", "fig2", "fig3", "fig3-single", "fig4"];

/// Looks up a bundled preset. All presets use unit periods and `min_points = 5`.
pub fn preset(name: &str) -> Option<Preset> {
    let unit = Boundary::Periodic {
        lower: 0.0,
        upper: 1.0,
    };
    let iso = BlobSpec::isotropic;
    let params = |epsilon| DbscanParams {
        epsilon,
        min_points: 5,
    };
    let p = match name {
        "fig1" => Preset {
            name: "fig1",
            description: "2D doubly periodic, epsilon 0.06, blob across the left/right seam",
            domain: fixed(vec![unit; 2]),
            params: params(0.06),
            blobs: vec![
                BlobSpec::new(vec![0.0, 0.55], vec![0.035, 0.06], 180),
                iso(vec![0.45, 0.25], 0.04, 140),
                iso(vec![0.55, 0.75], 0.035, 120),
            ],
            straddling: 0,
            seed: 11,
        },
        "fig2" => Preset {
            name: "fig2",
            description: "1D periodic, epsilon 0.05, blob across the seam",
            domain: fixed(vec![unit]),
            params: params(0.05),
            blobs: vec![
                iso(vec![0.0], 0.03, 60),
                iso(vec![0.35], 0.025, 40),
                iso(vec![0.65], 0.025, 40),
            ],
            straddling: 0,
            seed: 7,
        },
        "fig3" => Preset {
            name: "fig3",
            description: "2D doubly periodic, epsilon 0.08, blob on a corner",
            domain: fixed(vec![unit; 2]),
            params: params(0.08),
            blobs: vec![
                iso(vec![0.98, 0.02], 0.05, 200),
                iso(vec![0.5, 0.5], 0.05, 150),
                iso(vec![0.25, 0.75], 0.04, 100),
            ],
            straddling: 0,
            seed: 23,
        },
        "fig3-single" => Preset {
            name: "fig3-single",
            description: "2D, x periodic and y open, epsilon 0.08, blob across the x seam",
            domain: fixed(vec![unit, Boundary::Open]),
            params: params(0.08),
            blobs: vec![
                iso(vec![0.98, 0.5], 0.05, 200),
                iso(vec![0.5, 0.2], 0.05, 150),
                iso(vec![0.5, 0.8], 0.04, 100),
            ],
            straddling: 0,
            seed: 29,
        },
        "fig4" => Preset {
            name: "fig4",
            description: "3D triply periodic, epsilon 0.08, blob on a corner",
            domain: fixed(vec![unit; 3]),
            params: params(0.08),
            blobs: vec![
                iso(vec![0.01, 0.99, 0.02], 0.05, 500),
                iso(vec![0.5, 0.5, 0.5], 0.05, 300),
                iso(vec![0.25, 0.7, 0.3], 0.04, 200),
            ],
            straddling: 0,
            seed: 31,
        },
        _ => return None,
    };
    Some(p)
}

fn fixed(dims: Vec<Boundary>) -> Domain {
    Domain::new(dims).expect("preset domains are valid")
}

/// A randomized clustering problem for oracle sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstance {
    pub points: PointSet,
    pub domain: Domain,
    pub params: DbscanParams,
}

/// Builds a random instance: `D` in 1..=3 with each dimension independently
/// open or periodic, 10..=500 points mixing Gaussian blobs with uniform
/// background, `epsilon` uniform in `(0.01, 0.4)` times the smallest
/// extent, and `min_points` in 2..=8.
///
/// Blobs are biased towards faces so that seams are exercised often.
pub fn random_instance(seed: u64) -> RandomInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.random_range(1..=3usize);
    let mut extents = Vec::with_capacity(dim);
    let mut dims = Vec::with_capacity(dim);
    for _ in 0..dim {
        let lower = rng.random_range(-1.0..1.0);
        let period = rng.random_range(0.5..2.0);
        extents.push((lower, lower + period));
        dims.push(if rng.random_bool(0.5) {
            Boundary::Periodic {
                lower,
                upper: lower + period,
            }
        } else {
            Boundary::Open
        });
    }
    let domain = Domain::new(dims).expect("random domain is valid");
    let shortest = extents
        .iter()
        .map(|(lo, hi)| hi - lo)
        .fold(f64::INFINITY, f64::min);
    let epsilon = shortest * rng.random_range(0.01..0.4);
    let min_points = rng.random_range(2..=8usize);
    let n = rng.random_range(10..=500usize);

    let n_blobs = rng.random_range(1..=4usize);
    let background = rng.random_range(0.0..0.5);
    let sigma = epsilon * rng.random_range(0.3..2.0);
    let centers: Vec<Vec<f64>> = (0..n_blobs)
        .map(|_| {
            extents
                .iter()
                .map(|&(lo, hi)| {
                    if rng.random_bool(0.6) {
                        // near one of the two faces
                        let off = rng.random_range(0.0..2.0 * epsilon);
                        if rng.random_bool(0.5) {
                            lo + off
                        } else {
                            hi - off
                        }
                    } else {
                        rng.random_range(lo..hi)
                    }
                })
                .collect()
        })
        .collect();

    let mut coords = Vec::with_capacity(n * dim);
    for _ in 0..n {
        if rng.random_bool(background) {
            for &(lo, hi) in &extents {
                coords.push(rng.random_range(lo..hi));
            }
        } else {
            let c = &centers[rng.random_range(0..n_blobs)];
            for (d, bc) in domain.boundaries().iter().enumerate() {
                let x = c[d] + sigma * rng.sample::<f64, _>(rand_distr::StandardNormal);
                coords.push(bc.wrap(x));
            }
        }
    }

    RandomInstance {
        points: PointSet::new(dim, coords).expect("consistent shape"),
        domain,
        params: DbscanParams { epsilon, min_points },
    }
}
