//! Domain description, point storage and the distance functions used
//! throughout the crate.
//!
//! Every dimension of a [`Domain`] is either open or periodic. Periodic
//! dimensions use the half-open canonical interval `[lower, upper)`, so each
//! point on the torus has exactly one wrapped representative.

use crate::error::{check_shape, Error, Result};

/// Boundary condition of a single dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    Open,
    Periodic { lower: f64, upper: f64 },
}

impl Boundary {
    /// Periodic boundary on `[lower, upper)`.
    pub fn periodic(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) || lower >= upper {
            return Err(Error::Parameter(format!(
                "periodic bounds must be finite with lower < upper, got [{lower}, {upper})"
            )));
        }
        Ok(Boundary::Periodic { lower, upper })
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Boundary::Periodic { .. })
    }

    /// Period length, or `None` for an open dimension.
    pub fn period(&self) -> Option<f64> {
        match *self {
            Boundary::Open => None,
            Boundary::Periodic { lower, upper } => Some(upper - lower),
        }
    }

    /// Maps `x` into `[lower, upper)`; open dimensions return `x` unchanged.
    pub fn wrap(&self, x: f64) -> f64 {
        match *self {
            Boundary::Open => x,
            Boundary::Periodic { lower, upper } => {
                let period = upper - lower;
                let mut r = (x - lower).rem_euclid(period);
                // rem_euclid of a tiny negative offset can round up to the period itself
                if r >= period {
                    r = 0.0;
                }
                let wrapped = lower + r;
                if wrapped >= upper {
                    lower
                } else {
                    wrapped
                }
            }
        }
    }

    /// Whether `x` already lies in the canonical interval.
    pub fn contains_wrapped(&self, x: f64) -> bool {
        match *self {
            Boundary::Open => x.is_finite(),
            Boundary::Periodic { lower, upper } => x >= lower && x < upper,
        }
    }

    /// Per-dimension separation under this boundary condition.
    #[inline]
    pub fn separation(&self, a: f64, b: f64) -> f64 {
        let delta = (a - b).abs();
        match *self {
            Boundary::Open => delta,
            Boundary::Periodic { lower, upper } => {
                let period = upper - lower;
                let delta = if delta >= period {
                    delta.rem_euclid(period)
                } else {
                    delta
                };
                delta.min(period - delta)
            }
        }
    }
}

/// Ordered per-dimension boundary conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    dims: Vec<Boundary>,
}

impl Domain {
    pub fn new(dims: Vec<Boundary>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Parameter("a domain needs at least one dimension".into()));
        }
        for b in &dims {
            if let Boundary::Periodic { lower, upper } = *b {
                Boundary::periodic(lower, upper)?;
            }
        }
        Ok(Domain { dims })
    }

    /// `dim` open dimensions.
    pub fn open(dim: usize) -> Result<Self> {
        Domain::new(vec![Boundary::Open; dim])
    }

    /// `dim` periodic dimensions, all on `[lower, upper)`.
    pub fn periodic(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Domain::new(vec![Boundary::periodic(lower, upper)?; dim])
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn boundaries(&self) -> &[Boundary] {
        &self.dims
    }

    pub fn is_all_open(&self) -> bool {
        self.dims.iter().all(|b| !b.is_periodic())
    }

    /// Rejects radii that make the minimum image ambiguous (`2 * epsilon >= period`).
    pub fn check_radius(&self, epsilon: f64) -> Result<()> {
        for (d, b) in self.dims.iter().enumerate() {
            if let Some(period) = b.period() {
                if 2.0 * epsilon >= period {
                    return Err(Error::Parameter(format!(
                        "epsilon {epsilon} too large for periodic dimension {d}: \
                         2*epsilon must be smaller than the period {period}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `N` points of dimension `D`, stored row-major.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from a flat row-major coordinate buffer.
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter("points need at least one dimension".into()));
        }
        if coords.len() % dim != 0 {
            return Err(Error::Shape {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        Ok(PointSet { dim, coords })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        PointSet::new(dim, Vec::new())
    }

    pub fn from_rows<R: AsRef<[f64]>>(dim: usize, rows: &[R]) -> Result<Self> {
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            let row = row.as_ref();
            check_shape(dim, row.len())?;
            coords.extend_from_slice(row);
        }
        PointSet::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn push(&mut self, p: &[f64]) -> Result<()> {
        check_shape(self.dim, p.len())?;
        self.coords.extend_from_slice(p);
        Ok(())
    }

    /// Appends every point of `other`.
    pub fn extend_from(&mut self, other: &PointSet) -> Result<()> {
        check_shape(self.dim, other.dim)?;
        self.coords.extend_from_slice(&other.coords);
        Ok(())
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }
}

/// Maps every periodic coordinate into its canonical interval.
pub fn wrap_points(points: &PointSet, domain: &Domain) -> Result<PointSet> {
    check_shape(domain.dim(), points.dim())?;
    let bounds = domain.boundaries();
    let coords = points
        .coords
        .iter()
        .enumerate()
        .map(|(k, &x)| bounds[k % points.dim].wrap(x))
        .collect();
    PointSet::new(points.dim, coords)
}

/// Plain Euclidean distance.
#[inline]
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    euclidean_distance_sq(a, b).sqrt()
}

#[inline]
pub(crate) fn euclidean_distance_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Euclidean distance with the minimum-image convention applied in every
/// periodic dimension.
pub fn min_image_distance(a: &[f64], b: &[f64], domain: &Domain) -> Result<f64> {
    check_shape(domain.dim(), a.len())?;
    check_shape(domain.dim(), b.len())?;
    Ok(min_image_distance_sq(a, b, domain.boundaries()).sqrt())
}

#[inline]
pub(crate) fn min_image_distance_sq(a: &[f64], b: &[f64], bounds: &[Boundary]) -> f64 {
    a.iter()
        .zip(b)
        .zip(bounds)
        .map(|((&x, &y), bc)| {
            let s = bc.separation(x, y);
            s * s
        })
        .sum()
}
