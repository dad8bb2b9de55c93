//! DBSCAN on domains with periodic dimensions.
//!
//! The periodic problem is reduced to an open one:
//!
//! 1. every point within `epsilon` of a periodic face is copied across to
//!    the opposite side, extending the domain by `epsilon` per periodic
//!    dimension ([`extend_periodic`]);
//! 2. ordinary DBSCAN runs on originals followed by copies;
//! 3. a copy whose label differs from its origin's links the two cluster
//!    ids ([`link_labels`]);
//! 4. each linked class is replaced by its smallest id and ids are
//!    compacted to `0..k` ([`resolve_labels`]).
//!
//! Step 4 also handles a case the linking step alone does not: an original
//! can come out as noise while one of its copies is clustered, because copies
//! near the outer edge of the extension have truncated neighborhoods and may
//! fail to be core. Originals always see their full neighborhood, so the
//! copy's cluster is genuine and the original adopts it.

mod link;

use std::collections::BTreeMap;

pub use link::LinkTable;

use crate::dbscan::{dbscan_with_core, DbscanParams, Label, LabelVector, NOISE};
use crate::error::{check_shape, Error, Result};
use crate::geometry::{wrap_points, Boundary, Domain, PointSet};

/// Periodic copies of points near periodic faces.
#[derive(Debug, Clone, PartialEq)]
pub struct PaddedSet {
    pub points: PointSet,
    /// Index into the original point set for each copy.
    pub origin: Vec<usize>,
}

impl PaddedSet {
    pub fn len(&self) -> usize {
        self.origin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origin.is_empty()
    }
}

/// Labels plus bookkeeping from a periodic run.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicClustering {
    pub labels: LabelVector,
    pub n_padded: usize,
}

/// Copies every point lying within `epsilon` of a periodic face to the
/// opposite side, including edge and corner images.
///
/// Copies are emitted by origin index, then by shift vector in lexicographic
/// order (`-1 < 0 < +1` per dimension).
pub fn extend_periodic(points: &PointSet, domain: &Domain, epsilon: f64) -> Result<PaddedSet> {
    check_shape(domain.dim(), points.dim())?;
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Parameter(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    domain.check_radius(epsilon)?;

    let bounds = domain.boundaries();
    let dim = points.dim();
    let mut padded = PointSet::empty(dim)?;
    let mut origin = Vec::new();

    let mut choices: Vec<Vec<i8>> = vec![Vec::with_capacity(3); dim];
    let mut zero = vec![true; dim];
    let mut copy = vec![0.0; dim];

    for (i, p) in points.iter().enumerate() {
        let mut near_face = false;
        for (d, (&x, bc)) in p.iter().zip(bounds).enumerate() {
            if !bc.contains_wrapped(x) {
                return Err(Error::Input(format!(
                    "point {i} coordinate {d} = {x} is not wrapped into the domain"
                )));
            }
            let c = &mut choices[d];
            c.clear();
            if let Boundary::Periodic { lower, upper } = *bc {
                if upper - x <= epsilon {
                    c.push(-1);
                }
                c.push(0);
                if x - lower <= epsilon {
                    c.push(1);
                }
            } else {
                c.push(0);
            }
            near_face |= c.len() > 1;
        }
        if !near_face {
            continue;
        }

        // mixed-radix enumeration of the shift vectors, last dimension fastest
        let combos: usize = choices.iter().map(Vec::len).product();
        for k in 0..combos {
            let mut rest = k;
            for d in (0..dim).rev() {
                let c = &choices[d];
                let shift = c[rest % c.len()];
                rest /= c.len();
                copy[d] = p[d] + f64::from(shift) * bounds[d].period().unwrap_or(0.0);
                zero[d] = shift == 0;
            }
            if zero.iter().all(|&z| z) {
                continue;
            }
            padded.push(&copy)?;
            origin.push(i);
        }
    }

    Ok(PaddedSet {
        points: padded,
        origin,
    })
}

fn check_layout(labels_all: &LabelVector, padded: &PaddedSet, n_original: usize) -> Result<()> {
    check_shape(n_original + padded.len(), labels_all.len())?;
    if let Some(&o) = padded.origin.iter().find(|&&o| o >= n_original) {
        return Err(Error::Input(format!(
            "padded origin index {o} out of range for {n_original} original points"
        )));
    }
    Ok(())
}

/// Links the cluster id carried by a copy to its origin's id when they
/// differ and the origin is a core point.
///
/// `labels_all` and `core_all` hold the originals first, then one entry per
/// copy in emission order. A border origin is never linked: it may be
/// reachable from two genuinely distinct clusters, one seen through the
/// original and one through the copy.
pub fn link_labels(
    labels_all: &LabelVector,
    core_all: &[bool],
    padded: &PaddedSet,
    n_original: usize,
) -> Result<LinkTable> {
    check_layout(labels_all, padded, n_original)?;
    check_shape(labels_all.len(), core_all.len())?;
    let mut links = LinkTable::new();
    for (k, &o) in padded.origin.iter().enumerate() {
        let l_pad = labels_all[n_original + k];
        let l_orig = labels_all[o];
        if core_all[o] && l_pad >= 0 && l_orig >= 0 && l_pad != l_orig {
            links.union(l_pad, l_orig);
        }
    }
    Ok(links)
}

/// Maps each original's label to its class representative, lets noise
/// originals adopt a clustered copy's label, and compacts ids to `0..k`
/// preserving representative order.
pub fn resolve_labels(
    labels_all: &LabelVector,
    links: &LinkTable,
    padded: &PaddedSet,
    n_original: usize,
) -> Result<LabelVector> {
    check_layout(labels_all, padded, n_original)?;

    let mut resolved: Vec<Label> = labels_all.as_slice()[..n_original]
        .iter()
        .map(|&l| if l >= 0 { links.find(l) } else { NOISE })
        .collect();

    let mut adopted: BTreeMap<usize, Label> = BTreeMap::new();
    for (k, &o) in padded.origin.iter().enumerate() {
        let l_pad = labels_all[n_original + k];
        if labels_all[o] == NOISE && l_pad >= 0 {
            let r = links.find(l_pad);
            adopted
                .entry(o)
                .and_modify(|cur| *cur = (*cur).min(r))
                .or_insert(r);
        }
    }
    for (o, r) in adopted {
        resolved[o] = r;
    }

    let mut reps: Vec<Label> = resolved.iter().copied().filter(|&l| l >= 0).collect();
    reps.sort_unstable();
    reps.dedup();
    for l in resolved.iter_mut().filter(|l| **l >= 0) {
        *l = reps.binary_search(l).expect("representative present") as Label;
    }
    Ok(LabelVector::new(resolved))
}

/// Runs the full periodic pipeline and reports how many copies were added.
pub fn cluster_periodic(
    points: &PointSet,
    domain: &Domain,
    params: &DbscanParams,
) -> Result<PeriodicClustering> {
    params.validate()?;
    check_shape(domain.dim(), points.dim())?;
    domain.check_radius(params.epsilon)?;
    if let Some(bad) = points.coords().iter().position(|x| !x.is_finite()) {
        return Err(Error::Input(format!(
            "non-finite coordinate in point {}",
            bad / points.dim()
        )));
    }

    let wrapped = wrap_points(points, domain)?;
    let padded = extend_periodic(&wrapped, domain, params.epsilon)?;
    let n = wrapped.len();

    let (labels_all, core_all) = if padded.is_empty() {
        dbscan_with_core(&wrapped, params)?
    } else {
        let mut all = wrapped;
        all.extend_from(&padded.points)?;
        dbscan_with_core(&all, params)?
    };

    let links = link_labels(&labels_all, &core_all, &padded, n)?;
    let labels = resolve_labels(&labels_all, &links, &padded, n)?;
    Ok(PeriodicClustering {
        labels,
        n_padded: padded.len(),
    })
}

/// DBSCAN honoring the domain's periodic dimensions. Labels follow input order.
pub fn dbscan_periodic(points: &PointSet, domain: &Domain, params: &DbscanParams) -> Result<LabelVector> {
    cluster_periodic(points, domain, params).map(|c| c.labels)
}
