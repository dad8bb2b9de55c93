//! Quadratic reference implementation and clustering comparison.
//!
//! [`dbscan_bruteforce`] computes every pairwise minimum-image distance, so it
//! needs no padding and no spatial index. It is the yardstick the periodic
//! pipeline is checked against.

use std::collections::{HashMap, VecDeque};

use crate::dbscan::{DbscanParams, Label, LabelVector, NOISE};
use crate::error::{check_shape, Result};
use crate::geometry::{min_image_distance_sq, wrap_points, Domain, PointSet};

/// Inclusive torus-metric neighborhoods of every point.
fn neighborhoods(points: &PointSet, domain: &Domain, epsilon: f64) -> Result<Vec<Vec<usize>>> {
    let wrapped = wrap_points(points, domain)?;
    let bounds = domain.boundaries();
    let eps_sq = epsilon * epsilon;
    let n = wrapped.len();
    let mut out = vec![Vec::new(); n];
    for i in 0..n {
        out[i].push(i);
        for j in i + 1..n {
            if min_image_distance_sq(wrapped.point(i), wrapped.point(j), bounds) <= eps_sq {
                out[i].push(j);
                out[j].push(i);
            }
        }
    }
    for nbrs in &mut out {
        nbrs.sort_unstable();
    }
    Ok(out)
}

fn validate(points: &PointSet, domain: &Domain, params: &DbscanParams) -> Result<()> {
    params.validate()?;
    check_shape(domain.dim(), points.dim())?;
    domain.check_radius(params.epsilon)
}

/// Core flags under the torus metric.
pub fn core_points_bruteforce(
    points: &PointSet,
    domain: &Domain,
    params: &DbscanParams,
) -> Result<Vec<bool>> {
    validate(points, domain, params)?;
    Ok(neighborhoods(points, domain, params.epsilon)?
        .iter()
        .map(|n| n.len() >= params.min_points)
        .collect())
}

/// DBSCAN with exhaustive minimum-image neighborhoods.
///
/// Clusters are seeded from core points in input order and grown
/// breadth-first; a non-core point joins the first cluster that reaches it.
pub fn dbscan_bruteforce(points: &PointSet, domain: &Domain, params: &DbscanParams) -> Result<LabelVector> {
    validate(points, domain, params)?;
    let nbrs = neighborhoods(points, domain, params.epsilon)?;
    let core: Vec<bool> = nbrs.iter().map(|n| n.len() >= params.min_points).collect();

    let mut labels = vec![NOISE; points.len()];
    let mut next: Label = 0;
    let mut queue = VecDeque::new();
    for seed in 0..points.len() {
        if !core[seed] || labels[seed] != NOISE {
            continue;
        }
        labels[seed] = next;
        queue.push_back(seed);
        while let Some(c) = queue.pop_front() {
            for &j in &nbrs[c] {
                if labels[j] == NOISE {
                    labels[j] = next;
                    if core[j] {
                        queue.push_back(j);
                    }
                }
            }
        }
        next += 1;
    }
    Ok(LabelVector::new(labels))
}

/// Point-category counts for one labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClusteringSummary {
    pub clusters: usize,
    pub core: usize,
    pub border: usize,
    pub noise: usize,
}

/// Structural comparison of two labelings of the same points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterComparison {
    pub core_partition_match: bool,
    pub noise_match: bool,
    /// Non-core points whose assigned cluster has no core point within epsilon.
    pub border_violations: Vec<usize>,
    pub left: ClusteringSummary,
    pub right: ClusteringSummary,
}

impl ClusterComparison {
    pub fn equivalent(&self) -> bool {
        self.core_partition_match && self.noise_match && self.border_violations.is_empty()
    }
}

impl std::fmt::Display for ClusterComparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = |s: &ClusteringSummary| {
            format!(
                "clusters={} core={} border={} noise={}",
                s.clusters, s.core, s.border, s.noise
            )
        };
        writeln!(f, "equivalent: {}", self.equivalent())?;
        writeln!(f, "core partition match: {}", self.core_partition_match)?;
        writeln!(f, "noise match: {}", self.noise_match)?;
        writeln!(f, "border violations: {}", self.border_violations.len())?;
        writeln!(f, "left:  {}", side(&self.left))?;
        write!(f, "right: {}", side(&self.right))
    }
}

/// Compares two labelings by core partition, noise set, and border validity.
///
/// Core status is recomputed under the torus metric, so neither input is
/// trusted. Cluster ids may differ by any permutation.
pub fn compare_clusterings(
    a: &LabelVector,
    b: &LabelVector,
    points: &PointSet,
    domain: &Domain,
    params: &DbscanParams,
) -> Result<ClusterComparison> {
    validate(points, domain, params)?;
    check_shape(points.len(), a.len())?;
    check_shape(points.len(), b.len())?;
    let nbrs = neighborhoods(points, domain, params.epsilon)?;
    let core: Vec<bool> = nbrs.iter().map(|n| n.len() >= params.min_points).collect();

    let noise_match = a.iter().zip(b).all(|(&x, &y)| (x == NOISE) == (y == NOISE));

    let mut forward: HashMap<Label, Label> = HashMap::new();
    let mut backward: HashMap<Label, Label> = HashMap::new();
    let mut core_partition_match = true;
    for i in (0..points.len()).filter(|&i| core[i]) {
        let (x, y) = (a[i], b[i]);
        if x < 0 || y < 0 || *forward.entry(x).or_insert(y) != y || *backward.entry(y).or_insert(x) != x {
            core_partition_match = false;
            break;
        }
    }

    let mut border_violations = Vec::new();
    for labels in [a, b] {
        for i in 0..points.len() {
            let l = labels[i];
            if core[i] || l < 0 {
                continue;
            }
            if !nbrs[i].iter().any(|&j| core[j] && labels[j] == l) {
                border_violations.push(i);
            }
        }
    }
    border_violations.sort_unstable();
    border_violations.dedup();

    let summarize = |labels: &LabelVector| ClusteringSummary {
        clusters: labels.n_clusters(),
        core: (0..labels.len()).filter(|&i| core[i] && labels[i] >= 0).count(),
        border: (0..labels.len()).filter(|&i| !core[i] && labels[i] >= 0).count(),
        noise: labels.n_noise(),
    };

    Ok(ClusterComparison {
        core_partition_match,
        noise_match,
        border_violations,
        left: summarize(a),
        right: summarize(b),
    })
}
