//! Conventional DBSCAN over an open domain.
//!
//! `min_points` counts the point itself: a point is core when its inclusive
//! `epsilon`-neighborhood holds at least `min_points` points, itself included.
//! Clusters are numbered from 0 in the order their first core point is met
//! while scanning the input; noise is [`NOISE`].

use std::collections::{BTreeSet, VecDeque};
use std::ops::Index;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::index::NeighborIndex;

pub type Label = i64;

/// Label given to points that belong to no cluster.
pub const NOISE: Label = -1;

const UNVISITED: Label = -2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbscanParams {
    pub epsilon: f64,
    pub min_points: usize,
}

impl DbscanParams {
    pub fn new(epsilon: f64, min_points: usize) -> Result<Self> {
        let params = DbscanParams { epsilon, min_points };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::Parameter(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        if self.min_points == 0 {
            return Err(Error::Parameter("min_points must be at least 1".into()));
        }
        Ok(())
    }
}

/// One cluster label per point, in point order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelVector(Vec<Label>);

impl LabelVector {
    pub fn new(labels: Vec<Label>) -> Self {
        LabelVector(labels)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Label> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.0.iter()
    }

    /// Number of distinct cluster ids (noise excluded).
    pub fn n_clusters(&self) -> usize {
        self.0.iter().filter(|&&l| l >= 0).collect::<BTreeSet<_>>().len()
    }

    pub fn n_noise(&self) -> usize {
        self.0.iter().filter(|&&l| l == NOISE).count()
    }
}

impl Index<usize> for LabelVector {
    type Output = Label;

    fn index(&self, i: usize) -> &Label {
        &self.0[i]
    }
}

impl From<Vec<Label>> for LabelVector {
    fn from(v: Vec<Label>) -> Self {
        LabelVector(v)
    }
}

impl<'a> IntoIterator for &'a LabelVector {
    type Item = &'a Label;
    type IntoIter = std::slice::Iter<'a, Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Clusters `points` with open-boundary DBSCAN.
pub fn dbscan(points: &PointSet, params: &DbscanParams) -> Result<LabelVector> {
    dbscan_with_core(points, params).map(|(labels, _)| labels)
}

/// Like [`dbscan`], also returning which points are core.
pub fn dbscan_with_core(points: &PointSet, params: &DbscanParams) -> Result<(LabelVector, Vec<bool>)> {
    params.validate()?;
    let index = NeighborIndex::build(points, params.epsilon)?;
    let n = points.len();

    let mut labels = vec![UNVISITED; n];
    let mut core = vec![false; n];
    let mut next_cluster: Label = 0;
    let mut neighbors = Vec::new();
    let mut queue = VecDeque::new();

    let region = |i: usize, out: &mut Vec<usize>| {
        out.clear();
        index.neighbors_into(points.point(i), out);
        // ascending order keeps border claims independent of the grid layout
        out.sort_unstable();
    };

    for seed in 0..n {
        if labels[seed] != UNVISITED {
            continue;
        }
        region(seed, &mut neighbors);
        if neighbors.len() < params.min_points {
            labels[seed] = NOISE;
            continue;
        }

        let cluster = next_cluster;
        next_cluster += 1;
        labels[seed] = cluster;
        core[seed] = true;
        queue.clear();
        queue.extend(neighbors.iter().copied());

        while let Some(j) = queue.pop_front() {
            match labels[j] {
                // already visited and found non-core: border point
                NOISE => labels[j] = cluster,
                UNVISITED => {
                    labels[j] = cluster;
                    region(j, &mut neighbors);
                    if neighbors.len() >= params.min_points {
                        core[j] = true;
                        queue.extend(neighbors.iter().copied());
                    }
                }
                _ => {}
            }
        }
    }

    Ok((LabelVector(labels), core))
}
