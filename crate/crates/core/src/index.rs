//! Exact fixed-radius neighbor search in open (non-periodic) space.
//!
//! Points are bucketed into a uniform grid whose cell edge is slightly larger
//! than the search radius, so every neighbor of a query lives in the 3^D
//! cells surrounding the query's own cell. When the occupied bounding box is
//! small relative to `N` the grid is stored densely (CSR offsets per cell);
//! otherwise only occupied cells are kept in a hash map.

use std::collections::HashMap;

use crate::error::{check_shape, Error, Result};
use crate::geometry::{euclidean_distance_sq, PointSet};

/// Fixed-radius neighbor index over a set of points.
///
/// A query returns every indexed point at Euclidean distance `<= epsilon`
/// from the center, including a point equal to the center.
#[derive(Debug, Clone)]
pub struct NeighborIndex {
    dim: usize,
    epsilon: f64,
    eps_sq: f64,
    cell: f64,
    origin: Vec<f64>,
    /// Coordinates reordered so that each cell's points are contiguous.
    sorted_coords: Vec<f64>,
    /// Original index of each reordered point.
    sorted_ids: Vec<usize>,
    grid: Grid,
    /// Flattened {-1, 0, 1}^D offsets.
    offsets: Vec<i64>,
}

#[derive(Debug, Clone)]
enum Grid {
    Dense {
        shape: Vec<i64>,
        /// `starts[c]..starts[c + 1]` are the sorted positions of cell `c`.
        starts: Vec<usize>,
    },
    Sparse {
        cells: HashMap<Vec<i64>, (usize, usize)>,
    },
}

/// Dense storage is used while the cell count stays within this multiple of `N`.
const DENSE_CELLS_PER_POINT: usize = 8;
const DENSE_MIN_CELLS: usize = 1 << 21;

impl NeighborIndex {
    pub fn build(points: &PointSet, epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::Parameter(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        if let Some(bad) = points.coords().iter().position(|x| !x.is_finite()) {
            return Err(Error::Input(format!(
                "non-finite coordinate in point {}",
                bad / points.dim()
            )));
        }

        let dim = points.dim();
        let n = points.len();
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for p in points.iter() {
            for d in 0..dim {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        if n == 0 {
            lo.iter_mut().for_each(|x| *x = 0.0);
            hi.iter_mut().for_each(|x| *x = 0.0);
        }

        // Widen the cell a little beyond epsilon so rounding in the cell
        // computation can never separate two points at distance <= epsilon
        // by more than one cell.
        let extent = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| (b - a).abs().max(a.abs()).max(b.abs()))
            .fold(0.0, f64::max);
        let margin = 1e-6 + 64.0 * f64::EPSILON * (extent / epsilon);
        let cell = epsilon * (1.0 + margin);

        let cell_of = |x: f64, d: usize| ((x - lo[d]) / cell).floor() as i64;

        let shape: Vec<i64> = (0..dim).map(|d| cell_of(hi[d], d) + 1).collect();
        let dense_cells = shape
            .iter()
            .try_fold(1usize, |acc, &s| acc.checked_mul(s as usize));
        let dense_limit = (n * DENSE_CELLS_PER_POINT).max(DENSE_MIN_CELLS);

        let n_offsets = 3usize.pow(dim as u32);
        let mut offsets = Vec::with_capacity(n_offsets * dim);
        for k in 0..n_offsets {
            let mut rest = k;
            let mut digits = vec![0i64; dim];
            for d in (0..dim).rev() {
                digits[d] = (rest % 3) as i64 - 1;
                rest /= 3;
            }
            offsets.extend_from_slice(&digits);
        }

        let (sorted_ids, grid) = match dense_cells {
            Some(total) if total <= dense_limit => {
                let linear = |p: &[f64]| {
                    (0..dim).fold(0usize, |acc, d| {
                        acc * shape[d] as usize + cell_of(p[d], d) as usize
                    })
                };
                let keys: Vec<usize> = points.iter().map(linear).collect();
                let mut starts = vec![0usize; total + 1];
                for &k in &keys {
                    starts[k + 1] += 1;
                }
                for c in 0..total {
                    starts[c + 1] += starts[c];
                }
                let mut fill = starts.clone();
                let mut ids = vec![0usize; n];
                for (i, &k) in keys.iter().enumerate() {
                    ids[fill[k]] = i;
                    fill[k] += 1;
                }
                (ids, Grid::Dense { shape, starts })
            }
            _ => {
                let keys: Vec<Vec<i64>> = points
                    .iter()
                    .map(|p| (0..dim).map(|d| cell_of(p[d], d)).collect())
                    .collect();
                let mut ids: Vec<usize> = (0..n).collect();
                ids.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
                let mut cells = HashMap::new();
                let mut start = 0;
                while start < n {
                    let key = &keys[ids[start]];
                    let mut end = start + 1;
                    while end < n && keys[ids[end]] == *key {
                        end += 1;
                    }
                    cells.insert(key.clone(), (start, end));
                    start = end;
                }
                (ids, Grid::Sparse { cells })
            }
        };

        let mut sorted_coords = Vec::with_capacity(n * dim);
        for &i in &sorted_ids {
            sorted_coords.extend_from_slice(points.point(i));
        }

        Ok(NeighborIndex {
            dim,
            epsilon,
            eps_sq: epsilon * epsilon,
            cell,
            origin: lo,
            sorted_coords,
            sorted_ids,
            grid,
            offsets,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn len(&self) -> usize {
        self.sorted_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted_ids.is_empty()
    }

    /// Indices of all points within `epsilon` of `center`, in ascending order.
    ///
    /// `epsilon` may not exceed the radius the index was built for.
    pub fn query_radius(&self, center: &[f64], epsilon: f64) -> Result<Vec<usize>> {
        check_shape(self.dim, center.len())?;
        if !(epsilon > 0.0 && epsilon <= self.epsilon) {
            return Err(Error::Parameter(format!(
                "query radius {epsilon} must be positive and at most the build radius {}",
                self.epsilon
            )));
        }
        let eps_sq = epsilon * epsilon;
        let mut out = Vec::new();
        self.visit_candidates(center, |id, p| {
            if euclidean_distance_sq(center, p) <= eps_sq {
                out.push(id);
            }
        });
        out.sort_unstable();
        Ok(out)
    }

    /// Appends the neighbors of `center` (at the build radius) to `out`, in
    /// no particular order. `center` must have the index's dimension.
    pub(crate) fn neighbors_into(&self, center: &[f64], out: &mut Vec<usize>) {
        debug_assert_eq!(center.len(), self.dim);
        let eps_sq = self.eps_sq;
        self.visit_candidates(center, |id, p| {
            if euclidean_distance_sq(center, p) <= eps_sq {
                out.push(id);
            }
        });
    }

    fn visit_candidates(&self, center: &[f64], mut visit: impl FnMut(usize, &[f64])) {
        if self.sorted_ids.is_empty() {
            return;
        }
        let dim = self.dim;
        let home: Vec<i64> = (0..dim)
            .map(|d| {
                let c = ((center[d] - self.origin[d]) / self.cell).floor();
                // Far-away queries only need to stay clear of overflow.
                c.clamp(-1e15, 1e15) as i64
            })
            .collect();
        let mut scan = |range: (usize, usize)| {
            for pos in range.0..range.1 {
                visit(
                    self.sorted_ids[pos],
                    &self.sorted_coords[pos * dim..(pos + 1) * dim],
                );
            }
        };
        match &self.grid {
            Grid::Dense { shape, starts } => {
                'offsets: for off in self.offsets.chunks_exact(dim) {
                    let mut linear = 0usize;
                    for d in 0..dim {
                        let c = home[d] + off[d];
                        if c < 0 || c >= shape[d] {
                            continue 'offsets;
                        }
                        linear = linear * shape[d] as usize + c as usize;
                    }
                    scan((starts[linear], starts[linear + 1]));
                }
            }
            Grid::Sparse { cells } => {
                let mut key = vec![0i64; dim];
                for off in self.offsets.chunks_exact(dim) {
                    for d in 0..dim {
                        key[d] = home[d] + off[d];
                    }
                    if let Some(&range) = cells.get(key.as_slice()) {
                        scan(range);
                    }
                }
            }
        }
    }
}

/// Convenience wrapper matching the free-function style used elsewhere.
pub fn build_index(points: &PointSet, epsilon: f64) -> Result<NeighborIndex> {
    NeighborIndex::build(points, epsilon)
}
