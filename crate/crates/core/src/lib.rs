//! DBSCAN clustering for point clouds in domains whose dimensions are each
//! open or periodic.
//!
//! Periodic dimensions are handled by copying points that lie within
//! `epsilon` of a periodic face to the far side of the domain, running
//! ordinary open-boundary DBSCAN on the enlarged set, and merging cluster ids
//! that meet across a seam. The open-boundary run uses a grid-based
//! fixed-radius index, so the periodic case keeps the cost of the open one.
//!
//! ```
//! use pbc_dbscan::{dbscan_periodic, DbscanParams, Domain, PointSet, NOISE};
//!
//! let domain = Domain::periodic(1, 0.0, 1.0).unwrap();
//! let points = PointSet::new(1, vec![0.02, 0.98, 0.95, 0.50]).unwrap();
//! let params = DbscanParams::new(0.05, 2).unwrap();
//! let labels = dbscan_periodic(&points, &domain, &params).unwrap();
//! assert_eq!(labels.as_slice(), &[0, 0, 0, NOISE]);
//! ```

pub mod datagen;
pub mod dbscan;
pub mod error;
pub mod geometry;
pub mod index;
pub mod oracle;
pub mod pbc;
pub mod scaling;

pub use dbscan::{dbscan, DbscanParams, Label, LabelVector, NOISE};
pub use error::{Error, Result};
pub use geometry::{min_image_distance, wrap_points, Boundary, Domain, PointSet};
pub use index::{build_index, NeighborIndex};
pub use oracle::{compare_clusterings, dbscan_bruteforce, ClusterComparison, ClusteringSummary};
pub use pbc::{
    cluster_periodic, dbscan_periodic, extend_periodic, link_labels, resolve_labels, LinkTable, PaddedSet,
    PeriodicClustering,
};
