//! # dowker-rips
//!
//! Relational persistent homology for two labeled point sets `X` and `Y`.
//!
//! The crate builds three filtrations on `X` from the cross-distance matrix
//! `d(x_i, y_j)`:
//!
//! * the Dowker filtration ([`complexes::dowker_filtration`]), where a set of
//!   points is a simplex once some `y` is close to all of them;
//! * the Dowker-Rips filtration ([`complexes::dowker_rips_filtration`]), the
//!   flag expansion of the Dowker 1-skeleton;
//! * the k-flagified Dowker filtration ([`complexes::kflag_filtration`]),
//!   which interpolates between the two.
//!
//! Persistence diagrams are computed over GF(2) ([`persistence`]) and can be
//! compared, rescaled and vectorized with [`diagrams`]. The [`oracles`]
//! module holds brute-force reference constructions and a checker for the
//! duality and interleaving relationships between these filtrations.
//!
//! ```
//! use dowker_rips::{complexes, fixtures, persistence};
//!
//! let r = fixtures::tetrahedron_matrix();
//! let xy = complexes::dowker_rips_filtration(&r, 3, f64::INFINITY).unwrap();
//! let yx = complexes::dowker_rips_filtration(&r.transpose(), 3, f64::INFINITY).unwrap();
//! let betti_xy = persistence::compute_persistence(&xy, 2).unwrap().betti_vector(0.5, 3);
//! let betti_yx = persistence::compute_persistence(&yx, 2).unwrap().betti_vector(0.5, 3);
//! assert_eq!(betti_xy, vec![1, 0, 0]);
//! assert_eq!(betti_yx, vec![1, 0, 1]);
//! ```

pub mod cli;
pub mod complexes;
pub mod diagrams;
pub mod error;
pub mod fixtures;
pub mod oracles;
pub mod persistence;
pub mod pipeline;
pub mod relations;

pub use complexes::{FilteredSimplex, Filtration, FiltrationKind, WeightedGraph};
pub use error::{Error, Result};
pub use persistence::{PersistenceDiagram, PersistencePair};
pub use relations::{CrossDistanceMatrix, LabeledPointCloud, Metric};
