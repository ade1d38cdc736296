//! Laplacian and distance matrices of weighted trees, the bilinear identity
//! `LD + 2I = (2·1 − d)1ᵀ` that ties them together, and mixed-integer models
//! for extremal tree problems built on that identity.
//!
//! ```
//! use treechar::identity::check_identity;
//! use treechar::paths::distance_matrix;
//! use treechar::WeightedGraph;
//!
//! // Path 1 - 2 - 3 with weights 2 and 4.
//! let g = WeightedGraph::from_edges(3, [(0, 1, 2.0), (1, 2, 4.0)]).unwrap();
//! // Distances are taken in the reciprocal graph.
//! let d = distance_matrix(&g.reciprocal()).unwrap();
//! assert_eq!(d[(0, 2)], 0.75);
//! assert!(check_identity(&g, &d, 1e-9).unwrap().holds());
//! ```

pub mod error;
pub mod graph;
pub mod identity;
pub mod io;
pub mod linalg;
pub mod milp;
pub mod oracle;
pub mod paths;
pub mod problem;
pub mod prufer;

pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use linalg::DenseMatrix;
pub use prufer::PruferCode;
