//! Dynamic maintenance of large independent sets under vertex and edge
//! insertions and deletions.
//!
//! A [`Maintainer`] keeps a maximal independent set `M` of a
//! [`DynamicGraph`] and, depending on its [`Engine`], also guarantees that
//! no small exchange can enlarge it: [`OneSwap`] removes every (1,2)-swap
//! and [`TwoSwap`] additionally every (2,3)-swap. The [`oracle`] module
//! provides brute-force ground truth, [`generators`] builds seeded inputs
//! and [`bench`] replays update streams while recording metrics.
//!
//! ```
//! use dynmis::{DynamicGraph, Maintainer, TwoSwap, UpdateOp};
//!
//! let g = DynamicGraph::from_edges([(1, 3), (2, 3), (1, 4), (2, 5)]).unwrap();
//! let mut m = Maintainer::new(g, &[1, 2], TwoSwap).unwrap();
//! assert_eq!(m.stabilize(), 1);
//! assert_eq!(m.members(), vec![3, 4, 5]);
//! m.update(&UpdateOp::AddEdge(4, 5)).unwrap();
//! assert!(m.find_swap().is_none());
//! m.audit().unwrap();
//! ```

pub mod bench;
pub mod framework;
pub mod generators;
pub mod graph;
pub mod hierarchy;
pub mod oneswap;
pub mod oracle;
pub mod queue;
pub mod state;
pub mod twoswap;

pub use framework::{Engine, Maintainer, Simple, StepReport};
pub use graph::{DynamicGraph, GraphError, OpKind, Strictness, UpdateOp, VertexId};
pub use hierarchy::KeySet;
pub use oneswap::OneSwap;
pub use state::{InitError, MaintainerState, UpdateEffect};
pub use twoswap::TwoSwap;
