//! Exact solvers for weighted Subset Feedback Vertex Set on chordal graphs
//! given by tree models.

pub mod chordal;
pub mod dp;
pub mod error;
pub mod format;
pub mod graph;
pub mod leafage;
pub mod model;
pub mod oracle;
pub mod order;
pub mod reductions;
pub mod rooted_path;
pub mod solve;
pub mod weight;

pub use error::{GraphError, ModelError, ParseError, ReductionError, SolveError};
pub use graph::{build_instance, connected_components, has_no_s_triangle, is_s_forest, Instance, Solution};
pub use order::OrderIndex;
pub use model::{expand_model, expand_model_with_root, validate_model, ExpandedTreeModel, TreeModel, Violation};
pub use weight::Weight;
pub use chordal::{clique_tree_model, recognize_chordal, EliminationOrder};
pub use oracle::{brute_force_sfvs, verify_sfvs};
pub use leafage::{solve_bounded_leafage, LeafageOptions, SolveStats};
pub use rooted_path::{solve_rooted_path, RpKey};
pub use solve::{expand_any, solve, Algorithm, SolveOptions, SolveReport};

/// Exact rational weights, e.g. for the half-integral gadget weights.
pub type Rational = num_rational::Ratio<u64>;
pub type RationalInstance = Instance<Rational>;
pub type FloatInstance = Instance<f64>;
