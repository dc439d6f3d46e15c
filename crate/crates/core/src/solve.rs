//! One entry point that picks a model and a solver.

use std::fmt;
use std::str::FromStr;

use crate::chordal::{clique_tree_model, recognize_chordal};
use crate::error::{ModelError, SolveError};
use crate::graph::{Instance, Solution};
use crate::leafage::{solve_bounded_leafage, LeafageOptions, SolveStats};
use crate::model::{expand_model, expand_model_with_root, ExpandedTreeModel, TreeModel};
use crate::oracle::{brute_force_sfvs, DEFAULT_BUDGET};
use crate::rooted_path::solve_rooted_path;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    /// Rooted path solver when every subtree of the model is a vertical
    /// path, bounded-leafage solver otherwise.
    #[default]
    Auto,
    Leafage,
    RootedPath,
    Oracle,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Auto => "auto",
            Algorithm::Leafage => "leafage",
            Algorithm::RootedPath => "rooted-path",
            Algorithm::Oracle => "oracle",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Algorithm::Auto),
            "leafage" => Ok(Algorithm::Leafage),
            "rooted-path" => Ok(Algorithm::RootedPath),
            "oracle" => Ok(Algorithm::Oracle),
            other => Err(format!("unknown algorithm '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub leafage: LeafageOptions,
    pub oracle_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { algorithm: Algorithm::Auto, leafage: LeafageOptions::default(), oracle_budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport<W> {
    pub solution: Solution<W>,
    pub stats: SolveStats,
    /// The solver that actually ran; never `Auto`.
    pub algorithm: Algorithm,
}

/// Expand with the usual root choice, keeping the given root on hosts too
/// small to have an inner node.
pub fn expand_any(model: &TreeModel) -> Result<ExpandedTreeModel, ModelError> {
    match expand_model(model) {
        Err(ModelError::Trivial(_)) => expand_model_with_root(model, model.root()),
        other => other,
    }
}

/// Solve `inst`, using `model` when given and a clique tree otherwise.
pub fn solve<W: Weight>(
    inst: &Instance<W>,
    model: Option<&TreeModel>,
    opts: &SolveOptions,
) -> Result<SolveReport<W>, SolveError> {
    if opts.algorithm == Algorithm::Oracle {
        let solution = brute_force_sfvs(inst, opts.oracle_budget)?;
        let stats = SolveStats { components: crate::graph::connected_components(inst).len(), ..Default::default() };
        return Ok(SolveReport { solution, stats, algorithm: Algorithm::Oracle });
    }
    let built;
    let model = match model {
        Some(m) => m,
        None => {
            let peo = recognize_chordal(inst).ok_or(SolveError::NotChordal)?;
            built = clique_tree_model(inst, &peo)?;
            &built
        }
    };
    let rooted = model.rooted_vertex_leafage() <= 1;
    let algorithm = match opts.algorithm {
        Algorithm::Auto if rooted => Algorithm::RootedPath,
        Algorithm::Auto => Algorithm::Leafage,
        a => a,
    };
    let (solution, stats) = match algorithm {
        Algorithm::RootedPath => {
            if let Some(v) = (0..model.n_vertices()).find(|&v| model.rooted_leaf_count(v) > 1) {
                return Err(ModelError::NotRootedPath(v, model.rooted_leaf_count(v)).into());
            }
            // the given root keeps every vertical path vertical
            solve_rooted_path(inst, &expand_model_with_root(model, model.root())?)?
        }
        _ => solve_bounded_leafage(inst, &expand_any(model)?, &opts.leafage)?,
    };
    Ok(SolveReport { solution, stats, algorithm })
}
