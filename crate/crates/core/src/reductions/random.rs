//! Seeded random tree models and instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ReductionError;
use crate::graph::{build_instance, Instance};
use crate::model::TreeModel;

/// Shape of a random model. Leaf bounds follow [`TreeModel::host_leaf_count`]
/// for the host and [`TreeModel::rooted_leaf_count`] for subtrees, with host
/// node 0 as the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomModelParams {
    pub n: usize,
    pub max_leaves: usize,
    /// 0 gives single-node subtrees, 1 gives vertical paths.
    pub vertex_leafage: usize,
    pub host_nodes: usize,
    pub max_subtree_nodes: usize,
}

impl RandomModelParams {
    /// Host of `max(n, ℓ + 1)` nodes; subtrees of up to a third of it.
    pub fn new(n: usize, max_leaves: usize, vertex_leafage: usize) -> Self {
        let host_nodes = if max_leaves <= 1 { 1 } else { n.max(max_leaves + 1) };
        RandomModelParams { n, max_leaves, vertex_leafage, host_nodes, max_subtree_nodes: (host_nodes / 3).max(2) }
    }

    fn check(&self) -> Result<(), ReductionError> {
        if self.vertex_leafage > self.max_leaves.max(1) {
            return Err(ReductionError::Params(format!(
                "vertex leafage {} exceeds leafage {}",
                self.vertex_leafage, self.max_leaves
            )));
        }
        if self.host_nodes == 0 {
            return Err(ReductionError::Params("host tree needs a node".into()));
        }
        if self.max_leaves <= 1 && self.host_nodes > 1 {
            return Err(ReductionError::Params(format!(
                "a host with {} nodes has at least 2 leaves",
                self.host_nodes
            )));
        }
        if self.max_subtree_nodes == 0 {
            return Err(ReductionError::Params("subtrees need a node".into()));
        }
        Ok(())
    }
}

/// Spider or caterpillar on `nodes` nodes with at most `max_leaves` leaves,
/// rooted at node 0.
fn random_host(rng: &mut ChaCha8Rng, nodes: usize, max_leaves: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; nodes];
    if nodes == 1 {
        return parent;
    }
    if rng.random_bool(0.5) {
        let arms = rng.random_range(1..=max_leaves.min(nodes - 1));
        let mut tips: Vec<usize> = vec![0; arms];
        for (x, p) in parent.iter_mut().enumerate().skip(1) {
            // the first `arms` nodes open the arms, the rest extend random ones
            let a = if x <= arms { x - 1 } else { rng.random_range(0..arms) };
            *p = Some(tips[a]);
            tips[a] = x;
        }
    } else {
        let pendants = rng.random_range(0..=(max_leaves - 2).min(nodes - 2));
        let spine = nodes - pendants;
        for (x, p) in parent.iter_mut().enumerate().take(spine).skip(1) {
            *p = Some(x - 1);
        }
        for p in parent.iter_mut().skip(spine) {
            *p = Some(rng.random_range(0..spine));
        }
    }
    parent
}

/// A connected node set with at most `cap` rooted leaves, grown downward
/// from a random top node.
fn random_subtree(rng: &mut ChaCha8Rng, children: &[Vec<usize>], cap: usize, size: usize) -> Vec<usize> {
    let top = rng.random_range(0..children.len());
    let mut nodes = vec![top];
    let mut is_leaf = vec![top];
    let mut leaves = 1;
    for _ in 1..size {
        // (member, child) pairs; a non-leaf member may only branch while under the cap
        let frontier: Vec<(usize, usize)> = nodes
            .iter()
            .flat_map(|&x| children[x].iter().map(move |&c| (x, c)))
            .filter(|(_, c)| !nodes.contains(c))
            .filter(|(x, _)| leaves < cap || is_leaf.contains(x))
            .collect();
        if frontier.is_empty() {
            break;
        }
        let (x, c) = frontier[rng.random_range(0..frontier.len())];
        if let Some(i) = is_leaf.iter().position(|&l| l == x) {
            is_leaf.swap_remove(i);
        } else {
            leaves += 1;
        }
        is_leaf.push(c);
        nodes.push(c);
    }
    nodes
}

/// A random tree model, deterministic under `seed`.
pub fn gen_random_model_with(params: &RandomModelParams, seed: u64) -> Result<TreeModel, ReductionError> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parent = random_host(&mut rng, params.host_nodes, params.max_leaves);
    let mut children = vec![Vec::new(); params.host_nodes];
    for (x, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(x);
        }
    }
    let subtrees = (0..params.n)
        .map(|_| {
            if params.vertex_leafage == 0 {
                vec![rng.random_range(0..params.host_nodes)]
            } else {
                let size = rng.random_range(1..=params.max_subtree_nodes);
                random_subtree(&mut rng, &children, params.vertex_leafage, size)
            }
        })
        .collect();
    Ok(TreeModel::new(parent, subtrees).expect("generated host is a rooted tree"))
}

/// [`gen_random_model_with`] using [`RandomModelParams::new`].
pub fn gen_random_model(n: usize, max_leaves: usize, vertex_leafage: usize, seed: u64) -> Result<TreeModel, ReductionError> {
    gen_random_model_with(&RandomModelParams::new(n, max_leaves, vertex_leafage), seed)
}

/// A random model plus its realized instance with weights in `0..=10` and
/// each vertex in S with probability one half.
pub fn gen_random_instance(params: &RandomModelParams, seed: u64) -> Result<(Instance, TreeModel), ReductionError> {
    let model = gen_random_model_with(params, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let weights = (0..params.n).map(|_| rng.random_range(0..=10u64)).collect();
    let flags = (0..params.n).map(|_| rng.random_bool(0.5)).collect();
    let inst = build_instance(params.n, &model.intersection_edges(), weights, flags).expect("model edges are in range");
    Ok((inst, model))
}
