//! Direct set-level checks of the order and expansion structure, shared by the property tests
//! and the acceptance target. Each returns the first violation found.

#![allow(dead_code)]

use sfvs_core::reductions::{gen_random_instance, RandomModelParams};
use sfvs_core::{expand_model, validate_model, ExpandedTreeModel, Instance, OrderIndex, TreeModel};

pub type Check = Result<(), String>;

/// Parameters covering ℓ ∈ 2..=5 and vℓ ∈ 0..=ℓ.
pub fn mixed_params(seed: u64) -> RandomModelParams {
    let l = 2 + (seed % 4) as usize;
    let vl = (seed / 4 % (l as u64 + 1)) as usize;
    RandomModelParams::new(3 + (seed % 12) as usize, l, vl)
}

/// Rooted path models: vℓ = 1, expanded under the given root.
pub fn rooted_params(seed: u64) -> RandomModelParams {
    RandomModelParams::new(3 + (seed % 14) as usize, 2 + (seed % 3) as usize, 1)
}

/// Growth bound on the number of host nodes.
pub fn node_bound(model: &TreeModel) -> usize {
    let n = model.n_vertices();
    model.host_nodes() + (1 + model.vertex_leafage()) * n.saturating_sub(1)
}

pub fn check_expansion(model: &TreeModel, inst: &Instance) -> Check {
    let em = expand_model(model).map_err(|e| e.to_string())?;
    let flat = em.to_tree_model();
    let bad = validate_model(&flat, inst);
    if !bad.is_empty() {
        return Err(format!("expanded model does not realize the graph: {:?}", bad[0]));
    }
    if em.host_leaf_count() != model.host_leaf_count() {
        return Err(format!("host leaves {} became {}", model.host_leaf_count(), em.host_leaf_count()));
    }
    for v in 0..model.n_vertices() {
        let before = model.subtree_leaf_count(v);
        let after = em.leaves_of(v).len();
        if after > before || after + 1 < before {
            return Err(format!("subtree {v}: {before} leaves became {after}"));
        }
    }
    if em.host_nodes() > node_bound(model) {
        return Err(format!("{} host nodes exceed the bound {}", em.host_nodes(), node_bound(model)));
    }
    for x in 0..em.host_nodes() {
        let roots = (0..em.n_vertices()).filter(|&v| em.root_of(v) == x).count();
        let leaves = (0..em.n_vertices()).filter(|&v| em.leaves_of(v).contains(&x)).count();
        if roots + leaves > 1 && !(roots == 1 && leaves == 1 && em.owner_as_root(x) == em.owner_as_leaf(x)) {
            return Err(format!("node {x} is root of {roots} and leaf of {leaves} subtrees"));
        }
    }
    Ok(())
}

/// Edges join comparable vertices, and `u < v < w` with `uw ∈ E` forces `vw ∈ E`.
pub fn order_consistency(inst: &Instance, oi: &OrderIndex) -> Check {
    let n = inst.n();
    for (u, v) in inst.edges() {
        if !oi.comparable(u, v) {
            return Err(format!("edge {u}-{v} joins incomparable vertices"));
        }
    }
    for u in 0..n {
        for v in 0..n {
            if !oi.lt(u, v) {
                continue;
            }
            for &w in inst.neighbors(u) {
                if oi.lt(v, w) && !inst.has_edge(v, w) {
                    return Err(format!("{u} < {v} < {w} with {u}{w} an edge but not {v}{w}"));
                }
            }
        }
    }
    Ok(())
}

/// `N(V_u) ⊆ N(u)`.
pub fn upward_neighbourhood(inst: &Instance, oi: &OrderIndex) -> Check {
    for u in 0..inst.n() {
        let vu = oi.descendants(u);
        for &x in vu {
            for &y in inst.neighbors(x) {
                if !vu.contains(&y) && !inst.has_edge(u, y) {
                    return Err(format!("{y} sees {x} in V_{u} but not {u}"));
                }
            }
        }
    }
    Ok(())
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// The classes are pairwise disjoint, pairwise non-adjacent and cover `target`.
fn disconnected_partition(inst: &Instance, classes: &[Vec<usize>], target: &[usize], what: &str) -> Check {
    let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|p| p[0] == p[1]) {
        return Err(format!("{what}: classes overlap"));
    }
    if all != target {
        return Err(format!("{what}: classes cover {all:?}, expected {target:?}"));
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if a.iter().any(|&x| b.iter().any(|&y| inst.has_edge(x, y))) {
                return Err(format!("{what}: an edge joins two classes"));
            }
        }
    }
    Ok(())
}

/// `{V_u' : u' ∈ ◁u}` partitions `V_u \ {u}`, and for each edge `uw` with
/// `u < w`, `{V_u' : u' ∈ ◁uw}` partitions `V_u \ (N[u] ∩ N(w))`; the
/// classes are pairwise disconnected in both cases.
pub fn predecessor_partitions(inst: &Instance, oi: &OrderIndex) -> Check {
    for u in 0..inst.n() {
        let vu = oi.descendants(u);
        let classes: Vec<Vec<usize>> = oi.pred(u).iter().map(|&c| oi.descendants(c).to_vec()).collect();
        let target = sorted(vu.iter().copied().filter(|&x| x != u).collect());
        disconnected_partition(inst, &classes, &target, &format!("◁{u}"))?;
        for &w in inst.neighbors(u) {
            if !oi.lt(u, w) {
                continue;
            }
            let classes: Vec<Vec<usize>> = oi.pred_edge(u, w).iter().map(|&c| oi.descendants(c).to_vec()).collect();
            let target =
                sorted(vu.iter().copied().filter(|&x| !(x == u || inst.has_edge(x, u) && inst.has_edge(x, w))).collect());
            disconnected_partition(inst, &classes, &target, &format!("◁{u}{w}"))?;
        }
    }
    Ok(())
}

/// `V_{a,b} = V_a ∪ {x ∉ S : l(x) < r(a) < r(x) ≤ r(b)}`.
pub fn v_pair(inst: &Instance, oi: &OrderIndex, a: usize, b: usize) -> Vec<usize> {
    let mut set = oi.descendants(a).to_vec();
    if a != b {
        let mid = oi.interval_set(None, Some(&[a]), &[b]).expect("rooted path model");
        set.extend(mid.into_iter().filter(|&x| !inst.in_s(x)));
    }
    sorted(set)
}

/// Pairs `u < w` with `uw ∈ E` and neither in S.
fn qualifying(inst: &Instance, oi: &OrderIndex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..inst.n() {
        for &w in inst.neighbors(u) {
            if oi.lt(u, w) && !inst.in_s(u) && !inst.in_s(w) {
                out.push((u, w));
            }
        }
    }
    out
}

/// `X = V_u \ ({u} ∪ (N(u) ∩ N(w) ∩ S))`.
fn rooted_partition_target(inst: &Instance, oi: &OrderIndex, u: usize, w: usize) -> Vec<usize> {
    sorted(
        oi.descendants(u)
            .iter()
            .copied()
            .filter(|&x| x != u && !(inst.in_s(x) && inst.has_edge(x, u) && inst.has_edge(x, w)))
            .collect(),
    )
}

fn exact_partition(classes: &[Vec<usize>], target: &[usize], what: &str) -> Check {
    let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|p| p[0] == p[1]) {
        return Err(format!("{what}: classes overlap"));
    }
    if all != target {
        return Err(format!("{what}: classes cover {all:?}, expected {target:?}"));
    }
    Ok(())
}

/// As stated: `{V<◁uw||◁u> \ S} ∪ {V_{u', u'◁u} : u' ∈ ◁uw}` partitions `X`.
pub fn rooted_partition_stated(inst: &Instance, oi: &OrderIndex) -> Check {
    for (u, w) in qualifying(inst, oi) {
        let group = oi.pred_edge(u, w);
        let bulk = oi.interval_set(Some(&group), None, oi.pred(u)).expect("rooted path model");
        let mut classes = vec![bulk.into_iter().filter(|&x| !inst.in_s(x)).collect::<Vec<_>>()];
        classes.extend(group.iter().map(|&c| v_pair(inst, oi, c, oi.umbrella(c, u))));
        exact_partition(&classes, &rooted_partition_target(inst, oi, u, w), &format!("u={u} w={w}"))?;
    }
    Ok(())
}

/// The form the solver uses: the sets `V_{u', u'◁u}` are pairwise disjoint
/// inside `X`, and everything of `X` they miss is a non-terminal common
/// neighbour of `u` and `w`.
pub fn rooted_partition_residual(inst: &Instance, oi: &OrderIndex) -> Check {
    for (u, w) in qualifying(inst, oi) {
        let target = rooted_partition_target(inst, oi, u, w);
        let mut classes: Vec<Vec<usize>> =
            oi.pred_edge(u, w).iter().map(|&c| v_pair(inst, oi, c, oi.umbrella(c, u))).collect();
        let covered: Vec<usize> = sorted(classes.iter().flatten().copied().collect());
        let residual: Vec<usize> = target.iter().copied().filter(|x| covered.binary_search(x).is_err()).collect();
        if let Some(&x) = residual.iter().find(|&&x| inst.in_s(x) || !inst.has_edge(x, u) || !inst.has_edge(x, w)) {
            return Err(format!("u={u} w={w}: leftover {x} is not a free common neighbour"));
        }
        classes.push(residual);
        exact_partition(&classes, &target, &format!("u={u} w={w}"))?;
    }
    Ok(())
}

/// Instance and expanded model for a rooted path seed.
pub fn rooted_model(seed: u64) -> (Instance, ExpandedTreeModel) {
    let (g, m) = gen_random_instance(&rooted_params(seed), seed).expect("valid parameters");
    let em = sfvs_core::expand_model_with_root(&m, m.root()).expect("connected subtrees");
    (g, em)
}

/// Every order check on one expanded model.
pub fn structural(inst: &Instance, em: &ExpandedTreeModel) -> Check {
    let oi = OrderIndex::new(em, inst).map_err(|e| e.to_string())?;
    order_consistency(inst, &oi)?;
    upward_neighbourhood(inst, &oi)?;
    predecessor_partitions(inst, &oi)
}

/// Every subtree is the same single node: the one shape where the growth
/// bound on host nodes is exceeded.
pub fn stacked_singletons(model: &TreeModel) -> bool {
    model.subtrees().iter().all(|s| s.len() == 1 && *s == model.subtrees()[0])
}
