//! Chordality recognition and clique-tree models for graphs given without one.

use crate::error::SolveError;
use crate::graph::Instance;
use crate::model::TreeModel;
use crate::weight::Weight;

/// A vertex order in which the later neighbours of every vertex form a clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
}

/// Maximum cardinality search, then a check that the reversed visit order is
/// a perfect elimination order. `None` means the graph is not chordal.
pub fn recognize_chordal<W: Weight>(inst: &Instance<W>) -> Option<EliminationOrder> {
    let n = inst.n();
    let mut label = vec![0usize; n];
    let mut visited = vec![false; n];
    // buckets[k] holds vertices whose label was k when pushed; stale entries are skipped
    let mut buckets: Vec<Vec<usize>> = vec![(0..n).rev().collect()];
    let mut top = 0;
    let mut visit = Vec::with_capacity(n);
    while visit.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !visited[v] && label[v] == top => break v,
                Some(_) => {}
                None => top -= 1,
            }
        };
        visited[v] = true;
        visit.push(v);
        for &x in inst.neighbors(v) {
            if !visited[x] {
                label[x] += 1;
                if buckets.len() <= label[x] {
                    buckets.push(Vec::new());
                }
                buckets[label[x]].push(x);
                top = top.max(label[x]);
            }
        }
    }
    visit.reverse();
    is_perfect_elimination_order(inst, &visit).then_some(EliminationOrder { order: visit })
}

/// For each vertex, its later neighbours minus the earliest one must all be
/// adjacent to that earliest one.
pub fn is_perfect_elimination_order<W: Weight>(inst: &Instance<W>, order: &[usize]) -> bool {
    let n = inst.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = inst.neighbors(v).iter().copied().filter(|&x| pos[x] > pos[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&x| pos[x]) {
            if later.iter().any(|&x| x != p && !inst.has_edge(p, x)) {
                return false;
            }
        }
    }
    true
}

/// Clique tree: host nodes are the maximal cliques, joined by a maximum-weight
/// spanning tree of the clique intersection sizes (zero-weight links connect
/// components). The subtree of `v` is the set of cliques containing it.
pub fn clique_tree_model<W: Weight>(inst: &Instance<W>, peo: &EliminationOrder) -> Result<TreeModel, SolveError> {
    if !is_perfect_elimination_order(inst, &peo.order) {
        return Err(SolveError::NotChordal);
    }
    let n = inst.n();
    if n == 0 {
        return Ok(TreeModel::new(vec![None], vec![]).expect("single node host"));
    }
    let mut pos = vec![0; n];
    for (i, &v) in peo.order.iter().enumerate() {
        pos[v] = i;
    }
    let later = |v: usize| -> Vec<usize> { inst.neighbors(v).iter().copied().filter(|&x| pos[x] > pos[v]).collect() };
    // C_v = {v} ∪ later(v) fails to be maximal iff some u has v as its
    // earliest later neighbour and |later(u)| = |later(v)| + 1
    let mut dominated = vec![false; n];
    for u in 0..n {
        let lu = later(u);
        if let Some(&p) = lu.iter().min_by_key(|&&x| pos[x]) {
            if lu.len() == later(p).len() + 1 {
                dominated[p] = true;
            }
        }
    }
    let cliques: Vec<Vec<usize>> = peo
        .order
        .iter()
        .filter(|&&v| !dominated[v])
        .map(|&v| {
            let mut c = later(v);
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    let k = cliques.len();
    let overlap = |a: &[usize], b: &[usize]| {
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    };
    // Prim from clique 0
    let mut parent = vec![None; k];
    let mut in_tree = vec![false; k];
    let mut best: Vec<(usize, Option<usize>)> = vec![(0, None); k];
    in_tree[0] = true;
    for j in 1..k {
        best[j] = (overlap(&cliques[0], &cliques[j]), Some(0));
    }
    for _ in 1..k {
        let j = (0..k).filter(|&j| !in_tree[j]).max_by_key(|&j| (best[j].0, std::cmp::Reverse(j))).expect("remaining");
        in_tree[j] = true;
        parent[j] = best[j].1;
        for t in 0..k {
            if !in_tree[t] {
                let w = overlap(&cliques[j], &cliques[t]);
                if w > best[t].0 {
                    best[t] = (w, Some(j));
                }
            }
        }
    }
    let mut subtrees = vec![Vec::new(); n];
    for (c, members) in cliques.iter().enumerate() {
        for &v in members {
            subtrees[v].push(c);
        }
    }
    Ok(TreeModel::new(parent, subtrees).expect("clique tree is a valid host"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_instance;
    use crate::model::validate_model;

    fn g(n: usize, edges: &[(usize, usize)]) -> Instance {
        build_instance(n, edges, vec![1; n], vec![false; n]).unwrap()
    }

    #[test]
    fn complete_graph() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let peo = recognize_chordal(&k4).unwrap();
        assert!(is_perfect_elimination_order(&k4, &[3, 1, 0, 2]));
        let m = clique_tree_model(&k4, &peo).unwrap();
        assert_eq!(m.host_nodes(), 1);
        assert!(validate_model(&m, &k4).is_empty());
    }

    #[test]
    fn four_cycle_is_not_chordal() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(recognize_chordal(&c4).is_none());
        let bad = EliminationOrder { order: vec![0, 1, 2, 3] };
        assert_eq!(clique_tree_model(&c4, &bad), Err(SolveError::NotChordal));
    }

    #[test]
    fn path_on_three_vertices() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let m = clique_tree_model(&p3, &recognize_chordal(&p3).unwrap()).unwrap();
        assert_eq!(m.host_nodes(), 2);
        assert!(validate_model(&m, &p3).is_empty());
    }

    #[test]
    fn disconnected_and_empty() {
        let two = g(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
        let m = clique_tree_model(&two, &recognize_chordal(&two).unwrap()).unwrap();
        assert!(validate_model(&m, &two).is_empty());
        let none = g(0, &[]);
        assert_eq!(clique_tree_model(&none, &recognize_chordal(&none).unwrap()).unwrap().host_nodes(), 1);
    }
}
