//! Vertex-weighted graphs with a terminal set `S`.

use crate::error::GraphError;
use crate::weight::Weight;

/// A weighted undirected graph together with the terminal set `S`.
///
/// Vertices are `0..n`; adjacency lists are sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<W = u64> {
    adjacency: Vec<Vec<usize>>,
    weight: Vec<W>,
    in_s: Vec<bool>,
}

/// A maximum-weight S-forest and its complement.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<W = u64> {
    pub kept: Vec<usize>,
    pub kept_weight: W,
    pub removed: Vec<usize>,
    pub removed_weight: W,
}

/// Build a normalized instance. Duplicate edges are merged.
pub fn build_instance<W: Weight>(
    n: usize,
    edges: &[(usize, usize)],
    weights: Vec<W>,
    s_flags: Vec<bool>,
) -> Result<Instance<W>, GraphError> {
    if weights.len() != n {
        return Err(GraphError::LengthMismatch { what: "weights", got: weights.len(), expected: n });
    }
    if s_flags.len() != n {
        return Err(GraphError::LengthMismatch { what: "s_flags", got: s_flags.len(), expected: n });
    }
    if let Some(v) = weights.iter().position(|w| *w < W::zero()) {
        return Err(GraphError::NegativeWeight(v));
    }
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::EndpointOutOfRange(u, v, n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    Ok(Instance { adjacency, weight: weights, in_s: s_flags })
}

impl<W: Weight> Instance<W> {
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn weight(&self, v: usize) -> W {
        self.weight[v]
    }

    pub fn weights(&self) -> &[W] {
        &self.weight
    }

    pub fn in_s(&self, v: usize) -> bool {
        self.in_s[v]
    }

    pub fn s_flags(&self) -> &[bool] {
        &self.in_s
    }

    pub fn total_weight(&self) -> W {
        self.weight.iter().copied().sum()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Same graph and terminal set with new weights.
    pub fn with_weights<V: Weight>(&self, weights: Vec<V>) -> Result<Instance<V>, GraphError> {
        if weights.len() != self.n() {
            return Err(GraphError::LengthMismatch { what: "weights", got: weights.len(), expected: self.n() });
        }
        if let Some(v) = weights.iter().position(|w| *w < V::zero()) {
            return Err(GraphError::NegativeWeight(v));
        }
        Ok(Instance { adjacency: self.adjacency.clone(), weight: weights, in_s: self.in_s.clone() })
    }

    pub fn with_s_flags(&self, s_flags: Vec<bool>) -> Result<Instance<W>, GraphError> {
        if s_flags.len() != self.n() {
            return Err(GraphError::LengthMismatch { what: "s_flags", got: s_flags.len(), expected: self.n() });
        }
        Ok(Instance { adjacency: self.adjacency.clone(), weight: self.weight.clone(), in_s: s_flags })
    }

    /// Subgraph induced by `vertices`, relabelled to `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Instance<W> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> =
                    self.adjacency[v].iter().filter(|&&x| index[x] != usize::MAX).map(|&x| index[x]).collect();
                list.sort_unstable();
                list
            })
            .collect();
        Instance {
            adjacency,
            weight: vertices.iter().map(|&v| self.weight[v]).collect(),
            in_s: vertices.iter().map(|&v| self.in_s[v]).collect(),
        }
    }

    /// Package a kept set as a [`Solution`]. `kept` need not be sorted.
    pub fn solution_from_kept(&self, kept: &[usize]) -> Solution<W> {
        let mut mask = vec![false; self.n()];
        for &v in kept {
            mask[v] = true;
        }
        let kept: Vec<usize> = (0..self.n()).filter(|&v| mask[v]).collect();
        let removed: Vec<usize> = (0..self.n()).filter(|&v| !mask[v]).collect();
        Solution {
            kept_weight: W::sum_over(&self.weight, kept.iter().copied()),
            removed_weight: W::sum_over(&self.weight, removed.iter().copied()),
            kept,
            removed,
        }
    }
}

fn mask_of(n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vertices {
        mask[v] = true;
    }
    mask
}

/// Whether the subgraph induced by `kept` contains no cycle through a vertex of `S`.
///
/// A vertex lies on a cycle exactly when it belongs to a biconnected block
/// with at least three vertices, i.e. when one of its incident edges is not a
/// bridge. Bridges are found with an iterative low-link search.
pub fn is_s_forest<W: Weight>(inst: &Instance<W>, kept: &[usize]) -> bool {
    let n = inst.n();
    let mask = mask_of(n, kept);
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_cycle = vec![false; n];
    let mut time = 0;
    // frame: (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for start in 0..n {
        if !mask[start] || disc[start] != usize::MAX {
            continue;
        }
        disc[start] = time;
        low[start] = time;
        time += 1;
        stack.push((start, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent, idx) = *frame;
            let nbrs = inst.neighbors(v);
            if idx < nbrs.len() {
                frame.2 += 1;
                let x = nbrs[idx];
                if !mask[x] || x == parent {
                    continue;
                }
                if disc[x] == usize::MAX {
                    disc[x] = time;
                    low[x] = time;
                    time += 1;
                    stack.push((x, v, 0));
                } else {
                    // back edge: v and x share a cycle
                    low[v] = low[v].min(disc[x]);
                    on_cycle[v] = true;
                    on_cycle[x] = true;
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] <= disc[parent] {
                        // tree edge parent-v is not a bridge
                        on_cycle[v] = true;
                        on_cycle[parent] = true;
                    }
                }
            }
        }
    }
    !(0..n).any(|v| mask[v] && on_cycle[v] && inst.in_s(v))
}

/// Whether the subgraph induced by `kept` contains no triangle meeting `S`.
/// Equivalent to [`is_s_forest`] on chordal graphs.
pub fn has_no_s_triangle<W: Weight>(inst: &Instance<W>, kept: &[usize]) -> bool {
    let mask = mask_of(inst.n(), kept);
    for &a in kept {
        for &b in inst.neighbors(a).iter().filter(|&&b| b > a && mask[b]) {
            for &c in inst.neighbors(b).iter().filter(|&&c| c > b && mask[c]) {
                if inst.has_edge(a, c) && (inst.in_s(a) || inst.in_s(b) || inst.in_s(c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn connected_components<W: Weight>(inst: &Instance<W>) -> Vec<Vec<usize>> {
    let n = inst.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &x in inst.neighbors(v) {
                if !seen[x] {
                    seen[x] = true;
                    comp.push(x);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
