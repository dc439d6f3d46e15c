//! The vertex order induced by an expanded tree model and the predecessor
//! sets, representatives and interval sets built on top of it.

use crate::error::{ModelError, SolveError};
use crate::graph::Instance;
use crate::model::ExpandedTreeModel;
use crate::weight::Weight;

/// Order data for one expanded model and the graph it realizes.
///
/// `u ≤ v` iff `r(u) ≤_T r(v)`. Every vertex has a parent in the vertex
/// forest: the owner of the nearest proper ancestor node that is a subtree
/// root. `V_u` is the forest subtree of `u` and occupies a contiguous range
/// of the forest preorder.
#[derive(Debug, Clone)]
pub struct OrderIndex<'a> {
    em: &'a ExpandedTreeModel,
    adj: Vec<Vec<usize>>,
    vparent: Vec<Option<usize>>,
    vchildren: Vec<Vec<usize>>,
    forest_roots: Vec<usize>,
    preorder: Vec<usize>,
    pos: Vec<usize>,
    end: Vec<usize>,
    up: Vec<Vec<usize>>,
}

impl<'a> OrderIndex<'a> {
    /// Build the index. Fails when an edge joins incomparable vertices, which
    /// means `em` does not realize `inst`.
    pub fn new<W: Weight>(em: &'a ExpandedTreeModel, inst: &Instance<W>) -> Result<Self, SolveError> {
        let n = em.n_vertices();
        if inst.n() != n {
            return Err(ModelError::VertexCount { got: n, expected: inst.n() }.into());
        }
        // nearest vertex root at or above each node, top-down
        let mut nearest: Vec<Option<usize>> = vec![None; em.host_nodes()];
        let mut stack = vec![em.host_root()];
        while let Some(x) = stack.pop() {
            let inherited = em.parent(x).and_then(|p| nearest[p]);
            nearest[x] = em.owner_as_root(x).or(inherited);
            stack.extend_from_slice(em.children(x));
        }
        let mut vparent = vec![None; n];
        let mut vchildren = vec![Vec::new(); n];
        let mut forest_roots = Vec::new();
        for u in 0..n {
            match em.parent(em.root_of(u)).and_then(|p| nearest[p]) {
                Some(p) => {
                    vparent[u] = Some(p);
                    vchildren[p].push(u);
                }
                None => forest_roots.push(u),
            }
        }
        let mut preorder = Vec::with_capacity(n);
        let mut pos = vec![0; n];
        let mut end = vec![0; n];
        for &r in &forest_roots {
            let mut frames = vec![(r, 0usize)];
            pos[r] = preorder.len();
            preorder.push(r);
            while let Some(&mut (u, ref mut next)) = frames.last_mut() {
                if *next < vchildren[u].len() {
                    let c = vchildren[u][*next];
                    *next += 1;
                    pos[c] = preorder.len();
                    preorder.push(c);
                    frames.push((c, 0));
                } else {
                    end[u] = preorder.len();
                    frames.pop();
                }
            }
        }
        let adj: Vec<Vec<usize>> = (0..n).map(|v| inst.neighbors(v).to_vec()).collect();
        let mut index = OrderIndex { em, adj, vparent, vchildren, forest_roots, preorder, pos, end, up: Vec::new() };
        let mut up = vec![Vec::new(); n];
        for u in 0..n {
            for &w in &index.adj[u] {
                if !index.comparable(u, w) {
                    return Err(SolveError::Internal(format!("edge {u}-{w} joins incomparable vertices")));
                }
                if index.lt(u, w) {
                    up[u].push(w);
                }
            }
            up[u].sort_by_key(|&w| std::cmp::Reverse(em.depth(em.root_of(w))));
        }
        index.up = up;
        Ok(index)
    }

    pub fn model(&self) -> &ExpandedTreeModel {
        self.em
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// `u ≤ v`.
    pub fn le(&self, u: usize, v: usize) -> bool {
        self.pos[v] <= self.pos[u] && self.pos[u] < self.end[v]
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        u != v && self.le(u, v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.le(u, v) || self.le(v, u)
    }

    /// Depth of `r(u)` in the host tree.
    pub fn depth(&self, u: usize) -> usize {
        self.em.depth(self.em.root_of(u))
    }

    pub fn forest_roots(&self) -> &[usize] {
        &self.forest_roots
    }

    pub fn forest_parent(&self, u: usize) -> Option<usize> {
        self.vparent[u]
    }

    /// `◁u`: the maximal proper predecessors of `u`.
    pub fn pred(&self, u: usize) -> &[usize] {
        &self.vchildren[u]
    }

    /// `V_u` in forest preorder, starting with `u`.
    pub fn descendants(&self, u: usize) -> &[usize] {
        &self.preorder[self.pos[u]..self.end[u]]
    }

    /// Neighbours `w > u`, closest first. Every neighbour of `u` outside
    /// `V_u` is such a vertex.
    pub fn up_neighbors(&self, u: usize) -> &[usize] {
        &self.up[u]
    }

    /// `◁uw = max(V_u \ (N[u] ∩ N(w)))` for an edge `uw` with `u < w`.
    ///
    /// Inside `V_u` the common neighbours of `u` and `w` form an upper part
    /// (any vertex between a neighbour of `w` and `w` is itself a neighbour),
    /// so the search descends only through common neighbours.
    pub fn pred_edge(&self, u: usize, w: usize) -> Vec<usize> {
        debug_assert!(self.lt(u, w) && self.adjacent(u, w));
        let mut out = Vec::new();
        let mut stack: Vec<usize> = self.vchildren[u].clone();
        while let Some(c) = stack.pop() {
            if self.adjacent(c, u) && self.adjacent(c, w) {
                stack.extend_from_slice(&self.vchildren[c]);
            } else {
                out.push(c);
            }
        }
        out.sort_unstable();
        out
    }

    /// `F_{≤2}(U)`: owners of the minimal leaves of `U`, then owners of the
    /// minimal leaves of what remains. Sorted.
    pub fn f_le2(&self, set: &[usize]) -> Vec<usize> {
        let first = self.min_leaf_owners(set);
        let rest: Vec<usize> = set.iter().copied().filter(|v| first.binary_search(v).is_err()).collect();
        let mut out = first;
        out.extend(self.min_leaf_owners(&rest));
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `L^{-1}(min_T L(U))`.
    fn min_leaf_owners(&self, set: &[usize]) -> Vec<usize> {
        let leaves: Vec<usize> = set.iter().flat_map(|&v| self.em.leaves_of(v).iter().copied()).collect();
        let mut out: Vec<usize> = leaves
            .iter()
            .filter(|&&x| !leaves.iter().any(|&y| self.em.node_lt(y, x)))
            .map(|&x| self.em.owner_as_leaf(x).expect("leaf node has an owner"))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The umbrella vertex `u◁v` for `u < v`: the largest element of `u`
    /// together with its up-neighbours that lies strictly below `v`.
    ///
    /// In a rooted-path model the vertices `u'` with `l(u') < r(u) ≤ r(u')`
    /// are exactly `u` and the neighbours above it, and they form a chain.
    pub fn umbrella(&self, u: usize, v: usize) -> usize {
        debug_assert!(self.lt(u, v));
        let dv = self.depth(v);
        let up = &self.up[u];
        let k = up.partition_point(|&x| self.depth(x) > dv);
        if k == 0 {
            u
        } else {
            up[k - 1]
        }
    }

    fn single_leaf(&self, v: usize) -> Result<usize, ModelError> {
        match self.em.leaves_of(v) {
            [l] => Ok(*l),
            other => Err(ModelError::NotRootedPath(v, other.len())),
        }
    }

    /// The interval sets of rooted-path models:
    /// `V<V1|V2|V3>`, `V<|V2|V3>` (no `V1`) and `V<V1||V3>` (no `V2`), i.e.
    /// all `x` with `r(v1) < l(x) < r(v2) < r(x) ≤ r(v3)` for some choice of
    /// witnesses, dropping the conditions of an absent set. Sorted.
    pub fn interval_set(
        &self,
        v1: Option<&[usize]>,
        v2: Option<&[usize]>,
        v3: &[usize],
    ) -> Result<Vec<usize>, ModelError> {
        let em = self.em;
        let mut out = Vec::new();
        for x in 0..self.n() {
            let lx = self.single_leaf(x)?;
            let rx = em.root_of(x);
            let ok1 = v1.is_none_or(|s| s.iter().any(|&a| em.node_lt(em.root_of(a), lx)));
            let ok2 = v2.is_none_or(|s| {
                s.iter().any(|&b| em.node_lt(lx, em.root_of(b)) && em.node_lt(em.root_of(b), rx))
            });
            let ok3 = v3.iter().any(|&c| em.node_le(rx, em.root_of(c)));
            if ok1 && ok2 && ok3 {
                out.push(x);
            }
        }
        Ok(out)
    }
}
