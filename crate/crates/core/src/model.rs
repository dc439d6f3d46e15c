//! Tree models, their validation, and the expansion into expanded tree models.

use std::collections::VecDeque;
use std::fmt;

use crate::error::ModelError;
use crate::graph::Instance;
use crate::weight::Weight;

/// A host tree given by parent links plus one connected node set per graph vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeModel {
    parent: Vec<Option<usize>>,
    subtrees: Vec<Vec<usize>>,
}

fn check_parent_links(parent: &[Option<usize>]) -> Result<usize, ModelError> {
    let n = parent.len();
    if n == 0 {
        return Err(ModelError::EmptyHost);
    }
    let mut root = None;
    let mut roots = 0;
    for (x, p) in parent.iter().enumerate() {
        match *p {
            None => {
                roots += 1;
                root = Some(x);
            }
            Some(p) if p >= n => return Err(ModelError::NodeOutOfRange(p)),
            Some(_) => {}
        }
    }
    if roots != 1 {
        return Err(ModelError::RootCount(roots));
    }
    // every node must reach the root; colour 1 = on current walk, 2 = done
    let mut state = vec![0u8; n];
    for start in 0..n {
        let mut walk = Vec::new();
        let mut x = start;
        loop {
            if state[x] == 2 {
                break;
            }
            if state[x] == 1 {
                return Err(ModelError::ParentCycle(x));
            }
            state[x] = 1;
            walk.push(x);
            match parent[x] {
                Some(p) => x = p,
                None => break,
            }
        }
        for y in walk {
            state[y] = 2;
        }
    }
    Ok(root.expect("one root"))
}

impl TreeModel {
    /// Check the host structure and normalize the subtrees (sorted, deduplicated).
    /// Subtree connectivity is reported by [`validate_model`] and enforced by
    /// [`expand_model`].
    pub fn new(parent: Vec<Option<usize>>, subtrees: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        check_parent_links(&parent)?;
        let mut normalized = Vec::with_capacity(subtrees.len());
        for (v, mut nodes) in subtrees.into_iter().enumerate() {
            if nodes.is_empty() {
                return Err(ModelError::EmptySubtree(v));
            }
            if let Some(&x) = nodes.iter().find(|&&x| x >= parent.len()) {
                return Err(ModelError::NodeOutOfRange(x));
            }
            nodes.sort_unstable();
            nodes.dedup();
            normalized.push(nodes);
        }
        Ok(TreeModel { parent, subtrees: normalized })
    }

    pub fn host_nodes(&self) -> usize {
        self.parent.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.subtrees.len()
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn root(&self) -> usize {
        self.parent.iter().position(Option::is_none).expect("validated host has a root")
    }

    pub fn subtree(&self, v: usize) -> &[usize] {
        &self.subtrees[v]
    }

    pub fn subtrees(&self) -> &[Vec<usize>] {
        &self.subtrees
    }

    pub fn host_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.host_nodes()];
        for (x, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                adj[x].push(p);
                adj[p].push(x);
            }
        }
        adj
    }

    /// Leaves of the host tree viewed as an undirected tree. A single node has none.
    pub fn host_leaf_count(&self) -> usize {
        if self.host_nodes() == 1 {
            return 0;
        }
        self.host_adjacency().iter().filter(|a| a.len() == 1).count()
    }

    /// Undirected leaves of `T_v`; a single-node subtree counts as one leaf.
    pub fn subtree_leaf_count(&self, v: usize) -> usize {
        let nodes = &self.subtrees[v];
        if nodes.len() == 1 {
            return 1;
        }
        let mut degree = vec![0usize; nodes.len()];
        for (i, &x) in nodes.iter().enumerate() {
            if let Some(p) = self.parent[x] {
                if let Ok(j) = nodes.binary_search(&p) {
                    degree[i] += 1;
                    degree[j] += 1;
                }
            }
        }
        degree.iter().filter(|&&d| d == 1).count()
    }

    /// Largest subtree leaf count, or 0 without vertices.
    pub fn vertex_leafage(&self) -> usize {
        (0..self.n_vertices()).map(|v| self.subtree_leaf_count(v)).max().unwrap_or(0)
    }

    /// Nodes of `T_v` with no child in `T_v`, for the host as rooted.
    pub fn rooted_leaf_count(&self, v: usize) -> usize {
        let nodes = &self.subtrees[v];
        let mut has_child = vec![false; nodes.len()];
        for &x in nodes {
            if let Some(j) = self.parent[x].and_then(|p| nodes.binary_search(&p).ok()) {
                has_child[j] = true;
            }
        }
        has_child.iter().filter(|&&c| !c).count()
    }

    /// Largest rooted leaf count; 1 exactly when every subtree is a
    /// vertical path, i.e. the model is a rooted path model.
    pub fn rooted_vertex_leafage(&self) -> usize {
        (0..self.n_vertices()).map(|v| self.rooted_leaf_count(v)).max().unwrap_or(0)
    }

    /// A node set of a tree is connected iff exactly one member has its
    /// parent outside the set.
    pub fn is_connected_subtree(&self, v: usize) -> bool {
        let nodes = &self.subtrees[v];
        nodes
            .iter()
            .filter(|&&x| self.parent[x].is_none_or(|p| nodes.binary_search(&p).is_err()))
            .count()
            == 1
    }

    /// Edges of the intersection graph, `(u, v)` with `u < v`, sorted.
    pub fn intersection_edges(&self) -> Vec<(usize, usize)> {
        let mut bags = vec![Vec::new(); self.host_nodes()];
        for (v, nodes) in self.subtrees.iter().enumerate() {
            for &x in nodes {
                bags[x].push(v);
            }
        }
        let mut edges = Vec::new();
        for bag in &bags {
            for (i, &a) in bag.iter().enumerate() {
                for &b in &bag[i + 1..] {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// The model restricted to `vertices` (relabelled `0..k` in the given
    /// order) on the union of their subtrees. The union must be connected,
    /// which holds when `vertices` is a connected component of the realized
    /// graph. The new root is the union node closest to the old root.
    pub fn restrict(&self, vertices: &[usize]) -> TreeModel {
        let mut index = vec![usize::MAX; self.host_nodes()];
        let mut kept = Vec::new();
        for &v in vertices {
            for &x in &self.subtrees[v] {
                if index[x] == usize::MAX {
                    index[x] = 0;
                    kept.push(x);
                }
            }
        }
        kept.sort_unstable();
        for (i, &x) in kept.iter().enumerate() {
            index[x] = i;
        }
        let parent = kept
            .iter()
            .map(|&x| {
                // nearest kept proper ancestor; in a connected union this is the direct parent
                self.parent[x].filter(|&p| index[p] != usize::MAX).map(|p| index[p])
            })
            .collect();
        let subtrees = vertices.iter().map(|&v| self.subtrees[v].iter().map(|&x| index[x]).collect()).collect();
        TreeModel::new(parent, subtrees).expect("restriction of a valid model to a connected union")
    }
}

/// One reason a model fails to realize an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexCount { model: usize, graph: usize },
    DisconnectedSubtree(usize),
    MissingEdge(usize, usize),
    ExtraEdge(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexCount { model, graph } => {
                write!(f, "model has {model} subtrees but the graph has {graph} vertices")
            }
            Violation::DisconnectedSubtree(v) => write!(f, "disconnected subtree for vertex {v}"),
            Violation::MissingEdge(u, v) => write!(f, "missing edge {u}-{v}"),
            Violation::ExtraEdge(u, v) => write!(f, "extra edge {u}-{v}"),
        }
    }
}

/// Check that `model` realizes `inst`: connected subtrees and identical edge sets.
/// An empty list means the model is valid.
pub fn validate_model<W: Weight>(model: &TreeModel, inst: &Instance<W>) -> Vec<Violation> {
    if model.n_vertices() != inst.n() {
        return vec![Violation::VertexCount { model: model.n_vertices(), graph: inst.n() }];
    }
    let mut out: Vec<Violation> =
        (0..model.n_vertices()).filter(|&v| !model.is_connected_subtree(v)).map(Violation::DisconnectedSubtree).collect();
    let realized = model.intersection_edges();
    let expected: Vec<(usize, usize)> = inst.edges().collect();
    let (mut i, mut j) = (0, 0);
    while i < realized.len() || j < expected.len() {
        match (realized.get(i), expected.get(j)) {
            (Some(a), Some(b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(Violation::ExtraEdge(a.0, a.1));
                i += 1;
            }
            (Some(a), None) => {
                out.push(Violation::ExtraEdge(a.0, a.1));
                i += 1;
            }
            (_, Some(b)) => {
                out.push(Violation::MissingEdge(b.0, b.1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// A rooted tree model in which every subtree has a leaf and every host node
/// is the root or a leaf of at most one subtree (never both).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedTreeModel {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    subtrees: Vec<Vec<usize>>,
    root_of: Vec<usize>,
    leaves_of: Vec<Vec<usize>>,
    owner_as_root: Vec<Option<usize>>,
    owner_as_leaf: Vec<Option<usize>>,
    provenance: Vec<usize>,
}

impl ExpandedTreeModel {
    /// Accept a model that is already expanded under its own root.
    pub fn from_rooted(model: &TreeModel) -> Result<Self, ModelError> {
        Self::assemble(model.parent.clone(), model.subtrees.clone(), (0..model.host_nodes()).collect())
    }

    fn assemble(
        parent: Vec<Option<usize>>,
        subtrees: Vec<Vec<usize>>,
        provenance: Vec<usize>,
    ) -> Result<Self, ModelError> {
        let root = check_parent_links(&parent)?;
        let nodes = parent.len();
        let mut children = vec![Vec::new(); nodes];
        for (x, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(x);
            }
        }
        let mut depth = vec![0; nodes];
        let mut tin = vec![0; nodes];
        let mut tout = vec![0; nodes];
        let mut clock = 0;
        let mut stack = vec![(root, 0usize)];
        tin[root] = clock;
        clock += 1;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            if *next < children[x].len() {
                let c = children[x][*next];
                *next += 1;
                depth[c] = depth[x] + 1;
                tin[c] = clock;
                clock += 1;
                stack.push((c, 0));
            } else {
                tout[x] = clock;
                stack.pop();
            }
        }

        let mut root_of = Vec::with_capacity(subtrees.len());
        let mut leaves_of = Vec::with_capacity(subtrees.len());
        let mut owner_as_root = vec![None; nodes];
        let mut owner_as_leaf = vec![None; nodes];
        let mut normalized = Vec::with_capacity(subtrees.len());
        for (v, mut members) in subtrees.into_iter().enumerate() {
            members.sort_unstable();
            members.dedup();
            if members.is_empty() {
                return Err(ModelError::EmptySubtree(v));
            }
            if let Some(&x) = members.iter().find(|&&x| x >= nodes) {
                return Err(ModelError::NodeOutOfRange(x));
            }
            let mut top = Vec::new();
            let mut has_child = vec![false; members.len()];
            for &x in &members {
                match parent[x].map(|p| members.binary_search(&p)) {
                    Some(Ok(j)) => has_child[j] = true,
                    _ => top.push(x),
                }
            }
            if top.len() != 1 {
                return Err(ModelError::DisconnectedSubtree(v));
            }
            let r = top[0];
            let leaves: Vec<usize> = members.iter().zip(&has_child).filter(|(_, &c)| !c).map(|(&x, _)| x).collect();
            if owner_as_root[r].is_some() || owner_as_leaf[r].is_some() {
                return Err(ModelError::NotExpanded(format!("node {r} carries more than one role")));
            }
            owner_as_root[r] = Some(v);
            for &l in &leaves {
                if l == r {
                    return Err(ModelError::NotExpanded(format!("vertex {v} has a single-node subtree")));
                }
                if owner_as_root[l].is_some() || owner_as_leaf[l].is_some() {
                    return Err(ModelError::NotExpanded(format!("node {l} carries more than one role")));
                }
                owner_as_leaf[l] = Some(v);
            }
            root_of.push(r);
            leaves_of.push(leaves);
            normalized.push(members);
        }
        Ok(ExpandedTreeModel {
            parent,
            children,
            root,
            depth,
            tin,
            tout,
            subtrees: normalized,
            root_of,
            leaves_of,
            owner_as_root,
            owner_as_leaf,
            provenance,
        })
    }

    pub fn host_nodes(&self) -> usize {
        self.parent.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.subtrees.len()
    }

    pub fn host_root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub fn depth(&self, x: usize) -> usize {
        self.depth[x]
    }

    pub fn subtree(&self, v: usize) -> &[usize] {
        &self.subtrees[v]
    }

    /// The node `r(v)`.
    pub fn root_of(&self, v: usize) -> usize {
        self.root_of[v]
    }

    /// The leaf set `L(T_v)`, sorted by node id.
    pub fn leaves_of(&self, v: usize) -> &[usize] {
        &self.leaves_of[v]
    }

    pub fn owner_as_root(&self, x: usize) -> Option<usize> {
        self.owner_as_root[x]
    }

    pub fn owner_as_leaf(&self, x: usize) -> Option<usize> {
        self.owner_as_leaf[x]
    }

    /// Original host node each expanded node was created from.
    pub fn provenance(&self, x: usize) -> usize {
        self.provenance[x]
    }

    /// `x ≤_T y`: `y` lies on the path from `x` to the host root.
    pub fn node_le(&self, x: usize, y: usize) -> bool {
        self.tin[y] <= self.tin[x] && self.tout[x] <= self.tout[y]
    }

    pub fn node_lt(&self, x: usize, y: usize) -> bool {
        x != y && self.node_le(x, y)
    }

    /// Childless host nodes; a single-node host has none.
    pub fn host_leaf_count(&self) -> usize {
        if self.host_nodes() == 1 {
            return 0;
        }
        self.children.iter().filter(|c| c.is_empty()).count()
    }

    pub fn vertex_leafage(&self) -> usize {
        self.leaves_of.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Every subtree is a rooted path, i.e. has exactly one leaf.
    pub fn is_rooted_path(&self) -> bool {
        self.leaves_of.iter().all(|l| l.len() == 1)
    }

    pub fn to_tree_model(&self) -> TreeModel {
        TreeModel { parent: self.parent.clone(), subtrees: self.subtrees.clone() }
    }
}

/// Expand `model`. A model that is already expanded under its own root is
/// returned unchanged. Otherwise the host keeps its given root when that node
/// is not a leaf, and is rerooted at the first non-leaf node if it is.
///
/// Hosts with at most two nodes have no non-leaf node and are reported as
/// [`ModelError::Trivial`]; [`expand_model_with_root`] accepts them.
pub fn expand_model(model: &TreeModel) -> Result<ExpandedTreeModel, ModelError> {
    if let Ok(em) = ExpandedTreeModel::from_rooted(model) {
        return Ok(em);
    }
    if model.host_nodes() <= 2 {
        return Err(ModelError::Trivial(model.host_nodes()));
    }
    let adj = model.host_adjacency();
    let root = std::iter::once(model.root())
        .chain(0..model.host_nodes())
        .find(|&x| adj[x].len() >= 2)
        .expect("a tree on 3+ nodes has an inner node");
    expand_model_with_root(model, root)
}

/// Expand `model` with the host rooted at `root`.
///
/// A node that is the root of `k_r` subtrees and a leaf of `k_l` subtrees
/// (single-node subtrees count on both sides) with `k_r + k_l >= 2` becomes
/// the path `x_{-k_l} -> ... -> x_{-1} -> x_1 -> ... -> x_{k_r}`; children of
/// the old node hang below `x_{-k_l}` and `x_{k_r}` hangs below the parent.
/// Root-subtree `i` keeps `x_{-k_l}..x_i`, leaf-subtree `j` keeps
/// `x_j..x_{k_r}`, a single-node subtree keeps `x_j..x_i` and every other
/// subtree keeps the whole path.
pub fn expand_model_with_root(model: &TreeModel, root: usize) -> Result<ExpandedTreeModel, ModelError> {
    let nodes = model.host_nodes();
    if root >= nodes {
        return Err(ModelError::NodeOutOfRange(root));
    }
    for v in 0..model.n_vertices() {
        if !model.is_connected_subtree(v) {
            return Err(ModelError::DisconnectedSubtree(v));
        }
    }
    let adj = model.host_adjacency();
    let mut parent = vec![None; nodes];
    let mut order = Vec::with_capacity(nodes);
    let mut seen = vec![false; nodes];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }

    let mut roots_at = vec![Vec::new(); nodes];
    let mut leaves_at = vec![Vec::new(); nodes];
    for (v, members) in model.subtrees.iter().enumerate() {
        let mut has_child = vec![false; members.len()];
        for &x in members {
            match parent[x].map(|p| members.binary_search(&p)) {
                Some(Ok(j)) => has_child[j] = true,
                _ => roots_at[x].push(v),
            }
        }
        for (&x, &c) in members.iter().zip(&has_child) {
            if !c {
                leaves_at[x].push(v);
            }
        }
    }

    // new ids: path of node x occupies first[x] .. first[x] + len[x], bottom first
    let mut first = vec![0; nodes];
    let mut len = vec![1; nodes];
    let mut provenance = Vec::new();
    for &x in &order {
        let k = roots_at[x].len() + leaves_at[x].len();
        if k >= 2 {
            len[x] = k;
        }
        first[x] = provenance.len();
        provenance.extend(std::iter::repeat_n(x, len[x]));
    }
    let mut new_parent = vec![None; provenance.len()];
    for &x in &order {
        let top = first[x] + len[x] - 1;
        for id in first[x]..top {
            new_parent[id] = Some(id + 1);
        }
        new_parent[top] = parent[x].map(|p| first[p]);
    }

    let mut subtrees = Vec::with_capacity(model.n_vertices());
    for (v, members) in model.subtrees.iter().enumerate() {
        let mut out = Vec::new();
        for &x in members {
            if len[x] == 1 {
                out.push(first[x]);
                continue;
            }
            let kl = leaves_at[x].len();
            let root_slot = roots_at[x].iter().position(|&y| y == v);
            let leaf_slot = leaves_at[x].iter().position(|&y| y == v);
            // x_i for i = 1..k_r sits at offset kl + i - 1, x_{-j} at offset kl - j
            let lo = leaf_slot.map_or(0, |j| kl - (j + 1));
            let hi = root_slot.map_or(len[x] - 1, |i| kl + i);
            out.extend(first[x] + lo..=first[x] + hi);
        }
        subtrees.push(out);
    }
    ExpandedTreeModel::assemble(new_parent, subtrees, provenance)
}
