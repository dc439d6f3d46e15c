//! The Max-Cut gadget `H_G`: an undirected path graph whose minimum subset
//! feedback vertex sets encode maximum cuts of `G`.

use crate::error::ReductionError;
use crate::graph::{build_instance, Instance};
use crate::model::TreeModel;
use crate::weight::Weight;

/// What a vertex of `H_G` stands for. Indices are 1-based as in the
/// construction: `X(v)` has `x_v^1..x_v^{2n}`, `Y(v)` and `Z(v)` run over
/// `j = 1..2n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    X(usize, usize),
    XBar(usize, usize),
    Y(usize, usize),
    YBar(usize, usize),
    Z(usize, usize),
    ZBar(usize, usize),
    /// The ordered pair `(u, v)` of a base edge; lies in `E(u)` and `Ē(v)`.
    Arc(usize, usize),
}

/// Vertex numbering of `H_G`: one block of `12n + 4` vertices per base
/// vertex (`X`, `X̄`, `Y`, `Ȳ`, then `z, z̄` pairs), followed by the arcs
/// `(u, v), (v, u)` of each base edge `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCutLayout {
    pub base_n: usize,
    /// Base edges `(u, v)` with `u < v`, sorted.
    pub base_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct MaxCutGadget {
    pub layout: MaxCutLayout,
    /// Unit weights, `S = X ∪ X̄ ∪ Z`.
    pub instance: Instance,
    pub model: TreeModel,
}

impl MaxCutLayout {
    fn n(&self) -> usize {
        self.base_n
    }

    fn block(&self) -> usize {
        12 * self.n() + 4
    }

    pub fn x(&self, v: usize, i: usize) -> usize {
        v * self.block() + i - 1
    }

    pub fn x_bar(&self, v: usize, i: usize) -> usize {
        v * self.block() + 2 * self.n() + i - 1
    }

    pub fn y(&self, v: usize, j: usize) -> usize {
        v * self.block() + 4 * self.n() + j - 1
    }

    pub fn y_bar(&self, v: usize, j: usize) -> usize {
        v * self.block() + 6 * self.n() + 1 + j - 1
    }

    pub fn z(&self, v: usize, j: usize) -> usize {
        v * self.block() + 8 * self.n() + 2 + 2 * (j - 1)
    }

    pub fn z_bar(&self, v: usize, j: usize) -> usize {
        self.z(v, j) + 1
    }

    /// Vertex of the ordered pair `(u, v)`, if `uv` is a base edge.
    pub fn arc(&self, u: usize, v: usize) -> Option<usize> {
        let t = self.base_edges.binary_search(&(u.min(v), u.max(v))).ok()?;
        Some(self.n() * self.block() + 2 * t + usize::from(u > v))
    }

    pub fn role(&self, x: usize) -> Role {
        let (n, b) = (self.n(), self.block());
        if x >= n * b {
            let t = (x - n * b) / 2;
            let (u, v) = self.base_edges[t];
            return if (x - n * b).is_multiple_of(2) { Role::Arc(u, v) } else { Role::Arc(v, u) };
        }
        let (v, o) = (x / b, x % b);
        if o < 2 * n {
            Role::X(v, o + 1)
        } else if o < 4 * n {
            Role::XBar(v, o - 2 * n + 1)
        } else if o < 6 * n + 1 {
            Role::Y(v, o - 4 * n + 1)
        } else if o < 8 * n + 2 {
            Role::YBar(v, o - 6 * n - 1 + 1)
        } else if (o - 8 * n - 2) % 2 == 0 {
            Role::Z(v, (o - 8 * n - 2) / 2 + 1)
        } else {
            Role::ZBar(v, (o - 8 * n - 2) / 2 + 1)
        }
    }

    /// Which of the five S-triangle shapes `{a, b, c}` has, numbered in the
    /// order: twin pair of `X(v)` with a vertex of `Y(v) ∪ E(v)`; a vertex of
    /// `X(v)` with two of `Y(v) ∪ E(v)`; the two barred analogues; and
    /// `y_v^j, ȳ_v^j` with `z_v^j` or `z̄_v^j`.
    pub fn triangle_form(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        let n = self.n();
        let mut r = [self.role(a), self.role(b), self.role(c)];
        r.sort_unstable();
        let in_y_or_e = |role: Role, v: usize| matches!(role, Role::Y(w, _) | Role::Arc(w, _) if w == v);
        let in_ybar_or_ebar = |role: Role, v: usize| matches!(role, Role::YBar(w, _) | Role::Arc(_, w) if w == v);
        let twins = |i: usize, j: usize| i.abs_diff(j) == n;
        match r {
            [Role::X(v, i), Role::X(w, j), t] if v == w && twins(i, j) && in_y_or_e(t, v) => Some(1),
            [Role::X(v, _), s, t] if in_y_or_e(s, v) && in_y_or_e(t, v) => Some(2),
            [Role::XBar(v, i), Role::XBar(w, j), t] if v == w && twins(i, j) && in_ybar_or_ebar(t, v) => Some(3),
            [Role::XBar(v, _), s, t] if in_ybar_or_ebar(s, v) && in_ybar_or_ebar(t, v) => Some(4),
            [Role::Y(v, j), Role::YBar(w, h), Role::Z(u, l) | Role::ZBar(u, l)]
                if v == w && w == u && j == h && h == l =>
            {
                Some(5)
            }
            _ => None,
        }
    }
}

/// Build `H_G` and its tree model for a base graph on `0..n`.
pub fn maxcut_gadget<W: Weight>(base: &Instance<W>) -> MaxCutGadget {
    let n = base.n();
    let base_edges: Vec<(usize, usize)> = base.edges().collect();
    let m = base_edges.len();
    let g = MaxCutLayout { base_n: n, base_edges };

    // host: root 0, then per base vertex the paths P_X, P_X̄ and every P_Z
    let node_block = 6 * n + 2;
    let px = |v: usize, i: usize| 1 + v * node_block + i - 1;
    let pxb = |v: usize, i: usize| 1 + v * node_block + n + i - 1;
    let pz = |v: usize, j: usize, t: usize| 1 + v * node_block + 2 * n + 2 * (j - 1) + t - 1;
    let mut parent = vec![None; 1 + n * node_block];
    for v in 0..n {
        for i in 1..=n {
            parent[px(v, i)] = Some(if i == 1 { 0 } else { px(v, i - 1) });
            parent[pxb(v, i)] = Some(if i == 1 { 0 } else { pxb(v, i - 1) });
        }
        for j in 1..=2 * n + 1 {
            parent[pz(v, j, 1)] = Some(0);
            parent[pz(v, j, 2)] = Some(pz(v, j, 1));
        }
    }

    let total = n * g.block() + 2 * m;
    let mut subtrees = vec![Vec::new(); total];
    let x_path = |v: usize| -> Vec<usize> { (1..=n).map(|i| px(v, i)).collect() };
    let xb_path = |v: usize| -> Vec<usize> { (1..=n).map(|i| pxb(v, i)).collect() };
    let mut s_flags = vec![false; total];
    for v in 0..n {
        for i in 1..=n {
            for t in [i, n + i] {
                subtrees[g.x(v, t)] = vec![px(v, i)];
                subtrees[g.x_bar(v, t)] = vec![pxb(v, i)];
                s_flags[g.x(v, t)] = true;
                s_flags[g.x_bar(v, t)] = true;
            }
        }
        for j in 1..=2 * n + 1 {
            let mut y = x_path(v);
            y.extend([0, pz(v, j, 1), pz(v, j, 2)]);
            subtrees[g.y(v, j)] = y;
            let mut yb = xb_path(v);
            yb.extend([0, pz(v, j, 1), pz(v, j, 2)]);
            subtrees[g.y_bar(v, j)] = yb;
            subtrees[g.z(v, j)] = vec![pz(v, j, 1)];
            subtrees[g.z_bar(v, j)] = vec![pz(v, j, 2)];
            s_flags[g.z(v, j)] = true;
            s_flags[g.z_bar(v, j)] = true;
        }
    }
    for &(u, v) in &g.base_edges {
        for (a, b) in [(u, v), (v, u)] {
            let mut nodes = x_path(a);
            nodes.push(0);
            nodes.extend(xb_path(b));
            subtrees[g.arc(a, b).expect("base edge")] = nodes;
        }
    }
    let model = TreeModel::new(parent, subtrees).expect("host is a spider");
    let instance = build_instance(total, &model.intersection_edges(), vec![1; total], s_flags).expect("in range");
    MaxCutGadget { layout: g, instance, model }
}

/// Edges of `H_G` listed directly from the construction, for cross-checking
/// the tree model. Sorted, `u < v`.
pub fn maxcut_edges_direct(g: &MaxCutGadget) -> Vec<(usize, usize)> {
    let g = &g.layout;
    let n = g.n();
    let mut clique = Vec::new();
    let mut edges = Vec::new();
    for v in 0..n {
        for j in 1..=2 * n + 1 {
            clique.push(g.y(v, j));
            clique.push(g.y_bar(v, j));
            for z in [g.z(v, j), g.z_bar(v, j)] {
                edges.push((g.y(v, j), z));
                edges.push((g.y_bar(v, j), z));
            }
        }
        for i in 1..=n {
            edges.push((g.x(v, i), g.x(v, n + i)));
            edges.push((g.x_bar(v, i), g.x_bar(v, n + i)));
        }
        for i in 1..=2 * n {
            for j in 1..=2 * n + 1 {
                edges.push((g.x(v, i), g.y(v, j)));
                edges.push((g.x_bar(v, i), g.y_bar(v, j)));
            }
            for &(a, b) in &g.base_edges {
                for (s, t) in [(a, b), (b, a)] {
                    let arc = g.arc(s, t).expect("base edge");
                    if s == v {
                        edges.push((g.x(v, i), arc));
                    }
                    if t == v {
                        edges.push((g.x_bar(v, i), arc));
                    }
                }
            }
        }
    }
    for &(a, b) in &g.base_edges {
        clique.push(g.arc(a, b).expect("base edge"));
        clique.push(g.arc(b, a).expect("base edge"));
    }
    for (i, &a) in clique.iter().enumerate() {
        for &b in &clique[i + 1..] {
            edges.push((a, b));
        }
    }
    for e in &mut edges {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// `k(A)`: base edges with exactly one endpoint in `a_side`.
pub fn cut_size(g: &MaxCutGadget, a_side: &[usize]) -> usize {
    let g = &g.layout;
    let mut in_a = vec![false; g.n()];
    for &v in a_side {
        in_a[v] = true;
    }
    g.base_edges.iter().filter(|&&(u, v)| in_a[u] != in_a[v]).count()
}

/// `U`: for `v ∈ A` remove `X(v) ∪ Ȳ(v)`, otherwise `X̄(v) ∪ Y(v)`, and
/// remove every arc except those from `A` to its complement. Sorted.
pub fn maxcut_certificate(g: &MaxCutGadget, a_side: &[usize]) -> Result<Vec<usize>, ReductionError> {
    let g = &g.layout;
    let n = g.n();
    let mut in_a = vec![false; n];
    for &v in a_side {
        if v >= n {
            return Err(ReductionError::VertexOutOfRange(v));
        }
        in_a[v] = true;
    }
    let mut u = Vec::new();
    for v in 0..n {
        if in_a[v] {
            u.extend((1..=2 * n).map(|i| g.x(v, i)));
            u.extend((1..=2 * n + 1).map(|j| g.y_bar(v, j)));
        } else {
            u.extend((1..=2 * n).map(|i| g.x_bar(v, i)));
            u.extend((1..=2 * n + 1).map(|j| g.y(v, j)));
        }
    }
    for &(a, b) in &g.base_edges {
        for (s, t) in [(a, b), (b, a)] {
            if !(in_a[s] && !in_a[t]) {
                u.push(g.arc(s, t).expect("base edge"));
            }
        }
    }
    u.sort_unstable();
    Ok(u)
}
