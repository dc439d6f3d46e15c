//! Multicolored clique gadget: a chordal SFVS instance whose host tree is a
//! subdivided star, so its leafage is bounded by a function of `k` alone.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ReductionError;
use crate::graph::{build_instance, Instance};
use crate::model::TreeModel;

/// A multicolored clique instance with `k` classes of `p` vertices each.
/// Base vertex `v_i^a` (0-based class `i`, index `a`) has id `i * p + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccInstance {
    k: usize,
    p: usize,
    /// `(i, a, j, b)` with `i < j`, sorted, no duplicates.
    edges: Vec<(usize, usize, usize, usize)>,
}

impl MccInstance {
    /// Edges are `(i, a, j, b)` joining `v_i^a` and `v_j^b`, with `i != j`;
    /// they are normalized to `i < j`.
    pub fn new(k: usize, p: usize, edges: &[(usize, usize, usize, usize)]) -> Result<Self, ReductionError> {
        if p == 0 {
            return Err(ReductionError::Params("classes must be nonempty".into()));
        }
        let mut out = Vec::with_capacity(edges.len());
        for &(i, a, j, b) in edges {
            if i >= k || j >= k || a >= p || b >= p {
                return Err(ReductionError::Params(format!("edge ({i},{a})-({j},{b}) is out of range")));
            }
            if i == j {
                return Err(ReductionError::Params(format!("edge ({i},{a})-({j},{b}) lies inside a class")));
            }
            out.push(if i < j { (i, a, j, b) } else { (j, b, i, a) });
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(ReductionError::Params("duplicate edge".into()));
        }
        Ok(MccInstance { k, p, edges: out })
    }

    /// From a plain graph on `0..n` and a partition into classes. Edges inside
    /// a class are dropped since no multicolored clique uses them.
    pub fn from_classes(n: usize, edges: &[(usize, usize)], classes: &[Vec<usize>]) -> Result<Self, ReductionError> {
        let p = classes.first().map_or(0, Vec::len);
        if classes.iter().any(|c| c.len() != p) {
            return Err(ReductionError::NonUniformClasses);
        }
        let mut place = vec![None; n];
        for (i, class) in classes.iter().enumerate() {
            for (a, &v) in class.iter().enumerate() {
                if v >= n || place[v].is_some() {
                    return Err(ReductionError::VertexOutOfRange(v));
                }
                place[v] = Some((i, a));
            }
        }
        if let Some(v) = place.iter().position(Option::is_none) {
            return Err(ReductionError::Params(format!("vertex {v} is in no class")));
        }
        let mut cross = Vec::new();
        for &(u, v) in edges {
            let (Some(&Some((i, a))), Some(&Some((j, b)))) = (place.get(u), place.get(v)) else {
                return Err(ReductionError::VertexOutOfRange(u.max(v)));
            };
            if i != j {
                cross.push((i, a, j, b));
            }
        }
        cross.sort_unstable_by_key(|&(i, a, j, b)| if i < j { (i, a, j, b) } else { (j, b, i, a) });
        cross.dedup_by_key(|&mut (i, a, j, b)| if i < j { (i, a, j, b) } else { (j, b, i, a) });
        MccInstance::new(classes.len(), p, &cross)
    }

    /// Each cross pair becomes an edge with probability `density`.
    pub fn random(k: usize, p: usize, density: f64, seed: u64) -> Result<Self, ReductionError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                for a in 0..p {
                    for b in 0..p {
                        if rng.random_bool(density) {
                            edges.push((i, a, j, b));
                        }
                    }
                }
            }
        }
        MccInstance::new(k, p, &edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, a: usize, j: usize, b: usize) -> bool {
        let e = if i < j { (i, a, j, b) } else { (j, b, i, a) };
        self.edges.binary_search(&e).is_ok()
    }

    /// `choice[i]` is the index picked from class `i`.
    pub fn is_multicolored_clique(&self, choice: &[usize]) -> bool {
        choice.len() == self.k
            && choice.iter().all(|&a| a < self.p)
            && (0..self.k).all(|i| (i + 1..self.k).all(|j| self.has_edge(i, choice[i], j, choice[j])))
    }

    /// Exhaustive search over the `p^k` choices, lexicographically first hit.
    pub fn find_multicolored_clique(&self) -> Option<Vec<usize>> {
        let mut choice = vec![0; self.k];
        self.extend(&mut choice, 0).then_some(choice)
    }

    fn extend(&self, choice: &mut [usize], i: usize) -> bool {
        if i == self.k {
            return true;
        }
        for a in 0..self.p {
            if (0..i).all(|h| self.has_edge(h, choice[h], i, a)) {
                choice[i] = a;
                if self.extend(choice, i + 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// Gadget instance with all weights doubled (`R`: `p`, `S_V`: 2, `S_E`:
/// `p·m`) and its tree model.
///
/// Vertex layout: one `R`-vertex per base edge in [`MccInstance::edges`]
/// order, then `s_i^{a,c}` for each class, signed arm index and copy, then
/// `s_{ij}` for each pair `i < j`.
#[derive(Debug, Clone)]
pub struct MccGadget {
    pub source: MccInstance,
    pub instance: Instance,
    pub model: TreeModel,
    /// Factor applied to the weights: optima are `scale` times the original.
    pub scale: u64,
    /// `k >= 10`, where the gadget's reverse direction is proven.
    pub equivalence_asserted: bool,
}

fn arm_slot(p: usize, a: i64) -> usize {
    let m = a.unsigned_abs() as usize;
    debug_assert!(m >= 1 && m <= p);
    if a > 0 {
        m - 1
    } else {
        p + m - 1
    }
}

fn pair_index(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * k - i * (i + 1) / 2 + (j - i - 1)
}

impl MccGadget {
    fn k(&self) -> usize {
        self.source.k
    }

    fn p(&self) -> usize {
        self.source.p
    }

    /// Vertex `e_{ij}^{ab}` of base edge number `e`.
    pub fn r_vertex(&self, e: usize) -> usize {
        e
    }

    /// `s_i^{a,c}` for `a ∈ ±1..±p` and `c ∈ {1, 2}`.
    pub fn s_vertex(&self, i: usize, a: i64, c: usize) -> usize {
        debug_assert!(c == 1 || c == 2);
        self.source.m() + (i * 2 * self.p() + arm_slot(self.p(), a)) * 2 + (c - 1)
    }

    /// `s_{ij}` for `i < j`.
    pub fn s_edge_vertex(&self, i: usize, j: usize) -> usize {
        self.source.m() + 4 * self.k() * self.p() + pair_index(self.k(), i, j)
    }

    pub fn r_set(&self) -> Vec<usize> {
        (0..self.source.m()).collect()
    }

    /// `R_{ij}`.
    pub fn r_pair(&self, i: usize, j: usize) -> Vec<usize> {
        self.source.edges.iter().enumerate().filter(|(_, e)| e.0 == i && e.2 == j).map(|(x, _)| x).collect()
    }

    /// `R_i^{a}` for a 0-based class index `a`: edges using `v_i^a`.
    pub fn r_class_at(&self, i: usize, a: usize) -> Vec<usize> {
        self.source
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(i1, a1, j1, b1))| (i1 == i && a1 == a) || (j1 == i && b1 == a))
            .map(|(x, _)| x)
            .collect()
    }

    /// `S_i`.
    pub fn s_class(&self, i: usize) -> Vec<usize> {
        let start = self.s_vertex(i, 1, 1);
        (start..start + 4 * self.p()).collect()
    }

    /// `S_i^{a_i}` for a 0-based class index: arm indices from `a_i - p` to
    /// `a_i` (1-based `a_i`), both copies.
    pub fn s_class_at(&self, i: usize, a: usize) -> Vec<usize> {
        let top = a as i64 + 1;
        let p = self.p() as i64;
        let mut out: Vec<usize> = (top - p..=top)
            .filter(|&x| x != 0)
            .flat_map(|x| [self.s_vertex(i, x, 1), self.s_vertex(i, x, 2)])
            .collect();
        out.sort_unstable();
        out
    }

    pub fn s_v(&self) -> Vec<usize> {
        let start = self.source.m();
        (start..start + 4 * self.k() * self.p()).collect()
    }

    pub fn s_e(&self) -> Vec<usize> {
        let start = self.source.m() + 4 * self.k() * self.p();
        (start..self.instance.n()).collect()
    }

    /// Doubled weight of a certificate: `p(m - k(k-9)/2)`.
    pub fn target_weight(&self) -> u64 {
        let (k, p, m) = (self.k() as i64, self.p() as i64, self.source.m() as i64);
        (p * (2 * m - k * (k - 9)) / 2) as u64
    }

    /// The instance with the original half-integral weights.
    pub fn halved_instance(&self) -> Instance<Ratio<u64>> {
        let w = self.instance.weights().iter().map(|&x| Ratio::new(x, self.scale)).collect();
        self.instance.with_weights(w).expect("same length")
    }
}

/// Build the gadget for `mcc`.
pub fn mcc_gadget(mcc: &MccInstance) -> MccGadget {
    let (k, p, m) = (mcc.k, mcc.p, mcc.edges.len());
    let pairs = k * k.saturating_sub(1) / 2;
    let arm = |i: usize, a: i64| 1 + i * 2 * p + arm_slot(p, a);
    let y = |i: usize, j: usize| 1 + 2 * k * p + pair_index(k, i, j);
    let host_nodes = 1 + 2 * k * p + pairs;
    let mut parent = vec![None; host_nodes];
    for i in 0..k {
        for s in [1i64, -1] {
            for a in 1..=p as i64 {
                parent[arm(i, s * a)] = Some(if a == 1 { 0 } else { arm(i, s * (a - 1)) });
            }
        }
        for j in i + 1..k {
            parent[y(i, j)] = Some(0);
        }
    }
    // T({x_i^a, x_i^{a-p}}) for 1-based a: the root plus a plus-steps and p-a minus-steps
    let arm_span = |i: usize, a: usize| -> Vec<usize> {
        let plus = (1..=a as i64).map(move |x| arm(i, x));
        let minus = (1..=(p - a) as i64).map(move |x| arm(i, -x));
        plus.chain(minus).collect()
    };
    let mut subtrees: Vec<Vec<usize>> = Vec::with_capacity(m + 4 * k * p + pairs);
    for &(i, a, j, b) in &mcc.edges {
        let mut nodes = vec![0, y(i, j)];
        nodes.extend(arm_span(i, a + 1));
        nodes.extend(arm_span(j, b + 1));
        subtrees.push(nodes);
    }
    for i in 0..k {
        for slot in 0..2 * p {
            let a = if slot < p { slot as i64 + 1 } else { -((slot - p) as i64 + 1) };
            subtrees.push(vec![arm(i, a)]);
            subtrees.push(vec![arm(i, a)]);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            subtrees.push(vec![y(i, j)]);
        }
    }
    let model = TreeModel::new(parent, subtrees).expect("subdivided star");
    let n = model.n_vertices();
    let mut weights = vec![p as u64; m];
    weights.extend(std::iter::repeat_n(2u64, 4 * k * p));
    weights.extend(std::iter::repeat_n((p * m) as u64, pairs));
    let mut flags = vec![false; m];
    flags.resize(n, true);
    let instance = build_instance(n, &model.intersection_edges(), weights, flags).expect("model edges are in range");
    MccGadget { source: mcc.clone(), instance, model, scale: 2, equivalence_asserted: k >= 10 }
}

/// `U = (R \ R_C) ∪ ⋃_i S_i^{a_i}` for a multicolored clique given by its
/// base vertex ids. Sorted.
pub fn mcc_certificate(g: &MccGadget, clique: &[usize]) -> Result<Vec<usize>, ReductionError> {
    let (k, p) = (g.k(), g.p());
    let mut choice = vec![usize::MAX; k];
    for &v in clique {
        if v >= k * p {
            return Err(ReductionError::VertexOutOfRange(v));
        }
        let slot = &mut choice[v / p];
        if *slot != usize::MAX {
            return Err(ReductionError::NotMulticolored { expected: k });
        }
        *slot = v % p;
    }
    if choice.contains(&usize::MAX) {
        return Err(ReductionError::NotMulticolored { expected: k });
    }
    for i in 0..k {
        for j in i + 1..k {
            if !g.source.has_edge(i, choice[i], j, choice[j]) {
                return Err(ReductionError::NotAClique(format!(
                    "v_{}^{} v_{}^{}",
                    i + 1,
                    choice[i] + 1,
                    j + 1,
                    choice[j] + 1
                )));
            }
        }
    }
    let mut u: Vec<usize> = g
        .source
        .edges
        .iter()
        .enumerate()
        .filter(|(_, &(i, a, j, b))| !(choice[i] == a && choice[j] == b))
        .map(|(x, _)| x)
        .collect();
    for (i, &a) in choice.iter().enumerate() {
        u.extend(g.s_class_at(i, a));
    }
    u.sort_unstable();
    Ok(u)
}
