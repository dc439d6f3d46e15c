//! The dynamic program for rooted path models: every conditioning set has
//! at most one vertex, and anchors `V_{u,v}` extend `V_u` by the non-terminal
//! vertices whose paths pass through `r(u)` and end at or below `r(v)`.

use crate::dp::{Branch, DpTable, Recurrence};
use crate::error::{ModelError, SolveError};
use crate::graph::{Instance, Solution};
use crate::leafage::{per_component, solve_roots, SolveStats};
use crate::model::ExpandedTreeModel;
use crate::order::OrderIndex;
use crate::weight::Weight;

/// A subproblem: the anchor set and an optional kept vertex above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RpKey {
    /// `V_u` conditioned on `y`.
    Plain { u: usize, y: Option<usize> },
    /// `V_{u,v} = V_u ∪ {x ∉ S : l(x) < r(u) < r(x) ≤ r(v)}` conditioned on
    /// `y`, for an edge `uv` with `u < v` and `v ∉ S`.
    Pair { u: usize, v: usize, y: Option<usize> },
}

pub struct RootedPathRecurrence<'a, W> {
    inst: &'a Instance<W>,
    oi: &'a OrderIndex<'a>,
}

impl<'a, W: Weight> RootedPathRecurrence<'a, W> {
    pub fn new(inst: &'a Instance<W>, oi: &'a OrderIndex<'a>) -> Self {
        RootedPathRecurrence { inst, oi }
    }

    /// The key for `V_{a,b}` with `a ≤ b`: terminals and non-neighbours of
    /// `a` at the top add nothing to the anchor, so `b` drops to `a◁b`
    /// until it is a non-terminal neighbour or reaches `a`.
    pub fn key_of(&self, a: usize, mut b: usize, y: Option<usize>) -> RpKey {
        while b != a && (self.inst.in_s(b) || !self.oi.adjacent(a, b)) {
            b = self.oi.umbrella(a, b);
        }
        if b == a {
            RpKey::Plain { u: a, y }
        } else {
            RpKey::Pair { u: a, v: b, y }
        }
    }

    fn y_for(&self, x: usize, cands: &[usize]) -> Option<usize> {
        let mut hits = cands.iter().copied().filter(|&c| self.oi.adjacent(x, c));
        let first = hits.next();
        debug_assert!(hits.next().is_none(), "{x} sees more than one conditioning vertex");
        first
    }

    /// `anchor \ ⋃_{u' ∈ group} V_{u'}` must consist of common neighbours of
    /// `top` and `w`. Each `u'` claims `V_{u'}` plus its non-terminal
    /// up-neighbours at or below `u'◁top`; the claims must stay inside the
    /// anchor and be pairwise disjoint. Returns the unclaimed non-terminals
    /// and the `(u', u'◁top)` pairs.
    fn split(
        &self,
        anchor: Vec<usize>,
        group: &[usize],
        top: usize,
        w: usize,
    ) -> Result<(Vec<usize>, Vec<(usize, usize)>), SolveError> {
        let oi = self.oi;
        let mut covered: Vec<usize> = group.iter().flat_map(|&g| oi.descendants(g).iter().copied()).collect();
        covered.sort_unstable();
        let mut rest: Vec<usize> = anchor.into_iter().filter(|x| covered.binary_search(x).is_err()).collect();
        rest.sort_unstable();
        if let Some(&x) = rest.iter().find(|&&x| !(oi.adjacent(x, top) && oi.adjacent(x, w))) {
            return Err(SolveError::Internal(format!(
                "vertex {x} below {top} is neither covered by a predecessor nor a common neighbour of {top} and {w}"
            )));
        }
        let mut claimed = Vec::new();
        let mut pairs = Vec::with_capacity(group.len());
        for &g in group {
            let b = oi.umbrella(g, top);
            let up = oi.up_neighbors(g);
            let k = up.iter().position(|&x| x == b).map_or(0, |i| i + 1);
            for &x in &up[..k] {
                if !self.inst.in_s(x) {
                    if rest.binary_search(&x).is_err() {
                        return Err(SolveError::Internal(format!("class of {g} reaches {x} outside the anchor")));
                    }
                    claimed.push(x);
                }
            }
            pairs.push((g, b));
        }
        claimed.sort_unstable();
        if claimed.windows(2).any(|p| p[0] == p[1]) {
            return Err(SolveError::Internal(format!("classes below {top} overlap")));
        }
        let residual = rest
            .into_iter()
            .filter(|&x| !self.inst.in_s(x) && claimed.binary_search(&x).is_err())
            .collect();
        Ok((residual, pairs))
    }

    fn anchor_pair(&self, u: usize, b: usize) -> Vec<usize> {
        let mut set = self.oi.descendants(u).to_vec();
        if b != u {
            let up = self.oi.up_neighbors(u);
            let k = up.iter().position(|&x| x == b).map_or(0, |i| i + 1);
            set.extend(up[..k].iter().copied().filter(|&x| !self.inst.in_s(x)));
        }
        set
    }

    fn check(&self, key: &RpKey) -> Result<(), SolveError> {
        let oi = self.oi;
        let ok = match *key {
            RpKey::Plain { u, y: None } => u < oi.n(),
            RpKey::Plain { u, y: Some(w) } => oi.lt(u, w) && oi.adjacent(u, w),
            RpKey::Pair { u, v, y } => {
                oi.lt(u, v)
                    && oi.adjacent(u, v)
                    && !self.inst.in_s(v)
                    && y.is_none_or(|w| {
                        oi.lt(v, w) && !self.inst.in_s(w) && oi.adjacent(u, w) && oi.adjacent(v, w)
                    })
            }
        };
        if ok {
            Ok(())
        } else {
            Err(SolveError::Internal(format!("malformed key {key:?}")))
        }
    }
}

impl<W: Weight> Recurrence for RootedPathRecurrence<'_, W> {
    type Key = RpKey;

    fn branches(&self, key: &RpKey) -> Result<Vec<Branch<RpKey>>, SolveError> {
        self.check(key)?;
        let oi = self.oi;
        let s = |x: usize| self.inst.in_s(x);
        Ok(match *key {
            RpKey::Plain { u, y: None } => vec![
                Branch { own: vec![], children: oi.pred(u).iter().map(|&c| RpKey::Plain { u: c, y: None }).collect() },
                Branch {
                    own: vec![u],
                    children: oi.pred(u).iter().map(|&c| RpKey::Plain { u: c, y: self.y_for(c, &[u]) }).collect(),
                },
            ],
            RpKey::Plain { u, y: Some(w) } => {
                let exclude = Branch {
                    own: vec![],
                    children: oi.pred(u).iter().map(|&c| RpKey::Plain { u: c, y: self.y_for(c, &[w]) }).collect(),
                };
                let group = oi.pred_edge(u, w);
                let include = if s(u) || s(w) {
                    Branch {
                        own: vec![u],
                        children: group.iter().map(|&c| RpKey::Plain { u: c, y: self.y_for(c, &[u, w]) }).collect(),
                    }
                } else {
                    let anchor = oi.descendants(u)[1..].to_vec();
                    let (residual, pairs) = self.split(anchor, &group, u, w)?;
                    let mut own = vec![u];
                    own.extend(residual);
                    Branch {
                        own,
                        children: pairs.iter().map(|&(c, b)| self.key_of(c, b, self.y_for(c, &[u, w]))).collect(),
                    }
                };
                vec![exclude, include]
            }
            RpKey::Pair { u, v, y: None } => {
                let b = oi.umbrella(u, v);
                vec![
                    Branch { own: vec![], children: vec![self.key_of(u, b, None)] },
                    Branch { own: vec![v], children: vec![self.key_of(u, b, Some(v))] },
                ]
            }
            RpKey::Pair { u, v, y: Some(w) } => {
                let b = oi.umbrella(u, v);
                let exclude = Branch { own: vec![], children: vec![self.key_of(u, b, Some(w))] };
                let group: Vec<usize> = oi.pred_edge(v, w).into_iter().filter(|&c| oi.le(c, u)).collect();
                let (residual, pairs) = self.split(self.anchor_pair(u, b), &group, v, w)?;
                let mut own = vec![v];
                own.extend(residual);
                let include = Branch {
                    own,
                    children: pairs.iter().map(|&(c, b)| self.key_of(c, b, self.y_for(c, &[v, w]))).collect(),
                };
                vec![exclude, include]
            }
        })
    }
}

/// The first vertex whose subtree has more than one leaf, if any.
fn non_rooted_path(em: &ExpandedTreeModel) -> Option<ModelError> {
    (0..em.n_vertices())
        .find(|&v| em.leaves_of(v).len() != 1)
        .map(|v| ModelError::NotRootedPath(v, em.leaves_of(v).len()))
}

fn solve_connected<W: Weight>(inst: &Instance<W>, em: &ExpandedTreeModel) -> Result<(Vec<usize>, SolveStats), SolveError> {
    let oi = OrderIndex::new(em, inst)?;
    let rec = RootedPathRecurrence::new(inst, &oi);
    let (n, m) = (inst.n(), inst.m());
    let cap = 2 * n * (n + m) + 2;
    let leafage = em.host_leaf_count();
    let mut table = DpTable::new();
    let kept = solve_roots(inst, &oi, &rec, &mut table, |r| RpKey::Plain { u: r, y: None }, cap).map_err(|e| match e {
        SolveError::Resource { entries, .. } => SolveError::Resource { leafage, entries },
        e => e,
    })?;
    let max_conditioning = table
        .keys()
        .map(|k| match k {
            RpKey::Plain { y, .. } | RpKey::Pair { y, .. } => usize::from(y.is_some()),
        })
        .max()
        .unwrap_or(0);
    let stats = SolveStats { components: 1, leafage, vertex_leafage: em.vertex_leafage(), entries: table.len(), max_conditioning };
    Ok((kept, stats))
}

/// Exact maximum-weight S-forest from an expanded rooted path model.
pub fn solve_rooted_path<W: Weight>(inst: &Instance<W>, em: &ExpandedTreeModel) -> Result<(Solution<W>, SolveStats), SolveError> {
    if em.n_vertices() != inst.n() {
        return Err(ModelError::VertexCount { got: em.n_vertices(), expected: inst.n() }.into());
    }
    if let Some(e) = non_rooted_path(em) {
        return Err(e.into());
    }
    per_component(inst, em, solve_connected)
}
