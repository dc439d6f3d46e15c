//! The bounded-leafage dynamic program over expanded tree models.

use rayon::prelude::*;

use crate::dp::{Branch, DpTable, Recurrence};
use crate::error::{ModelError, SolveError};
use crate::graph::{connected_components, Instance, Solution};
use crate::model::{validate_model, ExpandedTreeModel};
use crate::order::OrderIndex;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafageOptions {
    /// Table entries allowed per component before giving up.
    pub max_entries: usize,
    /// Re-solve every child subproblem with its full conditioning set and
    /// compare against the representative-reduced one.
    pub check_representatives: bool,
}

impl Default for LeafageOptions {
    fn default() -> Self {
        LeafageOptions { max_entries: 20_000_000, check_representatives: false }
    }
}

/// Numbers reported by the solvers, aggregated over components.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub components: usize,
    /// Largest host-tree leaf count of a component's expanded model.
    pub leafage: usize,
    /// Largest subtree leaf count of a component's expanded model.
    pub vertex_leafage: usize,
    /// Memo table entries, summed over components.
    pub entries: usize,
    /// Largest conditioning set in any table key.
    pub max_conditioning: usize,
}

impl SolveStats {
    fn merge(mut self, other: SolveStats) -> SolveStats {
        self.components += other.components;
        self.leafage = self.leafage.max(other.leafage);
        self.vertex_leafage = self.vertex_leafage.max(other.vertex_leafage);
        self.entries += other.entries;
        self.max_conditioning = self.max_conditioning.max(other.max_conditioning);
        self
    }
}

/// Key `(u, W)` standing for the optimum of `V_u` conditioned on `W`, with `W` sorted.
pub type LeafageKey = (usize, Vec<usize>);

pub struct LeafageRecurrence<'a, W> {
    inst: &'a Instance<W>,
    oi: &'a OrderIndex<'a>,
}

impl<'a, W: Weight> LeafageRecurrence<'a, W> {
    pub fn new(inst: &'a Instance<W>, oi: &'a OrderIndex<'a>) -> Self {
        LeafageRecurrence { inst, oi }
    }

    fn restrict(&self, set: &[usize], to: usize) -> Vec<usize> {
        set.iter().copied().filter(|&x| self.oi.adjacent(x, to)).collect()
    }

    fn check_key(&self, u: usize, w: &[usize]) -> Result<(), SolveError> {
        let bad = |why: &str| Err(SolveError::Internal(format!("key ({u}, {w:?}): {why}")));
        if w.windows(2).any(|p| p[0] >= p[1]) {
            return bad("conditioning set not sorted");
        }
        if w.iter().any(|&x| self.oi.le(x, u)) {
            return bad("conditioning set meets V_u");
        }
        for (i, &a) in w.iter().enumerate() {
            if !self.oi.adjacent(a, u) || w[i + 1..].iter().any(|&b| !self.oi.adjacent(a, b)) {
                return bad("{u} with the conditioning set is not a clique");
            }
        }
        if w.len() >= 3 && w.iter().any(|&x| self.inst.in_s(x)) {
            return bad("conditioning set contains an S-triangle");
        }
        Ok(())
    }
}

impl<W: Weight> Recurrence for LeafageRecurrence<'_, W> {
    type Key = LeafageKey;

    fn branches(&self, key: &LeafageKey) -> Result<Vec<Branch<LeafageKey>>, SolveError> {
        let (u, ref w) = *key;
        self.check_key(u, w)?;
        let oi = self.oi;
        let exclude = Branch { own: vec![], children: oi.pred(u).iter().map(|&c| (c, self.restrict(w, c))).collect() };
        if w.is_empty() {
            let include = Branch {
                own: vec![u],
                children: oi.pred(u).iter().map(|&c| (c, if oi.adjacent(u, c) { vec![u] } else { vec![] })).collect(),
            };
            return Ok(vec![exclude, include]);
        }
        let touches_s = self.inst.in_s(u) || w.iter().any(|&x| self.inst.in_s(x));
        if touches_s {
            if w.len() >= 2 {
                return Ok(vec![exclude]);
            }
            let t = w[0];
            let include = Branch {
                own: vec![u],
                children: oi
                    .pred_edge(u, t)
                    .into_iter()
                    .map(|c| {
                        let mut y = self.restrict(&[u, t], c);
                        y.sort_unstable();
                        (c, y)
                    })
                    .collect(),
            };
            return Ok(vec![exclude, include]);
        }
        let mut with_u = w.clone();
        with_u.push(u);
        let include = Branch {
            own: vec![u],
            children: oi.pred(u).iter().map(|&c| (c, oi.f_le2(&self.restrict(&with_u, c)))).collect(),
        };
        Ok(vec![exclude, include])
    }
}

/// Kept set and statistics of one connected instance with its own expanded model.
type ComponentResult = Result<(Vec<usize>, SolveStats), SolveError>;

/// Split into connected components, solve each (in parallel) on the model
/// restricted to it, and merge.
pub(crate) fn per_component<W, F>(inst: &Instance<W>, em: &ExpandedTreeModel, solve: F) -> Result<(Solution<W>, SolveStats), SolveError>
where
    W: Weight,
    F: Fn(&Instance<W>, &ExpandedTreeModel) -> ComponentResult + Sync,
{
    let violations = validate_model(&em.to_tree_model(), inst);
    if let Some(v) = violations.first() {
        return Err(SolveError::ModelMismatch(v.to_string()));
    }
    let whole = em.to_tree_model();
    let parts: Vec<(Vec<usize>, SolveStats)> = connected_components(inst)
        .into_par_iter()
        .map(|comp| {
            let sub_inst = inst.induced(&comp);
            let sub_em = ExpandedTreeModel::from_rooted(&whole.restrict(&comp))?;
            let (kept, stats) = solve(&sub_inst, &sub_em)?;
            Ok((kept.into_iter().map(|i| comp[i]).collect(), stats))
        })
        .collect::<Result<_, SolveError>>()?;
    let mut kept = Vec::new();
    let mut stats = SolveStats::default();
    for (k, s) in parts {
        kept.extend(k);
        stats = stats.merge(s);
    }
    Ok((inst.solution_from_kept(&kept), stats))
}

/// Evaluate every vertex-forest root with `rec` and reconstruct the union.
pub(crate) fn solve_roots<W, R>(
    inst: &Instance<W>,
    oi: &OrderIndex<'_>,
    rec: &R,
    table: &mut DpTable<R::Key, W>,
    root_key: impl Fn(usize) -> R::Key,
    cap: usize,
) -> Result<Vec<usize>, SolveError>
where
    W: Weight,
    R: Recurrence,
{
    for &r in oi.forest_roots() {
        table.evaluate(rec, inst.weights(), &root_key(r), cap)?;
    }
    let mut seen = vec![false; inst.n()];
    let mut kept = Vec::new();
    for &r in oi.forest_roots() {
        kept.extend(table.reconstruct(rec, inst.weights(), &root_key(r), &mut seen)?);
    }
    Ok(kept)
}

fn solve_connected<W: Weight>(inst: &Instance<W>, em: &ExpandedTreeModel, opts: &LeafageOptions) -> ComponentResult {
    let oi = OrderIndex::new(em, inst)?;
    let rec = LeafageRecurrence::new(inst, &oi);
    let leafage = em.host_leaf_count();
    let mut table = DpTable::new();
    let kept = solve_roots(inst, &oi, &rec, &mut table, |r| (r, Vec::new()), opts.max_entries)
        .map_err(|e| match e {
            SolveError::Resource { entries, .. } => SolveError::Resource { leafage, entries },
            e => e,
        })?;
    let max_conditioning = table.keys().map(|k| k.1.len()).max().unwrap_or(0);
    if max_conditioning > 2 * leafage + 1 {
        return Err(SolveError::Internal(format!(
            "conditioning set of size {max_conditioning} exceeds 2*{leafage}+1"
        )));
    }
    let stats = SolveStats {
        components: 1,
        leafage,
        vertex_leafage: em.vertex_leafage(),
        entries: table.len(),
        max_conditioning,
    };
    if opts.check_representatives {
        check_representatives(inst, &oi, &rec, &mut table, opts.max_entries)?;
    }
    Ok((kept, stats))
}

/// For every S-free key `(u, W)` and every `u' ∈ ◁u`, conditioning `V_{u'}`
/// on the full set `({u} ∪ W) ∩ N(u')` must give the same optimum as
/// conditioning on its representatives.
fn check_representatives<W: Weight>(
    inst: &Instance<W>,
    oi: &OrderIndex<'_>,
    rec: &LeafageRecurrence<'_, W>,
    table: &mut DpTable<LeafageKey, W>,
    cap: usize,
) -> Result<(), SolveError> {
    let keys: Vec<LeafageKey> = table
        .keys()
        .filter(|(u, w)| !inst.in_s(*u) && w.iter().all(|&x| !inst.in_s(x)))
        .cloned()
        .collect();
    for (u, w) in keys {
        let mut with_u = w.clone();
        with_u.push(u);
        with_u.sort_unstable();
        for &c in oi.pred(u) {
            let full = rec.restrict(&with_u, c);
            let reduced = oi.f_le2(&full);
            let a = table.evaluate(rec, inst.weights(), &(c, full.clone()), cap)?;
            let b = table.evaluate(rec, inst.weights(), &(c, reduced.clone()), cap)?;
            if a != b {
                return Err(SolveError::Internal(format!(
                    "representatives {reduced:?} of {full:?} change the optimum below {c}: {b} vs {a}"
                )));
            }
        }
    }
    Ok(())
}

/// Exact maximum-weight S-forest from an expanded tree model of `inst`.
pub fn solve_bounded_leafage<W: Weight>(
    inst: &Instance<W>,
    em: &ExpandedTreeModel,
    opts: &LeafageOptions,
) -> Result<(Solution<W>, SolveStats), SolveError> {
    if em.n_vertices() != inst.n() {
        return Err(ModelError::VertexCount { got: em.n_vertices(), expected: inst.n() }.into());
    }
    per_component(inst, em, |i, m| solve_connected(i, m, opts))
}
