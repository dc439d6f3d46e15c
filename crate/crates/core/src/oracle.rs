//! Exhaustive ground truth for small instances and a solution verifier.

use crate::chordal::recognize_chordal;
use crate::error::SolveError;
use crate::graph::{is_s_forest, Instance, Solution};
use crate::weight::Weight;

/// Search-node budget used when callers have no better number.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Whether `V \ removed` induces an S-forest, and the weight of `removed`.
pub fn verify_sfvs<W: Weight>(inst: &Instance<W>, removed: &[usize]) -> (bool, W) {
    let mut gone = vec![false; inst.n()];
    for &v in removed {
        gone[v] = true;
    }
    let kept: Vec<usize> = (0..inst.n()).filter(|&v| !gone[v]).collect();
    let weight = W::sum_over(inst.weights(), (0..inst.n()).filter(|&v| gone[v]));
    (is_s_forest(inst, &kept), weight)
}

struct Search<'a, W> {
    inst: &'a Instance<W>,
    order: Vec<usize>,
    suffix: Vec<W>,
    chordal: bool,
    kept: Vec<bool>,
    stack: Vec<usize>,
    best: Vec<usize>,
    best_weight: W,
    nodes: u64,
    budget: u64,
}

impl<W: Weight> Search<'_, W> {
    fn can_add(&mut self, v: usize) -> bool {
        if self.chordal {
            // every new triangle contains v
            let nbrs: Vec<usize> = self.inst.neighbors(v).iter().copied().filter(|&x| self.kept[x]).collect();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if self.inst.has_edge(a, b) && (self.inst.in_s(v) || self.inst.in_s(a) || self.inst.in_s(b)) {
                        return false;
                    }
                }
            }
            true
        } else {
            self.stack.push(v);
            let ok = is_s_forest(self.inst, &self.stack);
            self.stack.pop();
            ok
        }
    }

    fn run(&mut self, i: usize, weight: W) -> Result<(), SolveError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolveError::OracleTimeout(self.budget));
        }
        if weight + self.suffix[i] <= self.best_weight {
            return Ok(());
        }
        if i == self.order.len() {
            self.best_weight = weight;
            self.best = self.stack.clone();
            return Ok(());
        }
        let v = self.order[i];
        if self.can_add(v) {
            self.kept[v] = true;
            self.stack.push(v);
            self.run(i + 1, weight + self.inst.weight(v))?;
            self.stack.pop();
            self.kept[v] = false;
        }
        self.run(i + 1, weight)
    }
}

/// Maximum-weight S-forest by include/exclude branch and bound with a
/// remaining-weight bound. Chordal inputs are searched in elimination order
/// with the S-triangle test; other graphs use the general S-cycle test.
pub fn brute_force_sfvs<W: Weight>(inst: &Instance<W>, budget: u64) -> Result<Solution<W>, SolveError> {
    let n = inst.n();
    let (order, chordal) = match recognize_chordal(inst) {
        Some(peo) => (peo.order, true),
        None => ((0..n).collect(), false),
    };
    let mut suffix = vec![W::zero(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + inst.weight(order[i]);
    }
    let mut search = Search {
        inst,
        order,
        suffix,
        chordal,
        kept: vec![false; n],
        stack: Vec::new(),
        best: Vec::new(),
        best_weight: W::zero(),
        nodes: 0,
        budget,
    };
    // the empty set is always feasible; anything reported must beat it strictly
    search.run(0, W::zero())?;
    let best = std::mem::take(&mut search.best);
    Ok(inst.solution_from_kept(&best))
}
