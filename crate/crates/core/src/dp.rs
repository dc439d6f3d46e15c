//! A memoized evaluator for max-weight recurrences over hashable keys.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use crate::error::SolveError;
use crate::weight::Weight;

/// One alternative of a recurrence: the vertices it adds directly plus the
/// keys whose optimal sets it unions in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch<K> {
    pub own: Vec<usize>,
    pub children: Vec<K>,
}

/// A recurrence whose value at a key is the heaviest of its branches.
pub trait Recurrence {
    type Key: Clone + Eq + Hash + std::fmt::Debug;

    /// Alternatives for `key`, in preference order. Must be nonempty.
    fn branches(&self, key: &Self::Key) -> Result<Vec<Branch<Self::Key>>, SolveError>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry<W> {
    pub weight: W,
    /// Index of the winning branch.
    pub choice: usize,
}

/// Memo table. Only weights and branch choices are stored; reconstruction
/// asks the recurrence for the branches again.
#[derive(Debug, Clone)]
pub struct DpTable<K, W> {
    entries: HashMap<K, Entry<W>>,
}

impl<K: Clone + Eq + Hash + std::fmt::Debug, W: Weight> DpTable<K, W> {
    pub fn new() -> Self {
        DpTable { entries: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Entry<W>> {
        self.entries.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    /// Evaluate `key` and everything it depends on, iteratively. Ties keep
    /// the earlier branch. Fails once the table would exceed `cap` entries.
    pub fn evaluate<R: Recurrence<Key = K>>(
        &mut self,
        rec: &R,
        weights: &[W],
        key: &K,
        cap: usize,
    ) -> Result<W, SolveError> {
        struct Frame<K> {
            key: K,
            branches: Option<Vec<Branch<K>>>,
        }
        let mut in_progress: HashSet<K> = HashSet::new();
        let mut stack = vec![Frame { key: key.clone(), branches: None }];
        while let Some(top) = stack.last_mut() {
            if self.entries.contains_key(&top.key) {
                stack.pop();
                continue;
            }
            match top.branches.take() {
                None => {
                    let branches = rec.branches(&top.key)?;
                    if branches.is_empty() {
                        return Err(SolveError::Internal(format!("no branch for key {:?}", top.key)));
                    }
                    in_progress.insert(top.key.clone());
                    let mut pending = Vec::new();
                    for child in branches.iter().flat_map(|b| &b.children) {
                        if in_progress.contains(child) {
                            return Err(SolveError::Internal(format!("cyclic dependency through key {child:?}")));
                        }
                        if !self.entries.contains_key(child) {
                            pending.push(Frame { key: child.clone(), branches: None });
                        }
                    }
                    top.branches = Some(branches);
                    stack.extend(pending);
                }
                Some(branches) => {
                    let mut best: Option<Entry<W>> = None;
                    for (i, b) in branches.iter().enumerate() {
                        let mut w = W::sum_over(weights, b.own.iter().copied());
                        for child in &b.children {
                            w = w + self.entries[child].weight;
                        }
                        if best.is_none_or(|e| w > e.weight) {
                            best = Some(Entry { weight: w, choice: i });
                        }
                    }
                    let key = stack.pop().expect("frame on stack").key;
                    in_progress.remove(&key);
                    if self.entries.len() >= cap {
                        return Err(SolveError::Resource { leafage: 0, entries: self.entries.len() + 1 });
                    }
                    self.entries.insert(key, best.expect("nonempty branches"));
                }
            }
        }
        Ok(self.entries[key].weight)
    }

    /// The optimal set of an evaluated key. Fails if some vertex would be
    /// added twice (the branch's parts were not disjoint) or if the set's
    /// weight disagrees with the table.
    pub fn reconstruct<R: Recurrence<Key = K>>(
        &self,
        rec: &R,
        weights: &[W],
        key: &K,
        seen: &mut [bool],
    ) -> Result<Vec<usize>, SolveError> {
        let mut out = Vec::new();
        let mut stack = vec![key.clone()];
        while let Some(k) = stack.pop() {
            let entry = self.entries.get(&k).ok_or_else(|| SolveError::Internal(format!("dangling key {k:?}")))?;
            let mut branches = rec.branches(&k)?;
            if entry.choice >= branches.len() {
                return Err(SolveError::Internal(format!("stale choice for key {k:?}")));
            }
            let b = branches.swap_remove(entry.choice);
            for v in b.own {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(SolveError::Internal(format!("vertex {v} selected twice under key {k:?}")));
                }
                out.push(v);
            }
            stack.extend(b.children);
        }
        let total = W::sum_over(weights, out.iter().copied());
        let expected = self.entries[key].weight;
        if total != expected {
            return Err(SolveError::Internal(format!("reconstructed weight {total} differs from table weight {expected}")));
        }
        out.sort_unstable();
        Ok(out)
    }
}

impl<K: Clone + Eq + Hash + std::fmt::Debug, W: Weight> Default for DpTable<K, W> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Maximum-weight independent set on a path, keyed by prefix length.
    struct PathMis;

    impl Recurrence for PathMis {
        type Key = usize;

        fn branches(&self, &k: &usize) -> Result<Vec<Branch<usize>>, SolveError> {
            Ok(match k {
                0 => vec![Branch { own: vec![], children: vec![] }],
                1 => vec![Branch { own: vec![], children: vec![] }, Branch { own: vec![0], children: vec![] }],
                _ => vec![
                    Branch { own: vec![], children: vec![k - 1] },
                    Branch { own: vec![k - 1], children: vec![k - 2] },
                ],
            })
        }
    }

    #[test]
    fn path_independent_set() {
        let w = vec![3u64, 5, 4, 1, 6];
        let mut t = DpTable::new();
        assert_eq!(t.evaluate(&PathMis, &w, &5, usize::MAX).unwrap(), 13);
        let mut seen = vec![false; 5];
        assert_eq!(t.reconstruct(&PathMis, &w, &5, &mut seen).unwrap(), vec![0, 2, 4]);
    }

    #[test]
    fn ties_prefer_first_branch() {
        let w = vec![0u64];
        let mut t = DpTable::new();
        assert_eq!(t.evaluate(&PathMis, &w, &1, usize::MAX).unwrap(), 0);
        assert_eq!(t.get(&1).unwrap().choice, 0);
    }

    #[test]
    fn deep_recursion_does_not_overflow() {
        let w = vec![1u64; 200_000];
        let mut t = DpTable::new();
        assert_eq!(t.evaluate(&PathMis, &w, &200_000, usize::MAX).unwrap(), 100_000);
    }

    #[test]
    fn cap_is_enforced() {
        let w = vec![1u64; 10];
        let mut t = DpTable::new();
        assert!(matches!(t.evaluate(&PathMis, &w, &10, 4), Err(SolveError::Resource { .. })));
    }

    struct Loop;

    impl Recurrence for Loop {
        type Key = u8;

        fn branches(&self, &k: &u8) -> Result<Vec<Branch<u8>>, SolveError> {
            Ok(vec![Branch { own: vec![], children: vec![(k + 1) % 3] }])
        }
    }

    #[test]
    fn cycles_are_reported() {
        let mut t: DpTable<u8, u64> = DpTable::new();
        assert!(matches!(t.evaluate(&Loop, &[], &0, usize::MAX), Err(SolveError::Internal(_))));
    }
}
