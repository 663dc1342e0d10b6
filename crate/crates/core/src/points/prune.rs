//! Greatest-fixed-point pruning of pre-points to points.

use std::collections::VecDeque;

use serde::Serialize;

use crate::exec::Exec;
use crate::lattice::Elem;

use super::mode::PointCondition;
use super::prepoint::CandidateSet;

/// One deleted candidate and the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PruneEvent {
    pub candidate: usize,
    pub witness: Elem,
    pub condition: PointCondition,
    /// Round (round-synchronous) or propagation depth (worklist) of the deletion.
    pub round: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PruneStrategy {
    #[default]
    /// Rechecks only candidates that could see a newly dead character.
    Worklist,
    /// Scans every live candidate each round and deletes at the round barrier.
    Rounds(Exec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneOutcome {
    pub alive: Vec<bool>,
    pub trace: Vec<PruneEvent>,
}

impl CandidateSet {
    pub fn prune(&self, strategy: PruneStrategy) -> PruneOutcome {
        match strategy {
            PruneStrategy::Worklist => {
                let order: Vec<usize> = (0..self.len()).collect();
                self.prune_worklist(&order)
            }
            PruneStrategy::Rounds(exec) => self.prune_rounds(exec),
        }
    }

    /// Worklist pruning with a caller-chosen initial scan order.
    pub fn prune_worklist(&self, order: &[usize]) -> PruneOutcome {
        let n = self.len();
        let k = self.characters.len();
        let mut alive = vec![true; n];
        let mut count = vec![0usize; k];
        let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); k];
        for u in 0..n {
            count[self.char_of[u]] += 1;
            let mut s = self.succ[u];
            while s != 0 {
                let q = s.trailing_zeros() as usize;
                s &= s - 1;
                watchers[q].push(u);
            }
        }
        let mut live = self.live_characters(&alive);
        let mut queued = vec![false; n];
        let mut queue: VecDeque<(usize, usize)> = VecDeque::with_capacity(n);
        for &u in order {
            if !queued[u] {
                queued[u] = true;
                queue.push_back((u, 0));
            }
        }
        let mut trace = Vec::new();
        while let Some((u, depth)) = queue.pop_front() {
            queued[u] = false;
            if !alive[u] {
                continue;
            }
            let Some((witness, condition)) = self.violation(u, live) else {
                continue;
            };
            alive[u] = false;
            trace.push(PruneEvent { candidate: u, witness, condition, round: depth });
            let q = self.char_of[u];
            count[q] -= 1;
            if count[q] == 0 {
                live &= !(1u64 << q);
                for &w in &watchers[q] {
                    if alive[w] && !queued[w] {
                        queued[w] = true;
                        queue.push_back((w, depth + 1));
                    }
                }
            }
        }
        PruneOutcome { alive, trace }
    }

    fn prune_rounds(&self, exec: Exec) -> PruneOutcome {
        let n = self.len();
        let mut alive = vec![true; n];
        let mut trace = Vec::new();
        let mut round = 0;
        loop {
            let live = self.live_characters(&alive);
            let snapshot = &alive;
            let verdicts = exec.map_range(0..n, |u| {
                if snapshot[u] {
                    self.violation(u, live)
                } else {
                    None
                }
            });
            let mut changed = false;
            for (u, v) in verdicts.into_iter().enumerate() {
                if let Some((witness, condition)) = v {
                    alive[u] = false;
                    changed = true;
                    trace.push(PruneEvent { candidate: u, witness, condition, round });
                }
            }
            if !changed {
                break;
            }
            round += 1;
        }
        PruneOutcome { alive, trace }
    }

    /// A subset is closed when every member meets the witness conditions inside it.
    pub fn is_closed(&self, subset: &[bool]) -> bool {
        let live = self.live_characters(subset);
        (0..self.len()).all(|u| !subset[u] || self.violation(u, live).is_none())
    }

    /// Union of all closed subsets, by enumerating every subset. Only for small sets.
    pub fn brute_force_largest_closed(&self) -> Vec<bool> {
        let n = self.len();
        assert!(n <= 20, "brute force over 2^{n} subsets refused");
        let mut union = vec![false; n];
        let mut subset = vec![false; n];
        for mask in 0u64..(1u64 << n) {
            for (u, s) in subset.iter_mut().enumerate() {
                *s = mask >> u & 1 == 1;
            }
            if self.is_closed(&subset) {
                for u in 0..n {
                    union[u] |= subset[u];
                }
            }
        }
        union
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::ModalFrame;
    use crate::lattice::FiniteLattice;
    use crate::points::mode::ConstructionMode;

    fn frames() -> Vec<ModalFrame> {
        vec![
            ModalFrame::identity(FiniteLattice::chain(3)),
            ModalFrame::new(FiniteLattice::chain(3), vec![0, 2, 2], vec![0, 2, 2]).unwrap(),
            ModalFrame::new(FiniteLattice::boolean(2), vec![0, 0, 0, 3], vec![0, 0, 0, 3]).unwrap(),
            ModalFrame::new(FiniteLattice::chain(4), vec![0, 0, 1, 3], vec![0, 2, 3, 3]).unwrap(),
        ]
    }

    #[test]
    fn strategies_agree_with_brute_force() {
        for f in frames() {
            for mode in ConstructionMode::ALL {
                let set = CandidateSet::new(&f, mode);
                if set.len() > 14 {
                    continue;
                }
                let brute = set.brute_force_largest_closed();
                assert_eq!(set.prune(PruneStrategy::Worklist).alive, brute, "{mode}");
                assert_eq!(set.prune(PruneStrategy::Rounds(Exec::Sequential)).alive, brute);
                assert_eq!(set.prune(PruneStrategy::Rounds(Exec::Parallel)).alive, brute);
            }
        }
    }

    #[test]
    fn scan_order_does_not_matter() {
        for f in frames() {
            for mode in ConstructionMode::ALL {
                let set = CandidateSet::new(&f, mode);
                let forward: Vec<usize> = (0..set.len()).collect();
                let backward: Vec<usize> = (0..set.len()).rev().collect();
                let a = set.prune_worklist(&forward).alive;
                assert_eq!(a, set.prune_worklist(&backward).alive);
                assert!(set.is_closed(&a));
            }
        }
    }

    #[test]
    fn identity_chain_keeps_everything() {
        let f = ModalFrame::identity(FiniteLattice::chain(3));
        for mode in [ConstructionMode::RelSp, ConstructionMode::RelSpqC] {
            let out = CandidateSet::new(&f, mode).prune(PruneStrategy::Worklist);
            assert!(out.alive.iter().all(|&a| a));
            assert!(out.trace.is_empty());
        }
    }
}
