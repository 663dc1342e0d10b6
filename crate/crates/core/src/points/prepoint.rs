use std::collections::HashMap;
use std::fmt;

use crate::frame::ModalFrame;
use crate::lattice::{members, Character, Elem, ElemSet, FiniteLattice, PrincipalFilter};

use super::mode::{ConstructionMode, PointCondition, PrePointCondition};

/// `(p, a)` when `filter` is `None`, `(p, a, ↑g)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrePoint {
    pub character: Character,
    pub element: Elem,
    pub filter: Option<PrincipalFilter>,
}

impl PrePoint {
    /// The filter the relation tests against: `F` for triples, `F_p` for pairs.
    pub fn relation_filter(&self, frame: &ModalFrame) -> PrincipalFilter {
        self.filter.unwrap_or_else(|| frame.canonical_filter(self.character))
    }

    pub fn display<'a>(&'a self, lattice: &'a FiniteLattice) -> PrePointDisplay<'a> {
        PrePointDisplay { point: self, lattice }
    }
}

pub struct PrePointDisplay<'a> {
    point: &'a PrePoint,
    lattice: &'a FiniteLattice,
}

impl fmt::Display for PrePointDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.lattice;
        let p = self.point;
        write!(f, "(p:{}, a:{}", l.name(p.character.prime), l.name(p.element))?;
        if let Some(g) = p.filter {
            write!(f, ", F:^{}", l.name(g.generator))?;
        }
        f.write_str(")")
    }
}

/// Which pre-point conditions a tuple fails, for a given mode.
pub fn prepoint_failures(
    frame: &ModalFrame,
    mode: ConstructionMode,
    point: &PrePoint,
) -> Vec<PrePointCondition> {
    let l = &frame.lattice;
    let p = point.character;
    let fp = frame.canonical_filter(p).generator;
    mode.prepoint_conditions()
        .iter()
        .copied()
        .filter(|&cond| {
            let ok = match cond {
                PrePointCondition::DiamondNull => !p.eval(l, frame.dia_of(point.element)),
                PrePointCondition::DiamondNullBelow => {
                    frame.diamond_null_set(p) & !l.down_set(point.element) == 0
                }
                PrePointCondition::ContainsCanonicalFilter => {
                    point.filter.is_some_and(|g| l.leq(g.generator, fp))
                }
                PrePointCondition::InsideCanonicalFilter => {
                    point.filter.is_some_and(|g| l.leq(fp, g.generator))
                }
            };
            !ok
        })
        .collect()
}

/// Every pre-point of the mode, ordered by character, then element, then filter generator.
pub fn enumerate_prepoints(frame: &ModalFrame, mode: ConstructionMode) -> Vec<PrePoint> {
    let l = &frame.lattice;
    let mut out = Vec::new();
    for p in l.characters() {
        let fp = frame.canonical_filter(p).generator;
        let elements: Vec<Elem> = if mode.requires(PrePointCondition::DiamondNullBelow) {
            if frame.is_replete(p) {
                vec![frame.canonical_element(p)]
            } else {
                Vec::new()
            }
        } else {
            members(frame.diamond_null_set(p)).collect()
        };
        let filters: Vec<Option<PrincipalFilter>> = if !mode.is_triple() {
            vec![None]
        } else {
            l.elements()
                .filter(|&g| {
                    (!mode.requires(PrePointCondition::ContainsCanonicalFilter) || l.leq(g, fp))
                        && (!mode.requires(PrePointCondition::InsideCanonicalFilter)
                            || l.leq(fp, g))
                })
                .map(|generator| Some(PrincipalFilter { generator }))
                .collect()
        };
        for &element in &elements {
            for &filter in &filters {
                out.push(PrePoint { character: p, element, filter });
            }
        }
    }
    out
}

/// The relation on pre-points: `q(a) = 0`, and `F ⊆ char(q)` (with `F_p` for pairs).
pub fn relation_holds(frame: &ModalFrame, u: &PrePoint, v: &PrePoint) -> bool {
    let l = &frame.lattice;
    !v.character.eval(l, u.element) && !l.leq(u.relation_filter(frame).generator, v.character.prime)
}

/// Pre-points with everything pruning needs precomputed.
///
/// The relation only sees the target's character, so pruning works on sets of live
/// characters: bit `i` of a mask stands for `characters[i]`.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub mode: ConstructionMode,
    pub characters: Vec<Character>,
    pub prepoints: Vec<PrePoint>,
    pub(crate) char_of: Vec<usize>,
    /// Per element `c`: characters `q` with `q(c) = 1`.
    pub(crate) contains: Vec<u64>,
    /// Per candidate: characters of the pre-points it relates to.
    pub(crate) succ: Vec<u64>,
    /// Per candidate: the `c` with `c ≰ a`.
    pub(crate) diamond_checks: Vec<ElemSet>,
    /// Per candidate: the `c ∉ F`; empty for pairs.
    pub(crate) box_checks: Vec<ElemSet>,
}

impl CandidateSet {
    pub fn new(frame: &ModalFrame, mode: ConstructionMode) -> Self {
        Self::from_prepoints(frame, mode, enumerate_prepoints(frame, mode))
    }

    pub fn from_prepoints(frame: &ModalFrame, mode: ConstructionMode, prepoints: Vec<PrePoint>) -> Self {
        let l = &frame.lattice;
        let characters = l.characters();
        assert!(characters.len() <= 64, "at most 64 characters are supported");
        let index: HashMap<Elem, usize> =
            characters.iter().enumerate().map(|(i, p)| (p.prime, i)).collect();
        let contains: Vec<u64> = l
            .elements()
            .map(|c| {
                characters
                    .iter()
                    .enumerate()
                    .filter(|(_, q)| q.eval(l, c))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        let mut char_of = Vec::with_capacity(prepoints.len());
        let mut succ = Vec::with_capacity(prepoints.len());
        let mut diamond_checks = Vec::with_capacity(prepoints.len());
        let mut box_checks = Vec::with_capacity(prepoints.len());
        for u in &prepoints {
            char_of.push(index[&u.character.prime]);
            let g = u.relation_filter(frame).generator;
            let mask = characters
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.eval(l, u.element) && !l.leq(g, q.prime))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            succ.push(mask);
            diamond_checks.push(l.all() & !l.down_set(u.element));
            box_checks.push(match u.filter {
                Some(f) if mode.is_triple() => l.all() & !l.up_set(f.generator),
                _ => 0,
            });
        }
        CandidateSet {
            mode,
            characters,
            prepoints,
            char_of,
            contains,
            succ,
            diamond_checks,
            box_checks,
        }
    }

    pub fn len(&self) -> usize {
        self.prepoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prepoints.is_empty()
    }

    /// Characters carried by the live candidates.
    pub(crate) fn live_characters(&self, alive: &[bool]) -> u64 {
        alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .fold(0, |acc, (u, _)| acc | 1 << self.char_of[u])
    }

    /// The first witness condition candidate `u` fails when only `live` characters remain.
    pub(crate) fn violation(&self, u: usize, live: u64) -> Option<(Elem, PointCondition)> {
        let reach = self.succ[u] & live;
        for c in members(self.diamond_checks[u]) {
            if self.contains[c] & reach == 0 {
                return Some((c, PointCondition::DiamondWitness));
            }
        }
        for c in members(self.box_checks[u]) {
            if !self.contains[c] & reach == 0 {
                return Some((c, PointCondition::BoxWitness));
            }
        }
        None
    }

    /// Pairwise relation between two candidates.
    pub fn related(&self, u: usize, v: usize) -> bool {
        self.succ[u] & (1 << self.char_of[v]) != 0
    }
}
