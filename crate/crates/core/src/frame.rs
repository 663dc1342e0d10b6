//! Modal frames: a finite frame with total box and diamond tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{bit, members, Character, Elem, ElemSet, FiniteLattice, LatticeError, PrincipalFilter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operator {
    Box,
    Diamond,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Box => "box",
            Operator::Diamond => "diamond",
        })
    }
}

/// Inequalities a modal frame may satisfy. The first four are required of every modal frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `⊤ ≤ □⊤`
    TopBox,
    /// `□a ∧ □b ≤ □(a ∧ b)`
    BoxMeet,
    /// `□a ∧ ◇b ≤ ◇(a ∧ b)`
    BoxDiamondMeet,
    /// `◇⊥ ≤ ⊥`
    DiamondBottom,
    /// `◇(a ∨ b) ≤ ◇a ∨ ◇b`
    DiamondJoin,
    /// `□(a ∨ b) ≤ □a ∨ ◇b`
    BoxJoinMixed,
    /// `□a ≤ ◇a`
    Serial,
    /// `□a ≤ a`
    BoxReflexive,
    /// `a ≤ ◇a`
    DiamondReflexive,
    /// `□a ≤ □□a`
    BoxTransitive,
    /// `◇◇a ≤ ◇a`
    DiamondTransitive,
    /// `◇□a ≤ a`
    DiamondBoxSymmetric,
    /// `a ≤ □◇a`
    BoxDiamondSymmetric,
}

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::TopBox,
        Axiom::BoxMeet,
        Axiom::BoxDiamondMeet,
        Axiom::DiamondBottom,
        Axiom::DiamondJoin,
        Axiom::BoxJoinMixed,
        Axiom::Serial,
        Axiom::BoxReflexive,
        Axiom::DiamondReflexive,
        Axiom::BoxTransitive,
        Axiom::DiamondTransitive,
        Axiom::DiamondBoxSymmetric,
        Axiom::BoxDiamondSymmetric,
    ];

    pub const MODAL: [Axiom; 4] =
        [Axiom::TopBox, Axiom::BoxMeet, Axiom::BoxDiamondMeet, Axiom::DiamondBottom];

    pub const EQUIVALENCE: [Axiom; 6] = [
        Axiom::BoxReflexive,
        Axiom::DiamondReflexive,
        Axiom::BoxTransitive,
        Axiom::DiamondTransitive,
        Axiom::DiamondBoxSymmetric,
        Axiom::BoxDiamondSymmetric,
    ];

    /// Axioms whose validity transfers between a modally spectral frame and its compacts.
    pub const TRANSFERABLE: [Axiom; 9] = [
        Axiom::DiamondJoin,
        Axiom::BoxJoinMixed,
        Axiom::Serial,
        Axiom::BoxReflexive,
        Axiom::DiamondReflexive,
        Axiom::BoxTransitive,
        Axiom::DiamondTransitive,
        Axiom::DiamondBoxSymmetric,
        Axiom::BoxDiamondSymmetric,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::TopBox => "top-box",
            Axiom::BoxMeet => "box-meet",
            Axiom::BoxDiamondMeet => "box-diamond-meet",
            Axiom::DiamondBottom => "diamond-bottom",
            Axiom::DiamondJoin => "diamond-join",
            Axiom::BoxJoinMixed => "box-join-mixed",
            Axiom::Serial => "serial",
            Axiom::BoxReflexive => "box-reflexive",
            Axiom::DiamondReflexive => "diamond-reflexive",
            Axiom::BoxTransitive => "box-transitive",
            Axiom::DiamondTransitive => "diamond-transitive",
            Axiom::DiamondBoxSymmetric => "diamond-box-symmetric",
            Axiom::BoxDiamondSymmetric => "box-diamond-symmetric",
        }
    }

    fn arity(self) -> usize {
        match self {
            Axiom::TopBox | Axiom::DiamondBottom => 0,
            Axiom::BoxMeet | Axiom::BoxDiamondMeet | Axiom::DiamondJoin | Axiom::BoxJoinMixed => 2,
            _ => 1,
        }
    }

    /// Whether the inequality holds at the given arguments (unused arguments ignored).
    pub fn holds_at(self, frame: &ModalFrame, a: Elem, b: Elem) -> bool {
        let l = &frame.lattice;
        let bx = |x| frame.box_of(x);
        let dm = |x| frame.dia_of(x);
        match self {
            Axiom::TopBox => l.leq(l.top(), bx(l.top())),
            Axiom::BoxMeet => l.leq(l.meet(bx(a), bx(b)), bx(l.meet(a, b))),
            Axiom::BoxDiamondMeet => l.leq(l.meet(bx(a), dm(b)), dm(l.meet(a, b))),
            Axiom::DiamondBottom => l.leq(dm(l.bottom()), l.bottom()),
            Axiom::DiamondJoin => l.leq(dm(l.join(a, b)), l.join(dm(a), dm(b))),
            Axiom::BoxJoinMixed => l.leq(bx(l.join(a, b)), l.join(bx(a), dm(b))),
            Axiom::Serial => l.leq(bx(a), dm(a)),
            Axiom::BoxReflexive => l.leq(bx(a), a),
            Axiom::DiamondReflexive => l.leq(a, dm(a)),
            Axiom::BoxTransitive => l.leq(bx(a), bx(bx(a))),
            Axiom::DiamondTransitive => l.leq(dm(dm(a)), dm(a)),
            Axiom::DiamondBoxSymmetric => l.leq(dm(bx(a)), a),
            Axiom::BoxDiamondSymmetric => l.leq(a, bx(dm(a))),
        }
    }

    /// Every violating argument tuple, in element order.
    pub fn violations(self, frame: &ModalFrame) -> Vec<Vec<Elem>> {
        let l = &frame.lattice;
        let mut out = Vec::new();
        match self.arity() {
            0 => {
                if !self.holds_at(frame, l.bottom(), l.bottom()) {
                    out.push(Vec::new());
                }
            }
            1 => {
                for a in l.elements() {
                    if !self.holds_at(frame, a, a) {
                        out.push(vec![a]);
                    }
                }
            }
            _ => {
                for a in l.elements() {
                    for b in l.elements() {
                        if !self.holds_at(frame, a, b) {
                            out.push(vec![a, b]);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn first_violation(self, frame: &ModalFrame) -> Option<Vec<Elem>> {
        let l = &frame.lattice;
        match self.arity() {
            0 => (!self.holds_at(frame, l.bottom(), l.bottom())).then(Vec::new),
            1 => l.elements().find(|&a| !self.holds_at(frame, a, a)).map(|a| vec![a]),
            _ => l
                .elements()
                .flat_map(|a| l.elements().map(move |b| (a, b)))
                .find(|&(a, b)| !self.holds_at(frame, a, b))
                .map(|(a, b)| vec![a, b]),
        }
    }

    pub fn holds(self, frame: &ModalFrame) -> bool {
        self.first_violation(frame).is_none()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{op} table has {got} entries, the lattice has {expected} elements")]
    TableSize { op: Operator, got: usize, expected: usize },
    #[error("{op} is not monotone: `{a}` <= `{b}` but the images are not ordered")]
    NotMonotone { op: Operator, a: String, b: String },
    #[error("axiom {axiom} fails at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<String> },
}

/// A finite frame with monotone box and diamond operators satisfying the modal frame axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalFrame {
    pub lattice: FiniteLattice,
    box_table: Vec<Elem>,
    dia_table: Vec<Elem>,
}

impl ModalFrame {
    /// Validate operator tables: monotonicity and the four modal frame axioms.
    pub fn new(
        lattice: FiniteLattice,
        box_table: Vec<Elem>,
        dia_table: Vec<Elem>,
    ) -> Result<Self, FrameError> {
        let n = lattice.len();
        for (op, table) in [(Operator::Box, &box_table), (Operator::Diamond, &dia_table)] {
            if table.len() != n {
                return Err(FrameError::TableSize { op, got: table.len(), expected: n });
            }
            if table.iter().any(|&v| v >= n) {
                return Err(FrameError::TableSize { op, got: table.len(), expected: n });
            }
            if let Some((a, b)) = lattice.monotone_violation(&lattice, table) {
                return Err(FrameError::NotMonotone {
                    op,
                    a: lattice.name(a).to_string(),
                    b: lattice.name(b).to_string(),
                });
            }
        }
        let frame = ModalFrame { lattice, box_table, dia_table };
        for axiom in Axiom::MODAL {
            if let Some(w) = axiom.first_violation(&frame) {
                return Err(FrameError::AxiomViolation {
                    axiom,
                    witness: w.iter().map(|&e| frame.lattice.name(e).to_string()).collect(),
                });
            }
        }
        Ok(frame)
    }

    /// Both operators the identity.
    pub fn identity(lattice: FiniteLattice) -> Self {
        let id: Vec<Elem> = lattice.elements().collect();
        ModalFrame::new(lattice, id.clone(), id).expect("identity operators are modal")
    }

    #[inline]
    pub fn box_of(&self, a: Elem) -> Elem {
        self.box_table[a]
    }

    #[inline]
    pub fn dia_of(&self, a: Elem) -> Elem {
        self.dia_table[a]
    }

    pub fn box_table(&self) -> &[Elem] {
        &self.box_table
    }

    pub fn dia_table(&self) -> &[Elem] {
        &self.dia_table
    }

    pub fn apply(&self, op: Operator, a: Elem) -> Elem {
        match op {
            Operator::Box => self.box_of(a),
            Operator::Diamond => self.dia_of(a),
        }
    }

    /// Every violation of every axiom, for reporting.
    pub fn axiom_report(&self) -> BTreeMap<Axiom, Vec<Vec<Elem>>> {
        Axiom::ALL.iter().map(|&ax| (ax, ax.violations(self))).collect()
    }

    pub fn classify(&self) -> FrameClass {
        let per_axiom: BTreeMap<Axiom, bool> =
            Axiom::ALL.iter().map(|&ax| (ax, ax.holds(self))).collect();
        let modal = Axiom::MODAL.iter().all(|ax| per_axiom[ax]);
        let lower = modal && per_axiom[&Axiom::DiamondJoin];
        let convex = lower && per_axiom[&Axiom::BoxJoinMixed];
        let serial = modal && per_axiom[&Axiom::Serial];
        let equivalence = modal && Axiom::EQUIVALENCE.iter().all(|ax| per_axiom[ax]);
        let modally_spectral = self.spectrality().holds();
        FrameClass { modal, lower, convex, serial, equivalence, modally_spectral, per_axiom }
    }

    /// The canonical filter `F_p = {c | p(□c) = 1}`, always principal here.
    pub fn canonical_filter(&self, p: Character) -> PrincipalFilter {
        let l = &self.lattice;
        let members = l.set_where(|c| p.eval(l, self.box_of(c)));
        debug_assert!(l.is_filter(members));
        PrincipalFilter { generator: l.big_meet(members) }
    }

    /// The canonical element `a_p = ⋁{c | p(◇c) = 0}`.
    pub fn canonical_element(&self, p: Character) -> Elem {
        let l = &self.lattice;
        l.join_where(|c| !p.eval(l, self.dia_of(c)))
    }

    /// `{c | p(◇c) = 0}`.
    pub fn diamond_null_set(&self, p: Character) -> ElemSet {
        let l = &self.lattice;
        l.set_where(|c| !p.eval(l, self.dia_of(c)))
    }

    /// A character is replete when `p(◇a_p) = 0`.
    pub fn is_replete(&self, p: Character) -> bool {
        !p.eval(&self.lattice, self.dia_of(self.canonical_element(p)))
    }

    pub fn is_replete_frame(&self) -> bool {
        self.lattice.characters().into_iter().all(|p| self.is_replete(p))
    }

    /// Spectrality of the frame and compactness/continuity of both operators,
    /// each computed from its definition.
    pub fn spectrality(&self) -> Spectrality {
        let l = &self.lattice;
        let compacts = l.compacts();
        let spectral = l.elements().all(|a| l.big_join(compacts & l.down_set(a)) == a)
            && compacts & bit(l.top()) != 0
            && members(compacts)
                .all(|a| members(compacts).all(|b| compacts & bit(l.meet(a, b)) != 0));
        let compact_op = |t: &[Elem]| members(compacts).all(|a| compacts & bit(t[a]) != 0);
        let continuous_op = |t: &[Elem]| {
            if l.len() > crate::lattice::LITERAL_SUBSET_LIMIT {
                // Finite directed sets contain their join; monotone maps preserve it.
                return l.monotone_violation(l, t).is_none();
            }
            l.directed_subsets().all(|s| {
                t[l.big_join(s)] == members(s).fold(l.bottom(), |acc, x| l.join(acc, t[x]))
            })
        };
        Spectrality {
            spectral,
            box_compact: compact_op(&self.box_table),
            dia_compact: compact_op(&self.dia_table),
            box_continuous: continuous_op(&self.box_table),
            dia_continuous: continuous_op(&self.dia_table),
        }
    }

    pub fn show(&self, a: Elem) -> &str {
        self.lattice.name(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Spectrality {
    pub spectral: bool,
    pub box_compact: bool,
    pub dia_compact: bool,
    pub box_continuous: bool,
    pub dia_continuous: bool,
}

impl Spectrality {
    pub fn holds(&self) -> bool {
        self.spectral
            && self.box_compact
            && self.dia_compact
            && self.box_continuous
            && self.dia_continuous
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameClass {
    pub modal: bool,
    pub lower: bool,
    pub convex: bool,
    pub serial: bool,
    pub equivalence: bool,
    pub modally_spectral: bool,
    pub per_axiom: BTreeMap<Axiom, bool>,
}

impl FrameClass {
    pub fn satisfies(&self, axiom: Axiom) -> bool {
        self.per_axiom[&axiom]
    }
}

/// Which frame-morphism law failed, with the offending arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismFailure {
    pub law: &'static str,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "class")]
pub enum MorphismClass {
    NotMorphism(MorphismFailure),
    Lax,
    BoxStrict,
    DiamondStrict,
    Strict,
}

impl MorphismClass {
    pub fn is_morphism(&self) -> bool {
        !matches!(self, MorphismClass::NotMorphism(_))
    }

    pub fn is_box_strict(&self) -> bool {
        matches!(self, MorphismClass::BoxStrict | MorphismClass::Strict)
    }

    pub fn is_diamond_strict(&self) -> bool {
        matches!(self, MorphismClass::DiamondStrict | MorphismClass::Strict)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MorphismClass::NotMorphism(_) => "not_morphism",
            MorphismClass::Lax => "lax",
            MorphismClass::BoxStrict => "box_strict",
            MorphismClass::DiamondStrict => "diamond_strict",
            MorphismClass::Strict => "strict",
        }
    }
}

/// Frame-morphism laws only: top, bottom, binary meets and binary joins.
pub fn frame_morphism_failure(
    source: &FiniteLattice,
    target: &FiniteLattice,
    map: &[Elem],
) -> Option<MorphismFailure> {
    if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
        return Some(MorphismFailure { law: "total", witness: Vec::new() });
    }
    if map[source.top()] != target.top() {
        return Some(MorphismFailure { law: "top", witness: vec![source.top()] });
    }
    if map[source.bottom()] != target.bottom() {
        return Some(MorphismFailure { law: "bottom", witness: vec![source.bottom()] });
    }
    for a in source.elements() {
        for b in source.elements() {
            if map[source.meet(a, b)] != target.meet(map[a], map[b]) {
                return Some(MorphismFailure { law: "meet", witness: vec![a, b] });
            }
            if map[source.join(a, b)] != target.join(map[a], map[b]) {
                return Some(MorphismFailure { law: "join", witness: vec![a, b] });
            }
        }
    }
    None
}

/// Classify a map between modal frames: frame laws, then lax or strict preservation of each operator.
pub fn classify_morphism(source: &ModalFrame, target: &ModalFrame, map: &[Elem]) -> MorphismClass {
    if let Some(f) = frame_morphism_failure(&source.lattice, &target.lattice, map) {
        return MorphismClass::NotMorphism(f);
    }
    let tl = &target.lattice;
    let mut box_strict = true;
    let mut dia_strict = true;
    for a in source.lattice.elements() {
        let (lhs, rhs) = (map[source.box_of(a)], target.box_of(map[a]));
        if !tl.leq(lhs, rhs) {
            return MorphismClass::NotMorphism(MorphismFailure { law: "box", witness: vec![a] });
        }
        box_strict &= lhs == rhs;
        let (lhs, rhs) = (map[source.dia_of(a)], target.dia_of(map[a]));
        if !tl.leq(lhs, rhs) {
            return MorphismClass::NotMorphism(MorphismFailure {
                law: "diamond",
                witness: vec![a],
            });
        }
        dia_strict &= lhs == rhs;
    }
    match (box_strict, dia_strict) {
        (true, true) => MorphismClass::Strict,
        (true, false) => MorphismClass::BoxStrict,
        (false, true) => MorphismClass::DiamondStrict,
        (false, false) => MorphismClass::Lax,
    }
}

/// `g ∘ f` for table maps.
pub fn compose(f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    f.iter().map(|&x| g[x]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3_top() -> ModalFrame {
        let l = FiniteLattice::chain(3);
        ModalFrame::new(l, vec![0, 2, 2], vec![0, 2, 2]).unwrap()
    }

    /// Direct check of an inequality family over all elements, written independently.
    fn all_ineq(frame: &ModalFrame, f: impl Fn(Elem) -> (Elem, Elem)) -> bool {
        frame.lattice.elements().all(|a| {
            let (x, y) = f(a);
            frame.lattice.leq(x, y)
        })
    }

    #[test]
    fn identity_operators_are_in_every_class() {
        for l in [FiniteLattice::chain(3), FiniteLattice::boolean(2)] {
            let f = ModalFrame::identity(l);
            let c = f.classify();
            assert!(c.modal && c.lower && c.convex && c.serial && c.equivalence);
            assert!(c.modally_spectral);
        }
    }

    #[test]
    fn chain3_top_ops_are_convex_but_not_equivalence() {
        let f = chain3_top();
        let c = f.classify();
        assert!(c.modal && c.lower && c.convex && c.serial);
        assert!(!c.equivalence);
        assert!(!c.satisfies(Axiom::BoxReflexive));
        assert!(!all_ineq(&f, |a| (f.box_of(a), a)));
        assert_eq!(Axiom::BoxReflexive.first_violation(&f), Some(vec![1]));
    }

    #[test]
    fn constant_top_diamond_violates_diamond_bottom() {
        let l = FiniteLattice::chain(3);
        let err = ModalFrame::new(l, vec![2, 2, 2], vec![2, 2, 2]).unwrap_err();
        assert!(matches!(err, FrameError::AxiomViolation { axiom: Axiom::DiamondBottom, .. }));
    }

    #[test]
    fn non_monotone_tables_are_rejected() {
        let l = FiniteLattice::chain(3);
        let err = ModalFrame::new(l, vec![0, 2, 1], vec![0, 1, 2]).unwrap_err();
        assert!(matches!(err, FrameError::NotMonotone { op: Operator::Box, .. }));
    }

    #[test]
    fn identity_map_is_strict() {
        let f = chain3_top();
        let id: Vec<Elem> = f.lattice.elements().collect();
        assert_eq!(classify_morphism(&f, &f, &id), MorphismClass::Strict);
    }

    #[test]
    fn collapse_to_one_element_frame_is_strict() {
        let src = ModalFrame::identity(FiniteLattice::chain(3));
        let one = ModalFrame::identity(FiniteLattice::chain(1));
        assert_eq!(classify_morphism(&src, &one, &[0, 0, 0]), MorphismClass::Strict);
    }

    #[test]
    fn non_frame_maps_are_reported() {
        let src = ModalFrame::identity(FiniteLattice::chain(3));
        let c = classify_morphism(&src, &src, &[0, 0, 0]);
        assert!(matches!(c, MorphismClass::NotMorphism(MorphismFailure { law: "top", .. })));
    }

    #[test]
    fn canonical_filter_examples() {
        let f = chain3_top();
        // char = {⊤} is the character with prime m.
        let p = Character { prime: 1 };
        assert_eq!(f.canonical_filter(p).generator, 1);
        let id = ModalFrame::identity(FiniteLattice::chain(3));
        for p in id.lattice.characters() {
            assert_eq!(id.canonical_filter(p).members(&id.lattice), p.filter(&id.lattice));
        }
        let l = FiniteLattice::chain(3);
        let const_box = ModalFrame::new(l, vec![2, 2, 2], vec![0, 0, 0]).unwrap();
        for p in const_box.lattice.characters() {
            assert_eq!(const_box.canonical_filter(p).generator, 0);
        }
    }

    #[test]
    fn canonical_element_examples() {
        let id = ModalFrame::identity(FiniteLattice::chain(3));
        for p in id.lattice.characters() {
            assert_eq!(id.canonical_element(p), p.prime);
            assert!(id.is_replete(p));
        }
        let f = chain3_top();
        assert_eq!(f.canonical_element(Character { prime: 1 }), 0);
        assert!(ModalFrame::identity(FiniteLattice::chain(1)).is_replete_frame());
    }
}
