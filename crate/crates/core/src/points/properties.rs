//! Executable forms of the structural facts about pre-points, points and `𝓕(A)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::frame::{Axiom, ModalFrame};
use crate::lattice::PrincipalFilter;

use super::construct::{tripmot_check, PointSpace};
use super::mode::{ConstructionMode, PointCondition, PrePointCondition};
use super::prepoint::{enumerate_prepoints, prepoint_failures, PrePoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    /// False when the premise does not apply to this input.
    pub applicable: bool,
    pub holds: bool,
}

impl PropertyCheck {
    fn new(name: &'static str, applicable: bool, holds: bool) -> Self {
        PropertyCheck { name, applicable, holds: !applicable || holds }
    }
}

pub fn all_hold(checks: &[PropertyCheck]) -> bool {
    checks.iter().all(|c| c.holds)
}

/// Closure properties of the pre-point set of one mode.
pub fn prepoint_properties(frame: &ModalFrame, mode: ConstructionMode) -> Vec<PropertyCheck> {
    let l = &frame.lattice;
    let pts = enumerate_prepoints(frame, mode);
    let set: HashSet<PrePoint> = pts.iter().copied().collect();
    let is_pre = |p: &PrePoint| prepoint_failures(frame, mode, p).is_empty();
    let lsc = mode.requires(PrePointCondition::DiamondNullBelow);
    let usc = mode.requires(PrePointCondition::InsideCanonicalFilter);
    let triple = mode.is_triple();
    let chars = l.characters();

    let enumerated_are_prepoints = pts.iter().all(is_pre);
    let bottom_is_prepoint = chars.iter().all(|&p| {
        let fp = frame.canonical_filter(p);
        let t = PrePoint { character: p, element: l.bottom(), filter: triple.then_some(fp) };
        !p.eval(l, frame.dia_of(l.bottom())) && set.contains(&t)
    });
    let down_closed = pts.iter().all(|u| {
        l.elements()
            .filter(|&b| l.leq(b, u.element))
            .all(|b| set.contains(&PrePoint { element: b, ..*u }))
    });
    let below_canonical = pts.iter().all(|u| l.leq(u.element, frame.canonical_element(u.character)));
    let pinned_to_canonical =
        pts.iter().all(|u| u.element == frame.canonical_element(u.character));
    let filter_pinned =
        pts.iter().all(|u| u.filter == Some(frame.canonical_filter(u.character)));
    let up_closed_in_filter = !triple || pts.iter().all(|u| {
        let g = u.filter.unwrap().generator;
        l.elements()
            .filter(|&h| l.leq(h, g))
            .all(|h| set.contains(&PrePoint { filter: Some(PrincipalFilter { generator: h }), ..*u }))
    });
    let intersection_closed = !triple || pts.iter().all(|u| {
        pts.iter()
            .filter(|v| v.character == u.character && v.element == u.element)
            .all(|v| {
                let g = l.join(u.filter.unwrap().generator, v.filter.unwrap().generator);
                set.contains(&PrePoint { filter: Some(PrincipalFilter { generator: g }), ..*u })
            })
    });
    vec![
        PropertyCheck::new("enumerated tuples meet the mode's conditions", true, enumerated_are_prepoints),
        PropertyCheck::new("(p, bottom, [F_p]) is a pre-point", !lsc, bottom_is_prepoint),
        PropertyCheck::new("pre-points are down-closed in a", !lsc, down_closed),
        PropertyCheck::new("a <= a_p", true, below_canonical),
        PropertyCheck::new("a = a_p", lsc, pinned_to_canonical),
        PropertyCheck::new("F = F_p", triple && usc, filter_pinned),
        PropertyCheck::new("pre-points are up-closed in F", triple && !usc, up_closed_in_filter),
        PropertyCheck::new("pre-points are closed under F meet G", triple && !usc, intersection_closed),
    ]
}

/// Mode-independent facts about characters, `F_p` and `a_p`.
pub fn character_properties(frame: &ModalFrame) -> Vec<PropertyCheck> {
    let l = &frame.lattice;
    let class = frame.classify();
    let chars = l.characters();
    let filters_are_filters = chars.iter().all(|&p| {
        let set = l.set_where(|c| p.eval(l, frame.box_of(c)));
        l.is_filter(set) && set == frame.canonical_filter(p).members(l)
    });
    let convex_join = chars.iter().all(|&p| {
        let fp = frame.canonical_filter(p);
        l.elements().all(|b| {
            l.elements().all(|c| {
                fp.contains(l, c) || p.eval(l, frame.dia_of(b)) || !fp.contains(l, l.join(b, c))
            })
        })
    });
    let serial_step = chars.iter().all(|&p| {
        let a = frame.canonical_element(p);
        p.eval(l, frame.dia_of(a)) || !p.eval(l, frame.box_of(a))
    });
    let lower_replete = frame.is_replete_frame();
    // Relationship between the triple filter condition and the pair conditions.
    let triple_implies_pair = chars.iter().all(|&p| {
        let fp = frame.canonical_filter(p).generator;
        l.elements().filter(|&g| l.leq(g, fp)).all(|g| {
            chars.iter().all(|q| l.leq(g, q.prime) || !l.leq(fp, q.prime))
        })
    });
    let replete_pairs_agree = chars.iter().filter(|&&p| frame.is_replete(p)).all(|&p| {
        let ap = frame.canonical_element(p);
        chars.iter().all(|&q| {
            let diamond = !q.eval(l, ap);
            let below_dia = l.elements().all(|c| !q.eval(l, c) || p.eval(l, frame.dia_of(c)));
            diamond == below_dia
        })
    });
    vec![
        PropertyCheck::new("F_p is a filter", true, filters_are_filters),
        PropertyCheck::new("convex: c not in F_p and p(dia b) = 0 give b v c not in F_p", class.convex, convex_join),
        PropertyCheck::new("serial: p(box a_p) = 0 when p(dia a_p) = 0", class.serial, serial_step),
        PropertyCheck::new("lower frames are replete", class.lower, lower_replete),
        PropertyCheck::new("F in char(q) implies F_p in char(q)", true, triple_implies_pair),
        PropertyCheck::new("q(a_p) = 0 iff q <= p.dia on replete p", true, replete_pairs_agree),
    ]
}

/// Facts about the constructed space and `φ_A`.
pub fn construction_properties(ps: &PointSpace) -> Vec<PropertyCheck> {
    let mode = ps.mode;
    let f = &ps.frame;
    let l = &f.lattice;
    let class = f.classify();
    let space = ps.space.classify();
    let phi = ps.phi_class();
    let lsc_mode = mode.requires(PrePointCondition::DiamondNullBelow);
    let usc_mode = mode.requires(PrePointCondition::InsideCanonicalFilter)
        && mode.point_conditions().contains(&PointCondition::BoxWitness);
    let both = lsc_mode && mode.requires(PrePointCondition::InsideCanonicalFilter);

    let closed = ps.gfp_closed();
    let tripmot = (0..ps.len()).all(|i| l.elements().all(|c| tripmot_check(ps, i, c).holds()));
    let character_injective = {
        let mut seen = HashSet::new();
        ps.points.iter().all(|p| seen.insert(p.character))
    };
    let images_closed =
        (0..ps.len()).all(|i| ps.space.is_closed(ps.space.successors(i)));
    let images_lens = (0..ps.len()).all(|i| ps.space.is_lens(ps.space.successors(i)));
    let filters_scott_open = ps
        .points
        .iter()
        .all(|p| p.filter.is_none_or(|g| l.is_scott_open(g.members(l))));
    let ax = |a: Axiom| class.satisfies(a);
    vec![
        PropertyCheck::new("points are closed under the witness conditions", true, closed),
        PropertyCheck::new("phi is a modal frame morphism", true, phi.is_morphism()),
        PropertyCheck::new("point components match successor sets", true, tripmot),
        PropertyCheck::new(
            "points are determined by their character",
            lsc_mode && (!mode.is_triple() || both),
            character_injective,
        ),
        PropertyCheck::new("phi is diamond-strict", lsc_mode, phi.is_diamond_strict()),
        PropertyCheck::new("constructed space is lsc", lsc_mode, space.lsc),
        PropertyCheck::new("phi is box-strict", usc_mode, phi.is_box_strict()),
        PropertyCheck::new("constructed space is usc", usc_mode, space.usc),
        PropertyCheck::new(
            "reflexive axioms give a reflexive relation",
            both && ax(Axiom::BoxReflexive) && ax(Axiom::DiamondReflexive),
            space.reflexive,
        ),
        PropertyCheck::new(
            "symmetric axioms give a symmetric relation",
            both && ax(Axiom::DiamondBoxSymmetric) && ax(Axiom::BoxDiamondSymmetric),
            space.symmetric,
        ),
        PropertyCheck::new(
            "transitive axioms give a transitive relation",
            both && ax(Axiom::BoxTransitive) && ax(Axiom::DiamondTransitive),
            space.transitive,
        ),
        PropertyCheck::new(
            "serial frame gives a serial relation",
            mode.requires(PrePointCondition::InsideCanonicalFilter) && class.serial,
            space.serial,
        ),
        PropertyCheck::new("successor sets are closed", mode == ConstructionMode::RelSp, images_closed),
        PropertyCheck::new("successor sets are lenses", mode == ConstructionMode::RelSpq, images_lens),
        PropertyCheck::new("pair successor sets are lenses", mode == ConstructionMode::RelSp, images_lens),
        PropertyCheck::new("point filters are Scott-open", mode.is_triple(), filters_scott_open),
        PropertyCheck::new(
            "convex frame gives a continuous space",
            mode == ConstructionMode::RelSpL && class.convex,
            space.continuous,
        ),
    ]
}

impl PointSpace {
    /// The surviving set is closed under the witness conditions.
    pub fn gfp_closed(&self) -> bool {
        let mut alive = vec![false; self.candidates.len()];
        for &u in &self.origin {
            alive[u] = true;
        }
        self.candidates.is_closed(&alive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteLattice;
    use crate::points::construct::build_point_space;

    fn fixtures() -> Vec<ModalFrame> {
        vec![
            ModalFrame::identity(FiniteLattice::chain(1)),
            ModalFrame::identity(FiniteLattice::chain(3)),
            ModalFrame::identity(FiniteLattice::boolean(2)),
            ModalFrame::new(FiniteLattice::chain(3), vec![0, 2, 2], vec![0, 2, 2]).unwrap(),
            ModalFrame::new(FiniteLattice::boolean(2), vec![0, 0, 0, 3], vec![0, 0, 0, 3]).unwrap(),
            ModalFrame::new(FiniteLattice::chain(4), vec![0, 0, 1, 3], vec![0, 2, 3, 3]).unwrap(),
        ]
    }

    /// Successor sets of pair points are lenses but need not be closed: on the identity
    /// 3-chain, `R→(p_⊥, ⊥) = {(p_⊥, ⊥)}` is open and its complement is not.
    #[test]
    fn pair_successor_sets_need_not_be_closed() {
        let f = ModalFrame::identity(FiniteLattice::chain(3));
        let ps = build_point_space(&f, ConstructionMode::RelSp);
        let i = ps.points.iter().position(|p| p.character.prime == 0).unwrap();
        let succ = ps.space.successors(i);
        assert_eq!(succ.ones().collect::<Vec<_>>(), vec![i]);
        assert!(!ps.space.is_closed(succ));
        assert!(ps.space.is_lens(succ));
    }

    #[test]
    fn every_property_holds_on_fixtures() {
        for f in fixtures() {
            let checks = character_properties(&f);
            assert!(all_hold(&checks), "{checks:?}");
            for mode in ConstructionMode::ALL {
                let checks = prepoint_properties(&f, mode);
                assert!(all_hold(&checks), "{mode}: {checks:?}");
                let ps = build_point_space(&f, mode);
                let checks: Vec<_> = construction_properties(&ps)
                    .into_iter()
                    .filter(|c| c.name != "successor sets are closed")
                    .collect();
                assert!(all_hold(&checks), "{mode}: {checks:?}");
            }
        }
    }
}
