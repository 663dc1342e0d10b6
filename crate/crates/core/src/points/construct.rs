use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::frame::{classify_morphism, ModalFrame, MorphismClass};
use crate::lattice::Elem;
use crate::omega::omega_space;
use crate::space::{PointSet, RelationalSpace};

use super::mode::ConstructionMode;
use super::prepoint::{CandidateSet, PrePoint};
use super::prune::{PruneEvent, PruneStrategy};

/// The constructed relational space `𝓕(A)` with the unit `φ_A`.
#[derive(Debug, Clone)]
pub struct PointSpace {
    pub mode: ConstructionMode,
    pub frame: ModalFrame,
    pub candidates: CandidateSet,
    /// Surviving pre-points, in candidate order.
    pub points: Vec<PrePoint>,
    /// Candidate index of each point.
    pub origin: Vec<usize>,
    pub space: RelationalSpace,
    /// `Ω(𝓕(A))`; its element `i` is `space.opens()[i]`.
    pub omega: ModalFrame,
    /// `φ_A` as a table into `omega`.
    pub phi: Vec<Elem>,
    pub trace: Vec<PruneEvent>,
    index: HashMap<PrePoint, usize>,
}

pub fn build_point_space(frame: &ModalFrame, mode: ConstructionMode) -> PointSpace {
    build_point_space_with(frame, mode, PruneStrategy::default())
}

pub fn build_point_space_with(
    frame: &ModalFrame,
    mode: ConstructionMode,
    strategy: PruneStrategy,
) -> PointSpace {
    let candidates = CandidateSet::new(frame, mode);
    let outcome = candidates.prune(strategy);
    let origin: Vec<usize> = (0..candidates.len()).filter(|&u| outcome.alive[u]).collect();
    let points: Vec<PrePoint> = origin.iter().map(|&u| candidates.prepoints[u]).collect();
    let n = points.len();
    let l = &frame.lattice;
    let names: Vec<String> = points.iter().map(|p| p.display(l).to_string()).collect();
    let phi_sets: Vec<PointSet> = l
        .elements()
        .map(|c| {
            let mut s = FixedBitSet::with_capacity(n);
            for (i, p) in points.iter().enumerate() {
                if p.character.eval(l, c) {
                    s.insert(i);
                }
            }
            s
        })
        .collect();
    let succ: Vec<PointSet> = origin
        .iter()
        .map(|&u| {
            let mut s = FixedBitSet::with_capacity(n);
            for (j, &v) in origin.iter().enumerate() {
                if candidates.related(u, v) {
                    s.insert(j);
                }
            }
            s
        })
        .collect();
    let space = RelationalSpace::from_parts(names, phi_sets.clone(), succ)
        .expect("the image of a frame map is a topology");
    let omega = omega_space(&space);
    let phi: Vec<Elem> = phi_sets
        .iter()
        .map(|s| space.open_position(s).expect("φ_A(c) is open"))
        .collect();
    let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    PointSpace {
        mode,
        frame: frame.clone(),
        candidates,
        points,
        origin,
        space,
        omega,
        phi,
        trace: outcome.trace,
        index,
    }
}

impl PointSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, point: &PrePoint) -> Option<usize> {
        self.index.get(point).copied()
    }

    /// `φ_A(c)`.
    pub fn phi_set(&self, c: Elem) -> &PointSet {
        &self.space.opens()[self.phi[c]]
    }

    pub fn phi_class(&self) -> MorphismClass {
        classify_morphism(&self.frame, &self.omega, &self.phi)
    }

    pub fn phi_is_bijective(&self) -> bool {
        let mut hit = vec![false; self.omega.lattice.len()];
        for &o in &self.phi {
            if hit[o] {
                return false;
            }
            hit[o] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn phi_is_injective(&self) -> bool {
        let mut seen = vec![false; self.omega.lattice.len()];
        self.phi.iter().all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    pub fn point_name(&self, i: usize) -> &str {
        self.space.name(i)
    }
}

/// Both halves of the lemma relating a point's components to its successors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tripmot {
    /// `c ≤ a` iff `R→(point) ∩ φ_A(c) = ∅`.
    pub element: bool,
    /// `c ∈ F` iff `R→(point) ⊆ φ_A(c)`; `None` for pairs.
    pub filter: Option<bool>,
}

impl Tripmot {
    pub fn holds(&self) -> bool {
        self.element && self.filter.unwrap_or(true)
    }
}

pub fn tripmot_check(ps: &PointSpace, point: usize, c: Elem) -> Tripmot {
    let l = &ps.frame.lattice;
    let pp = &ps.points[point];
    let succ = ps.space.successors(point);
    let image = ps.phi_set(c);
    let element = l.leq(c, pp.element) == succ.is_disjoint(image);
    let filter = pp.filter.map(|f| f.contains(l, c) == succ.is_subset(image));
    Tripmot { element, filter }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteLattice;
    use crate::space::RelationalSpace;

    fn omega_s1() -> ModalFrame {
        let s = RelationalSpace::new(
            &["x", "y"],
            &[vec![], vec!["y"], vec!["x", "y"]],
            &[("x", "y"), ("y", "y")],
        )
        .unwrap();
        omega_space(&s)
    }

    #[test]
    fn identity_chain_relspq_c() {
        let f = ModalFrame::identity(FiniteLattice::chain(3));
        let ps = build_point_space(&f, ConstructionMode::RelSpqC);
        assert_eq!(ps.len(), 2);
        assert!(ps.phi_is_bijective());
        assert_eq!(ps.phi_class(), MorphismClass::Strict);
        assert!(ps.space.relates(0, 0) && ps.space.relates(1, 1));
        assert!(!ps.space.relates(0, 1) && !ps.space.relates(1, 0));
    }

    #[test]
    fn omega_s1_relspq_c() {
        let f = omega_s1();
        let ps = build_point_space(&f, ConstructionMode::RelSpqC);
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.space.opens().len(), 3);
        let c = ps.space.classify();
        assert!(c.usc && c.lsc);
        // Both points see only the point whose character has prime ⊥.
        let bottom_point = ps
            .points
            .iter()
            .position(|p| p.character.prime == f.lattice.bottom())
            .unwrap();
        for i in 0..2 {
            assert_eq!(ps.space.successors(i).ones().collect::<Vec<_>>(), vec![bottom_point]);
        }
    }

    #[test]
    fn identity_chain_eqspq_is_an_equivalence() {
        let f = ModalFrame::identity(FiniteLattice::chain(3));
        let ps = build_point_space(&f, ConstructionMode::EqSpq);
        let c = ps.space.classify();
        assert!(c.reflexive && c.symmetric && c.transitive);
    }

    #[test]
    fn one_element_frame_gives_the_empty_space() {
        let f = ModalFrame::identity(FiniteLattice::chain(1));
        let ps = build_point_space(&f, ConstructionMode::RelSpq);
        assert!(ps.is_empty());
        assert_eq!(ps.space.opens().len(), 1);
        assert!(ps.phi_class().is_morphism());
    }

    #[test]
    fn tripmot_on_omega_s1() {
        let f = omega_s1();
        let ps = build_point_space(&f, ConstructionMode::RelSpqC);
        for i in 0..ps.len() {
            for c in f.lattice.elements() {
                assert!(tripmot_check(&ps, i, c).holds());
            }
        }
        let m = 1;
        let pm = ps.points.iter().position(|p| p.character.prime == m).unwrap();
        let t = tripmot_check(&ps, pm, m);
        assert!(t.element && t.filter == Some(true));
    }
}
