//! Ω: the modal frame of opens of a relational space, and inverse image on maps.

use serde::Serialize;

use crate::frame::{classify_morphism, Axiom, FrameClass, ModalFrame, MorphismClass};
use crate::lattice::{Elem, FiniteLattice};
use crate::space::{
    classify_space_morphism, inverse_image_table, Point, RelationalSpace, SpaceClass, SpaceError,
    SpaceMorphismLevel,
};

/// Opens ordered by inclusion with `□U = int(□_class U)` and `◇U = int(◇_class U)`.
///
/// Element `i` of the result is `space.opens()[i]` and is named by its sorted point list.
pub fn omega_space(space: &RelationalSpace) -> ModalFrame {
    let opens = space.opens();
    let names: Vec<String> = opens.iter().map(|o| space.show_set(o)).collect();
    let lattice = FiniteLattice::from_order_fn(names, |i, j| opens[i].is_subset(&opens[j]))
        .expect("opens of a finite space form a distributive lattice");
    let position = |set| space.open_position(&set).expect("interior is open");
    let box_table: Vec<Elem> =
        opens.iter().map(|u| position(space.interior(&space.box_class(u)))).collect();
    let dia_table: Vec<Elem> =
        opens.iter().map(|u| position(space.interior(&space.dia_class(u)))).collect();
    ModalFrame::new(lattice, box_table, dia_table).expect("Ω of a relational space is a modal frame")
}

/// `Ωf = f⁻¹`, from `Ω(target)` to `Ω(source)`.
pub fn omega_morphism(
    source: &RelationalSpace,
    target: &RelationalSpace,
    map: &[Point],
) -> Result<Vec<Elem>, SpaceError> {
    inverse_image_table(source, target, map)
}

/// One implication of the Ω lemma: a space property against a frame property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub premise: &'static str,
    pub conclusion: &'static str,
    pub premise_holds: bool,
    pub conclusion_holds: bool,
}

impl Implication {
    pub fn ok(&self) -> bool {
        !self.premise_holds || self.conclusion_holds
    }

    /// The conclusion holds without the premise.
    pub fn unforced(&self) -> bool {
        !self.premise_holds && self.conclusion_holds
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaReport {
    pub space: SpaceClass,
    pub frame: FrameClass,
    pub implications: Vec<Implication>,
}

impl OmegaReport {
    pub fn all_hold(&self) -> bool {
        self.implications.iter().all(Implication::ok)
    }
}

pub fn omega_class_report(space: &RelationalSpace) -> OmegaReport {
    let frame = omega_space(space);
    omega_report_for(space, &frame)
}

pub(crate) fn omega_report_for(space: &RelationalSpace, frame: &ModalFrame) -> OmegaReport {
    let s = space.classify();
    let f = frame.classify();
    let axioms = |list: &[Axiom]| list.iter().all(|&ax| f.satisfies(ax));
    let imp = |premise, premise_holds, conclusion, conclusion_holds| Implication {
        premise,
        conclusion,
        premise_holds,
        conclusion_holds,
    };
    let implications = vec![
        imp("any", true, "modal", axioms(&Axiom::MODAL)),
        imp("lsc", s.lsc, "lower", f.lower),
        imp("continuous", s.continuous, "convex", f.convex),
        imp("equivalence-space", s.equivalence_space, "equivalence", f.equivalence),
        imp("serial", s.serial, "serial", f.serial),
    ];
    OmegaReport { space: s, frame: f, implications }
}

/// What Ω does to a map: its frame-morphism class, checked against what the morphism level promises.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaMorphismReport {
    pub level: SpaceMorphismLevel,
    pub class: MorphismClass,
    pub target_lsc: bool,
    pub target_usc: bool,
    pub implications: Vec<Implication>,
}

impl OmegaMorphismReport {
    pub fn all_hold(&self) -> bool {
        self.implications.iter().all(Implication::ok)
    }
}

pub fn omega_morphism_report(
    source: &RelationalSpace,
    target: &RelationalSpace,
    map: &[Point],
) -> Result<OmegaMorphismReport, SpaceError> {
    let table = omega_morphism(source, target, map)?;
    let level = classify_space_morphism(source, target, map)?.level;
    let class = classify_morphism(&omega_space(target), &omega_space(source), &table);
    let t = target.classify();
    let p = level >= SpaceMorphismLevel::PMorphism;
    let pq = level == SpaceMorphismLevel::PqMorphism;
    let implications = vec![
        Implication {
            premise: "p-morphism",
            conclusion: "morphism",
            premise_holds: p,
            conclusion_holds: class.is_morphism(),
        },
        Implication {
            premise: "p-morphism into lsc",
            conclusion: "diamond-strict",
            premise_holds: p && t.lsc,
            conclusion_holds: class.is_diamond_strict(),
        },
        Implication {
            premise: "q-morphism into usc",
            conclusion: "box-strict",
            premise_holds: pq && t.usc,
            conclusion_holds: class.is_box_strict(),
        },
    ];
    Ok(OmegaMorphismReport { level, class, target_lsc: t.lsc, target_usc: t.usc, implications })
}
