//! Ideal completion of modal distributive lattices and the reflection onto compact elements.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::frame::{classify_morphism, Axiom, FrameError, ModalFrame, MorphismClass};
use crate::lattice::{bit, members, Elem, ElemSet, FiniteLattice};

#[derive(Debug, Clone)]
pub struct IdealCompletion {
    /// The frame of ideals with `□I = ↓{□a | a ∈ I}` and `◇I = ↓{◇a | a ∈ I}`.
    pub frame: ModalFrame,
    /// Member set of each ideal, indexed like `frame.lattice`.
    pub ideals: Vec<ElemSet>,
    /// `a ↦ ↓a`.
    pub unit: Vec<Elem>,
    pub unit_class: MorphismClass,
    pub unit_is_bijective: bool,
    pub modally_spectral: bool,
}

/// Smallest ideal containing a set: close under binary joins and downwards until stable.
fn generated_ideal(lattice: &FiniteLattice, set: ElemSet) -> ElemSet {
    let mut current = lattice.down_closure(set | bit(lattice.bottom()));
    loop {
        let mut next = current;
        for a in members(current) {
            for b in members(current) {
                next |= bit(lattice.join(a, b));
            }
        }
        next = lattice.down_closure(next);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Build the ideal completion of a modal distributive lattice, given as validated tables.
pub fn ideal_completion_from_tables(
    lattice: FiniteLattice,
    box_table: Vec<Elem>,
    dia_table: Vec<Elem>,
) -> Result<IdealCompletion, FrameError> {
    Ok(ideal_completion(&ModalFrame::new(lattice, box_table, dia_table)?))
}

pub fn ideal_completion(base: &ModalFrame) -> IdealCompletion {
    let l = &base.lattice;
    let ideals = l.all_ideals();
    let names: Vec<String> = ideals.iter().map(|&i| l.show_set(i)).collect();
    let lattice = FiniteLattice::from_order_fn(names, |i, j| ideals[i] & !ideals[j] == 0)
        .expect("ideals of a distributive lattice form a distributive lattice");
    let position = |set: ElemSet| {
        ideals
            .iter()
            .position(|&i| i == set)
            .expect("generated ideal is among the enumerated ideals")
    };
    let lift = |table: &[Elem]| -> Vec<Elem> {
        ideals
            .iter()
            .map(|&i| {
                let image = members(i).fold(0, |acc, a| acc | bit(table[a]));
                position(generated_ideal(l, image))
            })
            .collect()
    };
    let box_table = lift(base.box_table());
    let dia_table = lift(base.dia_table());
    let frame = ModalFrame::new(lattice, box_table, dia_table)
        .expect("ideal completion of a modal distributive lattice is a modal frame");
    let unit: Vec<Elem> = l.elements().map(|a| position(l.down_set(a))).collect();
    let unit_class = classify_morphism(base, &frame, &unit);
    let mut hit = vec![false; frame.lattice.len()];
    for &u in &unit {
        hit[u] = true;
    }
    let injective = unit.iter().collect::<std::collections::BTreeSet<_>>().len() == unit.len();
    let unit_is_bijective = injective && hit.iter().all(|&h| h);
    let modally_spectral = frame.spectrality().holds();
    IdealCompletion { frame, ideals, unit, unit_class, unit_is_bijective, modally_spectral }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomTransfer {
    pub on_frame: bool,
    pub on_compacts: bool,
}

impl AxiomTransfer {
    pub fn agrees(&self) -> bool {
        self.on_frame == self.on_compacts
    }
}

#[derive(Debug, Clone)]
pub struct CompactsReflection {
    /// `K(A)` with the restricted operators.
    pub compacts: ModalFrame,
    /// Indices into the original lattice, one per element of `compacts`.
    pub embedding: Vec<Elem>,
    /// `a ↦ K(A) ∩ ↓a` into the ideal completion of `K(A)`.
    pub iso: Vec<Elem>,
    pub iso_class: MorphismClass,
    pub iso_is_bijective: bool,
    pub completion: IdealCompletion,
    pub transfer: BTreeMap<Axiom, AxiomTransfer>,
    /// Monotonicity of (box, diamond) on the frame and on the compacts.
    pub monotone: (bool, bool),
}

impl CompactsReflection {
    pub fn transfer_agrees(&self) -> bool {
        self.transfer.values().all(AxiomTransfer::agrees) && self.monotone.0 == self.monotone.1
    }
}

/// Restrict to the compact elements, rebuild the frame from their ideals, and compare.
pub fn compacts_reflection(frame: &ModalFrame) -> CompactsReflection {
    let l = &frame.lattice;
    let compact_set = l.compacts();
    let embedding: Vec<Elem> = members(compact_set).collect();
    let local = |a: Elem| {
        embedding.iter().position(|&e| e == a).expect("operators are compact")
    };
    let names: Vec<String> = embedding.iter().map(|&e| l.name(e).to_string()).collect();
    let sub = FiniteLattice::from_order_fn(names, |i, j| l.leq(embedding[i], embedding[j]))
        .expect("compacts of a spectral frame form a distributive lattice");
    let box_table: Vec<Elem> = embedding.iter().map(|&e| local(frame.box_of(e))).collect();
    let dia_table: Vec<Elem> = embedding.iter().map(|&e| local(frame.dia_of(e))).collect();
    let monotone_sub = sub.monotone_violation(&sub, &box_table).is_none()
        && sub.monotone_violation(&sub, &dia_table).is_none();
    let monotone_frame = l.monotone_violation(l, frame.box_table()).is_none()
        && l.monotone_violation(l, frame.dia_table()).is_none();
    let compacts = ModalFrame::new(sub, box_table, dia_table)
        .expect("restriction to compacts keeps the modal axioms");
    let completion = ideal_completion(&compacts);
    let iso: Vec<Elem> = l
        .elements()
        .map(|a| {
            let below: ElemSet = (0..embedding.len())
                .filter(|&i| l.leq(embedding[i], a))
                .fold(0, |acc, i| acc | bit(i));
            completion
                .ideals
                .iter()
                .position(|&i| i == below)
                .expect("K(A) ∩ ↓a is an ideal of K(A)")
        })
        .collect();
    let iso_class = classify_morphism(frame, &completion.frame, &iso);
    let distinct = iso.iter().collect::<std::collections::BTreeSet<_>>().len();
    let iso_is_bijective = distinct == iso.len() && distinct == completion.frame.lattice.len();
    let transfer = Axiom::TRANSFERABLE
        .iter()
        .map(|&ax| {
            (ax, AxiomTransfer { on_frame: ax.holds(frame), on_compacts: ax.holds(&compacts) })
        })
        .collect();
    CompactsReflection {
        compacts,
        embedding,
        iso,
        iso_class,
        iso_is_bijective,
        completion,
        transfer,
        monotone: (monotone_frame, monotone_sub),
    }
}
