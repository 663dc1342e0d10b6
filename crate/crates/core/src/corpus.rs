//! The shipped fixture corpus, embedded from `fixtures/` at build time.

use crate::frame::ModalFrame;
use crate::json::{load_frame, load_lattice, load_map, load_space, ValuationPairJson};
use crate::lattice::FiniteLattice;
use crate::space::{Point, RelationalSpace};

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/", $name)))
    };
}

/// Every fixture file as `(file name, contents)`.
pub const FILES: &[(&str, &str)] = &[
    fixture!("s1.space.json"),
    fixture!("discrete-full-2pt.space.json"),
    fixture!("doubled-point.space.json"),
    fixture!("point-loop.space.json"),
    fixture!("sierpinski-empty.space.json"),
    fixture!("chain3-id.frame.json"),
    fixture!("chain3-top.frame.json"),
    fixture!("chain4-reflexive.frame.json"),
    fixture!("serial-only.frame.json"),
    fixture!("b2.lattice.json"),
    fixture!("m3.lattice.json"),
    fixture!("s1-identity.map.json"),
    fixture!("s1-to-loop.map.json"),
    fixture!("s1-swap.map.json"),
    fixture!("doubled-to-s1.map.json"),
    fixture!("s1.valuation.json"),
    fixture!("s1-identity.valuations.json"),
    fixture!("s1-to-loop.valuations.json"),
    fixture!("doubled-to-s1.valuations.json"),
];

pub fn file(name: &str) -> &'static str {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
}

fn stem(name: &str) -> String {
    name.split('.').next().unwrap_or(name).to_string()
}

/// A space morphism with valuations on both ends.
#[derive(Debug, Clone)]
pub struct MorphismFixture {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: Vec<Point>,
    pub valuations: Option<ValuationPairJson>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub frames: Vec<(String, ModalFrame)>,
    pub spaces: Vec<(String, RelationalSpace)>,
    pub lattices: Vec<(String, FiniteLattice)>,
    /// Fixtures that are meant to be rejected, with the error they produce.
    pub rejected: Vec<(String, String)>,
    pub morphisms: Vec<MorphismFixture>,
}

impl Corpus {
    pub fn space(&self, name: &str) -> &RelationalSpace {
        &self.spaces.iter().find(|(n, _)| n == name).expect("corpus space").1
    }

    pub fn frame(&self, name: &str) -> &ModalFrame {
        &self.frames.iter().find(|(n, _)| n == name).expect("corpus frame").1
    }
}

const MORPHISMS: &[(&str, &str, &str)] = &[
    ("s1-identity", "s1", "s1"),
    ("s1-to-loop", "s1", "point-loop"),
    ("s1-swap", "s1", "s1"),
    ("doubled-to-s1", "doubled-point", "s1"),
];

pub fn corpus() -> Corpus {
    let mut c = Corpus {
        frames: Vec::new(),
        spaces: Vec::new(),
        lattices: Vec::new(),
        rejected: Vec::new(),
        morphisms: Vec::new(),
    };
    for (name, text) in FILES {
        if name.ends_with(".space.json") {
            c.spaces.push((stem(name), load_space(text).expect("space fixture loads")));
        } else if name.ends_with(".frame.json") {
            c.frames.push((stem(name), load_frame(text).expect("frame fixture loads")));
        } else if name.ends_with(".lattice.json") {
            match load_lattice(text) {
                Ok(l) => c.lattices.push((stem(name), l)),
                Err(e) => c.rejected.push((stem(name), e.to_string())),
            }
        }
    }
    for &(name, src, tgt) in MORPHISMS {
        let map = load_map(file(&format!("{name}.map.json"))).expect("map fixture loads");
        let map = map.space_map(c.space(src), c.space(tgt)).expect("map fixture is total");
        let valuations = FILES
            .iter()
            .find(|(n, _)| *n == format!("{name}.valuations.json"))
            .map(|(_, text)| serde_json::from_str(text).expect("valuation fixture parses"));
        c.morphisms.push(MorphismFixture {
            name: name.to_string(),
            source: src.to_string(),
            target: tgt.to_string(),
            map,
            valuations,
        });
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Axiom;
    use crate::omega::omega_space;

    #[test]
    fn corpus_loads() {
        let c = corpus();
        assert_eq!(c.spaces.len(), 5);
        assert_eq!(c.frames.len(), 4);
        assert_eq!(c.lattices.len(), 1);
        assert_eq!(c.rejected.len(), 1);
        assert!(c.rejected[0].1.contains("distributive"));
        assert_eq!(c.morphisms.len(), 4);
    }

    #[test]
    fn fixture_classes() {
        let c = corpus();
        let top = c.frame("chain3-top").classify();
        assert!(top.convex && !top.equivalence);
        let omega = omega_space(c.space("s1"));
        assert_eq!(c.frame("chain3-top").box_table(), omega.box_table());
        assert_eq!(c.frame("chain3-top").dia_table(), omega.dia_table());
        let serial = c.frame("serial-only").classify();
        let pair = |c: &crate::frame::FrameClass, a, b| c.satisfies(a) && c.satisfies(b);
        assert!(serial.serial);
        assert!(!pair(&serial, Axiom::BoxReflexive, Axiom::DiamondReflexive));
        assert!(!pair(&serial, Axiom::BoxTransitive, Axiom::DiamondTransitive));
        assert!(!pair(&serial, Axiom::DiamondBoxSymmetric, Axiom::BoxDiamondSymmetric));
        let refl = c.frame("chain4-reflexive").classify();
        assert!(refl.satisfies(Axiom::BoxReflexive) && refl.satisfies(Axiom::DiamondReflexive));
        assert!(!(refl.satisfies(Axiom::BoxTransitive) && refl.satisfies(Axiom::DiamondTransitive)));
        assert!(!(refl.satisfies(Axiom::DiamondBoxSymmetric) && refl.satisfies(Axiom::BoxDiamondSymmetric)));
        assert!(c.space("discrete-full-2pt").classify().equivalence_space);
    }
}
