use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::frame::{FrameClass, MorphismClass};
use crate::space::{SpaceClass, SpaceMorphismLevel};

/// The seven variants of the point construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionMode {
    RelSp,
    RelSpL,
    RelSpq,
    RelSpqL,
    RelSpqU,
    RelSpqC,
    EqSpq,
}

/// Conditions a pre-point may be required to meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrePointCondition {
    /// `p(◇a) = 0`
    DiamondNull,
    /// `{c | p(◇c) = 0} ⊆ ↓a`
    DiamondNullBelow,
    /// `F_p ⊆ F`
    ContainsCanonicalFilter,
    /// `F ⊆ F_p`
    InsideCanonicalFilter,
}

/// Witness conditions used to prune pre-points to points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointCondition {
    /// `c ≰ a` needs a related point with `q(c) = 1`.
    DiamondWitness,
    /// `c ∉ F` needs a related point with `q(c) = 0`.
    BoxWitness,
}

impl fmt::Display for PointCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointCondition::DiamondWitness => "diamond-witness",
            PointCondition::BoxWitness => "box-witness",
        })
    }
}

/// How strictly frame morphisms must preserve the operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strictness {
    Lax,
    DiamondStrict,
    BoxStrict,
    Strict,
}

impl Strictness {
    pub fn admits(self, class: &MorphismClass) -> bool {
        match self {
            Strictness::Lax => class.is_morphism(),
            Strictness::DiamondStrict => class.is_diamond_strict(),
            Strictness::BoxStrict => class.is_box_strict(),
            Strictness::Strict => *class == MorphismClass::Strict,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameObjects {
    Modal,
    Equivalence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceObjects {
    All,
    Lsc,
    Usc,
    Continuous,
    Equivalence,
}

impl SpaceObjects {
    pub fn admits(self, class: &SpaceClass) -> bool {
        match self {
            SpaceObjects::All => true,
            SpaceObjects::Lsc => class.lsc,
            SpaceObjects::Usc => class.usc,
            SpaceObjects::Continuous => class.continuous,
            SpaceObjects::Equivalence => class.equivalence_space,
        }
    }
}

/// The category of modal frames a mode is a functor out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrameCategory {
    pub name: &'static str,
    pub objects: FrameObjects,
    pub morphisms: Strictness,
}

impl FrameCategory {
    pub fn admits_object(&self, class: &FrameClass) -> bool {
        match self.objects {
            FrameObjects::Modal => class.modal,
            FrameObjects::Equivalence => class.equivalence,
        }
    }
}

/// The category of relational spaces a mode lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceCategory {
    pub name: &'static str,
    pub objects: SpaceObjects,
    pub morphisms: SpaceMorphismLevel,
}

impl SpaceCategory {
    pub fn admits_object(&self, class: &SpaceClass) -> bool {
        self.objects.admits(class)
    }
}

impl ConstructionMode {
    pub const ALL: [ConstructionMode; 7] = [
        ConstructionMode::RelSp,
        ConstructionMode::RelSpL,
        ConstructionMode::RelSpq,
        ConstructionMode::RelSpqL,
        ConstructionMode::RelSpqU,
        ConstructionMode::RelSpqC,
        ConstructionMode::EqSpq,
    ];

    /// Command-line spelling.
    pub fn id(self) -> &'static str {
        match self {
            ConstructionMode::RelSp => "relsp",
            ConstructionMode::RelSpL => "relsp_l",
            ConstructionMode::RelSpq => "relspq",
            ConstructionMode::RelSpqL => "relspq_l",
            ConstructionMode::RelSpqU => "relspq_u",
            ConstructionMode::RelSpqC => "relspq_c",
            ConstructionMode::EqSpq => "eqspq",
        }
    }

    /// Pre-points are triples `(p, a, F)` rather than pairs `(p, a)`.
    pub fn is_triple(self) -> bool {
        !matches!(self, ConstructionMode::RelSp | ConstructionMode::RelSpL)
    }

    pub fn prepoint_conditions(self) -> &'static [PrePointCondition] {
        use PrePointCondition::*;
        match self {
            ConstructionMode::RelSp => &[DiamondNull],
            ConstructionMode::RelSpL => &[DiamondNull, DiamondNullBelow],
            ConstructionMode::RelSpq => &[DiamondNull, ContainsCanonicalFilter],
            ConstructionMode::RelSpqL => &[DiamondNull, DiamondNullBelow, ContainsCanonicalFilter],
            ConstructionMode::RelSpqU => {
                &[DiamondNull, ContainsCanonicalFilter, InsideCanonicalFilter]
            }
            ConstructionMode::RelSpqC | ConstructionMode::EqSpq => {
                &[DiamondNull, DiamondNullBelow, ContainsCanonicalFilter, InsideCanonicalFilter]
            }
        }
    }

    pub fn requires(self, condition: PrePointCondition) -> bool {
        self.prepoint_conditions().contains(&condition)
    }

    pub fn point_conditions(self) -> &'static [PointCondition] {
        if self.is_triple() {
            &[PointCondition::DiamondWitness, PointCondition::BoxWitness]
        } else {
            &[PointCondition::DiamondWitness]
        }
    }

    pub fn frame_category(self) -> FrameCategory {
        let (name, objects, morphisms) = match self {
            ConstructionMode::RelSp | ConstructionMode::RelSpq => {
                ("MFrm", FrameObjects::Modal, Strictness::Lax)
            }
            // Lax morphisms break the adjunction once a is pinned to a_p, so both
            // lower-semicontinuous modes take diamond-strict morphisms.
            ConstructionMode::RelSpL | ConstructionMode::RelSpqL => {
                ("MFrm^dia", FrameObjects::Modal, Strictness::DiamondStrict)
            }
            ConstructionMode::RelSpqU => ("MFrm^box", FrameObjects::Modal, Strictness::BoxStrict),
            ConstructionMode::RelSpqC => {
                ("MFrm^boxdia", FrameObjects::Modal, Strictness::Strict)
            }
            ConstructionMode::EqSpq => ("EqFrm", FrameObjects::Equivalence, Strictness::Strict),
        };
        FrameCategory { name, objects, morphisms }
    }

    pub fn space_category(self) -> SpaceCategory {
        use SpaceMorphismLevel::{PMorphism, PqMorphism};
        let (name, objects, morphisms) = match self {
            ConstructionMode::RelSp => ("RelSp", SpaceObjects::All, PMorphism),
            ConstructionMode::RelSpL => ("RelSp^l", SpaceObjects::Lsc, PMorphism),
            ConstructionMode::RelSpq => ("RelSpq", SpaceObjects::All, PqMorphism),
            ConstructionMode::RelSpqL => ("RelSpq^l", SpaceObjects::Lsc, PqMorphism),
            ConstructionMode::RelSpqU => ("RelSpq^u", SpaceObjects::Usc, PqMorphism),
            ConstructionMode::RelSpqC => ("RelSpq^c", SpaceObjects::Continuous, PqMorphism),
            ConstructionMode::EqSpq => ("EqSpq", SpaceObjects::Equivalence, PqMorphism),
        };
        SpaceCategory { name, objects, morphisms }
    }
}

impl fmt::Display for ConstructionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for ConstructionMode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown mode `{0}` (expected one of relsp, relsp_l, relspq, relspq_l, relspq_u, relspq_c, eqspq)")]
pub struct UnknownMode(pub String);

impl FromStr for ConstructionMode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        ConstructionMode::ALL
            .into_iter()
            .find(|m| m.id() == key)
            .ok_or_else(|| UnknownMode(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_round_trip_through_their_ids() {
        for m in ConstructionMode::ALL {
            assert_eq!(m.id().parse::<ConstructionMode>().unwrap(), m);
        }
        assert!("relspq_x".parse::<ConstructionMode>().is_err());
        assert_eq!("RELSPQ_C".parse::<ConstructionMode>().unwrap(), ConstructionMode::RelSpqC);
    }

    #[test]
    fn table_rows() {
        use PrePointCondition::*;
        assert_eq!(ConstructionMode::RelSp.prepoint_conditions(), &[DiamondNull]);
        assert!(!ConstructionMode::RelSpL.is_triple());
        assert_eq!(ConstructionMode::RelSpL.point_conditions().len(), 1);
        assert_eq!(ConstructionMode::RelSpqU.point_conditions().len(), 2);
        assert!(ConstructionMode::EqSpq.requires(InsideCanonicalFilter));
        assert!(!ConstructionMode::RelSpqL.requires(InsideCanonicalFilter));
    }
}
