//! Finite duality between modal frames and relational spaces.
//!
//! `Ω` sends a relational space to its frame of opens with interior-corrected box and
//! diamond; `𝓕` sends a modal frame to a space of points cut out of its pre-points by a
//! greatest fixed point. Everything is finite and checked by enumeration.

pub mod completion;
pub mod corpus;
pub mod duality;
pub mod enumerate;
pub mod exec;
pub mod formula;
pub mod frame;
pub mod json;
pub mod lattice;
pub mod omega;
pub mod points;
pub mod space;
pub mod sweep;

pub use exec::Exec;
pub use frame::{Axiom, ModalFrame, MorphismClass};
pub use lattice::{Character, Elem, FiniteLattice, PrincipalFilter};
pub use omega::{omega_morphism, omega_space};
pub use points::{build_point_space, ConstructionMode, PointSpace};
pub use space::{Point, PointSet, RelationalSpace};
