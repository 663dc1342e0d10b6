//! The point construction `𝓕`: pre-points, the relation, pruning, and the unit maps.

pub mod construct;
pub mod maps;
pub mod mode;
pub mod prepoint;
pub mod prune;
pub mod properties;

pub use construct::{build_point_space, build_point_space_with, tripmot_check, PointSpace, Tripmot};
pub use maps::{
    extend_to_point, f_sharp, f_sharp_tuple, f_sharp_unchecked, point_functor_on_morphism, psi,
    related_character, PointError,
};
pub use mode::{
    ConstructionMode, FrameCategory, PointCondition, PrePointCondition, SpaceCategory, Strictness,
};
pub use prepoint::{enumerate_prepoints, prepoint_failures, relation_holds, CandidateSet, PrePoint};
pub use prune::{PruneEvent, PruneOutcome, PruneStrategy};
