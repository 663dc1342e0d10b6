use std::cmp::Reverse;

use thiserror::Error;

use crate::frame::{classify_morphism, ModalFrame};
use crate::lattice::{Character, Elem, PrincipalFilter};
use crate::omega::omega_space;
use crate::space::{classify_space_morphism, Point, RelationalSpace};

use super::construct::PointSpace;
use super::prepoint::PrePoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("not a morphism of {category}: {detail}")]
    NotAMorphismOfMode { category: &'static str, detail: String },
    #[error("space is not an object of {0}")]
    SpaceNotInCategory(&'static str),
    #[error("image of `{source_name}` is {image}, which is not a point")]
    ImageNotAPoint { source_name: String, image: String },
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// `f^#: X → 𝓕(A)` for a frame morphism `f: A → Ω(X)` given as a table into the opens of `X`.
///
/// Checks that `f` and `X` belong to the mode's categories first.
pub fn f_sharp(ps: &PointSpace, x: &RelationalSpace, f: &[Elem]) -> Result<Vec<usize>, PointError> {
    let cat = ps.mode.frame_category();
    let class = classify_morphism(&ps.frame, &omega_space(x), f);
    if !cat.morphisms.admits(&class) {
        return Err(PointError::NotAMorphismOfMode {
            category: cat.name,
            detail: format!("map is {}", class.name()),
        });
    }
    let scat = ps.mode.space_category();
    if !scat.admits_object(&x.classify()) {
        return Err(PointError::SpaceNotInCategory(scat.name));
    }
    f_sharp_unchecked(ps, x, f)
}

/// The tuple `(p_x, a_x, [F_x])` computed from `f`, without looking it up.
pub fn f_sharp_tuple(ps: &PointSpace, x: &RelationalSpace, f: &[Elem], point: Point) -> PrePoint {
    let l = &ps.frame.lattice;
    let opens = x.opens();
    let succ = x.successors(point);
    let prime = l.join_where(|b| !opens[f[b]].contains(point));
    let element = l.join_where(|c| succ.is_disjoint(&opens[f[c]]));
    let filter = ps.mode.is_triple().then(|| PrincipalFilter {
        generator: l.meet_where(|c| succ.is_subset(&opens[f[c]])),
    });
    PrePoint { character: Character { prime }, element, filter }
}

pub fn f_sharp_unchecked(
    ps: &PointSpace,
    x: &RelationalSpace,
    f: &[Elem],
) -> Result<Vec<usize>, PointError> {
    x.points()
        .map(|point| {
            let tuple = f_sharp_tuple(ps, x, f, point);
            ps.index_of(&tuple).ok_or_else(|| PointError::ImageNotAPoint {
                source_name: x.name(point).to_string(),
                image: tuple.display(&ps.frame.lattice).to_string(),
            })
        })
        .collect()
}

/// The unit `ψ_X: X → 𝓕(Ω(X))`, where `ps` is the construction on `Ω(X)`.
pub fn psi(x: &RelationalSpace, ps: &PointSpace) -> Result<Vec<usize>, PointError> {
    let id: Vec<Elem> = ps.frame.lattice.elements().collect();
    f_sharp_unchecked(ps, x, &id)
}

/// `𝓕(f): 𝓕(B) → 𝓕(A)` for `f: A → B`, sending `(q, b, [G])` to `(q∘f, ⋁{c | f(c) ≤ b}, [f⁻¹G])`.
pub fn point_functor_on_morphism(
    f: &[Elem],
    fa: &PointSpace,
    fb: &PointSpace,
) -> Result<Vec<usize>, PointError> {
    let la = &fa.frame.lattice;
    let lb = &fb.frame.lattice;
    fb.points
        .iter()
        .enumerate()
        .map(|(i, pt)| {
            let prime = la.join_where(|c| lb.leq(f[c], pt.character.prime));
            let element = la.join_where(|c| lb.leq(f[c], pt.element));
            let filter = pt.filter.map(|g| PrincipalFilter {
                generator: la.meet_where(|c| lb.leq(g.generator, f[c])),
            });
            let image = PrePoint { character: Character { prime }, element, filter };
            fa.index_of(&image).ok_or_else(|| PointError::ImageNotAPoint {
                source_name: fb.point_name(i).to_string(),
                image: image.display(la).to_string(),
            })
        })
        .collect()
}

/// Some character `q` with `q(a) = 0`, `q(b) = 1` and `p∘□ ≤ q`, by search over all characters.
pub fn related_character(
    frame: &ModalFrame,
    p: Character,
    a: Elem,
    b: Elem,
) -> Result<Character, PointError> {
    let l = &frame.lattice;
    if p.eval(l, frame.dia_of(a)) || !p.eval(l, frame.dia_of(b)) {
        return Err(PointError::Precondition(format!(
            "need p(dia {}) = 0 and p(dia {}) = 1",
            l.name(a),
            l.name(b)
        )));
    }
    let fp = frame.canonical_filter(p).generator;
    l.characters()
        .into_iter()
        .find(|q| !q.eval(l, a) && q.eval(l, b) && !l.leq(fp, q.prime))
        .ok_or_else(|| {
            PointError::NoWitness(format!("no character between {} and {}", l.name(a), l.name(b)))
        })
}

/// A surviving point `(p, b, [F])` with `a ≤ b`: largest `b`, then smallest filter generator,
/// then earliest in candidate order.
pub fn extend_to_point(ps: &PointSpace, p: Character, a: Elem) -> Result<usize, PointError> {
    let l = &ps.frame.lattice;
    if p.eval(l, ps.frame.dia_of(a)) {
        return Err(PointError::Precondition(format!("p(dia {}) = 1", l.name(a))));
    }
    ps.points
        .iter()
        .enumerate()
        .filter(|(_, pt)| pt.character == p && l.leq(a, pt.element))
        .min_by_key(|(i, pt)| {
            (Reverse(l.rank(pt.element)), pt.filter.map(|f| l.rank(f.generator)), *i)
        })
        .map(|(i, _)| i)
        .ok_or_else(|| PointError::NoWitness(format!("no point above {}", l.name(a))))
}

/// Whether `g` is a morphism of the mode's space category.
pub fn is_space_morphism_of_mode(
    ps_mode: super::mode::ConstructionMode,
    source: &RelationalSpace,
    target: &RelationalSpace,
    map: &[Point],
) -> bool {
    classify_space_morphism(source, target, map)
        .map(|r| r.level >= ps_mode.space_category().morphisms)
        .unwrap_or(false)
}
