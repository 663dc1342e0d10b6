//! Verdicts for spatiality, sobriety, the triangle identities and the adjunction bijection.

use std::collections::HashSet;

use serde::Serialize;

use crate::exec::Exec;
use crate::frame::{classify_morphism, frame_morphism_failure, Axiom, ModalFrame, MorphismClass};
use crate::lattice::Elem;
use crate::omega::{omega_class_report, omega_space, OmegaReport};
use crate::points::{
    build_point_space, f_sharp_unchecked, point_functor_on_morphism, psi, ConstructionMode,
    PointSpace, PrePointCondition, Strictness,
};
use crate::space::{
    inverse_image_table, is_isomorphism, morphism_level, Point, RelationalSpace, SpaceMorphismLevel,
};

/// Whether `φ_A` is an isomorphism in the mode's frame category.
#[derive(Debug, Clone, Serialize)]
pub struct SpatialVerdict {
    pub mode: ConstructionMode,
    pub category: &'static str,
    /// The frame is an object of the mode's frame category.
    pub applicable: bool,
    /// The finite existence-of-points theorem covers this mode and frame.
    pub theorem_applies: bool,
    pub points: usize,
    pub injective: bool,
    pub surjective: bool,
    pub morphism: bool,
    pub box_strict: bool,
    pub diamond_strict: bool,
    pub isomorphism: bool,
}

/// Modes and frame classes where `φ_A` is known to be an isomorphism for finite frames.
pub fn spatiality_theorem_applies(frame: &ModalFrame, mode: ConstructionMode) -> bool {
    let c = frame.classify();
    match mode {
        ConstructionMode::RelSp | ConstructionMode::RelSpq => true,
        ConstructionMode::RelSpqC => c.convex,
        ConstructionMode::EqSpq => c.convex && c.equivalence,
        _ => false,
    }
}

pub fn spatial_verdict(ps: &PointSpace) -> SpatialVerdict {
    let class = ps.phi_class();
    let injective = ps.phi_is_injective();
    let bijective = ps.phi_is_bijective();
    let cat = ps.mode.frame_category();
    SpatialVerdict {
        mode: ps.mode,
        category: cat.name,
        applicable: cat.admits_object(&ps.frame.classify()),
        theorem_applies: spatiality_theorem_applies(&ps.frame, ps.mode),
        points: ps.len(),
        injective,
        surjective: ps.phi.iter().collect::<HashSet<_>>().len() == ps.space.opens().len(),
        morphism: class.is_morphism(),
        box_strict: class.is_box_strict(),
        diamond_strict: class.is_diamond_strict(),
        isomorphism: bijective && class == MorphismClass::Strict,
    }
}

pub fn check_spatial(frame: &ModalFrame, mode: ConstructionMode) -> SpatialVerdict {
    spatial_verdict(&build_point_space(frame, mode))
}

/// Whether `ψ_X` is an isomorphism of relational spaces.
#[derive(Debug, Clone, Serialize)]
pub struct SoberVerdict {
    pub mode: ConstructionMode,
    pub category: &'static str,
    pub applicable: bool,
    pub points: usize,
    pub constructed_points: usize,
    pub injective: bool,
    pub isomorphism: bool,
    /// The unit map, as point names of the constructed space.
    pub psi: Option<Vec<String>>,
    pub error: Option<String>,
}

pub fn check_sober(x: &RelationalSpace, mode: ConstructionMode) -> SoberVerdict {
    let ps = build_point_space(&omega_space(x), mode);
    sober_verdict(x, &ps)
}

/// `ps` must be the construction on `Ω(x)`.
pub fn sober_verdict(x: &RelationalSpace, ps: &PointSpace) -> SoberVerdict {
    let cat = ps.mode.space_category();
    let applicable = cat.admits_object(&x.classify());
    let base = SoberVerdict {
        mode: ps.mode,
        category: cat.name,
        applicable,
        points: x.len(),
        constructed_points: ps.len(),
        injective: false,
        isomorphism: false,
        psi: None,
        error: None,
    };
    match psi(x, ps) {
        Ok(map) => {
            let distinct: HashSet<usize> = map.iter().copied().collect();
            SoberVerdict {
                injective: distinct.len() == map.len(),
                isomorphism: is_isomorphism(x, &ps.space, &map),
                psi: Some(map.iter().map(|&i| ps.point_name(i).to_string()).collect()),
                ..base
            }
        }
        Err(e) => SoberVerdict { error: Some(e.to_string()), ..base },
    }
}

/// `𝓕(φ_A) ∘ ψ_{𝓕(A)} = 1` on the points of `𝓕(A)`.
pub fn frame_triangle(fa: &PointSpace) -> Result<bool, String> {
    frame_triangle_with(fa, &build_point_space(&fa.omega, fa.mode))
}

/// As [`frame_triangle`], reusing the construction `fofa` on `Ω(𝓕(A))`.
pub fn frame_triangle_with(fa: &PointSpace, fofa: &PointSpace) -> Result<bool, String> {
    let unit = psi(&fa.space, fofa).map_err(|e| e.to_string())?;
    let back = point_functor_on_morphism(&fa.phi, fa, fofa).map_err(|e| e.to_string())?;
    Ok(unit.iter().enumerate().all(|(i, &u)| back[u] == i))
}

/// `Ω(ψ_X) ∘ φ_{Ω(X)} = 1` on the opens of `X`; `fox` is the construction on `Ω(X)`.
pub fn space_triangle(x: &RelationalSpace, fox: &PointSpace) -> Result<bool, String> {
    let unit = psi(x, fox).map_err(|e| e.to_string())?;
    let pullback = inverse_image_table(x, &fox.space, &unit).map_err(|e| e.to_string())?;
    Ok(fox.phi.iter().enumerate().all(|(c, &o)| pullback[o] == c))
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangleVerdict {
    pub mode: ConstructionMode,
    pub holds: bool,
    pub error: Option<String>,
}

pub fn check_frame_triangle(frame: &ModalFrame, mode: ConstructionMode) -> TriangleVerdict {
    let fa = build_point_space(frame, mode);
    triangle_verdict(mode, frame_triangle(&fa))
}

pub fn check_space_triangle(x: &RelationalSpace, mode: ConstructionMode) -> TriangleVerdict {
    let fox = build_point_space(&omega_space(x), mode);
    triangle_verdict(mode, space_triangle(x, &fox))
}

fn triangle_verdict(mode: ConstructionMode, r: Result<bool, String>) -> TriangleVerdict {
    match r {
        Ok(holds) => TriangleVerdict { mode, holds, error: None },
        Err(e) => TriangleVerdict { mode, holds: false, error: Some(e) },
    }
}

/// All maps `A → B` preserving finite meets and joins whose operator behaviour meets `strictness`.
///
/// A frame map is fixed by its values on join-irreducibles, so only monotone assignments on
/// those are tried and then extended by joins.
pub fn frame_homs(source: &ModalFrame, target: &ModalFrame, strictness: Strictness) -> Vec<Vec<Elem>> {
    let irreducibles = source.lattice.join_irreducibles();
    let mut out = Vec::new();
    let mut images = vec![0; irreducibles.len()];
    fn extend(
        depth: usize,
        irreducibles: &[Elem],
        images: &mut Vec<Elem>,
        source: &ModalFrame,
        target: &ModalFrame,
        strictness: Strictness,
        out: &mut Vec<Vec<Elem>>,
    ) {
        let la = &source.lattice;
        let lb = &target.lattice;
        if depth == irreducibles.len() {
            let map: Vec<Elem> = la
                .elements()
                .map(|a| {
                    irreducibles
                        .iter()
                        .zip(images.iter())
                        .filter(|(&j, _)| la.leq(j, a))
                        .fold(lb.bottom(), |acc, (_, &b)| lb.join(acc, b))
                })
                .collect();
            if frame_morphism_failure(la, lb, &map).is_none()
                && strictness.admits(&classify_morphism(source, target, &map))
            {
                out.push(map);
            }
            return;
        }
        let j = irreducibles[depth];
        for b in lb.elements() {
            let monotone = (0..depth).all(|k| {
                let i = irreducibles[k];
                (!la.leq(i, j) || lb.leq(images[k], b)) && (!la.leq(j, i) || lb.leq(b, images[k]))
            });
            if monotone {
                images[depth] = b;
                extend(depth + 1, irreducibles, images, source, target, strictness, out);
            }
        }
    }
    extend(0, &irreducibles, &mut images, source, target, strictness, &mut out);
    out.sort();
    out
}

/// Hom-set size above which exhaustive space-map enumeration is refused.
pub const MAX_SPACE_MAPS: u128 = 4_000_000;

/// All maps `X → Y` at or above `level` in the space-morphism hierarchy.
pub fn space_homs(
    source: &RelationalSpace,
    target: &RelationalSpace,
    level: SpaceMorphismLevel,
    exec: Exec,
) -> Result<Vec<Vec<Point>>, String> {
    let n = source.len();
    let m = target.len();
    let total = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_SPACE_MAPS {
        return Err(format!("{m}^{n} candidate maps exceeds the enumeration limit"));
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let decode = |mut k: usize| -> Vec<Point> {
        let mut map = vec![0; n];
        for slot in map.iter_mut() {
            *slot = k % m;
            k /= m;
        }
        map
    };
    let hits = exec.map_range(0..total as usize, |k| {
        let map = decode(k);
        (morphism_level(source, target, &map, level) >= level).then_some(map)
    });
    let mut out: Vec<Vec<Point>> = hits.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjunctionVerdict {
    pub mode: ConstructionMode,
    pub frame_category: &'static str,
    pub space_category: &'static str,
    pub applicable: bool,
    pub frame_homs: usize,
    pub space_homs: usize,
    /// `f ↦ f^#` lands in the space hom-set and `Ω(f^#)∘φ_A = f`.
    pub sharp_round_trip: bool,
    /// `g ↦ Ω(g)∘φ_A` lands in the frame hom-set and `(Ω(g)∘φ_A)^# = g`.
    pub flat_round_trip: bool,
    pub bijection: bool,
    pub error: Option<String>,
}

/// Exhaustively compare `hom(A, Ω(X))` with `hom(X, 𝓕(A))`.
pub fn check_adjunction_bijection(
    a: &ModalFrame,
    x: &RelationalSpace,
    mode: ConstructionMode,
    exec: Exec,
) -> AdjunctionVerdict {
    let fcat = mode.frame_category();
    let scat = mode.space_category();
    let applicable = fcat.admits_object(&a.classify()) && scat.admits_object(&x.classify());
    let mut verdict = AdjunctionVerdict {
        mode,
        frame_category: fcat.name,
        space_category: scat.name,
        applicable,
        frame_homs: 0,
        space_homs: 0,
        sharp_round_trip: false,
        flat_round_trip: false,
        bijection: false,
        error: None,
    };
    if !applicable {
        return verdict;
    }
    let ox = omega_space(x);
    let fa = build_point_space(a, mode);
    let fhoms = frame_homs(a, &ox, fcat.morphisms);
    let shoms = match space_homs(x, &fa.space, scat.morphisms, exec) {
        Ok(h) => h,
        Err(e) => {
            verdict.error = Some(e);
            return verdict;
        }
    };
    verdict.frame_homs = fhoms.len();
    verdict.space_homs = shoms.len();
    let fset: HashSet<&Vec<Elem>> = fhoms.iter().collect();
    let sset: HashSet<&Vec<Point>> = shoms.iter().collect();
    let flat = |g: &[Point]| -> Option<Vec<Elem>> {
        let pullback = inverse_image_table(x, &fa.space, g).ok()?;
        Some(fa.phi.iter().map(|&o| pullback[o]).collect())
    };
    let sharp_ok = exec.map(&fhoms, |f| match f_sharp_unchecked(&fa, x, f) {
        Ok(g) => sset.contains(&g) && flat(&g).as_ref() == Some(f),
        Err(_) => false,
    });
    let flat_ok = exec.map(&shoms, |g| match flat(g) {
        Some(f) => {
            fset.contains(&f) && f_sharp_unchecked(&fa, x, &f).ok().as_deref() == Some(&g[..])
        }
        None => false,
    });
    verdict.sharp_round_trip = sharp_ok.iter().all(|&b| b);
    verdict.flat_round_trip = flat_ok.iter().all(|&b| b);
    verdict.bijection =
        verdict.sharp_round_trip && verdict.flat_round_trip && fhoms.len() == shoms.len();
    verdict
}

/// One row of the algebra/relation correspondence table.
#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceRow {
    pub property: &'static str,
    pub axioms: Vec<Axiom>,
    pub applicable: bool,
    pub frame_satisfies: bool,
    pub relation_has: bool,
}

impl CorrespondenceRow {
    pub fn ok(&self) -> bool {
        !self.applicable || !self.frame_satisfies || self.relation_has
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    pub mode: ConstructionMode,
    pub rows: Vec<CorrespondenceRow>,
    pub pass: bool,
}

pub fn correspondence_report(frame: &ModalFrame, mode: ConstructionMode) -> CorrespondenceReport {
    let ps = build_point_space(frame, mode);
    correspondence_for(&ps)
}

pub fn correspondence_for(ps: &PointSpace) -> CorrespondenceReport {
    let mode = ps.mode;
    let class = ps.frame.classify();
    let space = ps.space.classify();
    let usc = mode.requires(PrePointCondition::InsideCanonicalFilter);
    let both = usc && mode.requires(PrePointCondition::DiamondNullBelow);
    let row = |property, axioms: Vec<Axiom>, applicable, relation_has| {
        let frame_satisfies = axioms.iter().all(|&a| class.satisfies(a));
        CorrespondenceRow { property, axioms, applicable, frame_satisfies, relation_has }
    };
    let rows = vec![
        row("reflexive", vec![Axiom::BoxReflexive, Axiom::DiamondReflexive], both, space.reflexive),
        row(
            "symmetric",
            vec![Axiom::DiamondBoxSymmetric, Axiom::BoxDiamondSymmetric],
            both,
            space.symmetric,
        ),
        row("transitive", vec![Axiom::BoxTransitive, Axiom::DiamondTransitive], both, space.transitive),
        row("serial", vec![Axiom::Serial], usc, space.serial),
    ];
    let pass = rows.iter().all(CorrespondenceRow::ok);
    CorrespondenceReport { mode, rows, pass }
}

/// The reverse direction: space properties against axioms of `Ω(X)`.
pub fn space_correspondence_report(x: &RelationalSpace) -> OmegaReport {
    omega_class_report(x)
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedSpatial {
    pub name: String,
    pub verdict: SpatialVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedSober {
    pub name: String,
    pub verdict: SoberVerdict,
    /// `Ω(X)` is spatial in the same mode.
    pub omega_spatial: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub mode: ConstructionMode,
    pub frames: Vec<NamedSpatial>,
    pub spaces: Vec<NamedSober>,
    pub all_spatial: bool,
    pub all_sober: bool,
    pub pass: bool,
}

/// Spatiality of every frame and sobriety of every space, restricted to the mode's objects.
pub fn duality_report(
    frames: &[(String, ModalFrame)],
    spaces: &[(String, RelationalSpace)],
    mode: ConstructionMode,
    exec: Exec,
) -> DualityReport {
    let frames: Vec<NamedSpatial> = exec.map(frames, |(name, f)| NamedSpatial {
        name: name.clone(),
        verdict: check_spatial(f, mode),
    });
    let spaces: Vec<NamedSober> = exec.map(spaces, |(name, x)| {
        let fox = build_point_space(&omega_space(x), mode);
        NamedSober {
            name: name.clone(),
            verdict: sober_verdict(x, &fox),
            omega_spatial: spatial_verdict(&fox).isomorphism,
        }
    });
    let all_spatial = frames
        .iter()
        .filter(|f| f.verdict.applicable)
        .all(|f| f.verdict.isomorphism || !f.verdict.theorem_applies);
    let all_sober = spaces
        .iter()
        .filter(|s| s.verdict.applicable)
        .all(|s| s.verdict.isomorphism && s.omega_spatial);
    DualityReport { mode, frames, spaces, all_spatial, all_sober, pass: all_spatial && all_sober }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteLattice;

    fn s1() -> RelationalSpace {
        RelationalSpace::new(
            &["x", "y"],
            &[vec![], vec!["y"], vec!["x", "y"]],
            &[("x", "y"), ("y", "y")],
        )
        .unwrap()
    }

    fn doubled() -> RelationalSpace {
        RelationalSpace::new(
            &["x", "x2", "y"],
            &[vec![], vec!["y"], vec!["x", "x2", "y"]],
            &[("x", "y"), ("x2", "y"), ("y", "y")],
        )
        .unwrap()
    }

    #[test]
    fn identity_chain_is_spatial() {
        let f = ModalFrame::identity(FiniteLattice::chain(3));
        for mode in [ConstructionMode::RelSp, ConstructionMode::RelSpq, ConstructionMode::RelSpqC] {
            let v = check_spatial(&f, mode);
            assert!(v.isomorphism, "{mode}");
        }
        assert!(check_spatial(&ModalFrame::identity(FiniteLattice::chain(1)), ConstructionMode::RelSp).isomorphism);
    }

    #[test]
    fn sobriety_examples() {
        assert!(check_sober(&s1(), ConstructionMode::RelSpqC).isomorphism);
        let v = check_sober(&doubled(), ConstructionMode::RelSpqC);
        assert!(!v.injective && !v.isomorphism);
    }

    #[test]
    fn triangles_hold_on_examples() {
        let f = ModalFrame::identity(FiniteLattice::chain(3));
        for mode in ConstructionMode::ALL {
            assert!(check_frame_triangle(&f, mode).holds, "{mode}");
            assert!(check_space_triangle(&s1(), mode).holds, "{mode}");
        }
        let empty = RelationalSpace::new::<&str>(&[], &[vec![]], &[]).unwrap();
        assert!(check_space_triangle(&empty, ConstructionMode::RelSp).holds);
    }

    #[test]
    fn adjunction_on_s1() {
        let x = s1();
        let a = omega_space(&x);
        let v = check_adjunction_bijection(&a, &x, ConstructionMode::RelSpqC, Exec::Sequential);
        assert!(v.applicable && v.bijection, "{v:?}");
        assert!(v.frame_homs >= 1);
        let trivial = ModalFrame::identity(FiniteLattice::chain(1));
        let empty = RelationalSpace::new::<&str>(&[], &[vec![]], &[]).unwrap();
        let v = check_adjunction_bijection(&trivial, &empty, ConstructionMode::RelSp, Exec::Sequential);
        assert!(v.bijection);
        assert_eq!((v.frame_homs, v.space_homs), (1, 1));
        let v = check_adjunction_bijection(&trivial, &x, ConstructionMode::RelSp, Exec::Sequential);
        assert!(v.bijection);
        assert_eq!((v.frame_homs, v.space_homs), (0, 0));
    }

    #[test]
    fn frame_homs_of_chains() {
        let c2 = ModalFrame::identity(FiniteLattice::chain(2));
        let c3 = ModalFrame::identity(FiniteLattice::chain(3));
        // Bounded lattice maps 3-chain → 2-chain are the two characters.
        assert_eq!(frame_homs(&c3, &c2, Strictness::Lax).len(), 2);
        assert_eq!(frame_homs(&c2, &c3, Strictness::Lax), vec![vec![0, 2]]);
    }

    #[test]
    fn correspondence_on_identity_chain() {
        let f = ModalFrame::identity(FiniteLattice::chain(3));
        let r = correspondence_report(&f, ConstructionMode::RelSpqC);
        assert!(r.pass);
        assert!(r.rows.iter().all(|row| row.applicable && row.frame_satisfies && row.relation_has));
    }

    #[test]
    fn duality_report_on_small_corpus() {
        let frames = vec![("chain3-id".to_string(), ModalFrame::identity(FiniteLattice::chain(3)))];
        let spaces = vec![("s1".to_string(), s1())];
        let r = duality_report(&frames, &spaces, ConstructionMode::RelSpqC, Exec::Sequential);
        assert!(r.pass);
        let spaces = vec![("doubled".to_string(), doubled())];
        let r = duality_report(&[], &spaces, ConstructionMode::RelSpqC, Exec::Sequential);
        assert!(!r.all_sober);
        let r = duality_report(&[], &[], ConstructionMode::RelSpqC, Exec::Sequential);
        assert!(r.pass && r.frames.is_empty());
    }
}
