//! Finite relational spaces: an explicit topology plus a binary relation on points.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

pub type Point = usize;
pub type PointSet = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("not a topology: {0}")]
    NotATopology(TopologyFailure),
    #[error("map is not continuous: preimage of {0} is not open")]
    NotContinuous(String),
    #[error("map is not total: {0}")]
    NotTotal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "missing")]
pub enum TopologyFailure {
    Empty,
    Full,
    Union { left: Vec<String>, right: Vec<String> },
    Intersection { left: Vec<String>, right: Vec<String> },
}

impl fmt::Display for TopologyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyFailure::Empty => write!(f, "the empty set is not open"),
            TopologyFailure::Full => write!(f, "the whole space is not open"),
            TopologyFailure::Union { left, right } => {
                write!(f, "union of {left:?} and {right:?} is missing")
            }
            TopologyFailure::Intersection { left, right } => {
                write!(f, "intersection of {left:?} and {right:?} is missing")
            }
        }
    }
}

/// Ordering key for point sets: size first, then the sorted member list.
pub fn canonical_key(set: &PointSet) -> (usize, Vec<usize>) {
    (set.count_ones(..), set.ones().collect())
}

pub fn point_set(n: usize, points: impl IntoIterator<Item = Point>) -> PointSet {
    let mut s = FixedBitSet::with_capacity(n);
    for p in points {
        s.insert(p);
    }
    s
}

fn full_set(n: usize) -> PointSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

fn complement(set: &PointSet) -> PointSet {
    let mut c = set.clone();
    c.toggle_range(..);
    c
}

fn union(a: &PointSet, b: &PointSet) -> PointSet {
    let mut u = a.clone();
    u.union_with(b);
    u
}

fn intersection(a: &PointSet, b: &PointSet) -> PointSet {
    let mut u = a.clone();
    u.intersect_with(b);
    u
}

/// A validated finite relational space.
#[derive(Clone, PartialEq, Eq)]
pub struct RelationalSpace {
    names: Vec<String>,
    index: HashMap<String, Point>,
    /// Opens in canonical order (see [`canonical_key`]).
    opens: Vec<PointSet>,
    open_index: HashMap<PointSet, usize>,
    succ: Vec<PointSet>,
}

impl fmt::Debug for RelationalSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|o| self.show_set(o)).collect();
        let rel: Vec<(String, String)> = self
            .relation_pairs()
            .map(|(x, y)| (self.names[x].clone(), self.names[y].clone()))
            .collect();
        f.debug_struct("RelationalSpace")
            .field("points", &self.names)
            .field("opens", &opens)
            .field("relation", &rel)
            .finish()
    }
}

impl RelationalSpace {
    /// Validate a space given by point ids, open sets and relation pairs.
    pub fn new<S: AsRef<str>>(
        points: &[S],
        opens: &[Vec<S>],
        relation: &[(S, S)],
    ) -> Result<Self, SpaceError> {
        let names: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(SpaceError::DuplicatePoint(name.clone()));
            }
        }
        let n = names.len();
        let lookup = |s: &str| {
            index.get(s).copied().ok_or_else(|| SpaceError::UnknownPoint(s.to_string()))
        };
        let mut open_sets = Vec::with_capacity(opens.len());
        for open in opens {
            let mut set = FixedBitSet::with_capacity(n);
            for p in open {
                set.insert(lookup(p.as_ref())?);
            }
            open_sets.push(set);
        }
        let mut succ = vec![FixedBitSet::with_capacity(n); n];
        for (x, y) in relation {
            let (x, y) = (lookup(x.as_ref())?, lookup(y.as_ref())?);
            succ[x].insert(y);
        }
        Self::from_parts(names, open_sets, succ)
    }

    /// Validate from index data. Opens are deduplicated and put in canonical order.
    pub fn from_parts(
        names: Vec<String>,
        opens: Vec<PointSet>,
        succ: Vec<PointSet>,
    ) -> Result<Self, SpaceError> {
        let n = names.len();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut opens: Vec<PointSet> = opens
            .into_iter()
            .map(|mut o| {
                o.grow(n);
                o
            })
            .collect();
        opens.sort_by_key(canonical_key);
        opens.dedup();
        let open_index: HashMap<PointSet, usize> =
            opens.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let succ: Vec<PointSet> = succ
            .into_iter()
            .map(|mut s| {
                s.grow(n);
                s
            })
            .collect();
        if succ.len() != n {
            return Err(SpaceError::NotTotal("relation rows".into()));
        }
        let space = RelationalSpace { names, index, opens, open_index, succ };
        if let Some(failure) = space.topology_failure() {
            return Err(SpaceError::NotATopology(failure));
        }
        Ok(space)
    }

    fn topology_failure(&self) -> Option<TopologyFailure> {
        let n = self.len();
        if !self.is_open(&FixedBitSet::with_capacity(n)) {
            return Some(TopologyFailure::Empty);
        }
        if !self.is_open(&full_set(n)) {
            return Some(TopologyFailure::Full);
        }
        for a in &self.opens {
            for b in &self.opens {
                if !self.is_open(&union(a, b)) {
                    return Some(TopologyFailure::Union {
                        left: self.set_names(a),
                        right: self.set_names(b),
                    });
                }
                if !self.is_open(&intersection(a, b)) {
                    return Some(TopologyFailure::Intersection {
                        left: self.set_names(a),
                        right: self.set_names(b),
                    });
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<Point> {
        0..self.names.len()
    }

    pub fn name(&self, x: Point) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn point_index(&self, name: &str) -> Result<Point, SpaceError> {
        self.index.get(name).copied().ok_or_else(|| SpaceError::UnknownPoint(name.to_string()))
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn open_position(&self, set: &PointSet) -> Option<usize> {
        self.open_index.get(set).copied()
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        self.open_index.contains_key(set)
    }

    pub fn empty_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        full_set(self.len())
    }

    pub fn set_of(&self, points: impl IntoIterator<Item = Point>) -> PointSet {
        point_set(self.len(), points)
    }

    /// `R→(x)`.
    pub fn successors(&self, x: Point) -> &PointSet {
        &self.succ[x]
    }

    pub fn relates(&self, x: Point, y: Point) -> bool {
        self.succ[x].contains(y)
    }

    pub fn relation_pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.points().flat_map(move |x| self.succ[x].ones().map(move |y| (x, y)))
    }

    /// `□_class U = {x | R→(x) ⊆ U}`.
    pub fn box_class(&self, set: &PointSet) -> PointSet {
        self.set_of(self.points().filter(|&x| self.succ[x].is_subset(set)))
    }

    /// `◇_class U = {x | R→(x) ∩ U ≠ ∅}`.
    pub fn dia_class(&self, set: &PointSet) -> PointSet {
        self.set_of(self.points().filter(|&x| !self.succ[x].is_disjoint(set)))
    }

    /// Union of all opens contained in the set.
    pub fn interior(&self, set: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for o in &self.opens {
            if o.is_subset(set) {
                out.union_with(o);
            }
        }
        out
    }

    /// Intersection of all closed supersets.
    pub fn closure(&self, set: &PointSet) -> PointSet {
        complement(&self.interior(&complement(set)))
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        self.is_open(&complement(set))
    }

    /// Specialization order: `x ⊑ y` iff every open containing `x` contains `y`.
    pub fn specialization_leq(&self, x: Point, y: Point) -> bool {
        self.opens.iter().all(|o| !o.contains(x) || o.contains(y))
    }

    /// Intersection of all opens containing the set (its up-closure in the specialization order).
    pub fn saturation(&self, set: &PointSet) -> PointSet {
        let mut out = self.full_set();
        for o in &self.opens {
            if set.is_subset(o) {
                out.intersect_with(o);
            }
        }
        out
    }

    pub fn is_saturated(&self, set: &PointSet) -> bool {
        self.saturation(set) == *set
    }

    /// A lens is a closed set intersected with a saturated set. The smallest closed
    /// and smallest saturated supersets are the only candidates worth testing.
    pub fn is_lens(&self, set: &PointSet) -> bool {
        intersection(&self.closure(set), &self.saturation(set)) == *set
    }

    pub fn classify(&self) -> SpaceClass {
        let usc = self.opens.iter().all(|u| self.is_open(&self.box_class(u)));
        let lsc = self.opens.iter().all(|u| self.is_open(&self.dia_class(u)));
        let serial = self.points().all(|x| !self.succ[x].is_clear());
        let reflexive = self.points().all(|x| self.relates(x, x));
        let symmetric = self.relation_pairs().all(|(x, y)| self.relates(y, x));
        let transitive = self
            .relation_pairs()
            .all(|(x, y)| self.succ[y].is_subset(&self.succ[x]));
        let equivalence_relation = reflexive && symmetric && transitive;
        SpaceClass {
            usc,
            lsc,
            continuous: usc && lsc,
            serial,
            reflexive,
            symmetric,
            transitive,
            equivalence_space: usc && lsc && equivalence_relation,
        }
    }

    pub fn set_names(&self, set: &PointSet) -> Vec<String> {
        set.ones().map(|x| self.names[x].clone()).collect()
    }

    pub fn show_set(&self, set: &PointSet) -> String {
        format!("{{{}}}", self.set_names(set).join(","))
    }

    /// Drop to a space on the same points with another relation.
    pub fn with_relation(&self, succ: Vec<PointSet>) -> Result<Self, SpaceError> {
        Self::from_parts(self.names.clone(), self.opens.clone(), succ)
    }
}

/// Close a family of point sets under finite unions and intersections, adding `∅` and the whole set.
pub fn generate_topology(n: usize, subbasis: &[PointSet]) -> Vec<PointSet> {
    let mut family: Vec<PointSet> = vec![FixedBitSet::with_capacity(n), full_set(n)];
    for s in subbasis {
        let mut s = s.clone();
        s.grow(n);
        family.push(s);
    }
    loop {
        let mut added = false;
        let snapshot = family.clone();
        for a in &snapshot {
            for b in &snapshot {
                for c in [union(a, b), intersection(a, b)] {
                    if !family.contains(&c) {
                        family.push(c);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    family.sort_by_key(canonical_key);
    family
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceClass {
    pub usc: bool,
    pub lsc: bool,
    pub continuous: bool,
    pub serial: bool,
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub equivalence_space: bool,
}

/// Levels of the space-morphism hierarchy, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceMorphismLevel {
    NotContinuous,
    Continuous,
    Relational,
    PMorphism,
    PqMorphism,
}

/// A counterexample to one of the morphism conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "condition")]
pub enum SpaceWitness {
    /// A target open whose preimage is not open.
    Continuity { open: usize },
    /// `x R y` but not `f(x) S f(y)`.
    Forth { x: Point, y: Point },
    /// `f(x) S y ∈ U` with no `x R x'`, `f(x') ∈ U`.
    BackInside { x: Point, y: Point, open: usize },
    /// `f(x) S y ∉ U` with no `x R x'`, `f(x') ∉ U`.
    BackOutside { x: Point, y: Point, open: usize },
    /// A source open whose image is not open.
    Openness { open: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceMorphismReport {
    pub level: SpaceMorphismLevel,
    pub open_map: bool,
    /// Counterexamples for the level just above `level` (empty at the top).
    pub witnesses: Vec<SpaceWitness>,
    /// Counterexamples to openness.
    pub openness_witnesses: Vec<SpaceWitness>,
}

impl SpaceMorphismReport {
    pub fn is_p_morphism(&self) -> bool {
        self.level >= SpaceMorphismLevel::PMorphism
    }

    pub fn is_pq_morphism(&self) -> bool {
        self.level == SpaceMorphismLevel::PqMorphism
    }

    pub fn is_continuous(&self) -> bool {
        self.level >= SpaceMorphismLevel::Continuous
    }
}

pub fn preimage(source: &RelationalSpace, map: &[Point], set: &PointSet) -> PointSet {
    source.set_of(source.points().filter(|&x| set.contains(map[x])))
}

pub fn image(target: &RelationalSpace, map: &[Point], set: &PointSet) -> PointSet {
    target.set_of(set.ones().map(|x| map[x]))
}

/// Inverse-image map on opens, `None` when the map is not continuous.
pub fn inverse_image_table(
    source: &RelationalSpace,
    target: &RelationalSpace,
    map: &[Point],
) -> Result<Vec<usize>, SpaceError> {
    if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
        return Err(SpaceError::NotTotal(format!("map has {} entries", map.len())));
    }
    target
        .opens()
        .iter()
        .map(|u| {
            source
                .open_position(&preimage(source, map, u))
                .ok_or_else(|| SpaceError::NotContinuous(target.show_set(u)))
        })
        .collect()
}

fn back_inside_failures(
    source: &RelationalSpace,
    target: &RelationalSpace,
    map: &[Point],
    all: bool,
) -> Vec<SpaceWitness> {
    let mut out = Vec::new();
    for (ui, u) in target.opens().iter().enumerate() {
        let pre = preimage(source, map, u);
        for x in source.points() {
            let witness = !source.successors(x).is_disjoint(&pre);
            if witness {
                continue;
            }
            if let Some(y) = target.successors(map[x]).ones().find(|&y| u.contains(y)) {
                out.push(SpaceWitness::BackInside { x, y, open: ui });
                if !all {
                    return out;
                }
            }
        }
    }
    out
}

fn back_outside_failures(
    source: &RelationalSpace,
    target: &RelationalSpace,
    map: &[Point],
    all: bool,
) -> Vec<SpaceWitness> {
    let mut out = Vec::new();
    for (ui, u) in target.opens().iter().enumerate() {
        let pre = preimage(source, map, u);
        for x in source.points() {
            if !source.successors(x).is_subset(&pre) {
                continue;
            }
            if let Some(y) = target.successors(map[x]).ones().find(|&y| !u.contains(y)) {
                out.push(SpaceWitness::BackOutside { x, y, open: ui });
                if !all {
                    return out;
                }
            }
        }
    }
    out
}

/// Classify a map of relational spaces against continuity and the forth/back conditions.
pub fn classify_space_morphism(
    source: &RelationalSpace,
    target: &RelationalSpace,
    map: &[Point],
) -> Result<SpaceMorphismReport, SpaceError> {
    if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
        return Err(SpaceError::NotTotal(format!("map has {} entries", map.len())));
    }
    let openness_witnesses: Vec<SpaceWitness> = source
        .opens()
        .iter()
        .enumerate()
        .filter(|(_, o)| !target.is_open(&image(target, map, o)))
        .map(|(open, _)| SpaceWitness::Openness { open })
        .collect();
    let open_map = openness_witnesses.is_empty();
    let report = |level, witnesses| SpaceMorphismReport {
        level,
        open_map,
        witnesses,
        openness_witnesses: openness_witnesses.clone(),
    };
    let continuity: Vec<SpaceWitness> = target
        .opens()
        .iter()
        .enumerate()
        .filter(|(_, u)| !source.is_open(&preimage(source, map, u)))
        .map(|(open, _)| SpaceWitness::Continuity { open })
        .collect();
    if !continuity.is_empty() {
        return Ok(report(SpaceMorphismLevel::NotContinuous, continuity));
    }
    let forth: Vec<SpaceWitness> = source
        .relation_pairs()
        .filter(|&(x, y)| !target.relates(map[x], map[y]))
        .map(|(x, y)| SpaceWitness::Forth { x, y })
        .collect();
    if !forth.is_empty() {
        return Ok(report(SpaceMorphismLevel::Continuous, forth));
    }
    let inside = back_inside_failures(source, target, map, true);
    if !inside.is_empty() {
        return Ok(report(SpaceMorphismLevel::Relational, inside));
    }
    let outside = back_outside_failures(source, target, map, true);
    if !outside.is_empty() {
        return Ok(report(SpaceMorphismLevel::PMorphism, outside));
    }
    Ok(report(SpaceMorphismLevel::PqMorphism, Vec::new()))
}

/// Fast yes/no variant of the classification used by hom-set enumeration.
pub fn morphism_level(
    source: &RelationalSpace,
    target: &RelationalSpace,
    map: &[Point],
    ceiling: SpaceMorphismLevel,
) -> SpaceMorphismLevel {
    for u in target.opens() {
        if !source.is_open(&preimage(source, map, u)) {
            return SpaceMorphismLevel::NotContinuous;
        }
    }
    if ceiling <= SpaceMorphismLevel::Continuous {
        return SpaceMorphismLevel::Continuous;
    }
    if source.relation_pairs().any(|(x, y)| !target.relates(map[x], map[y])) {
        return SpaceMorphismLevel::Continuous;
    }
    if ceiling <= SpaceMorphismLevel::Relational {
        return SpaceMorphismLevel::Relational;
    }
    if !back_inside_failures(source, target, map, false).is_empty() {
        return SpaceMorphismLevel::Relational;
    }
    if ceiling <= SpaceMorphismLevel::PMorphism {
        return SpaceMorphismLevel::PMorphism;
    }
    if !back_outside_failures(source, target, map, false).is_empty() {
        return SpaceMorphismLevel::PMorphism;
    }
    SpaceMorphismLevel::PqMorphism
}

/// Relation-preserving homeomorphism whose inverse also preserves the relation.
pub fn is_isomorphism(source: &RelationalSpace, target: &RelationalSpace, map: &[Point]) -> bool {
    if source.len() != target.len() || map.len() != source.len() {
        return false;
    }
    let mut seen = vec![false; target.len()];
    for &y in map {
        if y >= target.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    if source.opens().len() != target.opens().len() {
        return false;
    }
    let continuous = target.opens().iter().all(|u| source.is_open(&preimage(source, map, u)));
    let open = source.opens().iter().all(|o| target.is_open(&image(target, map, o)));
    let relation = source
        .points()
        .all(|x| source.points().all(|y| source.relates(x, y) == target.relates(map[x], map[y])));
    continuous && open && relation
}
