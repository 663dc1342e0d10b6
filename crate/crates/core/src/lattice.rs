//! Finite bounded distributive lattices, used throughout as finite frames.
//!
//! Elements are addressed by index. Subsets of the carrier are `u64` bitmasks,
//! which caps carriers at 64 elements.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of a lattice element.
pub type Elem = usize;

/// A set of lattice elements, one bit per element index.
pub type ElemSet = u64;

pub const MAX_ELEMENTS: usize = 64;

/// Carriers up to this size get the literal (all directed subsets) checks.
pub(crate) const LITERAL_SUBSET_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("carrier has {0} elements, at most 64 are supported")]
    TooLarge(usize),
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a partial order: `{0}` and `{1}` are below each other")]
    NotAPartialOrder(String, String),
    #[error("`{a}` and `{b}` have no {kind}")]
    MissingMeetOrJoin { kind: &'static str, a: String, b: String },
    #[error("distributive law fails at a=`{a}`, b=`{b}`, c=`{c}`")]
    NotDistributive { a: String, b: String, c: String },
    #[error("not a principal filter: `{0}` and `{1}` are members but their meet is not")]
    NotPrincipal(String, String),
    #[error("not upward closed: `{member}` is a member but `{missing}` above it is not")]
    NotUpClosed { member: String, missing: String },
}

#[inline]
pub(crate) fn bit(e: Elem) -> ElemSet {
    1u64 << e
}

/// Iterate the indices set in a bitmask, lowest first.
pub fn members(mut set: ElemSet) -> impl Iterator<Item = Elem> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let e = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(e)
        }
    })
}

fn full_mask(n: usize) -> ElemSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A validated finite distributive lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    /// `up[a]` is `{b | a <= b}`.
    up: Vec<ElemSet>,
    /// `down[a]` is `{b | b <= a}`.
    down: Vec<ElemSet>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    top: Elem,
    bottom: Elem,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("elements", &self.names)
            .field("top", &self.names[self.top])
            .field("bottom", &self.names[self.bottom])
            .finish()
    }
}

impl FiniteLattice {
    /// Validate a carrier given by element ids and a generating set of order pairs.
    pub fn new<S: AsRef<str>>(elements: &[S], leq: &[(S, S)]) -> Result<Self, LatticeError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(LatticeError::DuplicateElement(name.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| LatticeError::UnknownElement(s.to_string()))
        };
        let mut pairs = Vec::with_capacity(leq.len());
        for (a, b) in leq {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_pairs(names, &pairs)
    }

    /// Validate a carrier from index pairs `(a, b)` meaning `a <= b`.
    pub fn from_pairs(names: Vec<String>, pairs: &[(Elem, Elem)]) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge(n));
        }
        let mut up: Vec<ElemSet> = (0..n).map(bit).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(LatticeError::UnknownElement(format!("#{}", a.max(b))));
            }
            up[a] |= bit(b);
        }
        // Warshall closure on rows.
        for k in 0..n {
            for i in 0..n {
                if up[i] & bit(k) != 0 {
                    up[i] |= up[k];
                }
            }
        }
        Self::from_closed_order(names, up)
    }

    /// Validate a carrier whose order is given by a predicate.
    pub fn from_order_fn(
        names: Vec<String>,
        leq: impl Fn(Elem, Elem) -> bool,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_pairs(names, &pairs)
    }

    fn from_closed_order(names: Vec<String>, up: Vec<ElemSet>) -> Result<Self, LatticeError> {
        let n = names.len();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut down = vec![0u64; n];
        for (a, &ups) in up.iter().enumerate() {
            for b in members(ups) {
                down[b] |= bit(a);
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if up[a] & bit(b) != 0 && up[b] & bit(a) != 0 {
                    return Err(LatticeError::NotAPartialOrder(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
            }
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower = down[a] & down[b];
                let m = members(lower).find(|&m| lower & !down[m] == 0).ok_or_else(|| {
                    LatticeError::MissingMeetOrJoin {
                        kind: "meet",
                        a: names[a].clone(),
                        b: names[b].clone(),
                    }
                })?;
                meet[a * n + b] = m;
                let upper = up[a] & up[b];
                let j = members(upper).find(|&j| upper & !up[j] == 0).ok_or_else(|| {
                    LatticeError::MissingMeetOrJoin {
                        kind: "join",
                        a: names[a].clone(),
                        b: names[b].clone(),
                    }
                })?;
                join[a * n + b] = j;
            }
        }
        let all = full_mask(n);
        let top = (0..n).find(|&t| down[t] == all).expect("binary joins give a top");
        let bottom = (0..n).find(|&b| up[b] == all).expect("binary meets give a bottom");
        let lattice = FiniteLattice { names, index, up, down, meet, join, top, bottom };
        if let Some((a, b, c)) = lattice.distributivity_violation() {
            return Err(LatticeError::NotDistributive {
                a: lattice.names[a].clone(),
                b: lattice.names[b].clone(),
                c: lattice.names[c].clone(),
            });
        }
        Ok(lattice)
    }

    /// The `n`-element chain `0 < 1 < ... < n-1`, named by position.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_order_fn(names, |a, b| a <= b).expect("chains are distributive")
    }

    /// The powerset of a `k`-element set, elements named by their bitmask.
    pub fn boolean(k: usize) -> Self {
        let names = (0..1usize << k).map(|i| format!("{i:0k$b}", k = k.max(1))).collect();
        Self::from_order_fn(names, |a, b| a & !b == 0).expect("powersets are distributive")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn all(&self) -> ElemSet {
        full_mask(self.len())
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<Elem, LatticeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a] & bit(b) != 0
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    /// `↑a`.
    #[inline]
    pub fn up_set(&self, a: Elem) -> ElemSet {
        self.up[a]
    }

    /// `↓a`.
    #[inline]
    pub fn down_set(&self, a: Elem) -> ElemSet {
        self.down[a]
    }

    /// `↓S`, the down-closure of a set.
    pub fn down_closure(&self, set: ElemSet) -> ElemSet {
        members(set).fold(0, |acc, a| acc | self.down[a])
    }

    /// `↑S`, the up-closure of a set.
    pub fn up_closure(&self, set: ElemSet) -> ElemSet {
        members(set).fold(0, |acc, a| acc | self.up[a])
    }

    /// Join of a set; the empty join is bottom.
    pub fn big_join(&self, set: ElemSet) -> Elem {
        members(set).fold(self.bottom, |acc, a| self.join(acc, a))
    }

    /// Meet of a set; the empty meet is top.
    pub fn big_meet(&self, set: ElemSet) -> Elem {
        members(set).fold(self.top, |acc, a| self.meet(acc, a))
    }

    /// Join of the elements satisfying a predicate.
    pub fn join_where(&self, pred: impl Fn(Elem) -> bool) -> Elem {
        self.elements().filter(|&c| pred(c)).fold(self.bottom, |acc, c| self.join(acc, c))
    }

    /// Meet of the elements satisfying a predicate.
    pub fn meet_where(&self, pred: impl Fn(Elem) -> bool) -> Elem {
        self.elements().filter(|&c| pred(c)).fold(self.top, |acc, c| self.meet(acc, c))
    }

    /// Elements satisfying a predicate, as a set.
    pub fn set_where(&self, pred: impl Fn(Elem) -> bool) -> ElemSet {
        self.elements().filter(|&c| pred(c)).fold(0, |acc, c| acc | bit(c))
    }

    /// Size of `↓a`, used as a height proxy for deterministic tie-breaking.
    pub fn rank(&self, a: Elem) -> u32 {
        self.down[a].count_ones()
    }

    /// First triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`, checked exhaustively.
    pub fn distributivity_violation(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First `(a, S)` violating `a ∧ ⋁S = ⋁{a ∧ s | s ∈ S}`, over every subset `S`.
    ///
    /// Exponential in the carrier size; callers keep it to small lattices.
    pub fn frame_law_violation(&self) -> Option<(Elem, ElemSet)> {
        assert!(self.len() <= 20, "frame law enumeration is exponential");
        for subset in 0..=self.all() {
            let joined = self.big_join(subset);
            for a in self.elements() {
                let distributed = members(subset)
                    .fold(self.bottom, |acc, s| self.join(acc, self.meet(a, s)));
                if self.meet(a, joined) != distributed {
                    return Some((a, subset));
                }
            }
        }
        None
    }

    /// Whether `p` is prime: `p ≠ ⊤` and `a ∧ b ≤ p` implies `a ≤ p` or `b ≤ p`.
    pub fn is_prime(&self, p: Elem) -> bool {
        if p == self.top {
            return false;
        }
        self.elements().all(|a| {
            self.elements().all(|b| {
                !self.leq(self.meet(a, b), p) || self.leq(a, p) || self.leq(b, p)
            })
        })
    }

    /// All frame characters, one per prime element, in element order.
    pub fn characters(&self) -> Vec<Character> {
        self.elements().filter(|&p| self.is_prime(p)).map(|prime| Character { prime }).collect()
    }

    /// Nonempty directed subsets, enumerated literally.
    pub(crate) fn directed_subsets(&self) -> impl Iterator<Item = ElemSet> + '_ {
        assert!(self.len() <= LITERAL_SUBSET_LIMIT);
        (1..=self.all()).filter(move |&s| self.is_directed(s))
    }

    pub fn is_directed(&self, set: ElemSet) -> bool {
        set != 0
            && members(set)
                .all(|s| members(set).all(|t| self.up[s] & self.up[t] & set != 0))
    }

    /// Compact elements: `a ≤ ⋁S` for directed `S` forces `a ≤ s` for some `s ∈ S`.
    ///
    /// Literal over all directed subsets for small carriers. Above that a finite
    /// directed set contains its own join, so every element qualifies.
    pub fn compacts(&self) -> ElemSet {
        if self.len() > LITERAL_SUBSET_LIMIT {
            return self.all();
        }
        let directed: Vec<ElemSet> = self.directed_subsets().collect();
        self.set_where(|a| {
            directed.iter().all(|&s| {
                !self.leq(a, self.big_join(s)) || members(s).any(|x| self.leq(a, x))
            })
        })
    }

    /// Scott-open: whenever a directed join lies in the set, some member of the directed set does.
    pub fn is_scott_open(&self, set: ElemSet) -> bool {
        if self.len() > LITERAL_SUBSET_LIMIT {
            return self.up_closure(set) == set;
        }
        self.up_closure(set) == set
            && self
                .directed_subsets()
                .all(|s| set & bit(self.big_join(s)) == 0 || set & s != 0)
    }

    pub fn is_filter(&self, set: ElemSet) -> bool {
        self.filter_generator(set).is_ok()
    }

    /// The generator `g` with `set = ↑g`, or an error naming the failure.
    pub fn filter_generator(&self, set: ElemSet) -> Result<Elem, LatticeError> {
        if set == 0 {
            return Err(LatticeError::NotPrincipal(
                self.names[self.top].clone(),
                self.names[self.top].clone(),
            ));
        }
        for a in members(set) {
            if let Some(missing) = members(self.up[a] & !set).next() {
                return Err(LatticeError::NotUpClosed {
                    member: self.names[a].clone(),
                    missing: self.names[missing].clone(),
                });
            }
        }
        for a in members(set) {
            for b in members(set) {
                if set & bit(self.meet(a, b)) == 0 {
                    return Err(LatticeError::NotPrincipal(
                        self.names[a].clone(),
                        self.names[b].clone(),
                    ));
                }
            }
        }
        Ok(self.big_meet(set))
    }

    pub fn is_ideal(&self, set: ElemSet) -> bool {
        set != 0
            && self.down_closure(set) == set
            && members(set).all(|a| members(set).all(|b| set & bit(self.join(a, b)) != 0))
    }

    /// All ideals (nonempty down-sets closed under binary joins), as member sets.
    ///
    /// Enumerates every down-set and keeps the join-closed ones, sorted by size
    /// and then bit pattern. Above 16 elements ideals are generated as principal
    /// down-sets directly.
    pub fn all_ideals(&self) -> Vec<ElemSet> {
        let mut ideals: Vec<ElemSet> = if self.len() > LITERAL_SUBSET_LIMIT {
            self.elements().map(|a| self.down[a]).collect()
        } else {
            let mut order: Vec<Elem> = self.elements().collect();
            order.sort_by_key(|&a| (self.rank(a), a));
            let mut out = Vec::new();
            self.down_sets_from(&order, 0, 0, &mut out);
            out.retain(|&s| self.is_ideal(s));
            out
        };
        ideals.sort_by_key(|&s| (s.count_ones(), s));
        ideals
    }

    fn down_sets_from(&self, order: &[Elem], i: usize, current: ElemSet, out: &mut Vec<ElemSet>) {
        if i == order.len() {
            out.push(current);
            return;
        }
        let e = order[i];
        self.down_sets_from(order, i + 1, current, out);
        if self.down[e] & !bit(e) & !current == 0 {
            self.down_sets_from(order, i + 1, current | bit(e), out);
        }
    }

    /// Whether `map` (indexed by this lattice) is monotone into `target`.
    pub fn monotone_violation(&self, target: &FiniteLattice, map: &[Elem]) -> Option<(Elem, Elem)> {
        for a in self.elements() {
            for b in members(self.up[a]) {
                if !target.leq(map[a], map[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Join-irreducible elements (nonbottom, not a join of strictly smaller elements).
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&j| {
                j != self.bottom && self.big_join(self.down[j] & !bit(j)) != j
            })
            .collect()
    }

    /// Render a set of elements as `{a,b,...}`.
    pub fn show_set(&self, set: ElemSet) -> String {
        let parts: Vec<&str> = members(set).map(|a| self.name(a)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A frame character `A → 2`, represented by its prime element: `p(a) = 1` iff `a ≰ prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub prime: Elem,
}

impl Character {
    /// `p(a)`, as a boolean.
    #[inline]
    pub fn eval(self, lattice: &FiniteLattice, a: Elem) -> bool {
        !lattice.leq(a, self.prime)
    }

    /// The completely prime filter `char(p) = {a | a ≰ prime}`.
    pub fn filter(self, lattice: &FiniteLattice) -> ElemSet {
        lattice.all() & !lattice.down_set(self.prime)
    }
}

/// The principal filter `↑generator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrincipalFilter {
    pub generator: Elem,
}

impl PrincipalFilter {
    #[inline]
    pub fn contains(self, lattice: &FiniteLattice, c: Elem) -> bool {
        lattice.leq(self.generator, c)
    }

    pub fn members(self, lattice: &FiniteLattice) -> ElemSet {
        lattice.up_set(self.generator)
    }

    /// `self ⊆ other`.
    pub fn is_subset(self, lattice: &FiniteLattice, other: PrincipalFilter) -> bool {
        lattice.leq(other.generator, self.generator)
    }
}

/// The principal ideal `↓generator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrincipalIdeal {
    pub generator: Elem,
}

impl PrincipalIdeal {
    pub fn members(self, lattice: &FiniteLattice) -> ElemSet {
        lattice.down_set(self.generator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond_m3() -> Result<FiniteLattice, LatticeError> {
        FiniteLattice::new(
            &["bot", "x", "y", "z", "top"],
            &[
                ("bot", "x"),
                ("bot", "y"),
                ("bot", "z"),
                ("x", "top"),
                ("y", "top"),
                ("z", "top"),
            ],
        )
    }

    /// Independent check of the distributive law straight from the order relation.
    fn distributive_by_order(lat: &FiniteLattice) -> bool {
        let n = lat.len();
        let glb = |a: Elem, b: Elem| {
            (0..n)
                .filter(|&m| lat.leq(m, a) && lat.leq(m, b))
                .find(|&m| (0..n).all(|l| !(lat.leq(l, a) && lat.leq(l, b)) || lat.leq(l, m)))
                .unwrap()
        };
        let lub = |a: Elem, b: Elem| {
            (0..n)
                .filter(|&m| lat.leq(a, m) && lat.leq(b, m))
                .find(|&m| (0..n).all(|u| !(lat.leq(a, u) && lat.leq(b, u)) || lat.leq(m, u)))
                .unwrap()
        };
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| glb(a, lub(b, c)) == lub(glb(a, b), glb(a, c))))
        })
    }

    #[test]
    fn degenerate_and_chain_lattices_validate() {
        let one = FiniteLattice::new(&["0"], &[]).unwrap();
        assert_eq!(one.top(), one.bottom());
        let chain = FiniteLattice::new(&["bot", "m", "top"], &[("bot", "m"), ("m", "top")]).unwrap();
        assert!(chain.leq(0, 2), "closure adds bot <= top");
        assert_eq!(chain.join(1, 2), 2);
        assert!(distributive_by_order(&chain));
    }

    #[test]
    fn diamond_is_rejected_as_nondistributive() {
        match diamond_m3() {
            Err(LatticeError::NotDistributive { .. }) => {}
            other => panic!("expected NotDistributive, got {other:?}"),
        }
    }

    #[test]
    fn non_lattices_are_rejected() {
        let cyc = FiniteLattice::new(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(cyc, Err(LatticeError::NotAPartialOrder(..))));
        let vee = FiniteLattice::new(&["a", "b", "t"], &[("a", "t"), ("b", "t")]);
        assert!(matches!(vee, Err(LatticeError::MissingMeetOrJoin { kind: "meet", .. })));
        let unknown = FiniteLattice::new(&["a"], &[("a", "b")]);
        assert_eq!(unknown.unwrap_err(), LatticeError::UnknownElement("b".into()));
        let dup = FiniteLattice::new(&["a", "a"], &[]);
        assert!(matches!(dup, Err(LatticeError::DuplicateElement(_))));
        assert_eq!(FiniteLattice::new::<&str>(&[], &[]).unwrap_err(), LatticeError::Empty);
    }

    #[test]
    fn meets_joins_and_empty_join() {
        let chain = FiniteLattice::chain(3);
        assert_eq!(chain.meet(chain.top(), 1), 1);
        assert_eq!(chain.big_join(0), chain.bottom());
        assert_eq!(chain.big_meet(0), chain.top());
        assert_eq!(chain.join(1, 2), 2);
        assert!(chain.index_of("nope").is_err());
    }

    /// Primality straight from the definition over all pairs.
    fn primes_by_pairs(lat: &FiniteLattice) -> Vec<Elem> {
        lat.elements()
            .filter(|&p| {
                p != lat.top()
                    && lat.elements().all(|a| {
                        lat.elements().all(|b| {
                            !lat.leq(lat.meet(a, b), p) || lat.leq(a, p) || lat.leq(b, p)
                        })
                    })
            })
            .collect()
    }

    #[test]
    fn characters_match_prime_elements() {
        assert!(FiniteLattice::chain(1).characters().is_empty());
        let chain = FiniteLattice::chain(3);
        let primes: Vec<Elem> = chain.characters().iter().map(|c| c.prime).collect();
        assert_eq!(primes, primes_by_pairs(&chain));
        assert_eq!(primes, vec![0, 1]);
        let square = FiniteLattice::boolean(2);
        let primes: Vec<Elem> = square.characters().iter().map(|c| c.prime).collect();
        assert_eq!(primes, vec![0b01, 0b10], "the two coatoms");
    }

    #[test]
    fn character_filters_are_completely_prime() {
        for lat in [FiniteLattice::chain(4), FiniteLattice::boolean(3)] {
            for p in lat.characters() {
                let f = p.filter(&lat);
                assert!(lat.is_filter(f));
                for s in 0..=lat.all() {
                    if f & bit(lat.big_join(s)) != 0 {
                        assert!(f & s != 0);
                    }
                }
            }
        }
    }

    #[test]
    fn every_element_of_a_finite_lattice_is_compact() {
        for lat in [FiniteLattice::chain(1), FiniteLattice::chain(3), FiniteLattice::boolean(3)] {
            assert_eq!(lat.compacts(), lat.all());
            assert_ne!(lat.compacts() & bit(lat.bottom()), 0);
        }
    }

    #[test]
    fn filters_and_scott_openness() {
        let chain = FiniteLattice::chain(3);
        let upper = bit(1) | bit(2);
        assert!(chain.is_filter(upper));
        assert_eq!(chain.filter_generator(upper), Ok(1));
        assert!(chain.is_scott_open(upper));
        let square = FiniteLattice::boolean(2);
        let atoms = bit(0b01) | bit(0b10) | bit(0b11);
        assert!(matches!(
            square.filter_generator(atoms),
            Err(LatticeError::NotPrincipal(..))
        ));
        assert!(matches!(
            chain.filter_generator(bit(1)),
            Err(LatticeError::NotUpClosed { .. })
        ));
        for g in square.elements() {
            assert!(square.is_scott_open(square.up_set(g)));
        }
    }

    #[test]
    fn chain_ideals_are_the_principal_down_sets() {
        let chain = FiniteLattice::chain(3);
        assert_eq!(chain.all_ideals(), vec![0b001, 0b011, 0b111]);
    }

    #[test]
    fn ideals_biject_with_elements_via_join() {
        for lat in [FiniteLattice::chain(4), FiniteLattice::boolean(3), FiniteLattice::chain(1)] {
            let ideals = lat.all_ideals();
            assert_eq!(ideals.len(), lat.len());
            let mut tops: Vec<Elem> = ideals.iter().map(|&i| lat.big_join(i)).collect();
            tops.sort();
            assert_eq!(tops, lat.elements().collect::<Vec<_>>());
            for i in ideals {
                assert_eq!(lat.down_set(lat.big_join(i)), i);
            }
        }
    }

    #[test]
    fn frame_law_holds_on_small_lattices() {
        for lat in [FiniteLattice::chain(4), FiniteLattice::boolean(3)] {
            assert_eq!(lat.frame_law_violation(), None);
        }
    }

    #[test]
    fn join_irreducibles_of_boolean_are_atoms() {
        let b = FiniteLattice::boolean(3);
        assert_eq!(b.join_irreducibles(), vec![0b001, 0b010, 0b100]);
    }
}
