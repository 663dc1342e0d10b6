//! Exhaustive generators for small lattices, modal frames and relational spaces.

use std::collections::BTreeSet;

use crate::frame::{Axiom, ModalFrame};
use crate::lattice::{Elem, FiniteLattice};
use crate::space::{PointSet, RelationalSpace};

/// A finite poset as strict-below masks: bit `j` of `below[i]` means `j < i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    pub below: Vec<u32>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// Down-sets as bitmasks, ordered by size then value.
    pub fn down_sets(&self) -> Vec<u32> {
        let n = self.len();
        let mut out: Vec<u32> = (0..1u32 << n)
            .filter(|&s| (0..n).all(|i| s & (1 << i) == 0 || self.below[i] & !s == 0))
            .collect();
        out.sort_by_key(|&s| (s.count_ones(), s));
        out
    }

    fn permuted(&self, perm: &[usize]) -> Poset {
        let mut below = vec![0u32; self.len()];
        for (i, &b) in self.below.iter().enumerate() {
            below[perm[i]] = (0..self.len())
                .filter(|&j| b & (1 << j) != 0)
                .fold(0, |acc, j| acc | 1 << perm[j]);
        }
        Poset { below }
    }

    /// Lexicographically least relabelling.
    fn canonical(&self) -> Poset {
        let mut best = self.clone();
        let mut perm: Vec<usize> = (0..self.len()).collect();
        for_each_permutation(&mut perm, 0, &mut |p| {
            let c = self.permuted(p);
            if c < best {
                best = c;
            }
        });
        best
    }

    /// The lattice of down-sets, elements named `0..n` in size order.
    pub fn down_set_lattice(&self) -> FiniteLattice {
        let sets = self.down_sets();
        let names = (0..sets.len()).map(|i| i.to_string()).collect();
        FiniteLattice::from_order_fn(names, |i, j| sets[i] & !sets[j] == 0)
            .expect("down-sets of a poset form a distributive lattice")
    }
}

fn for_each_permutation(perm: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        for_each_permutation(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Posets up to isomorphism whose down-set lattice has at most `max_lattice` elements.
///
/// Grown one maximal element at a time; adding an element never shrinks the down-set count,
/// so the bound prunes the search.
pub fn posets_for_lattices(max_lattice: usize) -> Vec<Poset> {
    let mut out: BTreeSet<Poset> = BTreeSet::new();
    let mut layer: BTreeSet<Poset> = BTreeSet::new();
    if max_lattice >= 1 {
        layer.insert(Poset { below: Vec::new() });
    }
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for p in &layer {
            out.insert(p.clone());
            for d in p.down_sets() {
                let mut below = p.below.clone();
                below.push(d);
                let q = Poset { below };
                if q.down_sets().len() <= max_lattice {
                    next.insert(q.canonical());
                }
            }
        }
        layer = next;
    }
    out.into_iter().collect()
}

/// Distributive lattices with at most `max` elements, up to isomorphism, smallest first.
pub fn distributive_lattices(max: usize) -> Vec<FiniteLattice> {
    let mut posets = posets_for_lattices(max);
    posets.sort_by_key(|p| (p.down_sets().len(), p.clone()));
    posets.iter().map(Poset::down_set_lattice).collect()
}

/// Maps preserving `⊤` and binary meets.
pub fn box_tables(l: &FiniteLattice) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut table = vec![usize::MAX; l.len()];
    assign(l, &mut table, 0, &mut out, &|l, t, a| {
        if a == l.top() && t[a] != l.top() {
            return false;
        }
        // Only triples whose entries are all assigned can be checked.
        (0..=a).all(|b| {
            let m = l.meet(a, b);
            m > a || t[m] == l.meet(t[a], t[b])
        }) && (0..a).all(|b| {
            (0..a).all(|c| l.meet(b, c) != a || t[a] == l.meet(t[b], t[c]))
        })
    });
    out.retain(|t| {
        l.elements().all(|a| l.elements().all(|b| t[l.meet(a, b)] == l.meet(t[a], t[b])))
    });
    out
}

/// Monotone maps with `⊥ ↦ ⊥`.
pub fn dia_tables(l: &FiniteLattice) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut table = vec![usize::MAX; l.len()];
    assign(l, &mut table, 0, &mut out, &|l, t, a| {
        (a != l.bottom() || t[a] == l.bottom())
            && (0..a).all(|b| (!l.leq(b, a) || l.leq(t[b], t[a])) && (!l.leq(a, b) || l.leq(t[a], t[b])))
    });
    out
}

/// Backtracking over tables; `ok(l, t, a)` sees entries `0..=a` filled.
fn assign(
    l: &FiniteLattice,
    table: &mut Vec<Elem>,
    a: usize,
    out: &mut Vec<Vec<Elem>>,
    ok: &dyn Fn(&FiniteLattice, &[Elem], usize) -> bool,
) {
    if a == l.len() {
        out.push(table.clone());
        return;
    }
    for v in l.elements() {
        table[a] = v;
        if ok(l, table, a) {
            assign(l, table, a + 1, out, ok);
        }
    }
    table[a] = usize::MAX;
}

/// Every modal frame on `l`: box and diamond tables satisfying the modal axioms.
pub fn modal_frames(l: &FiniteLattice) -> Vec<ModalFrame> {
    let boxes = box_tables(l);
    let dias = dia_tables(l);
    let mut out = Vec::new();
    for b in &boxes {
        for d in &dias {
            let meet_ok = l.elements().all(|a| {
                l.elements().all(|c| l.leq(l.meet(b[a], d[c]), d[l.meet(a, c)]))
            });
            if meet_ok {
                let f = ModalFrame::new(l.clone(), b.clone(), d.clone())
                    .expect("tables were filtered by the modal axioms");
                debug_assert!(Axiom::MODAL.iter().all(|ax| ax.holds(&f)));
                out.push(f);
            }
        }
    }
    out
}

/// Every modal frame over every distributive lattice with at most `max` elements.
pub fn all_modal_frames(max: usize) -> Vec<ModalFrame> {
    distributive_lattices(max).iter().flat_map(modal_frames).collect()
}

/// Every topology on `n` labelled points, each as its sorted list of opens.
pub fn topologies(n: usize) -> Vec<Vec<PointSet>> {
    assert!(n <= 4, "topology enumeration is limited to 4 points");
    let full = (1u32 << n) - 1;
    let middle: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << middle.len() {
        let mut family: Vec<u32> = vec![0, full];
        family.extend(middle.iter().enumerate().filter(|(i, _)| choice & (1 << i) != 0).map(|(_, &s)| s));
        if n == 0 {
            family.truncate(1);
        }
        let closed = family.iter().all(|&a| {
            family.iter().all(|&b| family.contains(&(a | b)) && family.contains(&(a & b)))
        });
        if closed {
            out.push(family.iter().map(|&s| mask_set(n, s)).collect());
        }
        if n == 0 {
            break;
        }
    }
    out
}

fn mask_set(n: usize, mask: u32) -> PointSet {
    let mut s = PointSet::with_capacity(n);
    for i in 0..n {
        if mask & (1 << i) != 0 {
            s.insert(i);
        }
    }
    s
}

/// Point names used by the generators.
pub fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// A topology together with its relations, enumerated lazily by relation mask.
#[derive(Debug, Clone)]
pub struct SpaceFamily {
    pub points: usize,
    pub opens: Vec<PointSet>,
    /// Relation masks to enumerate: bit `n*x + y` means `x R y`.
    pub relations: Vec<u32>,
}

impl SpaceFamily {
    pub fn space(&self, relation: u32) -> RelationalSpace {
        let n = self.points;
        let succ = (0..n).map(|x| mask_set(n, (relation >> (n * x)) & ((1 << n) - 1))).collect();
        RelationalSpace::from_parts(point_names(n), self.opens.clone(), succ)
            .expect("generated opens form a topology")
    }

    pub fn spaces(&self) -> impl Iterator<Item = RelationalSpace> + '_ {
        self.relations.iter().map(|&r| self.space(r))
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

fn permute_relation(n: usize, rel: u32, perm: &[usize]) -> u32 {
    let mut out = 0;
    for x in 0..n {
        for y in 0..n {
            if rel & (1 << (n * x + y)) != 0 {
                out |= 1 << (n * perm[x] + perm[y]);
            }
        }
    }
    out
}

fn permute_family(n: usize, fam: &[u32], perm: &[usize]) -> Vec<u32> {
    let mut out: Vec<u32> = fam
        .iter()
        .map(|&s| (0..n).filter(|&i| s & (1 << i) != 0).fold(0, |acc, i| acc | 1 << perm[i]))
        .collect();
    out.sort();
    out
}

/// Spaces with exactly `n` points, grouped by topology.
///
/// With `up_to_iso`, topologies are taken up to homeomorphism and relations up to the
/// automorphisms of each topology; otherwise every labelled space appears.
pub fn space_families(n: usize, up_to_iso: bool) -> Vec<SpaceFamily> {
    let all_rel: Vec<u32> = (0..1u32 << (n * n)).collect();
    let mask_of = |s: &PointSet| s.ones().fold(0u32, |acc, i| acc | 1 << i);
    let tops = topologies(n);
    if !up_to_iso {
        return tops
            .into_iter()
            .map(|opens| SpaceFamily { points: n, opens, relations: all_rel.clone() })
            .collect();
    }
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut p, 0, &mut |q| perms.push(q.to_vec()));
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut out = Vec::new();
    for opens in tops {
        let mut fam: Vec<u32> = opens.iter().map(mask_of).collect();
        fam.sort();
        let canon = perms.iter().map(|q| permute_family(n, &fam, q)).min().unwrap();
        if canon != fam || !seen.insert(canon) {
            continue;
        }
        let auts: Vec<&Vec<usize>> = perms.iter().filter(|q| permute_family(n, &fam, q) == fam).collect();
        let relations = all_rel
            .iter()
            .copied()
            .filter(|&r| auts.iter().all(|q| permute_relation(n, r, q) >= r))
            .collect();
        out.push(SpaceFamily { points: n, opens, relations });
    }
    out
}

/// Families for every point count up to `max_points`.
pub fn all_space_families(max_points: usize, up_to_iso: bool) -> Vec<SpaceFamily> {
    (0..=max_points).flat_map(|n| space_families(n, up_to_iso)).collect()
}
