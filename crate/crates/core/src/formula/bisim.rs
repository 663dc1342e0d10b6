use std::collections::HashSet;

use serde::Serialize;

use crate::space::{classify_space_morphism, preimage, Point, PointSet};

use super::eval::{FormulaError, Model};
use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BisimOptions {
    /// Include `->` among the connectives.
    pub implication: bool,
}

impl Default for BisimOptions {
    fn default() -> Self {
        BisimOptions { implication: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BisimCounterexample {
    pub formula: String,
    pub point: String,
    pub source_holds: bool,
    pub target_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BisimVerdict {
    pub depth: usize,
    /// Semantically distinct formulas checked, as (source, target) denotation pairs.
    pub formulas: usize,
    /// Depth at which no new denotations appeared, if reached.
    pub saturated_at: Option<usize>,
    pub pass: bool,
    pub counterexample: Option<BisimCounterexample>,
}

struct Entry {
    formula: Formula,
    source: PointSet,
    target: PointSet,
}

/// Check `x ⊨ φ ⟺ f(x) ⊨ φ` for every formula up to `depth` along `map`.
///
/// Formulas are enumerated by their pair of denotations, so each distinct pair is kept once
/// with the first (shallowest) formula producing it.
pub fn bisim_invariance_check(
    source: &Model,
    target: &Model,
    map: &[Point],
    depth: usize,
    options: BisimOptions,
) -> Result<BisimVerdict, FormulaError> {
    let (sx, tx) = (source.space, target.space);
    let report = classify_space_morphism(sx, tx, map)?;
    if !report.is_pq_morphism() {
        return Err(FormulaError::PreconditionViolated(format!(
            "map is only {:?}; witnesses {:?}",
            report.level, report.witnesses
        )));
    }
    if !report.open_map {
        return Err(FormulaError::PreconditionViolated(format!(
            "map is not open; witnesses {:?}",
            report.openness_witnesses
        )));
    }
    let vars: Vec<&String> = source.valuation.keys().collect();
    if vars != target.valuation.keys().collect::<Vec<_>>() {
        return Err(FormulaError::PreconditionViolated(
            "source and target declare different variables".into(),
        ));
    }
    for v in &vars {
        if preimage(sx, map, &target.valuation[*v]) != source.valuation[*v] {
            return Err(FormulaError::PreconditionViolated(format!(
                "preimage of the target valuation of `{v}` differs from the source valuation"
            )));
        }
    }

    let mut entries: Vec<Entry> = Vec::new();
    let mut seen: HashSet<(PointSet, PointSet)> = HashSet::new();
    let mut push = |entries: &mut Vec<Entry>, formula: Formula, s: PointSet, t: PointSet| {
        if seen.insert((s.clone(), t.clone())) {
            entries.push(Entry { formula, source: s, target: t });
        }
    };
    for v in &vars {
        push(&mut entries, Formula::Var((*v).clone()), source.valuation[*v].clone(), target.valuation[*v].clone());
    }
    push(&mut entries, Formula::Top, sx.full_set(), tx.full_set());
    push(&mut entries, Formula::Bot, sx.empty_set(), tx.empty_set());

    let mut frontier_start = 0;
    let mut saturated_at = None;
    for level in 1..=depth {
        let before = entries.len();
        for i in frontier_start..before {
            let e = &entries[i];
            let (f, s, t) = (e.formula.clone(), e.source.clone(), e.target.clone());
            push(&mut entries, Formula::boxed(f.clone()), sx.interior(&sx.box_class(&s)), tx.interior(&tx.box_class(&t)));
            push(&mut entries, Formula::dia(f), sx.interior(&sx.dia_class(&s)), tx.interior(&tx.dia_class(&t)));
        }
        for i in 0..before {
            for j in 0..before {
                if i < frontier_start && j < frontier_start {
                    continue;
                }
                let (a, b) = (&entries[i], &entries[j]);
                let (fa, fb) = (a.formula.clone(), b.formula.clone());
                let mut s = a.source.clone();
                s.intersect_with(&b.source);
                let mut t = a.target.clone();
                t.intersect_with(&b.target);
                let and = (Formula::and(fa.clone(), fb.clone()), s, t);
                let mut s = a.source.clone();
                s.union_with(&b.source);
                let mut t = a.target.clone();
                t.union_with(&b.target);
                let or = (Formula::or(fa.clone(), fb.clone()), s, t);
                let imp = options.implication.then(|| {
                    let heyting = |x: &crate::space::RelationalSpace, p: &PointSet, q: &PointSet| {
                        let mut c = p.clone();
                        c.toggle_range(..);
                        c.union_with(q);
                        x.interior(&c)
                    };
                    (
                        Formula::imp(fa, fb),
                        heyting(sx, &a.source, &b.source),
                        heyting(tx, &a.target, &b.target),
                    )
                });
                for (f, s, t) in [Some(and), Some(or), imp].into_iter().flatten() {
                    push(&mut entries, f, s, t);
                }
            }
        }
        frontier_start = before;
        if entries.len() == before {
            saturated_at = Some(level);
            break;
        }
    }

    let counterexample = entries.iter().find_map(|e| {
        let pulled = preimage(sx, map, &e.target);
        (pulled != e.source).then(|| {
            let x = sx.points().find(|&x| pulled.contains(x) != e.source.contains(x)).unwrap();
            BisimCounterexample {
                formula: e.formula.to_string(),
                point: sx.name(x).to_string(),
                source_holds: e.source.contains(x),
                target_holds: e.target.contains(map[x]),
            }
        })
    });
    Ok(BisimVerdict {
        depth,
        formulas: entries.len(),
        saturated_at,
        pass: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::formula::{evaluate, parse};
    use crate::space::RelationalSpace;

    fn s1() -> RelationalSpace {
        RelationalSpace::new(
            &["x", "y"],
            &[vec![], vec!["y"], vec!["x", "y"]],
            &[("x", "y"), ("y", "y")],
        )
        .unwrap()
    }

    fn val(names: &[&str]) -> BTreeMap<String, Vec<String>> {
        [("p".to_string(), names.iter().map(|s| s.to_string()).collect())].into()
    }

    #[test]
    fn identity_passes() {
        let x = s1();
        for v in [val(&[]), val(&["y"]), val(&["x", "y"])] {
            let m = Model::from_names(&x, &v).unwrap();
            let r = bisim_invariance_check(&m, &m, &[0, 1], 3, BisimOptions::default()).unwrap();
            assert!(r.pass);
        }
    }

    #[test]
    fn constant_to_y_passes() {
        let x = s1();
        let y = RelationalSpace::new(&["y"], &[vec![], vec!["y"]], &[("y", "y")]).unwrap();
        let src = Model::from_names(&x, &val(&["x", "y"])).unwrap();
        let tgt = Model::from_names(&y, &val(&["y"])).unwrap();
        let r = bisim_invariance_check(&src, &tgt, &[0, 0], 3, BisimOptions::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.saturated_at.is_some());
    }

    #[test]
    fn non_morphism_is_rejected() {
        let x = s1();
        let m = Model::from_names(&x, &val(&[])).unwrap();
        // Swapping x and y breaks continuity.
        let e = bisim_invariance_check(&m, &m, &[1, 0], 2, BisimOptions::default()).unwrap_err();
        assert!(matches!(e, FormulaError::PreconditionViolated(_)));
        let m2 = Model::from_names(&x, &val(&["y"])).unwrap();
        let e = bisim_invariance_check(&m, &m2, &[0, 1], 2, BisimOptions::default()).unwrap_err();
        assert!(matches!(e, FormulaError::PreconditionViolated(_)));
    }

    #[test]
    fn dedup_keeps_semantics() {
        let x = s1();
        let m = Model::from_names(&x, &val(&["y"])).unwrap();
        let a = evaluate(&m, &parse("box p").unwrap()).unwrap();
        let b = evaluate(&m, &parse("true").unwrap()).unwrap();
        assert_eq!(a, b);
        let with = bisim_invariance_check(&m, &m, &[0, 1], 4, BisimOptions::default()).unwrap();
        let without = bisim_invariance_check(&m, &m, &[0, 1], 4, BisimOptions { implication: false }).unwrap();
        assert!(with.pass && without.pass);
        assert!(without.formulas <= with.formulas);
        assert!(with.formulas <= x.opens().len() * x.opens().len());
    }
}
