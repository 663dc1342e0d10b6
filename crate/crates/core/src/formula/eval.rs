use std::collections::BTreeMap;

use thiserror::Error;

use crate::frame::ModalFrame;
use crate::lattice::Elem;
use crate::space::{PointSet, RelationalSpace, SpaceError};

use super::parse::SyntaxError;
use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("valuation of `{variable}` is {set}, which is not open")]
    NotOpen { variable: String, set: String },
    #[error("implication is disabled")]
    ImplicationDisabled,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

impl From<SpaceError> for FormulaError {
    fn from(e: SpaceError) -> Self {
        match e {
            SpaceError::UnknownPoint(p) => FormulaError::UnknownPoint(p),
            other => FormulaError::PreconditionViolated(other.to_string()),
        }
    }
}

/// A space with an open set for each declared variable.
#[derive(Debug, Clone)]
pub struct Model<'a> {
    pub space: &'a RelationalSpace,
    pub valuation: BTreeMap<String, PointSet>,
}

impl<'a> Model<'a> {
    pub fn new(space: &'a RelationalSpace, valuation: BTreeMap<String, PointSet>) -> Result<Self, FormulaError> {
        for (variable, set) in &valuation {
            if !space.is_open(set) {
                return Err(FormulaError::NotOpen {
                    variable: variable.clone(),
                    set: space.show_set(set),
                });
            }
        }
        Ok(Model { space, valuation })
    }

    /// Valuation given by point names.
    pub fn from_names<S: AsRef<str>>(
        space: &'a RelationalSpace,
        valuation: &BTreeMap<String, Vec<S>>,
    ) -> Result<Self, FormulaError> {
        let mut sets = BTreeMap::new();
        for (variable, names) in valuation {
            let points = names
                .iter()
                .map(|n| space.point_index(n.as_ref()))
                .collect::<Result<Vec<_>, _>>()?;
            sets.insert(variable.clone(), space.set_of(points));
        }
        Model::new(space, sets)
    }

    /// The valuation as elements of `Ω(X)`.
    pub fn frame_valuation(&self) -> BTreeMap<String, Elem> {
        self.valuation
            .iter()
            .map(|(v, s)| (v.clone(), self.space.open_position(s).expect("valuations are open")))
            .collect()
    }
}

/// The open set where `formula` holds.
pub fn evaluate(model: &Model, formula: &Formula) -> Result<PointSet, FormulaError> {
    let x = model.space;
    Ok(match formula {
        Formula::Var(v) => model
            .valuation
            .get(v)
            .cloned()
            .ok_or_else(|| FormulaError::UndeclaredVariable(v.clone()))?,
        Formula::Top => x.full_set(),
        Formula::Bot => x.empty_set(),
        Formula::And(a, b) => {
            let mut s = evaluate(model, a)?;
            s.intersect_with(&evaluate(model, b)?);
            s
        }
        Formula::Or(a, b) => {
            let mut s = evaluate(model, a)?;
            s.union_with(&evaluate(model, b)?);
            s
        }
        Formula::Imp(a, b) => {
            let mut s = evaluate(model, a)?;
            s.toggle_range(..);
            s.union_with(&evaluate(model, b)?);
            x.interior(&s)
        }
        Formula::Box(a) => x.interior(&x.box_class(&evaluate(model, a)?)),
        Formula::Dia(a) => x.interior(&x.dia_class(&evaluate(model, a)?)),
    })
}

pub fn satisfies(model: &Model, point: &str, formula: &Formula) -> Result<bool, FormulaError> {
    let x = model.space.point_index(point)?;
    Ok(evaluate(model, formula)?.contains(x))
}

/// Algebraic evaluation in a frame, with Heyting implication `a → b = ⋁{c | c ∧ a ≤ b}`.
pub fn evaluate_in_frame(
    frame: &ModalFrame,
    valuation: &BTreeMap<String, Elem>,
    formula: &Formula,
) -> Result<Elem, FormulaError> {
    let l = &frame.lattice;
    let ev = |f: &Formula| evaluate_in_frame(frame, valuation, f);
    Ok(match formula {
        Formula::Var(v) => *valuation.get(v).ok_or_else(|| FormulaError::UndeclaredVariable(v.clone()))?,
        Formula::Top => l.top(),
        Formula::Bot => l.bottom(),
        Formula::And(a, b) => l.meet(ev(a)?, ev(b)?),
        Formula::Or(a, b) => l.join(ev(a)?, ev(b)?),
        Formula::Imp(a, b) => {
            let (a, b) = (ev(a)?, ev(b)?);
            l.join_where(|c| l.leq(l.meet(c, a), b))
        }
        Formula::Box(a) => frame.box_of(ev(a)?),
        Formula::Dia(a) => frame.dia_of(ev(a)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::omega::omega_space;

    fn s1() -> RelationalSpace {
        RelationalSpace::new(
            &["x", "y"],
            &[vec![], vec!["y"], vec!["x", "y"]],
            &[("x", "y"), ("y", "y")],
        )
        .unwrap()
    }

    fn model(x: &RelationalSpace) -> Model<'_> {
        let v: BTreeMap<String, Vec<&str>> = [("p".to_string(), vec!["y"])].into();
        Model::from_names(x, &v).unwrap()
    }

    #[test]
    fn s1_examples() {
        let x = s1();
        let m = model(&x);
        assert_eq!(evaluate(&m, &parse("box p").unwrap()).unwrap(), x.full_set());
        assert_eq!(evaluate(&m, &parse("dia false").unwrap()).unwrap(), x.empty_set());
        assert_eq!(evaluate(&m, &parse("box true").unwrap()).unwrap(), x.full_set());
        assert!(satisfies(&m, "x", &parse("box p").unwrap()).unwrap());
        assert!(satisfies(&m, "y", &Formula::Top).unwrap());
        assert!(!satisfies(&m, "y", &Formula::Bot).unwrap());
        assert!(!satisfies(&m, "x", &parse("p").unwrap()).unwrap());
    }

    #[test]
    fn implication_is_heyting() {
        let x = s1();
        let m = model(&x);
        // ¬p = int({x}) = ∅, so p → false is empty while ¬¬p is everything.
        assert_eq!(evaluate(&m, &parse("p -> false").unwrap()).unwrap(), x.empty_set());
        assert_eq!(evaluate(&m, &parse("(p -> false) -> false").unwrap()).unwrap(), x.full_set());
        assert_eq!(evaluate(&m, &parse("p -> p").unwrap()).unwrap(), x.full_set());
    }

    #[test]
    fn errors() {
        let x = s1();
        let m = model(&x);
        assert_eq!(evaluate(&m, &parse("q").unwrap()), Err(FormulaError::UndeclaredVariable("q".into())));
        assert_eq!(satisfies(&m, "z", &Formula::Top), Err(FormulaError::UnknownPoint("z".into())));
        let v: BTreeMap<String, Vec<&str>> = [("p".to_string(), vec!["x"])].into();
        assert!(matches!(Model::from_names(&x, &v), Err(FormulaError::NotOpen { .. })));
    }

    #[test]
    fn frame_side_agrees() {
        let x = s1();
        let m = model(&x);
        let frame = omega_space(&x);
        let fv = m.frame_valuation();
        for text in ["box p", "dia p -> p", "box dia (p | false)", "dia box p & (p -> box p)"] {
            let f = parse(text).unwrap();
            let open = evaluate(&m, &f).unwrap();
            let e = evaluate_in_frame(&frame, &fv, &f).unwrap();
            assert_eq!(x.opens()[e], open, "{text}");
        }
    }
}
