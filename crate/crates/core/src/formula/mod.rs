//! Propositional modal formulas: syntax, open-set semantics and functional bisimulation checks.

mod bisim;
mod eval;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use bisim::{bisim_invariance_check, BisimCounterexample, BisimOptions, BisimVerdict};
pub use eval::{evaluate, evaluate_in_frame, satisfies, FormulaError, Model};
pub use parse::{parse, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(name.to_string())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn boxed(a: Formula) -> Self {
        Formula::Box(Box::new(a))
    }

    pub fn dia(a: Formula) -> Self {
        Formula::Dia(Box::new(a))
    }

    /// Nesting depth of connectives and modalities; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Box(a) | Formula::Dia(a) => 1 + a.depth(),
        }
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Var(v) => {
                out.insert(v);
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Box(a) | Formula::Dia(a) => a.collect_vars(out),
        }
    }

    pub fn uses_implication(&self) -> bool {
        match self {
            Formula::Imp(..) => true,
            Formula::Var(_) | Formula::Top | Formula::Bot => false,
            Formula::And(a, b) | Formula::Or(a, b) => a.uses_implication() || b.uses_implication(),
            Formula::Box(a) | Formula::Dia(a) => a.uses_implication(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }
}

/// Prints in the input grammar with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, sub: &Formula, min: u8| {
            if sub.precedence() < min {
                write!(f, "({sub})")
            } else {
                write!(f, "{sub}")
            }
        };
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Top => f.write_str("true"),
            Formula::Bot => f.write_str("false"),
            Formula::And(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(" & ")?;
                wrap(f, b, 3)
            }
            Formula::Or(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" | ")?;
                wrap(f, b, 2)
            }
            Formula::Imp(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" -> ")?;
                wrap(f, b, 0)
            }
            Formula::Box(a) => {
                f.write_str("box ")?;
                wrap(f, a, 3)
            }
            Formula::Dia(a) => {
                f.write_str("dia ")?;
                wrap(f, a, 3)
            }
        }
    }
}
