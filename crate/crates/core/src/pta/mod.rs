//! Parametric timed automata.

mod automaton;
mod constraint;
mod enumerate;
mod feasibility;
pub mod samples;

pub use automaton::{Edge, GlobalState, Pta, PtaRun, PtaSpec};
pub use constraint::{
    constraint_sat, Bound, ClockConstraint, ClockValuation, GuardAtom, ParameterValuation,
    Relation,
};
pub use enumerate::{enumerate_accepted, explore, Control, EnumerationError, Exploration, GridBounds};
pub use feasibility::constraint_feasible;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PtaError {
    #[error("undeclared {kind} `{name}`")]
    Undeclared { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("negative value {value} for `{name}`")]
    NegativeValue { name: String, value: Rational },
}
