//! Metric temporal logic over finite timed words, pointwise semantics with
//! strict until.

mod eval;
mod formula;

pub use eval::{eval_at, satisfies, CompiledFormula, MtlError, Truth};
pub use formula::{Formula, Interval, IntervalError};
