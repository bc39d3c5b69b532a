//! Bounded search for a parameter valuation under which some accepted word
//! violates a formula.

use serde::Serialize;

use crate::mtl::{CompiledFormula, Formula, Truth};
use crate::pta::{explore, Control, EnumerationError, Exploration, GridBounds, ParameterValuation, Pta, PtaError};
use crate::rational::Rational;
use crate::time::TimedWord;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum McError {
    #[error("no candidate valuations")]
    NoCandidates,
    #[error("grid must be positive, got {0}")]
    NonPositiveGrid(Rational),
    #[error(transparent)]
    Pta(#[from] PtaError),
    /// A word found by the search failed exact re-verification.
    #[error("counterexample {word} failed re-verification")]
    Unverified { word: TimedWord },
}

/// Result for one candidate valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CandidateOutcome {
    /// `word` is accepted under the valuation and does not satisfy the formula.
    CounterexampleFound { word: TimedWord },
    /// Every accepted grid word within the bounds satisfies the formula.
    NoCounterexampleWithinBounds,
    /// The node limit cut the search short.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateResult {
    pub valuation: ParameterValuation,
    pub outcome: CandidateOutcome,
    pub nodes: usize,
}

/// Aggregate over all candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum McOutcome {
    /// The first candidate, in the given order, with a counterexample.
    CounterexampleFound { valuation: ParameterValuation, word: TimedWord },
    /// Some candidate has no counterexample within the bounds.
    NoCounterexampleWithinBounds { valuation: ParameterValuation },
    /// Every one of several candidates has a counterexample.
    AllCandidatesRefuted,
    /// No candidate was settled either way.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McVerdict {
    pub outcome: McOutcome,
    pub candidates: Vec<CandidateResult>,
    pub grid: Rational,
    pub horizon: Rational,
    pub max_events: usize,
}

/// `{p ↦ 1/k : 1 ≤ k ≤ max_k}` for every combination over `params`.
pub fn default_candidates(params: &[String], max_k: usize) -> Vec<ParameterValuation> {
    let mut out = vec![ParameterValuation::new()];
    for p in params {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max_k as i64).map(move |k| {
                    v.clone()
                        .with(p.clone(), Rational::new(1, k))
                        .expect("1/k is positive")
                })
            })
            .collect();
    }
    out
}

fn search_one(
    pta: &Pta,
    phi: &CompiledFormula,
    rho: &ParameterValuation,
    bounds: &GridBounds,
) -> Result<CandidateResult, McError> {
    let mut found = None;
    let exploration = explore(pta, rho, bounds, |prefix, accepted| {
        if accepted && !phi.satisfies(&TimedWord::new(prefix.to_vec()).expect("grid prefixes are ordered")) {
            found = Some(TimedWord::new(prefix.to_vec()).expect("grid prefixes are ordered"));
            return Control::Stop;
        }
        // once the formula holds on every extension there is nothing to find below
        if phi.eval_prefix(prefix) == Truth::True {
            Control::Prune
        } else {
            Control::Continue
        }
    })
    .map_err(|e| match e {
        EnumerationError::NonPositiveGrid(g) => McError::NonPositiveGrid(g),
        EnumerationError::Pta(e) => McError::Pta(e),
        EnumerationError::Limit { .. } => unreachable!("explore reports limits as an outcome"),
    })?;
    let (outcome, nodes) = match (found, exploration) {
        (Some(word), Exploration::Stopped { nodes }) => {
            if !pta.membership(rho, &word)? || phi.satisfies(&word) {
                return Err(McError::Unverified { word });
            }
            (CandidateOutcome::CounterexampleFound { word }, nodes)
        }
        (_, Exploration::LimitReached { nodes }) => (CandidateOutcome::Inconclusive, nodes),
        (_, Exploration::Completed { nodes } | Exploration::Stopped { nodes }) => {
            (CandidateOutcome::NoCounterexampleWithinBounds, nodes)
        }
    };
    Ok(CandidateResult {
        valuation: rho.clone(),
        outcome,
        nodes,
    })
}

/// Looks, for each candidate valuation in turn, for a grid word accepted by
/// `pta` that does not satisfy `formula`. Counterexamples are re-checked
/// exactly; their absence is only claimed within the bounds.
pub fn bounded_modelcheck(
    pta: &Pta,
    formula: &Formula,
    candidates: &[ParameterValuation],
    bounds: &GridBounds,
) -> Result<McVerdict, McError> {
    if candidates.is_empty() {
        return Err(McError::NoCandidates);
    }
    let phi = CompiledFormula::new(formula);
    let results = candidates
        .iter()
        .map(|rho| search_one(pta, &phi, rho, bounds))
        .collect::<Result<Vec<_>, _>>()?;
    let refuted = |r: &&CandidateResult| matches!(r.outcome, CandidateOutcome::CounterexampleFound { .. });
    let outcome = if let Some(r) = results
        .iter()
        .find(|r| r.outcome == CandidateOutcome::NoCounterexampleWithinBounds)
    {
        McOutcome::NoCounterexampleWithinBounds {
            valuation: r.valuation.clone(),
        }
    } else if results.len() > 1 && results.iter().all(|r| refuted(&r)) {
        McOutcome::AllCandidatesRefuted
    } else if let Some(r) = results.iter().find(refuted) {
        let CandidateOutcome::CounterexampleFound { word } = &r.outcome else {
            unreachable!()
        };
        McOutcome::CounterexampleFound {
            valuation: r.valuation.clone(),
            word: word.clone(),
        }
    } else {
        McOutcome::Inconclusive
    };
    Ok(McVerdict {
        outcome,
        candidates: results,
        grid: bounds.grid.clone(),
        horizon: bounds.horizon.clone(),
        max_events: bounds.max_events,
    })
}
