//! Exhaustive exploration of accepted words whose timestamps lie on a grid.

use std::collections::BTreeSet;

use super::automaton::{Pta, ResetState};
use super::constraint::ParameterValuation;
use super::PtaError;
use crate::rational::Rational;
use crate::time::{Event, Symbol, TimedWord};

/// Timestamps range over `{0, g, 2g, …} ∩ [0, horizon]`; words have at most
/// `max_events` events. `node_limit` caps the number of visited prefixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridBounds {
    pub grid: Rational,
    pub horizon: Rational,
    pub max_events: usize,
    pub node_limit: usize,
}

impl GridBounds {
    pub const DEFAULT_NODE_LIMIT: usize = 20_000_000;

    pub fn new(grid: Rational, horizon: Rational, max_events: usize) -> Self {
        GridBounds {
            grid,
            horizon,
            max_events,
            node_limit: Self::DEFAULT_NODE_LIMIT,
        }
    }

    pub fn with_node_limit(mut self, limit: usize) -> Self {
        self.node_limit = limit;
        self
    }

    fn ticks(&self) -> Result<Vec<Rational>, EnumerationError> {
        if !self.grid.is_positive() {
            return Err(EnumerationError::NonPositiveGrid(self.grid.clone()));
        }
        let mut out = Vec::new();
        let mut t = Rational::zero();
        while t <= self.horizon {
            out.push(t.clone());
            t += &self.grid;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("grid must be positive, got {0}")]
    NonPositiveGrid(Rational),
    #[error("node limit reached after {nodes} prefixes ({} accepted words so far)", partial.len())]
    Limit {
        partial: BTreeSet<TimedWord>,
        nodes: usize,
    },
    #[error(transparent)]
    Pta(#[from] PtaError),
}

/// What to do after visiting a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    /// Do not extend this prefix.
    Prune,
    /// Abandon the whole exploration.
    Stop,
}

/// How an exploration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exploration {
    Completed { nodes: usize },
    Stopped { nodes: usize },
    LimitReached { nodes: usize },
}

struct Explorer<'a, F> {
    pta: &'a Pta,
    params: Vec<Rational>,
    symbols: Vec<Symbol>,
    ticks: Vec<Rational>,
    max_events: usize,
    node_limit: usize,
    nodes: usize,
    visit: F,
}

enum Halt {
    Stop,
    Limit,
}

impl<F: FnMut(&[Event], bool) -> Control> Explorer<'_, F> {
    fn dfs(
        &mut self,
        prefix: &mut Vec<Event>,
        first_tick: usize,
        frontier: &BTreeSet<ResetState>,
    ) -> Result<(), Halt> {
        if prefix.len() == self.max_events {
            return Ok(());
        }
        for k in first_tick..self.ticks.len() {
            for s in 0..self.symbols.len() {
                let mut next = BTreeSet::new();
                let time = &self.ticks[k];
                for st in frontier {
                    self.pta
                        .successors_at(&self.params, st, &self.symbols[s], time, &mut next);
                }
                if next.is_empty() {
                    continue;
                }
                if self.nodes == self.node_limit {
                    return Err(Halt::Limit);
                }
                self.nodes += 1;
                let accepted = next.iter().any(|(l, _)| self.pta.is_final_index(*l));
                prefix.push(Event::new(self.symbols[s].clone(), time.clone()));
                let control = (self.visit)(prefix, accepted);
                let result = match control {
                    Control::Continue => self.dfs(prefix, k, &next),
                    Control::Prune => Ok(()),
                    Control::Stop => Err(Halt::Stop),
                };
                prefix.pop();
                result?;
            }
        }
        Ok(())
    }
}

/// Depth-first walk over every grid word that has at least one run of `pta`
/// under `rho`. `visit` sees each such prefix once, with a flag telling
/// whether the prefix itself is accepted.
pub fn explore(
    pta: &Pta,
    rho: &ParameterValuation,
    bounds: &GridBounds,
    visit: impl FnMut(&[Event], bool) -> Control,
) -> Result<Exploration, EnumerationError> {
    let ticks = bounds.ticks()?;
    let mut ex = Explorer {
        pta,
        params: pta.param_vector(rho)?,
        symbols: pta.alphabet().iter().cloned().collect(),
        ticks,
        max_events: bounds.max_events,
        node_limit: bounds.node_limit,
        nodes: 0,
        visit,
    };
    let start: BTreeSet<ResetState> = pta.initial_reset_states().into_iter().collect();
    let result = ex.dfs(&mut Vec::new(), 0, &start);
    let nodes = ex.nodes;
    Ok(match result {
        Ok(()) => Exploration::Completed { nodes },
        Err(Halt::Stop) => Exploration::Stopped { nodes },
        Err(Halt::Limit) => Exploration::LimitReached { nodes },
    })
}

/// Every word of `L_ρ(A)` with timestamps on the grid, within the bounds.
pub fn enumerate_accepted(
    pta: &Pta,
    rho: &ParameterValuation,
    bounds: &GridBounds,
) -> Result<BTreeSet<TimedWord>, EnumerationError> {
    let mut found = BTreeSet::new();
    let outcome = explore(pta, rho, bounds, |prefix, accepted| {
        if accepted {
            found.insert(TimedWord::new(prefix.to_vec()).expect("grid prefixes are ordered"));
        }
        Control::Continue
    })?;
    match outcome {
        Exploration::LimitReached { nodes } => Err(EnumerationError::Limit {
            partial: found,
            nodes,
        }),
        _ => Ok(found),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pta::samples::cadence_automaton;
    use crate::pta::{Pta, PtaSpec};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn rho(v: Rational) -> ParameterValuation {
        ParameterValuation::new().with("p", v).unwrap()
    }

    #[test]
    fn cadence_half_has_one_word() {
        let got = enumerate_accepted(
            &cadence_automaton(),
            &rho(r(1, 2)),
            &GridBounds::new(r(1, 2), r(2, 1), 4),
        )
        .unwrap();
        let expected = TimedWord::from_pairs([
            ("a", r(1, 2)),
            ("a", r(1, 1)),
            ("b", r(3, 2)),
            ("b", r(2, 1)),
        ])
        .unwrap();
        assert_eq!(got, BTreeSet::from([expected]));
    }

    #[test]
    fn cadence_two_thirds_is_empty() {
        let got = enumerate_accepted(
            &cadence_automaton(),
            &rho(r(2, 3)),
            &GridBounds::new(r(1, 3), r(4, 1), 6),
        )
        .unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn no_edges_no_words() {
        let a = Pta::new(PtaSpec {
            alphabet: vec!["a".into()],
            locations: vec!["1".into(), "2".into()],
            initial: vec!["1".into()],
            finals: vec!["2".into()],
            ..Default::default()
        })
        .unwrap();
        let got = enumerate_accepted(&a, &ParameterValuation::new(), &GridBounds::new(r(1, 1), r(3, 1), 5));
        assert_eq!(got.unwrap(), BTreeSet::new());
    }

    #[test]
    fn zero_grid_rejected() {
        let got = enumerate_accepted(
            &cadence_automaton(),
            &rho(r(1, 2)),
            &GridBounds::new(r(0, 1), r(2, 1), 4),
        );
        assert!(matches!(got, Err(EnumerationError::NonPositiveGrid(_))));
    }

    #[test]
    fn node_limit_reports_partial() {
        let got = enumerate_accepted(
            &cadence_automaton(),
            &rho(r(1, 2)),
            &GridBounds::new(r(1, 2), r(2, 1), 4).with_node_limit(2),
        );
        assert!(matches!(got, Err(EnumerationError::Limit { nodes: 2, .. })));
    }

    #[test]
    fn missing_parameter_is_an_error() {
        let got = enumerate_accepted(
            &cadence_automaton(),
            &ParameterValuation::new(),
            &GridBounds::new(r(1, 2), r(2, 1), 4),
        );
        assert!(matches!(got, Err(EnumerationError::Pta(PtaError::Undeclared { .. }))));
    }
}
