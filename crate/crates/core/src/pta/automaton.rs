use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::constraint::{
    constraint_sat, Bound, ClockConstraint, ClockValuation, ParameterValuation, Relation,
};
use super::feasibility::constraint_feasible;
use super::PtaError;
use crate::rational::Rational;
use crate::time::{Event, Symbol, TimedWord};

/// `(source, symbol, guard, resets, target)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub source: String,
    pub symbol: Symbol,
    pub guard: ClockConstraint,
    pub resets: BTreeSet<String>,
    pub target: String,
}

impl Edge {
    pub fn new(
        source: impl Into<String>,
        symbol: impl Into<Symbol>,
        guard: ClockConstraint,
        resets: impl IntoIterator<Item = impl Into<String>>,
        target: impl Into<String>,
    ) -> Self {
        Edge {
            source: source.into(),
            symbol: symbol.into(),
            guard,
            resets: resets.into_iter().map(Into::into).collect(),
            target: target.into(),
        }
    }
}

/// The components of a parametric timed automaton, before validation.
#[derive(Debug, Clone, Default)]
pub struct PtaSpec {
    pub alphabet: Vec<Symbol>,
    pub locations: Vec<String>,
    pub initial: Vec<String>,
    pub clocks: Vec<String>,
    pub params: Vec<String>,
    pub edges: Vec<Edge>,
    pub finals: Vec<String>,
}

/// Guard atom with names resolved to indices.
#[derive(Debug, Clone)]
struct IndexedAtom {
    clock: usize,
    relation: Relation,
    bound: IndexedBound,
}

#[derive(Debug, Clone)]
enum IndexedBound {
    Const(Rational),
    Param(usize),
}

#[derive(Debug, Clone)]
struct IndexedEdge {
    target: usize,
    guard: Vec<IndexedAtom>,
    resets: Vec<usize>,
}

/// A parametric timed automaton `(Σ, 𝓛, 𝓛₀, 𝓧, 𝓟, E, 𝓛_F)`.
#[derive(Debug, Clone, Serialize)]
pub struct Pta {
    alphabet: BTreeSet<Symbol>,
    locations: Vec<String>,
    initial: BTreeSet<String>,
    clocks: Vec<String>,
    params: Vec<String>,
    edges: Vec<Edge>,
    finals: BTreeSet<String>,
    #[serde(skip)]
    index: Index,
}

#[derive(Debug, Clone, Default)]
struct Index {
    /// outgoing edges by (source location, symbol)
    outgoing: BTreeMap<(usize, Symbol), Vec<IndexedEdge>>,
    initial: Vec<usize>,
    finals: Vec<bool>,
}

/// A global state `(l, ν)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GlobalState {
    pub location: String,
    pub clocks: ClockValuation,
}

/// A `ρ`-run: an initial global state followed by `(symbol, delay, successor)`
/// steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PtaRun {
    pub start: GlobalState,
    pub steps: Vec<(Symbol, Rational, GlobalState)>,
}

impl PtaRun {
    /// The associated timed word `(a1, δ1)(a2, δ1+δ2)…`. `None` for a run
    /// without steps, since timed words are non-empty.
    pub fn word(&self) -> Option<TimedWord> {
        let mut t = Rational::zero();
        let events: Vec<Event> = self
            .steps
            .iter()
            .map(|(a, d, _)| {
                t += d;
                Event::new(a.clone(), t.clone())
            })
            .collect();
        TimedWord::new(events).ok()
    }

    pub fn last_state(&self) -> &GlobalState {
        self.steps.last().map_or(&self.start, |(_, _, s)| s)
    }
}

/// Clock state along a fixed word: for each clock the timestamp of its last
/// reset (time 0 before any reset).
pub(crate) type ResetState = (usize, Vec<Rational>);

impl Pta {
    pub fn new(spec: PtaSpec) -> Result<Self, PtaError> {
        let PtaSpec {
            alphabet,
            locations,
            initial,
            clocks,
            params,
            edges,
            finals,
        } = spec;
        let alphabet: BTreeSet<Symbol> = alphabet.into_iter().collect();
        let mut location = BTreeMap::new();
        for (k, l) in locations.iter().enumerate() {
            if location.insert(l.clone(), k).is_some() {
                return Err(PtaError::Duplicate {
                    kind: "location",
                    name: l.clone(),
                });
            }
        }
        let clock_ix: BTreeMap<&str, usize> =
            clocks.iter().enumerate().map(|(k, c)| (c.as_str(), k)).collect();
        let param_ix: BTreeMap<&str, usize> =
            params.iter().enumerate().map(|(k, p)| (p.as_str(), k)).collect();
        if clock_ix.len() != clocks.len() {
            return Err(PtaError::Duplicate {
                kind: "clock",
                name: clocks.join(" "),
            });
        }
        if param_ix.len() != params.len() {
            return Err(PtaError::Duplicate {
                kind: "parameter",
                name: params.join(" "),
            });
        }
        let undeclared = |kind: &'static str, name: &str| PtaError::Undeclared {
            kind,
            name: name.to_string(),
        };
        let loc = |name: &str| location.get(name).copied().ok_or_else(|| undeclared("location", name));

        let initial: BTreeSet<String> = initial.into_iter().collect();
        let finals: BTreeSet<String> = finals.into_iter().collect();
        let initial_ix = initial.iter().map(|l| loc(l)).collect::<Result<Vec<_>, _>>()?;
        let mut final_flags = vec![false; locations.len()];
        for l in &finals {
            final_flags[loc(l)?] = true;
        }

        let mut edge_set = BTreeSet::new();
        let mut outgoing: BTreeMap<(usize, Symbol), Vec<IndexedEdge>> = BTreeMap::new();
        for e in &edges {
            if !edge_set.insert(e.clone()) {
                continue;
            }
            let source = loc(&e.source)?;
            let target = loc(&e.target)?;
            if !alphabet.contains(&e.symbol) {
                return Err(undeclared("symbol", e.symbol.as_str()));
            }
            let guard = e
                .guard
                .atoms()
                .iter()
                .map(|a| {
                    let clock = *clock_ix.get(a.clock.as_str()).ok_or_else(|| undeclared("clock", &a.clock))?;
                    let bound = match &a.bound {
                        Bound::Const(c) => IndexedBound::Const(Rational::from(*c)),
                        Bound::Param(p) => IndexedBound::Param(
                            *param_ix.get(p.as_str()).ok_or_else(|| undeclared("parameter", p))?,
                        ),
                    };
                    Ok(IndexedAtom {
                        clock,
                        relation: a.relation,
                        bound,
                    })
                })
                .collect::<Result<Vec<_>, PtaError>>()?;
            let resets = e
                .resets
                .iter()
                .map(|c| clock_ix.get(c.as_str()).copied().ok_or_else(|| undeclared("clock", c)))
                .collect::<Result<Vec<_>, _>>()?;
            outgoing
                .entry((source, e.symbol.clone()))
                .or_default()
                .push(IndexedEdge {
                    target,
                    guard,
                    resets,
                });
        }
        let index = Index {
            outgoing,
            initial: initial_ix,
            finals: final_flags,
        };
        Ok(Pta {
            alphabet,
            locations,
            initial,
            clocks,
            params,
            edges: edge_set.into_iter().collect(),
            finals,
            index,
        })
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn locations(&self) -> &[String] {
        &self.locations
    }

    pub fn initial(&self) -> &BTreeSet<String> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<String> {
        &self.finals
    }

    pub fn clocks(&self) -> &[String] {
        &self.clocks
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Edges, deduplicated and sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// A copy of the automaton without the given edge.
    pub fn without_edge(&self, edge: &Edge) -> Pta {
        let spec = PtaSpec {
            alphabet: self.alphabet.iter().cloned().collect(),
            locations: self.locations.clone(),
            initial: self.initial.iter().cloned().collect(),
            clocks: self.clocks.clone(),
            params: self.params.clone(),
            edges: self.edges.iter().filter(|e| *e != edge).cloned().collect(),
            finals: self.finals.iter().cloned().collect(),
        };
        Pta::new(spec).expect("removing an edge keeps the automaton well formed")
    }

    /// Parameter values by index; fails when `rho` misses a parameter.
    pub(crate) fn param_vector(&self, rho: &ParameterValuation) -> Result<Vec<Rational>, PtaError> {
        self.params.iter().map(|p| rho.lookup(p).cloned()).collect()
    }

    pub(crate) fn is_final_index(&self, loc: usize) -> bool {
        self.index.finals[loc]
    }

    pub(crate) fn initial_reset_states(&self) -> Vec<ResetState> {
        self.index
            .initial
            .iter()
            .map(|&l| (l, vec![Rational::zero(); self.clocks.len()]))
            .collect()
    }

    /// Successors of a reset-time state on event `(symbol, time)`.
    pub(crate) fn successors_at(
        &self,
        params: &[Rational],
        state: &ResetState,
        symbol: &Symbol,
        time: &Rational,
        out: &mut BTreeSet<ResetState>,
    ) {
        let (loc, resets) = state;
        let Some(edges) = self.index.outgoing.get(&(*loc, symbol.clone())) else {
            return;
        };
        for e in edges {
            let enabled = e.guard.iter().all(|a| {
                let value = time - &resets[a.clock];
                match &a.bound {
                    IndexedBound::Const(c) => a.relation.holds(&value, c),
                    IndexedBound::Param(p) => a.relation.holds(&value, &params[*p]),
                }
            });
            if enabled {
                let mut next = resets.clone();
                for &c in &e.resets {
                    next[c] = time.clone();
                }
                out.insert((e.target, next));
            }
        }
    }

    /// All `(l', ν')` with `⟨s, (a, δ), (l', ν')⟩ ∈ τ_ρ`.
    pub fn step(
        &self,
        rho: &ParameterValuation,
        state: &GlobalState,
        symbol: &Symbol,
        delay: &Rational,
    ) -> Result<BTreeSet<GlobalState>, PtaError> {
        if delay.is_negative() {
            return Err(PtaError::NegativeValue {
                name: "delay".to_string(),
                value: delay.clone(),
            });
        }
        let advanced = state.clocks.delayed(delay);
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if e.source == state.location
                && e.symbol == *symbol
                && constraint_sat(&advanced, rho, &e.guard)?
            {
                out.insert(GlobalState {
                    location: e.target.clone(),
                    clocks: advanced.reset(&e.resets),
                });
            }
        }
        Ok(out)
    }

    /// Initial global states: each initial location with all clocks at zero.
    pub fn initial_states(&self) -> Vec<GlobalState> {
        self.initial
            .iter()
            .map(|l| GlobalState {
                location: l.clone(),
                clocks: ClockValuation::zero(&self.clocks),
            })
            .collect()
    }

    /// Checks that consecutive states of `run` are related by `τ_ρ` and
    /// whether it is successful.
    pub fn is_successful_run(&self, rho: &ParameterValuation, run: &PtaRun) -> Result<bool, PtaError> {
        if !self.initial_states().contains(&run.start) {
            return Ok(false);
        }
        let mut current = &run.start;
        for (a, d, next) in &run.steps {
            if !self.step(rho, current, a, d)?.contains(next) {
                return Ok(false);
            }
            current = next;
        }
        Ok(self.finals.contains(&current.location))
    }

    /// Frontier sizes after each prefix of `w`; the last frontier decides
    /// membership.
    pub fn frontier_trace(
        &self,
        rho: &ParameterValuation,
        w: &TimedWord,
    ) -> Result<Vec<BTreeSet<ResetState>>, PtaError> {
        let params = self.param_vector(rho)?;
        let mut frontier: BTreeSet<ResetState> = self.initial_reset_states().into_iter().collect();
        let mut trace = vec![frontier.clone()];
        for e in w.events() {
            let mut next = BTreeSet::new();
            for s in &frontier {
                self.successors_at(&params, s, &e.symbol, &e.time, &mut next);
            }
            frontier = next;
            trace.push(frontier.clone());
            if frontier.is_empty() {
                break;
            }
        }
        Ok(trace)
    }

    /// `w ∈ L_ρ(A)`.
    pub fn membership(&self, rho: &ParameterValuation, w: &TimedWord) -> Result<bool, PtaError> {
        let trace = self.frontier_trace(rho, w)?;
        if trace.len() != w.len() + 1 {
            return Ok(false);
        }
        Ok(trace[w.len()].iter().any(|(l, _)| self.is_final_index(*l)))
    }

    /// A successful `ρ`-run associated with `w`, if any.
    pub fn accepting_run(&self, rho: &ParameterValuation, w: &TimedWord) -> Result<Option<PtaRun>, PtaError> {
        fn search(
            pta: &Pta,
            rho: &ParameterValuation,
            events: &[Event],
            now: &Rational,
            state: &GlobalState,
            steps: &mut Vec<(Symbol, Rational, GlobalState)>,
        ) -> Result<bool, PtaError> {
            let Some((e, rest)) = events.split_first() else {
                return Ok(pta.finals.contains(&state.location));
            };
            let delay = &e.time - now;
            for next in pta.step(rho, state, &e.symbol, &delay)? {
                steps.push((e.symbol.clone(), delay.clone(), next.clone()));
                if search(pta, rho, rest, &e.time, &next, steps)? {
                    return Ok(true);
                }
                steps.pop();
            }
            Ok(false)
        }
        for start in self.initial_states() {
            let mut steps = Vec::new();
            if search(self, rho, w.events(), &Rational::zero(), &start, &mut steps)? {
                return Ok(Some(PtaRun { start, steps }));
            }
        }
        Ok(None)
    }

    /// A single initial location, and no two distinct edges with the same
    /// source and symbol whose guards are jointly satisfiable.
    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() != 1 {
            return false;
        }
        let mut groups: BTreeMap<(&str, &Symbol), Vec<&Edge>> = BTreeMap::new();
        for e in &self.edges {
            groups.entry((&e.source, &e.symbol)).or_default().push(e);
        }
        groups.values().all(|group| {
            group.iter().enumerate().all(|(i, e1)| {
                group[i + 1..]
                    .iter()
                    .all(|e2| !constraint_feasible(&e1.guard.conjoin(&e2.guard)))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pta::constraint::GuardAtom;
    use crate::pta::samples::{cadence_automaton, cadence_automaton_deterministic};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn rho(v: Rational) -> ParameterValuation {
        ParameterValuation::new().with("p", v).unwrap()
    }

    fn state(loc: &str, x: Rational, y: Rational) -> GlobalState {
        GlobalState {
            location: loc.to_string(),
            clocks: ClockValuation::new().with("x", x).unwrap().with("y", y).unwrap(),
        }
    }

    fn word(pairs: &[(&str, Rational)]) -> TimedWord {
        TimedWord::from_pairs(pairs.iter().map(|(s, t)| (*s, t.clone()))).unwrap()
    }

    #[test]
    fn loop_fires_at_parameter() {
        let a = cadence_automaton();
        let s = state("1", r(0, 1), r(0, 1));
        let out = a.step(&rho(r(1, 2)), &s, &Symbol::from("a"), &r(1, 2)).unwrap();
        assert_eq!(out, BTreeSet::from([state("1", r(0, 1), r(1, 2))]));
    }

    #[test]
    fn nothing_fires_off_parameter() {
        let a = cadence_automaton();
        let s = state("1", r(0, 1), r(0, 1));
        assert!(a.step(&rho(r(1, 2)), &s, &Symbol::from("a"), &r(1, 4)).unwrap().is_empty());
    }

    #[test]
    fn nondeterministic_step() {
        let a = cadence_automaton();
        let s = state("1", r(0, 1), r(0, 1));
        let out = a.step(&rho(r(1, 1)), &s, &Symbol::from("a"), &r(1, 1)).unwrap();
        assert_eq!(
            out,
            BTreeSet::from([state("1", r(0, 1), r(1, 1)), state("2", r(0, 1), r(0, 1))])
        );
    }

    #[test]
    fn run_word_is_prefix_sums() {
        let s = state("1", r(0, 1), r(0, 1));
        let run = PtaRun {
            start: s.clone(),
            steps: vec![("a".into(), r(1, 1), s.clone()), ("b".into(), r(1, 2), s.clone())],
        };
        assert_eq!(run.word().unwrap(), word(&[("a", r(1, 1)), ("b", r(3, 2))]));
        let single = PtaRun {
            start: s.clone(),
            steps: vec![("a".into(), r(0, 1), s)],
        };
        assert_eq!(single.word().unwrap(), word(&[("a", r(0, 1))]));
    }

    #[test]
    fn cadence_accepting_run_word() {
        let a = cadence_automaton();
        let w = word(&[("a", r(1, 2)), ("a", r(1, 1)), ("b", r(3, 2)), ("b", r(2, 1))]);
        let run = a.accepting_run(&rho(r(1, 2)), &w).unwrap().expect("accepted");
        assert_eq!(run.word().unwrap(), w);
        assert!(a.is_successful_run(&rho(r(1, 2)), &run).unwrap());
    }

    #[test]
    fn cadence_membership() {
        let a = cadence_automaton();
        let half = rho(r(1, 2));
        let w = word(&[("a", r(1, 2)), ("a", r(1, 1)), ("b", r(3, 2)), ("b", r(2, 1))]);
        assert!(a.membership(&half, &w).unwrap());
        let w = word(&[("a", r(1, 2)), ("a", r(1, 1)), ("b", r(3, 2))]);
        assert!(!a.membership(&half, &w).unwrap());
        let w = word(&[("a", r(2, 3)), ("a", r(4, 3)), ("b", r(2, 1)), ("b", r(8, 3))]);
        assert!(!a.membership(&rho(r(2, 3)), &w).unwrap());
    }

    #[test]
    fn determinism_of_cadence_automaton() {
        assert!(!cadence_automaton().is_deterministic());
        assert!(cadence_automaton_deterministic().is_deterministic());
    }

    #[test]
    fn two_initial_locations_are_nondeterministic() {
        let a = Pta::new(PtaSpec {
            alphabet: vec!["a".into()],
            locations: vec!["1".into(), "2".into()],
            initial: vec!["1".into(), "2".into()],
            ..Default::default()
        })
        .unwrap();
        assert!(!a.is_deterministic());
    }

    #[test]
    fn rejects_undeclared_names() {
        let bad_clock = PtaSpec {
            alphabet: vec!["a".into()],
            locations: vec!["1".into()],
            initial: vec!["1".into()],
            edges: vec![Edge::new(
                "1",
                "a",
                ClockConstraint::new([GuardAtom::constant("z", Relation::Lt, 1)]),
                Vec::<String>::new(),
                "1",
            )],
            ..Default::default()
        };
        assert!(matches!(Pta::new(bad_clock), Err(PtaError::Undeclared { kind: "clock", .. })));
        let bad_final = PtaSpec {
            alphabet: vec!["a".into()],
            locations: vec!["1".into()],
            initial: vec!["1".into()],
            finals: vec!["9".into()],
            ..Default::default()
        };
        assert!(matches!(Pta::new(bad_final), Err(PtaError::Undeclared { kind: "location", .. })));
    }

    #[test]
    fn empty_language_without_edges() {
        let a = Pta::new(PtaSpec {
            alphabet: vec!["a".into()],
            locations: vec!["1".into(), "2".into()],
            initial: vec!["1".into()],
            finals: vec!["2".into()],
            ..Default::default()
        })
        .unwrap();
        assert!(!a.membership(&ParameterValuation::new(), &word(&[("a", r(0, 1))])).unwrap());
    }
}
