use crate::channel::ChannelMachine;
use crate::encoding::{EncodingAlphabet, HASH, STAR};
use crate::pta::{ClockConstraint, Edge, GuardAtom, Pta, PtaSpec, Relation};
use crate::time::Symbol;

use super::ReductionError;

/// The clock of `A_C`.
pub const CLOCK: &str = "x";
/// The parameter of `A_C`.
pub const PARAM: &str = "p";

/// The five-location automaton that reads the initial state, a run of
/// hashes and the first label at cadence `p`, anything up to the target
/// state, and then the last block and `*` at cadence `p` again.
pub fn build_automaton(machine: &ChannelMachine, target: &str) -> Result<Pta, ReductionError> {
    if !machine.has_state(target) {
        return Err(ReductionError::UnknownTarget(target.to_string()));
    }
    let sigma = EncodingAlphabet::new(machine)?.symbols();
    let x_eq_p = || ClockConstraint::new([GuardAtom::param(CLOCK, Relation::Eq, PARAM)]);
    let none = Vec::<String>::new;
    let mut edges = vec![
        Edge::new("1", machine.initial(), ClockConstraint::trivial(), [CLOCK], "2"),
        Edge::new("2", HASH, x_eq_p(), [CLOCK], "2"),
    ];
    for l in machine.labels() {
        edges.push(Edge::new("2", l.symbol(), x_eq_p(), none(), "3"));
    }
    for s in sigma.iter().filter(|s| s.as_str() != target) {
        edges.push(Edge::new("3", s.clone(), ClockConstraint::trivial(), none(), "3"));
    }
    edges.push(Edge::new("3", target, ClockConstraint::trivial(), [CLOCK], "4"));
    for m in machine.messages().iter().cloned().chain([Symbol::from(HASH)]) {
        edges.push(Edge::new("4", m, x_eq_p(), [CLOCK], "4"));
    }
    edges.push(Edge::new("4", STAR, x_eq_p(), none(), "5"));
    let pta = Pta::new(PtaSpec {
        alphabet: sigma.into_iter().collect(),
        locations: (1..=5).map(|k| k.to_string()).collect(),
        initial: vec!["1".into()],
        clocks: vec![CLOCK.into()],
        params: vec![PARAM.into()],
        edges,
        finals: vec!["5".into()],
    })?;
    Ok(pta)
}
