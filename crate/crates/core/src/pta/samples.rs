//! Small hand-written automata used by tests, docs and the CLI.

use super::automaton::{Edge, Pta, PtaSpec};
use super::constraint::{ClockConstraint, GuardAtom, Relation};

fn cadence(loop_guard_y: bool) -> Pta {
    let x_eq_p = GuardAtom::param("x", Relation::Eq, "p");
    let y_eq_1 = GuardAtom::constant("y", Relation::Eq, 1);
    let mut loop_guard = vec![x_eq_p.clone()];
    if loop_guard_y {
        loop_guard.push(GuardAtom::constant("y", Relation::Lt, 1));
    }
    let loop_guard = ClockConstraint::new(loop_guard);
    let exit_guard = ClockConstraint::new([x_eq_p, y_eq_1]);
    Pta::new(PtaSpec {
        alphabet: vec!["a".into(), "b".into()],
        locations: vec!["1".into(), "2".into(), "3".into()],
        initial: vec!["1".into()],
        clocks: vec!["x".into(), "y".into()],
        params: vec!["p".into()],
        edges: vec![
            Edge::new("1", "a", loop_guard.clone(), ["x"], "1"),
            Edge::new("1", "a", exit_guard.clone(), ["x", "y"], "2"),
            Edge::new("2", "b", loop_guard, ["x"], "2"),
            Edge::new("2", "b", exit_guard, Vec::<String>::new(), "3"),
        ],
        finals: vec!["3".into()],
    })
    .expect("sample automaton is well formed")
}

/// Reads `a` every `p` time units for one time unit, then `b` every `p` time
/// units for another. Under `ρ(p) = 1/n` it accepts exactly
/// `(a,1/n)…(a,1)(b,1+1/n)…(b,2)`; under any other valuation nothing.
pub fn cadence_automaton() -> Pta {
    cadence(false)
}

/// [`cadence_automaton`] with `y<1` on both loops, which makes it
/// deterministic without changing its language.
pub fn cadence_automaton_deterministic() -> Pta {
    cadence(true)
}
