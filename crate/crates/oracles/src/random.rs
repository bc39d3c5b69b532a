//! Seeded generators of small random inputs.

use rand::seq::SliceRandom;
use rand::Rng;

use ptamtl::channel::{ChannelMachine, Label, Transition};
use ptamtl::mtl::{Formula, Interval};
use ptamtl::pta::{Bound, ClockConstraint, Edge, GuardAtom, Pta, PtaSpec, Relation};
use ptamtl::{Event, Rational, TimedWord};

pub fn interval(rng: &mut impl Rng) -> Interval {
    if rng.gen_bool(0.3) {
        return Interval::unbounded();
    }
    let lo = rng.gen_range(0..3u64);
    if rng.gen_bool(0.2) {
        return Interval::point(lo);
    }
    if rng.gen_bool(0.25) {
        return Interval::new(lo, None, rng.gen(), false).expect("valid");
    }
    let hi = lo + rng.gen_range(1..3u64);
    Interval::new(lo, Some(hi), rng.gen(), rng.gen()).expect("valid")
}

/// A formula of depth at most `depth` over `atoms`, using every operator.
pub fn formula(rng: &mut impl Rng, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(*atoms.choose(rng).expect("atoms")),
        };
    }
    let sub = |rng: &mut _| formula(rng, atoms, depth - 1);
    match rng.gen_range(0..8) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => Formula::until(interval(rng), sub(rng), sub(rng)),
        5 => Formula::next(interval(rng), sub(rng)),
        6 => Formula::eventually(interval(rng), sub(rng)),
        _ => Formula::globally(interval(rng), sub(rng)),
    }
}

/// A word of length `1..=max_len` whose delays are multiples of `1/denom`
/// up to `max_gap`, including zero delays.
pub fn word(rng: &mut impl Rng, symbols: &[&str], max_len: usize, denom: i64, max_gap: i64) -> TimedWord {
    let len = rng.gen_range(1..=max_len);
    let mut t = Rational::zero();
    let events = (0..len)
        .map(|_| {
            t = &t + &Rational::new(rng.gen_range(0..=max_gap * denom), denom);
            Event::new(*symbols.choose(rng).expect("symbols"), t.clone())
        })
        .collect();
    TimedWord::new(events).expect("non-decreasing")
}

/// A conjunction of `1..=max_atoms` guards over `clocks` and `params` with
/// constants up to 3.
pub fn constraint(rng: &mut impl Rng, clocks: &[&str], params: &[&str], max_atoms: usize) -> ClockConstraint {
    let rels = [Relation::Lt, Relation::Le, Relation::Eq, Relation::Ge, Relation::Gt];
    let n = rng.gen_range(1..=max_atoms);
    ClockConstraint::new((0..n).map(|_| {
        let bound = if rng.gen_bool(0.5) && !params.is_empty() {
            Bound::Param(params.choose(rng).expect("params").to_string())
        } else {
            Bound::Const(rng.gen_range(0..=3))
        };
        GuardAtom::new(*clocks.choose(rng).expect("clocks"), *rels.choose(rng).expect("rels"), bound)
    }))
}

/// A machine with states `s0..`, messages `m0..` and `transitions` random
/// transitions.
pub fn machine(rng: &mut impl Rng, states: usize, messages: usize, transitions: usize) -> ChannelMachine {
    let s: Vec<String> = (0..states).map(|k| format!("s{k}")).collect();
    let m: Vec<String> = (0..messages).map(|k| format!("m{k}")).collect();
    let ts: Vec<Transition> = (0..transitions)
        .map(|_| {
            let label = match rng.gen_range(0..5) {
                0 => Label::Eps,
                1 | 2 => Label::Send(m.choose(rng).expect("messages").as_str().into()),
                _ => Label::Recv(m.choose(rng).expect("messages").as_str().into()),
            };
            Transition::new(s.choose(rng).expect("states").clone(), label, s.choose(rng).expect("states").clone())
        })
        .collect();
    ChannelMachine::new(s.clone(), s[0].clone(), m, ts).expect("well-formed")
}

/// An automaton with locations `l0..`, clocks `x0..`, parameters `p0..` and
/// `edges` random edges; `l0` is initial and the last location final.
pub fn pta(rng: &mut impl Rng, locations: usize, symbols: &[&str], clocks: usize, params: usize, edges: usize) -> Pta {
    let locs: Vec<String> = (0..locations).map(|k| format!("l{k}")).collect();
    let xs: Vec<String> = (0..clocks).map(|k| format!("x{k}")).collect();
    let ps: Vec<String> = (0..params).map(|k| format!("p{k}")).collect();
    let x_refs: Vec<&str> = xs.iter().map(String::as_str).collect();
    let p_refs: Vec<&str> = ps.iter().map(String::as_str).collect();
    let es = (0..edges)
        .map(|_| {
            let guard = if rng.gen_bool(0.2) {
                ClockConstraint::trivial()
            } else {
                constraint(rng, &x_refs, &p_refs, 2)
            };
            let resets: Vec<String> = xs.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
            Edge::new(
                locs.choose(rng).expect("locations").clone(),
                *symbols.choose(rng).expect("symbols"),
                guard,
                resets,
                locs.choose(rng).expect("locations").clone(),
            )
        })
        .collect();
    Pta::new(PtaSpec {
        alphabet: symbols.iter().map(|s| (*s).into()).collect(),
        locations: locs.clone(),
        initial: vec![locs[0].clone()],
        clocks: xs,
        params: ps,
        edges: es,
        finals: vec![locs[locations - 1].clone()],
    })
    .expect("well-formed")
}
