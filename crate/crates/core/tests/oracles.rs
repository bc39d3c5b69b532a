use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use ptamtl::channel::samples::two_message;
use ptamtl::channel::{ChannelMachine, Configuration, Label, Transition};
use ptamtl::mtl::{eval_at, CompiledFormula, Formula, Interval};
use ptamtl::pta::constraint_feasible;
use ptamtl::Rational;
use ptamtl_oracles::feasibility::{grid, grid_witness};
use ptamtl_oracles::insertion::{leads_to, strings};
use ptamtl_oracles::{mtl, random};

const ATOMS: [&str; 3] = ["a", "b", "c"];

#[test]
fn evaluator_matches_naive_recursion() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..400 {
        let f = random::formula(&mut rng, &ATOMS, 4);
        let w = random::word(&mut rng, &ATOMS, 6, 2, 2);
        let table = CompiledFormula::new(&f).eval_all(w.events());
        for i in 1..=w.len() {
            assert_eq!(table[i - 1], mtl::holds(&w, i, &f), "{f} at {i} on {w}");
        }
    }
}

#[test]
fn point_eventually_ignores_intermediate_positions() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let w = random::word(&mut rng, &ATOMS, 6, 2, 1);
        let f = Formula::eventually(Interval::point(1), Formula::atom("a"));
        let u = Formula::until(Interval::point(1), Formula::True, Formula::atom("a"));
        for i in 1..=w.len() {
            let t = &w.events()[i - 1].time;
            let direct = w.events()[i..]
                .iter()
                .any(|e| e.symbol.as_str() == "a" && &e.time - t == Rational::one());
            assert_eq!(eval_at(&w, i, &f).unwrap(), direct);
            assert_eq!(eval_at(&w, i, &u).unwrap(), direct);
        }
    }
}

/// A machine where every label is enabled between every pair of states.
fn complete_machine() -> ChannelMachine {
    let states = ["s", "t"];
    let labels = [Label::Send("a".into()), Label::Send("b".into()), Label::Recv("a".into()), Label::Recv("b".into()), Label::Eps];
    let mut ts = Vec::new();
    for s in states {
        for t in states {
            ts.extend(labels.iter().map(|l| Transition::new(s, l.clone(), t)));
        }
    }
    ChannelMachine::new(states, "s", ["a", "b"], ts).unwrap()
}

#[test]
fn insertion_closed_forms_match_witness_search() {
    let c = complete_machine();
    let chans = strings(c.messages(), 4);
    assert_eq!(chans.len(), 31);
    let mut agreements = 0;
    for l in c.labels() {
        for x1 in &chans {
            for x2 in &chans {
                let c1 = Configuration::new("s", x1.clone());
                let c2 = Configuration::new("t", x2.clone());
                assert_eq!(c.step_insertion(&c1, &l, &c2), leads_to(&c, &c1, &l, &c2), "{c1} {l} {c2}");
                agreements += 1;
            }
        }
    }
    assert_eq!(agreements, 5 * 31 * 31);
}

#[test]
fn insertion_respects_missing_transitions() {
    let c = two_message();
    let c1 = Configuration::new("q0", ["a"]);
    let c2 = Configuration::new("q3", ["a", "a"]);
    let l = Label::Send("a".into());
    assert!(!c.step_insertion(&c1, &l, &c2));
    assert!(!leads_to(&c, &c1, &l, &c2));
}

#[test]
fn exact_steps_are_insertion_steps() {
    let c = complete_machine();
    for x in strings(c.messages(), 3) {
        let c1 = Configuration::new("s", x);
        for l in c.labels() {
            for c2 in c.step_exact(&c1, &l) {
                assert!(c.step_insertion(&c1, &l, &c2));
            }
        }
    }
}

#[test]
fn feasibility_matches_grid_search() {
    let mut rng = StdRng::seed_from_u64(3);
    let g = grid(4, 3);
    let (mut feasible, mut infeasible) = (0, 0);
    for _ in 0..120 {
        let c = random::constraint(&mut rng, &["x", "y"], &["p"], 4);
        let witness = grid_witness(&c, &g);
        if constraint_feasible(&c) {
            feasible += 1;
        } else {
            infeasible += 1;
            assert!(witness.is_none(), "{c} declared infeasible but {witness:?} satisfies it");
        }
        if witness.is_some() {
            assert!(constraint_feasible(&c), "{c}");
        }
    }
    assert!(feasible > 10 && infeasible > 10, "{feasible} feasible, {infeasible} infeasible");
}

proptest! {
    #[test]
    fn desugaring_preserves_truth(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random::formula(&mut rng, &ATOMS, 3);
        let w = random::word(&mut rng, &ATOMS, 5, 2, 2);
        let core = f.desugar(&"a".into());
        let (lhs, rhs) = (CompiledFormula::new(&f).eval_all(w.events()), CompiledFormula::new(&core).eval_all(w.events()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn negation_flips(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random::formula(&mut rng, &ATOMS, 3);
        let w = random::word(&mut rng, &ATOMS, 5, 2, 2);
        let pos = CompiledFormula::new(&f).eval_all(w.events());
        let neg = CompiledFormula::new(&Formula::not(f)).eval_all(w.events());
        prop_assert!(pos.iter().zip(&neg).all(|(p, n)| p != n));
    }

    #[test]
    fn next_fails_at_last_position(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = random::word(&mut rng, &ATOMS, 6, 3, 2);
        let f = Formula::next(Interval::unbounded(), Formula::True);
        prop_assert!(!eval_at(&w, w.len(), &f).unwrap());
    }
}
