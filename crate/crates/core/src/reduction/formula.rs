//! The formula `φ_C` whose models are exactly `⋃_n L(C, n)`.
//!
//! `G` is strict, so a plain `G ψ` says nothing about position 1, which is
//! the initial state symbol. Every invariant is therefore stated as
//! `ψ ∧ G ψ`.

use std::collections::BTreeSet;

use crate::channel::{ChannelMachine, Label};
use crate::encoding::{EncodingAlphabet, HASH, STAR};
use crate::mtl::{Formula, Interval};
use crate::time::Symbol;

use super::ReductionError;

fn atom(s: impl Into<Symbol>) -> Formula {
    Formula::atom(s)
}

fn not(f: Formula) -> Formula {
    Formula::not(f)
}

fn and(a: Formula, b: Formula) -> Formula {
    Formula::and(a, b)
}

fn implies(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

fn x(f: Formula) -> Formula {
    Formula::next(Interval::unbounded(), f)
}

fn f_at(c: u64, f: Formula) -> Formula {
    Formula::eventually(Interval::point(c), f)
}

fn g(i: Interval, f: Formula) -> Formula {
    Formula::globally(i, f)
}

fn always(f: Formula) -> Formula {
    and(f.clone(), g(Interval::unbounded(), f))
}

fn unit() -> Interval {
    Interval::open(0, 1)
}

fn below_one() -> Interval {
    Interval::below(1)
}

struct Parts {
    states: Formula,
    messages: Formula,
    labels: Formula,
    chan: Formula,
    hash: Formula,
}

/// One named conjunct of `φ_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjunct {
    pub name: String,
    pub formula: Formula,
}

/// The conjuncts of `φ_C`, in order.
pub fn formula_conjuncts(machine: &ChannelMachine, target: &str) -> Result<Vec<Conjunct>, ReductionError> {
    if !machine.has_state(target) {
        return Err(ReductionError::UnknownTarget(target.to_string()));
    }
    EncodingAlphabet::new(machine)?;
    let hash = atom(HASH);
    let star = atom(STAR);
    let p = Parts {
        states: Formula::disj(machine.states().iter().map(|s| atom(s.as_str()))),
        messages: Formula::disj(machine.messages().iter().map(|m| atom(m.clone()))),
        labels: Formula::disj(machine.labels().iter().map(|l| atom(l.symbol()))),
        chan: Formula::disj(
            machine
                .messages()
                .iter()
                .map(|m| atom(m.clone()))
                .chain([hash.clone()]),
        ),
        hash: hash.clone(),
    };
    let copy_m = g(
        unit(),
        Formula::conj(
            machine
                .messages()
                .iter()
                .map(|m| implies(atom(m.clone()), f_at(2, atom(m.clone())))),
        ),
    );
    let copy_hash = g(unit(), implies(hash.clone(), f_at(2, hash.clone())));

    let mut out = Vec::new();
    let mut push = |name: &str, formula: Formula| {
        out.push(Conjunct {
            name: name.to_string(),
            formula,
        })
    };

    push(
        "strictly monotonic",
        always(Formula::or(
            Formula::next(Interval::above(0), Formula::True),
            not(x(Formula::True)),
        )),
    );

    let succession = machine
        .states()
        .iter()
        .filter(|s| s.as_str() != target)
        .map(|s| {
            let options = machine
                .outgoing(s)
                .map(|t| and(f_at(1, atom(t.label.symbol())), f_at(2, atom(t.target.as_str()))));
            implies(atom(s.as_str()), Formula::disj(options))
        })
        .chain([implies(atom(target), f_at(1, star.clone()))]);
    push("state succession", always(Formula::conj(succession)));

    let not_ls = not(Formula::or(p.labels.clone(), star.clone()));
    push(
        "state exclusion",
        always(implies(
            p.states.clone(),
            Formula::conj([
                g(Interval::below(2), not(p.states.clone())),
                g(unit(), not_ls.clone()),
                g(Interval::open(1, 2), not_ls),
                g(Interval::open(1, 2), not(p.chan.clone())),
            ]),
        )),
    );

    push(
        "channel placement",
        always(implies(
            p.states.clone(),
            and(
                g(unit(), p.chan.clone()),
                g(Interval::new(1, Some(2), true, false).expect("valid"), not(p.chan.clone())),
            ),
        )),
    );
    push(
        "hashes after messages",
        always(not(and(p.hash.clone(), x(p.messages.clone())))),
    );
    push("star ends the word", always(implies(star.clone(), not(x(Formula::True)))));

    let initial = machine.initial();
    let start = if initial == target {
        Formula::until(Interval::unbounded(), hash.clone(), star.clone())
    } else {
        Formula::disj(machine.outgoing(initial).map(|t| {
            Formula::until(
                Interval::unbounded(),
                hash.clone(),
                and(atom(t.label.symbol()), x(atom(t.target.as_str()))),
            )
        }))
    };
    push("initial configuration", and(atom(initial), start));
    push(
        "reaches target",
        Formula::or(atom(target), Formula::eventually(Interval::unbounded(), atom(target))),
    );

    let mut rules: BTreeSet<(String, Label)> = BTreeSet::new();
    for t in machine.transitions() {
        if t.source != target {
            rules.insert((t.source.clone(), t.label.clone()));
        }
    }
    let mut eps = Vec::new();
    let mut send = Vec::new();
    let mut recv = Vec::new();
    for (s, l) in &rules {
        let guard = and(atom(s.as_str()), f_at(1, atom(l.symbol())));
        match l {
            Label::Eps => eps.push(implies(
                guard,
                and(g(unit(), not(p.messages.clone())), copy_hash.clone()),
            )),
            Label::Send(m) => {
                let m = atom(m.clone());
                let replaced = and(x(f_at(2, m.clone())), x(copy_hash.clone()));
                let next_hash = implies(x(hash.clone()), replaced.clone());
                let yes_hash = implies(
                    and(Formula::eventually(unit(), hash.clone()), not(x(hash.clone()))),
                    g(
                        below_one(),
                        implies(and(not(hash.clone()), x(hash.clone())), replaced),
                    ),
                );
                let appended = implies(
                    x(atom(l.symbol())),
                    f_at(2, Formula::until(Interval::unbounded(), p.chan.clone(), m)),
                );
                let no_hash = implies(
                    not(Formula::eventually(unit(), hash.clone())),
                    and(appended.clone(), g(below_one(), appended)),
                );
                send.push(implies(
                    guard,
                    Formula::conj([copy_m.clone(), next_hash, yes_hash, no_hash]),
                ));
            }
            Label::Recv(m) => {
                let m = atom(m.clone());
                let label = atom(l.symbol());
                let shift = Formula::conj(
                    machine
                        .messages()
                        .iter()
                        .map(|m2| implies(x(atom(m2.clone())), f_at(2, atom(m2.clone()))))
                        .chain([
                            implies(x(hash.clone()), f_at(2, hash.clone())),
                            implies(x(label.clone()), f_at(2, hash.clone())),
                        ]),
                );
                let yes_m = implies(x(m.clone()), Formula::until(Interval::unbounded(), shift, label.clone()));
                let padded = implies(
                    x(label),
                    f_at(2, Formula::until(Interval::unbounded(), p.chan.clone(), hash.clone())),
                );
                let no_m = implies(
                    x(not(m)),
                    Formula::conj([
                        copy_m.clone(),
                        copy_hash.clone(),
                        padded.clone(),
                        g(below_one(), padded),
                    ]),
                );
                recv.push(implies(guard, and(yes_m, no_m)));
            }
        }
    }
    if !eps.is_empty() {
        push("empty-test steps", always(Formula::conj(eps)));
    }
    if !send.is_empty() {
        push("send steps", always(Formula::conj(send)));
    }
    if !recv.is_empty() {
        push("receive steps", always(Formula::conj(recv)));
    }
    Ok(out)
}

/// `φ_C` for target state `target`.
pub fn build_formula(machine: &ChannelMachine, target: &str) -> Result<Formula, ReductionError> {
    Ok(Formula::conj(
        formula_conjuncts(machine, target)?
            .into_iter()
            .map(|c| c.formula),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::samples::{single_message, two_message};
    use crate::channel::enumerate_error_free;
    use crate::encoding::codec::tests::w_c1;
    use crate::encoding::{check_membership, encode, inject_insertion, n_prefix, EncodingLayout};
    use crate::mtl::{satisfies, CompiledFormula};
    use crate::rational::Rational;
    use crate::time::{Event, TimedWord};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn running_word_satisfies() {
        let phi = build_formula(&single_message(), "s2").unwrap();
        assert!(satisfies(&w_c1(), &phi));
        assert!(!satisfies(&w_c1(), &build_formula(&single_message(), "s1").unwrap()));
    }

    #[test]
    fn equal_timestamps_falsify() {
        let phi = build_formula(&single_message(), "s2").unwrap();
        let w = TimedWord::from_pairs([("s0", r(0, 1)), ("m!", r(0, 1))]).unwrap();
        assert!(!satisfies(&w, &phi));
    }

    #[test]
    fn insertion_is_invisible() {
        let c = single_message();
        let phi = build_formula(&c, "s2").unwrap();
        let w = inject_insertion(&w_c1(), &c, 2, &r(17, 20)).unwrap();
        assert!(satisfies(&w, &phi));
    }

    #[test]
    fn atoms_within_alphabet() {
        let c = two_message();
        let phi = build_formula(&c, "q4").unwrap();
        let sigma = EncodingAlphabet::new(&c).unwrap().symbols();
        assert!(phi.atoms().is_subset(&sigma));
    }

    fn mutations(w: &TimedWord) -> Vec<TimedWord> {
        let syms: Vec<Symbol> = {
            let mut s: Vec<Symbol> = w.events().iter().map(|e| e.symbol.clone()).collect();
            s.sort();
            s.dedup();
            s
        };
        let mut out = Vec::new();
        let events = w.events();
        for i in 0..events.len() {
            let mut del = events.to_vec();
            del.remove(i);
            out.extend(TimedWord::new(del).ok());
            for s in &syms {
                if *s != events[i].symbol {
                    let mut swap = events.to_vec();
                    swap[i] = Event::new(s.clone(), events[i].time.clone());
                    out.extend(TimedWord::new(swap).ok());
                }
            }
            for d in [r(1, 7), r(-1, 7)] {
                let mut moved = events.to_vec();
                moved[i] = Event::new(events[i].symbol.clone(), &events[i].time + &d);
                out.extend(TimedWord::new(moved).ok());
            }
        }
        out
    }

    #[test]
    fn agrees_with_checker_on_mutations() {
        for (c, target) in [(single_message(), "s2"), (two_message(), "q4")] {
            let phi = CompiledFormula::new(&build_formula(&c, target).unwrap());
            for g in enumerate_error_free(&c, target, 8, 3).unwrap() {
                let w = encode(&c, target, &g, &EncodingLayout::uniform(g.max_channel())).unwrap();
                let mut corpus = vec![w.clone()];
                corpus.extend(mutations(&w));
                for b in 2..=g.len() + 1 {
                    corpus.extend(inject_insertion(&w, &c, b, &r(19, 20)).ok());
                }
                for v in &corpus {
                    let expect = !v.is_empty() && check_membership(v, &c, target, n_prefix(v));
                    assert_eq!(phi.satisfies(v), expect, "disagreement on {v}");
                }
            }
        }
    }

}
