//! Words for comparing `φ_C` against the `L(C, n)` checker.

use ptamtl::channel::{enumerate_error_free, ChannelMachine, Computation};
use ptamtl::encoding::{encode, encoding_alphabet, EncodingLayout};
use ptamtl::reduction::insertion_mutants;
use ptamtl::{Event, Rational, Symbol, TimedWord};

/// Words differing from `w` in one event: each event deleted, relabelled
/// with every other letter of `alphabet`, or shifted by each of `shifts`.
pub fn single_event_mutations(w: &TimedWord, alphabet: &[Symbol], shifts: &[Rational]) -> Vec<TimedWord> {
    let events = w.events();
    let mut out = Vec::new();
    for i in 0..events.len() {
        let mut del = events.to_vec();
        del.remove(i);
        out.extend(TimedWord::new(del).ok());
        for s in alphabet.iter().filter(|s| **s != events[i].symbol) {
            let mut swap = events.to_vec();
            swap[i] = Event::new(s.clone(), events[i].time.clone());
            out.extend(TimedWord::new(swap).ok());
        }
        for d in shifts {
            let mut moved = events.to_vec();
            moved[i] = Event::new(events[i].symbol.clone(), &events[i].time + d);
            out.extend(TimedWord::new(moved).ok());
        }
    }
    out
}

/// Encoded error-free computations, with the uniform layout.
pub fn encodings(machine: &ChannelMachine, target: &str, steps: usize, chan: usize) -> Vec<(Computation, TimedWord)> {
    enumerate_error_free(machine, target, steps, chan)
        .expect("known target")
        .into_iter()
        .map(|g| {
            let w = encode(machine, target, &g, &EncodingLayout::uniform(g.max_channel())).expect("encodable");
            (g, w)
        })
        .collect()
}

/// Encodings, up to `mutants` insertion mutants of each, and every single
/// event mutation of both.
pub fn differential_corpus(
    machine: &ChannelMachine,
    target: &str,
    steps: usize,
    chan: usize,
    mutants: usize,
) -> Vec<TimedWord> {
    let alphabet: Vec<Symbol> = encoding_alphabet(machine).expect("no collisions").into_iter().collect();
    let shifts = [Rational::new(1, 7), Rational::new(-1, 7), Rational::new(1, 1), Rational::new(-1, 1)];
    let mut seeds = Vec::new();
    for (_, w) in encodings(machine, target, steps, chan) {
        seeds.extend(insertion_mutants(machine, &w, mutants).expect("valid encoding"));
        seeds.push(w);
    }
    let mut out = seeds.clone();
    for w in &seeds {
        out.extend(single_event_mutations(w, &alphabet, &shifts));
    }
    out.sort();
    out.dedup();
    out
}
