//! Membership in `L(C, n)`.

use std::fmt;

use serde::Serialize;

use super::block::{decompose_with, ConfigBlock, Trailer};
use super::{EncodingAlphabet, EncodingError, HASH};
use crate::channel::{ChannelMachine, Label};
use crate::rational::Rational;
use crate::time::{Symbol, TimedWord};

/// The first condition of `L(C, n)` a word breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotStrictlyMonotonic { position: usize },
    Structure { position: usize, reason: String },
    UnknownTarget(String),
    /// Block `block` (1-based) closes with a label that no transition to the
    /// next block's state carries, or a state other than the target closes
    /// with `*`, or the target closes with a label.
    Succession { block: usize },
    HashBeforeMessage { block: usize },
    Prefix(String),
    Rule { block: usize, reason: String },
    Alphabet(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotStrictlyMonotonic { position } => {
                write!(f, "timestamps not strictly increasing at event {position}")
            }
            Violation::Structure { position, reason } => write!(f, "event {position}: {reason}"),
            Violation::UnknownTarget(s) => write!(f, "`{s}` is not a state of the machine"),
            Violation::Succession { block } => {
                write!(f, "block {block}: state, label and next state do not match a transition")
            }
            Violation::HashBeforeMessage { block } => {
                write!(f, "block {block}: a hash precedes a message")
            }
            Violation::Prefix(reason) => write!(f, "prefix: {reason}"),
            Violation::Rule { block, reason } => write!(f, "block {block} -> {}: {reason}", block + 1),
            Violation::Alphabet(s) => write!(f, "encoding alphabet: {s}"),
        }
    }
}

/// Channel events a block forces into its successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Mandate {
    /// `(symbol, offset)` pairs that must be present exactly.
    pub exact: Vec<(Symbol, Rational)>,
    /// Some event with this symbol at an offset strictly above the bound
    /// (anywhere when `None`).
    pub after: Option<(Symbol, Option<Rational>)>,
}

impl Mandate {
    /// Checks `next` against the mandate; `Err` names the first gap.
    pub(crate) fn check(&self, next: &ConfigBlock) -> Result<(), String> {
        for (s, d) in &self.exact {
            match next.symbol_at(d) {
                Some(x) if x == s => {}
                Some(x) => return Err(format!("expected {s} at offset {d}, found {x}")),
                None => return Err(format!("missing {s} at offset {d}")),
            }
        }
        if let Some((s, bound)) = &self.after {
            let found = next
                .channel
                .iter()
                .any(|(x, d)| x == s && bound.as_ref().is_none_or(|b| d > b));
            if !found {
                let at = bound.as_ref().map_or("anywhere".to_string(), |b| format!("after offset {b}"));
                return Err(format!("missing appended {s} {at}"));
            }
        }
        Ok(())
    }
}

/// Copy, replace, shift and append obligations of one step.
pub(crate) fn mandate(block: &ConfigBlock, label: &Label) -> Result<Mandate, String> {
    let hash = Symbol::from(HASH);
    let ch = &block.channel;
    let copies = || ch.iter().map(|(s, d)| (s.clone(), d.clone())).collect::<Vec<_>>();
    let last = ch.last().map(|(_, d)| d.clone());
    Ok(match label {
        Label::Eps => {
            if ch.iter().any(|(s, _)| *s != hash) {
                return Err("eps requires an empty channel".to_string());
            }
            Mandate {
                exact: copies(),
                after: None,
            }
        }
        Label::Send(m) => match ch.iter().position(|(s, _)| *s == hash) {
            Some(j) => {
                let mut exact = copies();
                exact[j].0 = m.clone();
                Mandate { exact, after: None }
            }
            None => Mandate {
                exact: copies(),
                after: Some((m.clone(), last)),
            },
        },
        Label::Recv(m) => match ch.first() {
            Some((head, _)) if head == m => {
                let mut exact: Vec<(Symbol, Rational)> = ch
                    .windows(2)
                    .map(|pair| (pair[1].0.clone(), pair[0].1.clone()))
                    .collect();
                exact.push((hash, last.expect("non-empty")));
                Mandate { exact, after: None }
            }
            _ => Mandate {
                exact: copies(),
                after: Some((hash, last)),
            },
        },
    })
}

/// Whether `w ∈ L(C, n)` for target state `target`.
pub fn check_membership(w: &TimedWord, machine: &ChannelMachine, target: &str, n: usize) -> bool {
    diagnose(w, machine, target, n).is_ok()
}

/// Like [`check_membership`], reporting the first violated condition.
pub fn diagnose(w: &TimedWord, machine: &ChannelMachine, target: &str, n: usize) -> Result<Vec<ConfigBlock>, Violation> {
    if !machine.has_state(target) {
        return Err(Violation::UnknownTarget(target.to_string()));
    }
    let alphabet = EncodingAlphabet::new(machine).map_err(|e| Violation::Alphabet(e.to_string()))?;
    let events = w.events();
    if let Some(k) = (1..events.len()).find(|&k| events[k - 1].time >= events[k].time) {
        return Err(Violation::NotStrictlyMonotonic { position: k + 1 });
    }
    let blocks = decompose_with(w, &alphabet).map_err(|e| match e {
        EncodingError::Structure { index, reason } => Violation::Structure {
            position: index,
            reason,
        },
        other => Violation::Structure {
            position: 0,
            reason: other.to_string(),
        },
    })?;
    let hash = Symbol::from(HASH);

    for (k, b) in blocks.iter().enumerate() {
        let ok = match &b.trailer {
            Trailer::Star => b.state == target,
            Trailer::Label(l) => {
                b.state != target && machine.has_transition(&b.state, l, &blocks[k + 1].state)
            }
        };
        if !ok {
            return Err(Violation::Succession { block: k + 1 });
        }
        let first_hash = b.channel.iter().position(|(s, _)| *s == hash);
        if let Some(j) = first_hash {
            if b.channel[j..].iter().any(|(s, _)| *s != hash) {
                return Err(Violation::HashBeforeMessage { block: k + 1 });
            }
        }
    }

    let first = &blocks[0];
    if first.state != machine.initial() {
        return Err(Violation::Prefix(format!("starts with `{}`, not the initial state", first.state)));
    }
    if first.channel.iter().any(|(s, _)| *s != hash) || first.width() != n {
        return Err(Violation::Prefix(format!(
            "expected exactly {n} hashes before the first label, found {} channel symbols",
            first.width()
        )));
    }

    for (k, pair) in blocks.windows(2).enumerate() {
        let Trailer::Label(l) = &pair[0].trailer else {
            unreachable!("only the last block closes with *")
        };
        mandate(&pair[0], l)
            .and_then(|m| m.check(&pair[1]))
            .map_err(|reason| Violation::Rule { block: k + 1, reason })?;
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::samples::single_message;
    use crate::encoding::codec::tests::w_c1;
    use crate::time::Event;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn running_word_is_member_for_one_slot() {
        assert_eq!(diagnose(&w_c1(), &single_message(), "s2", 1).map(|b| b.len()), Ok(3));
        assert!(!check_membership(&w_c1(), &single_message(), "s2", 2));
        assert!(!check_membership(&w_c1(), &single_message(), "s1", 1));
    }

    #[test]
    fn moved_message_breaks_the_copy() {
        let mut events = w_c1().into_events();
        events[4] = Event::new("m", r(13, 5));
        let w = TimedWord::new(events).unwrap();
        assert!(matches!(
            diagnose(&w, &single_message(), "s2", 1),
            Err(Violation::Rule { block: 1, .. })
        ));
    }

    #[test]
    fn equal_timestamps_are_rejected() {
        let w = TimedWord::from_pairs([("s0", r(0, 1)), ("#", r(0, 1)), ("m!", r(1, 1))]).unwrap();
        assert_eq!(
            diagnose(&w, &single_message(), "s2", 1).unwrap_err(),
            Violation::NotStrictlyMonotonic { position: 2 }
        );
    }

    #[test]
    fn mandates_follow_the_step_rules() {
        let block = |syms: &[&str]| ConfigBlock {
            state: "s".into(),
            start: r(0, 1),
            channel: syms
                .iter()
                .zip([r(2, 10), r(7, 10), r(8, 10)])
                .map(|(s, d)| (Symbol::from(*s), d))
                .collect(),
            trailer: Trailer::Star,
            position: 1,
        };
        let sym = |s: &str| Symbol::from(s);
        // m1! replaces the first hash
        let m = mandate(&block(&["m1", "m2", "#"]), &Label::Send(sym("m1"))).unwrap();
        assert_eq!(m.exact, vec![(sym("m1"), r(2, 10)), (sym("m2"), r(7, 10)), (sym("m1"), r(8, 10))]);
        // no hash left: copy and append after the last slot
        let m = mandate(&block(&["m1", "m2", "m2"]), &Label::Send(sym("m1"))).unwrap();
        assert_eq!(m.after, Some((sym("m1"), Some(r(8, 10)))));
        // m1? with matching head shifts left and pads
        let m = mandate(&block(&["m1", "m2", "#"]), &Label::Recv(sym("m1"))).unwrap();
        assert_eq!(m.exact, vec![(sym("m2"), r(2, 10)), (sym("#"), r(7, 10)), (sym("#"), r(8, 10))]);
        // mismatching head: copy and append a hash
        let m = mandate(&block(&["m2", "m1", "#"]), &Label::Recv(sym("m1"))).unwrap();
        assert_eq!(m.exact.len(), 3);
        assert_eq!(m.after, Some((sym("#"), Some(r(8, 10)))));
        assert!(mandate(&block(&["m1"]), &Label::Eps).is_err());
    }
}
