use serde::Serialize;

use super::{EncodingAlphabet, EncodingError, SymbolClass, HASH};
use crate::channel::{ChannelMachine, Label};
use crate::rational::Rational;
use crate::time::{Symbol, TimedWord};

/// What closes a block one time unit after its state symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Trailer {
    Label(Label),
    Star,
}

/// One encoded configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigBlock {
    pub state: String,
    /// Timestamp of the state symbol.
    pub start: Rational,
    /// Channel symbols with their offsets from `start`, strictly increasing
    /// in `(0, 1)`.
    pub channel: Vec<(Symbol, Rational)>,
    pub trailer: Trailer,
    /// Position of the state symbol in the word, 1-based.
    pub position: usize,
}

impl ConfigBlock {
    pub fn width(&self) -> usize {
        self.channel.len()
    }

    pub fn offsets(&self) -> impl Iterator<Item = &Rational> {
        self.channel.iter().map(|(_, d)| d)
    }

    pub fn symbol_at(&self, offset: &Rational) -> Option<&Symbol> {
        self.channel
            .binary_search_by(|(_, d)| d.cmp(offset))
            .ok()
            .map(|k| &self.channel[k].0)
    }

    pub fn is_hash(s: &Symbol) -> bool {
        s.as_str() == HASH
    }
}

fn structure(index: usize, reason: impl Into<String>) -> EncodingError {
    EncodingError::Structure {
        index,
        reason: reason.into(),
    }
}

pub(crate) fn decompose_with(
    w: &TimedWord,
    alphabet: &EncodingAlphabet,
) -> Result<Vec<ConfigBlock>, EncodingError> {
    let events = w.events();
    let class = |k: usize| {
        alphabet
            .classify(&events[k].symbol)
            .ok_or_else(|| structure(k + 1, format!("`{}` is not in the encoding alphabet", events[k].symbol)))
    };
    let one = Rational::one();
    let two = Rational::from(2u64);
    let mut blocks = Vec::new();
    let mut i = 0;
    loop {
        if class(i)? != &SymbolClass::State {
            return Err(structure(i + 1, "expected a control state symbol"));
        }
        let state = events[i].symbol.as_str().to_string();
        let start = events[i].time.clone();
        let position = i + 1;
        i += 1;
        let mut channel: Vec<(Symbol, Rational)> = Vec::new();
        while i < events.len() && matches!(class(i)?, SymbolClass::Message | SymbolClass::Hash) {
            let d = &events[i].time - &start;
            if !d.is_positive() || d >= one {
                return Err(structure(i + 1, "channel symbol outside the open unit after its state"));
            }
            if channel.last().is_some_and(|(_, prev)| *prev >= d) {
                return Err(structure(i + 1, "channel symbols must have strictly increasing timestamps"));
            }
            channel.push((events[i].symbol.clone(), d));
            i += 1;
        }
        if i == events.len() {
            return Err(structure(position, "state symbol is not followed by a label or * one time unit later"));
        }
        if events[i].time != &start + &one {
            return Err(structure(i + 1, "expected a label or * exactly one time unit after the state"));
        }
        let trailer = match class(i)? {
            SymbolClass::Label(l) => Trailer::Label(l.clone()),
            SymbolClass::Star => Trailer::Star,
            _ => return Err(structure(i + 1, "expected a label or * one time unit after the state")),
        };
        i += 1;
        let done = trailer == Trailer::Star;
        blocks.push(ConfigBlock {
            state,
            start: start.clone(),
            channel,
            trailer,
            position,
        });
        if done {
            if i != events.len() {
                return Err(structure(i + 1, "nothing may follow *"));
            }
            return Ok(blocks);
        }
        if i == events.len() {
            return Err(structure(i, "label is not followed by a control state"));
        }
        if events[i].time != &start + &two {
            return Err(structure(i + 1, "expected the next control state two time units after the previous one"));
        }
    }
}

/// Splits `w` into configuration blocks.
pub fn decompose(w: &TimedWord, machine: &ChannelMachine) -> Result<Vec<ConfigBlock>, EncodingError> {
    decompose_with(w, &EncodingAlphabet::new(machine)?)
}

/// `max(w)`: the widest block.
pub fn max_width(w: &TimedWord, machine: &ChannelMachine) -> Result<usize, EncodingError> {
    Ok(decompose(w, machine)?
        .iter()
        .map(ConfigBlock::width)
        .max()
        .unwrap_or(0))
}

/// Number of hashes directly after the first event.
pub fn n_prefix(w: &TimedWord) -> usize {
    w.events()
        .iter()
        .skip(1)
        .take_while(|e| e.symbol.as_str() == HASH)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::samples::single_message;
    use crate::encoding::codec::tests::w_c1;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn running_word_has_three_blocks() {
        let blocks = decompose(&w_c1(), &single_message()).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.width() == 1));
        assert_eq!(blocks[2].trailer, Trailer::Star);
        assert_eq!(blocks[1].channel, vec![(Symbol::from("m"), r(1, 2))]);
    }

    #[test]
    fn early_star_is_rejected() {
        let w = TimedWord::from_pairs([("s0", r(0, 1)), ("*", r(1, 2))]).unwrap();
        assert!(matches!(
            decompose(&w, &single_message()),
            Err(EncodingError::Structure { index: 2, .. })
        ));
    }

    #[test]
    fn wide_block() {
        let w = TimedWord::from_pairs([
            ("s0", r(0, 1)),
            ("#", r(1, 10)),
            ("#", r(2, 10)),
            ("m", r(3, 10)),
            ("#", r(4, 10)),
            ("*", r(1, 1)),
        ])
        .unwrap();
        assert_eq!(max_width(&w, &single_message()).unwrap(), 4);
    }

    #[test]
    fn empty_block() {
        let w = TimedWord::from_pairs([("s0", r(0, 1)), ("*", r(1, 1))]).unwrap();
        assert_eq!(max_width(&w, &single_message()).unwrap(), 0);
        assert_eq!(n_prefix(&w), 0);
    }

    #[test]
    fn trailing_events_after_star() {
        let w = TimedWord::from_pairs([("s0", r(0, 1)), ("*", r(1, 1)), ("s0", r(2, 1))]).unwrap();
        assert!(decompose(&w, &single_message()).is_err());
    }

    #[test]
    fn foreign_symbol() {
        let w = TimedWord::from_pairs([("s0", r(0, 1)), ("zz", r(1, 2)), ("*", r(1, 1))]).unwrap();
        assert!(matches!(
            decompose(&w, &single_message()),
            Err(EncodingError::Structure { index: 2, .. })
        ));
    }
}
