//! Timed words: finite, non-empty sequences of timestamped symbols.

use std::borrow::Borrow;
use std::fmt;

use serde::Serialize;

use crate::rational::Rational;

/// An alphabet element. Symbols are opaque names; `#`, `*`, `m!`, `m?` and
/// `eps` are ordinary symbols as far as timed words are concerned.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Self {
        Symbol(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol(s.to_string())
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(s)
    }
}

impl Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl PartialEq<str> for Symbol {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for Symbol {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Event {
    pub symbol: Symbol,
    pub time: Rational,
}

impl Event {
    pub fn new(symbol: impl Into<Symbol>, time: Rational) -> Self {
        Event {
            symbol: symbol.into(),
            time,
        }
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.symbol, self.time)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TimeError {
    #[error("a timed word must contain at least one event")]
    Empty,
    #[error("negative timestamp {time} at event {index}")]
    Negative { index: usize, time: Rational },
    #[error("timestamp {time} at event {index} is smaller than its predecessor")]
    Decreasing { index: usize, time: Rational },
    #[error("cannot concatenate: left word ends at {left_end}, right word starts at {right_start}")]
    ConcatOrder {
        left_end: Box<Rational>,
        right_start: Box<Rational>,
    },
}

/// A non-empty finite sequence of events with non-negative, non-decreasing
/// timestamps. Positions are 1-based in the public API, matching the usual
/// reading of MTL satisfaction `(w, i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct TimedWord {
    events: Vec<Event>,
}

impl TimedWord {
    pub fn new(events: Vec<Event>) -> Result<Self, TimeError> {
        if events.is_empty() {
            return Err(TimeError::Empty);
        }
        for (index, e) in events.iter().enumerate() {
            if e.time.is_negative() {
                return Err(TimeError::Negative {
                    index: index + 1,
                    time: e.time.clone(),
                });
            }
            if index > 0 && e.time < events[index - 1].time {
                return Err(TimeError::Decreasing {
                    index: index + 1,
                    time: e.time.clone(),
                });
            }
        }
        Ok(TimedWord { events })
    }

    /// Builds a word from `(symbol, time)` pairs; convenient in tests.
    pub fn from_pairs<S: Into<Symbol>>(
        pairs: impl IntoIterator<Item = (S, Rational)>,
    ) -> Result<Self, TimeError> {
        TimedWord::new(pairs.into_iter().map(|(s, t)| Event::new(s, t)).collect())
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    /// Always false; present for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn into_events(self) -> Vec<Event> {
        self.events
    }

    pub fn first_time(&self) -> &Rational {
        &self.events[0].time
    }

    pub fn last_time(&self) -> &Rational {
        &self.events[self.events.len() - 1].time
    }

    /// The event at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<&Event> {
        i.checked_sub(1).and_then(|k| self.events.get(k))
    }

    pub fn is_strictly_monotonic(&self) -> bool {
        self.events.windows(2).all(|p| p[0].time < p[1].time)
    }

    /// `w1 · w2`, defined when the last timestamp of `w1` does not exceed the
    /// first timestamp of `w2`.
    pub fn concat(&self, other: &TimedWord) -> Result<TimedWord, TimeError> {
        if self.last_time() > other.first_time() {
            return Err(TimeError::ConcatOrder {
                left_end: Box::new(self.last_time().clone()),
                right_start: Box::new(other.first_time().clone()),
            });
        }
        let mut events = self.events.clone();
        events.extend(other.events.iter().cloned());
        Ok(TimedWord { events })
    }
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.events.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}@{}", e.symbol, e.time)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            write!(f, "{e:?}")?;
        }
        Ok(())
    }
}
