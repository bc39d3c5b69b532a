//! Timed-word encodings of channel-machine computations.
//!
//! A configuration `(s, x)` occupies two time units: the state symbol at some
//! time `T`, the channel slots (messages, then padding hashes) strictly inside
//! `(T, T+1)`, and the label of the next transition at `T+1`. The next state
//! sits at `T+2`; the target state is closed by `*` at `T+1`.

mod align;
mod block;
mod check;
pub(crate) mod codec;

use std::collections::{BTreeMap, BTreeSet};

pub use align::{frac_alignment, inject_insertion, IndexMap};
pub use block::{decompose, max_width, n_prefix, ConfigBlock, Trailer};
pub use check::{check_membership, diagnose, Violation};
pub use codec::{decode, encode, EncodingLayout};

use crate::channel::{ChannelMachine, Label};
use crate::rational::Rational;
use crate::time::Symbol;

/// The padding symbol.
pub const HASH: &str = "#";
/// The end marker `⋆`.
pub const STAR: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("symbol `{0}` is used for more than one purpose in the encoding alphabet")]
    Collision(String),
    #[error("target state `{0}` is not a state of the machine")]
    UnknownTarget(String),
    #[error("event {index}: {reason}")]
    Structure { index: usize, reason: String },
    #[error("invalid layout: {0}")]
    Layout(String),
    #[error("cannot encode: {0}")]
    Precondition(String),
    #[error("word is not in L(C,n): {0}")]
    NotMember(Violation),
    #[error("word contains insertion errors: block width {max_width} exceeds n = {n}")]
    Insertion { max_width: usize, n: usize },
    #[error("block {block}: offset {offset} has no copy in the next block")]
    Alignment { block: usize, offset: Rational },
    #[error("cannot inject: {0}")]
    Injection(String),
}

/// What a letter of `Σ_C` stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolClass {
    State,
    Message,
    Hash,
    Label(Label),
    Star,
}

/// `Σ_C = S ∪ M ∪ L ∪ {#, ⋆}` with the role of every letter.
#[derive(Debug, Clone)]
pub struct EncodingAlphabet {
    classes: BTreeMap<Symbol, SymbolClass>,
}

impl EncodingAlphabet {
    pub fn new(machine: &ChannelMachine) -> Result<Self, EncodingError> {
        let mut classes = BTreeMap::new();
        let mut add = |s: Symbol, c: SymbolClass| {
            if classes.insert(s.clone(), c).is_some() {
                Err(EncodingError::Collision(s.to_string()))
            } else {
                Ok(())
            }
        };
        add(Symbol::from(HASH), SymbolClass::Hash)?;
        add(Symbol::from(STAR), SymbolClass::Star)?;
        for s in machine.states() {
            add(Symbol::from(s.as_str()), SymbolClass::State)?;
        }
        for m in machine.messages() {
            add(m.clone(), SymbolClass::Message)?;
        }
        for l in machine.labels() {
            add(l.symbol(), SymbolClass::Label(l))?;
        }
        Ok(EncodingAlphabet { classes })
    }

    pub fn classify(&self, s: &Symbol) -> Option<&SymbolClass> {
        self.classes.get(s)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.classes.keys().cloned().collect()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.classes.contains_key(s)
    }
}

/// `Σ_C` as a sorted set.
pub fn encoding_alphabet(machine: &ChannelMachine) -> Result<BTreeSet<Symbol>, EncodingError> {
    Ok(EncodingAlphabet::new(machine)?.symbols())
}
