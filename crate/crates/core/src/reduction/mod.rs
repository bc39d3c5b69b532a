//! The automaton `A_C` and formula `φ_C` built from a channel machine, and
//! bounded checks of the correspondence between them.

mod automaton;
mod formula;
mod verify;

use std::collections::BTreeSet;
use std::io;
use std::path::{Path, PathBuf};

use crate::channel::{ChannelError, ChannelMachine};
use crate::encoding::{EncodingAlphabet, EncodingError};
use crate::mtl::Formula;
use crate::pta::{Pta, PtaError};
use crate::syntax::write_pta;
use crate::time::Symbol;

pub use automaton::{build_automaton, CLOCK, PARAM};
pub use formula::{build_formula, formula_conjuncts, Conjunct};
pub use verify::{
    check_theorem, insertion_mutants, verify_backward, verify_forward, Assertion, BackwardReport,
    ForwardReport, MutantReport, TheoremReport, TheoremVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("target state `{0}` is not a state of the machine")]
    UnknownTarget(String),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Pta(#[from] PtaError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("reduction soundness failure: {0}")]
    Soundness(String),
}

/// `A_C`, `φ_C` and `Σ_C` for one machine and target state.
#[derive(Debug, Clone)]
pub struct ReductionBundle {
    pub automaton: Pta,
    pub formula: Formula,
    pub alphabet: BTreeSet<Symbol>,
    pub target: String,
}

impl ReductionBundle {
    pub fn new(machine: &ChannelMachine, target: &str) -> Result<Self, ReductionError> {
        Ok(ReductionBundle {
            automaton: build_automaton(machine, target)?,
            formula: build_formula(machine, target)?,
            alphabet: EncodingAlphabet::new(machine)?.symbols(),
            target: target.to_string(),
        })
    }

    /// The automaton, formula and alphabet as text.
    pub fn render(&self) -> [String; 3] {
        let alphabet: Vec<&str> = self.alphabet.iter().map(Symbol::as_str).collect();
        [
            write_pta(&self.automaton),
            format!("{}\n", self.formula),
            format!("{}\n", alphabet.join(" ")),
        ]
    }

    /// Writes `<base>.pta`, `<base>.mtl` and `<base>.alphabet`.
    pub fn write_files(&self, base: &Path) -> io::Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for (ext, text) in ["pta", "mtl", "alphabet"].into_iter().zip(self.render()) {
            let mut name = base.as_os_str().to_owned();
            name.push(".");
            name.push(ext);
            let path = PathBuf::from(name);
            std::fs::write(&path, text)?;
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::samples::single_message;
    use crate::syntax::{parse_formula, parse_pta};

    #[test]
    fn bundle_renders_parseable_text() {
        let b = ReductionBundle::new(&single_message(), "s2").unwrap();
        let [pta, mtl, alphabet] = b.render();
        assert_eq!(write_pta(&parse_pta(&pta).unwrap()), pta);
        assert_eq!(parse_formula(&mtl).unwrap(), b.formula);
        assert_eq!(alphabet.split_whitespace().count(), 9);
        assert!(b.formula.atoms().is_subset(&b.alphabet));
    }
}
