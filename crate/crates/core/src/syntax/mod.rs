//! Text formats: timed words, formulas, automata, channel machines,
//! computations and parameter valuations.
//!
//! Every `write_*` function produces text that the matching `parse_*`
//! function reads back to an equal value.

mod formula;
mod machine;
mod pta;
mod word;

use std::fmt;

pub use formula::parse_formula;
pub use machine::{parse_computation, parse_machine, write_computation, write_machine, MachineText};
pub use pta::{parse_pta, write_pta};
pub use word::{parse_valuation, parse_word, write_word};

/// A syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    /// Error at byte offset `at` of `text`.
    pub(crate) fn at(text: &str, at: usize, message: impl Into<String>) -> Self {
        let before = &text[..at.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError::new(line, column, message)
    }

    /// Shifts a single-line error onto line `line`, starting at column `column`.
    pub(crate) fn relocate(mut self, line: usize, column: usize) -> Self {
        if self.line == 1 {
            self.column += column - 1;
        }
        self.line += line - 1;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Lines of a line-oriented format: 1-based line number, the column where
/// the content starts, and the trimmed content. Blank lines and `//`
/// comments are skipped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let trimmed = raw.trim_start();
        let column = raw.len() - trimmed.len() + 1;
        let content = trimmed.trim_end();
        if content.is_empty() || content.starts_with("//") {
            None
        } else {
            Some((k + 1, column, content))
        }
    })
}

/// Whitespace-separated tokens with their byte offsets.
pub(crate) fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
}
