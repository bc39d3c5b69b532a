//! Channel machines over one unbounded fifo channel, with exact steps `→` and
//! insertion-error steps `⇝`.

mod computation;
mod machine;
pub mod samples;
mod search;

pub use computation::{max_channel, Computation};
pub use machine::{subword, ChannelMachine, Configuration, Label, Transition};
pub use search::{enumerate_error_free, search_error_free, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChannelError {
    #[error("undeclared {kind} `{name}`")]
    Undeclared { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("step {step} is not a transition of the machine: {detail}")]
    InvalidStep { step: usize, detail: String },
}
