//! Small machines used by tests, docs and the CLI.

use super::machine::{ChannelMachine, Label, Transition};

fn send(m: &str) -> Label {
    Label::Send(m.into())
}

fn recv(m: &str) -> Label {
    Label::Recv(m.into())
}

/// `s0 -m!-> s1 -m?-> s2`.
pub fn single_message() -> ChannelMachine {
    ChannelMachine::new(
        ["s0", "s1", "s2"],
        "s0",
        ["m"],
        [
            Transition::new("s0", send("m"), "s1"),
            Transition::new("s1", recv("m"), "s2"),
        ],
    )
    .expect("sample machine is well formed")
}

/// Sends `a⁺b`, receives `a⁺b`, then returns to `q0` on an empty channel.
pub fn two_message() -> ChannelMachine {
    ChannelMachine::new(
        ["q0", "q1", "q2", "q3", "q4"],
        "q0",
        ["a", "b"],
        [
            Transition::new("q0", send("a"), "q1"),
            Transition::new("q1", send("a"), "q1"),
            Transition::new("q1", send("b"), "q2"),
            Transition::new("q2", recv("a"), "q3"),
            Transition::new("q3", recv("a"), "q3"),
            Transition::new("q3", recv("b"), "q4"),
            Transition::new("q4", Label::Eps, "q0"),
        ],
    )
    .expect("sample machine is well formed")
}
