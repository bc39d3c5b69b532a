//! ```text
//! states: s0 s1 s2
//! init: s0
//! messages: m
//! trans: s0 m! s1
//! trans: s1 m? s2
//! final: s2
//! ```
//!
//! Computations are written as configurations `state[m1,m2]` alternating
//! with labels: `s0[] m! s1[m] m? s2[]`.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{content_lines, tokens, ParseError};
use crate::channel::{ChannelMachine, Computation, Configuration, Label, Transition};
use crate::time::Symbol;

/// A parsed machine with its optional `final:` state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineText {
    pub machine: ChannelMachine,
    pub target: Option<String>,
}

pub(crate) fn parse_label(tok: &str) -> Result<Label, String> {
    if tok == "eps" {
        return Ok(Label::Eps);
    }
    let bad = || format!("expected `m!`, `m?` or `eps`, found `{tok}`");
    if let Some(m) = tok.strip_suffix('!').filter(|m| !m.is_empty()) {
        Ok(Label::Send(m.into()))
    } else if let Some(m) = tok.strip_suffix('?').filter(|m| !m.is_empty()) {
        Ok(Label::Recv(m.into()))
    } else {
        Err(bad())
    }
}

/// Parses the channel machine text format.
pub fn parse_machine(text: &str) -> Result<MachineText, ParseError> {
    let mut states = None;
    let mut init = None;
    let mut messages = None;
    let mut target = None;
    let mut transitions = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, column, content) in content_lines(text) {
        let Some((key, rest)) = content.split_once(':') else {
            return Err(ParseError::new(line, column, "expected `key: value`"));
        };
        let rest_col = column + key.len() + 1;
        let at = |off: usize, msg: String| ParseError::at(rest, off, msg).relocate(line, rest_col);
        let list: Vec<(usize, &str)> = tokens(rest).collect();
        let key = key.trim();
        if key != "trans" && !seen.insert(key.to_string()) {
            return Err(ParseError::new(line, column, format!("`{key}:` appears twice")));
        }
        let single = |what: &str| -> Result<String, ParseError> {
            match list.as_slice() {
                [(_, s)] => Ok(s.to_string()),
                _ => Err(ParseError::new(line, rest_col, format!("expected exactly one {what}"))),
            }
        };
        match key {
            "states" => states = Some(list.iter().map(|(_, s)| s.to_string()).collect::<Vec<_>>()),
            "messages" => messages = Some(list.iter().map(|(_, s)| Symbol::from(*s)).collect::<Vec<_>>()),
            "init" => init = Some(single("initial state")?),
            "final" => target = Some(single("final state")?),
            "trans" => {
                let [(_, src), (lo, label), (_, dst)] = list.as_slice() else {
                    return Err(ParseError::new(line, rest_col, "expected `<source> <label> <target>`"));
                };
                let label = parse_label(label).map_err(|e| at(*lo, e))?;
                transitions.push(Transition::new(*src, label, *dst));
            }
            other => return Err(ParseError::new(line, column, format!("unknown header `{other}:`"))),
        }
    }
    let last = text.lines().count().max(1);
    let missing = |what: &str| ParseError::new(last, 1, format!("missing `{what}:` line"));
    let machine = ChannelMachine::new(
        states.ok_or_else(|| missing("states"))?,
        init.ok_or_else(|| missing("init"))?,
        messages.unwrap_or_default(),
        transitions,
    )
    .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    if let Some(t) = &target {
        if !machine.has_state(t) {
            return Err(ParseError::new(1, 1, format!("final state `{t}` is not declared")));
        }
    }
    Ok(MachineText { machine, target })
}

/// Renders `machine` in the format read by [`parse_machine`].
pub fn write_machine(machine: &ChannelMachine, target: Option<&str>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", machine.states().join(" "));
    let _ = writeln!(out, "init: {}", machine.initial());
    let msgs: Vec<&str> = machine.messages().iter().map(Symbol::as_str).collect();
    let _ = writeln!(out, "messages: {}", msgs.join(" "));
    for t in machine.transitions() {
        let _ = writeln!(out, "trans: {} {} {}", t.source, t.label, t.target);
    }
    if let Some(t) = target {
        let _ = writeln!(out, "final: {t}");
    }
    out
}

fn parse_configuration(tok: &str) -> Result<Configuration, String> {
    let (state, rest) = tok
        .split_once('[')
        .ok_or_else(|| format!("expected `state[m1,m2,...]`, found `{tok}`"))?;
    let inner = rest
        .strip_suffix(']')
        .ok_or_else(|| format!("missing `]` in `{tok}`"))?;
    if state.is_empty() {
        return Err(format!("empty state name in `{tok}`"));
    }
    let channel: Vec<&str> = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').collect()
    };
    if channel.iter().any(|m| m.is_empty()) {
        return Err(format!("empty message in `{tok}`"));
    }
    Ok(Configuration::new(state, channel))
}

/// Parses `s0[] m! s1[m] m? s2[]`.
pub fn parse_computation(text: &str) -> Result<Computation, ParseError> {
    let toks: Vec<(usize, &str)> = tokens(text).collect();
    let Some((first_at, first)) = toks.first() else {
        return Err(ParseError::new(1, 1, "expected a configuration"));
    };
    let config = |at: usize, tok: &str| parse_configuration(tok).map_err(|e| ParseError::at(text, at, e));
    let mut gamma = Computation::new(config(*first_at, first)?);
    let mut rest = toks[1..].chunks(2);
    for pair in rest.by_ref() {
        let [(la, label), (ca, c)] = pair else {
            return Err(ParseError::at(text, pair[0].0 + pair[0].1.len(), "expected a configuration after the label"));
        };
        let label = parse_label(label).map_err(|e| ParseError::at(text, *la, e))?;
        gamma.push(label, config(*ca, c)?);
    }
    Ok(gamma)
}

/// Renders `gamma` in the format read by [`parse_computation`].
pub fn write_computation(gamma: &Computation) -> String {
    let config = |c: &Configuration| {
        let msgs: Vec<&str> = c.channel.iter().map(Symbol::as_str).collect();
        format!("{}[{}]", c.state, msgs.join(","))
    };
    let mut out = config(&gamma.start);
    for (l, c) in &gamma.steps {
        let _ = write!(out, " {l} {}", config(c));
    }
    out
}
