//! Bounded breadth-first search over exact steps.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::computation::Computation;
use super::machine::{ChannelMachine, Configuration, Label};
use super::ChannelError;

/// Result of a bounded reachability query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    /// A shortest error-free computation ending in the target state.
    Found(Computation),
    /// The explored space was closed under steps and never hit the target.
    Unreachable,
    /// Some configuration was cut off by a bound before the target was hit.
    Inconclusive,
}

impl SearchOutcome {
    pub fn computation(&self) -> Option<&Computation> {
        match self {
            SearchOutcome::Found(g) => Some(g),
            _ => None,
        }
    }
}

/// Shortest error-free computation from `(s_I, ε)` to control state `target`,
/// using at most `max_steps` steps and channel contents of length at most
/// `max_channel_len`.
pub fn search_error_free(
    machine: &ChannelMachine,
    target: &str,
    max_steps: usize,
    max_channel_len: usize,
) -> Result<SearchOutcome, ChannelError> {
    if !machine.has_state(target) {
        return Err(ChannelError::Undeclared {
            kind: "state",
            name: target.to_string(),
        });
    }
    let start = Configuration::empty(machine.initial());
    let mut parent: BTreeMap<Configuration, (Configuration, Label)> = BTreeMap::new();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut layer = vec![start];
    let mut truncated = false;
    for depth in 0..=max_steps {
        if let Some(hit) = layer.iter().find(|c| c.state == target) {
            return Ok(SearchOutcome::Found(rebuild(&parent, hit)));
        }
        if layer.is_empty() {
            break;
        }
        if depth == max_steps {
            truncated = true;
            break;
        }
        let mut next = Vec::new();
        for c in &layer {
            for (t, succ) in machine.successors(c) {
                if succ.channel.len() > max_channel_len {
                    truncated = true;
                    continue;
                }
                if seen.insert(succ.clone()) {
                    parent.insert(succ.clone(), (c.clone(), t.label.clone()));
                    next.push(succ);
                }
            }
        }
        next.sort_by(|a, b| a.channel.len().cmp(&b.channel.len()).then_with(|| a.cmp(b)));
        layer = next;
    }
    Ok(if truncated {
        SearchOutcome::Inconclusive
    } else {
        SearchOutcome::Unreachable
    })
}

fn rebuild(parent: &BTreeMap<Configuration, (Configuration, Label)>, end: &Configuration) -> Computation {
    let mut rev = Vec::new();
    let mut cur = end.clone();
    while let Some((prev, l)) = parent.get(&cur) {
        rev.push((l.clone(), cur));
        cur = prev.clone();
    }
    rev.reverse();
    Computation {
        start: cur,
        steps: rev,
    }
}

/// Every error-free computation from `(s_I, ε)` whose last configuration is
/// the first one in state `target`, within the same bounds as
/// [`search_error_free`]. Sorted by length, then lexicographically.
pub fn enumerate_error_free(
    machine: &ChannelMachine,
    target: &str,
    max_steps: usize,
    max_channel_len: usize,
) -> Result<Vec<Computation>, ChannelError> {
    if !machine.has_state(target) {
        return Err(ChannelError::Undeclared {
            kind: "state",
            name: target.to_string(),
        });
    }
    fn dfs(
        machine: &ChannelMachine,
        target: &str,
        budget: usize,
        max_channel_len: usize,
        current: &mut Computation,
        out: &mut Vec<Computation>,
    ) {
        let last = current.last().clone();
        if last.state == target {
            out.push(current.clone());
            return;
        }
        if budget == 0 {
            return;
        }
        for (t, succ) in machine.successors(&last) {
            if succ.channel.len() > max_channel_len {
                continue;
            }
            current.push(t.label.clone(), succ);
            dfs(machine, target, budget - 1, max_channel_len, current, out);
            current.steps.pop();
        }
    }
    let mut out = Vec::new();
    let mut current = Computation::new(Configuration::empty(machine.initial()));
    dfs(machine, target, max_steps, max_channel_len, &mut current, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(out)
}
