use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::ChannelError;
use crate::time::Symbol;

/// A transition label: `m!`, `m?` or `ε`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Label {
    Send(Symbol),
    Recv(Symbol),
    Eps,
}

impl Label {
    pub fn message(&self) -> Option<&Symbol> {
        match self {
            Label::Send(m) | Label::Recv(m) => Some(m),
            Label::Eps => None,
        }
    }

    /// The label as a letter of the encoding alphabet.
    pub fn symbol(&self) -> Symbol {
        Symbol::from(self.to_string())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Send(m) => write!(f, "{m}!"),
            Label::Recv(m) => write!(f, "{m}?"),
            Label::Eps => f.write_str("eps"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Transition {
    pub source: String,
    pub label: Label,
    pub target: String,
}

impl Transition {
    pub fn new(source: impl Into<String>, label: Label, target: impl Into<String>) -> Self {
        Transition {
            source: source.into(),
            label,
            target: target.into(),
        }
    }
}

/// `(s, x)`: a control state and the channel content, head first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Configuration {
    pub state: String,
    pub channel: Vec<Symbol>,
}

impl Configuration {
    pub fn new(state: impl Into<String>, channel: impl IntoIterator<Item = impl Into<Symbol>>) -> Self {
        Configuration {
            state: state.into(),
            channel: channel.into_iter().map(Into::into).collect(),
        }
    }

    pub fn empty(state: impl Into<String>) -> Self {
        Configuration {
            state: state.into(),
            channel: Vec::new(),
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ", self.state)?;
        if self.channel.is_empty() {
            f.write_str("ε")?;
        }
        for m in &self.channel {
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

/// `x ≤ y`: `x` embeds into `y` by a strictly increasing index map.
pub fn subword(x: &[Symbol], y: &[Symbol]) -> bool {
    let mut rest = y.iter();
    x.iter().all(|a| rest.by_ref().any(|b| b == a))
}

/// `C = (S, s_I, M, Δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChannelMachine {
    states: Vec<String>,
    initial: String,
    messages: Vec<Symbol>,
    transitions: Vec<Transition>,
    #[serde(skip)]
    by_source: BTreeMap<String, Vec<usize>>,
}

impl ChannelMachine {
    pub fn new(
        states: impl IntoIterator<Item = impl Into<String>>,
        initial: impl Into<String>,
        messages: impl IntoIterator<Item = impl Into<Symbol>>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self, ChannelError> {
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        let messages: Vec<Symbol> = messages.into_iter().map(Into::into).collect();
        let initial = initial.into();
        let mut seen = BTreeSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(ChannelError::Duplicate {
                    kind: "state",
                    name: s.clone(),
                });
            }
        }
        let mut seen_m = BTreeSet::new();
        for m in &messages {
            if !seen_m.insert(m) {
                return Err(ChannelError::Duplicate {
                    kind: "message",
                    name: m.to_string(),
                });
            }
        }
        let undeclared = |kind: &'static str, name: &str| ChannelError::Undeclared {
            kind,
            name: name.to_string(),
        };
        if !seen.contains(initial.as_str()) {
            return Err(undeclared("state", &initial));
        }
        let mut unique = BTreeSet::new();
        let mut kept = Vec::new();
        for t in transitions {
            for s in [&t.source, &t.target] {
                if !seen.contains(s.as_str()) {
                    return Err(undeclared("state", s));
                }
            }
            if let Some(m) = t.label.message() {
                if !seen_m.contains(m) {
                    return Err(undeclared("message", m.as_str()));
                }
            }
            if unique.insert(t.clone()) {
                kept.push(t);
            }
        }
        let mut by_source: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (k, t) in kept.iter().enumerate() {
            by_source.entry(t.source.clone()).or_default().push(k);
        }
        Ok(ChannelMachine {
            states,
            initial,
            messages,
            transitions: kept,
            by_source,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    pub fn messages(&self) -> &[Symbol] {
        &self.messages
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn has_state(&self, s: &str) -> bool {
        self.states.iter().any(|x| x == s)
    }

    /// `L = {m!, m? | m ∈ M} ∪ {ε}`.
    pub fn labels(&self) -> Vec<Label> {
        let mut out: Vec<Label> = self
            .messages
            .iter()
            .flat_map(|m| [Label::Send(m.clone()), Label::Recv(m.clone())])
            .collect();
        out.push(Label::Eps);
        out
    }

    /// Transitions leaving `state`.
    pub fn outgoing<'a>(&'a self, state: &str) -> impl Iterator<Item = &'a Transition> + 'a {
        self.by_source
            .get(state)
            .into_iter()
            .flatten()
            .map(|&k| &self.transitions[k])
    }

    pub fn has_transition(&self, source: &str, label: &Label, target: &str) -> bool {
        self.outgoing(source)
            .any(|t| t.label == *label && t.target == target)
    }

    /// A copy of the machine without the given transition.
    pub fn without_transition(&self, t: &Transition) -> ChannelMachine {
        ChannelMachine::new(
            self.states.clone(),
            self.initial.clone(),
            self.messages.clone(),
            self.transitions.iter().filter(|x| *x != t).cloned(),
        )
        .expect("removing a transition keeps the machine well formed")
    }

    /// All `c'` with `⟨c, l, c'⟩ ∈ →`.
    pub fn step_exact(&self, c: &Configuration, l: &Label) -> BTreeSet<Configuration> {
        let Some(x) = apply_exact(&c.channel, l) else {
            return BTreeSet::new();
        };
        self.outgoing(&c.state)
            .filter(|t| t.label == *l)
            .map(|t| Configuration {
                state: t.target.clone(),
                channel: x.clone(),
            })
            .collect()
    }

    /// Every exact successor of `c` under any label, with its transition.
    pub fn successors<'a>(
        &'a self,
        c: &'a Configuration,
    ) -> impl Iterator<Item = (&'a Transition, Configuration)> + 'a {
        self.outgoing(&c.state).filter_map(move |t| {
            apply_exact(&c.channel, &t.label).map(|channel| {
                (
                    t,
                    Configuration {
                        state: t.target.clone(),
                        channel,
                    },
                )
            })
        })
    }

    /// `⟨c1, l, c2⟩ ∈ ⇝`.
    ///
    /// With `(s, l, s') ∈ Δ` the relation reduces to: `x1·m ≤ x1'` for `m!`,
    /// `x1 ≤ m·x1'` for `m?`, and `x1 = ε` for `ε`.
    pub fn step_insertion(&self, c1: &Configuration, l: &Label, c2: &Configuration) -> bool {
        if !self.has_transition(&c1.state, l, &c2.state) {
            return false;
        }
        match l {
            Label::Send(m) => {
                let mut x = c1.channel.clone();
                x.push(m.clone());
                subword(&x, &c2.channel)
            }
            Label::Recv(m) => {
                let mut y = Vec::with_capacity(c2.channel.len() + 1);
                y.push(m.clone());
                y.extend(c2.channel.iter().cloned());
                subword(&c1.channel, &y)
            }
            Label::Eps => c1.channel.is_empty(),
        }
    }
}

/// Channel content after an exact step, if the step is enabled.
fn apply_exact(x: &[Symbol], l: &Label) -> Option<Vec<Symbol>> {
    match l {
        Label::Send(m) => {
            let mut out = x.to_vec();
            out.push(m.clone());
            Some(out)
        }
        Label::Recv(m) => (x.first() == Some(m)).then(|| x[1..].to_vec()),
        Label::Eps => x.is_empty().then(Vec::new),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::samples::single_message;

    fn sym(s: &[&str]) -> Vec<Symbol> {
        s.iter().map(|&x| Symbol::from(x)).collect()
    }

    fn send() -> Label {
        Label::Send("m".into())
    }

    fn recv() -> Label {
        Label::Recv("m".into())
    }

    #[test]
    fn subword_cases() {
        assert!(subword(&[], &sym(&["m"])));
        assert!(subword(&sym(&["m1", "m2"]), &sym(&["m1", "m3", "m2"])));
        assert!(!subword(&sym(&["m2", "m1"]), &sym(&["m1", "m2"])));
    }

    #[test]
    fn exact_steps() {
        let c = single_message();
        assert_eq!(
            c.step_exact(&Configuration::empty("s0"), &send()),
            BTreeSet::from([Configuration::new("s1", ["m"])])
        );
        assert_eq!(
            c.step_exact(&Configuration::new("s1", ["m"]), &recv()),
            BTreeSet::from([Configuration::empty("s2")])
        );
        assert!(c.step_exact(&Configuration::empty("s1"), &recv()).is_empty());
    }

    #[test]
    fn insertion_steps() {
        let c = single_message();
        assert!(c.step_insertion(&Configuration::empty("s0"), &send(), &Configuration::new("s1", ["m"])));
        assert!(c.step_insertion(&Configuration::empty("s1"), &recv(), &Configuration::empty("s2")));
        assert!(!c.step_insertion(&Configuration::new("s0", ["m"]), &send(), &Configuration::empty("s1")));
        // wrong target state
        assert!(!c.step_insertion(&Configuration::empty("s0"), &send(), &Configuration::new("s2", ["m"])));
    }

    #[test]
    fn labels_include_eps() {
        let c = single_message();
        let labels: Vec<String> = c.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, ["m!", "m?", "eps"]);
    }

    #[test]
    fn rejects_unknown_names() {
        let t = Transition::new("s0", Label::Send("z".into()), "s0");
        assert!(matches!(
            ChannelMachine::new(["s0"], "s0", ["m"], [t]),
            Err(ChannelError::Undeclared { kind: "message", .. })
        ));
        assert!(matches!(
            ChannelMachine::new(["s0"], "s9", ["m"], []),
            Err(ChannelError::Undeclared { kind: "state", .. })
        ));
    }
}
