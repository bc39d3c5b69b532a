use std::fmt;

use serde::Serialize;

use super::machine::{ChannelMachine, Configuration, Label};
use super::ChannelError;

/// `γ = Π⟨(s_{i-1}, x_{i-1}), l_i, (s_i, x_i)⟩`, stored as the first
/// configuration and the `(l_i, (s_i, x_i))` steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Computation {
    pub start: Configuration,
    pub steps: Vec<(Label, Configuration)>,
}

impl Computation {
    pub fn new(start: Configuration) -> Self {
        Computation {
            start,
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, label: Label, next: Configuration) {
        self.steps.push((label, next));
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> &Configuration {
        self.steps.last().map_or(&self.start, |(_, c)| c)
    }

    /// `(s_0, x_0), …, (s_k, x_k)`.
    pub fn configurations(&self) -> impl Iterator<Item = &Configuration> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|(_, c)| c))
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.steps.iter().map(|(l, _)| l)
    }

    /// `max(γ)`: the longest channel content along the computation.
    pub fn max_channel(&self) -> usize {
        self.configurations()
            .map(|c| c.channel.len())
            .max()
            .unwrap_or(0)
    }

    /// Every step must be in `⇝`.
    pub fn validate(&self, machine: &ChannelMachine) -> Result<(), ChannelError> {
        let mut prev = &self.start;
        for (k, (l, next)) in self.steps.iter().enumerate() {
            if !machine.step_insertion(prev, l, next) {
                return Err(ChannelError::InvalidStep {
                    step: k + 1,
                    detail: format!("{prev} -{l}-> {next}"),
                });
            }
            prev = next;
        }
        Ok(())
    }

    /// Whether every step is in `→`. Fails on a computation with a step
    /// outside `⇝`.
    pub fn is_error_free(&self, machine: &ChannelMachine) -> Result<bool, ChannelError> {
        self.validate(machine)?;
        let mut prev = &self.start;
        for (l, next) in &self.steps {
            if !machine.step_exact(prev, l).contains(next) {
                return Ok(false);
            }
            prev = next;
        }
        Ok(true)
    }
}

impl fmt::Display for Computation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for (l, c) in &self.steps {
            write!(f, " -{l}-> {c}")?;
        }
        Ok(())
    }
}

/// `max(γ)`.
pub fn max_channel(gamma: &Computation) -> usize {
    gamma.max_channel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::samples::single_message;

    fn gamma(parts: &[(&str, &[&str])]) -> Computation {
        let labels = [Label::Send("m".into()), Label::Recv("m".into())];
        let mut it = parts.iter();
        let (s, x) = it.next().unwrap();
        let mut g = Computation::new(Configuration::new(*s, x.iter().copied()));
        for (k, (s, x)) in it.enumerate() {
            let l = if parts[k + 1].0 == "s2" { labels[1].clone() } else { labels[0].clone() };
            g.push(l, Configuration::new(*s, x.iter().copied()));
        }
        g
    }

    #[test]
    fn exact_computation_is_error_free() {
        let g = gamma(&[("s0", &[]), ("s1", &["m"]), ("s2", &[])]);
        assert_eq!(g.is_error_free(&single_message()), Ok(true));
        assert_eq!(g.max_channel(), 1);
    }

    #[test]
    fn inserted_message_is_an_error() {
        let g = gamma(&[("s0", &[]), ("s1", &["m", "m"]), ("s2", &["m"])]);
        assert_eq!(g.is_error_free(&single_message()), Ok(false));
    }

    #[test]
    fn single_configuration_is_error_free() {
        let g = Computation::new(Configuration::empty("s0"));
        assert_eq!(g.is_error_free(&single_message()), Ok(true));
        assert_eq!(max_channel(&g), 0);
    }

    #[test]
    fn invalid_step_is_reported() {
        let g = gamma(&[("s0", &["m"]), ("s1", &[])]);
        assert!(matches!(
            g.is_error_free(&single_message()),
            Err(ChannelError::InvalidStep { step: 1, .. })
        ));
    }

    #[test]
    fn max_channel_counts_growth() {
        let c = crate::channel::ChannelMachine::new(
            ["s0", "s1"],
            "s0",
            ["m"],
            [
                crate::channel::Transition::new("s0", Label::Send("m".into()), "s1"),
                crate::channel::Transition::new("s1", Label::Send("m".into()), "s1"),
            ],
        )
        .unwrap();
        let mut g = Computation::new(Configuration::empty("s0"));
        g.push(Label::Send("m".into()), Configuration::new("s1", ["m"]));
        g.push(Label::Send("m".into()), Configuration::new("s1", ["m", "m"]));
        assert_eq!(g.is_error_free(&c), Ok(true));
        assert_eq!(g.max_channel(), 2);
    }
}
