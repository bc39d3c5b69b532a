use std::collections::BTreeSet;

use serde::Serialize;

use crate::channel::{search_error_free, ChannelMachine, Computation, SearchOutcome};
use crate::encoding::{
    check_membership, decode, decompose, encode, inject_insertion, max_width, EncodingError,
    EncodingLayout, HASH,
};
use crate::mtl::CompiledFormula;
use crate::pta::{ParameterValuation, Pta};
use crate::rational::Rational;
use crate::time::TimedWord;

use super::{build_automaton, build_formula, ReductionError, PARAM};

/// One named check and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub holds: bool,
}

impl Assertion {
    fn new(name: &str, holds: bool) -> Self {
        Assertion {
            name: name.to_string(),
            holds,
        }
    }
}

fn all_hold(assertions: &[Assertion]) -> bool {
    assertions.iter().all(|a| a.holds)
}

fn valuation(p: Rational) -> ParameterValuation {
    ParameterValuation::new()
        .with(PARAM, p)
        .expect("1/(n+1) is non-negative")
}

fn cadence(n: usize) -> Rational {
    Rational::new(1, n as i64 + 1)
}

/// The left-to-right direction on one computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForwardReport {
    pub n: usize,
    pub rho: Rational,
    pub word: TimedWord,
    /// Set when `s_I` is the target and the computation is empty. `A_C`
    /// needs at least one label after the prefix, so its check is skipped.
    pub degenerate: bool,
    pub assertions: Vec<Assertion>,
}

impl ForwardReport {
    pub fn passed(&self) -> bool {
        all_hold(&self.assertions)
    }
}

/// Encodes `gamma` with `n = max(γ)`, `δ_i = i/(n+1)` and checks the word
/// against `L(C, n)`, `φ_C` and `A_C` at `p = 1/(n+1)`.
pub fn verify_forward(
    machine: &ChannelMachine,
    target: &str,
    gamma: &Computation,
) -> Result<ForwardReport, ReductionError> {
    let a = build_automaton(machine, target)?;
    let phi = CompiledFormula::new(&build_formula(machine, target)?);
    forward_with(machine, target, gamma, &a, &phi)
}

fn forward_with(
    machine: &ChannelMachine,
    target: &str,
    gamma: &Computation,
    a: &Pta,
    phi: &CompiledFormula,
) -> Result<ForwardReport, ReductionError> {
    let n = gamma.max_channel();
    let word = encode(machine, target, gamma, &EncodingLayout::uniform(n)).map_err(|e| match e {
        EncodingError::Precondition(s) => ReductionError::Precondition(s),
        other => other.into(),
    })?;
    let rho = cadence(n);
    let degenerate = gamma.is_empty();
    let mut assertions = vec![
        Assertion::new("in L(C,n)", check_membership(&word, machine, target, n)),
        Assertion::new("satisfies phi_C", phi.satisfies(&word)),
    ];
    if !degenerate {
        let accepted = a.membership(&valuation(rho.clone()), &word)?;
        assertions.push(Assertion::new("accepted by A_C", accepted));
    }
    let report = ForwardReport {
        n,
        rho,
        word,
        degenerate,
        assertions,
    };
    if !report.passed() {
        let failed: Vec<&str> = report
            .assertions
            .iter()
            .filter(|a| !a.holds)
            .map(|a| a.name.as_str())
            .collect();
        return Err(ReductionError::Soundness(failed.join(", ")));
    }
    Ok(report)
}

/// The right-to-left direction on one word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BackwardReport {
    Applicable {
        assertions: Vec<Assertion>,
        decoded: Option<Computation>,
    },
    Inapplicable {
        reason: String,
    },
}

impl BackwardReport {
    pub fn passed(&self) -> bool {
        matches!(self, BackwardReport::Applicable { assertions, .. } if all_hold(assertions))
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self, BackwardReport::Applicable { .. })
    }
}

/// For `w ∈ L(C, n)` accepted by `A_C` under `rho`, checks that
/// `rho(p) = 1/(n+1)`, that no block is wider than `n`, and that `w` decodes
/// to an error-free computation reaching `target`.
pub fn verify_backward(
    machine: &ChannelMachine,
    target: &str,
    w: &TimedWord,
    n: usize,
    rho: &ParameterValuation,
) -> Result<BackwardReport, ReductionError> {
    let a = build_automaton(machine, target)?;
    backward_with(machine, target, w, n, rho, &a)
}

fn backward_with(
    machine: &ChannelMachine,
    target: &str,
    w: &TimedWord,
    n: usize,
    rho: &ParameterValuation,
    a: &Pta,
) -> Result<BackwardReport, ReductionError> {
    if !check_membership(w, machine, target, n) {
        return Ok(BackwardReport::Inapplicable {
            reason: format!("word is not in L(C,{n})"),
        });
    }
    if !a.membership(rho, w)? {
        return Ok(BackwardReport::Inapplicable {
            reason: "word is not accepted by A_C under the valuation".into(),
        });
    }
    let p = rho.lookup(PARAM)?;
    let decoded = decode(w, machine, target).ok();
    let error_free = match &decoded {
        Some(g) => g.is_error_free(machine)? && g.last().state == target,
        None => false,
    };
    let assertions = vec![
        Assertion::new("p = 1/(n+1)", *p == cadence(n)),
        Assertion::new("max width = n", max_width(w, machine)? == n),
        Assertion::new("decodes to an error-free computation", error_free),
    ];
    Ok(BackwardReport::Applicable { assertions, decoded })
}

const FRACTIONS: [(i64, i64); 5] = [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4)];

/// Up to `limit` words obtained from `w` by [`inject_insertion`], spread
/// round-robin over blocks 2, 3, … and over points inside the gaps where a
/// hash may be added: after the last channel symbol and between two hashes.
pub fn insertion_mutants(
    machine: &ChannelMachine,
    w: &TimedWord,
    limit: usize,
) -> Result<Vec<TimedWord>, ReductionError> {
    let blocks = decompose(w, machine)?;
    let mut candidates: Vec<Vec<(usize, Rational)>> = Vec::new();
    for (k, b) in blocks.iter().enumerate().skip(1) {
        let mut gaps = Vec::new();
        let last = b.channel.last().map_or_else(Rational::zero, |(_, d)| d.clone());
        gaps.push((last, Rational::one()));
        for pair in b.channel.windows(2) {
            if pair[0].0.as_str() == HASH && pair[1].0.as_str() == HASH {
                gaps.push((pair[0].1.clone(), pair[1].1.clone()));
            }
        }
        let mut here = Vec::new();
        for (p, q) in FRACTIONS {
            for (lo, hi) in &gaps {
                here.push((k + 1, lo + &((hi - lo) * Rational::new(p, q))));
            }
        }
        candidates.push(here);
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let rounds = candidates.iter().map(Vec::len).max().unwrap_or(0);
    'outer: for i in 0..rounds {
        for list in &candidates {
            if out.len() >= limit {
                break 'outer;
            }
            let Some((block, offset)) = list.get(i) else {
                continue;
            };
            if let Ok(m) = inject_insertion(w, machine, *block, offset) {
                if seen.insert(m.clone()) {
                    out.push(m);
                }
            }
        }
    }
    Ok(out)
}

/// How one insertion mutant fared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutantReport {
    pub word: TimedWord,
    pub in_language: bool,
    pub satisfies: bool,
    /// Valuations `p = 1/k`, `k ≤ n+3`, under which `A_C` accepted.
    pub accepted_under: Vec<Rational>,
    pub backward: BackwardReport,
}

impl MutantReport {
    pub fn rejected(&self) -> bool {
        self.accepted_under.is_empty() && !self.backward.is_applicable()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremVerdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Outcome of [`check_theorem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub verdict: TheoremVerdict,
    pub search: SearchOutcome,
    pub forward: Option<ForwardReport>,
    pub backward: Option<BackwardReport>,
    pub mutants: Vec<MutantReport>,
    pub failures: Vec<String>,
}

/// Number of insertion mutants tried per witness.
pub const MUTANT_BATTERY: usize = 5;

/// Searches for an error-free computation to `target` within the bounds
/// and, if one exists, runs the forward check on it, the backward check on
/// its encoding, and a battery of insertion mutants that `A_C` must reject.
pub fn check_theorem(
    machine: &ChannelMachine,
    target: &str,
    max_steps: usize,
    max_channel_len: usize,
) -> Result<TheoremReport, ReductionError> {
    let a = build_automaton(machine, target)?;
    let phi = CompiledFormula::new(&build_formula(machine, target)?);
    let search = search_error_free(machine, target, max_steps, max_channel_len)?;
    let mut report = TheoremReport {
        verdict: TheoremVerdict::Inconclusive,
        search: search.clone(),
        forward: None,
        backward: None,
        mutants: Vec::new(),
        failures: Vec::new(),
    };
    let SearchOutcome::Found(gamma) = search else {
        return Ok(report);
    };
    let forward = match forward_with(machine, target, &gamma, &a, &phi) {
        Ok(f) => f,
        Err(ReductionError::Soundness(s)) => {
            report.failures.push(format!("forward: {s}"));
            report.verdict = TheoremVerdict::Fail;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let n = forward.n;
    let w = forward.word.clone();
    if !forward.degenerate {
        let rho = valuation(forward.rho.clone());
        let backward = backward_with(machine, target, &w, n, &rho, &a)?;
        if !backward.passed() {
            report.failures.push("backward check on the witness".into());
        }
        match &backward {
            BackwardReport::Applicable {
                decoded: Some(g), ..
            } if *g != gamma => report.failures.push("decoded witness differs".into()),
            _ => {}
        }
        report.backward = Some(backward);
        for m in insertion_mutants(machine, &w, MUTANT_BATTERY)? {
            let accepted_under = (1..=n as i64 + 3)
                .map(|k| Rational::new(1, k))
                .filter(|p| a.membership(&valuation(p.clone()), &m).unwrap_or(true))
                .collect();
            let mutant = MutantReport {
                in_language: check_membership(&m, machine, target, n),
                satisfies: phi.satisfies(&m),
                accepted_under,
                backward: backward_with(machine, target, &m, n, &rho, &a)?,
                word: m,
            };
            if !mutant.rejected() {
                report
                    .failures
                    .push(format!("mutant accepted by A_C: {}", mutant.word));
            }
            report.mutants.push(mutant);
        }
        if report.mutants.len() < MUTANT_BATTERY {
            report.failures.push(format!(
                "only {} insertion mutants could be built",
                report.mutants.len()
            ));
        }
    }
    report.forward = Some(forward);
    report.verdict = if report.failures.is_empty() {
        TheoremVerdict::Pass
    } else {
        TheoremVerdict::Fail
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::samples::{single_message, two_message};
    use crate::channel::{enumerate_error_free, Configuration, Label, Transition};
    use crate::encoding::codec::tests::{gamma_c1, w_c1};

    fn half() -> ParameterValuation {
        valuation(Rational::new(1, 2))
    }

    #[test]
    fn forward_on_running_example() {
        let f = verify_forward(&single_message(), "s2", &gamma_c1()).unwrap();
        assert_eq!((f.n, f.rho.clone()), (1, Rational::new(1, 2)));
        assert_eq!(f.word, w_c1());
        assert_eq!(f.assertions.len(), 3);
        assert!(f.passed());
    }

    #[test]
    fn forward_on_two_message_machine() {
        let c = two_message();
        let gammas = enumerate_error_free(&c, "q4", 8, 3).unwrap();
        let g = gammas.iter().find(|g| g.len() == 4).unwrap();
        let f = verify_forward(&c, "q4", g).unwrap();
        assert_eq!((f.n, f.rho), (2, Rational::new(1, 3)));
    }

    #[test]
    fn forward_rejects_faulty_computation() {
        let mut g = Computation::new(Configuration::empty("s0"));
        g.push(Label::Send("m".into()), Configuration::new("s1", ["m", "m"]));
        g.push(Label::Recv("m".into()), Configuration::new("s2", ["m"]));
        assert!(matches!(
            verify_forward(&single_message(), "s2", &g),
            Err(ReductionError::Precondition(_))
        ));
    }

    #[test]
    fn backward_on_running_example() {
        let b = verify_backward(&single_message(), "s2", &w_c1(), 1, &half()).unwrap();
        assert!(b.passed());
        let BackwardReport::Applicable { decoded, .. } = b else {
            unreachable!()
        };
        assert_eq!(decoded, Some(gamma_c1()));
    }

    #[test]
    fn backward_inapplicable_cases() {
        let c = single_message();
        let mutant = inject_insertion(&w_c1(), &c, 2, &Rational::new(17, 20)).unwrap();
        let b = verify_backward(&c, "s2", &mutant, 1, &half()).unwrap();
        assert!(!b.is_applicable());
        let third = valuation(Rational::new(1, 3));
        assert!(!verify_backward(&c, "s2", &w_c1(), 1, &third).unwrap().is_applicable());
    }

    #[test]
    fn mutants_are_distinct_members() {
        let c = single_message();
        let ms = insertion_mutants(&c, &w_c1(), 10).unwrap();
        assert_eq!(ms.len(), 10);
        for m in &ms {
            assert!(check_membership(m, &c, "s2", 1));
            assert_eq!(max_width(m, &c).unwrap(), 2);
        }
    }

    #[test]
    fn theorem_passes_on_single_message_machine() {
        let t = check_theorem(&single_message(), "s2", 6, 3).unwrap();
        assert_eq!(t.verdict, TheoremVerdict::Pass, "{:?}", t.failures);
        assert_eq!(t.mutants.len(), MUTANT_BATTERY);
        assert!(t.mutants.iter().all(|m| m.satisfies && m.rejected()));
        assert!(t.backward.unwrap().passed());
    }

    #[test]
    fn theorem_inconclusive_without_receive() {
        let c = single_message().without_transition(&Transition::new("s1", Label::Recv("m".into()), "s2"));
        let t = check_theorem(&c, "s2", 6, 3).unwrap();
        assert_eq!(t.verdict, TheoremVerdict::Inconclusive);
        assert!(t.forward.is_none());
    }

    #[test]
    fn theorem_degenerate_target() {
        let t = check_theorem(&single_message(), "s0", 6, 3).unwrap();
        assert_eq!(t.verdict, TheoremVerdict::Pass);
        let f = t.forward.unwrap();
        assert!(f.degenerate);
        assert_eq!(f.word.len(), 2);
    }
}
