use std::fmt::Write as _;

use anyhow::anyhow;
use serde_json::{json, Value};

use ptamtl::channel::{search_error_free, ChannelMachine, SearchOutcome};
use ptamtl::encoding::{decode, diagnose, encode, EncodingLayout};
use ptamtl::modelcheck::{bounded_modelcheck, default_candidates, CandidateOutcome, McError, McOutcome, McVerdict};
use ptamtl::mtl::satisfies;
use ptamtl::pta::{GridBounds, ParameterValuation};
use ptamtl::reduction::{check_theorem, ReductionBundle, ReductionError, TheoremReport, TheoremVerdict};
use ptamtl::syntax::{
    parse_computation, parse_formula, parse_machine, parse_pta, parse_valuation, parse_word, write_computation,
    write_word,
};
use ptamtl::Rational;

use crate::input::parse;
use crate::{Command, Failure};

type Outcome = Result<String, Failure>;

fn render(json: bool, value: Value, text: impl FnOnce() -> String) -> Outcome {
    if json {
        let mut s = serde_json::to_string_pretty(&value).map_err(|e| Failure::Internal(e.into()))?;
        s.push('\n');
        Ok(s)
    } else {
        Ok(text())
    }
}

fn machine(arg: &str, target: &str) -> Result<ChannelMachine, Failure> {
    let parsed = parse(arg, "machine", parse_machine)?;
    if !parsed.machine.has_state(target) {
        return Err(Failure::Usage(anyhow!("`{target}` is not a state of the machine")));
    }
    Ok(parsed.machine)
}

fn reduction_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::Soundness(_) => Failure::Internal(e.into()),
        e => Failure::Usage(e.into()),
    }
}

pub fn run(command: Command, json: bool) -> Outcome {
    match command {
        Command::Eval { formula, word } => {
            let f = parse(&formula, "formula", parse_formula)?;
            let w = parse(&word, "word", parse_word)?;
            let holds = satisfies(&w, &f);
            render(json, json!({ "satisfies": holds }), || format!("{holds}\n"))
        }
        Command::Member { pta, valuation, word } => {
            let a = parse(&pta, "automaton", parse_pta)?;
            let rho = parse(&valuation, "valuation", parse_valuation)?;
            let w = parse(&word, "word", parse_word)?;
            let accepted = a.membership(&rho, &w)?;
            render(json, json!({ "accepted": accepted }), || {
                format!("{}\n", if accepted { "accepted" } else { "rejected" })
            })
        }
        Command::DetCheck { pta } => {
            let a = parse(&pta, "automaton", parse_pta)?;
            let det = a.is_deterministic();
            render(json, json!({ "deterministic": det }), || {
                format!("{}\n", if det { "deterministic" } else { "not deterministic" })
            })
        }
        Command::Reduce { machine: m, target, out } => {
            let c = machine(&m, &target)?;
            let bundle = ReductionBundle::new(&c, &target).map_err(reduction_failure)?;
            let [pta, formula, alphabet] = bundle.render();
            if let Some(base) = out {
                let written = bundle.write_files(&base)?;
                let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
                return render(json, json!({ "written": names }), || {
                    names.iter().map(|n| format!("wrote {n}\n")).collect()
                });
            }
            render(
                json,
                json!({ "automaton": pta, "formula": formula.trim_end(), "alphabet": bundle.alphabet }),
                || format!("// automaton\n{pta}// formula\n{formula}// alphabet\n{alphabet}"),
            )
        }
        Command::Encode {
            machine: m,
            target,
            computation,
            delta,
            slots,
        } => {
            let c = machine(&m, &target)?;
            let gamma = parse(&computation, "computation", parse_computation)?;
            let n = gamma.max_channel();
            let layout = match (delta, slots) {
                (None, None) => EncodingLayout::uniform(n),
                (delta, slots) => {
                    let uniform = EncodingLayout::uniform(n);
                    EncodingLayout::new(
                        delta.unwrap_or_else(Rational::zero),
                        slots.unwrap_or_else(|| uniform.slots().to_vec()),
                    )?
                }
            };
            let w = encode(&c, &target, &gamma, &layout)?;
            render(json, json!({ "n": n, "word": write_word(&w) }), || format!("{}\n", write_word(&w)))
        }
        Command::CheckLcn { machine: m, target, n, word } => {
            let c = machine(&m, &target)?;
            let w = parse(&word, "word", parse_word)?;
            let result = diagnose(&w, &c, &target, n);
            let violation = result.as_ref().err().map(|v| v.to_string());
            render(json, json!({ "member": result.is_ok(), "violation": violation }), || match violation {
                None => "member\n".into(),
                Some(v) => format!("not a member: {v}\n"),
            })
        }
        Command::Decode { machine: m, target, word } => {
            let c = machine(&m, &target)?;
            let w = parse(&word, "word", parse_word)?;
            let gamma = decode(&w, &c, &target)?;
            let text = write_computation(&gamma);
            render(json, json!({ "computation": text }), || format!("{text}\n"))
        }
        Command::Search {
            machine: m,
            target,
            steps,
            chan,
        } => {
            let c = machine(&m, &target)?;
            let outcome = search_error_free(&c, &target, steps, chan)?;
            let (status, text) = match &outcome {
                SearchOutcome::Found(g) => ("found", Some(write_computation(g))),
                SearchOutcome::Unreachable => ("unreachable", None),
                SearchOutcome::Inconclusive => ("inconclusive", None),
            };
            render(json, json!({ "outcome": status, "computation": text }), || match &text {
                Some(g) => format!("found: {g}\n"),
                None if status == "unreachable" => "unreachable: the bounded space is closed and misses the target\n".into(),
                None => "inconclusive: no witness within bounds\n".into(),
            })
        }
        Command::McBounded {
            pta,
            formula,
            candidates,
            k,
            grid,
            horizon,
            max_events,
            node_limit,
        } => {
            let a = parse(&pta, "automaton", parse_pta)?;
            let f = parse(&formula, "formula", parse_formula)?;
            let candidates = match candidates {
                Some(text) => text
                    .split(';')
                    .map(|v| parse_valuation(v.trim()).map_err(|e| anyhow!("candidate `{v}`: {e}")))
                    .collect::<Result<Vec<ParameterValuation>, _>>()?,
                None => default_candidates(a.params(), k),
            };
            let mut bounds = GridBounds::new(grid, horizon, max_events);
            if let Some(limit) = node_limit {
                bounds = bounds.with_node_limit(limit);
            }
            let verdict = bounded_modelcheck(&a, &f, &candidates, &bounds).map_err(|e| match e {
                McError::Unverified { .. } => Failure::Internal(e.into()),
                e => Failure::Usage(e.into()),
            })?;
            let value = serde_json::to_value(&verdict).map_err(|e| Failure::Internal(e.into()))?;
            render(json, value, || mc_text(&verdict))
        }
        Command::VerifyReduction {
            machine: m,
            target,
            steps,
            chan,
        } => {
            let c = machine(&m, &target)?;
            let report = check_theorem(&c, &target, steps, chan).map_err(reduction_failure)?;
            let value = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.into()))?;
            let out = render(json, value, || theorem_text(&report))?;
            if report.verdict == TheoremVerdict::Fail {
                print!("{out}");
                return Err(Failure::Internal(anyhow!(
                    "reduction check failed: {}",
                    report.failures.join("; ")
                )));
            }
            Ok(out)
        }
    }
}

fn mc_text(v: &McVerdict) -> String {
    let mut s = String::new();
    match &v.outcome {
        McOutcome::CounterexampleFound { valuation, word } => {
            let _ = writeln!(s, "counterexample under {}: {}", show(valuation), write_word(word));
        }
        McOutcome::NoCounterexampleWithinBounds { valuation } => {
            let _ = writeln!(s, "no counterexample within bounds under {}", show(valuation));
        }
        McOutcome::AllCandidatesRefuted => s.push_str("all candidates refuted\n"),
        McOutcome::Inconclusive => s.push_str("inconclusive: node limit reached\n"),
    }
    let _ = writeln!(s, "bounds: grid {} horizon {} max-events {}", v.grid, v.horizon, v.max_events);
    for c in &v.candidates {
        let status = match &c.outcome {
            CandidateOutcome::CounterexampleFound { word } => format!("counterexample {}", write_word(word)),
            CandidateOutcome::NoCounterexampleWithinBounds => "no counterexample".into(),
            CandidateOutcome::Inconclusive => "inconclusive".into(),
        };
        let _ = writeln!(s, "  {}: {status} ({} nodes)", show(&c.valuation), c.nodes);
    }
    s
}

fn show(v: &ParameterValuation) -> String {
    if v.is_empty() {
        "the empty valuation".into()
    } else {
        v.to_string()
    }
}

fn theorem_text(r: &TheoremReport) -> String {
    let mut s = String::new();
    let verdict = match r.verdict {
        TheoremVerdict::Pass => "pass",
        TheoremVerdict::Fail => "fail",
        TheoremVerdict::Inconclusive => "inconclusive",
    };
    let _ = writeln!(s, "verdict: {verdict}");
    match &r.search {
        SearchOutcome::Found(g) => {
            let _ = writeln!(s, "witness: {}", write_computation(g));
        }
        SearchOutcome::Unreachable => s.push_str("witness: none, target unreachable within bounds\n"),
        SearchOutcome::Inconclusive => s.push_str("witness: none within bounds\n"),
    }
    if let Some(f) = &r.forward {
        let _ = writeln!(s, "forward: n = {}, p = {}, word {}", f.n, f.rho, write_word(&f.word));
        for a in &f.assertions {
            let _ = writeln!(s, "  {} {}", if a.holds { "ok  " } else { "FAIL" }, a.name);
        }
        if f.degenerate {
            s.push_str("  skip accepted by A_C (target is the initial state)\n");
        }
    }
    if let Some(ptamtl::reduction::BackwardReport::Applicable { assertions, .. }) = &r.backward {
        s.push_str("backward:\n");
        for a in assertions {
            let _ = writeln!(s, "  {} {}", if a.holds { "ok  " } else { "FAIL" }, a.name);
        }
    }
    if !r.mutants.is_empty() {
        let rejected = r.mutants.iter().filter(|m| m.rejected()).count();
        let _ = writeln!(s, "insertion mutants rejected: {rejected}/{}", r.mutants.len());
    }
    for f in &r.failures {
        let _ = writeln!(s, "failure: {f}");
    }
    s
}
