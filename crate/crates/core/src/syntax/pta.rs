//! ```text
//! alphabet: a b
//! clocks: x y
//! params: p
//! locations: 1 2 3
//! init: 1
//! final: 3
//! edge: 1 a "x=p" {x} 1
//! edge: 1 a "x=p & y=1" {x, y} 2
//! ```

use std::fmt::Write;

use super::{content_lines, tokens, ParseError};
use crate::pta::{Bound, ClockConstraint, Edge, GuardAtom, Pta, PtaSpec, Relation};

fn guard_atom(text: &str) -> Result<GuardAtom, String> {
    let ops = [("<=", Relation::Le), (">=", Relation::Ge), ("<", Relation::Lt), (">", Relation::Gt), ("=", Relation::Eq)];
    let (k, op, rel) = ops
        .iter()
        .filter_map(|(op, rel)| text.find(op).map(|k| (k, *op, *rel)))
        .min_by_key(|(k, op, _)| (*k, std::cmp::Reverse(op.len())))
        .ok_or_else(|| format!("expected a comparison in `{text}`"))?;
    let clock = text[..k].trim();
    let rhs = text[k + op.len()..].trim();
    let ident = |s: &str| {
        s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    };
    if !ident(clock) {
        return Err(format!("expected a clock name, found `{clock}`"));
    }
    let bound = if ident(rhs) {
        Bound::Param(rhs.to_string())
    } else {
        Bound::Const(rhs.parse().map_err(|_| format!("expected a natural constant or parameter, found `{rhs}`"))?)
    };
    Ok(GuardAtom::new(clock, rel, bound))
}

/// Reads a guard such as `x=p & y<1`; the empty string is `true`.
pub(crate) fn parse_guard(text: &str) -> Result<ClockConstraint, String> {
    if text.trim().is_empty() {
        return Ok(ClockConstraint::trivial());
    }
    text.split('&').map(guard_atom).collect::<Result<Vec<_>, _>>().map(ClockConstraint::new)
}

struct EdgeLine<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

impl EdgeLine<'_> {
    fn err(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError::at(self.text, at, message).relocate(self.line, self.column)
    }

    fn parse(&self) -> Result<Edge, ParseError> {
        let t = self.text;
        let mut pos = 0;
        let word = |pos: &mut usize, what: &str| -> Result<String, ParseError> {
            let rest = &t[*pos..];
            let start = *pos + (rest.len() - rest.trim_start().len());
            let len = t[start..].find(char::is_whitespace).unwrap_or(t.len() - start);
            if len == 0 {
                return Err(self.err(start, format!("expected {what}")));
            }
            *pos = start + len;
            Ok(t[start..start + len].to_string())
        };
        let source = word(&mut pos, "a source location")?;
        let symbol = word(&mut pos, "a symbol")?;
        let rest = &t[pos..];
        let q0 = pos + (rest.len() - rest.trim_start().len());
        if !t[q0..].starts_with('"') {
            return Err(self.err(q0, "expected a quoted guard"));
        }
        let q1 = t[q0 + 1..].find('"').map(|k| q0 + 1 + k).ok_or_else(|| self.err(q0, "unterminated guard"))?;
        let guard = parse_guard(&t[q0 + 1..q1]).map_err(|e| self.err(q0 + 1, e))?;
        let rest = &t[q1 + 1..];
        let b0 = q1 + 1 + (rest.len() - rest.trim_start().len());
        if !t[b0..].starts_with('{') {
            return Err(self.err(b0, "expected `{` opening the reset set"));
        }
        let b1 = t[b0..].find('}').map(|k| b0 + k).ok_or_else(|| self.err(b0, "unterminated reset set"))?;
        let resets: Vec<String> = t[b0 + 1..b1]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        pos = b1 + 1;
        let target = word(&mut pos, "a target location")?;
        let rest = &t[pos..];
        if !rest.trim().is_empty() {
            return Err(self.err(pos + (rest.len() - rest.trim_start().len()), "unexpected text after the target"));
        }
        Ok(Edge::new(source, symbol.as_str(), guard, resets, target))
    }
}

/// Parses the automaton text format.
pub fn parse_pta(text: &str) -> Result<Pta, ParseError> {
    let mut spec = PtaSpec::default();
    let mut seen = std::collections::BTreeSet::new();
    for (line, column, content) in content_lines(text) {
        let Some((key, rest)) = content.split_once(':') else {
            return Err(ParseError::new(line, column, "expected `key: value`"));
        };
        let rest_col = column + key.len() + 1;
        let list = || tokens(rest).map(|(_, t)| t.to_string()).collect::<Vec<_>>();
        let header = key.trim();
        if header != "edge" && !seen.insert(header.to_string()) {
            return Err(ParseError::new(line, column, format!("`{header}:` appears twice")));
        }
        match header {
            "alphabet" => spec.alphabet = list().into_iter().map(Into::into).collect(),
            "clocks" => spec.clocks = list(),
            "params" => spec.params = list(),
            "locations" => spec.locations = list(),
            "init" => spec.initial = list(),
            "final" => spec.finals = list(),
            "edge" => spec.edges.push(
                EdgeLine {
                    line,
                    column: rest_col,
                    text: rest,
                }
                .parse()?,
            ),
            other => return Err(ParseError::new(line, column, format!("unknown header `{other}:`"))),
        }
    }
    for required in ["alphabet", "locations", "init"] {
        if !seen.contains(required) {
            return Err(ParseError::new(text.lines().count().max(1), 1, format!("missing `{required}:` line")));
        }
    }
    Pta::new(spec).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

/// Renders `a` in the format read by [`parse_pta`].
pub fn write_pta(a: &Pta) -> String {
    let join = |items: Vec<&str>| items.join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "alphabet: {}", join(a.alphabet().iter().map(|s| s.as_str()).collect()));
    let _ = writeln!(out, "clocks: {}", join(a.clocks().iter().map(String::as_str).collect()));
    let _ = writeln!(out, "params: {}", join(a.params().iter().map(String::as_str).collect()));
    let _ = writeln!(out, "locations: {}", join(a.locations().iter().map(String::as_str).collect()));
    let _ = writeln!(out, "init: {}", join(a.initial().iter().map(String::as_str).collect()));
    let _ = writeln!(out, "final: {}", join(a.finals().iter().map(String::as_str).collect()));
    for e in a.edges() {
        let resets: Vec<&str> = e.resets.iter().map(String::as_str).collect();
        let _ = writeln!(
            out,
            "edge: {} {} \"{}\" {{{}}} {}",
            e.source,
            e.symbol,
            e.guard,
            resets.join(", "),
            e.target
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pta::samples::cadence_automaton;

    #[test]
    fn round_trip_cadence_automaton() {
        let text = write_pta(&cadence_automaton());
        let back = parse_pta(&text).unwrap();
        assert_eq!(write_pta(&back), text);
        assert_eq!(back.edges(), cadence_automaton().edges());
    }

    #[test]
    fn guards() {
        let g = parse_guard("x=p & y<1").unwrap();
        assert_eq!(g.to_string(), parse_guard(&g.to_string()).unwrap().to_string());
        assert_eq!(g.atoms().len(), 2);
        assert!(parse_guard("").unwrap().is_trivial());
        assert_eq!(parse_guard("x<=2").unwrap().atoms()[0].relation, Relation::Le);
        assert_eq!(parse_guard("x>=q").unwrap().atoms()[0].relation, Relation::Ge);
        assert!(parse_guard("x").is_err());
        assert!(parse_guard("1=x").is_err());
        assert!(parse_guard("x<1/2").is_err());
    }

    #[test]
    fn edge_line_errors() {
        let base = "alphabet: a\nclocks: x\nlocations: 1\ninit: 1\n";
        let e = parse_pta(&format!("{base}edge: 1 a x=1 {{}} 1\n")).unwrap_err();
        assert_eq!((e.line, e.column), (5, 11));
        assert!(parse_pta(&format!("{base}edge: 1 a \"x=1\" {{}}\n")).is_err());
        assert!(parse_pta(&format!("{base}edge: 1 a \"x=1\" {{ 1\n")).is_err());
        assert!(parse_pta(&format!("{base}edge: 1 a \"y=1\" {{}} 1\n")).is_err());
        assert!(parse_pta(&format!("{base}bogus: 1\n")).is_err());
        assert!(parse_pta("clocks: x\n").is_err());
        assert!(parse_pta(&format!("{base}init: 1\n")).is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "// empty guard, no resets\n\nalphabet: a\nlocations: 1\ninit: 1\nfinal: 1\nedge: 1 a \"\" {} 1\n";
        let a = parse_pta(text).unwrap();
        assert!(a.edges()[0].guard.is_trivial());
    }
}
