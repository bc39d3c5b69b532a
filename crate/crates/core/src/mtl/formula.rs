use std::fmt;

use serde::Serialize;

use crate::rational::Rational;
use crate::time::Symbol;

/// An interval of the non-negative reals with endpoints in `ℕ ∪ {∞}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Interval {
    lower: u64,
    upper: Option<u64>,
    lower_closed: bool,
    upper_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    Inverted { lower: u64, upper: u64 },
    #[error("an unbounded interval cannot be closed at infinity")]
    ClosedAtInfinity,
    #[error("interval with equal endpoints {0} must be closed on both sides")]
    EmptyPoint(u64),
}

impl Interval {
    pub fn new(
        lower: u64,
        upper: Option<u64>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self, IntervalError> {
        match upper {
            None if upper_closed => return Err(IntervalError::ClosedAtInfinity),
            Some(u) if u < lower => return Err(IntervalError::Inverted { lower, upper: u }),
            Some(u) if u == lower && !(lower_closed && upper_closed) => {
                return Err(IntervalError::EmptyPoint(u))
            }
            _ => {}
        }
        Ok(Interval {
            lower,
            upper,
            lower_closed,
            upper_closed,
        })
    }

    /// `[0, ∞)`, the annotation that may be omitted.
    pub const fn unbounded() -> Self {
        Interval {
            lower: 0,
            upper: None,
            lower_closed: true,
            upper_closed: false,
        }
    }

    /// The point interval `[c, c]`, written `=c`.
    pub const fn point(c: u64) -> Self {
        Interval {
            lower: c,
            upper: Some(c),
            lower_closed: true,
            upper_closed: true,
        }
    }

    pub fn open(lower: u64, upper: u64) -> Self {
        Interval::new(lower, Some(upper), false, false).expect("valid open interval")
    }

    pub fn closed(lower: u64, upper: u64) -> Self {
        Interval::new(lower, Some(upper), true, true).expect("valid closed interval")
    }

    /// `[0, c)`, written `<c` in the literature.
    pub fn below(c: u64) -> Self {
        Interval::new(0, Some(c), true, false).expect("valid interval")
    }

    /// `(c, ∞)`.
    pub fn above(c: u64) -> Self {
        Interval::new(c, None, false, false).expect("valid interval")
    }

    pub fn lower(&self) -> u64 {
        self.lower
    }

    pub fn upper(&self) -> Option<u64> {
        self.upper
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn is_unbounded(&self) -> bool {
        *self == Interval::unbounded()
    }

    pub fn is_point(&self) -> bool {
        self.upper == Some(self.lower)
    }

    /// Whether `d` is at or above the lower end.
    pub fn above_lower(&self, d: &Rational) -> bool {
        match d.cmp_nat(self.lower) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => self.lower_closed,
            std::cmp::Ordering::Less => false,
        }
    }

    /// Whether `d` is at or below the upper end.
    pub fn below_upper(&self, d: &Rational) -> bool {
        match self.upper {
            None => true,
            Some(u) => match d.cmp_nat(u) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => self.upper_closed,
                std::cmp::Ordering::Greater => false,
            },
        }
    }

    pub fn contains(&self, d: &Rational) -> bool {
        self.above_lower(d) && self.below_upper(d)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "[={}]", self.lower);
        }
        let open = if self.lower_closed { '[' } else { '(' };
        let close = if self.upper_closed { ']' } else { ')' };
        match self.upper {
            Some(u) => write!(f, "{open}{},{u}{close}", self.lower),
            None => write!(f, "{open}{},inf{close}", self.lower),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An MTL formula. `Atom`, `Not`, `And` and `Until` form the core grammar;
/// the remaining variants are abbreviations kept for readable output and
/// expanded by [`Formula::desugar`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Formula {
    Atom(Symbol),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Until(Interval, Box<Formula>, Box<Formula>),
    True,
    False,
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Interval, Box<Formula>),
    Eventually(Interval, Box<Formula>),
    Globally(Interval, Box<Formula>),
}

impl Formula {
    pub fn atom(s: impl Into<Symbol>) -> Formula {
        Formula::Atom(s.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn until(i: Interval, a: Formula, b: Formula) -> Formula {
        Formula::Until(i, Box::new(a), Box::new(b))
    }

    pub fn next(i: Interval, f: Formula) -> Formula {
        Formula::Next(i, Box::new(f))
    }

    pub fn eventually(i: Interval, f: Formula) -> Formula {
        Formula::Eventually(i, Box::new(f))
    }

    pub fn globally(i: Interval, f: Formula) -> Formula {
        Formula::Globally(i, Box::new(f))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn is_core(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(a) => a.is_core(),
            Formula::And(a, b) | Formula::Until(_, a, b) => a.is_core() && b.is_core(),
            _ => false,
        }
    }

    /// Expands every abbreviation into `Atom`/`Not`/`And`/`Until`.
    /// `anchor` is the symbol `p` used for `true := p ∨ ¬p`.
    pub fn desugar(&self, anchor: &Symbol) -> Formula {
        let truth = || {
            // p ∨ ¬p = ¬(¬p ∧ ¬¬p)
            let p = Formula::atom(anchor.clone());
            Formula::not(Formula::and(
                Formula::not(p.clone()),
                Formula::not(Formula::not(p)),
            ))
        };
        let or = |a: Formula, b: Formula| {
            Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
        };
        match self {
            Formula::Atom(s) => Formula::Atom(s.clone()),
            Formula::Not(a) => Formula::not(a.desugar(anchor)),
            Formula::And(a, b) => Formula::and(a.desugar(anchor), b.desugar(anchor)),
            Formula::Until(i, a, b) => Formula::until(*i, a.desugar(anchor), b.desugar(anchor)),
            Formula::True => truth(),
            Formula::False => Formula::not(truth()),
            Formula::Or(a, b) => or(a.desugar(anchor), b.desugar(anchor)),
            Formula::Implies(a, b) => {
                or(Formula::not(a.desugar(anchor)), b.desugar(anchor))
            }
            Formula::Next(i, a) => {
                Formula::until(*i, Formula::not(truth()), a.desugar(anchor))
            }
            Formula::Eventually(i, a) => Formula::until(*i, truth(), a.desugar(anchor)),
            Formula::Globally(i, a) => Formula::not(Formula::until(
                *i,
                truth(),
                Formula::not(a.desugar(anchor)),
            )),
        }
    }

    /// Desugars with the lexicographically first symbol of `alphabet` as the
    /// anchor of `true`. Falls back to the first atom of the formula, then to
    /// the symbol `p`.
    pub fn desugar_over<'a>(&self, alphabet: impl IntoIterator<Item = &'a Symbol>) -> Formula {
        let anchor = alphabet
            .into_iter()
            .min()
            .cloned()
            .or_else(|| self.atoms().into_iter().next())
            .unwrap_or_else(|| Symbol::from("p"));
        self.desugar(&anchor)
    }

    /// The atoms occurring in the formula, sorted.
    pub fn atoms(&self) -> std::collections::BTreeSet<Symbol> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut std::collections::BTreeSet<Symbol>) {
        match self {
            Formula::Atom(s) => {
                out.insert(s.clone());
            }
            Formula::True | Formula::False => {}
            Formula::Not(a)
            | Formula::Next(_, a)
            | Formula::Eventually(_, a)
            | Formula::Globally(_, a) => a.collect_atoms(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(_, a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 1,
            Formula::Not(a)
            | Formula::Next(_, a)
            | Formula::Eventually(_, a)
            | Formula::Globally(_, a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 0,
            Formula::Not(a)
            | Formula::Next(_, a)
            | Formula::Eventually(_, a)
            | Formula::Globally(_, a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// Whether `name` can be written as a bare identifier in formula text.
pub(crate) fn is_plain_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_ascii_alphabetic() || first == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(name, "U" | "X" | "F" | "G" | "true" | "false" | "inf")
}

fn write_atom(f: &mut fmt::Formatter<'_>, s: &Symbol) -> fmt::Result {
    if is_plain_identifier(s.as_str()) {
        f.write_str(s.as_str())
    } else {
        f.write_str("\"")?;
        for c in s.as_str().chars() {
            if c == '"' || c == '\\' {
                f.write_str("\\")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("\"")
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
    match g {
        Formula::And(..) | Formula::Or(..) | Formula::Implies(..) | Formula::Until(..) => {
            write!(f, "({g})")
        }
        _ => write!(f, "{g}"),
    }
}

fn write_annotation(f: &mut fmt::Formatter<'_>, i: &Interval) -> fmt::Result {
    if i.is_unbounded() {
        Ok(())
    } else {
        write!(f, "{i}")
    }
}

/// Renders the ASCII text grammar. Binary operands are parenthesised, so the
/// output parses back to the identical tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(s) => write_atom(f, s),
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Not(a) => {
                f.write_str("!")?;
                write_operand(f, a)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let op = match self {
                    Formula::And(..) => "&",
                    Formula::Or(..) => "|",
                    _ => "->",
                };
                write_operand(f, a)?;
                write!(f, " {op} ")?;
                write_operand(f, b)
            }
            Formula::Until(i, a, b) => {
                write_operand(f, a)?;
                f.write_str(" U")?;
                write_annotation(f, i)?;
                f.write_str(" ")?;
                write_operand(f, b)
            }
            Formula::Next(i, a) | Formula::Eventually(i, a) | Formula::Globally(i, a) => {
                let op = match self {
                    Formula::Next(..) => "X",
                    Formula::Eventually(..) => "F",
                    _ => "G",
                };
                f.write_str(op)?;
                write_annotation(f, i)?;
                f.write_str(" ")?;
                write_operand(f, a)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
