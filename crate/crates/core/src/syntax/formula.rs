//! Precedence, loosest first: `U`, `->`, `|`, `&`, then the prefix operators
//! `!`, `X`, `F`, `G`. `U` and `->` group to the right, `&` and `|` to the
//! left.

use super::ParseError;
use crate::mtl::{Formula, Interval};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError::at(self.text, at, message)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{s}`, found {}", self.found())))
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        }
    }

    /// Identifier or keyword at the cursor, without consuming it.
    fn word(&self) -> Option<&'a str> {
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if is_ident_start(c) => {}
            _ => return None,
        }
        let end = chars.find(|(_, c)| !is_ident_char(*c)).map_or(rest.len(), |(k, _)| k);
        Some(&rest[..end])
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.word() == Some(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let left = self.implication()?;
        if self.eat_keyword("U") {
            let i = self.annotation()?;
            let right = self.until()?;
            return Ok(Formula::until(i, left, right));
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.eat("->") {
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.eat("|") {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat("&") {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("!") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat("(") {
            let f = self.until()?;
            self.expect(")")?;
            return Ok(f);
        }
        if self.peek() == Some('"') {
            return self.quoted();
        }
        let Some(w) = self.word() else {
            return Err(self.err(start, format!("expected a formula, found {}", self.found())));
        };
        self.pos += w.len();
        match w {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            "X" | "F" | "G" => {
                let i = self.annotation()?;
                let f = self.unary()?;
                Ok(match w {
                    "X" => Formula::next(i, f),
                    "F" => Formula::eventually(i, f),
                    _ => Formula::globally(i, f),
                })
            }
            "U" | "inf" => Err(self.err(start, format!("unexpected keyword `{w}`"))),
            _ => Ok(Formula::atom(w)),
        }
    }

    fn quoted(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        self.pos += 1;
        let mut name = String::new();
        let mut chars = self.rest().char_indices();
        loop {
            match chars.next() {
                None => return Err(self.err(start, "unterminated quoted atom")),
                Some((k, '"')) => {
                    self.pos += k + 1;
                    break;
                }
                Some((_, '\\')) => match chars.next() {
                    Some((_, c @ ('"' | '\\'))) => name.push(c),
                    _ => return Err(self.err(start, "only `\\\"` and `\\\\` may be escaped")),
                },
                Some((_, c)) => name.push(c),
            }
        }
        if name.is_empty() {
            return Err(self.err(start, "empty quoted atom"));
        }
        Ok(Formula::atom(name))
    }

    /// An interval written directly after a modality, or `[0,inf)` if absent.
    fn annotation(&mut self) -> Result<Interval, ParseError> {
        let start = self.pos;
        let rest = self.rest();
        let opens = rest.starts_with('[')
            || (rest.starts_with('(') && rest[1..].trim_start().starts_with(|c: char| c.is_ascii_digit()));
        if !opens {
            return Ok(Interval::unbounded());
        }
        let lower_closed = rest.starts_with('[');
        self.pos += 1;
        if lower_closed && self.eat("=") {
            let c = self.natural()?;
            self.expect("]")?;
            return Ok(Interval::point(c));
        }
        let lower = self.natural()?;
        self.expect(",")?;
        self.skip_ws();
        let upper = if self.eat_keyword("inf") {
            None
        } else {
            Some(self.natural()?)
        };
        self.skip_ws();
        let upper_closed = match self.peek() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(self.err(self.pos, format!("expected `]` or `)`, found {}", self.found()))),
        };
        self.pos += 1;
        Interval::new(lower, upper, lower_closed, upper_closed).map_err(|e| self.err(start, e.to_string()))
    }

    fn natural(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err(self.pos, format!("expected a natural number, found {}", self.found())));
        }
        let n = self.rest()[..digits]
            .parse()
            .map_err(|_| self.err(self.pos, "number too large"))?;
        self.pos += digits;
        Ok(n)
    }
}

/// Parses the ASCII formula grammar, e.g. `a U[1,2) (b & !c)`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let f = p.until()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.err(p.pos, format!("unexpected {}", p.found())));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn until_with_interval() {
        let f = parse_formula("a U[1,2) (b & !c)").unwrap();
        let i = Interval::new(1, Some(2), true, false).unwrap();
        assert_eq!(f, Formula::until(i, a("a"), Formula::and(a("b"), Formula::not(a("c")))));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("a & b | c -> d U e").unwrap();
        let expect = Formula::until(
            Interval::unbounded(),
            Formula::implies(Formula::or(Formula::and(a("a"), a("b")), a("c")), a("d")),
            a("e"),
        );
        assert_eq!(f, expect);
        let f = parse_formula("a -> b -> c").unwrap();
        assert_eq!(f, Formula::implies(a("a"), Formula::implies(a("b"), a("c"))));
        let f = parse_formula("!X a & b").unwrap();
        assert_eq!(f, Formula::and(Formula::not(Formula::next(Interval::unbounded(), a("a"))), a("b")));
    }

    #[test]
    fn intervals() {
        assert_eq!(parse_formula("F[=2] a").unwrap(), Formula::eventually(Interval::point(2), a("a")));
        assert_eq!(
            parse_formula("G[0,inf) a").unwrap(),
            Formula::globally(Interval::unbounded(), a("a"))
        );
        assert_eq!(parse_formula("F(1,2) a").unwrap(), Formula::eventually(Interval::open(1, 2), a("a")));
        assert_eq!(parse_formula("X (a)").unwrap(), Formula::next(Interval::unbounded(), a("a")));
        assert!(parse_formula("F[2,1] a").is_err());
        assert!(parse_formula("F[1,inf] a").is_err());
    }

    #[test]
    fn quoted_atoms() {
        let f = parse_formula(r##""m!" & "#" & "a\"b""##).unwrap();
        assert_eq!(f, Formula::and(Formula::and(a("m!"), a("#")), a("a\"b")));
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        assert_eq!(parse_formula(r#""U""#).unwrap(), a("U"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("a &").unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        let e = parse_formula("a b").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_formula("(a").is_err());
        assert!(parse_formula("\"a").is_err());
        assert!(parse_formula("U").is_err());
        assert!(parse_formula("").is_err());
    }
}
