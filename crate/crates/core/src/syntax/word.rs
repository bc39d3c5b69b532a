use super::{tokens, ParseError};
use crate::pta::ParameterValuation;
use crate::rational::Rational;
use crate::time::{Event, TimedWord};

/// Reads `symbol@time` tokens separated by whitespace, e.g. `s0@0 #@1/2 m!@1`.
/// The symbol is everything before the last `@`.
pub fn parse_word(text: &str) -> Result<TimedWord, ParseError> {
    let mut events = Vec::new();
    let mut last = 0;
    for (at, tok) in tokens(text) {
        last = at;
        let Some((sym, time)) = tok.rsplit_once('@') else {
            return Err(ParseError::at(text, at, format!("expected `symbol@time`, found `{tok}`")));
        };
        if sym.is_empty() {
            return Err(ParseError::at(text, at, "empty symbol"));
        }
        let time: Rational = time
            .parse()
            .map_err(|e| ParseError::at(text, at + sym.len() + 1, format!("{e}")))?;
        events.push(Event::new(sym, time));
    }
    TimedWord::new(events).map_err(|e| ParseError::at(text, last, e.to_string()))
}

pub fn write_word(w: &TimedWord) -> String {
    w.to_string()
}

/// Reads `name=value` pairs separated by commas or whitespace, e.g. `p=1/2,q=1`.
pub fn parse_valuation(text: &str) -> Result<ParameterValuation, ParseError> {
    let mut v = ParameterValuation::new();
    for (at, tok) in tokens(&text.replace(',', " ")) {
        let Some((name, value)) = tok.split_once('=') else {
            return Err(ParseError::at(text, at, format!("expected `name=value`, found `{tok}`")));
        };
        if name.is_empty() {
            return Err(ParseError::at(text, at, "empty parameter name"));
        }
        if v.get(name).is_some() {
            return Err(ParseError::at(text, at, format!("`{name}` is assigned twice")));
        }
        let value: Rational = value
            .parse()
            .map_err(|e| ParseError::at(text, at + name.len() + 1, format!("{e}")))?;
        v.insert(name, value)
            .map_err(|e| ParseError::at(text, at, e.to_string()))?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_events() {
        let w = parse_word("s0@0 #@1/2 m!@1").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.events()[1].symbol.as_str(), "#");
        assert_eq!(w.events()[1].time, Rational::new(1, 2));
        assert_eq!(parse_word(&write_word(&w)).unwrap(), w);
    }

    #[test]
    fn word_errors() {
        assert_eq!(parse_word("a@0 b").unwrap_err().column, 5);
        assert!(parse_word("@1").is_err());
        assert!(parse_word("a@1 b@0").is_err());
        assert!(parse_word("a@x").is_err());
        assert!(parse_word("").is_err());
        assert!(parse_word("a@-1").is_err());
    }

    #[test]
    fn at_sign_inside_symbol() {
        let w = parse_word("a@b@2").unwrap();
        assert_eq!(w.events()[0].symbol.as_str(), "a@b");
    }

    #[test]
    fn valuations() {
        let v = parse_valuation("p=1/2,q=1").unwrap();
        assert_eq!(v.get("p"), Some(&Rational::new(1, 2)));
        assert_eq!(parse_valuation(&v.to_string()).unwrap(), v);
        assert!(parse_valuation("p=-1").is_err());
        assert!(parse_valuation("p=1,p=2").is_err());
        assert!(parse_valuation("p").is_err());
        assert!(parse_valuation("").unwrap().is_empty());
    }
}
