use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};

use ptamtl::syntax::ParseError;

/// Text behind an argument, plus a name for diagnostics.
pub struct Source {
    pub name: String,
    pub text: String,
}

pub fn load(arg: &str) -> Result<Source> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        return Ok(Source {
            name: "<stdin>".into(),
            text,
        });
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return Ok(Source { name: arg.into(), text });
    }
    Ok(Source {
        name: "<inline>".into(),
        text: arg.into(),
    })
}

/// Loads `arg` and parses it, prefixing errors with where the text came from.
pub fn parse<T>(arg: &str, what: &str, parser: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T> {
    let src = load(arg)?;
    parser(&src.text).map_err(|e| anyhow::anyhow!("{what} {}:{e}", src.name))
}
