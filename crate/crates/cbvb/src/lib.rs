//! File formats and input handling for the `cbvb` command line tool: named
//! corpus entries, term-set files and the JSON form of terms.

pub mod json;

use std::fmt;

use cbvb_core::combinators::TABLE;
use cbvb_core::{parse_resource, parse_term, parse_termset, ParseError, Term, TermSet};

/// Environment variable naming an extra corpus file.
pub const CORPUS_ENV: &str = "CBVB_CORPUS";

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InputError {
    /// Where the text came from, e.g. a file name and line.
    pub origin: String,
    pub message: String,
}

impl InputError {
    fn new(origin: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError {
            origin: origin.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.origin.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.origin, self.message)
        }
    }
}

impl std::error::Error for InputError {}

/// Named terms that may stand for a whole term argument.
#[derive(Clone, Debug)]
pub struct Corpus {
    entries: Vec<(String, Term)>,
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Corpus {
    pub fn builtin() -> Self {
        let entries = TABLE
            .iter()
            .map(|(n, src)| (n.to_string(), parse_term(src).expect("built-in terms parse")))
            .collect();
        Corpus { entries }
    }

    /// The built-in table extended by the file named in `CBVB_CORPUS`, if set.
    pub fn from_env() -> Result<Self, InputError> {
        let mut c = Corpus::builtin();
        if let Some(path) = std::env::var_os(CORPUS_ENV) {
            let path = std::path::PathBuf::from(path);
            let text = std::fs::read_to_string(&path).map_err(|e| InputError::new(path.display().to_string(), e))?;
            c.load(&text, &path.display().to_string())?;
        }
        Ok(c)
    }

    /// Reads `name = term` lines; `#` starts a comment. Later entries replace
    /// earlier ones of the same name and may refer to them.
    pub fn load(&mut self, text: &str, origin: &str) -> Result<(), InputError> {
        for (i, line) in text.lines().enumerate() {
            let line = strip_comment(line).trim();
            if line.is_empty() {
                continue;
            }
            let at = || format!("{origin}:{}", i + 1);
            let Some((name, src)) = line.split_once('=') else {
                return Err(InputError::new(at(), "expected `name = term`"));
            };
            let name = name.trim();
            if !is_identifier(name) {
                return Err(InputError::new(at(), format_args!("`{name}` is not a name")));
            }
            let term = self.resolve(src).map_err(|e| InputError::new(at(), e))?;
            self.entries.retain(|(n, _)| !n.eq_ignore_ascii_case(name));
            self.entries.push((name.to_string(), term));
        }
        Ok(())
    }

    /// An exact match wins. Otherwise names are compared ignoring case, but
    /// only for names of two or more letters so that `i`, `k` or `z` stay
    /// ordinary variables.
    pub fn get(&self, name: &str) -> Option<&Term> {
        let exact = self.entries.iter().rev().find(|(n, _)| n == name);
        exact
            .or_else(|| {
                (name.chars().count() > 1)
                    .then(|| self.entries.iter().rev().find(|(n, _)| n.eq_ignore_ascii_case(name)))
                    .flatten()
            })
            .map(|(_, t)| t)
    }

    pub fn names(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.entries.iter().map(|(n, t)| (n.as_str(), t))
    }

    /// A term argument: a corpus name or a term in the concrete syntax.
    pub fn resolve(&self, src: &str) -> Result<Term, ParseError> {
        let s = src.trim();
        match self.get(s) {
            Some(t) if is_identifier(s) => Ok(t.clone()),
            _ => parse_term(src),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(l, _)| l)
}

/// One resource term (or `{ … }` set literal) per line; blank lines and `#` comments are skipped.
pub fn parse_termset_file(text: &str, origin: &str) -> Result<TermSet, InputError> {
    let mut set = TermSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = strip_comment(line);
        if line.trim().is_empty() {
            continue;
        }
        let at = |e: ParseError| InputError::new(format!("{origin}:{}", i + 1), e);
        if line.trim_start().starts_with('{') {
            set = set.union(&parse_termset(line).map_err(at)?);
        } else {
            set.insert(parse_resource(line).map_err(at)?);
        }
    }
    Ok(set)
}

/// A term-set argument: `@path` reads a file, `{ … }` is a set literal and
/// anything else is a single resource term.
pub fn read_termset_arg(arg: &str) -> Result<TermSet, InputError> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| InputError::new(path, e))?;
        return parse_termset_file(&text, path);
    }
    if arg.trim_start().starts_with('{') {
        parse_termset(arg).map_err(|e| InputError::new("", e))
    } else {
        parse_resource(arg)
            .map(TermSet::singleton)
            .map_err(|e| InputError::new("", e))
    }
}
