//! Concrete syntax: recursive-descent parsers and canonical printers for Λ⊥
//! terms, resource terms and term sets, plus an ASCII/Unicode tree renderer
//! for Böhm-tree prefixes.
//!
//! Λ⊥ grammar:
//!
//! ```text
//! term  ::= lam | atom+ lam?
//! lam   ::= ('\' | 'λ') ident+ '.' term
//! atom  ::= ident | 'bot' | '⊥' | '(' term ')'
//! ```
//!
//! Resource grammar:
//!
//! ```text
//! resource ::= value | simple
//! value    ::= ident | ('\' | 'λ') ident+ '.' simple
//! simple   ::= satom+
//! satom    ::= '[' (value (',' value)*)? ']' | '(' simple ')'
//! termset  ::= '{' (resource (';' resource)*)? '}'
//! ```

use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::approx::BtResult;
use crate::resource::{Bag, Resource, Simple, TermSet, Value};
use crate::term::{Name, Term, Var};

/// Byte offsets into the parsed text.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub span: SourceSpan,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Lambda,
    Dot,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Bot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Lambda => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        let single = match c {
            '\\' | 'λ' => Some(Tok::Lambda),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '⊥' => Some(Tok::Bot),
            _ => None,
        };
        if let Some(tok) = single {
            it.next();
            out.push((
                tok,
                SourceSpan {
                    start: i,
                    end: i + c.len_utf8(),
                },
            ));
        } else if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    end = j + d.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            let word = &src[i..end];
            let tok = if word == "bot" {
                Tok::Bot
            } else {
                Tok::Ident(word.to_owned())
            };
            out.push((tok, SourceSpan { start: i, end }));
        } else {
            return Err(error_at(
                src,
                SourceSpan {
                    start: i,
                    end: i + c.len_utf8(),
                },
                format!("unexpected character `{c}`"),
            ));
        }
    }
    out.push((
        Tok::Eof,
        SourceSpan {
            start: src.len(),
            end: src.len(),
        },
    ));
    Ok(out)
}

fn error_at(src: &str, span: SourceSpan, message: String) -> ParseError {
    let before = &src[..span.start.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError {
        span,
        line,
        col,
        message,
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        let msg = format!("expected {expected}, found {}", self.peek().describe());
        Err(error_at(self.src, self.span(), msg))
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => self.fail("end of input"),
        }
    }

    fn binders(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        while let Tok::Ident(n) = self.peek() {
            names.push(n.clone());
            self.bump();
        }
        if names.is_empty() {
            return self.fail("a binder name");
        }
        self.expect(Tok::Dot, "`.`")?;
        Ok(names)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Lambda {
            return self.lam();
        }
        let mut acc = match self.atom()? {
            Some(t) => t,
            None => return self.fail("a term"),
        };
        loop {
            if *self.peek() == Tok::Lambda {
                let l = self.lam()?;
                return Ok(Term::app(acc, l));
            }
            match self.atom()? {
                Some(t) => acc = Term::app(acc, t),
                None => return Ok(acc),
            }
        }
    }

    fn lam(&mut self) -> Result<Term, ParseError> {
        self.bump();
        let names = self.binders()?;
        let body = self.term()?;
        Ok(Term::lams(names.iter().map(|n| n.as_str()), body))
    }

    fn atom(&mut self) -> Result<Option<Term>, ParseError> {
        match self.peek().clone() {
            Tok::Ident(n) => {
                self.bump();
                Ok(Some(Term::var(n.as_str())))
            }
            Tok::Bot => {
                self.bump();
                Ok(Some(Term::Bot))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Some(t))
            }
            _ => Ok(None),
        }
    }

    fn resource(&mut self) -> Result<Resource, ParseError> {
        match self.peek() {
            Tok::Ident(_) | Tok::Lambda => Ok(Resource::Value(self.value()?)),
            Tok::LBrack | Tok::LParen => Ok(Resource::Simple(self.simple()?)),
            _ => self.fail("a resource term"),
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        match self.peek().clone() {
            Tok::Ident(n) => {
                self.bump();
                Ok(Value::Var(Var::Free(Name::from(n))))
            }
            Tok::Lambda => {
                self.bump();
                let names = self.binders()?;
                let body = self.simple()?;
                Ok(bind_value_names(&names, Value::Abs(Arc::new(body))))
            }
            _ => self.fail("a resource value"),
        }
    }

    fn simple(&mut self) -> Result<Simple, ParseError> {
        let mut acc = match self.satom()? {
            Some(s) => s,
            None => return self.fail("a bag or `(`"),
        };
        while let Some(s) = self.satom()? {
            acc = Simple::app(acc, s);
        }
        Ok(acc)
    }

    fn satom(&mut self) -> Result<Option<Simple>, ParseError> {
        match self.peek() {
            Tok::LBrack => {
                self.bump();
                let mut elems = Vec::new();
                if *self.peek() != Tok::RBrack {
                    elems.push(self.value()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        elems.push(self.value()?);
                    }
                }
                self.expect(Tok::RBrack, "`,` or `]`")?;
                Ok(Some(Simple::Bag(Bag::new(elems))))
            }
            Tok::LParen => {
                self.bump();
                let s = self.simple()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Some(s))
            }
            _ => Ok(None),
        }
    }

    fn termset(&mut self) -> Result<TermSet, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut set = BTreeSet::new();
        if *self.peek() != Tok::RBrace {
            set.insert(self.resource()?);
            while *self.peek() == Tok::Semi {
                self.bump();
                set.insert(self.resource()?);
            }
        }
        self.expect(Tok::RBrace, "`;` or `}`")?;
        Ok(TermSet::from_set(set))
    }
}

/// `names` were written as `\x y z.` in front of the abstraction `v`, whose
/// body still mentions them as free names.
fn bind_value_names(names: &[String], v: Value) -> Value {
    let Value::Abs(body) = v else { return v };
    let mut acc = (*body).clone();
    for (i, n) in names.iter().enumerate().rev() {
        let closed = acc.close_name(&Name::new(n), 0);
        if i == 0 {
            return Value::Abs(Arc::new(closed));
        }
        acc = Simple::Bag(Bag::new(alloc::vec![Value::Abs(Arc::new(closed))]));
    }
    unreachable!("binder list is never empty")
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// A resource value or simple term. A bare bag is accepted.
pub fn parse_resource(src: &str) -> Result<Resource, ParseError> {
    let mut p = Parser::new(src)?;
    let r = p.resource()?;
    p.finish()?;
    Ok(r)
}

pub fn parse_termset(src: &str) -> Result<TermSet, ParseError> {
    let mut p = Parser::new(src)?;
    let s = p.termset()?;
    p.finish()?;
    Ok(s)
}

// ---------------------------------------------------------------------------
// printing

struct Names {
    taken: BTreeSet<Name>,
    stack: Vec<String>,
}

impl Names {
    fn new(free: BTreeSet<Name>) -> Self {
        Names {
            taken: free,
            stack: Vec::new(),
        }
    }

    /// The binder at depth d takes the d-th name of `x0, x1, …` that is not
    /// free in the printed term.
    fn push(&mut self) -> String {
        let mut seen = 0;
        let mut i = 0;
        loop {
            let cand = format!("x{i}");
            i += 1;
            if self.taken.contains(&Name::new(&cand)) {
                continue;
            }
            if seen == self.stack.len() {
                self.stack.push(cand.clone());
                return cand;
            }
            seen += 1;
        }
    }

    fn pop(&mut self) {
        self.stack.pop();
    }

    fn var(&self, v: &Var) -> String {
        match v {
            Var::Free(n) => n.as_str().to_string(),
            Var::Bound(i) => {
                let i = *i as usize;
                match self.stack.len().checked_sub(i + 1) {
                    Some(k) => self.stack[k].clone(),
                    None => format!("#{i}"),
                }
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Pos {
    Top,
    Fun,
    Arg,
}

/// Canonical text of a term. Binders are renamed `x0, x1, …` by depth,
/// skipping names that occur free.
pub fn print_term(t: &Term, unicode: bool) -> String {
    let mut names = Names::new(t.free_vars());
    let mut out = String::new();
    write_term(t, Pos::Top, unicode, &mut names, &mut out);
    out
}

fn write_term(t: &Term, pos: Pos, unicode: bool, names: &mut Names, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(&names.var(v)),
        Term::Bot => out.push_str(if unicode { "⊥" } else { "bot" }),
        Term::Abs(body) => {
            let paren = pos != Pos::Top;
            if paren {
                out.push('(');
            }
            out.push_str(if unicode { "λ" } else { "\\" });
            let n = names.push();
            out.push_str(&n);
            out.push('.');
            write_term(body, Pos::Top, unicode, names, out);
            names.pop();
            if paren {
                out.push(')');
            }
        }
        Term::App(f, a) => {
            let paren = pos == Pos::Arg;
            if paren {
                out.push('(');
            }
            write_term(f, Pos::Fun, unicode, names, out);
            let arg_paren = matches!(**a, Term::App(..) | Term::Abs(_));
            if !(arg_paren && out.ends_with(')')) {
                out.push(' ');
            }
            write_term(a, Pos::Arg, unicode, names, out);
            if paren {
                out.push(')');
            }
        }
    }
}

pub fn print_resource(r: &Resource, unicode: bool) -> String {
    let mut names = Names::new(r.free_vars());
    let mut out = String::new();
    match r {
        Resource::Value(v) => write_value(v, unicode, &mut names, &mut out),
        Resource::Simple(s) => write_simple(s, false, unicode, &mut names, &mut out),
    }
    out
}

pub fn print_simple(s: &Simple, unicode: bool) -> String {
    let mut names = Names::new(s.free_vars());
    let mut out = String::new();
    write_simple(s, false, unicode, &mut names, &mut out);
    out
}

pub fn print_termset(set: &TermSet, unicode: bool) -> String {
    if set.is_empty() {
        return "{}".into();
    }
    let items: Vec<String> = set.iter().map(|r| print_resource(r, unicode)).collect();
    format!("{{ {} }}", items.join(" ; "))
}

fn write_value(v: &Value, unicode: bool, names: &mut Names, out: &mut String) {
    match v {
        Value::Var(x) => out.push_str(&names.var(x)),
        Value::Abs(body) => {
            out.push_str(if unicode { "λ" } else { "\\" });
            let n = names.push();
            out.push_str(&n);
            out.push('.');
            write_simple(body, false, unicode, names, out);
            names.pop();
        }
    }
}

fn write_simple(s: &Simple, arg: bool, unicode: bool, names: &mut Names, out: &mut String) {
    match s {
        Simple::Bag(b) => {
            out.push('[');
            for (i, v) in b.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(v, unicode, names, out);
            }
            out.push(']');
        }
        Simple::App(f, a) => {
            if arg {
                out.push('(');
            }
            write_simple(f, false, unicode, names, out);
            write_simple(a, true, unicode, names, out);
            if arg {
                out.push(')');
            }
        }
    }
}

// ---------------------------------------------------------------------------
// tree rendering

/// Draws a Böhm-tree prefix: `λx` nodes, n-ary `@` nodes (head first),
/// `⊥` leaves and `?` where the depth bound cut a subtree. `Empty` is `∅`.
pub fn render_tree(bt: &BtResult, unicode: bool) -> String {
    let Some(tree) = &bt.tree else {
        return if unicode { "∅\n" } else { "empty\n" }.into();
    };
    let cut: BTreeSet<Vec<usize>> = bt.truncated.iter().cloned().collect();
    let mut names = Names::new(tree.term.free_vars());
    let mut lines = Vec::new();
    let mut path = Vec::new();
    node(&tree.term, &mut path, &cut, unicode, &mut names, "", "", &mut lines);
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

#[allow(clippy::too_many_arguments)]
fn node(
    t: &Term,
    path: &mut Vec<usize>,
    cut: &BTreeSet<Vec<usize>>,
    unicode: bool,
    names: &mut Names,
    first: &str,
    rest: &str,
    lines: &mut Vec<String>,
) {
    let (branch, last, pipe, blank) = if unicode {
        ("├── ", "└── ", "│   ", "    ")
    } else {
        ("|-- ", "`-- ", "|   ", "    ")
    };
    match t {
        Term::Var(v) => lines.push(format!("{first}{}", names.var(v))),
        Term::Bot => {
            let label = if cut.contains(path) {
                "?"
            } else if unicode {
                "⊥"
            } else {
                "bot"
            };
            lines.push(format!("{first}{label}"));
        }
        Term::Abs(body) => {
            let n = names.push();
            lines.push(format!("{first}{}{n}", if unicode { "λ" } else { "\\" }));
            path.push(0);
            node(
                body,
                path,
                cut,
                unicode,
                names,
                &format!("{rest}{last}"),
                &format!("{rest}{blank}"),
                lines,
            );
            path.pop();
            names.pop();
        }
        Term::App(..) => {
            lines.push(format!("{first}@"));
            // flatten the spine; child paths are [0,0,..,0] for the head and
            // [0,..,0,1] for each argument
            let (head, args) = t.spine();
            let n = args.len();
            let base = path.len();
            let mut children: Vec<(&Term, Vec<usize>)> = Vec::new();
            let mut hp = path.clone();
            hp.extend(core::iter::repeat_n(0, n));
            children.push((head, hp));
            for (i, a) in args.iter().enumerate() {
                let mut ap = path.clone();
                ap.extend(core::iter::repeat_n(0, n - 1 - i));
                ap.push(1);
                children.push((a, ap));
            }
            let count = children.len();
            for (i, (c, mut cp)) in children.into_iter().enumerate() {
                let is_last = i + 1 == count;
                let f = format!("{rest}{}", if is_last { last } else { branch });
                let r = format!("{rest}{}", if is_last { blank } else { pipe });
                node(c, &mut cp, cut, unicode, names, &f, &r, lines);
            }
            debug_assert_eq!(path.len(), base);
        }
    }
}
