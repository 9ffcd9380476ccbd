//! Concrete syntax for loop identities.
//!
//! Grammar: `term := var | 'e' | '(' term ')' | term op term` with
//! `op` in `{*, \, /}`. Explicit `*` binds loosest; `\` and `/` bind
//! tighter; both levels associate to the left. An `=` splits the two
//! sides of an identity. Variables are single letters a-z except `e`.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::table::LoopTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Mul,
    LDiv,
    RDiv,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Mul => '*',
            BinOp::LDiv => '\\',
            BinOp::RDiv => '/',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(char),
    Identity,
    Bin(BinOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn vars(&self, out: &mut Vec<char>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::Identity => {}
            Term::Bin(_, l, r) => {
                l.vars(out);
                r.vars(out);
            }
        }
    }

    pub fn eval(&self, t: &LoopTable, env: &[(char, usize)]) -> usize {
        match self {
            Term::Var(v) => env.iter().find(|(c, _)| c == v).expect("unbound variable").1,
            Term::Identity => 0,
            Term::Bin(op, l, r) => {
                let a = l.eval(t, env);
                let b = r.eval(t, env);
                match op {
                    BinOp::Mul => t.mul(a, b),
                    BinOp::LDiv => t.ldiv(a, b),
                    BinOp::RDiv => t.rdiv(a, b),
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Identity => write!(f, "e"),
            Term::Bin(op, l, r) => write!(f, "({l}{}{r})", op.symbol()),
        }
    }
}

/// A parsed `lhs = rhs` pair with its variable set in first-occurrence
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub vars: Vec<char>,
    pub source: String,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn primary(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(t)
            }
            Some(b'e') => {
                self.pos += 1;
                Ok(Term::Identity)
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(Term::Var(c as char))
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    /// Division level: `\` and `/`, left-associative.
    fn factor(&mut self) -> Result<Term> {
        let mut acc = self.primary()?;
        loop {
            match self.peek() {
                Some(b'\\') => {
                    self.pos += 1;
                    acc = Term::Bin(BinOp::LDiv, Box::new(acc), Box::new(self.primary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = Term::Bin(BinOp::RDiv, Box::new(acc), Box::new(self.primary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Multiplication level: explicit `*`, loosest, left-associative.
    fn term(&mut self) -> Result<Term> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = Term::Bin(BinOp::Mul, Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(t)
}

pub fn parse_identity(text: &str) -> Result<Identity> {
    let eq = text
        .find('=')
        .ok_or(Error::Parse {
            pos: text.len(),
            msg: "expected '='".into(),
        })?;
    let lhs = parse_term(&text[..eq])?;
    let rhs = parse_term(&text[eq + 1..]).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: eq + 1 + pos,
            msg,
        },
        other => other,
    })?;
    let mut vars = Vec::new();
    lhs.vars(&mut vars);
    rhs.vars(&mut vars);
    Ok(Identity {
        lhs,
        rhs,
        vars,
        source: text.trim().to_string(),
    })
}

/// One identity per line; `#` comments and blank lines skipped.
pub fn parse_identity_file(text: &str) -> Result<Vec<Identity>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_identity)
        .collect()
}

/// Evaluates both sides over all variable assignments; the first
/// violation in lexicographic assignment order is reported.
pub fn verify_identity(t: &LoopTable, id: &Identity) -> Report {
    let n = t.n();
    let k = id.vars.len();
    let mut env: Vec<(char, usize)> = id.vars.iter().map(|&v| (v, 0)).collect();
    let mut counter = vec![0usize; k];
    loop {
        for (slot, &value) in env.iter_mut().zip(counter.iter()) {
            slot.1 = value;
        }
        if id.lhs.eval(t, &env) != id.rhs.eval(t, &env) {
            let bind: Vec<String> = env.iter().map(|(v, x)| format!("{v}={x}")).collect();
            return Report::fail("identity", bind.join(" "))
                .with_detail("equation", &id.source);
        }
        // Odometer increment, most significant variable first.
        let mut i = k;
        loop {
            if i == 0 {
                return Report::pass("identity").with_detail("equation", &id.source);
            }
            i -= 1;
            counter[i] += 1;
            if counter[i] < n {
                break;
            }
            counter[i] = 0;
        }
    }
}
