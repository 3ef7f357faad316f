//! Text format for rings and ideals.
//!
//! ```text
//! spec := stmt*
//! stmt := ("char" INT | "vars" IDENT+ | "rel" POLY | "ideal" IDENT "=" POLY ("," POLY)*) ";"
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::fmt::Write as _;
use std::sync::Arc;

use hklab_core::estimator::RingSpec;
use hklab_core::groebner::IdealSpec;
use hklab_core::poly::{Polynomial, Ring};
use hklab_core::HkError;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

const KEYWORDS: [&str; 4] = ["char", "vars", "rel", "ideal"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("characteristic {0} is not a prime below 2^31")]
    InvalidCharacteristic(String),
    #[error("unknown ideal `{0}`")]
    UnknownIdeal(String),
    #[error(transparent)]
    Algebra(#[from] HkError),
}

impl SpecError {
    pub fn code(&self) -> &'static str {
        match self {
            SpecError::Syntax { .. } => "syntax_error",
            SpecError::UnknownVariable { .. } => "unknown_variable",
            SpecError::InvalidCharacteristic(_) => "invalid_characteristic",
            SpecError::UnknownIdeal(_) => "unknown_ideal",
            SpecError::Algebra(e) => e.code(),
        }
    }
}

type Result<T> = std::result::Result<T, SpecError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let content = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Int(digits.parse().expect("digits")),
                    line,
                    col,
                });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            } else if "+-*^(),;=".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line,
                    col,
                });
                i += 1;
            } else {
                return Err(syntax(line, col, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(out)
}

/// Unresolved polynomial expression.
#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Var(String, usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(syntax(line, col, message))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        let (line, col) = self.here();
        match self.peek() {
            Some(Tok::Ident(name)) if !KEYWORDS.contains(&name.as_str()) => {
                let name = name.clone();
                self.pos += 1;
                Ok((name, line, col))
            }
            _ => self.err("expected identifier"),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let (line, col) = self.here();
            let k = self.int()?;
            let k = k
                .to_u64()
                .filter(|&k| k <= hklab_core::monomial::MAX_EXPONENT)
                .ok_or_else(|| syntax(line, col, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Int(_)) => Ok(Expr::Int(self.int()?)),
            Some(Tok::Ident(_)) => {
                let (name, line, col) = self.ident()?;
                Ok(Expr::Var(name, line, col))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.err("expected a polynomial term"),
        }
    }
}

enum Stmt {
    Char(BigInt, usize, usize),
    Vars(Vec<(String, usize, usize)>),
    Rel(Expr),
    Ideal(String, usize, usize, Vec<Expr>),
}

fn parse_statements(text: &str) -> Result<Vec<Stmt>> {
    let toks = lex(text)?;
    let nlines = text.lines().count().max(1);
    let last_len = text.lines().last().map(|l| l.chars().count()).unwrap_or(0);
    let mut p = Parser {
        toks,
        pos: 0,
        end: (nlines, last_len + 1),
    };
    let mut out = Vec::new();
    while p.pos < p.toks.len() {
        let Some(Token { tok, line, col }) = p.next() else { break };
        let stmt = match tok {
            Tok::Ident(kw) if kw == "char" => Stmt::Char(p.int()?, line, col),
            Tok::Ident(kw) if kw == "vars" => {
                let mut names = vec![p.ident()?];
                while matches!(p.peek(), Some(Tok::Ident(_))) {
                    names.push(p.ident()?);
                }
                Stmt::Vars(names)
            }
            Tok::Ident(kw) if kw == "rel" => Stmt::Rel(p.expr()?),
            Tok::Ident(kw) if kw == "ideal" => {
                let (name, l, c) = p.ident()?;
                p.expect('=')?;
                let mut gens = vec![p.expr()?];
                while p.eat(',') {
                    gens.push(p.expr()?);
                }
                Stmt::Ideal(name, l, c, gens)
            }
            _ => return Err(syntax(line, col, "expected `char`, `vars`, `rel` or `ideal`")),
        };
        p.expect(';')?;
        out.push(stmt);
    }
    Ok(out)
}

fn eval(e: &Expr, ring: &Arc<Ring>) -> Result<Polynomial> {
    Ok(match e {
        Expr::Int(v) => {
            let p = BigInt::from(ring.characteristic());
            let r = ((v % &p) + &p) % &p;
            Polynomial::constant(ring, r.to_i64().expect("residue fits"))
        }
        Expr::Var(name, line, col) => match ring.var_index(name) {
            Some(i) => Polynomial::variable(ring, i),
            None => {
                return Err(SpecError::UnknownVariable {
                    name: name.clone(),
                    line: *line,
                    col: *col,
                })
            }
        },
        Expr::Neg(a) => eval(a, ring)?.neg(),
        Expr::Add(a, b) => eval(a, ring)?.add(&eval(b, ring)?)?,
        Expr::Sub(a, b) => eval(a, ring)?.sub(&eval(b, ring)?)?,
        Expr::Mul(a, b) => eval(a, ring)?.mul(&eval(b, ring)?)?,
        Expr::Pow(a, k) => eval(a, ring)?.pow(*k)?,
    })
}

/// A parsed spec: one ring, its relations, and named ideals in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputSpec {
    ring: Arc<Ring>,
    relations: Vec<Polynomial>,
    ideals: Vec<(String, Vec<Polynomial>)>,
}

pub fn parse_spec(text: &str) -> Result<InputSpec> {
    let stmts = parse_statements(text)?;
    let mut p: Option<u64> = None;
    let mut names: Option<Vec<String>> = None;
    for s in &stmts {
        match s {
            Stmt::Char(v, line, col) => {
                if p.is_some() {
                    return Err(syntax(*line, *col, "duplicate `char` statement"));
                }
                let value = v
                    .to_u64()
                    .filter(|&v| v < (1 << 31) && hklab_core::field::is_prime(v))
                    .ok_or_else(|| SpecError::InvalidCharacteristic(v.to_string()))?;
                p = Some(value);
            }
            Stmt::Vars(vs) => {
                if names.is_some() {
                    let (_, line, col) = &vs[0];
                    return Err(syntax(*line, *col, "duplicate `vars` statement"));
                }
                let mut seen: Vec<String> = Vec::new();
                for (n, line, col) in vs {
                    if seen.contains(n) {
                        return Err(syntax(*line, *col, format!("variable `{n}` declared twice")));
                    }
                    seen.push(n.clone());
                }
                names = Some(seen);
            }
            _ => {}
        }
    }
    let p = p.ok_or_else(|| syntax(1, 1, "missing `char` statement"))?;
    let names = names.ok_or_else(|| syntax(1, 1, "missing `vars` statement"))?;
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Ring::with_names(p, &refs)?;
    let mut relations = Vec::new();
    let mut ideals: Vec<(String, Vec<Polynomial>)> = Vec::new();
    for s in &stmts {
        match s {
            Stmt::Rel(e) => relations.push(eval(e, &ring)?),
            Stmt::Ideal(name, line, col, gens) => {
                if ideals.iter().any(|(n, _)| n == name) {
                    return Err(syntax(*line, *col, format!("ideal `{name}` defined twice")));
                }
                let polys = gens.iter().map(|g| eval(g, &ring)).collect::<Result<Vec<_>>>()?;
                ideals.push((name.clone(), polys));
            }
            _ => {}
        }
    }
    Ok(InputSpec { ring, relations, ideals })
}

impl InputSpec {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    pub fn variables(&self) -> &[String] {
        self.ring.names()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn ideals(&self) -> &[(String, Vec<Polynomial>)] {
        &self.ideals
    }

    pub fn ideal(&self, name: &str) -> Option<&[Polynomial]> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, g)| g.as_slice())
    }

    pub fn ring_spec(&self) -> std::result::Result<RingSpec, HkError> {
        RingSpec::new(&self.ring, self.relations.clone())
    }

    /// The named ideal, or the ideal of all variables when `name` is None.
    pub fn ideal_spec(&self, name: Option<&str>) -> Result<IdealSpec> {
        match name {
            None => Ok(IdealSpec::maximal(&self.ring)),
            Some(n) => {
                let gens = self.ideal(n).ok_or_else(|| SpecError::UnknownIdeal(n.to_string()))?;
                Ok(IdealSpec::new(&self.ring, gens.to_vec())?)
            }
        }
    }

    /// Canonical text form; parses back to an equal spec.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "char {};", self.characteristic()).unwrap();
        writeln!(out, "vars {};", self.variables().join(" ")).unwrap();
        for r in &self.relations {
            writeln!(out, "rel {r};").unwrap();
        }
        for (name, gens) in &self.ideals {
            let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            writeln!(out, "ideal {name} = {};", gens.join(", ")).unwrap();
        }
        out
    }
}

/// Parses a comma-separated list of positive integers, e.g. "2,4,8".
pub fn parse_ladder(text: &str) -> std::result::Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let v: BigInt = part.trim().parse().map_err(|_| format!("bad ladder entry `{part}`"))?;
        if !v.is_positive() {
            return Err(format!("ladder entries must be positive, got {v}"));
        }
        out.push(v.to_u64().ok_or_else(|| format!("ladder entry {v} too large"))?);
    }
    Ok(out)
}
