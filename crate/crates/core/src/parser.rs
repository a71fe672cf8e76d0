//! Textual polynomial syntax.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit. Rational literals `a/b` are embedded
//! in the coefficient field; in `F_p` the denominator must be a unit.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::coefficients::Field;
use crate::poly::{Monomial, PolyRing, Polynomial};

const MAX_NESTING: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DiagnosticKind {
    Syntax,
    UnknownVariable,
    BadCoefficient,
    /// Strict parsing only: the expression has terms above the degree cap.
    DegreeCap,
}

/// A parse failure with a 1-based `(line, column)` position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseDiagnostics {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub kind: DiagnosticKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(text: &'a str) -> Result<Vec<(Tok, usize)>, ParseDiagnostics> {
        let mut lx = Lexer {
            text,
            toks: Vec::new(),
        };
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            let tok = match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    i += 1;
                    continue;
                }
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'^' => Tok::Caret,
                b'/' => Tok::Slash,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: BigInt = text[start..i].parse().expect("digits");
                    lx.toks.push((Tok::Int(n), start));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    lx.toks
                        .push((Tok::Ident(text[start..i].to_string()), start));
                    continue;
                }
                _ => {
                    let ch = text[start..].chars().next().unwrap();
                    return Err(diag(
                        text,
                        start,
                        DiagnosticKind::Syntax,
                        format!("unexpected character `{ch}`"),
                    ));
                }
            };
            lx.toks.push((tok, start));
            i += 1;
        }
        lx.toks.push((Tok::End, lx.text.len()));
        Ok(lx.toks)
    }
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn diag(text: &str, offset: usize, kind: DiagnosticKind, message: String) -> ParseDiagnostics {
    let (line, column) = position(text, offset);
    ParseDiagnostics {
        line,
        column,
        message,
        kind,
    }
}

struct Parser<'r, 't, F: Field> {
    ring: &'r PolyRing<F>,
    text: &'t str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
    /// Offset of the first operation that dropped terms above the cap.
    truncated_at: Option<usize>,
}

type PResult<E> = Result<Polynomial<E>, ParseDiagnostics>;

impl<F: Field> Parser<'_, '_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: DiagnosticKind, message: String) -> ParseDiagnostics {
        diag(self.text, self.offset(), kind, message)
    }

    fn expr(&mut self) -> PResult<F::Elem> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error(
                DiagnosticKind::Syntax,
                "expression nested too deeply".into(),
            ));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> PResult<F::Elem> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            let (_, off) = self.bump();
            let t = self.unary()?;
            let (prod, dropped) = self.ring.mul_limit(&acc, &t, self.ring.cap() + 1);
            self.note_truncation(dropped, off);
            acc = prod;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<F::Elem> {
        match self.peek() {
            Tok::Minus | Tok::Plus => {
                let (t, _) = self.bump();
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(self.error(DiagnosticKind::Syntax, "too many unary signs".into()));
                }
                let inner = self.unary()?;
                self.depth -= 1;
                Ok(if t == Tok::Minus {
                    self.ring.neg(&inner)
                } else {
                    inner
                })
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<F::Elem> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, caret) = self.bump();
        match self.bump() {
            (Tok::Int(n), off) => {
                let e = n.to_u32().ok_or_else(|| {
                    diag(
                        self.text,
                        off,
                        DiagnosticKind::Syntax,
                        format!("exponent {n} too large"),
                    )
                })?;
                if *self.peek() == Tok::Caret {
                    return Err(self.error(
                        DiagnosticKind::Syntax,
                        "chained exponents are ambiguous; use parentheses".into(),
                    ));
                }
                let (value, dropped) = self.pow(&base, e);
                self.note_truncation(dropped, caret);
                Ok(value)
            }
            (t, off) => Err(diag(
                self.text,
                off,
                DiagnosticKind::Syntax,
                format!("expected a non-negative integer exponent, found {t}"),
            )),
        }
    }

    fn note_truncation(&mut self, dropped: bool, offset: usize) {
        if dropped && self.truncated_at.is_none() {
            self.truncated_at = Some(offset);
        }
    }

    /// `base^e` truncated at the cap, and whether terms were dropped.
    fn pow(&self, base: &Polynomial<F::Elem>, e: u32) -> (Polynomial<F::Elem>, bool) {
        let limit = self.ring.cap() + 1;
        // single terms never need repeated squaring; large exponents vanish
        if let [(m, c)] = base.terms() {
            let exps: Vec<u64> = m.exponents().iter().map(|&a| a as u64 * e as u64).collect();
            let degree: u64 = exps.iter().sum();
            if degree >= limit as u64 {
                return (self.ring.zero(), true);
            }
            let exps: Vec<u32> = exps.into_iter().map(|a| a as u32).collect();
            let mut coeff = self.ring.field().one();
            for _ in 0..e {
                coeff = self.ring.field().mul(&coeff, c);
            }
            return (self.ring.term(Monomial::new(&exps), coeff), false);
        }
        let (mut acc, mut base, mut e) = (self.ring.one(), base.clone(), e);
        let mut dropped = false;
        while e > 0 {
            if e & 1 == 1 {
                let (next, d) = self.ring.mul_limit(&acc, &base, limit);
                acc = next;
                dropped |= d;
            }
            e >>= 1;
            if e > 0 {
                let (next, d) = self.ring.mul_limit(&base, &base, limit);
                base = next;
                dropped |= d;
            }
        }
        (acc, dropped)
    }

    fn atom(&mut self) -> PResult<F::Elem> {
        let (tok, off) = self.bump();
        match tok {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den_tok, den_off) = self.bump();
                    let Tok::Int(d) = den_tok else {
                        return Err(diag(
                            self.text,
                            den_off,
                            DiagnosticKind::Syntax,
                            format!("expected an integer denominator, found {den_tok}"),
                        ));
                    };
                    let c = if d.is_zero() {
                        None
                    } else {
                        self.ring.field().from_ratio(&n, &d)
                    };
                    let c = c.ok_or_else(|| {
                        diag(
                            self.text,
                            den_off,
                            DiagnosticKind::BadCoefficient,
                            format!("denominator {d} is zero in {}", self.ring.field().spec()),
                        )
                    })?;
                    self.no_implicit_product()?;
                    return Ok(self.ring.constant(c));
                }
                self.no_implicit_product()?;
                Ok(self.ring.constant(self.ring.field().from_bigint(&n)))
            }
            Tok::Ident(name) => {
                let i = self.ring.var_index(&name).ok_or_else(|| {
                    diag(
                        self.text,
                        off,
                        DiagnosticKind::UnknownVariable,
                        format!(
                            "unknown variable `{name}` (declared: {})",
                            self.ring.var_names().join(",")
                        ),
                    )
                })?;
                self.no_implicit_product()?;
                Ok(self.ring.var(i))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::RParen, _) => {}
                    (t, off) => {
                        return Err(diag(
                            self.text,
                            off,
                            DiagnosticKind::Syntax,
                            format!("expected `)`, found {t}"),
                        ))
                    }
                }
                self.no_implicit_product()?;
                Ok(inner)
            }
            t => Err(diag(
                self.text,
                off,
                DiagnosticKind::Syntax,
                format!("expected a number, variable or `(`, found {t}"),
            )),
        }
    }

    fn no_implicit_product(&self) -> Result<(), ParseDiagnostics> {
        match self.peek() {
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => Err(self.error(
                DiagnosticKind::Syntax,
                "implicit multiplication is not supported; write `*`".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Parses one polynomial expression; terms above the degree cap are
/// discarded, as in every ring operation.
pub fn parse_polynomial<F: Field>(
    text: &str,
    ring: &PolyRing<F>,
) -> Result<Polynomial<F::Elem>, ParseDiagnostics> {
    parse_with(text, ring, false)
}

/// Like [`parse_polynomial`], but an expression with terms above the cap
/// is rejected with [`DiagnosticKind::DegreeCap`] instead of truncated.
pub fn parse_polynomial_strict<F: Field>(
    text: &str,
    ring: &PolyRing<F>,
) -> Result<Polynomial<F::Elem>, ParseDiagnostics> {
    parse_with(text, ring, true)
}

fn parse_with<F: Field>(text: &str, ring: &PolyRing<F>, strict: bool) -> PResult<F::Elem> {
    let toks = Lexer::run(text)?;
    let mut p = Parser {
        ring,
        text,
        toks,
        pos: 0,
        depth: 0,
        truncated_at: None,
    };
    if *p.peek() == Tok::End {
        return Err(p.error(DiagnosticKind::Syntax, "empty expression".into()));
    }
    let f = p.expr()?;
    match p.peek() {
        Tok::End => {}
        Tok::RParen => return Err(p.error(DiagnosticKind::Syntax, "unbalanced `)`".into())),
        t => return Err(p.error(DiagnosticKind::Syntax, format!("unexpected {t}"))),
    }
    match p.truncated_at {
        Some(off) if strict => Err(diag(
            text,
            off,
            DiagnosticKind::DegreeCap,
            format!(
                "terms of degree above the cap {} would be dropped",
                ring.cap()
            ),
        )),
        _ => Ok(f),
    }
}

/// Parses a corpus: one polynomial per line, `#` starts a comment, blank
/// lines are skipped. Diagnostics carry the line number within `text`.
pub fn parse_polynomial_list<F: Field>(
    text: &str,
    ring: &PolyRing<F>,
    strict: bool,
) -> Result<Vec<Polynomial<F::Elem>>, ParseDiagnostics> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let f = parse_with(line, ring, strict).map_err(|mut d| {
            d.line = idx + 1;
            d
        })?;
        out.push(f);
    }
    Ok(out)
}

fn write_monomial(out: &mut String, m: &Monomial, names: &[String]) {
    let mut first = true;
    for (e, name) in m.exponents().iter().zip(names) {
        if *e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if *e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Canonical text form; `parse_polynomial` reads it back to the same value.
pub fn print_polynomial<F: Field>(f: &Polynomial<F::Elem>, ring: &PolyRing<F>) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let k = ring.field();
    let mut out = String::new();
    for (idx, (m, c)) in f.terms().iter().enumerate() {
        let scalar = k.to_scalar(c);
        let negative = scalar.is_negative();
        let magnitude = if negative {
            k.to_scalar(&k.neg(c))
        } else {
            scalar
        };
        if negative {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        let unit = magnitude.to_string() == "1";
        if m.is_one() {
            out.push_str(&magnitude.to_string());
        } else {
            if !unit {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            write_monomial(&mut out, m, ring.var_names());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{PrimeField, Rationals};

    fn ring_p(p: u32) -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(p).unwrap(), &["x", "y"], 64).unwrap()
    }

    fn qring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, &["x", "y"], 64).unwrap()
    }

    #[test]
    fn parses_examples() {
        let r = ring_p(5);
        let f = parse_polynomial("x^6+y^6", &r).unwrap();
        assert_eq!(f, r.from_int_terms(&[(&[6, 0], 1), (&[0, 6], 1)]));
        assert_eq!(print_polynomial(&f, &r), "x^6+y^6");

        let r2 = ring_p(2);
        let f = parse_polynomial("y^2+x^3*y", &r2).unwrap();
        assert_eq!(f, r2.from_int_terms(&[(&[0, 2], 1), (&[3, 1], 1)]));

        let q = qring();
        assert!(parse_polynomial("x^2 - x^2", &q).unwrap().is_zero());
        assert_eq!(print_polynomial(&q.zero(), &q), "0");
    }

    #[test]
    fn prints_residues_non_negative() {
        let r = ring_p(5);
        let f = parse_polynomial("-x", &r).unwrap();
        assert_eq!(print_polynomial(&f, &r), "4*x");
    }

    #[test]
    fn precedence() {
        let q = qring();
        let a = parse_polynomial("-x^2", &q).unwrap();
        assert_eq!(print_polynomial(&a, &q), "-x^2");
        let b = parse_polynomial("2*x^2*y - (x+y)^2", &q).unwrap();
        assert_eq!(print_polynomial(&b, &q), "-x^2-2*x*y-y^2+2*x^2*y");
        let c = parse_polynomial("1/2*x - 3/4", &q).unwrap();
        assert_eq!(print_polynomial(&c, &q), "-3/4+1/2*x");
        assert_eq!(parse_polynomial(&print_polynomial(&c, &q), &q).unwrap(), c);
    }

    #[test]
    fn rational_literal_in_prime_field() {
        let r = ring_p(5);
        let f = parse_polynomial("1/2*x", &r).unwrap();
        assert_eq!(print_polynomial(&f, &r), "3*x");
        let err = parse_polynomial("1/5*x", &r).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::BadCoefficient);
        assert_eq!((err.line, err.column), (1, 3));
        let err = parse_polynomial("x + 3/0", &qring()).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::BadCoefficient);
    }

    #[test]
    fn diagnostics() {
        let q = qring();
        let e = parse_polynomial("2x", &q).unwrap_err();
        assert_eq!((e.kind, e.column), (DiagnosticKind::Syntax, 2));
        let e = parse_polynomial("x + z", &q).unwrap_err();
        assert_eq!((e.kind, e.column), (DiagnosticKind::UnknownVariable, 5));
        let e = parse_polynomial("x +\n  (y", &q).unwrap_err();
        assert_eq!((e.line, e.kind), (2, DiagnosticKind::Syntax));
        assert!(parse_polynomial("", &q).is_err());
        assert!(parse_polynomial("x^y", &q).is_err());
        assert!(parse_polynomial("x^2^3", &q).is_err());
        assert!(parse_polynomial("(x))", &q).is_err());
        assert!(parse_polynomial("x $ y", &q).is_err());
        assert!(parse_polynomial("x^99999999999", &q).is_err());
        let deep = "(".repeat(5000) + "x" + &")".repeat(5000);
        assert!(parse_polynomial(&deep, &q).is_err());
        let signs = "-".repeat(5000) + "x";
        assert!(parse_polynomial(&signs, &q).is_err());
    }

    #[test]
    fn huge_powers_truncate() {
        let q = qring();
        assert!(parse_polynomial("x^100", &q).unwrap().is_zero());
        assert!(parse_polynomial("(x+y)^70", &q).unwrap().is_zero());
    }

    #[test]
    fn list_format() {
        let q = qring();
        let text = "# germs\nx^2+y^3\n\n  y^2 # cusp-ish\n";
        let fs = parse_polynomial_list(text, &q, false).unwrap();
        assert_eq!(fs.len(), 2);
        let err = parse_polynomial_list("x\n\ny+*\n", &q, false).unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn multichar_variables() {
        let r = PolyRing::new(Rationals, &["x1", "x2", "t_0"], 64).unwrap();
        let f = parse_polynomial("x1^2*t_0 - 3*x2", &r).unwrap();
        assert_eq!(print_polynomial(&f, &r), "-3*x2+x1^2*t_0");
    }
}
