//! Sparse multivariate polynomials under the local degree ordering
//! (negative degree reverse lexicographic, `ds`).
//!
//! A [`Polynomial`] is a bare term list; all arithmetic goes through a
//! [`PolyRing`], which carries the coefficient field, variable names and the
//! degree cap. Terms of total degree above the cap are discarded, so every
//! value is the image of a power series in `K[x]/m^(cap+1)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

use crate::coefficients::Field;
use crate::stdbasis::BasisCache;

pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("a ring needs at least one variable")]
    NoVariables,
    #[error("variable name `{0}` is not an identifier")]
    BadVariableName(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("degree cap must be at least 2, got {0}")]
    CapTooSmall(u32),
    #[error("degree cap {cap} exceeded (needed degree {needed}); raise --cap")]
    DegreeCapExceeded { cap: u32, needed: u32 },
}

/// Total degree extended by infinity: the order of a power series or an
/// ideal. `Finite(_) < Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(d),
            Order::Infinity => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinity => write!(f, "infinity"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(d) => s.serialize_u32(*d),
            Order::Infinity => s.serialize_str("infinity"),
        }
    }
}

type Exponents = SmallVec<[u32; 4]>;

/// A monomial `x^a`, stored densely with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: exps.into(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; num_vars],
            degree: 0,
        }
    }

    /// `x_i^e`.
    pub fn var_power(num_vars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(num_vars);
        m.exps[i] = e;
        m.degree = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The single variable index if this is a pure power `x_i^e`, e > 0.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nz = self.exps.iter().enumerate().filter(|(_, e)| **e > 0);
        match (nz.next(), nz.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.exps.as_slice())
    }
}

/// Negative degree reverse lexicographic comparison. `Greater` means
/// "closer to the leading position": lower total degree wins, ties are
/// broken by the last differing exponent, smaller exponent winning.
pub fn mono_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    debug_assert_eq!(a.exps.len(), b.exps.len());
    match b.degree.cmp(&a.degree) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
        match y.cmp(x) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        mono_cmp(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree exactly `d` in `n` variables, in
/// decreasing local order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::new(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| mono_cmp(b, a));
    out
}

/// A polynomial: terms with nonzero coefficients, strictly decreasing in the
/// local ordering, so the leading term comes first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.1)
    }

    /// `ord(f)`: the least total degree of a term.
    pub fn ord(&self) -> Order {
        // terms are sorted by ascending degree
        match self.terms.first() {
            Some((m, _)) => Order::Finite(m.degree),
            None => Order::Infinity,
        }
    }

    /// Largest total degree of a term.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0.degree)
    }

    /// Difference between the largest degree and the leading-term degree.
    pub fn ecart(&self) -> Option<u32> {
        Some(self.max_degree()? - self.terms.first()?.0.degree)
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }
}

impl<E: fmt::Debug> fmt::Debug for Polynomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|(m, c)| (c, m)))
            .finish()
    }
}

/// `ecart(f)`; `None` for the zero polynomial.
pub fn ecart<E>(f: &Polynomial<E>) -> Option<u32> {
    f.ecart()
}

/// Ring of (truncated) power series `K[[x_1..x_n]]/m^(cap+1)` with the local
/// degree ordering.
pub struct PolyRing<F: Field> {
    field: F,
    var_names: Vec<String>,
    cap: u32,
    pub(crate) cache: Mutex<BasisCache<F::Elem>>,
}

impl<F: Field> Clone for PolyRing<F> {
    fn clone(&self) -> Self {
        PolyRing {
            field: self.field.clone(),
            var_names: self.var_names.clone(),
            cap: self.cap,
            cache: Mutex::default(),
        }
    }
}

impl<F: Field> fmt::Debug for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolyRing")
            .field("field", &self.field.spec())
            .field("vars", &self.var_names)
            .field("cap", &self.cap)
            .finish()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, var_names: &[S], cap: u32) -> Result<Self, PolyError> {
        if var_names.is_empty() {
            return Err(PolyError::NoVariables);
        }
        if cap < 2 {
            return Err(PolyError::CapTooSmall(cap));
        }
        let mut names: Vec<String> = Vec::with_capacity(var_names.len());
        for v in var_names {
            let v = v.as_ref().trim();
            if !is_identifier(v) {
                return Err(PolyError::BadVariableName(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(PolyError::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(PolyRing {
            field,
            var_names: names,
            cap,
            cache: Mutex::default(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial<F::Elem> {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F::Elem> {
        self.term(Monomial::one(self.num_vars()), c)
    }

    pub fn int(&self, n: i64) -> Polynomial<F::Elem> {
        self.constant(self.field.from_i64(n))
    }

    pub fn var(&self, i: usize) -> Polynomial<F::Elem> {
        self.term(Monomial::var_power(self.num_vars(), i, 1), self.field.one())
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial<F::Elem> {
        self.term(m, self.field.one())
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Polynomial<F::Elem> {
        debug_assert_eq!(m.num_vars(), self.num_vars());
        if self.field.is_zero(&c) || m.degree > self.cap {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    /// The monomial `m` even above the cap, for work that runs untruncated.
    pub(crate) fn monomial_uncapped(&self, m: Monomial) -> Polynomial<F::Elem> {
        Polynomial {
            terms: vec![(m, self.field.one())],
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// drops zeros and terms above the cap.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F::Elem> {
        terms.retain(|(m, c)| m.degree <= self.cap && !self.field.is_zero(c));
        terms.sort_by(|a, b| mono_cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Polynomial { terms: out }
    }

    /// Builds from integer-coefficient terms given as `(exponents, coeff)`.
    pub fn from_int_terms(&self, terms: &[(&[u32], i64)]) -> Polynomial<F::Elem> {
        self.from_terms(
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e), self.field.from_i64(*c)))
                .collect(),
        )
    }

    pub fn add(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.merge(f, g, None, u32::MAX).0
    }

    pub fn sub(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let minus_one = self.field.neg(&self.field.one());
        self.axpy(f, &minus_one, None, g, self.cap + 1).0
    }

    pub fn neg(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial<F::Elem>, c: &F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
        }
    }

    /// Scales `f` so that its leading coefficient is 1.
    pub fn monic(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        match f.leading_coefficient() {
            Some(lc) if !self.field.is_one(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(f, &inv)
            }
            _ => f.clone(),
        }
    }

    /// `c * m * f`, truncated at the cap.
    pub fn mul_term(
        &self,
        f: &Polynomial<F::Elem>,
        m: &Monomial,
        c: &F::Elem,
    ) -> Polynomial<F::Elem> {
        self.mul_term_limit(f, m, c, self.cap + 1).0
    }

    /// `c * m * f` keeping only terms of degree `< limit`; the flag reports
    /// whether a nonzero term was dropped.
    pub(crate) fn mul_term_limit(
        &self,
        f: &Polynomial<F::Elem>,
        m: &Monomial,
        c: &F::Elem,
        limit: u32,
    ) -> (Polynomial<F::Elem>, bool) {
        if self.field.is_zero(c) {
            return (Polynomial::zero(), false);
        }
        let mut dropped = false;
        let mut terms = Vec::with_capacity(f.terms.len());
        for (fm, fc) in &f.terms {
            if fm.degree + m.degree >= limit {
                dropped = true;
                break;
            }
            terms.push((fm.mul(m), self.field.mul(fc, c)));
        }
        (Polynomial { terms }, dropped)
    }

    pub fn mul(&self, f: &Polynomial<F::Elem>, g: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.mul_limit(f, g, self.cap + 1).0
    }

    /// Product without truncation; fails if a term would exceed the cap.
    pub fn mul_exact(
        &self,
        f: &Polynomial<F::Elem>,
        g: &Polynomial<F::Elem>,
    ) -> Result<Polynomial<F::Elem>, PolyError> {
        if let (Some(a), Some(b)) = (f.max_degree(), g.max_degree()) {
            if a + b > self.cap {
                return Err(PolyError::DegreeCapExceeded {
                    cap: self.cap,
                    needed: a + b,
                });
            }
        }
        Ok(self.mul(f, g))
    }

    pub(crate) fn mul_limit(
        &self,
        f: &Polynomial<F::Elem>,
        g: &Polynomial<F::Elem>,
        limit: u32,
    ) -> (Polynomial<F::Elem>, bool) {
        let (small, large) = if f.terms.len() <= g.terms.len() {
            (f, g)
        } else {
            (g, f)
        };
        let mut acc = Polynomial::zero();
        let mut dropped = false;
        for (m, c) in &small.terms {
            let (next, d) = self.axpy(&acc, c, Some(m), large, limit);
            acc = next;
            dropped |= d;
        }
        (acc, dropped)
    }

    pub fn pow(&self, f: &Polynomial<F::Elem>, mut e: u32) -> Polynomial<F::Elem> {
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `h + c * m * g` restricted to degrees `< limit`. The flag reports
    /// whether a nonzero term was dropped by the limit.
    pub(crate) fn axpy(
        &self,
        h: &Polynomial<F::Elem>,
        c: &F::Elem,
        m: Option<&Monomial>,
        g: &Polynomial<F::Elem>,
        limit: u32,
    ) -> (Polynomial<F::Elem>, bool) {
        let k = &self.field;
        let shift = m.map_or(0, |m| m.degree);
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(h.terms.len() + g.terms.len());
        let mut dropped = false;
        let mut hi = h.terms.iter().peekable();
        let mut gi = g.terms.iter().peekable();
        loop {
            let next_g = gi.peek().map(|(gm, gc)| (gm, gc));
            match (hi.peek(), next_g) {
                (None, None) => break,
                (Some(_), None) => {
                    let (hm, hc) = hi.next().unwrap();
                    if hm.degree >= limit {
                        dropped = true;
                        break;
                    }
                    out.push((hm.clone(), hc.clone()));
                }
                (hp, Some((gm, gc))) => {
                    let sm = match m {
                        Some(m) => gm.mul(m),
                        None => (*gm).clone(),
                    };
                    let ord = match hp {
                        Some((hm, _)) => mono_cmp(hm, &sm),
                        None => Ordering::Less,
                    };
                    match ord {
                        Ordering::Greater => {
                            let (hm, hc) = hi.next().unwrap();
                            if hm.degree >= limit {
                                dropped = true;
                                break;
                            }
                            out.push((hm.clone(), hc.clone()));
                        }
                        Ordering::Less => {
                            gi.next();
                            if gm.degree + shift >= limit {
                                dropped = true;
                                break;
                            }
                            let v = k.mul(gc, c);
                            if !k.is_zero(&v) {
                                out.push((sm, v));
                            }
                        }
                        Ordering::Equal => {
                            let (hm, hc) = hi.next().unwrap();
                            gi.next();
                            if hm.degree >= limit {
                                dropped = true;
                                break;
                            }
                            let v = k.add(hc, &k.mul(gc, c));
                            if !k.is_zero(&v) {
                                out.push((sm, v));
                            }
                        }
                    }
                }
            }
        }
        (Polynomial { terms: out }, dropped)
    }

    /// `h + g` over an explicit limit, used by `add`.
    fn merge(
        &self,
        f: &Polynomial<F::Elem>,
        g: &Polynomial<F::Elem>,
        m: Option<&Monomial>,
        limit: u32,
    ) -> (Polynomial<F::Elem>, bool) {
        self.axpy(f, &self.field.one(), m, g, limit)
    }

    /// Drops all terms of degree `>= limit`.
    pub fn truncate_below(&self, f: &Polynomial<F::Elem>, limit: u32) -> Polynomial<F::Elem> {
        let end = f.terms.partition_point(|(m, _)| m.degree < limit);
        Polynomial {
            terms: f.terms[..end].to_vec(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, f: &Polynomial<F::Elem>, i: usize) -> Polynomial<F::Elem> {
        assert!(i < self.num_vars(), "variable index {i} out of range");
        let k = &self.field;
        let terms = f
            .terms
            .iter()
            .filter(|(m, _)| m.exps[i] > 0)
            .filter_map(|(m, c)| {
                let e = m.exps[i];
                let coeff = k.mul(c, &k.from_bigint(&BigInt::from(e)));
                if k.is_zero(&coeff) {
                    return None;
                }
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                Some((
                    Monomial {
                        exps,
                        degree: m.degree - 1,
                    },
                    coeff,
                ))
            })
            .collect();
        // differentiation can reorder terms (x^2 vs xy -> x vs y)
        self.from_terms(terms)
    }

    /// Substitutes `images[i]` for `x_i`, truncating at the cap.
    pub fn substitute(
        &self,
        f: &Polynomial<F::Elem>,
        images: &[Polynomial<F::Elem>],
    ) -> Polynomial<F::Elem> {
        assert_eq!(images.len(), self.num_vars());
        let mut acc = self.zero();
        for (m, c) in &f.terms {
            let mut t = self.constant(c.clone());
            for (i, e) in m.exps.iter().enumerate() {
                if *e > 0 {
                    t = self.mul(&t, &self.pow(&images[i], *e));
                }
            }
            acc = self.add(&acc, &t);
        }
        acc
    }

    /// Constant coefficient (zero if absent).
    pub fn constant_coefficient(&self, f: &Polynomial<F::Elem>) -> F::Elem {
        match f.terms.first() {
            Some((m, c)) if m.degree == 0 => c.clone(),
            _ => self.field.zero(),
        }
    }

    /// Units of the local ring are exactly the series with nonzero constant term.
    pub fn is_unit(&self, f: &Polynomial<F::Elem>) -> bool {
        !self.field.is_zero(&self.constant_coefficient(f))
    }
}

/// `ord(f)`.
pub fn poly_ord<E>(f: &Polynomial<E>) -> Order {
    f.ord()
}
