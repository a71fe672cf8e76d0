//! Ideal-level queries in the local ring: powers of the maximal ideal,
//! sums and products, colength, Hilbert function, order, and containment of
//! powers of `m`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::coefficients::Field;
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Order, PolyRing, Polynomial};
use crate::stdbasis::{cached_std_basis, is_member, standard_monomials, Ideal, StdBasis};

/// `dim_K K[[x]]/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColengthResult {
    Finite(usize),
    Infinite,
}

impl ColengthResult {
    pub fn finite(self) -> Option<usize> {
        match self {
            ColengthResult::Finite(d) => Some(d),
            ColengthResult::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ColengthResult::Finite(_))
    }
}

impl fmt::Display for ColengthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColengthResult::Finite(d) => write!(f, "{d}"),
            ColengthResult::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for ColengthResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ColengthResult::Finite(d) => s.serialize_u64(*d as u64),
            ColengthResult::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Number of standard monomials in each degree `0..=D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Result of scanning for the least power of `m` inside an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MinPower {
    Found(u32),
    /// No power `m^N` with `N <= cap` is contained.
    NotFound {
        cap: u32,
    },
}

impl MinPower {
    pub fn found(self) -> Option<u32> {
        match self {
            MinPower::Found(n) => Some(n),
            MinPower::NotFound { .. } => None,
        }
    }
}

impl fmt::Display for MinPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinPower::Found(n) => write!(f, "{n}"),
            MinPower::NotFound { cap } => write!(f, "not found up to degree {cap}"),
        }
    }
}

/// `m^k`, generated by all monomials of degree exactly `k`.
pub fn m_power<F: Field>(ring: &PolyRing<F>, k: u32) -> Ideal<F::Elem> {
    Ideal::new(
        monomials_of_degree(ring.num_vars(), k)
            .into_iter()
            .map(|m| ring.monomial(m)),
    )
}

pub fn ideal_sum<E: Clone + PartialEq>(i: &Ideal<E>, j: &Ideal<E>) -> Ideal<E> {
    Ideal::new(i.generators().iter().chain(j.generators()).cloned())
}

/// Pairwise products of generators, each made monic.
pub fn ideal_product<F: Field>(
    ring: &PolyRing<F>,
    i: &Ideal<F::Elem>,
    j: &Ideal<F::Elem>,
) -> Result<Ideal<F::Elem>> {
    let mut gens = Vec::with_capacity(i.generators().len() * j.generators().len());
    for a in i.generators() {
        for b in j.generators() {
            let (oa, ob) = (a.ord().finite().unwrap(), b.ord().finite().unwrap());
            if oa + ob > ring.cap() {
                return Err(Error::DegreeCapExceeded {
                    cap: ring.cap(),
                    context: format!("forming a product of order {}", oa + ob),
                });
            }
            gens.push(ring.monic(&ring.mul(a, b)));
        }
    }
    Ok(Ideal::new(gens))
}

/// `m^k * I`.
///
/// When `m^c ⊆ I` is known, the generators are taken from the standard
/// basis of `I` (whose tails stop below `c`) and `m^(k+c)` is added, so
/// later computations start with a corner.
pub fn m_power_times<F: Field>(
    ring: &PolyRing<F>,
    k: u32,
    i: &Ideal<F::Elem>,
) -> Result<Ideal<F::Elem>> {
    if k == 0 {
        return Ok(i.clone());
    }
    let b = basis(ring, i);
    match b.corner() {
        Some(c) if k + c <= ring.cap() => {
            let short = Ideal::new(b.elements().iter().cloned());
            Ok(ideal_sum(
                &ideal_product(ring, &m_power(ring, k), &short)?,
                &m_power(ring, k + c),
            ))
        }
        _ => ideal_product(ring, &m_power(ring, k), i),
    }
}

/// `ord(I) = max { l : I ⊆ m^l }`, the least order of a generator.
pub fn ord_ideal<E: Clone + PartialEq>(i: &Ideal<E>) -> Order {
    i.generators()
        .iter()
        .map(|g| g.ord())
        .min()
        .unwrap_or(Order::Infinity)
}

fn basis<F: Field>(ring: &PolyRing<F>, i: &Ideal<F::Elem>) -> std::sync::Arc<StdBasis<F::Elem>> {
    cached_std_basis(ring, i)
}

/// Standard monomials of `K[[x]]/I`, `None` when the quotient is infinite.
pub fn standard_basis_monomials<F: Field>(
    ring: &PolyRing<F>,
    i: &Ideal<F::Elem>,
) -> Result<Option<Vec<crate::poly::Monomial>>> {
    let b = basis(ring, i);
    if !b.is_exact() {
        return Err(Error::DegreeCapExceeded {
            cap: ring.cap(),
            context: if b.exhausted() {
                "computing a colength (the standard basis hit its work limit)".into()
            } else {
                "computing a colength (no power of m found below the cap)".into()
            },
        });
    }
    Ok(standard_monomials(b.staircase(), ring.num_vars(), u32::MAX)
        .map(|r| r.expect("unbounded enumeration")))
}

/// `dim_K K[[x]]/I`.
pub fn colength<F: Field>(ring: &PolyRing<F>, i: &Ideal<F::Elem>) -> Result<ColengthResult> {
    Ok(match standard_basis_monomials(ring, i)? {
        Some(std) => ColengthResult::Finite(std.len()),
        None => ColengthResult::Infinite,
    })
}

/// Degreewise counts of standard monomials.
pub fn hilbert_function<F: Field>(
    ring: &PolyRing<F>,
    i: &Ideal<F::Elem>,
) -> Result<HilbertFunction> {
    let std = standard_basis_monomials(ring, i)?.ok_or(Error::InfiniteColength)?;
    let top = std.iter().map(|m| m.degree()).max();
    let mut values = vec![0usize; top.map_or(0, |t| t as usize + 1)];
    for m in &std {
        values[m.degree() as usize] += 1;
    }
    Ok(HilbertFunction(values))
}

/// Whether `m^n ⊆ I`.
pub fn contains_m_power<F: Field>(ring: &PolyRing<F>, i: &Ideal<F::Elem>, n: u32) -> Result<bool> {
    if n > ring.cap() {
        return Err(Error::DegreeCapExceeded {
            cap: ring.cap(),
            context: format!("testing m^{n} for containment"),
        });
    }
    let b = basis(ring, i);
    if b.is_partial() {
        return Err(Error::DegreeCapExceeded {
            cap: ring.cap(),
            context: format!(
                "testing m^{n} for containment (the standard basis hit its work limit)"
            ),
        });
    }
    let monos = monomials_of_degree(ring.num_vars(), n);
    // a monomial outside the leading ideal cannot be a member
    if monos
        .iter()
        .any(|m| !b.staircase().iter().any(|s| s.divides(m)))
    {
        return Ok(false);
    }
    for m in monos {
        if !is_member(ring, &ring.monomial(m), &b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `N` with `m^N ⊆ I`, scanning `N = ord(I), ..., cap`.
pub fn min_m_power<F: Field>(ring: &PolyRing<F>, i: &Ideal<F::Elem>) -> Result<MinPower> {
    let start = match ord_ideal(i) {
        Order::Finite(d) => d,
        Order::Infinity => return Ok(MinPower::NotFound { cap: ring.cap() }),
    };
    let b = basis(ring, i);
    if b.is_exact() && b.corner().is_none() {
        // an exact basis without a corner means I is not m-primary below the cap
        return Ok(MinPower::NotFound { cap: ring.cap() });
    }
    for n in start..=ring.cap() {
        if contains_m_power(ring, i, n)? {
            return Ok(MinPower::Found(n));
        }
    }
    Ok(MinPower::NotFound { cap: ring.cap() })
}

/// Equality of ideals in the local ring.
pub fn ideal_equal<F: Field>(
    ring: &PolyRing<F>,
    i: &Ideal<F::Elem>,
    j: &Ideal<F::Elem>,
) -> Result<bool> {
    Ok(ideal_contains(ring, i, j)? && ideal_contains(ring, j, i)?)
}

/// Whether `J ⊆ I`.
pub fn ideal_contains<F: Field>(
    ring: &PolyRing<F>,
    i: &Ideal<F::Elem>,
    j: &Ideal<F::Elem>,
) -> Result<bool> {
    let b = basis(ring, i);
    for g in j.generators() {
        if !is_member(ring, g, &b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f ∈ I`.
pub fn ideal_member<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    i: &Ideal<F::Elem>,
) -> Result<bool> {
    is_member(ring, f, &basis(ring, i))
}
