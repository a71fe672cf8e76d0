//! Invariants of a single germ: Jacobian and Tjurina ideals, Milnor and
//! Tjurina numbers, the higher Milnor/Tjurina ideals, finite-determinacy
//! bounds and the smallest sufficient `k` for the higher-algebra criteria.

use std::fmt;

use serde::Serialize;

use crate::coefficients::Field;
use crate::error::{Error, Result};
use crate::localalg::{
    colength, hilbert_function, ideal_sum, m_power_times, min_m_power, ord_ideal, ColengthResult,
    HilbertFunction, MinPower,
};
use crate::poly::{Order, PolyRing, Polynomial};
use crate::stdbasis::Ideal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "k")]
pub enum KIdealKind {
    MilnorK(u32),
    TjurinaK(u32),
}

impl KIdealKind {
    pub fn k(self) -> u32 {
        match self {
            KIdealKind::MilnorK(k) | KIdealKind::TjurinaK(k) => k,
        }
    }
}

impl fmt::Display for KIdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KIdealKind::MilnorK(k) => write!(f, "M_{k}"),
            KIdealKind::TjurinaK(k) => write!(f, "T_{k}"),
        }
    }
}

/// A value that may be unavailable, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Computed<T> {
    Known(T),
    Unknown { reason: String, cap_exceeded: bool },
}

impl<T> Computed<T> {
    pub fn known(&self) -> Option<&T> {
        match self {
            Computed::Known(v) => Some(v),
            Computed::Unknown { .. } => None,
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Computed::Known(_) => None,
            Computed::Unknown { reason, .. } => Some(reason),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Computed<U> {
        match self {
            Computed::Known(v) => Computed::Known(f(v)),
            Computed::Unknown {
                reason,
                cap_exceeded,
            } => Computed::Unknown {
                reason,
                cap_exceeded,
            },
        }
    }
}

impl<T> From<Result<T>> for Computed<T> {
    fn from(r: Result<T>) -> Self {
        match r {
            Ok(v) => Computed::Known(v),
            Err(e) => Computed::Unknown {
                cap_exceeded: matches!(e, Error::DegreeCapExceeded { .. }),
                reason: e.to_string(),
            },
        }
    }
}

/// `k*` is the least `k` satisfying the containment hypothesis; `bound` is
/// the determinacy degree it yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeterminacyBound {
    pub k_star: u32,
    pub bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityReport<E> {
    pub f: Polynomial<E>,
    pub s: Order,
    pub s_prime: Order,
    pub mu: Computed<ColengthResult>,
    pub tau: Computed<ColengthResult>,
    pub right_det: Computed<DeterminacyBound>,
    pub contact_det: Computed<DeterminacyBound>,
    /// `min { N : m^N ⊆ m^2 j(f) }`
    pub n_prime: Computed<u32>,
    /// `min { N : m^N ⊆ m<f> + m^2 j(f) }`
    pub n_star: Computed<u32>,
    pub min_k_right: Computed<u32>,
    pub min_k_contact: Computed<u32>,
    pub cor_bound_right: Computed<i64>,
    pub cor_bound_contact: Computed<i64>,
    pub hf_tjurina: Option<HilbertFunction>,
}

pub fn jacobian_ideal<F: Field>(ring: &PolyRing<F>, f: &Polynomial<F::Elem>) -> Ideal<F::Elem> {
    Ideal::new((0..ring.num_vars()).map(|i| ring.partial_derivative(f, i)))
}

pub fn tjurina_ideal<F: Field>(ring: &PolyRing<F>, f: &Polynomial<F::Elem>) -> Ideal<F::Elem> {
    ideal_sum(&Ideal::new([f.clone()]), &jacobian_ideal(ring, f))
}

/// `<f> + m^k j(f)` or `m^k j(f)`.
pub fn k_ideal<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    kind: KIdealKind,
) -> Result<Ideal<F::Elem>> {
    let mj = m_power_times(ring, kind.k(), &jacobian_ideal(ring, f))?;
    Ok(match kind {
        KIdealKind::MilnorK(_) => mj,
        KIdealKind::TjurinaK(_) => ideal_sum(&Ideal::new([f.clone()]), &mj),
    })
}

pub fn milnor_number<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
) -> Result<ColengthResult> {
    colength(ring, &jacobian_ideal(ring, f))
}

pub fn tjurina_number<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
) -> Result<ColengthResult> {
    colength(ring, &tjurina_ideal(ring, f))
}

fn check_order<E>(f: &Polynomial<E>) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match f.ord() {
        Order::Finite(s) if s >= 2 => Ok(s),
        o => Err(Error::OrderTooSmall(o)),
    }
}

fn found(p: MinPower, what: &str) -> Result<u32> {
    match p {
        MinPower::Found(n) => Ok(n),
        MinPower::NotFound { cap } => Err(Error::NotApplicable(format!(
            "no power of m up to degree {cap} lies in {what}"
        ))),
    }
}

/// `N' = min { N : m^N ⊆ m^2 j(f) }`.
pub fn right_containment_power<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
) -> Result<u32> {
    check_order(f)?;
    let ideal = m_power_times(ring, 2, &jacobian_ideal(ring, f))?;
    found(min_m_power(ring, &ideal)?, "m^2 j(f)")
}

/// `N* = min { N : m^N ⊆ m<f> + m^2 j(f) }`.
pub fn contact_containment_power<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
) -> Result<u32> {
    check_order(f)?;
    let ideal = ideal_sum(
        &m_power_times(ring, 1, &Ideal::new([f.clone()]))?,
        &m_power_times(ring, 2, &jacobian_ideal(ring, f))?,
    );
    found(min_m_power(ring, &ideal)?, "m<f> + m^2 j(f)")
}

fn bound_from(n: u32, s: u32) -> DeterminacyBound {
    // m^(k+2) ⊆ ...  with k = n - 2 (n >= s + 1 >= 3 whenever found)
    let k_star = n.saturating_sub(2);
    DeterminacyBound {
        k_star,
        bound: 2 * k_star as i64 - s as i64 + 2,
    }
}

pub fn right_determinacy_bound<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
) -> Result<DeterminacyBound> {
    let s = check_order(f)?;
    Ok(bound_from(right_containment_power(ring, f)?, s))
}

pub fn contact_determinacy_bound<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
) -> Result<DeterminacyBound> {
    let s = check_order(f)?;
    Ok(bound_from(contact_containment_power(ring, f)?, s))
}

fn min_k_contact_from(n_star: u32, s: u32) -> u32 {
    (2 * n_star).saturating_sub(2 * s)
}

fn min_k_right_from(n_prime: u32, s: u32, s_prime: u32) -> u32 {
    (2 * n_prime).saturating_sub(s + s_prime + 1)
}

/// Smallest `k` with `m^floor((k+2s)/2) ⊆ m<f> + m^2 j(f)`.
pub fn min_k_contact<F: Field>(ring: &PolyRing<F>, f: &Polynomial<F::Elem>) -> Result<u32> {
    let s = check_order(f)?;
    Ok(min_k_contact_from(contact_containment_power(ring, f)?, s))
}

/// Smallest `k` with `m^floor((k+s+s'+1)/2) ⊆ m^2 j(f)`.
pub fn min_k_right<F: Field>(ring: &PolyRing<F>, f: &Polynomial<F::Elem>) -> Result<u32> {
    let s = check_order(f)?;
    let s_prime = ord_ideal(&jacobian_ideal(ring, f))
        .finite()
        .ok_or_else(|| Error::NotApplicable("j(f) is the zero ideal".into()))?;
    Ok(min_k_right_from(
        right_containment_power(ring, f)?,
        s,
        s_prime,
    ))
}

/// `2 tau - 2s + 4`.
pub fn contact_corollary_bound(tau: usize, s: u32) -> i64 {
    2 * tau as i64 - 2 * s as i64 + 4
}

/// `2 mu - s - s' + 3`.
pub fn right_corollary_bound(mu: usize, s: u32, s_prime: u32) -> i64 {
    2 * mu as i64 - s as i64 - s_prime as i64 + 3
}

/// Closed-form bounds `(contact, right)`.
pub fn corollary_bounds<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
) -> (Computed<i64>, Computed<i64>) {
    let s = f.ord();
    let s_prime = ord_ideal(&jacobian_ideal(ring, f));
    let contact = finite_bound(tjurina_number(ring, f), "tau", |tau| {
        s.finite().map(|s| contact_corollary_bound(tau, s))
    });
    let right = finite_bound(milnor_number(ring, f), "mu", |mu| match (s, s_prime) {
        (Order::Finite(s), Order::Finite(sp)) => Some(right_corollary_bound(mu, s, sp)),
        _ => None,
    });
    (contact, right)
}

fn finite_bound(
    number: Result<ColengthResult>,
    name: &str,
    formula: impl FnOnce(usize) -> Option<i64>,
) -> Computed<i64> {
    match number {
        Ok(ColengthResult::Finite(v)) => match formula(v) {
            Some(b) => Computed::Known(b),
            None => unknown("ord is infinite".to_string()),
        },
        Ok(ColengthResult::Infinite) => unknown(format!("{name} is infinite")),
        Err(e) => Err::<i64, _>(e).into(),
    }
}

fn unknown<T>(reason: String) -> Computed<T> {
    Computed::Unknown {
        reason,
        cap_exceeded: false,
    }
}

/// Everything at once. Failures of individual parts become `Unknown`.
pub fn analyze<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
) -> SingularityReport<F::Elem> {
    let s = f.ord();
    let j = jacobian_ideal(ring, f);
    let s_prime = ord_ideal(&j);
    let mu: Computed<ColengthResult> = colength(ring, &j).into();
    let tau: Computed<ColengthResult> = colength(ring, &tjurina_ideal(ring, f)).into();

    let n_prime: Computed<u32> = right_containment_power(ring, f).into();
    let n_star: Computed<u32> = contact_containment_power(ring, f).into();

    let s_val = s.finite().unwrap_or(0);
    let right_det = n_prime.clone().map(|n| bound_from(n, s_val));
    let contact_det = n_star.clone().map(|n| bound_from(n, s_val));
    let min_k_contact = n_star.clone().map(|n| min_k_contact_from(n, s_val));
    let min_k_right = match (&n_prime, s_prime) {
        (Computed::Known(n), Order::Finite(sp)) => Computed::Known(min_k_right_from(*n, s_val, sp)),
        (Computed::Known(_), Order::Infinity) => unknown("j(f) is the zero ideal".into()),
        (other, _) => other.clone(),
    };

    let cor_bound_contact = match (&tau, s) {
        (Computed::Known(ColengthResult::Finite(t)), Order::Finite(s)) => {
            Computed::Known(contact_corollary_bound(*t, s))
        }
        (Computed::Known(ColengthResult::Infinite), _) => unknown("tau is infinite".into()),
        (
            Computed::Unknown {
                reason,
                cap_exceeded,
            },
            _,
        ) => Computed::Unknown {
            reason: reason.clone(),
            cap_exceeded: *cap_exceeded,
        },
        _ => unknown("f is zero".into()),
    };
    let cor_bound_right = match (&mu, s, s_prime) {
        (Computed::Known(ColengthResult::Finite(m)), Order::Finite(s), Order::Finite(sp)) => {
            Computed::Known(right_corollary_bound(*m, s, sp))
        }
        (Computed::Known(ColengthResult::Infinite), _, _) => unknown("mu is infinite".into()),
        (
            Computed::Unknown {
                reason,
                cap_exceeded,
            },
            _,
            _,
        ) => Computed::Unknown {
            reason: reason.clone(),
            cap_exceeded: *cap_exceeded,
        },
        _ => unknown("f or j(f) is zero".into()),
    };

    let hf_tjurina = match tau {
        Computed::Known(ColengthResult::Finite(_)) => {
            hilbert_function(ring, &tjurina_ideal(ring, f)).ok()
        }
        _ => None,
    };

    SingularityReport {
        f: f.clone(),
        s,
        s_prime,
        mu,
        tau,
        right_det,
        contact_det,
        n_prime,
        n_star,
        min_k_right,
        min_k_contact,
        cor_bound_right,
        cor_bound_contact,
        hf_tjurina,
    }
}
