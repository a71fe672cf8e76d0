//! Contact and right equivalence of two germs, decided as far as
//! determinacy, the higher-algebra criteria and isomorphism invariants allow.
//!
//! `Equivalent` is only returned with a certificate that [`replay_certificate`]
//! can re-check, and `NotEquivalent` only with a differing invariant.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::coefficients::Field;
use crate::error::{Error, Result};
use crate::localalg::{
    colength, hilbert_function, ideal_equal, ideal_member, ord_ideal, ColengthResult,
};
use crate::poly::{Order, PolyRing, Polynomial};
use crate::singularity::{
    contact_determinacy_bound, jacobian_ideal, k_ideal, min_k_contact, min_k_right,
    right_determinacy_bound, KIdealKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Contact,
    Right,
}

impl Mode {
    fn kind(self, k: u32) -> KIdealKind {
        match self {
            Mode::Contact => KIdealKind::TjurinaK(k),
            Mode::Right => KIdealKind::MilnorK(k),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Contact => "contact",
            Mode::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `ord(g - f) > bound`, and `f` is `bound`-determined.
    DeterminacyPerturbation {
        bound: i64,
        perturbation_order: Order,
    },
    /// The `k`-th ideals of `f` and `g` coincide (for right equivalence
    /// also `f - g ∈ m^k j(f)`).
    IdentityLiftIdealEquality { k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub invariant: String,
    pub f_value: Value,
    pub g_value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Equivalent { certificate: Certificate },
    NotEquivalent { witness: Witness },
    Inconclusive,
}

/// One named check that went into a verdict. `holds` is `None` when the
/// check could not be evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: Option<bool>,
    pub detail: String,
}

/// A compared invariant with both values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantPair {
    pub invariant: String,
    pub f_value: Value,
    pub g_value: Value,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub mode: Mode,
    pub verdict: Verdict,
    pub evidence: Vec<Check>,
    pub invariants: Vec<InvariantPair>,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self.verdict, Verdict::Equivalent { .. })
    }

    pub fn is_not_equivalent(&self) -> bool {
        matches!(self.verdict, Verdict::NotEquivalent { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.verdict {
            Verdict::Equivalent { certificate } => Some(certificate),
            _ => None,
        }
    }
}

fn check_germ<E>(f: &Polynomial<E>) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match f.ord() {
        Order::Finite(s) if s >= 2 => Ok(s),
        o => Err(Error::OrderTooSmall(o)),
    }
}

fn order_value(o: Order) -> Value {
    match o {
        Order::Finite(d) => json!(d),
        Order::Infinity => json!("infinity"),
    }
}

fn colength_value(c: ColengthResult) -> Value {
    match c {
        ColengthResult::Finite(d) => json!(d),
        ColengthResult::Infinite => json!("infinity"),
    }
}

struct Comparer<'a, F: Field> {
    ring: &'a PolyRing<F>,
    f: &'a Polynomial<F::Elem>,
    g: &'a Polynomial<F::Elem>,
    mode: Mode,
    evidence: Vec<Check>,
    invariants: Vec<InvariantPair>,
}

impl<F: Field> Comparer<'_, F> {
    fn record(&mut self, name: String, holds: Option<bool>, detail: String) {
        self.evidence.push(Check {
            name,
            holds,
            detail,
        });
    }

    fn invariant(&mut self, name: &str, f_value: Value, g_value: Value) {
        let equal = f_value == g_value;
        self.invariants.push(InvariantPair {
            invariant: name.to_string(),
            f_value,
            g_value,
            equal,
        });
    }

    fn finish(self, verdict: Verdict) -> EquivalenceVerdict {
        EquivalenceVerdict {
            mode: self.mode,
            verdict,
            evidence: self.evidence,
            invariants: self.invariants,
        }
    }

    fn number(&self, h: &Polynomial<F::Elem>) -> Result<ColengthResult> {
        let ideal = match self.mode {
            Mode::Contact => crate::singularity::tjurina_ideal(self.ring, h),
            Mode::Right => jacobian_ideal(self.ring, h),
        };
        colength(self.ring, &ideal)
    }

    fn min_k(&self, h: &Polynomial<F::Elem>) -> Result<u32> {
        match self.mode {
            Mode::Contact => min_k_contact(self.ring, h),
            Mode::Right => min_k_right(self.ring, h),
        }
    }

    fn bound(&self) -> Result<i64> {
        Ok(match self.mode {
            Mode::Contact => contact_determinacy_bound(self.ring, self.f)?.bound,
            Mode::Right => right_determinacy_bound(self.ring, self.f)?.bound,
        })
    }

    fn ideals_equal_at(&self, k: u32) -> Result<bool> {
        let a = k_ideal(self.ring, self.f, self.mode.kind(k))?;
        let b = k_ideal(self.ring, self.g, self.mode.kind(k))?;
        ideal_equal(self.ring, &a, &b)
    }

    fn difference_in_milnor_k(&self, k: u32) -> Result<bool> {
        let mj = k_ideal(self.ring, self.f, KIdealKind::MilnorK(k))?;
        ideal_member(self.ring, &self.ring.sub(self.f, self.g), &mj)
    }

    /// Certificate (a): the plain difference is beyond the determinacy degree.
    fn try_perturbation(&mut self) -> Result<Option<Certificate>> {
        let d = self.ring.sub(self.g, self.f).ord();
        let bound = match self.bound() {
            Ok(b) => b,
            Err(e) if matches!(e, Error::NotApplicable(_)) => {
                self.record("determinacy_perturbation".into(), None, e.to_string());
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        let holds = match d {
            Order::Infinity => true,
            Order::Finite(o) => o as i64 > bound,
        };
        self.record(
            "determinacy_perturbation".into(),
            Some(holds),
            format!(
                "ord(g - f) = {d}, {} determinacy bound = {bound}",
                self.mode
            ),
        );
        Ok(holds.then_some(Certificate::DeterminacyPerturbation {
            bound,
            perturbation_order: d,
        }))
    }

    /// Certificate (b) at `k = min_k(f)`.
    fn try_identity_lift(&mut self, k: u32) -> Result<Option<Certificate>> {
        let equal = self.ideals_equal_at(k)?;
        let name = self.mode.kind(k).to_string();
        self.record(
            format!("ideal_equality_k{k}"),
            Some(equal),
            format!("{name}-ideals of f and g coincide: {equal}"),
        );
        if !equal {
            return Ok(None);
        }
        if self.mode == Mode::Right {
            let member = self.difference_in_milnor_k(k)?;
            self.record(
                format!("difference_in_m{k}_j"),
                Some(member),
                format!("f - g lies in m^{k} j(f): {member}"),
            );
            if !member {
                return Ok(None);
            }
        }
        Ok(Some(Certificate::IdentityLiftIdealEquality { k }))
    }

    fn hilbert_values(&self, h: &Polynomial<F::Elem>, k: u32) -> Result<Value> {
        let ideal = k_ideal(self.ring, h, self.mode.kind(k))?;
        Ok(match colength(self.ring, &ideal)? {
            ColengthResult::Finite(_) => json!(hilbert_function(self.ring, &ideal)?.0),
            ColengthResult::Infinite => json!("infinity"),
        })
    }
}

/// Decides `f ~ g` in the given mode.
pub fn compare<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
    mode: Mode,
) -> Result<EquivalenceVerdict> {
    let s_f = check_germ(f)?;
    let s_g = check_germ(g)?;
    let mut c = Comparer {
        ring,
        f,
        g,
        mode,
        evidence: Vec::new(),
        invariants: Vec::new(),
    };
    let number_name = match mode {
        Mode::Contact => "tau",
        Mode::Right => "mu",
    };
    let n_f = c.number(f)?;
    let n_g = c.number(g)?;
    match (n_f, n_g) {
        (ColengthResult::Infinite, ColengthResult::Infinite) => {
            return Err(Error::NotApplicable(format!(
                "{number_name} of both germs is infinite"
            )));
        }
        (ColengthResult::Finite(_), ColengthResult::Finite(_)) => {}
        _ => {
            c.invariant(number_name, colength_value(n_f), colength_value(n_g));
            let witness = Witness {
                invariant: number_name.into(),
                f_value: colength_value(n_f),
                g_value: colength_value(n_g),
            };
            return Ok(c.finish(Verdict::NotEquivalent { witness }));
        }
    }

    if let Some(cert) = c.try_perturbation()? {
        return Ok(c.finish(Verdict::Equivalent { certificate: cert }));
    }

    // low-k ideal equalities are recorded as evidence, not as certificates
    let k_f = c.min_k(f)?;
    for k in [0, 1] {
        if k < k_f {
            let equal = c.ideals_equal_at(k)?;
            c.record(
                format!("ideal_equality_k{k}"),
                Some(equal),
                format!("{}-ideals of f and g coincide: {equal}", mode.kind(k)),
            );
        }
    }
    if let Some(cert) = c.try_identity_lift(k_f)? {
        return Ok(c.finish(Verdict::Equivalent { certificate: cert }));
    }

    // invariants, evaluated identically for (f, g) and (g, f)
    c.invariant("s", json!(s_f), json!(s_g));
    if mode == Mode::Right {
        let sp_f = ord_ideal(&jacobian_ideal(ring, f));
        let sp_g = ord_ideal(&jacobian_ideal(ring, g));
        c.invariant("s_prime", order_value(sp_f), order_value(sp_g));
    }
    c.invariant(number_name, colength_value(n_f), colength_value(n_g));
    let k_g = c.min_k(g)?;
    let mut ks = vec![0, k_f.min(k_g), k_f.max(k_g)];
    ks.dedup();
    let prefix = match mode {
        Mode::Contact => "hf_tjurina_k",
        Mode::Right => "hf_milnor_k",
    };
    for k in ks {
        let a = c.hilbert_values(f, k)?;
        let b = c.hilbert_values(g, k)?;
        c.invariant(&format!("{prefix}{k}"), a, b);
    }
    let verdict = match c.invariants.iter().find(|p| !p.equal) {
        Some(p) => Verdict::NotEquivalent {
            witness: Witness {
                invariant: p.invariant.clone(),
                f_value: p.f_value.clone(),
                g_value: p.g_value.clone(),
            },
        },
        None => Verdict::Inconclusive,
    };
    Ok(c.finish(verdict))
}

pub fn contact_compare<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
) -> Result<EquivalenceVerdict> {
    compare(ring, f, g, Mode::Contact)
}

pub fn right_compare<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
) -> Result<EquivalenceVerdict> {
    compare(ring, f, g, Mode::Right)
}

/// Re-runs the checks a certificate rests on.
pub fn replay_certificate<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
    mode: Mode,
    certificate: &Certificate,
) -> Result<bool> {
    let c = Comparer {
        ring,
        f,
        g,
        mode,
        evidence: Vec::new(),
        invariants: Vec::new(),
    };
    match certificate {
        Certificate::DeterminacyPerturbation { bound, .. } => {
            if c.bound()? != *bound {
                return Ok(false);
            }
            Ok(match ring.sub(g, f).ord() {
                Order::Infinity => true,
                Order::Finite(o) => o as i64 > *bound,
            })
        }
        Certificate::IdentityLiftIdealEquality { k } => {
            if *k < c.min_k(f)? || !c.ideals_equal_at(*k)? {
                return Ok(false);
            }
            Ok(mode == Mode::Contact || c.difference_in_milnor_k(*k)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{PrimeField, Rationals};
    use crate::parser::parse_polynomial;

    fn ring<F: Field>(k: F) -> PolyRing<F> {
        PolyRing::new(k, &["x", "y"], 64).unwrap()
    }

    fn p<F: Field>(r: &PolyRing<F>, s: &str) -> Polynomial<F::Elem> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn counterexample_pair_mod_five() {
        let r = ring(PrimeField::new(5).unwrap());
        let f = p(&r, "x^6+y^6");
        let g = p(&r, "x^6+y^6+x^5");
        for mode in [Mode::Contact, Mode::Right] {
            let v = compare(&r, &f, &g, mode).unwrap();
            assert!(!v.is_equivalent(), "{mode}");
            if let Verdict::NotEquivalent { witness } = &v.verdict {
                assert_eq!(witness.invariant, "s");
                assert_eq!(witness.f_value, json!(6));
                assert_eq!(witness.g_value, json!(5));
            }
        }
    }

    #[test]
    fn perturbation_certificates() {
        let q = ring(Rationals);
        let f = p(&q, "x^2+y^3");
        let v = contact_compare(&q, &f, &p(&q, "x^2+y^3+y^9")).unwrap();
        assert_eq!(
            v.certificate(),
            Some(&Certificate::DeterminacyPerturbation {
                bound: 4,
                perturbation_order: Order::Finite(9)
            })
        );
        let g = p(&q, "x^2+y^3+x*y^4*y");
        let v = right_compare(&q, &f, &g).unwrap();
        assert!(v.is_equivalent());
        assert!(replay_certificate(&q, &f, &g, Mode::Right, v.certificate().unwrap()).unwrap());
        for mode in [Mode::Contact, Mode::Right] {
            let v = compare(&q, &f, &f, mode).unwrap();
            assert!(matches!(
                v.certificate(),
                Some(Certificate::DeterminacyPerturbation {
                    perturbation_order: Order::Infinity,
                    ..
                })
            ));
        }
    }

    #[test]
    fn identity_lift() {
        // y^2 + x^3 vs y^2 + x^3 + x^2*y^2: the difference has order 4 = bound
        let q = ring(Rationals);
        let f = p(&q, "x^3+y^2");
        let g = p(&q, "x^3+y^2+x^2*y^2");
        for mode in [Mode::Contact, Mode::Right] {
            let v = compare(&q, &f, &g, mode).unwrap();
            assert!(!v.is_not_equivalent());
            if let Some(cert) = v.certificate() {
                assert!(replay_certificate(&q, &f, &g, mode, cert).unwrap());
            }
        }
    }

    #[test]
    fn char_two_pair_evidence() {
        let r = ring(PrimeField::new(2).unwrap());
        let f = p(&r, "y^2+x^3*y");
        let g = p(&r, "y^2+x^3*y+x^5");
        let v = contact_compare(&r, &f, &g).unwrap();
        assert!(!v.is_equivalent());
        for k in [0, 1] {
            let name = format!("ideal_equality_k{k}");
            let check = v.evidence.iter().find(|c| c.name == name).unwrap();
            assert_eq!(check.holds, Some(true));
        }
        let back = contact_compare(&r, &g, &f).unwrap();
        assert_eq!(v.is_not_equivalent(), back.is_not_equivalent());
        assert!(matches!(
            right_compare(&r, &f, &g),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn invariants_refute() {
        let q = ring(Rationals);
        let f = p(&q, "x^2+y^3");
        let g = p(&q, "x^2+y^4");
        let v = contact_compare(&q, &f, &g).unwrap();
        match v.verdict {
            Verdict::NotEquivalent { witness } => assert_eq!(witness.invariant, "tau"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn preconditions() {
        let q = ring(Rationals);
        assert_eq!(
            contact_compare(&q, &p(&q, "x"), &p(&q, "x^2")),
            Err(Error::OrderTooSmall(Order::Finite(1)))
        );
        assert_eq!(
            contact_compare(&q, &q.zero(), &p(&q, "x^2")),
            Err(Error::ZeroPolynomial)
        );
        // one of the two has infinite tau
        let v = contact_compare(&q, &p(&q, "x^2+y^3"), &p(&q, "x^2")).unwrap();
        assert!(v.is_not_equivalent());
        assert!(matches!(
            contact_compare(&q, &p(&q, "x^2"), &p(&q, "x^2+x^3")),
            Err(Error::NotApplicable(_))
        ));
    }
}
