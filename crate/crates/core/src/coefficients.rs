//! Exact coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.
//!
//! Algorithms in this crate are generic over [`Field`], a field *object* that
//! owns whatever runtime data the elements need (the modulus for `F_p`).
//! Elements are plain values ([`u32`] residues, [`BigRational`]), so the hot
//! paths never carry the modulus around.
//!
//! [`FieldSpec`] is itself a `Field` whose elements are the tagged
//! [`FieldScalar`]; it is the dynamically typed variant used at API
//! boundaries and in [`field_arith`].

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest admissible characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} and {1})")]
    MixedField(FieldSpec, FieldSpec),
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    InvalidCharacteristic(u64),
}

/// A coefficient field. Elements are plain values; every operation goes
/// through the field object.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the canonical map `Z -> K`.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Tagged copy of an element, used for printing and serialization.
    fn to_scalar(&self, a: &Self::Elem) -> FieldScalar;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Rough size of `a` in machine words, for work budgets.
    fn weight(&self, _a: &Self::Elem) -> usize {
        1
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        let inv = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// `num / den` embedded in the field; `None` when `den` maps to zero.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem> {
        let d = self.inv(&self.from_bigint(den))?;
        Some(self.mul(&self.from_bigint(num), &d))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.characteristic(),
        }
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u32 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn weight(&self, a: &BigRational) -> usize {
        rational_weight(a)
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn to_scalar(&self, a: &BigRational) -> FieldScalar {
        FieldScalar::Rational(a.clone())
    }
}

/// The prime field `F_p`, residues stored as `u32` in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if is_prime(p as u64) && (p as u64) < MAX_CHARACTERISTIC {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::InvalidCharacteristic(p as u64))
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + *b as u64)
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 + (self.p - *b) as u64)
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let egcd = (*a as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(egcd.gcd, 1);
        Some(egcd.x.rem_euclid(self.p as i64) as u32)
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits in u32")
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn to_scalar(&self, a: &u32) -> FieldScalar {
        FieldScalar::PrimeField {
            residue: *a,
            modulus: self.p,
        }
    }
}

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, FieldError> {
        if characteristic == 0 || (characteristic < MAX_CHARACTERISTIC && is_prime(characteristic))
        {
            Ok(FieldSpec {
                characteristic: characteristic as u32,
            })
        } else {
            Err(FieldError::InvalidCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "QQ")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

/// An element of `Q` or of some `F_p`, tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    PrimeField { residue: u32, modulus: u32 },
    Rational(BigRational),
}

impl FieldScalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldScalar::PrimeField { modulus, .. } => FieldSpec {
                characteristic: *modulus,
            },
            FieldScalar::Rational(_) => FieldSpec::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::PrimeField { residue, .. } => *residue == 0,
            FieldScalar::Rational(r) => r.is_zero(),
        }
    }

    /// True for negative rationals; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, FieldScalar::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::PrimeField { residue, .. } => write!(f, "{residue}"),
            FieldScalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic on tagged scalars.
pub fn field_arith(
    a: &FieldScalar,
    b: &FieldScalar,
    op: ArithOp,
) -> Result<FieldScalar, FieldError> {
    let spec = a.spec();
    if spec != b.spec() {
        return Err(FieldError::MixedField(spec, b.spec()));
    }
    Ok(match op {
        ArithOp::Add => spec.add(a, b),
        ArithOp::Sub => spec.sub(a, b),
        ArithOp::Mul => spec.mul(a, b),
        ArithOp::Div => spec.div(a, b)?,
    })
}

fn rational_weight(a: &BigRational) -> usize {
    ((a.numer().bits() + a.denom().bits()) / 64) as usize + 1
}

/// Image of `n` in the field described by `spec`.
pub fn int_embed(n: &BigInt, spec: FieldSpec) -> FieldScalar {
    spec.from_bigint(n)
}

impl FieldSpec {
    fn prime(&self) -> PrimeField {
        PrimeField {
            p: self.characteristic,
        }
    }
}

// The dynamic field. Mixing elements of different fields here is a logic
// error; the checked entry point is `field_arith`.
impl Field for FieldSpec {
    type Elem = FieldScalar;

    fn characteristic(&self) -> u32 {
        self.characteristic
    }
    fn zero(&self) -> FieldScalar {
        self.from_bigint(&BigInt::zero())
    }
    fn one(&self) -> FieldScalar {
        self.from_bigint(&BigInt::one())
    }
    fn is_zero(&self, a: &FieldScalar) -> bool {
        a.is_zero()
    }
    fn weight(&self, a: &FieldScalar) -> usize {
        match a {
            FieldScalar::PrimeField { .. } => 1,
            FieldScalar::Rational(r) => rational_weight(r),
        }
    }
    fn add(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        lift2(self, a, b, |k, x, y| k.add(x, y), |x, y| x + y)
    }
    fn sub(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        lift2(self, a, b, |k, x, y| k.sub(x, y), |x, y| x - y)
    }
    fn mul(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        lift2(self, a, b, |k, x, y| k.mul(x, y), |x, y| x * y)
    }
    fn neg(&self, a: &FieldScalar) -> FieldScalar {
        match a {
            FieldScalar::PrimeField { residue, modulus } => FieldScalar::PrimeField {
                residue: self.prime().neg(residue),
                modulus: *modulus,
            },
            FieldScalar::Rational(r) => FieldScalar::Rational(-r),
        }
    }
    fn inv(&self, a: &FieldScalar) -> Option<FieldScalar> {
        match a {
            FieldScalar::PrimeField { residue, modulus } => {
                self.prime().inv(residue).map(|r| FieldScalar::PrimeField {
                    residue: r,
                    modulus: *modulus,
                })
            }
            FieldScalar::Rational(r) => Rationals.inv(r).map(FieldScalar::Rational),
        }
    }
    fn from_bigint(&self, n: &BigInt) -> FieldScalar {
        if self.characteristic == 0 {
            FieldScalar::Rational(Rationals.from_bigint(n))
        } else {
            FieldScalar::PrimeField {
                residue: self.prime().from_bigint(n),
                modulus: self.characteristic,
            }
        }
    }
    fn to_scalar(&self, a: &FieldScalar) -> FieldScalar {
        a.clone()
    }
}

fn lift2(
    spec: &FieldSpec,
    a: &FieldScalar,
    b: &FieldScalar,
    modp: impl Fn(&PrimeField, &u32, &u32) -> u32,
    rat: impl Fn(&BigRational, &BigRational) -> BigRational,
) -> FieldScalar {
    match (a, b) {
        (
            FieldScalar::PrimeField {
                residue: x,
                modulus,
            },
            FieldScalar::PrimeField { residue: y, .. },
        ) => FieldScalar::PrimeField {
            residue: modp(&spec.prime(), x, y),
            modulus: *modulus,
        },
        (FieldScalar::Rational(x), FieldScalar::Rational(y)) => FieldScalar::Rational(rat(x, y)),
        _ => panic!("mixed-field operands {a:?}, {b:?}"),
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(r: u32, p: u32) -> FieldScalar {
        FieldScalar::PrimeField {
            residue: r,
            modulus: p,
        }
    }

    fn q(n: i64, d: i64) -> FieldScalar {
        FieldScalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn arith_examples() {
        assert_eq!(
            field_arith(&fp(3, 5), &fp(2, 5), ArithOp::Mul).unwrap(),
            fp(1, 5)
        );
        assert_eq!(
            field_arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap(),
            q(5, 6)
        );
        assert_eq!(
            field_arith(&fp(1, 5), &fp(3, 5), ArithOp::Div).unwrap(),
            fp(2, 5)
        );
    }

    #[test]
    fn arith_errors() {
        assert_eq!(
            field_arith(&fp(1, 5), &fp(0, 5), ArithOp::Div),
            Err(FieldError::DivisionByZero)
        );
        assert_eq!(
            field_arith(&q(1, 1), &q(0, 1), ArithOp::Div),
            Err(FieldError::DivisionByZero)
        );
        assert!(matches!(
            field_arith(&fp(1, 5), &fp(1, 7), ArithOp::Add),
            Err(FieldError::MixedField(..))
        ));
        assert!(matches!(
            field_arith(&fp(1, 5), &q(1, 1), ArithOp::Add),
            Err(FieldError::MixedField(..))
        ));
    }

    #[test]
    fn embed_examples() {
        let f5 = FieldSpec::new(5).unwrap();
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(int_embed(&6.into(), f5), fp(1, 5));
        assert_eq!(int_embed(&(-1).into(), f2), fp(1, 2));
        assert_eq!(int_embed(&7.into(), FieldSpec::rationals()), q(7, 1));
    }

    #[test]
    fn characteristic_validation() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(32003).is_ok());
        assert!(FieldSpec::new(2147483647).is_ok());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1 << 31).is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn rational_normal_form() {
        let a = Rationals
            .from_ratio(&BigInt::from(4), &BigInt::from(-6))
            .unwrap();
        assert_eq!(a.numer(), &BigInt::from(-2));
        assert_eq!(a.denom(), &BigInt::from(3));
        assert_eq!(Rationals.sub(&a, &a), Rationals.zero());
    }

    fn check_axioms<F: Field>(k: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
        assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
        assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
        assert_eq!(k.add(a, b), k.add(b, a));
        assert_eq!(k.mul(a, b), k.mul(b, a));
        assert!(k.is_zero(&k.add(a, &k.neg(a))));
        assert_eq!(k.sub(a, b), k.add(a, &k.neg(b)));
        if let Some(ia) = k.inv(a) {
            assert!(k.is_one(&k.mul(a, &ia)));
        } else {
            assert!(k.is_zero(a));
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_primes() {
        for p in [2u32, 3, 5] {
            let k = PrimeField::new(p).unwrap();
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        check_axioms(&k, &a, &b, &c);
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k = PrimeField::new(32003).unwrap();
        for _ in 0..2000 {
            let [a, b, c] = [(); 3].map(|_| rng.gen_range(0..32003));
            check_axioms(&k, &a, &b, &c);
        }
        let big = PrimeField::new(2147483629).unwrap();
        for _ in 0..2000 {
            let [a, b, c] = [(); 3].map(|_| rng.gen_range(0..2147483629));
            check_axioms(&big, &a, &b, &c);
        }
        for _ in 0..500 {
            let [a, b, c] = [(); 3].map(|_| {
                let d: i64 = rng.gen_range(1..50);
                Rationals
                    .from_ratio(&rng.gen_range(-50i64..50).into(), &d.into())
                    .unwrap()
            });
            check_axioms(&Rationals, &a, &b, &c);
        }
    }

    #[test]
    fn dynamic_field_matches_static() {
        let spec = FieldSpec::new(7).unwrap();
        let k = PrimeField::new(7).unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                let (sa, sb) = (fp(a, 7), fp(b, 7));
                assert_eq!(spec.mul(&sa, &sb), fp(k.mul(&a, &b), 7));
                assert_eq!(spec.sub(&sa, &sb), fp(k.sub(&a, &b), 7));
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [0u64, 2, 3, 5, 32003] {
            let spec = FieldSpec::new(p).unwrap();
            for _ in 0..200 {
                let a: i64 = rng.gen_range(-100_000..100_000);
                let b: i64 = rng.gen_range(-100_000..100_000);
                let lhs = int_embed(&BigInt::from(a * b), spec);
                let rhs = spec.mul(&int_embed(&a.into(), spec), &int_embed(&b.into(), spec));
                assert_eq!(lhs, rhs);
                let lhs = int_embed(&BigInt::from(a + b), spec);
                let rhs = spec.add(&int_embed(&a.into(), spec), &int_embed(&b.into(), spec));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn zero_is_unique() {
        let spec = FieldSpec::new(5).unwrap();
        assert_eq!(int_embed(&10.into(), spec), spec.zero());
        assert_eq!(
            Rationals.from_ratio(&0.into(), &(-3).into()).unwrap(),
            Rationals.zero()
        );
    }
}
