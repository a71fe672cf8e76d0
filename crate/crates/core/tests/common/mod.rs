//! Seeded random inputs shared by the integration tests.
#![allow(dead_code)]

use hypersing::poly::monomials_of_degree;
use hypersing::{Field, Ideal, Monomial, PolyRing, Polynomial, PrimeField, Rationals};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The characteristics the randomized checks sweep over.
pub const CHARS: [u32; 4] = [0, 2, 5, 32003];

/// Runs `body` with a ring of the requested characteristic.
#[macro_export]
macro_rules! with_ring {
    ($p:expr, $n:expr, $cap:expr, |$ring:ident| $body:expr) => {{
        let names = &$crate::common::VARS[..$n];
        if $p == 0 {
            let $ring = hypersing::PolyRing::new(hypersing::Rationals, names, $cap).unwrap();
            $body
        } else {
            let $ring =
                hypersing::PolyRing::new(hypersing::PrimeField::new($p).unwrap(), names, $cap)
                    .unwrap();
            $body
        }
    }};
}

pub fn rational_ring(n: usize, cap: u32) -> PolyRing<Rationals> {
    PolyRing::new(Rationals, &VARS[..n], cap).unwrap()
}

pub fn prime_ring(p: u32, n: usize, cap: u32) -> PolyRing<PrimeField> {
    PolyRing::new(PrimeField::new(p).unwrap(), &VARS[..n], cap).unwrap()
}

pub fn small_coefficient(rng: &mut Rng8) -> i64 {
    let c = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// A polynomial with `terms` random monomials of degree in `lo..=hi`.
pub fn random_poly<F: Field>(
    ring: &PolyRing<F>,
    rng: &mut Rng8,
    lo: u32,
    hi: u32,
    terms: usize,
) -> Polynomial<F::Elem> {
    let n = ring.num_vars();
    let mut out = ring.zero();
    for _ in 0..terms {
        let d = rng.gen_range(lo..=hi);
        let m = monomials_of_degree(n, d).choose(rng).unwrap().clone();
        let c = ring.int(small_coefficient(rng));
        out = ring.add(&out, &ring.mul(&c, &ring.monomial(m)));
    }
    out
}

/// A germ of order `>= 2` and degree `<= max_degree`: a random nondegenerate
/// part plus noise, so isolated singularities are common.
pub fn random_germ<F: Field>(
    ring: &PolyRing<F>,
    rng: &mut Rng8,
    max_degree: u32,
) -> Polynomial<F::Elem> {
    let n = ring.num_vars();
    loop {
        let mut f = ring.zero();
        for i in 0..n {
            let e = rng.gen_range(2..=max_degree);
            let c = ring.int(small_coefficient(rng));
            f = ring.add(
                &f,
                &ring.mul(&c, &ring.monomial(Monomial::var_power(n, i, e))),
            );
        }
        let extra = rng.gen_range(0..=3);
        f = ring.add(&f, &random_poly(ring, rng, 2, max_degree, extra));
        if !f.is_zero() && f.ord().finite().is_some_and(|s| s >= 2) {
            return f;
        }
    }
}

/// A random ideal with 1 to 3 generators of degree at most 4.
pub fn random_ideal<F: Field>(ring: &PolyRing<F>, rng: &mut Rng8) -> Ideal<F::Elem> {
    let n = ring.num_vars();
    let count = rng.gen_range(1..=n + 1);
    let mut gens = Vec::new();
    for _ in 0..count {
        let lo = rng.gen_range(1..=3);
        let terms = rng.gen_range(1..=3);
        gens.push(random_poly(ring, rng, lo, 4, terms));
    }
    // often add pure powers so that a good share is m-primary
    if rng.gen_bool(0.6) {
        for i in 0..n {
            let e = rng.gen_range(2..=4);
            gens.push(ring.monomial(Monomial::var_power(n, i, e)));
        }
    }
    Ideal::new(gens)
}

/// A random automorphism `x_i -> sum a_ij x_j + (terms of degree 2..=jet)`,
/// with a unitriangular linear part times a permutation, so it is invertible
/// in every characteristic.
pub fn random_automorphism<F: Field>(
    ring: &PolyRing<F>,
    rng: &mut Rng8,
    jet: u32,
) -> Vec<Polynomial<F::Elem>> {
    let n = ring.num_vars();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    (0..n)
        .map(|i| {
            let mut img = ring.var(perm[i]);
            for &j in &perm[i + 1..] {
                if rng.gen_bool(0.5) {
                    let c = ring.int(small_coefficient(rng));
                    img = ring.add(&img, &ring.mul(&c, &ring.var(j)));
                }
            }
            if jet >= 2 && rng.gen_bool(0.7) {
                img = ring.add(&img, &random_poly(ring, rng, 2, jet, 1));
            }
            img
        })
        .collect()
}

/// A unit `c + (random terms of order >= 1)`.
pub fn random_unit<F: Field>(ring: &PolyRing<F>, rng: &mut Rng8) -> Polynomial<F::Elem> {
    loop {
        let c = ring.int(small_coefficient(rng));
        if ring.is_unit(&c) {
            let terms = rng.gen_range(0..=2);
            return ring.add(&c, &random_poly(ring, rng, 1, 2, terms));
        }
    }
}
