//! Standard bases in the local ring via Mora's weak normal form.
//!
//! The computation runs modulo `m^d` for growing `d`. Two facts keep the
//! results exact rather than merely truncated:
//!
//! * for a degree-compatible local ordering the leading ideal below `d` is
//!   computed exactly, whatever happens above it;
//! * once the leading ideal contains every monomial of some degree `c`
//!   (the *corner*), `m^c` lies in the ideal itself, and all later work can
//!   be done modulo `m^c` without losing anything.
//!
//! A stage that finds a corner or never drops a nonzero term is final. If
//! the stage at the degree cap still drops terms, a last stage runs without
//! truncation, which terminates because the input consists of polynomials.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::coefficients::Field;
use crate::error::{Error, Result};
use crate::poly::{mono_cmp, Monomial, PolyRing, Polynomial};

const CACHE_LIMIT: usize = 512;
/// First truncation degree tried by [`std_basis`].
const STAGE_START: u32 = 8;
/// Truncation degree that never truncates.
const UNBOUNDED: u32 = u32::MAX;
/// Work, in coefficient words, one stage may spend.
const STAGE_BUDGET: u64 = 50_000_000;
/// Largest coefficient, in words, a stage tolerates.
const MAX_WEIGHT: usize = 32;

/// An ideal given by generators. Zero and repeated generators are pruned.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal<E> {
    gens: Vec<Polynomial<E>>,
}

impl<E: Clone + PartialEq> Ideal<E> {
    pub fn new(gens: impl IntoIterator<Item = Polynomial<E>>) -> Self {
        let mut out: Vec<Polynomial<E>> = Vec::new();
        for g in gens {
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal { gens: out }
    }

    pub fn zero() -> Self {
        Ideal { gens: Vec::new() }
    }

    pub fn generators(&self) -> &[Polynomial<E>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Result of a weak normal form computation:
/// `unit * f = sum(cofactors[i] * g[i]) + remainder` modulo `m^(cap+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm<E> {
    pub remainder: Polynomial<E>,
    pub unit: Polynomial<E>,
    pub cofactors: Vec<Polynomial<E>>,
}

/// A standard basis with its staircase (minimal leading exponents).
#[derive(Debug, Clone)]
pub struct StdBasis<E> {
    elements: Vec<Polynomial<E>>,
    staircase: Vec<Monomial>,
    source: Ideal<E>,
    corner: Option<u32>,
    exact: bool,
    exhausted: bool,
    partial: bool,
}

impl<E> StdBasis<E> {
    /// Whether the computation stopped on its work limit, typically from
    /// coefficient growth over the rationals.
    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    /// Whether the work limit interrupted the basis below the cap, so the
    /// elements need not form a standard basis even modulo `m^(cap+1)`.
    pub fn is_partial(&self) -> bool {
        self.partial
    }

    /// Monic elements sorted by decreasing leading monomial.
    pub fn elements(&self) -> &[Polynomial<E>] {
        &self.elements
    }

    pub fn staircase(&self) -> &[Monomial] {
        &self.staircase
    }

    pub fn source(&self) -> &Ideal<E> {
        &self.source
    }

    /// Least `d` with `m^d` contained in the ideal, when known.
    pub fn corner(&self) -> Option<u32> {
        self.corner
    }

    /// True when no information was lost to the degree cap.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.staircase.iter().any(|m| m.is_one())
    }
}

pub(crate) type BasisCache<E> = HashMap<Ideal<E>, Arc<StdBasis<E>>>;

/// Standard monomials of a monomial ideal given by `staircase`, provided
/// every variable has a pure power in it. Stops with `Err(())` as soon as a
/// standard monomial of degree `> max_degree` shows up.
pub(crate) fn standard_monomials(
    staircase: &[Monomial],
    num_vars: usize,
    max_degree: u32,
) -> Option<Result<Vec<Monomial>, ()>> {
    let mut bounds = vec![u32::MAX; num_vars];
    for m in staircase {
        if m.is_one() {
            return Some(Ok(Vec::new()));
        }
        if let Some(i) = m.pure_power_var() {
            bounds[i] = bounds[i].min(m.exponents()[i]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; num_vars];
    // odometer over the box; standard monomials form an order ideal, so a
    // divisible prefix lets us skip the rest of that coordinate's range
    fn rec(
        i: usize,
        cur: &mut Vec<u32>,
        bounds: &[u32],
        staircase: &[Monomial],
        max_degree: u32,
        out: &mut Vec<Monomial>,
    ) -> Result<(), ()> {
        if i == cur.len() {
            let m = Monomial::new(cur);
            if staircase.iter().any(|s| s.divides(&m)) {
                return Ok(());
            }
            if m.degree() > max_degree {
                return Err(());
            }
            out.push(m);
            return Ok(());
        }
        for e in 0..bounds[i] {
            cur[i] = e;
            let probe = Monomial::new(cur);
            if staircase.iter().any(|s| s.divides(&probe)) {
                break;
            }
            rec(i + 1, cur, bounds, staircase, max_degree, out)?;
        }
        cur[i] = 0;
        Ok(())
    }
    Some(
        rec(0, &mut cur, &bounds, staircase, max_degree, &mut out).map(|_| {
            out.sort_by(|a, b| mono_cmp(b, a));
            out
        }),
    )
}

/// Corner of the monomial ideal: one more than the largest degree of a
/// standard monomial, if that is at most `cap`.
fn corner_of(staircase: &[Monomial], num_vars: usize, cap: u32) -> Option<u32> {
    match standard_monomials(staircase, num_vars, cap.saturating_sub(1))? {
        Ok(std) => Some(std.iter().map(|m| m.degree() + 1).max().unwrap_or(0)),
        Err(()) => None,
    }
}

struct Reducer<'a, F: Field> {
    ring: &'a PolyRing<F>,
    /// Remaining term budget; `None` is unlimited.
    budget: std::cell::Cell<Option<u64>>,
}

impl<'a, F: Field> Reducer<'a, F> {
    fn new(ring: &'a PolyRing<F>, budget: Option<u64>) -> Self {
        Reducer {
            ring,
            budget: std::cell::Cell::new(budget),
        }
    }

    /// Charges `work`; false once the budget is spent or a coefficient
    /// grows wider than the limit.
    fn charge(&self, work: usize, widest: usize) -> bool {
        match self.budget.get() {
            None => true,
            Some(left) => {
                let left = if widest > MAX_WEIGHT {
                    0
                } else {
                    left.saturating_sub(work as u64)
                };
                self.budget.set(Some(left));
                left > 0
            }
        }
    }
}

impl<F: Field> Reducer<'_, F> {
    /// Mora's weak normal form of `h` against `basis`, remainder only,
    /// computed on degrees `< limit`. The flag reports dropped terms.
    fn reduce(
        &self,
        mut h: Polynomial<F::Elem>,
        basis: &[(Polynomial<F::Elem>, u32)],
        limit: u32,
    ) -> (Polynomial<F::Elem>, bool) {
        let k = self.ring.field();
        let mut extra: Vec<(Polynomial<F::Elem>, u32)> = Vec::new();
        let mut dropped = false;
        loop {
            let Some((lm, lc)) = h.leading_term().cloned() else {
                return (h, dropped);
            };
            let h_ecart = h.ecart().unwrap_or(0);
            // (ecart, from the extra pool, index); first minimum wins
            let mut best: Option<(u32, bool, usize)> = None;
            for (i, (g, e)) in basis.iter().enumerate() {
                if best.is_some_and(|b| b.0 <= *e) {
                    continue;
                }
                if g.leading_monomial().unwrap().divides(&lm) {
                    best = Some((*e, false, i));
                }
            }
            for (i, (g, e)) in extra.iter().enumerate() {
                if best.is_some_and(|b| b.0 <= *e) {
                    continue;
                }
                if g.leading_monomial().unwrap().divides(&lm) {
                    best = Some((*e, true, i));
                }
            }
            let Some((d_ecart, is_extra, idx)) = best else {
                return (h, dropped);
            };
            if d_ecart > h_ecart {
                extra.push((h.clone(), h_ecart));
            }
            let divisor = if is_extra {
                &extra[idx].0
            } else {
                &basis[idx].0
            };
            let (g_lm, g_lc) = divisor.leading_term().unwrap();
            let shift = g_lm.quotient_of(&lm).unwrap();
            let c = k.neg(&k.div(&lc, g_lc).expect("nonzero leading coefficient"));
            let (next, d_flag) = self.ring.axpy(&h, &c, Some(&shift), divisor, limit);
            dropped |= d_flag;
            h = next;
            let (work, widest) = h.terms().iter().fold((0, 0), |(sum, max), (_, c)| {
                let w = k.weight(c);
                (sum + w, max.max(w))
            });
            if !self.charge(work + divisor.num_terms(), widest) {
                return (h, true);
            }
        }
    }
}

/// Mora's weak normal form of `f` against `gens` with full bookkeeping of
/// the unit and the cofactors.
pub fn mora_nf<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    gens: &[Polynomial<F::Elem>],
) -> NormalForm<F::Elem> {
    struct Tracked<E> {
        poly: Polynomial<E>,
        ecart: u32,
        unit: Polynomial<E>,
        cofactors: Vec<Polynomial<E>>,
    }

    let k = ring.field();
    let n = gens.len();
    let mut h = f.clone();
    let mut unit = ring.one();
    let mut cof: Vec<Polynomial<F::Elem>> = vec![ring.zero(); n];
    let gen_ecart: Vec<u32> = gens.iter().map(|g| g.ecart().unwrap_or(0)).collect();
    let mut extra: Vec<Tracked<F::Elem>> = Vec::new();

    while let Some((lm, lc)) = h.leading_term().cloned() {
        let h_ecart = h.ecart().unwrap_or(0);
        // (ecart, is_extra, index)
        let mut best: Option<(u32, bool, usize)> = None;
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() || best.is_some_and(|b| b.0 <= gen_ecart[i]) {
                continue;
            }
            if g.leading_monomial().unwrap().divides(&lm) {
                best = Some((gen_ecart[i], false, i));
            }
        }
        for (i, t) in extra.iter().enumerate() {
            if best.is_some_and(|b| b.0 <= t.ecart) {
                continue;
            }
            if t.poly.leading_monomial().unwrap().divides(&lm) {
                best = Some((t.ecart, true, i));
            }
        }
        let Some((d_ecart, is_extra, idx)) = best else {
            break;
        };
        if d_ecart > h_ecart {
            extra.push(Tracked {
                poly: h.clone(),
                ecart: h_ecart,
                unit: unit.clone(),
                cofactors: cof.clone(),
            });
        }
        let divisor = if is_extra {
            &extra[idx].poly
        } else {
            &gens[idx]
        };
        let (g_lm, g_lc) = divisor.leading_term().unwrap();
        let shift = g_lm.quotient_of(&lm).unwrap();
        let c = k.neg(&k.div(&lc, g_lc).expect("nonzero leading coefficient"));
        let next = ring.axpy(&h, &c, Some(&shift), divisor, ring.cap() + 1).0;
        let shift_poly = ring.term(shift.clone(), c.clone());
        if is_extra {
            // h - c' m t, with t = u_t f - sum a_t g - ...: fold t's record in
            let t = &extra[idx];
            unit = ring.add(&unit, &ring.mul(&shift_poly, &t.unit));
            for (a, b) in cof.iter_mut().zip(&t.cofactors) {
                *a = ring.add(a, &ring.mul(&shift_poly, b));
            }
        } else {
            cof[idx] = ring.sub(&cof[idx], &shift_poly);
        }
        h = next;
    }

    debug_assert!(ring.is_unit(&unit));
    let nf = NormalForm {
        remainder: h,
        unit,
        cofactors: cof,
    };
    debug_assert!(check_normal_form(ring, f, gens, &nf));
    nf
}

/// Verifies `unit * f - sum(cofactors[i] * g[i]) - remainder = 0` modulo
/// `m^(cap+1)` and that `unit` is a unit.
pub fn check_normal_form<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    gens: &[Polynomial<F::Elem>],
    nf: &NormalForm<F::Elem>,
) -> bool {
    let mut acc = ring.sub(&ring.mul(&nf.unit, f), &nf.remainder);
    for (a, g) in nf.cofactors.iter().zip(gens) {
        acc = ring.sub(&acc, &ring.mul(a, g));
    }
    acc.is_zero() && ring.is_unit(&nf.unit)
}

/// Computes a standard basis of `ideal`.
///
/// The work runs in stages modulo `m^d` for growing `d`. The leading ideal
/// below `d` is already exact at each stage, so a corner found early is
/// final and spares expanding every tail up to the cap.
pub fn std_basis<F: Field>(ring: &PolyRing<F>, ideal: &Ideal<F::Elem>) -> StdBasis<F::Elem> {
    let full = ring.cap() + 1;
    let mut d = STAGE_START.min(full);
    loop {
        let (mut b, aborted) = std_basis_below(ring, ideal, d);
        if b.exact && b.corner.is_none() {
            // nothing was truncated, so the staircase is complete
            b.corner = corner_of(&b.staircase, ring.num_vars(), ring.cap());
        }
        // a stage that ran out of budget would only fare worse higher up
        if b.exact || aborted {
            return b;
        }
        if d == full {
            // polynomial input: the plain algorithm terminates without
            // truncation, but may take long; out of budget the truncated
            // result stands and stays marked inexact
            let (mut u, exhausted) = std_basis_below(ring, ideal, UNBOUNDED);
            if !u.exact {
                b.exhausted = exhausted;
                return b;
            }
            if u.corner.is_none() {
                u.corner = corner_of(&u.staircase, ring.num_vars(), ring.cap());
            }
            return u;
        }
        d = (2 * d).min(full);
    }
}

/// One stage of [`std_basis`], computing modulo `m^limit`. The flag
/// reports that the stage ran out of budget.
fn std_basis_below<F: Field>(
    ring: &PolyRing<F>,
    ideal: &Ideal<F::Elem>,
    limit: u32,
) -> (StdBasis<F::Elem>, bool) {
    let n = ring.num_vars();
    let cap = limit - 1;
    let red = Reducer::new(ring, Some(STAGE_BUDGET));
    let mut limit = limit;
    let mut corner: Option<u32> = None;
    let mut lossy = false;

    // (polynomial, ecart)
    let mut basis: Vec<(Polynomial<F::Elem>, u32)> = Vec::new();
    // (lcm degree, creation index, i, j)
    let mut pairs: BTreeSet<(u32, u64, usize, usize)> = BTreeSet::new();
    let mut pair_counter = 0u64;

    let mut add_element =
        |h: Polynomial<F::Elem>,
         basis: &mut Vec<(Polynomial<F::Elem>, u32)>,
         pairs: &mut BTreeSet<(u32, u64, usize, usize)>| {
            let h = ring.monic(&h);
            let lm = h.leading_monomial().unwrap().clone();
            let j = basis.len();
            for (i, (g, _)) in basis.iter().enumerate() {
                let glm = g.leading_monomial().unwrap();
                let l = glm.lcm(&lm);
                pairs.insert((l.degree(), pair_counter, i, j));
                pair_counter += 1;
            }
            let e = h.ecart().unwrap_or(0);
            basis.push((h, e));
        };

    let leading = |basis: &[(Polynomial<F::Elem>, u32)]| -> Vec<Monomial> {
        basis
            .iter()
            .map(|(g, _)| g.leading_monomial().unwrap().clone())
            .collect()
    };

    // Tightens the working limit once a corner appears.
    let refresh_corner = |basis: &mut Vec<(Polynomial<F::Elem>, u32)>,
                          pairs: &mut BTreeSet<(u32, u64, usize, usize)>,
                          limit: &mut u32,
                          corner: &mut Option<u32>| {
        let lms = leading(basis);
        if let Some(c) = corner_of(&lms, n, cap) {
            if corner.is_none_or(|old| c < old) {
                *corner = Some(c);
                *limit = c;
                for (g, e) in basis.iter_mut() {
                    let lm = g.leading_monomial().unwrap().clone();
                    if lm.degree() >= c {
                        *g = ring.monomial_uncapped(lm);
                    } else {
                        *g = ring.truncate_below(g, c);
                    }
                    *e = g.ecart().unwrap_or(0);
                }
                pairs.retain(|p| p.0 < c);
            }
        }
    };

    for g in ideal.generators() {
        let t = ring.truncate_below(g, limit);
        lossy |= t.num_terms() != g.num_terms();
        let g = t;
        if !g.is_zero() {
            add_element(g, &mut basis, &mut pairs);
        }
    }
    refresh_corner(&mut basis, &mut pairs, &mut limit, &mut corner);

    while let Some(pair) = pairs.pop_first() {
        let (lcm_deg, _, i, j) = pair;
        let (gi, gj) = (&basis[i].0, &basis[j].0);
        let (mi, mj) = (
            gi.leading_monomial().unwrap(),
            gj.leading_monomial().unwrap(),
        );
        if mi.is_coprime(mj) || (gi.num_terms() == 1 && gj.num_terms() == 1) {
            continue;
        }
        if lcm_deg >= limit {
            if corner.is_none() {
                lossy = true;
            }
            continue;
        }
        let l = mi.lcm(mj);
        let k = ring.field();
        let (si, di) = ring.mul_term_limit(gi, &mi.quotient_of(&l).unwrap(), &k.one(), limit);
        let minus_one = k.neg(&k.one());
        let (s, dj) = ring.axpy(
            &si,
            &minus_one,
            Some(&mj.quotient_of(&l).unwrap()),
            gj,
            limit,
        );
        let (h, dr) = red.reduce(s, &basis, limit);
        if (di || dj || dr) && corner.is_none() {
            lossy = true;
        }
        if red.budget.get() == Some(0) {
            lossy = true;
            corner = None;
            break;
        }
        if !h.is_zero() {
            add_element(h, &mut basis, &mut pairs);
            refresh_corner(&mut basis, &mut pairs, &mut limit, &mut corner);
        }
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let lms = leading(&basis);
    let mut keep: Vec<Polynomial<F::Elem>> = Vec::new();
    for (idx, (g, _)) in basis.iter().enumerate() {
        let m = &lms[idx];
        let redundant = lms
            .iter()
            .enumerate()
            .any(|(o, other)| o != idx && other.divides(m) && (other != m || o < idx));
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| mono_cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    let staircase = keep
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();

    let basis = StdBasis {
        elements: keep,
        staircase,
        source: ideal.clone(),
        corner,
        exact: corner.is_some() || !lossy,
        exhausted: red.budget.get() == Some(0),
        partial: red.budget.get() == Some(0),
    };
    let exhausted = basis.exhausted;
    (basis, exhausted)
}

/// Standard basis through the ring's memo table.
pub fn cached_std_basis<F: Field>(
    ring: &PolyRing<F>,
    ideal: &Ideal<F::Elem>,
) -> Arc<StdBasis<F::Elem>> {
    if let Some(b) = ring.cache.lock().expect("basis cache poisoned").get(ideal) {
        return Arc::clone(b);
    }
    let basis = Arc::new(std_basis(ring, ideal));
    let mut cache = ring.cache.lock().expect("basis cache poisoned");
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(ideal.clone(), Arc::clone(&basis));
    basis
}

/// Weak normal form remainder of `f` against a standard basis, together
/// with whether the answer is exact.
/// `None` when the basis is partial or the reduction hits its work limit.
pub fn reduce_remainder<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    basis: &StdBasis<F::Elem>,
) -> Option<(Polynomial<F::Elem>, bool)> {
    if basis.partial {
        return None;
    }
    let limit = match basis.corner {
        Some(c) => c,
        None if basis.exact => UNBOUNDED,
        None => ring.cap() + 1,
    };
    let elems: Vec<(Polynomial<F::Elem>, u32)> = basis
        .elements
        .iter()
        .map(|g| (g.clone(), g.ecart().unwrap_or(0)))
        .collect();
    let red = Reducer::new(ring, Some(STAGE_BUDGET));
    let h = ring.truncate_below(f, limit);
    let (r, dropped) = red.reduce(h, &elems, limit);
    if red.budget.get() == Some(0) {
        return None;
    }
    let exact = basis.corner.is_some() || (basis.exact && !dropped);
    Some((r, exact))
}

/// `f` in the ideal of `basis`, in the local ring.
pub fn is_member<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    basis: &StdBasis<F::Elem>,
) -> Result<bool> {
    let Some((r, exact)) = reduce_remainder(ring, f, basis) else {
        return Err(Error::DegreeCapExceeded {
            cap: ring.cap(),
            context: "deciding ideal membership (the standard basis hit its work limit)".into(),
        });
    };
    if !r.is_zero() {
        // a nonzero weak normal form below the cap is conclusive
        return Ok(false);
    }
    if exact {
        Ok(true)
    } else {
        Err(Error::DegreeCapExceeded {
            cap: ring.cap(),
            context: if basis.exhausted() {
                "deciding ideal membership (the standard basis hit its work limit)".into()
            } else {
                "deciding ideal membership".into()
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{PrimeField, Rationals};
    use crate::parser::parse_polynomial;

    fn q2() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, &["x", "y"], 64).unwrap()
    }

    fn p<F: Field>(r: &PolyRing<F>, s: &str) -> Polynomial<F::Elem> {
        parse_polynomial(s, r).unwrap()
    }

    fn ideal<F: Field>(r: &PolyRing<F>, gens: &[&str]) -> Ideal<F::Elem> {
        Ideal::new(gens.iter().map(|s| p(r, s)))
    }

    #[test]
    fn nf_unit_example() {
        let r = q2();
        let nf = mora_nf(&r, &p(&r, "x"), &[p(&r, "x-x^2")]);
        assert!(nf.remainder.is_zero());
        assert_eq!(nf.unit, p(&r, "1-x"));
        assert_eq!(nf.cofactors, vec![r.one()]);
        assert!(check_normal_form(&r, &p(&r, "x"), &[p(&r, "x-x^2")], &nf));
    }

    #[test]
    fn nf_monomial_division() {
        let r = q2();
        let nf = mora_nf(&r, &p(&r, "x^5"), &[p(&r, "x^2")]);
        assert!(nf.remainder.is_zero());
        assert_eq!(nf.cofactors, vec![p(&r, "x^3")]);
    }

    #[test]
    fn nf_cusp_y_cubed_not_reduced() {
        let r = q2();
        let gens: Vec<_> = ["x^3", "x^2*y", "x*y^2", "x*(x^2+y^3)", "y*(x^2+y^3)"]
            .iter()
            .map(|s| p(&r, s))
            .collect();
        let nf = mora_nf(&r, &p(&r, "y^3"), &gens);
        assert_eq!(
            nf.remainder.leading_monomial(),
            Some(&Monomial::new(&[0, 3]))
        );
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = q2();
        let b = std_basis(&r, &ideal(&r, &["x^2*y", "x^3"]));
        let mut st = b.staircase().to_vec();
        st.sort();
        let mut expect = vec![Monomial::new(&[2, 1]), Monomial::new(&[3, 0])];
        expect.sort();
        assert_eq!(st, expect);
        assert!(b.is_exact());
        assert_eq!(b.corner(), None);
    }

    #[test]
    fn jacobian_of_remark_example_char_two() {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), &["x", "y"], 64).unwrap();
        let f = p(&r, "y^2+x^3*y");
        let j = Ideal::new((0..2).map(|i| r.partial_derivative(&f, i)));
        let b = std_basis(&r, &j);
        assert_eq!(b.elements(), &[p(&r, "x^3"), p(&r, "x^2*y")]);
    }

    #[test]
    fn basis_is_monic() {
        let r = q2();
        let b = std_basis(&r, &ideal(&r, &["2*x", "3*y^2"]));
        assert_eq!(b.elements(), &[p(&r, "x"), p(&r, "y^2")]);
        assert_eq!(b.corner(), Some(2));
    }

    #[test]
    fn membership_examples() {
        for prime in [2u32, 3, 5, 7] {
            let r = PolyRing::new(PrimeField::new(prime).unwrap(), &["x", "y"], 64).unwrap();
            let b = std_basis(
                &r,
                &ideal(&r, &[&format!("x^{prime}"), &format!("y^{prime}")]),
            );
            let f = p(&r, &format!("x^{0}+y^{0}", prime + 1));
            assert!(is_member(&r, &f, &b).unwrap());
        }
        let r = q2();
        let b = std_basis(&r, &ideal(&r, &["x^2", "y^2"]));
        assert!(is_member(&r, &p(&r, "y^3"), &b).unwrap());
        assert!(!is_member(&r, &p(&r, "x*y"), &b).unwrap());

        let r5 = PolyRing::new(PrimeField::new(5).unwrap(), &["x", "y"], 64).unwrap();
        let f = "(x^6+y^6)";
        let gens = [
            format!("x*{f}"),
            format!("y*{f}"),
            "x^7".into(),
            "x^6*y".into(),
            "x^5*y^2".into(),
            "x^2*y^5".into(),
            "x*y^6".into(),
            "y^7".into(),
        ];
        let gens: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        let b = std_basis(&r5, &ideal(&r5, &gens));
        assert!(!is_member(&r5, &p(&r5, "x^4*y^4"), &b).unwrap());
    }

    #[test]
    fn unit_factor_handled_exactly() {
        let r = q2();
        // not m-primary, so exactness must come from Mora, not from a corner
        let b = std_basis(&r, &ideal(&r, &["x+x^2*y"]));
        assert!(b.is_exact());
        assert!(is_member(&r, &p(&r, "x"), &b).unwrap());
        assert!(!is_member(&r, &p(&r, "y"), &b).unwrap());
    }

    #[test]
    fn idempotent_staircase() {
        let r = q2();
        let b = std_basis(&r, &ideal(&r, &["x^2+y^3", "x*y^2 + x^4"]));
        let again = std_basis(&r, &Ideal::new(b.elements().to_vec()));
        assert_eq!(b.staircase(), again.staircase());
    }

    #[test]
    fn deterministic() {
        let r = q2();
        let i = ideal(&r, &["x^3+y^4-x*y^2", "x^2*y + 3*y^5", "x^5"]);
        let a = std_basis(&r, &i);
        let b = std_basis(&r, &i);
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn unit_ideal() {
        let r = q2();
        let b = std_basis(&r, &ideal(&r, &["1+x", "y"]));
        assert!(b.is_unit_ideal());
        assert_eq!(b.corner(), Some(0));
        assert!(is_member(&r, &p(&r, "x^3+7"), &b).unwrap());
    }

    #[test]
    fn zero_ideal() {
        let r = q2();
        let b = std_basis(&r, &Ideal::zero());
        assert!(b.elements().is_empty());
        assert!(!is_member(&r, &p(&r, "x"), &b).unwrap());
        assert!(is_member(&r, &r.zero(), &b).unwrap());
    }
}
