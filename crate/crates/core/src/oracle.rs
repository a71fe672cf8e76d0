//! Brute-force ground truth by truncated linear algebra.
//!
//! `(I + m^(D+1)) / m^(D+1)` is spanned by the truncations of the monomial
//! multiples `u * g_i`. Row reducing them with columns sorted by ascending
//! degree gives every graded quantity up to `D` at once: the image in
//! degrees `<= d` has rank equal to the number of pivots of degree `<= d`.
//! Nothing here touches standard bases.

use std::collections::HashMap;

use serde::Serialize;

use crate::coefficients::Field;
use crate::localalg::HilbertFunction;
use crate::poly::{monomials_of_degree, Monomial, PolyRing, Polynomial};
use crate::stdbasis::Ideal;

type Row<E> = Vec<(usize, E)>;

/// Row-reduced span of `(I + m^(D+1)) / m^(D+1)`.
#[derive(Debug, Clone)]
pub struct TruncatedSpace<F: Field> {
    field: F,
    cap: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// pivot rows keyed by leading column, leading coefficient one
    pivots: HashMap<usize, Row<F::Elem>>,
    /// first column index of each degree, plus the total at the end
    degree_start: Vec<usize>,
}

impl<F: Field> TruncatedSpace<F> {
    pub fn new(ring: &PolyRing<F>, ideal: &Ideal<F::Elem>, cap: u32) -> Self {
        let n = ring.num_vars();
        let mut basis = Vec::new();
        let mut degree_start = Vec::with_capacity(cap as usize + 2);
        for d in 0..=cap {
            degree_start.push(basis.len());
            basis.extend(monomials_of_degree(n, d));
        }
        degree_start.push(basis.len());
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut space = TruncatedSpace {
            field: ring.field().clone(),
            cap,
            basis,
            index,
            pivots: HashMap::new(),
            degree_start,
        };
        for g in ideal.generators() {
            let Some(o) = g.ord().finite() else { continue };
            if o > cap {
                continue;
            }
            for e in 0..=cap - o {
                for u in monomials_of_degree(n, e) {
                    let row = space.row_of_product(g, &u);
                    space.insert(row);
                }
            }
        }
        space
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn row_of_product(&self, g: &Polynomial<F::Elem>, u: &Monomial) -> Row<F::Elem> {
        let mut row: Row<F::Elem> = g
            .terms()
            .iter()
            .filter_map(|(m, c)| {
                let p = m.mul(u);
                (p.degree() <= self.cap).then(|| (self.index[&p], c.clone()))
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }

    fn row_of(&self, f: &Polynomial<F::Elem>) -> Row<F::Elem> {
        let mut row: Row<F::Elem> = f
            .terms()
            .iter()
            .filter(|(m, _)| m.degree() <= self.cap)
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }

    /// `row - c * other`, both sorted by column.
    fn sub_scaled(&self, row: &Row<F::Elem>, c: &F::Elem, other: &Row<F::Elem>) -> Row<F::Elem> {
        let k = &self.field;
        let mut out = Vec::with_capacity(row.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < other.len() {
            let take_left = j == other.len() || (i < row.len() && row[i].0 < other[j].0);
            let take_right = i == row.len() || (j < other.len() && other[j].0 < row[i].0);
            if take_left {
                out.push(row[i].clone());
                i += 1;
            } else if take_right {
                out.push((other[j].0, k.neg(&k.mul(c, &other[j].1))));
                j += 1;
            } else {
                let v = k.sub(&row[i].1, &k.mul(c, &other[j].1));
                if !k.is_zero(&v) {
                    out.push((row[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Reduces `row` until its leading column is not a pivot.
    fn reduce(&self, mut row: Row<F::Elem>) -> Row<F::Elem> {
        while let Some((col, c)) = row.first().cloned() {
            match self.pivots.get(&col) {
                Some(p) => row = self.sub_scaled(&row, &c, p),
                None => break,
            }
        }
        row
    }

    fn insert(&mut self, row: Row<F::Elem>) {
        let row = self.reduce(row);
        if let Some((col, c)) = row.first().cloned() {
            let inv = self.field.inv(&c).expect("nonzero pivot");
            let row = row
                .into_iter()
                .map(|(j, v)| (j, self.field.mul(&v, &inv)))
                .collect();
            self.pivots.insert(col, row);
        }
    }

    /// Whether `f` lies in `I` modulo `m^(D+1)`.
    pub fn contains(&self, f: &Polynomial<F::Elem>) -> bool {
        // a nonzero vector of the span leads with a pivot column
        self.reduce(self.row_of(f)).is_empty()
    }

    fn degree_of_column(&self, col: usize) -> usize {
        self.degree_start.partition_point(|s| *s <= col) - 1
    }

    /// `dim K[[x]] / (I + m^(d+1))` for `d = 0..=D`.
    pub fn dims(&self) -> Vec<usize> {
        let mut per_degree = vec![0usize; self.cap as usize + 1];
        for col in self.pivots.keys() {
            per_degree[self.degree_of_column(*col)] += 1;
        }
        let mut out = Vec::with_capacity(per_degree.len());
        let mut acc = 0usize;
        for (d, pivots) in per_degree.iter().enumerate() {
            let monos = self.degree_start[d + 1] - self.degree_start[d];
            acc += monos - pivots;
            out.push(acc);
        }
        out
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
}

/// Outcome of the oracle colength computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OracleColength {
    /// Two consecutive truncations agreed, so `m^d ⊆ I` for that `d`.
    Stable(usize),
    /// Dimensions for `d = 0..=D`, still growing at `D`.
    Unstable { dims: Vec<usize> },
}

impl OracleColength {
    pub fn stable(&self) -> Option<usize> {
        match self {
            OracleColength::Stable(n) => Some(*n),
            OracleColength::Unstable { .. } => None,
        }
    }
}

/// First `d` with `dim_(d-1) = dim_d`, i.e. the least `N` with `m^N ⊆ I`.
fn first_stable(dims: &[usize]) -> Option<usize> {
    if dims.first() == Some(&0) {
        return Some(0);
    }
    (1..dims.len()).find(|&d| dims[d - 1] == dims[d])
}

pub fn oracle_colength<F: Field>(
    ring: &PolyRing<F>,
    ideal: &Ideal<F::Elem>,
    cap: u32,
) -> OracleColength {
    let dims = TruncatedSpace::new(ring, ideal, cap).dims();
    match first_stable(&dims) {
        Some(d) => OracleColength::Stable(dims[d]),
        None => OracleColength::Unstable { dims },
    }
}

/// Membership modulo `m^(D+1)`; exact once `m^(D+1) ⊆ I`.
pub fn oracle_member<F: Field>(
    ring: &PolyRing<F>,
    f: &Polynomial<F::Elem>,
    ideal: &Ideal<F::Elem>,
    cap: u32,
) -> bool {
    TruncatedSpace::new(ring, ideal, cap).contains(f)
}

/// Degreewise dimensions of the associated graded algebra, if the
/// truncation at `D` already shows `I` to be m-primary.
pub fn oracle_hilbert<F: Field>(
    ring: &PolyRing<F>,
    ideal: &Ideal<F::Elem>,
    cap: u32,
) -> Option<HilbertFunction> {
    let dims = TruncatedSpace::new(ring, ideal, cap).dims();
    let top = first_stable(&dims)?;
    let mut hf: Vec<usize> = (0..top)
        .map(|d| dims[d] - if d == 0 { 0 } else { dims[d - 1] })
        .collect();
    while hf.last() == Some(&0) {
        hf.pop();
    }
    Some(HilbertFunction(hf))
}

/// Least `N <= D` such that every monomial of degree `N` is a member
/// modulo `m^(D+1)`, scanning monomial by monomial.
pub fn oracle_min_m_power<F: Field>(
    ring: &PolyRing<F>,
    ideal: &Ideal<F::Elem>,
    cap: u32,
) -> Option<u32> {
    let space = TruncatedSpace::new(ring, ideal, cap);
    let start = ideal
        .generators()
        .iter()
        .filter_map(|g| g.ord().finite())
        .min()?;
    (start..=cap).find(|&n| {
        monomials_of_degree(ring.num_vars(), n)
            .into_iter()
            .all(|m| space.contains(&ring.monomial(m)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{PrimeField, Rationals};
    use crate::parser::parse_polynomial;

    fn q2() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, &["x", "y"], 64).unwrap()
    }

    fn ideal<F: Field>(r: &PolyRing<F>, gens: &[&str]) -> Ideal<F::Elem> {
        Ideal::new(gens.iter().map(|s| parse_polynomial(s, r).unwrap()))
    }

    fn cusp_contact(r: &PolyRing<Rationals>) -> Ideal<num_rational::BigRational> {
        ideal(
            r,
            &[
                "x*(x^2+y^3)",
                "y*(x^2+y^3)",
                "x^3",
                "x^2*y",
                "x*y^2",
                "x^2*y^2",
                "x*y^3",
                "y^4",
            ],
        )
    }

    #[test]
    fn colength_examples() {
        let r = q2();
        assert_eq!(
            oracle_colength(&r, &ideal(&r, &["x^5", "y^5"]), 12),
            OracleColength::Stable(25)
        );
        assert_eq!(
            oracle_colength(&r, &ideal(&r, &["2*x", "3*y^2"]), 6),
            OracleColength::Stable(2)
        );
        match oracle_colength(&r, &ideal(&r, &["x^2*y", "x^3"]), 10) {
            OracleColength::Unstable { dims } => assert!(dims.windows(2).all(|w| w[0] < w[1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unit_generator() {
        let r = q2();
        assert_eq!(
            oracle_colength(&r, &ideal(&r, &["1+x"]), 4),
            OracleColength::Stable(0)
        );
    }

    #[test]
    fn member_examples() {
        let r = q2();
        let y3 = parse_polynomial("y^3", &r).unwrap();
        assert!(!oracle_member(&r, &y3, &cusp_contact(&r), 8));
        let x3 = parse_polynomial("x*x^2", &r).unwrap();
        assert!(oracle_member(&r, &x3, &ideal(&r, &["x^2"]), 5));
        // a unit multiple: x = (x - x^2) (1 + x + x^2 + ...)
        let x = parse_polynomial("x", &r).unwrap();
        assert!(oracle_member(&r, &x, &ideal(&r, &["x-x^2"]), 6));

        let r5 = PolyRing::new(PrimeField::new(5).unwrap(), &["x", "y"], 64).unwrap();
        let x5 = parse_polynomial("x^5", &r5).unwrap();
        let m1j = ideal(&r5, &["x^6", "x^5*y", "x*y^5", "y^6"]);
        assert!(!oracle_member(&r5, &x5, &m1j, 12));
    }

    #[test]
    fn hilbert_and_min_power() {
        let r = q2();
        assert_eq!(
            oracle_hilbert(&r, &ideal(&r, &["x^2", "y^2"]), 6),
            Some(HilbertFunction(vec![1, 2, 1]))
        );
        assert_eq!(
            oracle_min_m_power(&r, &ideal(&r, &["x^5", "y^5"]), 12),
            Some(9)
        );
        assert_eq!(oracle_min_m_power(&r, &cusp_contact(&r), 8), Some(4));
        let r2 = PolyRing::new(PrimeField::new(2).unwrap(), &["x", "y"], 64).unwrap();
        assert_eq!(
            oracle_hilbert(&r2, &ideal(&r2, &["y^2+x^3*y", "x^2*y", "x^3"]), 8),
            Some(HilbertFunction(vec![1, 2, 2]))
        );
    }
}
