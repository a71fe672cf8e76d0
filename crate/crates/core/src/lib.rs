//! Exact invariants of hypersurface singularities `f` in `K[[x_1..x_n]]`
//! over `Q` and `F_p`: Milnor and Tjurina numbers, the higher Milnor and
//! Tjurina ideals, finite-determinacy bounds, the smallest index `k` for
//! which the `k`-th Tjurina (Milnor) algebra pins down the contact (right)
//! equivalence class, and certificate-based equivalence verdicts.
//!
//! All ideal computations run on local standard bases (Mora's tangent-cone
//! normal form) under the negative degree reverse lexicographic ordering.
//! An independent truncated linear-algebra [`oracle`] cross-checks them.
//!
//! The algorithms are generic over the coefficient [`Field`]; the aliases
//! below name the two concrete instantiations.

pub mod coefficients;
pub mod equivalence;
pub mod error;
pub mod localalg;
pub mod oracle;
pub mod parser;
pub mod poly;
pub mod report;
pub mod singularity;
pub mod stdbasis;

pub use coefficients::{Field, FieldScalar, FieldSpec, PrimeField, Rationals};
pub use error::{Error, Result};
pub use poly::{Monomial, Order, PolyRing, Polynomial, DEFAULT_DEGREE_CAP};
pub use stdbasis::{Ideal, StdBasis};

/// Polynomials over `Q`.
pub type RatPoly = Polynomial<num_rational::BigRational>;
/// Polynomials over `F_p`.
pub type ModPoly = Polynomial<u32>;
/// Power series rings over `Q`.
pub type RatRing = PolyRing<Rationals>;
/// Power series rings over `F_p`.
pub type ModRing = PolyRing<PrimeField>;
/// Rings whose field is only known at run time.
pub type DynRing = PolyRing<FieldSpec>;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
