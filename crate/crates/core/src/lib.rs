//! Crepant resolutions of two-parameter Gorenstein cyclic quotient
//! singularities `1/r(1, d, c, ..., c)`.
//!
//! The crate computes remainder polynomials (a multidimensional continued
//! fraction of the group type) and decides crepancy from the ages of their
//! coefficients. Two independent routes check every answer: the
//! Hirzebruch–Jung expansion of `r/d` with its congruence condition, and an
//! exact search for basic triangulations of the junior simplex.
//!
//! All algorithms are generic over the integer type (see [`Scalar`]); the
//! aliases below fix it to arbitrary precision, which is what the CLI uses.
//!
//! ```
//! use crepant::{decide_two_parameter, BigTwoParameter, Decision};
//!
//! let t = BigTwoParameter::new(4, 15.into(), 2.into(), 6.into()).unwrap();
//! assert_eq!(decide_two_parameter(&t).decision(), Decision::Crepant);
//! ```

pub mod cli;
pub mod criteria;
pub mod error;
pub mod fraction;
pub mod hj;
pub mod json;
pub mod lattice;
pub mod polynomial;
pub mod scalar;

use num_bigint::BigInt;

pub use criteria::{
    case1_verdict, case2_verdict, classify, cross_check, decide_ab, decide_fast, decide_general,
    decide_two_parameter, normalize, r2_chain, CaseTag, ChainStep, CrossCheck, Decision,
    GeneralTwoParameter, Normalized, Obstruction, TwoParameterType, Verdict,
};
pub use error::{Error, Result};
pub use fraction::{MaybeFraction, ProperFraction};
pub use hj::{dlr_criterion, first_entry, hj_evaluate, hj_expand, HjExpansion};
pub use lattice::{
    determinant, point_in_overlattice, search_triangulation, LatticePoint, Overlattice,
    SearchLimits, SearchOutcome, Simplex, Triangulation,
};
pub use polynomial::{RemainderPolynomial, Term, Word};
pub use scalar::Scalar;

pub type BigFraction = ProperFraction<BigInt>;
pub type BigPolynomial = RemainderPolynomial<BigInt>;
pub type BigTerm = Term<BigInt>;
pub type BigHj = HjExpansion<BigInt>;
pub type BigTwoParameter = TwoParameterType<BigInt>;
pub type BigVerdict = Verdict<BigInt>;
pub type BigLattice = Overlattice<BigInt>;

pub type Fraction64 = ProperFraction<i64>;
pub type Polynomial64 = RemainderPolynomial<i64>;
pub type TwoParameter64 = TwoParameterType<i64>;
