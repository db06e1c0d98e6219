//! n-dimensional proper fractions `a/r` and the i-th remainder maps.
//!
//! A proper fraction is the datum `(r; a_1, ..., a_n)` with
//! `0 <= a_i <= r - 1`. It is never reduced: `(4; 2, 2)` and `(2; 1, 1)` are
//! different group types even though they describe the same rational point.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Scalar;

/// An n-dimensional proper fraction `(a_1, ..., a_n)/r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", try_from = "FractionRepr<T>")]
pub struct ProperFraction<T> {
    #[serde(with = "crate::json::int")]
    r: T,
    #[serde(with = "crate::json::int_seq")]
    a: Vec<T>,
}

#[derive(Deserialize)]
#[serde(bound = "T: Scalar")]
struct FractionRepr<T> {
    #[serde(with = "crate::json::int")]
    r: T,
    #[serde(with = "crate::json::int_seq")]
    a: Vec<T>,
}

impl<T: Scalar> TryFrom<FractionRepr<T>> for ProperFraction<T> {
    type Error = Error;

    fn try_from(repr: FractionRepr<T>) -> Result<Self> {
        ProperFraction::new(repr.r, repr.a)
    }
}

/// Result of a remainder map: a fraction, or `∞` when the pivot numerator is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MaybeFraction<T> {
    Finite(ProperFraction<T>),
    Infinity,
}

impl<T> MaybeFraction<T> {
    pub fn finite(self) -> Option<ProperFraction<T>> {
        match self {
            MaybeFraction::Finite(f) => Some(f),
            MaybeFraction::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, MaybeFraction::Infinity)
    }
}

impl<T: Scalar> ProperFraction<T> {
    /// Validates `0 <= a_i < r` for every numerator. Numerators are stored as
    /// given.
    pub fn new(r: T, a: Vec<T>) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveDenominator(r.to_string()));
        }
        if a.is_empty() {
            return Err(Error::EmptyNumerators);
        }
        for (i, ai) in a.iter().enumerate() {
            if ai.is_negative() || *ai >= r {
                return Err(Error::NumeratorOutOfRange {
                    index: i + 1,
                    value: ai.to_string(),
                    r: r.to_string(),
                });
            }
        }
        Ok(Self { r, a })
    }

    /// The fraction `(0, ..., 0)/1`.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Self {
            r: T::one(),
            a: vec![T::zero(); n],
        }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(r: i64, a: &[i64]) -> Result<Self> {
        let conv = |x: i64| T::from_i64(x).expect("i64 fits in scalar type");
        Self::new(conv(r), a.iter().copied().map(conv).collect())
    }

    pub fn denominator(&self) -> &T {
        &self.r
    }

    pub fn numerators(&self) -> &[T] {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn numerator_sum(&self) -> T {
        self.a.iter().fold(T::zero(), |acc, x| acc + x.clone())
    }

    /// `(Σ a_i)/r`, exact.
    pub fn age(&self) -> Ratio<T> {
        Ratio::new(self.numerator_sum(), self.r.clone())
    }

    pub fn has_age_one(&self) -> bool {
        self.numerator_sum() == self.r
    }

    /// True iff some numerator equals 1.
    pub fn is_semi_unimodular(&self) -> bool {
        self.a.iter().any(|x| x.is_one())
    }

    /// True for `(0, ..., 0)/1`, the only fraction with denominator 1.
    pub fn is_zero(&self) -> bool {
        self.r.is_one()
    }

    /// Gorenstein in normalized form: first numerator 1 and numerators summing
    /// to exactly `r`.
    pub fn is_normalized_gorenstein(&self) -> bool {
        self.a[0].is_one() && self.has_age_one()
    }

    /// The i-th remainder map, `i` counted from 1.
    ///
    /// With pivot `p = a_i`: `∞` if `p = 0`; otherwise the fraction over `p`
    /// whose j-th numerator is `a_j mod p` and whose i-th numerator is
    /// `(-r) mod p`.
    pub fn remainder_map(&self, i: usize) -> Result<MaybeFraction<T>> {
        let n = self.dim();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let pivot = &self.a[i - 1];
        if pivot.is_zero() {
            return Ok(MaybeFraction::Infinity);
        }
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(j, aj)| {
                if j == i - 1 {
                    (-self.r.clone()).residue(pivot)
                } else {
                    aj.residue(pivot)
                }
            })
            .collect();
        Ok(MaybeFraction::Finite(Self {
            r: pivot.clone(),
            a,
        }))
    }

    /// Canonical type string `r:a1,a2,...,an`.
    pub fn to_type_string(&self) -> String {
        let nums: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        format!("{}:{}", self.r, nums.join(","))
    }

    /// The same fraction with numerators permuted: entry `k` of the result is
    /// `a[perm[k]]` (0-based).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim());
        Self {
            r: self.r.clone(),
            a: perm.iter().map(|&k| self.a[k].clone()).collect(),
        }
    }
}

/// Displays as `(a_1,...,a_n)/r`.
impl<T: Scalar> fmt::Display for ProperFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nums: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        write!(f, "({})/{}", nums.join(","), self.r)
    }
}

impl<T: Scalar> fmt::Display for MaybeFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaybeFraction::Finite(x) => x.fmt(f),
            MaybeFraction::Infinity => f.write_str("∞"),
        }
    }
}

/// Parses the type string `r:a1,...,an`. Whitespace anywhere is ignored.
impl<T: Scalar> FromStr for ProperFraction<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (r_text, rest) = compact
            .split_once(':')
            .ok_or_else(|| parse_err("expected r:a1,...,an"))?;
        let int = |t: &str| -> Result<T> {
            if t.is_empty()
                || !t
                    .trim_start_matches('-')
                    .chars()
                    .all(|c| c.is_ascii_digit())
            {
                return Err(parse_err(&format!("{t:?} is not an integer")));
            }
            t.parse::<T>()
                .map_err(|_| parse_err(&format!("{t:?} is not an integer")))
        };
        let r = int(r_text)?;
        let a = rest.split(',').map(int).collect::<Result<Vec<T>>>()?;
        Self::new(r, a)
    }
}
