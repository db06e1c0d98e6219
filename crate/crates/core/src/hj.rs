//! Hirzebruch–Jung (minus-sign) continued fractions and the congruence
//! criterion on their entries.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Scalar;

/// Entries `[a_1, ..., a_s]` with `r/d = a_1 - 1/(a_2 - 1/(... - 1/a_s))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", try_from = "HjRepr<T>")]
pub struct HjExpansion<T> {
    #[serde(with = "crate::json::int")]
    r: T,
    #[serde(with = "crate::json::int")]
    d: T,
    #[serde(with = "crate::json::int_seq")]
    entries: Vec<T>,
}

#[derive(Deserialize)]
#[serde(bound = "T: Scalar")]
struct HjRepr<T> {
    #[serde(with = "crate::json::int")]
    r: T,
    #[serde(with = "crate::json::int")]
    d: T,
    #[serde(with = "crate::json::int_seq")]
    entries: Vec<T>,
}

impl<T: Scalar> TryFrom<HjRepr<T>> for HjExpansion<T> {
    type Error = String;

    fn try_from(repr: HjRepr<T>) -> std::result::Result<Self, String> {
        let e = hj_expand(&repr.r, &repr.d).map_err(|e| e.to_string())?;
        if e.entries != repr.entries {
            return Err(format!(
                "entries are not the expansion of {}/{}",
                repr.r, repr.d
            ));
        }
        Ok(e)
    }
}

fn check_pair<T: Scalar>(r: &T, d: &T) -> Result<()> {
    if !d.is_positive() || d >= r {
        return Err(Error::InvalidContinuedFraction {
            r: r.to_string(),
            d: d.to_string(),
        });
    }
    Ok(())
}

/// Expands `r/d` for `0 < d < r`: repeatedly take `a = ⌈r/d⌉` and continue
/// with `(d, a·d - r)` until the remainder vanishes.
pub fn hj_expand<T: Scalar>(r: &T, d: &T) -> Result<HjExpansion<T>> {
    check_pair(r, d)?;
    let mut entries = Vec::new();
    let (mut num, mut den) = (r.clone(), d.clone());
    while !den.is_zero() {
        let a = (num.clone() + den.clone() - T::one()).div_floor(&den);
        let next = a.clone() * den.clone() - num;
        entries.push(a);
        num = den;
        den = next;
    }
    Ok(HjExpansion {
        r: r.clone(),
        d: d.clone(),
        entries,
    })
}

/// Evaluates `a_1 - 1/(a_2 - 1/(... - 1/a_s))` right to left.
pub fn hj_evaluate<T: Scalar>(entries: &[T]) -> Result<Ratio<T>> {
    let malformed = || Error::DivisionByZero(entries.iter().map(ToString::to_string).collect());
    let (last, init) = entries.split_last().ok_or_else(malformed)?;
    let mut acc = Ratio::from_integer(last.clone());
    for a in init.iter().rev() {
        if acc.is_zero() {
            return Err(malformed());
        }
        acc = Ratio::from_integer(a.clone()) - acc.recip();
    }
    Ok(acc)
}

/// True iff every entry is congruent to 2 modulo `n - 2`. Always true for
/// `n = 3`.
pub fn dlr_criterion<T: Scalar>(e: &HjExpansion<T>, n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    Ok(e.first_incongruent(n).is_none())
}

/// `-q` where `q` is the floor quotient of `-r` by `d`, i.e. `⌈r/d⌉`.
pub fn first_entry<T: Scalar>(r: &T, d: &T) -> Result<T> {
    check_pair(r, d)?;
    let q = (-r.clone()).div_floor(d);
    Ok(-q)
}

impl<T: Scalar> HjExpansion<T> {
    pub fn numerator(&self) -> &T {
        &self.r
    }

    pub fn denominator(&self) -> &T {
        &self.d
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn evaluate(&self) -> Result<Ratio<T>> {
        hj_evaluate(&self.entries)
    }

    /// First entry (with its 0-based position) not congruent to 2 mod `n - 2`.
    pub fn first_incongruent(&self, n: usize) -> Option<(usize, &T)> {
        let m = T::from_count(n.saturating_sub(2).max(1));
        let two = T::one() + T::one();
        self.entries
            .iter()
            .enumerate()
            .find(|(_, a)| !((*a).clone() - two.clone()).residue(&m).is_zero())
    }

    /// `[8, 2] : all entries ≡ 2 (mod 2) → crepant side`.
    pub fn describe(&self, n: usize) -> String {
        let m = n.saturating_sub(2).max(1);
        match self.first_incongruent(n) {
            None => format!("{self} : all entries ≡ 2 (mod {m}) → crepant side"),
            Some((_, a)) => format!("{self} : entry {a} ≢ 2 (mod {m}) → non-crepant side"),
        }
    }
}

/// `[a_1, ..., a_s]`.
impl<T: Scalar> fmt::Display for HjExpansion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn entries(r: i64, d: i64) -> Vec<i64> {
        hj_expand(&r, &d).unwrap().entries().to_vec()
    }

    /// Independent oracle: evaluate a candidate entry list with plain i128
    /// fraction arithmetic, no Ratio involved.
    fn eval_oracle(e: &[i64]) -> (i128, i128) {
        let (mut p, mut q) = (*e.last().unwrap() as i128, 1i128);
        for &a in e.iter().rev().skip(1) {
            // a - q/p = (a p - q)/p
            let (np, nq) = (a as i128 * p - q, p);
            p = np;
            q = nq;
        }
        let g = p.gcd(&q);
        (p / g, q / g)
    }

    #[test]
    fn expansions() {
        assert_eq!(entries(15, 2), vec![8, 2]);
        assert_eq!(eval_oracle(&[8, 2]), (15, 2));
        assert_eq!(entries(7, 4), vec![2, 4]);
        assert_eq!(eval_oracle(&[2, 4]), (7, 4));
        assert_eq!(entries(9, 2), vec![5, 2]);
        assert_eq!(eval_oracle(&[5, 2]), (9, 2));
        assert_eq!(entries(5, 4), vec![2, 2, 2, 2]);
        assert_eq!(eval_oracle(&[2, 2, 2, 2]), (5, 4));
    }

    #[test]
    fn expansion_errors() {
        assert!(hj_expand(&5i64, &0).is_err());
        assert!(hj_expand(&5i64, &5).is_err());
        assert!(hj_expand(&5i64, &-1).is_err());
        assert!(first_entry(&5i64, &7).is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(hj_evaluate(&[8i64, 2]).unwrap(), Ratio::new(15, 2));
        assert_eq!(hj_evaluate(&[2i64]).unwrap(), Ratio::from_integer(2));
        assert_eq!(hj_evaluate(&[2i64, 2, 2, 2]).unwrap(), Ratio::new(5, 4));
        assert!(hj_evaluate::<i64>(&[]).is_err());
        assert!(hj_evaluate(&[2i64, 1, 1]).is_err());
    }

    #[test]
    fn congruence() {
        let e = hj_expand(&15i64, &2).unwrap();
        assert!(dlr_criterion(&e, 4).unwrap());
        let e = hj_expand(&9i64, &2).unwrap();
        assert!(!dlr_criterion(&e, 4).unwrap());
        assert!(dlr_criterion(&e, 3).unwrap());
        assert!(matches!(
            dlr_criterion(&e, 2),
            Err(Error::DimensionTooSmall { n: 2, min: 3 })
        ));
        assert_eq!(e.first_incongruent(4), Some((0, &5)));
    }

    #[test]
    fn first_entries() {
        assert_eq!(first_entry(&15i64, &2).unwrap(), 8);
        assert_eq!(first_entry(&9i64, &2).unwrap(), 5);
        assert_eq!(first_entry(&17i64, &1).unwrap(), 17);
    }

    #[test]
    fn non_coprime_terminates_at_reduced_value() {
        let e = hj_expand(&6i64, &4).unwrap();
        assert_eq!(e.evaluate().unwrap(), Ratio::new(3, 2));
    }

    #[test]
    fn describe_line() {
        assert_eq!(
            hj_expand(&15i64, &2).unwrap().describe(4),
            "[8, 2] : all entries ≡ 2 (mod 2) → crepant side"
        );
        assert_eq!(
            hj_expand(&9i64, &2).unwrap().describe(4),
            "[5, 2] : entry 5 ≢ 2 (mod 2) → non-crepant side"
        );
    }

    #[test]
    fn json_shape() {
        let e = hj_expand(&BigInt::from(15), &BigInt::from(2)).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, r#"{"r":15,"d":2,"entries":[8,2]}"#);
        assert_eq!(
            serde_json::from_str::<HjExpansion<BigInt>>(&text).unwrap(),
            e
        );
    }

    proptest! {
        #[test]
        fn round_trip_against_oracle(r in 2i64..2000, seed in 0i64..i64::MAX) {
            let d = seed % (r - 1) + 1;
            let e = entries(r, d);
            let g = r.gcd(&d);
            prop_assert_eq!(eval_oracle(&e), ((r / g) as i128, (d / g) as i128));
            if g == 1 {
                prop_assert!(e.iter().all(|&a| a >= 2));
                prop_assert!(e.len() as i64 <= r);
            }
            prop_assert_eq!(first_entry(&r, &d).unwrap(), e[0]);
        }
    }
}
