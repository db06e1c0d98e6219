//! Crepancy decisions.
//!
//! * General Gorenstein fractions `(r; 1, a_2, ..., a_n)`: all remainder
//!   polynomial coefficients of age 1 gives a crepant resolution; an iterated
//!   coefficient of age >= 2 rules one out; anything else is undecided.
//! * Two-parameter types `1/r(1, d, c, ..., c)`: the dichotomy above is
//!   complete, the check reduces to the `R_2` chain, and it agrees with the
//!   congruence condition on the Hirzebruch–Jung expansion of `r/d`.
//! * Types `1/r(a, b, 1, ..., 1)` are split into the three gcd cases first.

use std::fmt;

use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fraction::ProperFraction;
use crate::hj::{dlr_criterion, hj_expand, HjExpansion};
use crate::lattice::Overlattice;
use crate::polynomial::{RemainderPolynomial, Term, Word};
use crate::Scalar;

/// `1/r(1, d, c, ..., c)` with `1 + d + (n-2)c = r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", try_from = "TwoParameterRepr<T>")]
pub struct TwoParameterType<T> {
    n: usize,
    #[serde(with = "crate::json::int")]
    r: T,
    #[serde(with = "crate::json::int")]
    d: T,
    #[serde(with = "crate::json::int")]
    c: T,
}

#[derive(Deserialize)]
#[serde(bound = "T: Scalar")]
struct TwoParameterRepr<T> {
    n: usize,
    #[serde(with = "crate::json::int")]
    r: T,
    #[serde(with = "crate::json::int")]
    d: T,
    #[serde(with = "crate::json::int")]
    c: T,
}

impl<T: Scalar> TryFrom<TwoParameterRepr<T>> for TwoParameterType<T> {
    type Error = Error;

    fn try_from(x: TwoParameterRepr<T>) -> Result<Self> {
        TwoParameterType::new(x.n, x.r, x.d, x.c)
    }
}

impl<T: Scalar> TwoParameterType<T> {
    pub fn new(n: usize, r: T, d: T, c: T) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { n, min: 3 });
        }
        let in_range = |x: &T| !x.is_negative() && *x < r;
        if !in_range(&d) || !in_range(&c) || r <= T::one() {
            return Err(Error::InvalidTwoParameter(format!(
                "need 0 <= d, c < r and r >= 2 (n={n}, r={r}, d={d}, c={c})"
            )));
        }
        let sum = T::one() + d.clone() + T::from_count(n - 2) * c.clone();
        if sum != r {
            return Err(Error::InvalidTwoParameter(format!(
                "1 + d + (n-2)c = {sum} differs from r = {r}"
            )));
        }
        Ok(TwoParameterType { n, r, d, c })
    }

    /// The type determined by `n`, `r` and `c`; `d` is solved for.
    pub fn from_c(n: usize, r: T, c: T) -> Result<Self> {
        let d = r.clone() - T::one() - T::from_count(n.saturating_sub(2)) * c.clone();
        Self::new(n, r, d, c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &T {
        &self.r
    }

    pub fn d(&self) -> &T {
        &self.d
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    /// `(r; 1, d, c, ..., c)`.
    pub fn fraction(&self) -> ProperFraction<T> {
        let mut a = vec![T::one(), self.d.clone()];
        a.extend(std::iter::repeat_n(self.c.clone(), self.n - 2));
        ProperFraction::new(self.r.clone(), a).expect("validated on construction")
    }

    /// Recognizes `(r; 1, d, c, ..., c)` with numerators summing to `r`.
    pub fn from_fraction(f: &ProperFraction<T>) -> Option<Self> {
        let a = f.numerators();
        if a.len() < 3 || !a[0].is_one() || a[3..].iter().any(|x| *x != a[2]) {
            return None;
        }
        Self::new(a.len(), f.denominator().clone(), a[1].clone(), a[2].clone()).ok()
    }

    /// Coprimality and `d >= 1`, the hypotheses of the HJ criterion.
    pub fn hj_applicable(&self) -> bool {
        !self.d.is_zero() && self.r.gcd(&self.d).is_one()
    }
}

impl<T: Scalar> fmt::Display for TwoParameterType<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} r={} d={} c={}", self.n, self.r, self.d, self.c)
    }
}

/// `1/r(a, b, 1, ..., 1)` with `r = a + b + (n-2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralTwoParameter<T> {
    n: usize,
    r: T,
    a: T,
    b: T,
}

impl<T: Scalar> GeneralTwoParameter<T> {
    pub fn new(n: usize, r: T, a: T, b: T) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { n, min: 3 });
        }
        let in_range = |x: &T| x.is_positive() && *x < r;
        if !in_range(&a) || !in_range(&b) {
            return Err(Error::InvalidTwoParameter(format!(
                "need 1 <= a, b <= r - 1 (r={r}, a={a}, b={b})"
            )));
        }
        let sum = a.clone() + b.clone() + T::from_count(n - 2);
        if sum != r {
            return Err(Error::InvalidTwoParameter(format!(
                "a + b + (n-2) = {sum} differs from r = {r}"
            )));
        }
        Ok(GeneralTwoParameter { n, r, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &T {
        &self.r
    }

    pub fn weights(&self) -> Vec<T> {
        let mut w = vec![self.a.clone(), self.b.clone()];
        w.extend(std::iter::repeat_n(T::one(), self.n - 2));
        w
    }
}

/// Which of the three gcd cases a `1/r(a, b, 1, ..., 1)` type falls in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseTag<T> {
    /// `gcd(r, a, b) = d > 1`.
    Case1 { d: T },
    /// `gcd(r, a, b) = 1` but `d1 = gcd(r, a) > 1` or `d2 = gcd(r, b) > 1`.
    Case2 { d1: T, d2: T },
    /// Neither weight shares a factor with `r`.
    Case3,
}

impl<T> CaseTag<T> {
    pub fn number(&self) -> u8 {
        match self {
            CaseTag::Case1 { .. } => 1,
            CaseTag::Case2 { .. } => 2,
            CaseTag::Case3 => 3,
        }
    }
}

/// Tests case (1), then (2), then (3).
pub fn classify<T: Scalar>(g: &GeneralTwoParameter<T>) -> CaseTag<T> {
    let d = g.r.gcd(&g.a).gcd(&g.b);
    if !d.is_one() {
        return CaseTag::Case1 { d };
    }
    let d1 = g.r.gcd(&g.a);
    let d2 = g.r.gcd(&g.b);
    if !d1.is_one() || !d2.is_one() {
        CaseTag::Case2 { d1, d2 }
    } else {
        CaseTag::Case3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Decision {
    Crepant,
    NotCrepant,
    Indeterminate,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Crepant => "Crepant",
            Decision::NotCrepant => "NotCrepant",
            Decision::Indeterminate => "Indeterminate",
        })
    }
}

/// Why a type has no crepant resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction<T> {
    /// An iterated remainder-polynomial term of age >= 2.
    IteratedTerm(Term<T>),
    /// A junior lattice point required by the case (2) criterion is absent.
    MissingJuniorPoint { scaled: Vec<T>, reason: String },
}

impl<T: Scalar> fmt::Display for Obstruction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::IteratedTerm(t) => t.fmt(f),
            Obstruction::MissingJuniorPoint { reason, .. } => f.write_str(reason),
        }
    }
}

/// A crepancy decision with a checkable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T> {
    /// `coefficients` lists the remainder polynomial terms (all of age 1);
    /// it is empty when the decision comes from a gcd argument, explained in
    /// `note`.
    Crepant {
        coefficients: Vec<Term<T>>,
        note: Option<String>,
    },
    NotCrepant(Obstruction<T>),
    Indeterminate {
        reason: String,
    },
}

impl<T: Scalar> Verdict<T> {
    pub fn decision(&self) -> Decision {
        match self {
            Verdict::Crepant { .. } => Decision::Crepant,
            Verdict::NotCrepant(_) => Decision::NotCrepant,
            Verdict::Indeterminate { .. } => Decision::Indeterminate,
        }
    }

    pub fn is_crepant(&self) -> bool {
        self.decision() == Decision::Crepant
    }

    /// The offending term, for polynomial-based refutations.
    pub fn obstruction_term(&self) -> Option<&Term<T>> {
        match self {
            Verdict::NotCrepant(Obstruction::IteratedTerm(t)) => Some(t),
            _ => None,
        }
    }

    /// One-line witness description.
    pub fn witness_summary(&self) -> String {
        match self {
            Verdict::Crepant { coefficients, note } => match note {
                Some(note) if coefficients.is_empty() => note.clone(),
                _ if coefficients.len() == 1 => "1 coefficient, of age 1".into(),
                _ => format!("{} coefficients, all of age 1", coefficients.len()),
            },
            Verdict::NotCrepant(o) => o.to_string(),
            Verdict::Indeterminate { reason } => reason.clone(),
        }
    }
}

impl<T: Scalar> Serialize for Verdict<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Verdict", 3)?;
        st.serialize_field("decision", &self.decision())?;
        match self {
            Verdict::Crepant { coefficients, note } => {
                st.serialize_field("coefficients", coefficients)?;
                st.serialize_field("note", note)?;
            }
            Verdict::NotCrepant(Obstruction::IteratedTerm(t)) => {
                st.serialize_field("witness", t)?;
                st.skip_field("note")?;
            }
            Verdict::NotCrepant(Obstruction::MissingJuniorPoint { scaled, reason }) => {
                st.serialize_field(
                    "missing_point",
                    &scaled
                        .iter()
                        .cloned()
                        .map(crate::json::Int)
                        .collect::<Vec<_>>(),
                )?;
                st.serialize_field("reason", reason)?;
            }
            Verdict::Indeterminate { reason } => {
                st.serialize_field("reason", reason)?;
                st.skip_field("note")?;
            }
        }
        st.end()
    }
}

/// Crepant by the gcd argument: case (1) types always admit one.
pub fn case1_verdict<T: Scalar>(g: &GeneralTwoParameter<T>) -> Result<Verdict<T>> {
    match classify(g) {
        CaseTag::Case1 { d } => Ok(Verdict::Crepant {
            coefficients: Vec::new(),
            note: Some(format!(
                "gcd(r, a, b) = {d} > 1: crepant by the Davis-Logvinenko-Reid classification"
            )),
        }),
        other => Err(Error::WrongCase {
            expected: 1,
            found: other.number(),
        }),
    }
}

/// Case (2): for each weight sharing a factor `d_i > 1` with `r`, the point
/// `(0, k_1, r_1, ..., r_1)/r` resp. `(k_2, 0, r_2, ..., r_2)/r` with
/// `r_i = r/d_i`, `k_i = r - r_i(n-2)` must be a junior point of the lattice.
///
/// Only indices with `d_i > 1` are checked; for `d_i = 1` the prescribed
/// `k_i` is generally negative and the condition is read as void.
pub fn case2_verdict<T: Scalar>(g: &GeneralTwoParameter<T>) -> Result<Verdict<T>> {
    let (d1, d2) = match classify(g) {
        CaseTag::Case2 { d1, d2 } => (d1, d2),
        other => {
            return Err(Error::WrongCase {
                expected: 2,
                found: other.number(),
            })
        }
    };
    let lattice = Overlattice::new(g.r.clone(), g.weights())?;
    let n = g.n;
    let mut checked = Vec::new();
    for (slot, d_i) in [(0usize, d1), (1usize, d2)] {
        if d_i.is_one() {
            continue;
        }
        let r_i = g.r.clone() / d_i.clone();
        let k_i = g.r.clone() - r_i.clone() * T::from_count(n - 2);
        let mut scaled = vec![T::zero(); n];
        scaled[1 - slot] = k_i.clone();
        for x in scaled.iter_mut().skip(2) {
            *x = r_i.clone();
        }
        let label = LatticeLabel(&scaled, &g.r);
        if k_i.is_negative() {
            return Ok(Verdict::NotCrepant(Obstruction::MissingJuniorPoint {
                reason: format!("required point {label} has k_{} = {k_i} < 0", slot + 1),
                scaled,
            }));
        }
        if !lattice.contains(&scaled) {
            return Ok(Verdict::NotCrepant(Obstruction::MissingJuniorPoint {
                reason: format!("required point {label} is not in the lattice"),
                scaled,
            }));
        }
        checked.push(format!("{label}"));
    }
    Ok(Verdict::Crepant {
        coefficients: Vec::new(),
        note: Some(format!(
            "junior points {} present (only indices with gcd > 1 are checked)",
            checked.join(", ")
        )),
    })
}

struct LatticeLabel<'a, T>(&'a [T], &'a T);

impl<T: Scalar> fmt::Display for LatticeLabel<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})/{}", parts.join(","), self.1)
    }
}

/// Decides a normalized Gorenstein fraction `(r; 1, a_2, ..., a_n)` from its
/// remainder polynomial.
pub fn decide_general<T: Scalar>(f: &ProperFraction<T>) -> Result<Verdict<T>> {
    if !f.is_semi_unimodular() {
        return Err(Error::NotSemiUnimodular(f.to_type_string()));
    }
    if !f.is_normalized_gorenstein() {
        return Err(Error::NotGorenstein(f.to_type_string()));
    }
    Ok(verdict_from_polynomial(&RemainderPolynomial::expand(f)))
}

/// Applies the two criteria to an expanded polynomial.
pub fn verdict_from_polynomial<T: Scalar>(p: &RemainderPolynomial<T>) -> Verdict<T> {
    if p.all_ages_one() {
        return Verdict::Crepant {
            coefficients: p.terms(),
            note: None,
        };
    }
    if let Some(t) = p.iterated_obstruction() {
        return Verdict::NotCrepant(Obstruction::IteratedTerm(t));
    }
    let (age, term) = p.max_age_witness().expect("non-empty polynomial");
    let offender = p
        .iter()
        .find(|(_, c)| !c.has_age_one())
        .map(|(w, c)| format!("{w} : {c} age={}", c.age()))
        .unwrap_or_else(|| term.to_string());
    Verdict::Indeterminate {
        reason: format!(
            "no iterated term has age >= 2 but {offender} (max age {age}) is not of age 1"
        ),
    }
}

/// How [`normalize`] rearranged the coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized<T> {
    pub fraction: ProperFraction<T>,
    /// Entry `k` is the 0-based input position now at position `k`.
    pub permutation: Vec<usize>,
    pub two_parameter: Option<TwoParameterType<T>>,
}

/// Moves a unit coordinate to the front. When the remaining coordinates are
/// one arbitrary weight plus `n-2` equal ones, they are arranged as
/// `(1, d, c, ..., c)` and the two-parameter type is recognized. Returns
/// `None` for fractions without a unit coordinate.
pub fn normalize<T: Scalar>(f: &ProperFraction<T>) -> Option<Normalized<T>> {
    let a = f.numerators();
    let n = a.len();
    let unit = a.iter().position(One::is_one)?;
    let rest: Vec<usize> = (0..n).filter(|&k| k != unit).collect();
    let mut order = rest.clone();
    if n >= 3 {
        // Pick the coordinate to play d: the first one whose removal leaves
        // the others all equal.
        let d_slot = (0..rest.len()).find(|&j| {
            let mut others = rest
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &k)| &a[k]);
            let first = others.next();
            others.all(|x| Some(x) == first)
        });
        if let Some(j) = d_slot {
            order = std::iter::once(rest[j])
                .chain(
                    rest.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != j)
                        .map(|(_, &k)| k),
                )
                .collect();
        }
    }
    let mut permutation = vec![unit];
    permutation.extend(order);
    let fraction = f.permuted(&permutation);
    let two_parameter = TwoParameterType::from_fraction(&fraction);
    Some(Normalized {
        fraction,
        permutation,
        two_parameter,
    })
}

/// Full remainder-polynomial decision for the two-parameter family. Never
/// returns `Indeterminate` on a valid type.
pub fn decide_two_parameter<T: Scalar>(t: &TwoParameterType<T>) -> Verdict<T> {
    decide_general(&t.fraction()).expect("two-parameter fractions are normalized Gorenstein")
}

/// One step `(r, d, c) -> (d, (-r) mod d, c mod d)` of the `R_2` chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep<T> {
    /// 1-based position in the chain: the coefficient of `x_2^k`.
    pub k: usize,
    /// The fraction being mapped, `(r; 1, d, c, ..., c)`.
    pub r: T,
    pub d: T,
    pub c: T,
    /// Floor quotient of `-r` by `d`.
    pub q: T,
    /// `R_2` of the fraction above, `(d; 1, (-r) mod d, c mod d, ...)`.
    pub image: ProperFraction<T>,
    /// Whether `1 + ((-r) mod d) + (n-2)(c mod d) = d`.
    pub age_one: bool,
}

/// Walks the `R_2` chain from `(r; 1, d, c, ..., c)` until the second weight
/// drops to 0 or 1 (the next image would be `∞` or the zero fraction) or an
/// image fails to have age 1.
pub fn r2_chain<T: Scalar>(t: &TwoParameterType<T>) -> Vec<ChainStep<T>> {
    let n = t.n;
    let m = T::from_count(n - 2);
    let (mut r, mut d, mut c) = (t.r.clone(), t.d.clone(), t.c.clone());
    let mut steps = Vec::new();
    while d > T::one() {
        let q = (-r.clone()).div_floor(&d);
        let d_next = (-r.clone()).residue(&d);
        let c_next = c.residue(&d);
        let mut a = vec![T::one(), d_next.clone()];
        a.extend(std::iter::repeat_n(c_next.clone(), n - 2));
        let image = ProperFraction::new(d.clone(), a).expect("residues lie below d");
        let age_one = T::one() + d_next.clone() + m.clone() * c_next.clone() == d;
        steps.push(ChainStep {
            k: steps.len() + 1,
            r: r.clone(),
            d: d.clone(),
            c: c.clone(),
            q,
            image,
            age_one,
        });
        if !age_one {
            break;
        }
        r = d;
        d = d_next;
        c = c_next;
    }
    steps
}

/// Decides the two-parameter family from the `R_2` chain alone.
pub fn decide_fast<T: Scalar>(t: &TwoParameterType<T>) -> Verdict<T> {
    let steps = r2_chain(t);
    match steps.last() {
        Some(step) if !step.age_one => Verdict::NotCrepant(Obstruction::IteratedTerm(Term {
            word: Word::power(2, step.k),
            coefficient: step.image.clone(),
        })),
        _ => {
            let mut coefficients = vec![Term {
                word: Word::empty(),
                coefficient: t.fraction(),
            }];
            coefficients.extend(steps.iter().map(|s| Term {
                word: Word::power(2, s.k),
                coefficient: s.image.clone(),
            }));
            Verdict::Crepant {
                coefficients,
                note: Some("every iterated x2 coefficient has age 1".into()),
            }
        }
    }
}

/// Results of the three criteria on one two-parameter type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck<T> {
    pub subject: TwoParameterType<T>,
    pub polynomial: Verdict<T>,
    pub fast: Verdict<T>,
    /// `None` when the HJ criterion's hypotheses fail.
    pub hj: Option<(HjExpansion<T>, bool)>,
    pub skipped: Option<String>,
}

impl<T: Scalar> CrossCheck<T> {
    pub fn agree(&self) -> bool {
        self.disagreement().is_none()
    }

    /// Describes the first mismatch between the criteria.
    pub fn disagreement(&self) -> Option<String> {
        let poly = self.polynomial.decision();
        if poly == Decision::Indeterminate {
            return Some(format!(
                "{}: remainder polynomial is undecided",
                self.subject
            ));
        }
        if self.fast.decision() != poly {
            return Some(format!(
                "{}: remainder polynomial says {poly}, R_2 chain says {}",
                self.subject,
                self.fast.decision()
            ));
        }
        if let Some((e, congruent)) = &self.hj {
            if *congruent != (poly == Decision::Crepant) {
                return Some(format!(
                    "{}: remainder polynomial says {poly}, HJ expansion {e} says congruent={congruent}",
                    self.subject
                ));
            }
        }
        None
    }

    pub fn hj_decision(&self) -> Option<Decision> {
        self.hj.as_ref().map(|(_, ok)| {
            if *ok {
                Decision::Crepant
            } else {
                Decision::NotCrepant
            }
        })
    }
}

/// Runs the remainder polynomial, the `R_2` chain and (when `gcd(r, d) = 1`,
/// `d >= 1`) the HJ congruence on `t`.
pub fn cross_check<T: Scalar>(t: &TwoParameterType<T>) -> CrossCheck<T> {
    let polynomial = decide_two_parameter(t);
    let fast = decide_fast(t);
    let (hj, skipped) = if t.hj_applicable() {
        let e = hj_expand(&t.r, &t.d).expect("0 < d < r");
        let ok = dlr_criterion(&e, t.n).expect("n >= 3");
        (Some((e, ok)), None)
    } else {
        (
            None,
            Some(format!("gcd(r, d) = {} with d = {}", t.r.gcd(&t.d), t.d)),
        )
    };
    CrossCheck {
        subject: t.clone(),
        polynomial,
        fast,
        hj,
        skipped,
    }
}

/// Decides a `1/r(a, b, 1, ..., 1)` type: cases (1) and (2) by their lattice
/// criteria; case (3) by passing to the generator `g^k` with `k·a ≡ 1`, which
/// has the form `1/r(1, d, c, ..., c)`. If that generator is not junior the
/// result is `Indeterminate`.
pub fn decide_ab<T: Scalar>(g: &GeneralTwoParameter<T>) -> Verdict<T> {
    match classify(g) {
        CaseTag::Case1 { .. } => case1_verdict(g).expect("case 1"),
        CaseTag::Case2 { .. } => case2_verdict(g).expect("case 2"),
        CaseTag::Case3 => {
            // Try the power making a unit, then the one making b a unit
            // (followed by swapping the first two coordinates).
            let attempts = [(&g.a, &g.b), (&g.b, &g.a)];
            for (unit, other) in attempts {
                let inv = mod_inverse(unit, &g.r).expect("weights are units mod r in case 3");
                let d = (other.clone() * inv.clone()).residue(&g.r);
                if let Ok(t) = TwoParameterType::new(g.n, g.r.clone(), d, inv) {
                    return decide_two_parameter(&t);
                }
            }
            Verdict::Indeterminate {
                reason: "no generator of the form 1/r(1, d, c, ..., c) is junior".into(),
            }
        }
    }
}

fn mod_inverse<T: Scalar>(a: &T, m: &T) -> Option<T> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.residue(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = ProperFraction<i64>;

    fn frac(r: i64, a: &[i64]) -> F {
        F::from_i64(r, a).unwrap()
    }

    fn tp(n: usize, r: i64, d: i64, c: i64) -> TwoParameterType<i64> {
        TwoParameterType::new(n, r, d, c).unwrap()
    }

    fn ab(n: usize, r: i64, a: i64, b: i64) -> GeneralTwoParameter<i64> {
        GeneralTwoParameter::new(n, r, a, b).unwrap()
    }

    #[test]
    fn type_validation() {
        assert!(TwoParameterType::new(4, 15i64, 2, 6).is_ok());
        assert!(TwoParameterType::new(4, 15i64, 3, 6).is_err());
        assert!(TwoParameterType::new(2, 3i64, 1, 1).is_err());
        assert!(TwoParameterType::new(4, 1i64, 0, 0).is_err());
        assert_eq!(
            TwoParameterType::from_c(4, 9i64, 3).unwrap(),
            tp(4, 9, 2, 3)
        );
        assert!(GeneralTwoParameter::new(4, 12i64, 4, 6).is_ok());
        assert!(GeneralTwoParameter::new(4, 12i64, 4, 5).is_err());
        assert!(GeneralTwoParameter::new(4, 12i64, 0, 10).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&ab(4, 12, 4, 6)), CaseTag::Case1 { d: 2 });
        assert_eq!(classify(&ab(5, 8, 2, 3)), CaseTag::Case2 { d1: 2, d2: 1 });
        assert_eq!(classify(&ab(4, 7, 1, 4)), CaseTag::Case3);
    }

    #[test]
    fn case_one() {
        assert!(case1_verdict(&ab(4, 12, 4, 6)).unwrap().is_crepant());
        assert!(case1_verdict(&ab(5, 9, 3, 3)).unwrap().is_crepant());
        assert_eq!(
            case1_verdict(&ab(4, 7, 1, 4)),
            Err(Error::WrongCase {
                expected: 1,
                found: 3
            })
        );
    }

    #[test]
    fn case_two() {
        assert!(case2_verdict(&ab(4, 9, 3, 4)).unwrap().is_crepant());
        match case2_verdict(&ab(5, 8, 2, 3)).unwrap() {
            Verdict::NotCrepant(Obstruction::MissingJuniorPoint { scaled, .. }) => {
                assert_eq!(scaled, vec![0, -4, 4, 4, 4]);
            }
            v => panic!("unexpected {v:?}"),
        }
        assert_eq!(
            case2_verdict(&ab(4, 12, 4, 6)),
            Err(Error::WrongCase {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn general_decisions() {
        let v = decide_general(&frac(15, &[1, 2, 6, 6])).unwrap();
        match &v {
            Verdict::Crepant { coefficients, .. } => assert_eq!(coefficients.len(), 10),
            _ => panic!("{v:?}"),
        }
        let v = decide_general(&frac(9, &[1, 2, 3, 3])).unwrap();
        let t = v.obstruction_term().unwrap();
        assert_eq!(t.word, Word::power(2, 1));
        assert_eq!(t.coefficient, frac(2, &[1, 1, 1, 1]));
        assert!(matches!(
            decide_general(&frac(15, &[1, 2, 6])),
            Err(Error::NotGorenstein(_))
        ));
        assert!(matches!(
            decide_general(&frac(9, &[3, 3, 3])),
            Err(Error::NotSemiUnimodular(_))
        ));
        assert!(matches!(
            decide_general(&frac(9, &[2, 1, 6])),
            Err(Error::NotGorenstein(_))
        ));
    }

    #[test]
    fn dimension_three_is_always_crepant() {
        for r in 2..=60i64 {
            for a in 0..r - 1 {
                let b = r - 1 - a;
                let v = decide_general(&frac(r, &[1, a, b])).unwrap();
                assert!(v.is_crepant(), "(r;1,a,b)=({r};1,{a},{b})");
            }
        }
    }

    #[test]
    fn indeterminate_outside_the_family() {
        // Found by sweeping n=5 Gorenstein types: the only non-age-1
        // coefficients sit on mixed words.
        let mut found = None;
        'outer: for r in 2..=40i64 {
            for a2 in 0..r {
                for a3 in 0..r - a2 {
                    for a4 in 0..r - a2 - a3 {
                        let a5 = r - 1 - a2 - a3 - a4;
                        if a5 < 0 || a5 >= r {
                            continue;
                        }
                        let f = frac(r, &[1, a2, a3, a4, a5]);
                        if let Verdict::Indeterminate { .. } = decide_general(&f).unwrap() {
                            found = Some(f);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let f = found.expect("some general type is undecided by the two criteria");
        let p = RemainderPolynomial::expand(&f);
        assert!(!p.all_ages_one());
        assert!(p.iterated_obstruction().is_none());
    }

    #[test]
    fn two_parameter_decisions() {
        assert!(decide_two_parameter(&tp(4, 15, 2, 6)).is_crepant());
        assert_eq!(
            decide_two_parameter(&tp(4, 9, 2, 3)).decision(),
            Decision::NotCrepant
        );
        let v = decide_two_parameter(&tp(4, 7, 4, 1));
        match &v {
            Verdict::Crepant { coefficients, .. } => assert_eq!(coefficients.len(), 2),
            _ => panic!("{v:?}"),
        }
    }

    #[test]
    fn fast_path() {
        let steps = r2_chain(&tp(4, 15, 2, 6));
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].image, frac(2, &[1, 1, 0, 0]));
        assert!(steps[0].age_one);
        assert!(decide_fast(&tp(4, 15, 2, 6)).is_crepant());

        let v = decide_fast(&tp(4, 9, 2, 3));
        let t = v.obstruction_term().unwrap();
        assert_eq!(t.word, Word::power(2, 1));
        assert_eq!(t.coefficient, frac(2, &[1, 1, 1, 1]));

        assert!(r2_chain(&tp(4, 7, 0, 3)).is_empty());
        assert!(decide_fast(&tp(4, 7, 0, 3)).is_crepant());
        assert!(decide_two_parameter(&tp(4, 7, 0, 3)).is_crepant());
        assert!(decide_fast(&tp(4, 8, 1, 3)).is_crepant());
    }

    #[test]
    fn chain_keeps_the_two_parameter_shape() {
        for n in 3..=6 {
            for r in 2..=120i64 {
                for c in 0..r {
                    let Ok(t) = TwoParameterType::from_c(n, r, c) else {
                        continue;
                    };
                    for s in r2_chain(&t) {
                        let a = s.image.numerators();
                        assert!(
                            a[0] == 1 && a[2..].iter().all(|x| *x == a[2]),
                            "{t}: {}",
                            s.image
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cross_checks() {
        for (t, expect) in [
            (tp(4, 15, 2, 6), Decision::Crepant),
            (tp(4, 9, 2, 3), Decision::NotCrepant),
            (tp(3, 8, 3, 4), Decision::Crepant),
        ] {
            let x = cross_check(&t);
            assert!(x.agree(), "{:?}", x.disagreement());
            assert_eq!(x.polynomial.decision(), expect);
            assert_eq!(x.fast.decision(), expect);
            assert_eq!(x.hj_decision(), Some(expect));
        }
        let e = cross_check(&tp(4, 15, 2, 6)).hj.unwrap().0;
        assert_eq!(e.entries(), &[8, 2]);
        let skipped = cross_check(&tp(4, 12, 3, 4));
        assert!(skipped.hj.is_none() && skipped.skipped.is_some());
        assert!(skipped.agree());
    }

    #[test]
    fn cross_check_reports_mismatch() {
        let mut x = cross_check(&tp(4, 9, 2, 3));
        x.fast = decide_fast(&tp(4, 15, 2, 6));
        assert!(x.disagreement().unwrap().contains("R_2 chain"));
    }

    #[test]
    fn normalization() {
        let n = normalize(&frac(9, &[2, 1, 3, 3])).unwrap();
        assert_eq!(n.fraction, frac(9, &[1, 2, 3, 3]));
        assert_eq!(n.permutation, vec![1, 0, 2, 3]);
        assert_eq!(n.two_parameter, Some(tp(4, 9, 2, 3)));

        let n = normalize(&frac(9, &[3, 3, 1, 2])).unwrap();
        assert_eq!(n.fraction, frac(9, &[1, 2, 3, 3]));

        let n = normalize(&frac(15, &[1, 2, 6, 6])).unwrap();
        assert_eq!(n.permutation, vec![0, 1, 2, 3]);

        let n = normalize(&frac(20, &[1, 2, 3, 14])).unwrap();
        assert_eq!(n.fraction, frac(20, &[1, 2, 3, 14]));
        assert!(n.two_parameter.is_none());
        assert!(normalize(&frac(9, &[3, 3, 3])).is_none());
    }

    #[test]
    fn ab_types() {
        assert!(decide_ab(&ab(4, 12, 4, 6)).is_crepant());
        assert!(decide_ab(&ab(4, 9, 3, 4)).is_crepant());
        // 1/7(1,4,1,1) is already normalized.
        assert!(decide_ab(&ab(4, 7, 1, 4)).is_crepant());
        // 1/9(2,5,1,1): inverting 2 gives 1/9(1,7,5,5) of age 2, inverting 5
        // gives 1/9(4,1,2,2), which is 1/9(1,4,2,2) up to a swap.
        assert_eq!(decide_ab(&ab(4, 9, 2, 5)).decision(), Decision::NotCrepant);
    }

    #[test]
    fn verdict_json() {
        let v = decide_two_parameter(&tp(4, 9, 2, 3));
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"decision":"NotCrepant","witness":{"word":[2],"coeff":{"r":2,"a":[1,1,1,1]},"age":{"num":2,"den":1}}}"#
        );
    }
}
