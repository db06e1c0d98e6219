//! Expansion of the remainder polynomial of a proper fraction.
//!
//! The coefficient of the word `x_{i_1} x_{i_2} ... x_{i_l}` is
//! `R_{i_l} ∘ ... ∘ R_{i_1}` applied to the source fraction. Coefficients equal
//! to `∞` or to the zero fraction are dropped together with everything below
//! them: `R_i(∞) = ∞` and every remainder map sends the zero fraction to `∞`,
//! so no descendant of a dropped node can ever contribute.
//!
//! Every branch strictly lowers the denominator, so the expansion is finite
//! with word length below the source denominator.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fraction::{MaybeFraction, ProperFraction};
use crate::Scalar;

/// A monomial in the noncommutative variables `x_1, ..., x_n`, stored as its
/// 1-based index sequence. The empty word is the constant monomial.
///
/// Words order by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Self {
        Word(indices)
    }

    /// `x_i^k`.
    pub fn power(i: usize, k: usize) -> Self {
        Word(vec![i; k])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word with `i` appended (the next remainder map applied last).
    pub fn then(&self, i: usize) -> Word {
        let mut v = self.0.clone();
        v.push(i);
        Word(v)
    }

    /// Constant word or a repetition of a single index.
    pub fn is_iterated(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Everything but the last index, if any.
    pub fn parent(&self) -> Option<(Word, usize)> {
        let (&last, init) = self.0.split_last()?;
        Some((Word(init.to_vec()), last))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x3.x3.x2`, or `1` for the constant word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("x{i}")).collect();
        f.write_str(&parts.join("."))
    }
}

/// One monomial with its (finite, nonzero) coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term<T> {
    pub word: Word,
    pub coefficient: ProperFraction<T>,
}

impl<T: Scalar> Term<T> {
    pub fn age(&self) -> Ratio<T> {
        self.coefficient.age()
    }
}

impl<T: Scalar> fmt::Display for Term<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} age={}", self.word, self.coefficient, self.age())
    }
}

/// `{"num": .., "den": ..}` view of an exact age.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct AgeJson<T> {
    #[serde(with = "crate::json::int")]
    pub num: T,
    #[serde(with = "crate::json::int")]
    pub den: T,
}

impl<T: Scalar> From<&Ratio<T>> for AgeJson<T> {
    fn from(q: &Ratio<T>) -> Self {
        AgeJson {
            num: q.numer().clone(),
            den: q.denom().clone(),
        }
    }
}

impl<T: Scalar> Serialize for Term<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 3)?;
        st.serialize_field("word", &self.word)?;
        st.serialize_field("coeff", &self.coefficient)?;
        st.serialize_field("age", &AgeJson::from(&self.age()))?;
        st.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Term<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Scalar")]
        struct Repr<T> {
            word: Word,
            coeff: ProperFraction<T>,
            age: Option<AgeJson<T>>,
        }
        let repr = Repr::<T>::deserialize(d)?;
        if let Some(age) = repr.age {
            if age.den.is_zero() || Ratio::new(age.num, age.den) != repr.coeff.age() {
                return Err(D::Error::custom("stored age does not match coefficient"));
            }
        }
        Ok(Term {
            word: repr.word,
            coefficient: repr.coeff,
        })
    }
}

/// The fully expanded remainder polynomial of a source fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderPolynomial<T> {
    source: ProperFraction<T>,
    terms: BTreeMap<Word, ProperFraction<T>>,
}

fn excluded<T: Scalar>(f: &ProperFraction<T>) -> bool {
    f.is_zero()
}

impl<T: Scalar> RemainderPolynomial<T> {
    /// Expands every branch depth-first. Sources that are not semi-unimodular
    /// are still expanded, see [`within_hypotheses`](Self::within_hypotheses).
    pub fn expand(source: &ProperFraction<T>) -> Self {
        let mut terms = BTreeMap::new();
        let n = source.dim();
        let mut stack = Vec::new();
        if !excluded(source) {
            stack.push((Word::empty(), source.clone()));
        }
        while let Some((word, coeff)) = stack.pop() {
            for i in 1..=n {
                if let MaybeFraction::Finite(child) =
                    coeff.remainder_map(i).expect("index within dimension")
                {
                    if !excluded(&child) {
                        stack.push((word.then(i), child));
                    }
                }
            }
            terms.insert(word, coeff);
        }
        RemainderPolynomial {
            source: source.clone(),
            terms,
        }
    }

    pub fn source(&self) -> &ProperFraction<T> {
        &self.source
    }

    /// False when the source has no unit numerator; the expansion is then
    /// formal and no crepancy criterion applies to it.
    pub fn within_hypotheses(&self) -> bool {
        self.source.is_semi_unimodular()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> Option<&ProperFraction<T>> {
        self.terms.get(word)
    }

    /// Terms in canonical word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &ProperFraction<T>)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> Vec<Term<T>> {
        self.iter()
            .map(|(w, c)| Term {
                word: w.clone(),
                coefficient: c.clone(),
            })
            .collect()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Terms whose word is constant or a power of one variable.
    pub fn iterated_terms(&self) -> Vec<Term<T>> {
        self.iter()
            .filter(|(w, _)| w.is_iterated())
            .map(|(w, c)| Term {
                word: w.clone(),
                coefficient: c.clone(),
            })
            .collect()
    }

    /// Every coefficient has age exactly 1. Vacuously true when empty.
    pub fn all_ages_one(&self) -> bool {
        self.terms.values().all(ProperFraction::has_age_one)
    }

    /// A term of maximal age; ties go to the smallest word in canonical order.
    pub fn max_age_witness(&self) -> Option<(Ratio<T>, Term<T>)> {
        let mut best: Option<(Ratio<T>, &Word, &ProperFraction<T>)> = None;
        for (w, c) in self.iter() {
            let age = c.age();
            if best.as_ref().is_none_or(|(b, _, _)| age > *b) {
                best = Some((age, w, c));
            }
        }
        best.map(|(age, w, c)| {
            (
                age,
                Term {
                    word: w.clone(),
                    coefficient: c.clone(),
                },
            )
        })
    }

    /// First iterated term (canonical order) whose age is at least 2.
    pub fn iterated_obstruction(&self) -> Option<Term<T>> {
        let two = Ratio::from_integer(T::one() + T::one());
        self.iter()
            .find(|(w, c)| w.is_iterated() && c.age() >= two)
            .map(|(w, c)| Term {
                word: w.clone(),
                coefficient: c.clone(),
            })
    }

    /// Checks the structural invariants against the source: every stored
    /// word is reachable, every coefficient is the remainder map of its
    /// parent's, nothing stored is excluded. Returns a description of the
    /// first violation.
    pub fn check_structure(&self) -> Result<(), String> {
        for (w, c) in self.iter() {
            if excluded(c) {
                return Err(format!("{w} stores the excluded zero fraction"));
            }
            match w.parent() {
                None => {
                    if c != &self.source {
                        return Err("constant term differs from the source".into());
                    }
                }
                Some((parent, i)) => {
                    let pc = self
                        .terms
                        .get(&parent)
                        .ok_or_else(|| format!("{w} has no stored parent"))?;
                    let expected = pc.remainder_map(i).map_err(|e| e.to_string())?;
                    if expected != MaybeFraction::Finite(c.clone()) {
                        return Err(format!("{w} is not R_{i} of its parent"));
                    }
                    if c.denominator() >= pc.denominator() {
                        return Err(format!("{w} does not descend in denominator"));
                    }
                }
            }
        }
        if !excluded(&self.source) && !self.terms.contains_key(&Word::empty()) {
            return Err("missing constant term".into());
        }
        Ok(())
    }

    /// One term per line, `x3.x3.x2 : (1,1,0,0)/2 age=1`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in self.terms() {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }
}

impl<T: Scalar> Serialize for RemainderPolynomial<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RemainderPolynomial", 2)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("terms", &self.terms())?;
        st.end()
    }
}

/// Parsing re-expands the source and rejects payloads whose terms differ.
impl<'de, T: Scalar> Deserialize<'de> for RemainderPolynomial<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Scalar")]
        struct Repr<T> {
            source: ProperFraction<T>,
            terms: Vec<Term<T>>,
        }
        let repr = Repr::<T>::deserialize(d)?;
        let poly = RemainderPolynomial::expand(&repr.source);
        if poly.terms() != repr.terms {
            return Err(D::Error::custom(
                "terms are not the remainder polynomial of the source",
            ));
        }
        Ok(poly)
    }
}

impl<T: Scalar> fmt::Display for RemainderPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
