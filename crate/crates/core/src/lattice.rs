//! Lattice points of the overlattice `N' = Z^n + Z·(w/r)`, ages and
//! discrepancies, basic simplices, and an exhaustive search for basic
//! triangulations of the junior simplex by age-1 points.
//!
//! Points are stored with coordinates multiplied by `r` so that everything
//! stays in integer arithmetic. A full-rank sublattice basis of `N'` spans a
//! parallelepiped of volume `1/r`, hence a simplex is basic exactly when the
//! determinant of its scaled vertex matrix is `±r^(n-1)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::pow;
use crate::Scalar;

/// A point of `N'` given by `scaled / r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint<T> {
    scaled: Vec<T>,
    r: T,
}

impl<T: Scalar> LatticePoint<T> {
    pub fn new(scaled: Vec<T>, r: T) -> Self {
        assert!(r.is_positive(), "denominator must be positive");
        LatticePoint { scaled, r }
    }

    pub fn scaled(&self) -> &[T] {
        &self.scaled
    }

    pub fn denominator(&self) -> &T {
        &self.r
    }

    pub fn dim(&self) -> usize {
        self.scaled.len()
    }

    /// `(Σ scaled_i)/r`.
    pub fn age(&self) -> Ratio<T> {
        let sum = self.scaled.iter().fold(T::zero(), |a, x| a + x.clone());
        Ratio::new(sum, self.r.clone())
    }

    /// Bitmask of the coordinates that vanish.
    fn zero_mask(&self) -> u64 {
        self.scaled
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_zero())
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

/// `(1,4,1,1)`: scaled coordinates only.
impl<T: Scalar> fmt::Display for LatticePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.scaled.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The lattice `N'` generated by `Z^n` and `weights / r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Overlattice<T> {
    r: T,
    weights: Vec<T>,
}

impl<T: Scalar> Overlattice<T> {
    /// Weights are reduced into `[0, r)`.
    pub fn new(r: T, weights: Vec<T>) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveDenominator(r.to_string()));
        }
        if weights.is_empty() {
            return Err(Error::EmptyNumerators);
        }
        let weights = weights.iter().map(|w| w.residue(&r)).collect();
        Ok(Overlattice { r, weights })
    }

    pub fn order(&self) -> &T {
        &self.r
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    fn order_usize(&self) -> usize {
        self.r.to_usize().expect("group order fits in usize")
    }

    fn multiple(&self, k: &T) -> LatticePoint<T> {
        let scaled = self
            .weights
            .iter()
            .map(|w| (w.clone() * k.clone()).residue(&self.r))
            .collect();
        LatticePoint::new(scaled, self.r.clone())
    }

    /// `k·w/r mod Z^n` for `k = 0, ..., r-1`, origin first.
    pub fn enumerate_group(&self) -> Vec<LatticePoint<T>> {
        (0..self.order_usize())
            .map(|k| self.multiple(&T::from_count(k)))
            .collect()
    }

    /// `e_1, ..., e_n` in scaled form `(0, ..., r, ..., 0)`.
    pub fn unit_vectors(&self) -> Vec<LatticePoint<T>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let scaled = (0..n)
                    .map(|j| if i == j { self.r.clone() } else { T::zero() })
                    .collect();
                LatticePoint::new(scaled, self.r.clone())
            })
            .collect()
    }

    /// Group elements of age exactly 1, in enumeration order (unit vectors
    /// are not group representatives and never appear here).
    pub fn junior_points(&self) -> Vec<LatticePoint<T>> {
        let r = self.r.clone();
        self.enumerate_group()
            .into_iter()
            .skip(1)
            .filter(|p| p.scaled.iter().fold(T::zero(), |a, x| a + x.clone()) == r)
            .collect()
    }

    /// True iff `scaled ≡ k·w (mod r)` componentwise for some `k`.
    pub fn contains(&self, scaled: &[T]) -> bool {
        if scaled.len() != self.dim() {
            return false;
        }
        let target: Vec<T> = scaled.iter().map(|x| x.residue(&self.r)).collect();
        (0..self.order_usize()).any(|k| self.multiple(&T::from_count(k)).scaled == target)
    }

    /// In `N'`, nonzero, and not `m·q` for any `q ∈ N'` and `m >= 2`.
    pub fn is_primitive(&self, p: &LatticePoint<T>) -> bool {
        if p.r != self.r || !self.contains(&p.scaled) {
            return false;
        }
        let g = p.scaled.iter().fold(T::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return false;
        }
        let mut m = T::one() + T::one();
        while m <= g {
            if g.is_multiple_of(&m) {
                let reduced: Vec<T> = p.scaled.iter().map(|x| x.clone() / m.clone()).collect();
                if self.contains(&reduced) {
                    return false;
                }
            }
            m = m + T::one();
        }
        true
    }

    /// `age(p) - 1` for a primitive point of `N'`.
    pub fn discrepancy(&self, p: &LatticePoint<T>) -> Result<Ratio<T>> {
        if p.r != self.r || !self.contains(&p.scaled) {
            return Err(Error::NotInLattice(p.to_string()));
        }
        if !self.is_primitive(p) {
            return Err(Error::NonPrimitive(p.to_string()));
        }
        Ok(p.age() - Ratio::one())
    }
}

/// Free-function form of [`Overlattice::contains`].
pub fn point_in_overlattice<T: Scalar>(scaled: &[T], r: &T, weights: &[T]) -> bool {
    Overlattice::new(r.clone(), weights.to_vec())
        .map(|l| l.contains(scaled))
        .unwrap_or(false)
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant<T: Scalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    if n == 0 {
        return T::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut m = rows.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `n` lattice points spanning a simplicial cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex<T> {
    vertices: Vec<LatticePoint<T>>,
}

impl<T: Scalar> Simplex<T> {
    pub fn new(vertices: Vec<LatticePoint<T>>) -> Self {
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[LatticePoint<T>] {
        &self.vertices
    }

    /// Determinant of the scaled vertex matrix (rows in vertex order).
    pub fn determinant(&self) -> T {
        let rows: Vec<Vec<T>> = self.vertices.iter().map(|v| v.scaled.clone()).collect();
        determinant(&rows)
    }

    /// `|det| = r^(n-1)`.
    pub fn is_basic(&self) -> Result<bool> {
        let n = self.vertices.len();
        if n == 0 || self.vertices.iter().any(|v| v.dim() != n) {
            return Err(Error::DegenerateSimplex);
        }
        let det = self.determinant();
        if det.is_zero() {
            return Err(Error::DegenerateSimplex);
        }
        Ok(det.abs() == pow(&self.vertices[0].r, n - 1))
    }
}

impl<T: Scalar> fmt::Display for Simplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A candidate subdivision of the junior simplex into simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation<T> {
    lattice: Overlattice<T>,
    simplices: Vec<Simplex<T>>,
}

impl<T: Scalar> Triangulation<T> {
    pub fn new(lattice: Overlattice<T>, simplices: Vec<Simplex<T>>) -> Self {
        Triangulation { lattice, simplices }
    }

    pub fn lattice(&self) -> &Overlattice<T> {
        &self.lattice
    }

    pub fn simplices(&self) -> &[Simplex<T>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `Σ |det| / r^(n-1)`, in units of a basic simplex.
    pub fn normalized_volume(&self) -> Ratio<T> {
        let n = self.lattice.dim();
        let unit = pow(self.lattice.order(), n.saturating_sub(1));
        let total = self
            .simplices
            .iter()
            .fold(T::zero(), |acc, s| acc + s.determinant().abs());
        Ratio::new(total, unit)
    }

    /// Checks that this is a basic, age-1, face-to-face triangulation of the
    /// junior simplex:
    ///
    /// * every vertex is an age-1 point of `N'` and every simplex is basic;
    /// * normalized volumes sum to `r`;
    /// * each facet lying in a coordinate hyperplane occurs once, every other
    ///   facet occurs exactly twice with the two apexes on opposite sides.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.lattice.dim();
        let r = self.lattice.order().clone();
        for (k, s) in self.simplices.iter().enumerate() {
            if s.vertices.len() != n {
                return Err(format!("simplex {k} has {} vertices", s.vertices.len()));
            }
            for v in &s.vertices {
                if v.dim() != n || v.r != r {
                    return Err(format!("simplex {k}: vertex {v} has the wrong shape"));
                }
                if !self.lattice.contains(&v.scaled) {
                    return Err(format!("simplex {k}: vertex {v} is not in the lattice"));
                }
                if v.scaled.iter().any(|x| x.is_negative()) || !v.age().is_one() {
                    return Err(format!(
                        "simplex {k}: vertex {v} is not on the junior simplex"
                    ));
                }
            }
            match s.is_basic() {
                Ok(true) => {}
                Ok(false) => return Err(format!("simplex {k} is not basic")),
                Err(_) => return Err(format!("simplex {k} is degenerate")),
            }
        }
        if self.normalized_volume() != Ratio::from_integer(r.clone()) {
            return Err(format!(
                "normalized volume {} differs from {}",
                self.normalized_volume(),
                r
            ));
        }
        let mut facets: BTreeMap<Vec<Vec<T>>, Vec<bool>> = BTreeMap::new();
        for s in &self.simplices {
            for apex in 0..n {
                let mut facet: Vec<Vec<T>> = s
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != apex)
                    .map(|(_, v)| v.scaled.clone())
                    .collect();
                facet.sort();
                let mut rows = facet.clone();
                rows.push(s.vertices[apex].scaled.clone());
                let positive = determinant(&rows).is_positive();
                facets.entry(facet).or_default().push(positive);
            }
        }
        for (facet, sides) in &facets {
            let on_boundary = (0..n).any(|j| facet.iter().all(|v| v[j].is_zero()));
            let ok = if on_boundary {
                sides.len() == 1
            } else {
                sides.len() == 2 && sides[0] != sides[1]
            };
            if !ok {
                let pts: Vec<String> = facet
                    .iter()
                    .map(|v| LatticePoint::new(v.clone(), r.clone()).to_string())
                    .collect();
                return Err(format!(
                    "facet {} occurs {} time(s) ({})",
                    pts.join(" "),
                    sides.len(),
                    if on_boundary { "boundary" } else { "interior" }
                ));
            }
        }
        Ok(())
    }
}

/// Bounds on the triangulation search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_r: usize,
    /// Backtracking nodes visited before giving up (non-exhaustive).
    pub max_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_r: 12,
            max_nodes: 5_000_000,
        }
    }
}

/// Largest dimension the search accepts.
pub const MAX_SEARCH_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(Triangulation<T>),
    /// `exhaustive` is false when the node budget ran out first.
    NoWitnessFound {
        exhaustive: bool,
    },
}

impl<T> SearchOutcome<T> {
    pub fn witness(&self) -> Option<&Triangulation<T>> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::NoWitnessFound { .. } => None,
        }
    }
}

struct Candidate {
    vertices: Vec<usize>,
    /// (facet, side of the apex relative to the sorted facet)
    facets: Vec<(Vec<usize>, bool)>,
}

struct Search {
    target: usize,
    zero_masks: Vec<u64>,
    candidates: Vec<Candidate>,
    by_facet: HashMap<Vec<usize>, Vec<usize>>,
    placed: Vec<usize>,
    in_use: Vec<bool>,
    forbidden: Vec<bool>,
    facets: BTreeMap<Vec<usize>, Vec<bool>>,
    nodes: usize,
    budget: usize,
    truncated: bool,
}

impl Search {
    fn on_boundary(&self, facet: &[usize]) -> bool {
        facet.iter().fold(u64::MAX, |m, &p| m & self.zero_masks[p]) != 0
    }

    fn fits(&self, c: usize) -> bool {
        if self.in_use[c] || self.forbidden[c] {
            return false;
        }
        self.candidates[c]
            .facets
            .iter()
            .all(|(f, side)| match self.facets.get(f) {
                None => true,
                Some(sides) => sides.len() == 1 && !self.on_boundary(f) && sides[0] != *side,
            })
    }

    fn place(&mut self, c: usize) {
        self.placed.push(c);
        self.in_use[c] = true;
        for (f, side) in &self.candidates[c].facets {
            self.facets.entry(f.clone()).or_default().push(*side);
        }
    }

    fn unplace(&mut self, c: usize) {
        self.placed.pop();
        self.in_use[c] = false;
        for (f, side) in &self.candidates[c].facets {
            let sides = self.facets.get_mut(f).expect("facet was placed");
            let pos = sides
                .iter()
                .position(|s| s == side)
                .expect("side was placed");
            sides.remove(pos);
            if sides.is_empty() {
                self.facets.remove(f);
            }
        }
    }

    fn open_facet(&self) -> Option<Vec<usize>> {
        self.facets
            .iter()
            .find(|(f, sides)| sides.len() == 1 && !self.on_boundary(f))
            .map(|(f, _)| f.clone())
    }

    fn extend(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            return false;
        }
        if self.placed.len() > self.target {
            return false;
        }
        let Some(facet) = self.open_facet() else {
            return self.placed.len() == self.target;
        };
        let options = self.by_facet.get(&facet).cloned().unwrap_or_default();
        for c in options {
            if self.fits(c) {
                self.place(c);
                if self.extend() {
                    return true;
                }
                self.unplace(c);
                if self.truncated {
                    return false;
                }
            }
        }
        false
    }
}

/// Searches for a basic triangulation of the junior simplex whose vertices
/// are age-1 points of `N'`.
///
/// Every triangulation has a simplex at the vertex `e_1`, so the search
/// starts from each basic simplex containing `e_1` in turn (excluding those
/// already exhausted) and grows across open interior facets. Any returned
/// witness has passed [`Triangulation::validate`].
pub fn search_triangulation<T: Scalar>(
    lattice: &Overlattice<T>,
    limits: SearchLimits,
) -> Result<SearchOutcome<T>> {
    let n = lattice.dim();
    let r_ok = lattice.order().to_usize().filter(|&r| r <= limits.max_r);
    let Some(r) = r_ok.filter(|_| n <= MAX_SEARCH_DIM) else {
        return Err(Error::SearchGuard {
            n,
            r: lattice.order().to_string(),
            max_n: MAX_SEARCH_DIM,
            max_r: limits.max_r,
        });
    };

    let units = lattice.unit_vectors();
    let juniors = lattice.junior_points();
    let generator = lattice.multiple(&T::one());
    let points: Vec<LatticePoint<T>> = units.into_iter().chain(juniors).collect();
    let zero_masks = points.iter().map(LatticePoint::zero_mask).collect();
    let unit_det = pow(lattice.order(), n - 1);

    let mut found: Vec<(Vec<usize>, T)> = Vec::new();
    for subset in combinations(points.len(), n) {
        let rows: Vec<Vec<T>> = subset.iter().map(|&i| points[i].scaled.clone()).collect();
        let det = determinant(&rows);
        if det.abs() == unit_det {
            found.push((subset, det));
        }
    }
    let has_generator = |s: &[usize]| s.iter().any(|&i| points[i] == generator);
    found.sort_by(|(a, da), (b, db)| {
        has_generator(b)
            .cmp(&has_generator(a))
            .then_with(|| da.cmp(db))
            .then_with(|| a.cmp(b))
    });

    let candidates: Vec<Candidate> = found
        .into_iter()
        .map(|(vertices, det)| {
            let facets = (0..n)
                .map(|apex| {
                    let facet: Vec<usize> = vertices
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != apex)
                        .map(|(_, &v)| v)
                        .collect();
                    // Moving the apex row to the end takes n-1-apex swaps.
                    let flip = (n - 1 - apex) % 2 == 1;
                    (facet, det.is_positive() != flip)
                })
                .collect();
            Candidate { vertices, facets }
        })
        .collect();
    let mut by_facet: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (c, cand) in candidates.iter().enumerate() {
        for (f, _) in &cand.facets {
            by_facet.entry(f.clone()).or_default().push(c);
        }
    }

    let count = candidates.len();
    let mut search = Search {
        target: r,
        zero_masks,
        candidates,
        by_facet,
        placed: Vec::new(),
        in_use: vec![false; count],
        forbidden: vec![false; count],
        facets: BTreeMap::new(),
        nodes: 0,
        budget: limits.max_nodes,
        truncated: false,
    };
    let starts: Vec<usize> = (0..count)
        .filter(|&c| search.candidates[c].vertices.contains(&0))
        .collect();
    for c in starts {
        search.place(c);
        if search.extend() {
            let simplices = search
                .placed
                .iter()
                .map(|&c| {
                    Simplex::new(
                        search.candidates[c]
                            .vertices
                            .iter()
                            .map(|&i| points[i].clone())
                            .collect(),
                    )
                })
                .collect();
            let t = Triangulation::new(lattice.clone(), simplices);
            t.validate().map_err(Error::InvalidWitness)?;
            return Ok(SearchOutcome::Found(t));
        }
        search.unplace(c);
        if search.truncated {
            return Ok(SearchOutcome::NoWitnessFound { exhaustive: false });
        }
        search.forbidden[c] = true;
    }
    Ok(SearchOutcome::NoWitnessFound { exhaustive: true })
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn lat(r: i64, w: &[i64]) -> Overlattice<i64> {
        Overlattice::new(r, w.to_vec()).unwrap()
    }

    fn pt(s: &[i64], r: i64) -> LatticePoint<i64> {
        LatticePoint::new(s.to_vec(), r)
    }

    /// Leibniz expansion over all permutations; independent of Bareiss.
    fn leibniz(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0;
        fn heap(k: usize, perm: &mut Vec<usize>, m: &[Vec<i64>], total: &mut i64) {
            if k == 1 {
                let inversions = (0..perm.len())
                    .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| perm[i] > perm[j])
                    .count();
                let prod: i64 = (0..perm.len()).map(|i| m[i][perm[i]]).product();
                *total += if inversions % 2 == 0 { prod } else { -prod };
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, m, total);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut perm, m, &mut total);
        total
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let mats = vec![
            vec![
                vec![7, 0, 0, 0],
                vec![0, 7, 0, 0],
                vec![1, 4, 1, 1],
                vec![0, 0, 0, 7],
            ],
            vec![
                vec![7, 0, 0, 0],
                vec![1, 4, 1, 1],
                vec![0, 0, 7, 0],
                vec![0, 0, 0, 7],
            ],
            vec![vec![0, 2, 3], vec![1, 0, 4], vec![5, 6, 0]],
            vec![vec![1, 2], vec![2, 4]],
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]],
        ];
        for m in mats {
            assert_eq!(determinant(&m), leibniz(&m), "{m:?}");
        }
    }

    #[test]
    fn enumeration() {
        let l = lat(7, &[1, 4, 1, 1]);
        let g = l.enumerate_group();
        assert_eq!(g.len(), 7);
        assert_eq!(g[0].scaled(), &[0, 0, 0, 0]);
        assert_eq!(g[2].scaled(), &[2, 1, 2, 2]);
        let distinct: BTreeSet<_> = g.iter().collect();
        assert_eq!(distinct.len(), 7);

        let trivial = lat(1, &[0, 0, 0]);
        assert_eq!(trivial.enumerate_group(), vec![pt(&[0, 0, 0], 1)]);

        let l = lat(15, &[1, 2, 6, 6]);
        assert_eq!(l.enumerate_group().len(), 15);
        assert_eq!(l.enumerate_group()[1].scaled(), &[1, 2, 6, 6]);
    }

    #[test]
    fn ages_and_discrepancies() {
        let l = lat(7, &[1, 4, 1, 1]);
        assert_eq!(pt(&[1, 4, 1, 1], 7).age(), Ratio::from_integer(1));
        assert_eq!(pt(&[0, 0, 0, 0], 7).age(), Ratio::from_integer(0));
        assert_eq!(pt(&[3, 5, 3, 3], 7).age(), Ratio::from_integer(2));
        assert_eq!(
            l.discrepancy(&pt(&[1, 4, 1, 1], 7)).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(
            l.discrepancy(&pt(&[7, 0, 0, 0], 7)).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(
            l.discrepancy(&pt(&[3, 5, 3, 3], 7)).unwrap(),
            Ratio::from_integer(1)
        );
        // 2·(1,4,1,1)/7 as a point of R^4 is not primitive.
        assert!(matches!(
            l.discrepancy(&pt(&[2, 8, 2, 2], 7)),
            Err(Error::NonPrimitive(_))
        ));
        assert!(matches!(
            l.discrepancy(&pt(&[0, 0, 0, 0], 7)),
            Err(Error::NonPrimitive(_))
        ));
        assert!(matches!(
            l.discrepancy(&pt(&[1, 0, 0, 0], 7)),
            Err(Error::NotInLattice(_))
        ));
    }

    #[test]
    fn junior_points_match_brute_force() {
        // Brute force: every vector in [0, r)^n summing to r, tested against
        // the membership definition directly.
        fn brute(r: i64, w: &[i64]) -> BTreeSet<Vec<i64>> {
            let n = w.len();
            let mut out = BTreeSet::new();
            let total = r.pow(n as u32);
            for code in 0..total {
                let v: Vec<i64> = (0..n).map(|i| code / r.pow(i as u32) % r).collect();
                if v.iter().sum::<i64>() != r {
                    continue;
                }
                if (0..r).any(|k| (0..n).all(|i| (k * w[i] - v[i]).rem_euclid(r) == 0)) {
                    out.insert(v);
                }
            }
            out
        }
        for (r, w) in [
            (7, vec![1, 4, 1, 1]),
            (9, vec![1, 2, 3, 3]),
            (10, vec![1, 3, 3, 3]),
        ] {
            let got: BTreeSet<Vec<i64>> = lat(r, &w)
                .junior_points()
                .into_iter()
                .map(|p| p.scaled)
                .collect();
            assert_eq!(got, brute(r, &w), "r={r} w={w:?}");
        }
        let got: Vec<Vec<i64>> = lat(7, &[1, 4, 1, 1])
            .junior_points()
            .into_iter()
            .map(|p| p.scaled)
            .collect();
        assert_eq!(got, vec![vec![1, 4, 1, 1], vec![2, 1, 2, 2]]);
        let got: Vec<Vec<i64>> = lat(9, &[1, 2, 3, 3])
            .junior_points()
            .into_iter()
            .map(|p| p.scaled)
            .collect();
        assert_eq!(
            got,
            vec![vec![1, 2, 3, 3], vec![3, 6, 0, 0], vec![6, 3, 0, 0]]
        );
        assert!(lat(1, &[0, 0, 0, 0]).junior_points().is_empty());
    }

    #[test]
    fn generator_is_junior_for_gorenstein_weights() {
        for (r, w) in [
            (15, vec![1, 2, 6, 6]),
            (11, vec![1, 6, 2, 2]),
            (13, vec![1, 3, 3, 3, 3]),
        ] {
            let l = lat(r, &w);
            assert!(l.junior_points().iter().any(|p| p.scaled() == w.as_slice()));
        }
    }

    #[test]
    fn ages_are_bounded() {
        let l = lat(11, &[1, 6, 2, 2]);
        for p in l.enumerate_group() {
            let a = p.age();
            assert!(a >= Ratio::from_integer(0) && a < Ratio::from_integer(4));
            assert_eq!((a * Ratio::from_integer(11)).denom(), &1);
        }
    }

    #[test]
    fn basicness() {
        let r = 7;
        let e = |i: usize| {
            let mut v = vec![0; 4];
            v[i] = r;
            pt(&v, r)
        };
        let g = pt(&[1, 4, 1, 1], r);
        let sigma = Simplex::new(vec![e(0), e(1), e(2), e(3)]);
        assert_eq!(sigma.determinant().abs(), 7i64.pow(4));
        assert!(!sigma.is_basic().unwrap());
        let s = Simplex::new(vec![e(0), e(1), g.clone(), e(3)]);
        assert_eq!(s.determinant().abs(), 343);
        assert!(s.is_basic().unwrap());
        let s = Simplex::new(vec![e(0), g.clone(), e(2), e(3)]);
        assert_eq!(s.determinant().abs(), 1372);
        assert!(!s.is_basic().unwrap());
        let flat = Simplex::new(vec![e(0), e(0), g, e(3)]);
        assert_eq!(flat.is_basic(), Err(Error::DegenerateSimplex));
        let trivial = Simplex::new(vec![
            pt(&[1, 0, 0], 1),
            pt(&[0, 1, 0], 1),
            pt(&[0, 0, 1], 1),
        ]);
        assert!(trivial.is_basic().unwrap());
    }

    #[test]
    fn membership() {
        assert!(point_in_overlattice(&[0, 3, 3, 3], &9, &[3, 4, 1, 1]));
        assert!(!point_in_overlattice(&[0, 1, 0, 0], &9, &[3, 4, 1, 1]));
        assert!(point_in_overlattice(&[9, 18, 0, -9], &9, &[3, 4, 1, 1]));
        assert!(!point_in_overlattice(&[0, 0, 0], &9, &[3, 4, 1, 1]));
    }

    #[test]
    fn search_finds_seven_simplices() {
        let l = lat(7, &[1, 4, 1, 1]);
        let t = search_triangulation(&l, SearchLimits::default()).unwrap();
        let t = t.witness().expect("crepant type has a witness");
        assert_eq!(t.len(), 7);
        assert_eq!(t.normalized_volume(), Ratio::from_integer(7));
        t.validate().unwrap();
    }

    #[test]
    fn search_trivial_group() {
        let l = lat(1, &[0, 0, 0, 0]);
        let t = search_triangulation(&l, SearchLimits::default()).unwrap();
        let t = t.witness().unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.simplices()[0].vertices(), l.unit_vectors().as_slice());
    }

    #[test]
    fn search_refutes_non_crepant_type() {
        let l = lat(9, &[1, 2, 3, 3]);
        let out = search_triangulation(&l, SearchLimits::default()).unwrap();
        assert_eq!(out, SearchOutcome::NoWitnessFound { exhaustive: true });
    }

    #[test]
    fn search_budget_truncates() {
        let l = lat(11, &[1, 4, 3, 3]);
        let limits = SearchLimits {
            max_r: 12,
            max_nodes: 1,
        };
        let out = search_triangulation(&l, limits).unwrap();
        assert_eq!(out, SearchOutcome::NoWitnessFound { exhaustive: false });
    }

    #[test]
    fn search_guard() {
        let l = lat(13, &[1, 3, 3, 3, 3]);
        assert!(matches!(
            search_triangulation(&l, SearchLimits::default()),
            Err(Error::SearchGuard { .. })
        ));
        let l = lat(15, &[1, 2, 6, 6]);
        assert!(matches!(
            search_triangulation(&l, SearchLimits::default()),
            Err(Error::SearchGuard { .. })
        ));
        let wide = SearchLimits {
            max_r: 15,
            ..SearchLimits::default()
        };
        assert!(search_triangulation(&l, wide).unwrap().witness().is_some());
    }

    #[test]
    fn validator_rejects_broken_triangulations() {
        let l = lat(7, &[1, 4, 1, 1]);
        let t = search_triangulation(&l, SearchLimits::default()).unwrap();
        let t = t.witness().unwrap().clone();

        let mut missing = t.simplices().to_vec();
        missing.pop();
        assert!(Triangulation::new(l.clone(), missing).validate().is_err());

        let mut doubled = t.simplices().to_vec();
        doubled[0] = doubled[1].clone();
        assert!(Triangulation::new(l.clone(), doubled).validate().is_err());

        let sigma = Simplex::new(l.unit_vectors());
        assert!(Triangulation::new(l.clone(), vec![sigma])
            .validate()
            .is_err());
    }

    #[test]
    fn dimension_three_search() {
        // 1/5(1,1,3): every junior-simplex triangulation question in dim 3
        // has a positive answer.
        let l = lat(5, &[1, 1, 3]);
        let t = search_triangulation(&l, SearchLimits::default()).unwrap();
        assert_eq!(t.witness().unwrap().len(), 5);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(4, 4), vec![vec![0, 1, 2, 3]]);
        assert!(combinations(3, 4).is_empty());
    }
}
