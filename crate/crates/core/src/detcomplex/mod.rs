//! Bounded complexes of free abelian groups, their cohomology, Euler
//! characteristics, and determinant lines.
//!
//! Indexing is cohomological: `d^i : A^i -> A^{i+1}`, stored as a matrix with
//! `rank(i+1)` rows and `rank(i)` columns.

mod json;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlinalg::{determinantal_divisor, rational_rank, smith_normal_form, AbGroup, Matrix};

pub use json::ComplexFile;

type IntMatrix = Matrix<BigInt>;

#[derive(Clone, PartialEq, Eq)]
pub struct BoundedFreeComplex {
    // only nonzero ranks are stored
    ranks: BTreeMap<i64, usize>,
    // only nonzero differentials are stored
    diffs: BTreeMap<i64, IntMatrix>,
}

impl BoundedFreeComplex {
    /// Validates shapes and `d^{i+1} d^i = 0`.
    pub fn new(ranks: BTreeMap<i64, usize>, diffs: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let ranks: BTreeMap<i64, usize> = ranks.into_iter().filter(|(_, r)| *r > 0).collect();
        let rank = |i: i64| ranks.get(&i).copied().unwrap_or(0);
        for (&i, d) in &diffs {
            if d.rows() != rank(i + 1) || d.cols() != rank(i) {
                return Err(Error::MalformedComplex(format!(
                    "d^{i} is {}x{} but must be {}x{}",
                    d.rows(),
                    d.cols(),
                    rank(i + 1),
                    rank(i)
                )));
            }
        }
        let diffs: BTreeMap<i64, IntMatrix> = diffs.into_iter().filter(|(_, d)| !d.is_zero()).collect();
        let c = BoundedFreeComplex { ranks, diffs };
        for (&i, d) in &c.diffs {
            if let Some(next) = c.diffs.get(&(i + 1)) {
                if !next.mul(d)?.is_zero() {
                    return Err(Error::MalformedComplex(format!("d^{} d^{i} is nonzero", i + 1)));
                }
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        BoundedFreeComplex {
            ranks: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// `Z^rank` concentrated in one degree.
    pub fn free_module(degree: i64, rank: usize) -> Self {
        Self::new(BTreeMap::from([(degree, rank)]), BTreeMap::new()).expect("no differentials")
    }

    /// `Z^cols --a--> Z^rows` in degrees `(degree, degree + 1)`.
    pub fn two_term(degree: i64, a: IntMatrix) -> Result<Self> {
        Self::new(
            BTreeMap::from([(degree, a.cols()), (degree + 1, a.rows())]),
            BTreeMap::from([(degree, a)]),
        )
    }

    /// Lowest and highest degree with a nonzero term.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        Some((*self.ranks.keys().next()?, *self.ranks.keys().next_back()?))
    }

    pub fn rank(&self, i: i64) -> usize {
        self.ranks.get(&i).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    /// `d^i`, a zero matrix of the right shape when not stored.
    pub fn differential(&self, i: i64) -> IntMatrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.rank(i + 1), self.rank(i)))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        let (lo, hi) = self.bounds().unwrap_or((0, -1));
        lo..=hi
    }

    /// `H^i = ker d^i / im d^{i-1}`. The free rank is
    /// `rank(i) - rk d^i - rk d^{i-1}`; the torsion is given by the invariant
    /// factors of `d^{i-1}`, since `ker d^i` is saturated.
    pub fn cohomology(&self, i: i64) -> AbGroup<BigInt> {
        let incoming = smith_normal_form(&self.differential(i - 1));
        let outgoing = smith_normal_form(&self.differential(i));
        let free = self.rank(i) - incoming.rank() - outgoing.rank();
        AbGroup::from_cyclic_orders(free, &incoming.invariant_factors())
    }

    pub fn cohomology_all(&self) -> BTreeMap<i64, AbGroup<BigInt>> {
        self.degrees().map(|i| (i, self.cohomology(i))).collect()
    }

    /// `(chi, chi')` with `chi = sum (-1)^i rk H^i` and
    /// `chi' = sum (-1)^i i rk H^i`.
    pub fn euler_characteristics(&self) -> (i64, i64) {
        let mut chi = 0;
        let mut chi2 = 0;
        for (i, h) in self.cohomology_all() {
            let s = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            chi += s * h.rank() as i64;
            chi2 += s * i * h.rank() as i64;
        }
        (chi, chi2)
    }

    /// `sum (-1)^i rank(A^i)`.
    pub fn grade(&self) -> i64 {
        self.ranks
            .iter()
            .map(|(&i, &r)| if i.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// `m = prod |H^i|^{(-1)^i}`.
    pub fn multiplicative_euler_char(&self) -> Result<BigRational> {
        let mut m = BigRational::one();
        for (i, h) in self.cohomology_all() {
            if !h.is_finite() {
                return Err(Error::InfiniteCohomology {
                    degree: i,
                    rank: h.rank(),
                });
            }
            let o = BigRational::from_integer(h.torsion_order());
            m *= if i.rem_euclid(2) == 0 { o } else { o.recip() };
        }
        Ok(m)
    }

    /// Determinant line: `(1/m) Z` in grade `sum (-1)^i rank A^i` when all
    /// cohomology is torsion, otherwise the ideal is left undetermined.
    pub fn determinant(&self) -> GradedLine {
        GradedLine {
            ideal: self.multiplicative_euler_char().ok().map(|m| m.recip()),
            grade: self.grade(),
        }
    }

    /// The same line computed term by term from determinantal divisors and
    /// fraction-free ranks, without forming cohomology:
    /// `m = prod_j Delta_{r_j}(d^j)^{(-1)^{j+1}}`.
    pub fn determinant_by_divisors(&self) -> GradedLine {
        let rk: BTreeMap<i64, usize> = self
            .degrees()
            .map(|j| (j, rational_rank(&self.differential(j))))
            .collect();
        let r = |j: i64| rk.get(&j).copied().unwrap_or(0);
        let acyclic_over_q = self.degrees().all(|i| self.rank(i) == r(i) + r(i - 1));
        let ideal = acyclic_over_q.then(|| {
            let mut m = BigRational::one();
            for j in self.degrees() {
                let delta = BigRational::from_integer(determinantal_divisor(&self.differential(j), r(j)));
                m *= if j.rem_euclid(2) == 0 { delta.recip() } else { delta };
            }
            m.recip()
        });
        GradedLine {
            ideal,
            grade: self.grade(),
        }
    }

    /// `C[k]^i = C^{i+k}` with differentials multiplied by `(-1)^k`.
    pub fn shift(&self, k: i64) -> Self {
        let sign_flip = k.rem_euclid(2) == 1;
        BoundedFreeComplex {
            ranks: self.ranks.iter().map(|(&i, &r)| (i - k, r)).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&i, d)| (i - k, if sign_flip { d.neg() } else { d.clone() }))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (lo, hi) = span(&[self.bounds(), other.bounds()]);
        let ranks = (lo..=hi).map(|i| (i, self.rank(i) + other.rank(i))).collect();
        let diffs = (lo..=hi)
            .map(|i| {
                let a = self.differential(i);
                let b = other.differential(i);
                let m = Matrix::block(
                    &a,
                    &Matrix::zeros(a.rows(), b.cols()),
                    &Matrix::zeros(b.rows(), a.cols()),
                    &b,
                )
                .expect("block shapes agree");
                (i, m)
            })
            .collect();
        Self::new(ranks, diffs).expect("direct sum of complexes is a complex")
    }
}

fn span(bounds: &[Option<(i64, i64)>]) -> (i64, i64) {
    let present: Vec<(i64, i64)> = bounds.iter().flatten().copied().collect();
    if present.is_empty() {
        return (0, -1);
    }
    (
        present.iter().map(|b| b.0).min().unwrap(),
        present.iter().map(|b| b.1).max().unwrap(),
    )
}

impl fmt::Debug for BoundedFreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundedFreeComplex")
            .field("ranks", &self.ranks)
            .field("diffs", &self.diffs)
            .finish()
    }
}

/// Degreewise maps `f^i : A^i -> B^i` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: BoundedFreeComplex,
    target: BoundedFreeComplex,
    maps: BTreeMap<i64, IntMatrix>,
}

impl ChainMap {
    pub fn new(
        source: BoundedFreeComplex,
        target: BoundedFreeComplex,
        maps: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        for (&i, f) in &maps {
            if f.rows() != target.rank(i) || f.cols() != source.rank(i) {
                return Err(Error::NotChainMap(format!(
                    "f^{i} is {}x{} but must be {}x{}",
                    f.rows(),
                    f.cols(),
                    target.rank(i),
                    source.rank(i)
                )));
            }
        }
        let map = ChainMap { source, target, maps };
        let (lo, hi) = span(&[map.source.bounds(), map.target.bounds()]);
        for i in lo - 1..=hi {
            let lhs = map.component(i + 1).mul(&map.source.differential(i))?;
            let rhs = map.target.differential(i).mul(&map.component(i))?;
            if lhs != rhs {
                return Err(Error::NotChainMap(format!("square at degree {i} does not commute")));
            }
        }
        Ok(map)
    }

    pub fn zero(source: BoundedFreeComplex, target: BoundedFreeComplex) -> Self {
        ChainMap {
            source,
            target,
            maps: BTreeMap::new(),
        }
    }

    pub fn identity(c: &BoundedFreeComplex) -> Self {
        let maps = c.ranks.iter().map(|(&i, &r)| (i, Matrix::identity(r))).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &BoundedFreeComplex {
        &self.source
    }

    pub fn target(&self) -> &BoundedFreeComplex {
        &self.target
    }

    pub fn component(&self, i: i64) -> IntMatrix {
        self.maps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.rank(i), self.source.rank(i)))
    }
}

/// `Cone(f)^i = B^i + A^{i+1}` with `d = [[d_B^i, f^{i+1}], [0, -d_A^{i+1}]]`.
pub fn mapping_cone(f: &ChainMap) -> BoundedFreeComplex {
    let a = &f.source;
    let b = &f.target;
    let (lo, hi) = span(&[a.shift(1).bounds(), b.bounds()]);
    let ranks = (lo..=hi).map(|i| (i, b.rank(i) + a.rank(i + 1))).collect();
    let diffs = (lo - 1..=hi)
        .map(|i| {
            let db = b.differential(i);
            let da = a.differential(i + 1).neg();
            let fi = f.component(i + 1);
            let zero = Matrix::zeros(da.rows(), db.cols());
            (i, Matrix::block(&db, &fi, &zero, &da).expect("cone block shapes"))
        })
        .collect();
    BoundedFreeComplex::new(ranks, diffs).expect("cone of a chain map is a complex")
}

/// A graded invertible Z-module: the fractional ideal `ideal * Z` (positive
/// generator, sign quotiented out) or undetermined, together with its grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLine {
    pub ideal: Option<BigRational>,
    pub grade: i64,
}

impl GradedLine {
    pub fn tensor(&self, other: &Self) -> Self {
        GradedLine {
            ideal: match (&self.ideal, &other.ideal) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            },
            grade: self.grade + other.grade,
        }
    }

    pub fn inverse(&self) -> Self {
        GradedLine {
            ideal: self.ideal.as_ref().map(|a| a.recip()),
            grade: -self.grade,
        }
    }

    pub fn pow(&self, e: i32) -> Self {
        GradedLine {
            ideal: self.ideal.as_ref().map(|a| Pow::pow(a.clone(), e)),
            grade: self.grade * e as i64,
        }
    }
}

impl fmt::Display for GradedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ideal {
            Some(a) => write!(f, "({a})Z in grade {}", self.grade),
            None => write!(f, "undetermined in grade {}", self.grade),
        }
    }
}

impl Serialize for GradedLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            ideal: String,
            grade: i64,
        }
        Repr {
            ideal: self
                .ideal
                .as_ref()
                .map_or_else(|| "undetermined".to_string(), ToString::to_string),
            grade: self.grade,
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mult(k: i64, degree: i64) -> BoundedFreeComplex {
        BoundedFreeComplex::two_term(degree, m(vec![vec![k]])).unwrap()
    }

    #[test]
    fn cohomology_examples() {
        let c = mult(2, 0);
        assert!(c.cohomology(0).is_trivial());
        assert_eq!(c.cohomology(1), AbGroup::from_cyclic_orders(0, &[BigInt::from(2)]));
        assert!(mult(1, 0).cohomology_all().values().all(AbGroup::is_trivial));
        assert!(BoundedFreeComplex::zero().cohomology(3).is_trivial());
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(mult(2, 0).euler_characteristics(), (0, 0));
        assert_eq!(BoundedFreeComplex::free_module(0, 1).euler_characteristics(), (1, 0));
        assert_eq!(BoundedFreeComplex::free_module(1, 1).euler_characteristics(), (-1, -1));
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(mult(5, -1).multiplicative_euler_char().unwrap(), r(5, 1));
        let s = mult(2, -1).direct_sum(&mult(3, 0));
        assert_eq!(s.multiplicative_euler_char().unwrap(), r(2, 3));
        assert_eq!(mult(1, 4).multiplicative_euler_char().unwrap(), r(1, 1));
        let err = BoundedFreeComplex::free_module(2, 1).multiplicative_euler_char().unwrap_err();
        assert_eq!(err, Error::InfiniteCohomology { degree: 2, rank: 1 });
    }

    #[test]
    fn determinant_examples() {
        let line = mult(5, -1).determinant();
        assert_eq!(line, GradedLine { ideal: Some(r(1, 5)), grade: 0 });
        assert_eq!(line, mult(5, -1).determinant_by_divisors());
        let free = BoundedFreeComplex::free_module(0, 1).determinant();
        assert_eq!(free, GradedLine { ideal: None, grade: 1 });
        let s = mult(2, -1).direct_sum(&mult(3, 0));
        assert_eq!(s.determinant().ideal, Some(r(3, 2)));
        assert_eq!(s.determinant_by_divisors().ideal, Some(r(3, 2)));
    }

    #[test]
    fn cone_examples() {
        let c = BoundedFreeComplex::two_term(0, m(vec![vec![1]])).unwrap();
        let cone = mapping_cone(&ChainMap::identity(&c));
        assert_eq!(cone.multiplicative_euler_char().unwrap(), r(1, 1));

        let a = mult(5, -1);
        let cone = mapping_cone(&ChainMap::zero(a.clone(), BoundedFreeComplex::zero()));
        assert_eq!(cone, a.shift(1));

        let z0 = BoundedFreeComplex::free_module(0, 1);
        let six = ChainMap::new(z0.clone(), z0, BTreeMap::from([(0, m(vec![vec![6]]))])).unwrap();
        let cone = mapping_cone(&six);
        assert_eq!(cone.cohomology(0), AbGroup::from_cyclic_orders(0, &[BigInt::from(6)]));
        assert_eq!(cone.multiplicative_euler_char().unwrap(), r(6, 1));
    }

    #[test]
    fn non_chain_maps_rejected() {
        let a = mult(2, 0);
        let b = mult(3, 0);
        let f = ChainMap::new(a, b, BTreeMap::from([(0, m(vec![vec![1]])), (1, m(vec![vec![1]]))]));
        assert_eq!(f.unwrap_err().code(), "not-chain-map");
    }

    #[test]
    fn shift_examples() {
        let c = mult(5, -1);
        assert_eq!(c.shift(1).multiplicative_euler_char().unwrap(), r(1, 5));
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(-1), c);
        assert_eq!(BoundedFreeComplex::free_module(0, 1).shift(1).grade(), -1);
    }

    #[test]
    fn malformed_complexes_rejected() {
        let bad = BoundedFreeComplex::new(
            BTreeMap::from([(0, 1), (1, 1), (2, 1)]),
            BTreeMap::from([(0, m(vec![vec![1]])), (1, m(vec![vec![1]]))]),
        );
        assert_eq!(bad.unwrap_err().code(), "malformed-complex");
        let shape = BoundedFreeComplex::new(BTreeMap::from([(0, 2)]), BTreeMap::from([(0, m(vec![vec![1]]))]));
        assert!(shape.is_err());
    }

    #[test]
    fn resolutions_of_torsion_group() {
        // Z/4 placed in even and odd degree
        assert_eq!(mult(4, -1).multiplicative_euler_char().unwrap(), r(4, 1));
        assert_eq!(mult(4, 0).multiplicative_euler_char().unwrap(), r(1, 4));
    }
}
