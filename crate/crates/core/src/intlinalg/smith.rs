//! Smith normal form over a Euclidean ring of integers.
//!
//! The decomposition is returned as `A = U * S * V` with `U`, `V` unimodular
//! and `S` diagonal, nonnegative, and satisfying `s_i | s_{i+1}`. Every
//! elementary operation applied to the working copy of `A` is mirrored by its
//! inverse on `U` (rows) or `V` (columns), so the product identity holds at
//! every step.

use num_integer::Integer;
use std::fmt;

use num_traits::Signed;

use super::Matrix;

#[derive(Clone, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub s: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Clone + Integer + Signed> SmithDecomposition<T> {
    /// Diagonal of `S` (length `min(rows, cols)`), zeros included.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    /// Nonzero diagonal entries: the invariant factors of the image lattice.
    pub fn invariant_factors(&self) -> Vec<T> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

impl<T: Clone + fmt::Display> fmt::Debug for SmithDecomposition<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmithDecomposition")
            .field("u", &self.u)
            .field("s", &self.s)
            .field("v", &self.v)
            .finish()
    }
}

struct Reducer<T> {
    s: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
}

impl<T: Clone + Integer + Signed> Reducer<T> {
    fn row_add(&mut self, dst: usize, src: usize, c: &T) {
        self.s.add_row_multiple(dst, src, c);
        // U <- U * (I - c e_{dst,src})
        self.u.add_col_multiple(src, dst, &(-c.clone()));
    }

    fn col_add(&mut self, dst: usize, src: usize, c: &T) {
        self.s.add_col_multiple(dst, src, c);
        // V <- (I - c e_{src,dst}) * V
        self.v.add_row_multiple(src, dst, &(-c.clone()));
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_rows(a, b);
    }

    fn row_negate(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_col(i);
    }

    /// Position of a smallest-magnitude nonzero entry in the trailing block.
    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let x = &self.s[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.abs() < self.s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let (m, n) = (self.s.rows(), self.s.cols());
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.smallest_from(t) else {
                break;
            };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                // clear column t below the pivot, then row t to the right
                let mut dirty = false;
                for i in t + 1..m {
                    if self.s[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.s[(i, t)].div_floor(&self.s[(t, t)]);
                    self.row_add(i, t, &(-q));
                    if !self.s[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    if self.s[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.s[(t, j)].div_floor(&self.s[(t, t)]);
                    self.col_add(j, t, &(-q));
                    if !self.s[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    self.move_smallest_in_cross(t);
                    continue;
                }
                // pivot must divide the whole trailing block
                let offender = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.s[(i, j)].is_multiple_of(&self.s[(t, t)]));
                match offender {
                    Some((i, _)) => self.row_add(t, i, &T::one()),
                    None => break,
                }
            }
            if self.s[(t, t)].is_negative() {
                self.row_negate(t);
            }
        }
    }

    /// After a division pass, bring the smallest nonzero entry of row t or
    /// column t into the pivot slot.
    fn move_smallest_in_cross(&mut self, t: usize) {
        let mut best = (t, t);
        let mut best_abs = self.s[(t, t)].abs();
        for i in t + 1..self.s.rows() {
            let x = self.s[(i, t)].abs();
            if !x.is_zero() && (best_abs.is_zero() || x < best_abs) {
                best = (i, t);
                best_abs = x;
            }
        }
        for j in t + 1..self.s.cols() {
            let x = self.s[(t, j)].abs();
            if !x.is_zero() && (best_abs.is_zero() || x < best_abs) {
                best = (t, j);
                best_abs = x;
            }
        }
        if best.0 != t {
            self.row_swap(t, best.0);
        }
        if best.1 != t {
            self.col_swap(t, best.1);
        }
    }
}

pub fn smith_normal_form<T: Clone + Integer + Signed>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let mut r = Reducer {
        s: a.clone(),
        u: Matrix::identity(a.rows()),
        v: Matrix::identity(a.cols()),
    };
    r.reduce();
    SmithDecomposition {
        u: r.u,
        s: r.s,
        v: r.v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn big(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap()
    }

    fn check(a: &Matrix<BigInt>) -> SmithDecomposition<BigInt> {
        let d = smith_normal_form(a);
        assert_eq!(&d.u.mul(&d.s).unwrap().mul(&d.v).unwrap(), a);
        assert_eq!(d.u.det().unwrap().abs(), BigInt::from(1));
        assert_eq!(d.v.det().unwrap().abs(), BigInt::from(1));
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        d
    }

    #[test]
    fn identity() {
        let d = check(&big(vec![vec![1, 0], vec![0, 1]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn two_four_six_eight() {
        let d = check(&big(vec![vec![2, 4], vec![6, 8]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_map() {
        let d = check(&big(vec![vec![0]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(0)]);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is not in Smith form; the answer is diag(1, 6)
        let d = check(&big(vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let d = smith_normal_form(&Matrix::<BigInt>::zeros(r, c));
            assert_eq!((d.u.rows(), d.v.cols()), (r, c));
            assert!(d.diagonal().is_empty());
        }
    }

    #[test]
    fn works_over_machine_integers() {
        let a = Matrix::from_rows(vec![vec![4i64, 6], vec![10, 14]]).unwrap();
        let d = smith_normal_form(&a);
        assert_eq!(d.diagonal(), vec![2, 2]);
    }

    proptest! {
        #[test]
        fn postconditions_hold(rows in 0usize..=5, cols in 0usize..=5, seed in proptest::collection::vec(-9i64..=9, 25)) {
            let data: Vec<BigInt> = seed.into_iter().take(rows * cols).map(BigInt::from).collect();
            let a = Matrix::new(rows, cols, data).unwrap();
            check(&a);
        }
    }
}
