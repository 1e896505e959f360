use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{smith_normal_form, Matrix};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_k` with
/// `t_i | t_{i+1}` and every `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbGroup<T> {
    rank: usize,
    torsion: Vec<T>,
}

impl<T: Clone + Integer + Signed> AbGroup<T> {
    pub fn trivial() -> Self {
        AbGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes an arbitrary list of cyclic orders into an invariant-factor
    /// chain. Zeros count as free summands; units are dropped.
    pub fn from_cyclic_orders(rank: usize, orders: &[T]) -> Self {
        let n = orders.len();
        let cok = cokernel(&Matrix::diagonal(n, n, orders));
        AbGroup {
            rank: rank + cok.rank,
            torsion: cok.torsion,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[T] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Product of invariant factors of the torsion subgroup.
    pub fn torsion_order(&self) -> T {
        self.torsion.iter().fold(T::one(), |acc, t| acc * t.clone())
    }

    pub fn order(&self) -> Result<T> {
        if self.rank > 0 {
            return Err(Error::InfiniteGroup { rank: self.rank });
        }
        Ok(self.torsion_order())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<T> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic_orders(self.rank + other.rank, &orders)
    }
}

impl<T: fmt::Display> fmt::Display for AbGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^rows / image(A)` for `A: Z^cols -> Z^rows`.
pub fn cokernel<T: Clone + Integer + Signed>(a: &Matrix<T>) -> AbGroup<T> {
    let snf = smith_normal_form(a);
    let factors = snf.invariant_factors();
    let rank = a.rows() - factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    AbGroup { rank, torsion }
}

pub fn group_order<T: Clone + Integer + Signed>(g: &AbGroup<T>) -> Result<T> {
    g.order()
}

/// Rank over the rationals, by fraction-free elimination. Independent of the
/// Smith reduction.
pub fn rational_rank(a: &Matrix<BigInt>) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        for i in rank + 1..rows {
            if m[(i, c)].is_zero() {
                continue;
            }
            let (a, b) = (m[(rank, c)].clone(), m[(i, c)].clone());
            for j in 0..cols {
                let v = &m[(i, j)] * &a - &m[(rank, j)] * &b;
                m[(i, j)] = v;
            }
        }
        rank += 1;
    }
    rank
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// The `k`-th determinantal divisor: gcd of all `k x k` minors (1 for k = 0).
///
/// Equals the product of the first `k` invariant factors. Exponential in the
/// matrix size; intended for small matrices and cross-checks.
pub fn determinantal_divisor(a: &Matrix<BigInt>, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    for rows in combinations(a.rows(), k) {
        for cols in combinations(a.cols(), k) {
            let d = a.minor(&rows, &cols).det().expect("square minor");
            g = g.gcd(&d);
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// p-adic valuation of a nonzero rational.
pub fn rational_valuation(x: &BigRational, p: &BigInt) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

pub(crate) fn int_valuation(n: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p^{v_p(n)}` for nonzero `n`.
pub fn prime_part(n: &BigInt, p: &BigInt) -> BigInt {
    num_traits::pow(p.clone(), int_valuation(n, p) as usize)
}
