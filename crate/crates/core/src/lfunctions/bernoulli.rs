use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Poly;

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `B_0, ..., B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let c = binomials(m + 1);
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(c[j].clone()) * bj;
        }
        b.push(-acc / BigRational::from_integer(c[m].clone()));
    }
    b
}

/// Bernoulli polynomial `B_k(x) = sum_j C(k, j) B_j x^{k-j}`.
pub fn bernoulli_poly(k: usize) -> Poly<BigRational> {
    let b = bernoulli_numbers(k);
    let c = binomials(k);
    let mut coeffs = vec![BigRational::zero(); k + 1];
    for j in 0..=k {
        coeffs[k - j] = BigRational::from_integer(c[j].clone()) * &b[j];
    }
    Poly::new(coeffs)
}
