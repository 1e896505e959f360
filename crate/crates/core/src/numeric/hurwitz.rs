use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::One;

use super::RealScalar;
use crate::lfunctions::bernoulli_numbers;

/// Euler-Maclaurin parameters: `direct` summed terms, `corrections` Bernoulli terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesPlan {
    pub direct: usize,
    pub corrections: usize,
}

impl SeriesPlan {
    /// A plan whose truncation error is far below `10^-digits` for integer
    /// arguments `k >= 2` and shifts in `(0, 1]`.
    pub fn for_digits(digits: u32) -> Self {
        let n = digits as usize + 16;
        SeriesPlan {
            direct: n,
            corrections: n,
        }
    }
}

fn rising(k: i64, len: usize) -> BigInt {
    (0..len as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(k + j))
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Hurwitz zeta `zeta(k, x) = sum_{j>=0} (x + j)^-k` for integer `k >= 2`,
/// rational `x > 0`, together with a bound on the truncation error.
pub fn hurwitz_zeta_at_integer<T: RealScalar>(
    k: i64,
    x: &BigRational,
    plan: SeriesPlan,
    bits: usize,
) -> (T, T) {
    assert!(k >= 2, "Hurwitz zeta at integer requires k >= 2");
    let m = plan.direct;
    let mut sum = T::zero();
    for j in 0..m {
        let base = T::from_rational(&(x + BigRational::from_integer(BigInt::from(j))), bits);
        sum = sum + base.powi(-k);
    }
    let xm = T::from_rational(&(x + BigRational::from_integer(BigInt::from(m))), bits);
    let inv = T::one() / xm.clone();
    let inv_pow_k = inv.powi(k);
    // integral tail and half endpoint term
    sum = sum + xm.clone() * inv_pow_k.clone() / T::from_i64(k - 1, bits);
    sum = sum + inv_pow_k.clone() / T::from_i64(2, bits);

    let bern = bernoulli_numbers(2 * plan.corrections + 2);
    let inv2 = inv.clone() * inv.clone();
    // (x + M)^{-k-2i+1} for i = 1 is inv_pow_k * inv
    let mut power = inv_pow_k * inv;
    let mut last = T::zero();
    for i in 1..=plan.corrections + 1 {
        let coeff = &bern[2 * i] / BigRational::from_integer(factorial(2 * i))
            * BigRational::from_integer(rising(k, 2 * i - 1));
        let term = T::from_rational(&coeff, bits) * power.clone();
        if i <= plan.corrections {
            sum = sum + term;
        } else {
            last = term;
        }
        power = power * inv2.clone();
    }
    let bound = last.abs() * T::from_i64(2, bits) + T::epsilon(bits.saturating_sub(8)) * sum.abs();
    (sum, bound)
}

/// `sum_{n>=1} chi(n) n^-k = f^-k sum_{a=1}^{f} chi(a) zeta(k, a/f)` for a
/// function on residues mod `f` (values given for `a` in `1..=f`; zero
/// entries may be omitted).
pub fn dirichlet_series_at_integer<T: RealScalar>(
    modulus: u64,
    values: &[(u64, Complex<T>)],
    k: i64,
    plan: SeriesPlan,
    bits: usize,
) -> (Complex<T>, T) {
    let f = BigInt::from(modulus);
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut err = T::zero();
    for (a, chi) in values {
        let x = BigRational::new(BigInt::from(*a), f.clone());
        let (z, e) = hurwitz_zeta_at_integer::<T>(k, &x, plan, bits);
        let mag = (chi.re.clone() * chi.re.clone() + chi.im.clone() * chi.im.clone()).sqrt();
        err = err + e * mag;
        acc = acc + chi.clone() * Complex::new(z, T::zero());
    }
    let scale = T::from_rational(&BigRational::from_integer(f.clone()), bits).powi(-k);
    (
        Complex::new(acc.re * scale.clone(), acc.im * scale.clone()),
        err * scale,
    )
}
