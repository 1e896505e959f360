//! Dense univariate polynomials and truncated power series over any
//! commutative coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, Signed, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<T> {
    // coefficient of t^i at index i; no trailing zeros
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `1 - c t^k`
    pub fn one_minus(c: T, k: usize) -> Self {
        Self::one() - Self::monomial(c, k)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Substitution `t -> c t`.
    pub fn scale_var(&self, c: &T) -> Self {
        let mut pow = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pow.clone());
            pow = pow * c.clone();
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        let mut k = T::zero();
        for a in &self.coeffs {
            if !k.is_zero() {
                out.push(a.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    /// Truncated Taylor coefficients `[a_0, ..., a_order]` of `self` as a series.
    pub fn to_series(&self, order: usize) -> Vec<T> {
        (0..=order).map(|i| self.coeff(i)).collect()
    }
}

impl<'a, T: Clone + Num> Add for &'a Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, T: Clone + Num> Sub for &'a Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, T: Clone + Num> Mul for &'a Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Clone + Num> Add for Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Clone + Num> Sub for Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Poly<T> {
        &self - &rhs
    }
}

impl<T: Clone + Num> Mul for Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Clone + Num + Signed + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Clone + Num + Signed + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<T: Clone + Num + fmt::Display> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

/// Taylor coefficients up to `t^order` of `num / den`. The constant term of
/// `den` must be invertible in `T`; returns `None` otherwise.
pub fn series_quotient<T: Clone + Num>(num: &[T], den: &[T], order: usize) -> Option<Vec<T>> {
    let d0 = den.first()?.clone();
    if d0.is_zero() {
        return None;
    }
    let at = |v: &[T], i: usize| v.get(i).cloned().unwrap_or_else(T::zero);
    let mut out: Vec<T> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = at(num, k);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc = acc - at(den, j) * out[k - j].clone();
        }
        out.push(acc / d0.clone());
    }
    Some(out)
}

/// Cauchy product truncated at `t^order`.
pub fn series_product<T: Clone + Num>(a: &[T], b: &[T], order: usize) -> Vec<T> {
    (0..=order)
        .map(|k| {
            (0..=k).fold(T::zero(), |acc, i| match (a.get(i), b.get(k - i)) {
                (Some(x), Some(y)) => acc + x.clone() * y.clone(),
                _ => acc,
            })
        })
        .collect()
}

/// `exp(sum_{k>=1} c_k t^k / k)` truncated at `t^order`, where `c[k-1] = c_k`.
///
/// Uses `E' = L' E`, i.e. `k e_k = sum_{j=1}^k c_j e_{k-j}`.
pub fn series_exp_of_log_counts<T: Clone + Num>(counts: &[T], order: usize) -> Vec<T> {
    let mut e: Vec<T> = vec![T::one()];
    let mut kk = T::zero();
    for k in 1..=order {
        kk = kk + T::one();
        let mut acc = T::zero();
        for j in 1..=k {
            if let Some(c) = counts.get(j - 1) {
                acc = acc + c.clone() * e[k - j].clone();
            }
        }
        e.push(acc / kk.clone());
    }
    e
}
