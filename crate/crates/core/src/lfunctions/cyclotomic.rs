use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numeric::{root_of_unity, RealScalar};
use crate::poly::Poly;

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Poly<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by every Phi_d, d | n, d < n
    let mut p = Poly::monomial(BigInt::one(), n as usize) - Poly::one();
    for d in 1..n {
        if n % d == 0 {
            p = div_exact_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn div_exact_monic(num: &Poly<BigInt>, den: &Poly<BigInt>) -> Poly<BigInt> {
    let dn = den.degree().expect("nonzero divisor");
    let mut rem: Vec<BigInt> = num.coeffs().to_vec();
    let Some(nn) = num.degree() else {
        return Poly::zero();
    };
    let mut q = vec![BigInt::zero(); nn - dn + 1];
    for i in (0..=nn - dn).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.coeffs().iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact division");
    Poly::new(q)
}

/// Exact element of `Q(zeta_N)` in the power basis `1, zeta, ..., zeta^{phi(N)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    level: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn rational(level: u64, x: BigRational) -> Self {
        Self::reduce(level, vec![x])
    }

    pub fn zero(level: u64) -> Self {
        Self::reduce(level, Vec::new())
    }

    pub fn one(level: u64) -> Self {
        Self::rational(level, BigRational::one())
    }

    /// `zeta_N^k`.
    pub fn root(level: u64, k: i64) -> Self {
        let k = k.rem_euclid(level as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Self::reduce(level, coeffs)
    }

    fn reduce(level: u64, mut coeffs: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(level);
        let d = phi.degree().unwrap();
        let phi: Vec<BigRational> = phi
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - d;
            for (j, c) in phi.iter().enumerate().take(d) {
                coeffs[shift + j] -= &top * c;
            }
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CyclotomicNumber { level, coeffs }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Image in `Q(zeta_M)` for a multiple `M` of the level.
    pub fn embed(&self, level: u64) -> Self {
        assert!(level % self.level == 0, "level {level} is not a multiple of {}", self.level);
        let step = (level / self.level) as usize;
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Self::reduce(level, coeffs)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = self.level.lcm(&other.level);
        (self.embed(l), other.embed(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let n = a.coeffs.len().max(b.coeffs.len());
        let at = |v: &[BigRational], i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
        let coeffs = (0..n).map(|i| at(&a.coeffs, i) + at(&b.coeffs, i)).collect();
        Self::reduce(a.level, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.level);
        }
        let mut coeffs = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        Self::reduce(a.level, coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::reduce(self.level, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.level as usize;
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - i) % n] += c;
        }
        Self::reduce(self.level, coeffs)
    }

    /// Galois action `zeta -> zeta^a` for `a` coprime to the level.
    pub fn galois(&self, a: u64) -> Self {
        let n = self.level as usize;
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i * a as usize) % n] += c;
        }
        Self::reduce(self.level, coeffs)
    }

    /// `N(x) = prod_sigma sigma(x)`, a rational number.
    pub fn norm(&self) -> BigRational {
        let mut acc = Self::one(self.level);
        for a in 1..=self.level {
            if a.gcd(&self.level) == 1 {
                acc = acc.mul(&self.galois(a));
            }
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut acc = Self::one(self.level);
        for a in 2..=self.level {
            if a.gcd(&self.level) == 1 {
                acc = acc.mul(&self.galois(a));
            }
        }
        let norm = self.mul(&acc).as_rational().expect("norm is rational");
        Some(acc.scale(&(BigRational::one() / norm)))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.level);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Value under the embedding `zeta_N -> e^{2 pi i / N}`.
    pub fn to_complex<T: RealScalar>(&self, bits: usize) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w: Complex<T> = root_of_unity(i as i64, self.level, bits);
            let c = T::from_rational(c, bits);
            acc = acc + Complex::new(w.re * c.clone(), w.im * c);
        }
        acc
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{sep}{mag}")?,
                1 => write!(f, "{sep}{mag}*z{}", self.level)?,
                _ => write!(f, "{sep}{mag}*z{}^{i}", self.level)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}
