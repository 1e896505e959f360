//! Real scalars for the transcendental side of special values.
//!
//! Algorithms here are written once against [`RealScalar`] and run either in
//! `f64` (quick sanity checks) or in [`BigReal`] at a caller-chosen precision.

mod bigreal;
mod hurwitz;

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};
use serde::Serialize;

pub use bigreal::BigReal;
pub(crate) use bigreal::format_sci;
pub use hurwitz::{dirichlet_series_at_integer, hurwitz_zeta_at_integer, SeriesPlan};

pub trait RealScalar: Clone + Num + Neg<Output = Self> + PartialOrd + Debug {
    /// Mantissa length in bits.
    fn bits(&self) -> usize;
    fn from_rational(x: &BigRational, bits: usize) -> Self;
    fn from_i64(x: i64, bits: usize) -> Self;
    fn pi(bits: usize) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// `2^-bits`
    fn epsilon(bits: usize) -> Self;

    fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl RealScalar for f64 {
    fn bits(&self) -> usize {
        53
    }

    fn from_rational(x: &BigRational, _: usize) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }

    fn from_i64(x: i64, _: usize) -> Self {
        x as f64
    }

    fn pi(_: usize) -> Self {
        std::f64::consts::PI
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn epsilon(bits: usize) -> Self {
        2f64.powi(-(bits as i32))
    }
}

/// `e^{2 pi i k / n}`.
pub fn root_of_unity<T: RealScalar>(k: i64, n: u64, bits: usize) -> Complex<T> {
    let k = k.rem_euclid(n as i64);
    if k == 0 {
        return Complex::new(T::one(), T::zero());
    }
    let angle = T::pi(bits) * T::from_i64(2 * k, bits) / T::from_i64(n as i64, bits);
    Complex::new(angle.cos(), angle.sin())
}

pub fn digits_to_bits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize
}

/// A real value with an absolute error bound.
#[derive(Clone, Debug)]
pub struct Approx {
    pub value: BigReal,
    pub error: BigReal,
}

impl Approx {
    pub fn exact(value: BigReal) -> Self {
        Approx {
            value,
            error: num_traits::Zero::zero(),
        }
    }

    /// `|a - b| <= err_a + err_b`.
    pub fn agrees_with(&self, other: &Approx) -> bool {
        (self.value.clone() - other.value.clone()).abs() <= self.error.clone() + other.error.clone()
    }

    /// Product with first-order error propagation, padded by a factor of two.
    pub fn mul(&self, other: &Approx) -> Approx {
        let value = self.value.clone() * other.value.clone();
        let first = self.error.clone() * other.value.abs() + other.error.clone() * self.value.abs();
        let second = self.error.clone() * other.error.clone();
        Approx {
            value,
            error: (first + second) * BigReal::from_i64(2, 0),
        }
    }
}

/// Report-friendly rendering of an approximate value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericSummary {
    pub value: String,
    pub error_bound: String,
}

impl NumericSummary {
    pub fn from_approx(a: &Approx, digits: usize) -> Self {
        NumericSummary {
            value: a.value.to_sci_string(digits),
            error_bound: a.error.to_sci_string(3),
        }
    }
}
