use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use super::RealScalar;

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = 64;
/// Precision used for exact small constants (0, 1, machine integers).
const BASE_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Arbitrary-precision binary floating point real.
///
/// Every value carries its own mantissa length; binary operations round to
/// the larger of the two operand precisions, so exact small constants mix
/// freely with high-precision values.
#[derive(Clone)]
pub struct BigReal(BigFloat);

impl BigReal {
    fn bits(&self) -> usize {
        self.0.precision().unwrap_or(BASE_BITS).max(BASE_BITS)
    }

    fn joint(&self, other: &Self) -> usize {
        self.bits().max(other.bits())
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let (sign, words) = n.to_u64_digits();
        if words.is_empty() {
            return BigReal::zero();
        }
        let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * WORD_BITS) as i32;
        BigReal(BigFloat::from_words(&words, s, e))
    }

    pub fn with_precision(&self, bits: usize) -> Self {
        let mut v = self.0.clone();
        v.set_precision(bits.max(BASE_BITS), RM)
            .expect("precision change");
        BigReal(v)
    }

    pub fn precision_bits(&self) -> usize {
        self.bits()
    }

    pub fn is_finite(&self) -> bool {
        !(self.0.is_nan() || self.0.is_inf())
    }

    /// Exact rational value of the binary float.
    pub fn to_rational(&self) -> BigRational {
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return BigRational::zero();
        };
        if self.0.is_zero() {
            return BigRational::zero();
        }
        let mantissa = BigInt::from_slice(
            BigSign::Plus,
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<u32>>(),
        );
        let shift = exp as i64 - (words.len() * WORD_BITS) as i64;
        let m = if shift >= 0 {
            BigRational::from_integer(mantissa << shift as usize)
        } else {
            BigRational::new(mantissa, BigInt::one() << (-shift) as usize)
        };
        if sign == Sign::Neg {
            -m
        } else {
            m
        }
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        format_sci(&self.to_rational(), digits)
    }

    /// Upper bound on `log10 |x|` (rounded up); `None` for zero.
    pub fn log10_ceil(&self) -> Option<i64> {
        if self.0.is_zero() {
            return None;
        }
        let e2 = self.0.exponent()? as f64;
        Some((e2 * std::f64::consts::LOG10_2).ceil() as i64)
    }

    pub fn pow_int(&self, n: i64) -> Self {
        let p = self.bits();
        let r = self.0.powi(n.unsigned_abs() as usize, p + 32, RM);
        if n < 0 {
            BigReal(r.reciprocal(p, RM))
        } else {
            BigReal(r).with_precision(p)
        }
    }

    /// `2^-k` at the given precision.
    pub fn two_pow_neg(k: usize) -> Self {
        let one = BigFloat::from_word(1, BASE_BITS);
        let mut v = one;
        v.set_exponent(1 - k as i32);
        BigReal(v)
    }
}

pub(crate) fn format_sci(x: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let r = x.abs();
    let ten = BigInt::from(10);
    // initial guess from bit lengths, then correct
    let guess = ((r.numer().bits() as f64 - r.denom().bits() as f64) * std::f64::consts::LOG10_2)
        .floor() as i64;
    let mut e10 = guess;
    let scaled = |e10: i64| -> BigInt {
        let shift = digits as i64 - 1 - e10;
        let v = if shift >= 0 {
            &r * BigRational::from_integer(num_traits::pow(ten.clone(), shift as usize))
        } else {
            &r / BigRational::from_integer(num_traits::pow(ten.clone(), (-shift) as usize))
        };
        // round half up
        let (q, rem) = v.numer().div_rem(v.denom());
        if rem * 2 >= *v.denom() {
            q + 1
        } else {
            q
        }
    };
    let lo = num_traits::pow(ten.clone(), digits - 1);
    let hi = &lo * &ten;
    let mut m = scaled(e10);
    for _ in 0..8 {
        if m >= hi {
            e10 += 1;
        } else if m < lo {
            e10 -= 1;
        } else {
            break;
        }
        m = scaled(e10);
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mantissa = if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head}.{tail}")
    };
    format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, e10)
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or((self.bits() as f64 * std::f64::consts::LOG10_2) as usize);
        write!(f, "{}", self.to_sci_string(digits))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({})", self.to_sci_string(30))
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0.partial_cmp(&other.0) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr for BigReal {
            type Output = BigReal;

            fn $method(self, rhs: BigReal) -> BigReal {
                let p = self.joint(&rhs);
                BigReal(self.0.$inner(&rhs.0, p, RM))
            }
        }

        impl<'a> $tr<&'a BigReal> for &'a BigReal {
            type Output = BigReal;

            fn $method(self, rhs: &'a BigReal) -> BigReal {
                let p = self.joint(rhs);
                BigReal(self.0.$inner(&rhs.0, p, RM))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Rem for BigReal {
    type Output = BigReal;

    fn rem(self, rhs: BigReal) -> BigReal {
        BigReal(self.0.rem(&rhs.0))
    }
}

impl Neg for BigReal {
    type Output = BigReal;

    fn neg(self) -> BigReal {
        BigReal(self.0.neg())
    }
}

impl Zero for BigReal {
    fn zero() -> Self {
        BigReal(BigFloat::from_word(0, BASE_BITS))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigReal {
    fn one() -> Self {
        BigReal(BigFloat::from_word(1, BASE_BITS))
    }
}

impl Num for BigReal {
    type FromStrRadixErr = String;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("unsupported radix {radix}"));
        }
        let v: BigFloat = s.parse().map_err(|_| format!("invalid number {s:?}"))?;
        if v.is_nan() {
            return Err(format!("invalid number {s:?}"));
        }
        Ok(BigReal(v))
    }
}

impl RealScalar for BigReal {
    fn bits(&self) -> usize {
        BigReal::bits(self)
    }

    fn from_rational(x: &BigRational, bits: usize) -> Self {
        let n = BigReal::from_bigint(x.numer());
        let d = BigReal::from_bigint(x.denom());
        BigReal(n.0.div(&d.0, bits.max(BASE_BITS), RM))
    }

    fn from_i64(x: i64, bits: usize) -> Self {
        BigReal(BigFloat::from_i64(x, bits.max(BASE_BITS)))
    }

    fn pi(bits: usize) -> Self {
        BigReal(with_consts(|cc| cc.pi(bits.max(BASE_BITS), RM)))
    }

    fn sqrt(&self) -> Self {
        BigReal(self.0.sqrt(self.bits(), RM))
    }

    fn exp(&self) -> Self {
        let p = self.bits();
        BigReal(with_consts(|cc| self.0.exp(p, RM, cc)))
    }

    fn ln(&self) -> Self {
        let p = self.bits();
        BigReal(with_consts(|cc| self.0.ln(p, RM, cc)))
    }

    fn sin(&self) -> Self {
        let p = self.bits();
        BigReal(with_consts(|cc| self.0.sin(p, RM, cc)))
    }

    fn cos(&self) -> Self {
        let p = self.bits();
        BigReal(with_consts(|cc| self.0.cos(p, RM, cc)))
    }

    fn abs(&self) -> Self {
        BigReal(self.0.abs())
    }

    fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    fn epsilon(bits: usize) -> Self {
        BigReal::two_pow_neg(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_round_trip() {
        for n in [0i64, 1, -1, 6, 1 << 40, -(1 << 62)] {
            let x = BigReal::from_bigint(&BigInt::from(n));
            assert_eq!(x.to_rational(), BigRational::from_integer(BigInt::from(n)));
        }
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(BigReal::from_bigint(&big).to_rational().numer(), &big);
    }

    #[test]
    fn pi_digits() {
        let pi = BigReal::pi(200);
        assert_eq!(
            pi.to_sci_string(40),
            "3.141592653589793238462643383279502884197e0"
        );
    }

    #[test]
    fn rational_conversion_and_format() {
        let third = BigReal::from_rational(&BigRational::new(1.into(), 3.into()), 128);
        assert_eq!(third.to_sci_string(10), "3.333333333e-1");
        let x = BigReal::from_rational(&BigRational::new((-1).into(), 12.into()), 128);
        assert_eq!(x.to_sci_string(5), "-8.3333e-2");
        assert_eq!(format_sci(&BigRational::from_integer(120.into()), 6), "1.2e2");
        assert_eq!(format_sci(&BigRational::new(1.into(), 1000.into()), 3), "1e-3");
    }

    #[test]
    fn mixed_precision_arithmetic() {
        let a = BigReal::from_rational(&BigRational::new(1.into(), 3.into()), 256);
        let b = a.clone() * BigReal::from_i64(3, 0);
        let err = (b - BigReal::one()).abs();
        assert!(err < BigReal::epsilon(250));
        assert_eq!(BigReal::two_pow_neg(3).to_rational(), BigRational::new(1.into(), 8.into()));
    }

    #[test]
    fn transcendental_identities() {
        let bits = 300;
        let x = BigReal::from_rational(&BigRational::new(7.into(), 5.into()), bits);
        let back = x.exp().ln();
        assert!((back - x.clone()).abs() < BigReal::epsilon(280));
        let s = x.sin();
        let c = x.cos();
        let one = s.clone() * s + c.clone() * c;
        assert!((one - BigReal::one()).abs() < BigReal::epsilon(280));
    }
}
