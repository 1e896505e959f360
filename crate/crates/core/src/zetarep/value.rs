use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lfunctions::{complex_abs, working_bits, CyclotomicNumber, LeadingValue};
use crate::numeric::{format_sci, Approx, BigReal, NumericSummary, RealScalar};

/// `zeta^*(X, n)` together with the vanishing order `d_n`.
#[derive(Clone, Debug)]
pub struct SpecialValue {
    pub order: i64,
    /// Present exactly when every factor's leading coefficient is rational.
    pub exact: Option<BigRational>,
    pub numeric: Approx,
    pub digits: u32,
}

impl SpecialValue {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn summary(&self) -> NumericSummary {
        NumericSummary::from_approx(&self.numeric, self.digits as usize)
    }

    pub fn exact_string(&self) -> Option<String> {
        self.exact.as_ref().map(ToString::to_string)
    }

    pub fn exact_sci(&self) -> Option<String> {
        self.exact.as_ref().map(|x| format_sci(x, self.digits as usize))
    }
}

fn cpow(z: &Complex<BigReal>, e: i64) -> Complex<BigReal> {
    let base = if e < 0 {
        let n = z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone();
        Complex::new(z.re.clone() / n.clone(), -z.im.clone() / n)
    } else {
        z.clone()
    };
    let mut acc = Complex::new(BigReal::one(), BigReal::zero());
    for _ in 0..e.unsigned_abs() {
        acc = acc * base.clone();
    }
    acc
}

/// `exact_part * prod lead_j^{e_j}` with first-order error propagation.
///
/// When every leading coefficient is exact the product is computed in the
/// cyclotomic field and must come out rational.
pub fn combine_leading_values(
    exact_part: BigRational,
    leads: &[(LeadingValue, i64)],
    digits: u32,
) -> Result<SpecialValue> {
    let bits = working_bits(digits);
    let order = leads.iter().map(|(l, e)| l.order as i64 * e).sum();

    if leads.iter().all(|(l, _)| l.exact.is_some()) {
        let mut acc = CyclotomicNumber::rational(1, exact_part.clone());
        for (l, e) in leads {
            let c = l.exact.as_ref().unwrap();
            let p = c
                .pow(*e)
                .ok_or_else(|| Error::Internal("zero leading coefficient".into()))?;
            acc = acc.mul(&p);
        }
        let Some(x) = acc.as_rational() else {
            return Err(Error::NotRational(acc.to_string()));
        };
        let value = BigReal::from_rational(&x, bits);
        let error = value.abs() * BigReal::epsilon(bits - 8);
        return Ok(SpecialValue {
            order,
            exact: Some(x),
            numeric: Approx { value, error },
            digits,
        });
    }

    let mut z = Complex::new(BigReal::from_rational(&exact_part, bits), BigReal::zero());
    let mut rel = BigReal::epsilon(bits - 16);
    for (l, e) in leads {
        let mag = complex_abs(&l.value);
        if mag.is_zero() {
            return Err(Error::Internal("zero leading coefficient".into()));
        }
        z = z * cpow(&l.value, *e);
        rel = rel + l.error.clone() / mag * BigReal::from_i64(2 * e.abs(), 64);
    }
    let mag = complex_abs(&z);
    let error = mag.clone() * rel;
    if z.im.abs() > error.clone() * BigReal::from_i64(4, 64) {
        return Err(Error::Internal(format!(
            "leading coefficient has imaginary part {} beyond its error bound",
            z.im.to_sci_string(5)
        )));
    }
    let tolerance = BigReal::from_rational(
        &BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize)),
        bits,
    ) * mag;
    if error > tolerance {
        return Err(Error::PrecisionUnderflow {
            requested: digits,
            achieved: error.log10_ceil().unwrap_or(0),
        });
    }
    Ok(SpecialValue {
        order,
        exact: None,
        numeric: Approx { value: z.re, error },
        digits,
    })
}
