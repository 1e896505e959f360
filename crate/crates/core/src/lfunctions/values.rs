use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{bernoulli_poly, AbelianFieldSpec, CyclotomicNumber, DirichletCharacter};
use crate::error::{Error, Result};
use crate::numeric::{dirichlet_series_at_integer, digits_to_bits, root_of_unity, BigReal, RealScalar, SeriesPlan};
use crate::zetarep::{combine_leading_values, SpecialValue};

/// Guard bits carried beyond the requested decimal precision.
pub(crate) const GUARD_BITS: usize = 96;

pub(crate) fn working_bits(digits: u32) -> usize {
    digits_to_bits(digits) + GUARD_BITS
}

/// `B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f)`, computed for the
/// primitive character inducing `chi`.
pub fn gen_bernoulli(chi: &DirichletCharacter, k: u32) -> CyclotomicNumber {
    assert!(k >= 1, "generalized Bernoulli numbers start at k = 1");
    let chi = chi.primitive();
    let f = chi.modulus();
    let bk = bernoulli_poly(k as usize);
    let fq = BigRational::from_integer(BigInt::from(f));
    let mut acc = CyclotomicNumber::zero(chi.order());
    for a in 1..=f {
        if chi.exponent(a as i64).is_none() {
            continue;
        }
        let x = BigRational::new(BigInt::from(a), BigInt::from(f));
        acc = acc.add(&chi.value(a as i64).scale(&bk.eval(&x)));
    }
    acc.scale(&num_traits::pow(fq, (k - 1) as usize))
}

/// `L(n, chi) = -B_{1-n, chi} / (1 - n)` for `n <= 0`.
pub fn l_at_nonpositive(chi: &DirichletCharacter, n: i64) -> CyclotomicNumber {
    assert!(n <= 0, "L-values here are for nonpositive integers");
    let k = (1 - n) as u32;
    gen_bernoulli(chi, k).scale(&BigRational::new(BigInt::from(-1), BigInt::from(k)))
}

/// Order of the trivial zero of `L(s, chi)` at `s = n < 0`: 1 when
/// `chi(-1) = (-1)^n`, else 0.
pub fn trivial_zero_order(chi: &DirichletCharacter, n: i64) -> u32 {
    assert!(n < 0, "trivial zeros are at negative integers");
    let chi = chi.primitive();
    let parity_says = chi.parity() as i64 == n.rem_euclid(2);
    debug_assert_eq!(
        parity_says,
        l_at_nonpositive(&chi, n).is_zero(),
        "parity rule disagrees with the Bernoulli value for {chi:?} at {n}"
    );
    u32::from(parity_says)
}

/// `ord_{s=n} zeta_F(s)`, checked against `r2` (n odd) or `r1 + r2` (n even).
pub fn dedekind_order(field: &AbelianFieldSpec, n: i64) -> Result<i64> {
    let chars = field.characters()?;
    let order: i64 = chars.iter().map(|c| trivial_zero_order(c, n) as i64).sum();
    let (r1, r2) = field.signature()?;
    let expected = if n % 2 == 0 { r1 + r2 } else { r2 } as i64;
    if order != expected {
        return Err(Error::Internal(format!(
            "trivial-zero count {order} disagrees with the signature prediction {expected}"
        )));
    }
    Ok(order)
}

/// Leading Taylor coefficient of `L(s, chi)` at a negative integer.
#[derive(Clone, Debug)]
pub struct LeadingValue {
    pub order: u32,
    /// Exact value when `order == 0`.
    pub exact: Option<CyclotomicNumber>,
    pub value: Complex<BigReal>,
    /// Bound on `|value - true value|`.
    pub error: BigReal,
}

/// Gauss sum `sum_{a=1}^{f} chi(a) e^{2 pi i a / f}`.
pub fn gauss_sum(chi: &DirichletCharacter, bits: usize) -> Complex<BigReal> {
    let f = chi.modulus();
    let mut acc = Complex::new(BigReal::zero(), BigReal::zero());
    for a in 1..=f {
        let Some(k) = chi.exponent(a as i64) else {
            continue;
        };
        let v: Complex<BigReal> = root_of_unity(k as i64, chi.order(), bits);
        let w: Complex<BigReal> = root_of_unity(a as i64, f, bits);
        acc = acc + v * w;
    }
    acc
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

pub(crate) fn complex_abs(z: &Complex<BigReal>) -> BigReal {
    (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt()
}

/// Leading coefficient of `L(s, chi)` at `s = n < 0` to `digits` decimal digits.
///
/// Without a trivial zero the value is the exact Bernoulli value. At a trivial
/// zero the derivative comes from the functional equation
/// `Lambda(s, chi) = W(chi) Lambda(1 - s, conj chi)`, which expresses
/// `L'(n, chi)` through `L(1 - n, conj chi)` at a point of absolute convergence.
pub fn leading_value(chi: &DirichletCharacter, n: i64, digits: u32) -> Result<LeadingValue> {
    if n >= 0 {
        return Err(Error::InvalidArgument(format!("n = {n} is not negative")));
    }
    let chi = chi.primitive();
    let bits = working_bits(digits);
    let order = trivial_zero_order(&chi, n);
    if order == 0 {
        let exact = l_at_nonpositive(&chi, n);
        let value = exact.to_complex::<BigReal>(bits);
        let error = complex_abs(&value) * BigReal::epsilon(bits - 16);
        return Ok(LeadingValue {
            order,
            exact: Some(exact),
            value,
            error,
        });
    }

    let f = chi.modulus();
    let a = chi.parity() as i64;
    let m = (-(n + a) / 2) as u64;
    let j = m + a as u64;
    // L'(n) = tau(chi) / i^a * L(1-n, conj chi) * c / pi^{j+m}
    // with c = f^{j+m} (2j)! (-1)^m m! / (2 * 4^j * j!)
    let mut c = BigRational::new(
        num_traits::pow(BigInt::from(f), (j + m) as usize) * factorial(2 * j) * factorial(m),
        BigInt::from(2) * num_traits::pow(BigInt::from(4), j as usize) * factorial(j),
    );
    if m % 2 == 1 {
        c = -c;
    }
    let pi_pow = BigReal::pi(bits).pow_int((j + m) as i64);
    let scale = BigReal::from_rational(&c, bits) / pi_pow;

    let tau = gauss_sum(&chi, bits);
    // divide by i^a: multiply by (-i)^a
    let tau = if a == 1 {
        Complex::new(tau.im.clone(), -tau.re.clone())
    } else {
        tau
    };

    let conj = chi.conj();
    let values: Vec<(u64, Complex<BigReal>)> = (1..=f)
        .filter_map(|b| {
            conj.exponent(b as i64)
                .map(|k| (b, root_of_unity(k as i64, conj.order(), bits)))
        })
        .collect();
    let plan = SeriesPlan::for_digits(digits + 10);
    let (l_dual, l_err) = dirichlet_series_at_integer::<BigReal>(f, &values, 1 - n, plan, bits);

    let prod = tau.clone() * l_dual;
    let value = Complex::new(prod.re * scale.clone(), prod.im * scale.clone());
    let error = (complex_abs(&tau) * l_err + complex_abs(&value) * BigReal::epsilon(bits - 32))
        * scale.abs();

    let magnitude = complex_abs(&value);
    let tolerance = BigReal::from_rational(
        &BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize)),
        bits,
    ) * magnitude;
    if error > tolerance {
        return Err(Error::PrecisionUnderflow {
            requested: digits,
            achieved: error.log10_ceil().unwrap_or(0),
        });
    }
    Ok(LeadingValue {
        order,
        exact: None,
        value,
        error,
    })
}

/// `zeta_F^*(n)`: order from trivial zeros, value the product of the
/// per-character leading coefficients.
pub fn dedekind_special_value(field: &AbelianFieldSpec, n: i64, digits: u32) -> Result<SpecialValue> {
    let order = dedekind_order(field, n)?;
    let leads = field
        .characters()?
        .iter()
        .map(|chi| leading_value(chi, n, digits).map(|l| (l, 1)))
        .collect::<Result<Vec<_>>>()?;
    let v = combine_leading_values(BigRational::one(), &leads, digits)?;
    if v.order != order {
        return Err(Error::Internal("order bookkeeping mismatch".into()));
    }
    if order == 0 && v.exact.is_none() {
        return Err(Error::NotRational(format!("zeta_F({n}) for {field:?}")));
    }
    Ok(v)
}
