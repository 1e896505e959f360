//! Finite-characteristic checks: the special-value identity over `F_q`, the
//! trace formula against point counts, l-adic absolute values and the
//! triviality of the p-part.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::arith::{abs_rational, is_prime, prime_power};
use crate::error::{Error, Result};
use crate::intlinalg::{prime_part, rational_valuation};
use crate::poly::{series_exp_of_log_counts, Poly};
use crate::scheme_algebra::{weil_order_data, zeta_of, SchemeExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportContext {
    pub expr: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub left: String,
    pub right: String,
    pub verdict: Verdict,
    pub context: ReportContext,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn compare<T: PartialEq + ToString>(claim: &str, left: T, right: T, context: ReportContext) -> Self {
        VerificationReport {
            claim: claim.into(),
            verdict: Verdict::from_bool(left == right),
            left: left.to_string(),
            right: right.to_string(),
            context,
        }
    }
}

fn context(e: &SchemeExpr, n: Option<i64>) -> ReportContext {
    ReportContext {
        expr: e.to_string(),
        n,
        ..ReportContext::default()
    }
}

fn bases(e: &SchemeExpr, out: &mut BTreeSet<BigInt>) -> Result<()> {
    match e {
        SchemeExpr::Point { q, .. } | SchemeExpr::Curve { q, .. } => {
            out.insert(q.clone());
        }
        SchemeExpr::NumberRing(_) => return Err(Error::CharZeroAtom),
        _ => {
            for c in e.children() {
                bases(c, out)?;
            }
        }
    }
    Ok(())
}

/// The unique base `q` of a finite-characteristic expression (`None` for an
/// expression without atoms).
pub fn single_base(e: &SchemeExpr) -> Result<Option<BigInt>> {
    let mut qs = BTreeSet::new();
    bases(e, &mut qs)?;
    let mut it = qs.into_iter();
    match (it.next(), it.next()) {
        (a, None) => Ok(a),
        (Some(a), Some(b)) => Err(Error::MixedBase(a.to_string(), b.to_string())),
        (None, Some(_)) => unreachable!(),
    }
}

/// The unique characteristic `p` of a finite-characteristic expression.
pub fn characteristic(e: &SchemeExpr) -> Result<Option<BigInt>> {
    let mut qs = BTreeSet::new();
    bases(e, &mut qs)?;
    let ps: BTreeSet<BigInt> = qs
        .iter()
        .map(|q| prime_power(q).expect("validated base").0)
        .collect();
    let mut it = ps.into_iter();
    match (it.next(), it.next()) {
        (a, None) => Ok(a),
        (Some(a), Some(b)) => Err(Error::MixedBase(a.to_string(), b.to_string())),
        (None, Some(_)) => unreachable!(),
    }
}

/// Exact `zeta(X, n)` for a finite-characteristic expression.
pub fn finite_zeta_value(e: &SchemeExpr, n: i64) -> Result<BigRational> {
    if e.contains_number_ring() {
        return Err(Error::CharZeroAtom);
    }
    if n >= 0 {
        return Err(Error::InvalidArgument(format!("n = {n} must be a negative integer")));
    }
    zeta_of(e)?.finite_value_at(n)
}

/// `|zeta(X, n)| = prod |H^i(X_et, Z^c(n))|^{(-1)^i}`.
pub fn verify_c_finite_char(e: &SchemeExpr, n: i64) -> Result<VerificationReport> {
    let z = finite_zeta_value(e, n)?;
    let w = weil_order_data(e, n)?;
    Ok(VerificationReport::compare(
        "special-value-finite-field",
        abs_rational(&z),
        w.chi_mult,
        context(e, Some(n)),
    ))
}

/// Power sums `s_k` of the reciprocal roots of `P(t) = 1 + c_1 t + ...`
/// for `k = 1..=count`, from Newton's identities.
pub fn reciprocal_root_power_sums(p: &Poly<BigInt>, count: usize) -> Result<Vec<BigInt>> {
    if !p.coeff(0).is_one() {
        return Err(Error::InvalidArgument(format!(
            "L-polynomial {p} must have constant term 1"
        )));
    }
    let c = |j: usize| p.coeff(j);
    let mut s: Vec<BigInt> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc = -BigInt::from(k) * c(k);
        for j in 1..k {
            acc -= c(j) * &s[k - j - 1];
        }
        s.push(acc);
    }
    Ok(s)
}

fn count_with_base(e: &SchemeExpr, q: &BigInt, k: u32) -> Result<BigInt> {
    let qk = |r: u32| num_traits::pow(q.clone(), (r * k) as usize);
    Ok(match e {
        SchemeExpr::Point { m, .. } => {
            if k % m == 0 {
                BigInt::from(*m)
            } else {
                BigInt::zero()
            }
        }
        SchemeExpr::Curve { p, .. } => {
            let s = reciprocal_root_power_sums(p, k as usize)?;
            qk(1) + BigInt::one() - &s[k as usize - 1]
        }
        SchemeExpr::NumberRing(_) => return Err(Error::CharZeroAtom),
        SchemeExpr::Disjoint(cs) => {
            let mut acc = BigInt::zero();
            for c in cs {
                acc += count_with_base(c, q, k)?;
            }
            acc
        }
        SchemeExpr::Glue(z, u) => count_with_base(z, q, k)? + count_with_base(u, q, k)?,
        SchemeExpr::Minus(x, z) => count_with_base(x, q, k)? - count_with_base(z, q, k)?,
        SchemeExpr::Affine(r, x) => qk(*r) * count_with_base(x, q, k)?,
        SchemeExpr::Proj(..) | SchemeExpr::Cellular(..) => {
            let (b, ranks) = e.strata().unwrap();
            let base = count_with_base(b, q, k)?;
            ranks.iter().map(|&r| qk(r) * &base).sum()
        }
    })
}

/// `#X(F_{q^k})`.
pub fn point_count(e: &SchemeExpr, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    match single_base(e)? {
        Some(q) => count_with_base(e, &q, k),
        None => Ok(BigInt::zero()),
    }
}

fn render_series(xs: &[BigRational]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Taylor coefficients of `Z(X, t)` against `exp(sum_{k<=K} N_k t^k / k)`.
pub fn trace_formula_check(e: &SchemeExpr, order: usize) -> Result<VerificationReport> {
    let q = single_base(e)?;
    let zeta = zeta_of(e)?;
    let series = match &q {
        Some(q) => zeta.rational_function(q).power_series(order),
        None => {
            let mut v = vec![BigRational::zero(); order + 1];
            v[0] = BigRational::one();
            v
        }
    };
    let counts = (1..=order as u32)
        .map(|k| point_count(e, k).map(BigRational::from_integer))
        .collect::<Result<Vec<_>>>()?;
    let exp = series_exp_of_log_counts(&counts, order);
    let mut ctx = context(e, None);
    ctx.series_order = Some(order);
    Ok(VerificationReport {
        claim: "trace-formula".into(),
        verdict: Verdict::from_bool(series == exp),
        left: render_series(&series),
        right: render_series(&exp),
        context: ctx,
    })
}

/// `|x|_l = l^{-v_l(x)}`.
pub fn ell_abs(x: &BigRational, ell: &BigInt) -> Result<BigRational> {
    let v = rational_valuation(x, ell)?;
    Ok(Pow::pow(BigRational::from_integer(ell.clone()), -v as i32))
}

fn check_ell(e: &SchemeExpr, ell: &BigInt) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell.to_string()));
    }
    if characteristic(e)?.as_ref() == Some(ell) {
        return Err(Error::InvalidArgument(format!(
            "l = {ell} equals the characteristic"
        )));
    }
    Ok(())
}

/// `|zeta(X, n)|_l = prod_i |H^i|_l-part^{(-1)^{i+1}}` using per-degree orders.
pub fn ell_adic_check(e: &SchemeExpr, n: i64, ell: &BigInt) -> Result<VerificationReport> {
    check_ell(e, ell)?;
    let z = finite_zeta_value(e, n)?;
    let w = weil_order_data(e, n)?;
    let graded = w
        .graded
        .ok_or_else(|| Error::GradedUnavailable(e.to_string()))?;
    let mut right = BigRational::one();
    for (i, o) in &graded {
        let part = BigRational::from_integer(prime_part(o, ell));
        right *= if i.rem_euclid(2) == 0 { part.recip() } else { part };
    }
    let mut ctx = context(e, Some(n));
    ctx.primes = vec![ell.to_string()];
    Ok(VerificationReport::compare("ell-adic", ell_abs(&z, ell)?, right, ctx))
}

/// `v_p(zeta(X, n)) = 0` for the characteristic `p`.
pub fn p_part_check(e: &SchemeExpr, n: i64) -> Result<VerificationReport> {
    let z = finite_zeta_value(e, n)?;
    let p = characteristic(e)?
        .ok_or_else(|| Error::InvalidArgument("expression has no base field".into()))?;
    let v = rational_valuation(&z, &p)?;
    let mut ctx = context(e, Some(n));
    ctx.primes = vec![p.to_string()];
    Ok(VerificationReport::compare("p-part", v, 0, ctx))
}

/// `zeta(X, n)` up to sign rebuilt from the l-parts of `chi_x` for primes
/// `l <= bound`, `l != p`; `None` if some prime factor exceeds the bound.
pub fn reconstruct_from_ell_parts(e: &SchemeExpr, n: i64, bound: u64) -> Result<Option<BigRational>> {
    let w = weil_order_data(e, n)?;
    let p = characteristic(e)?;
    let mut acc = BigRational::one();
    let mut num = w.chi_mult.numer().abs();
    let mut den = w.chi_mult.denom().clone();
    for ell in crate::arith::primes_up_to(bound) {
        let ell = BigInt::from(ell);
        if p.as_ref() == Some(&ell) {
            continue;
        }
        let a = prime_part(&num, &ell);
        let b = prime_part(&den, &ell);
        num = num.div_floor(&a);
        den = den.div_floor(&b);
        acc *= BigRational::new(a, b);
    }
    Ok((num.is_one() && den.is_one()).then_some(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(q: i64, m: u32) -> SchemeExpr {
        SchemeExpr::point(q, m).unwrap()
    }

    fn curve() -> SchemeExpr {
        SchemeExpr::curve(2, &[1, 0, 2]).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn special_value_examples() {
        let r = verify_c_finite_char(&pt(3, 1), -2).unwrap();
        assert!(r.passed());
        assert_eq!(r.left, "1/8");
        let r = verify_c_finite_char(&SchemeExpr::nodal_cubic(2).unwrap(), -1).unwrap();
        assert!(r.passed());
        assert_eq!(r.right, "1/3");
        let r = verify_c_finite_char(&SchemeExpr::proj(1, pt(2, 1)), -1).unwrap();
        assert!(r.passed());
        let r = verify_c_finite_char(&curve(), -1).unwrap();
        assert_eq!((r.left.as_str(), r.right.as_str(), r.verdict), ("3", "3", Verdict::Pass));
        let err = verify_c_finite_char(&SchemeExpr::number_ring(crate::lfunctions::AbelianFieldSpec::rationals()), -1);
        assert_eq!(err.unwrap_err().code(), "char-zero-atom");
    }

    #[test]
    fn point_count_examples() {
        assert_eq!(point_count(&pt(2, 2), 1).unwrap(), b(0));
        assert_eq!(point_count(&pt(2, 2), 2).unwrap(), b(2));
        assert_eq!(point_count(&curve(), 1).unwrap(), b(3));
        assert_eq!(point_count(&curve(), 2).unwrap(), b(9));
        assert_eq!(point_count(&SchemeExpr::affine(1, pt(2, 1)), 3).unwrap(), b(8));
        let mixed = SchemeExpr::disjoint(vec![pt(2, 1), pt(3, 1)]);
        assert_eq!(point_count(&mixed, 1).unwrap_err().code(), "mixed-base");
    }

    #[test]
    fn trace_formula_examples() {
        assert!(trace_formula_check(&pt(2, 1), 5).unwrap().passed());
        assert!(trace_formula_check(&SchemeExpr::nodal_cubic(2).unwrap(), 6).unwrap().passed());
        assert!(trace_formula_check(&curve(), 4).unwrap().passed());
        assert!(trace_formula_check(&SchemeExpr::disjoint(vec![]), 3).unwrap().passed());
    }

    #[test]
    fn ell_adic_examples() {
        let r = ell_adic_check(&pt(3, 1), -2, &b(2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.left, "8");
        assert!(ell_adic_check(&pt(2, 1), -1, &b(3)).unwrap().passed());
        let r = ell_adic_check(&SchemeExpr::proj(1, pt(2, 1)), -1, &b(3)).unwrap();
        assert!(r.passed());
        assert_eq!(r.right, "3");
        let glue = SchemeExpr::nodal_cubic(2).unwrap();
        assert_eq!(ell_adic_check(&glue, -1, &b(3)).unwrap_err().code(), "graded-data-unavailable");
        assert_eq!(ell_adic_check(&pt(2, 1), -1, &b(2)).unwrap_err().code(), "invalid-argument");
        assert_eq!(ell_adic_check(&pt(2, 1), -1, &b(4)).unwrap_err().code(), "not-prime");
    }

    #[test]
    fn p_part_examples() {
        let r = p_part_check(&pt(2, 1), -3).unwrap();
        assert!(r.passed());
        assert!(p_part_check(&curve(), -1).unwrap().passed());
        assert!(p_part_check(&SchemeExpr::affine(2, pt(3, 1)), -1).unwrap().passed());
        assert_eq!(
            finite_zeta_value(&SchemeExpr::affine(2, pt(3, 1)), -1).unwrap(),
            BigRational::new(b(-1), b(26))
        );
    }

    #[test]
    fn newton_power_sums() {
        // P = (1 - 2t)(1 - 3t) = 1 - 5t + 6t^2, power sums 2^k + 3^k
        let p = Poly::new(vec![b(1), b(-5), b(6)]);
        let s = reciprocal_root_power_sums(&p, 4).unwrap();
        assert_eq!(s, vec![b(5), b(13), b(35), b(97)]);
    }

    #[test]
    fn reconstruction_from_ell_parts() {
        let e = SchemeExpr::proj(2, pt(2, 1));
        let z = finite_zeta_value(&e, -1).unwrap();
        let rebuilt = reconstruct_from_ell_parts(&e, -1, 50).unwrap().unwrap();
        assert_eq!(rebuilt, abs_rational(&z));
        assert_eq!(reconstruct_from_ell_parts(&e, -1, 5).unwrap(), None);
    }
}
