//! Zeta functions as formal products of rational functions in `t = q^{-s}`
//! and shifted Dirichlet L-functions, with orders and leading coefficients
//! at negative integers.

mod value;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::lfunctions::{leading_value, trivial_zero_order, DirichletCharacter};
use crate::poly::{series_quotient, Poly};

pub use value::{combine_leading_values, SpecialValue};

type ZPoly = Poly<BigInt>;

/// `num(t) / den(t)` with integer coefficients, nonzero constant terms,
/// coprime contents and a positive denominator constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFunctionT {
    num: ZPoly,
    den: ZPoly,
}

impl RationalFunctionT {
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self> {
        if num.coeff(0).is_zero() || den.coeff(0).is_zero() {
            return Err(Error::InvalidArgument(
                "numerator and denominator need nonzero constant terms".into(),
            ));
        }
        let content = |p: &ZPoly| p.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut g = content(&num).gcd(&content(&den));
        if den.coeff(0).is_negative() {
            g = -g;
        }
        let div = |p: &ZPoly| Poly::new(p.coeffs().iter().map(|c| c / &g).collect());
        Ok(RationalFunctionT {
            num: div(&num),
            den: div(&den),
        })
    }

    pub fn polynomial(p: ZPoly) -> Result<Self> {
        Self::new(p, Poly::one())
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    /// Exact value at a rational point; `None` at a pole.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let lift = |p: &ZPoly| p.map(|c| BigRational::from_integer(c.clone()));
        let d = lift(&self.den).eval(t);
        if d.is_zero() {
            return None;
        }
        Some(lift(&self.num).eval(t) / d)
    }

    /// Taylor coefficients up to `t^order`.
    pub fn power_series(&self, order: usize) -> Vec<BigRational> {
        let lift = |p: &ZPoly| -> Vec<BigRational> {
            p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        series_quotient(&lift(&self.num), &lift(&self.den), order)
            .expect("denominator has a nonzero constant term")
    }
}

impl fmt::Display for RationalFunctionT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// `Z(t)` over the base `q`, read through `t = q^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteCharFactor {
    #[serde(serialize_with = "crate::ser::display")]
    q: BigInt,
    z: RationalFunctionT,
}

impl FiniteCharFactor {
    pub fn new(q: BigInt, z: RationalFunctionT) -> Result<Self> {
        if prime_power(&q).is_none() {
            return Err(Error::NotPrimePower(q.to_string()));
        }
        Ok(FiniteCharFactor { q, z })
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn z(&self) -> &RationalFunctionT {
        &self.z
    }
}

/// Exact Taylor coefficients of `f.Z(t)` up to `t^order`.
pub fn power_series(f: &FiniteCharFactor, order: usize) -> Vec<BigRational> {
    f.z.power_series(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LKind {
    Riemann,
    /// A nontrivial primitive character.
    Dirichlet(DirichletCharacter),
}

impl LKind {
    pub fn character(&self) -> DirichletCharacter {
        match self {
            LKind::Riemann => DirichletCharacter::trivial(1),
            LKind::Dirichlet(chi) => chi.clone(),
        }
    }
}

/// `L(s - shift, chi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LFactorShifted {
    pub kind: LKind,
    pub shift: u32,
}

impl LFactorShifted {
    /// Canonical factor for `L(s - shift, chi)`: the character is replaced by
    /// its primitive core and the trivial character becomes `Riemann`.
    pub fn new(chi: &DirichletCharacter, shift: u32) -> Self {
        let chi = chi.primitive();
        let kind = if chi.is_trivial() {
            LKind::Riemann
        } else {
            LKind::Dirichlet(chi)
        };
        LFactorShifted { kind, shift }
    }

    pub fn riemann(shift: u32) -> Self {
        LFactorShifted {
            kind: LKind::Riemann,
            shift,
        }
    }
}

impl fmt::Display for LFactorShifted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.shift {
            0 => "s".to_string(),
            k => format!("s-{k}"),
        };
        match &self.kind {
            LKind::Riemann => write!(f, "zeta({s})"),
            LKind::Dirichlet(chi) => write!(f, "L({s}, {chi})"),
        }
    }
}

/// Formal product `prod P_j(t)^{e_j} * prod L(s - k, chi)^{e}` with every
/// stored exponent nonzero. Polynomials over different bases `q` are kept
/// apart.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZetaProduct {
    finite: BTreeMap<(BigInt, ZPoly), i64>,
    l_factors: BTreeMap<LFactorShifted, i64>,
}

fn bump<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, e: i64) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            if e != 0 {
                v.insert(e);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += e;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

impl ZetaProduct {
    /// The constant 1.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.finite.is_empty() && self.l_factors.is_empty()
    }

    /// `p(t)^e` over `q`. Constant polynomial 1 is dropped.
    pub fn finite_poly(q: &BigInt, p: ZPoly, e: i64) -> Self {
        let mut z = Self::one();
        if !p.is_one() {
            bump(&mut z.finite, (q.clone(), p), e);
        }
        z
    }

    pub fn from_factor(f: &FiniteCharFactor, e: i64) -> Self {
        Self::finite_poly(&f.q, f.z.num.clone(), e)
            .multiply(&Self::finite_poly(&f.q, f.z.den.clone(), -e))
    }

    pub fn l_factor(factor: LFactorShifted, e: i64) -> Self {
        let mut z = Self::one();
        bump(&mut z.l_factors, factor, e);
        z
    }

    pub fn riemann() -> Self {
        Self::l_factor(LFactorShifted::riemann(0), 1)
    }

    pub fn dirichlet(chi: &DirichletCharacter) -> Self {
        Self::l_factor(LFactorShifted::new(chi, 0), 1)
    }

    pub fn finite_factors(&self) -> impl Iterator<Item = (&BigInt, &ZPoly, i64)> {
        self.finite.iter().map(|((q, p), e)| (q, p, *e))
    }

    pub fn l_factors(&self) -> impl Iterator<Item = (&LFactorShifted, i64)> {
        self.l_factors.iter().map(|(f, e)| (f, *e))
    }

    pub fn has_char_zero(&self) -> bool {
        !self.l_factors.is_empty()
    }

    pub fn bases(&self) -> BTreeSet<BigInt> {
        self.finite.keys().map(|(q, _)| q.clone()).collect()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in &other.finite {
            bump(&mut out.finite, k.clone(), *e);
        }
        for (k, e) in &other.l_factors {
            bump(&mut out.l_factors, k.clone(), *e);
        }
        out
    }

    pub fn pow(&self, e: i64) -> Self {
        ZetaProduct {
            finite: self.finite.iter().filter(|_| e != 0).map(|(k, v)| (k.clone(), v * e)).collect(),
            l_factors: self.l_factors.iter().filter(|_| e != 0).map(|(k, v)| (k.clone(), v * e)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    pub fn divide(&self, other: &Self) -> Self {
        self.multiply(&other.inverse())
    }

    /// `zeta(s - r)`: `t -> q^r t` on finite factors, shifts bumped by `r`.
    pub fn shift_s(&self, r: u32) -> Self {
        let mut out = Self::one();
        for ((q, p), e) in &self.finite {
            let c = num_traits::pow(q.clone(), r as usize);
            bump(&mut out.finite, (q.clone(), p.scale_var(&c)), *e);
        }
        for (f, e) in &self.l_factors {
            let g = LFactorShifted {
                kind: f.kind.clone(),
                shift: f.shift + r,
            };
            bump(&mut out.l_factors, g, *e);
        }
        out
    }

    /// The finite part over `q` collected into one rational function.
    pub fn rational_function(&self, q: &BigInt) -> RationalFunctionT {
        let mut num = Poly::one();
        let mut den = Poly::one();
        for ((b, p), e) in &self.finite {
            if b != q {
                continue;
            }
            if *e > 0 {
                num = num * p.pow(*e as u32);
            } else {
                den = den * p.pow(e.unsigned_abs() as u32);
            }
        }
        RationalFunctionT::new(num, den).expect("stored polynomials have nonzero constant terms")
    }

    /// The single base `q` of a purely finite-characteristic product.
    pub fn single_base(&self) -> Result<Option<BigInt>> {
        if self.has_char_zero() {
            return Err(Error::CharZeroAtom);
        }
        let bases = self.bases();
        let mut it = bases.iter();
        match (it.next(), it.next()) {
            (None, _) => Ok(None),
            (Some(q), None) => Ok(Some(q.clone())),
            (Some(a), Some(b)) => Err(Error::MixedBase(a.to_string(), b.to_string())),
        }
    }

    /// Exact product of the finite factors at `t = q^{-n}`.
    pub fn finite_value_at(&self, n: i64) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for ((q, p), e) in &self.finite {
            let t = crate::arith::rational_pow(q, -n);
            let v = p.map(|c| BigRational::from_integer(c.clone())).eval(&t);
            if v.is_zero() {
                return Err(Error::WeilViolation {
                    q: q.to_string(),
                    exponent: -n,
                });
            }
            acc *= num_traits::pow::Pow::pow(v, *e);
        }
        Ok(acc)
    }

    /// `ord_{s=n}` for `n < 0`: only trivial zeros of L-factors contribute.
    pub fn order_at(&self, n: i64) -> Result<i64> {
        check_negative(n)?;
        Ok(self
            .l_factors
            .iter()
            .map(|(f, e)| e * trivial_zero_order(&f.kind.character(), n - f.shift as i64) as i64)
            .sum())
    }

    /// Order and leading Taylor coefficient at `s = n < 0`.
    pub fn evaluate_at(&self, n: i64, digits: u32) -> Result<SpecialValue> {
        check_negative(n)?;
        let exact = self.finite_value_at(n)?;
        let leads = self
            .l_factors
            .iter()
            .map(|(f, e)| leading_value(&f.kind.character(), n - f.shift as i64, digits).map(|l| (l, *e)))
            .collect::<Result<Vec<_>>>()?;
        combine_leading_values(exact, &leads, digits)
    }
}

fn check_negative(n: i64) -> Result<()> {
    if n >= 0 {
        return Err(Error::InvalidArgument(format!("n = {n} must be a negative integer")));
    }
    Ok(())
}

impl fmt::Display for ZetaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for ((q, p), e) in &self.finite {
            let base = format!("({p})[q={q}]");
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        for (l, e) in &self.l_factors {
            parts.push(if *e == 1 { l.to_string() } else { format!("{l}^{e}") });
        }
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Serialize)]
struct FiniteEntry {
    q: String,
    poly: ZPoly,
    exponent: i64,
}

#[derive(Serialize)]
struct LEntry {
    character: String,
    shift: u32,
    exponent: i64,
}

impl Serialize for ZetaProduct {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            finite: Vec<FiniteEntry>,
            l_factors: Vec<LEntry>,
        }
        Repr {
            finite: self
                .finite
                .iter()
                .map(|((q, p), e)| FiniteEntry {
                    q: q.to_string(),
                    poly: p.clone(),
                    exponent: *e,
                })
                .collect(),
            l_factors: self
                .l_factors
                .iter()
                .map(|(l, e)| LEntry {
                    character: l.kind.character().to_string(),
                    shift: l.shift,
                    exponent: *e,
                })
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        Poly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn two() -> BigInt {
        BigInt::from(2)
    }

    fn geometric(q: i64) -> ZetaProduct {
        ZetaProduct::finite_poly(&BigInt::from(q), zp(&[1, -1]), -1)
    }

    #[test]
    fn multiply_identity_and_cancellation() {
        let a = geometric(2).multiply(&ZetaProduct::riemann());
        assert_eq!(a.multiply(&ZetaProduct::one()), a);
        assert!(a.multiply(&a.inverse()).is_one());
    }

    #[test]
    fn projective_line_over_q() {
        let z = geometric(2).multiply(&geometric(2).shift_s(1));
        let rf = z.rational_function(&two());
        assert_eq!(rf.numerator(), &zp(&[1]));
        assert_eq!(rf.denominator(), &zp(&[1, -3, 2]));
    }

    #[test]
    fn shifts() {
        assert_eq!(geometric(2).shift_s(1), ZetaProduct::finite_poly(&two(), zp(&[1, -2]), -1));
        assert_eq!(geometric(2).shift_s(0), geometric(2));
        let z = ZetaProduct::riemann().shift_s(2);
        assert_eq!(z.l_factors().next().unwrap().0, &LFactorShifted::riemann(2));
    }

    #[test]
    fn evaluation_examples() {
        let v = geometric(2).evaluate_at(-1, 30).unwrap();
        assert_eq!((v.order, v.exact.clone()), (0, Some(r(-1, 1))));
        let p1 = geometric(2).multiply(&geometric(2).shift_s(1));
        assert_eq!(p1.evaluate_at(-1, 30).unwrap().exact, Some(r(1, 3)));
        let v = ZetaProduct::riemann().evaluate_at(-2, 50).unwrap();
        assert_eq!(v.order, 1);
        assert!(v.exact.is_none());
        assert_eq!(v.numeric.value.to_sci_string(21), "-3.04484570583932707803e-2");
    }

    #[test]
    fn weil_violation_detected() {
        // 1 - t/2 vanishes at t = 2 = 2^{-(-1)}
        let z = ZetaProduct::finite_poly(&two(), zp(&[2, -1]), 1);
        let err = z.evaluate_at(-1, 20).unwrap_err();
        assert_eq!(err.code(), "weil-violation");
    }

    #[test]
    fn power_series_examples() {
        let q = two();
        let f = |num: &[i64], den: &[i64]| {
            FiniteCharFactor::new(q.clone(), RationalFunctionT::new(zp(num), zp(den)).unwrap()).unwrap()
        };
        let ints = |v: &[i64]| v.iter().map(|&x| r(x, 1)).collect::<Vec<_>>();
        assert_eq!(power_series(&f(&[1], &[1, -1]), 3), ints(&[1, 1, 1, 1]));
        assert_eq!(power_series(&f(&[1], &[1, -2]), 3), ints(&[1, 2, 4, 8]));
        assert_eq!(power_series(&f(&[1, 0, 2], &[1, -3, 2]), 2), ints(&[1, 3, 9]));
    }

    #[test]
    fn rational_function_normalization() {
        let rf = RationalFunctionT::new(zp(&[-2, 4]), zp(&[-6, 2])).unwrap();
        assert_eq!(rf.numerator(), &zp(&[1, -2]));
        assert_eq!(rf.denominator(), &zp(&[3, -1]));
        assert!(RationalFunctionT::new(zp(&[0, 1]), zp(&[1])).is_err());
    }

    #[test]
    fn mixed_bases_rejected() {
        let z = geometric(2).multiply(&geometric(3));
        assert_eq!(z.single_base().unwrap_err().code(), "mixed-base");
        assert_eq!(ZetaProduct::riemann().single_base().unwrap_err().code(), "char-zero-atom");
    }
}
