//! Expression calculus for schemes built from finite fields, curves over
//! finite fields and rings of integers of abelian fields, closed under
//! disjoint unions, closed-open decompositions, affine and projective bundles
//! and cellular constructions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{prime_power, rational_pow};
use crate::error::{Error, Result};
use crate::lfunctions::AbelianFieldSpec;
use crate::poly::Poly;
use crate::zetarep::ZetaProduct;

type ZPoly = Poly<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchemeExpr {
    /// `Spec F_{q^m}` over `F_q`.
    Point { q: BigInt, m: u32 },
    /// Smooth projective curve over `F_q` with `Z = P(t) / ((1 - t)(1 - qt))`.
    Curve { q: BigInt, p: ZPoly },
    /// `Spec O_F`.
    NumberRing(AbelianFieldSpec),
    Disjoint(Vec<SchemeExpr>),
    /// `X` assembled from a closed `Z` and its open complement `U`.
    Glue(Box<SchemeExpr>, Box<SchemeExpr>),
    /// `X \ Z` for a closed `Z` inside `X`.
    Minus(Box<SchemeExpr>, Box<SchemeExpr>),
    Affine(u32, Box<SchemeExpr>),
    Proj(u32, Box<SchemeExpr>),
    /// Disjoint strata `A^{r_j} x B`.
    Cellular(Box<SchemeExpr>, Vec<u32>),
}

fn check_q(q: &BigInt) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q.to_string()));
    }
    Ok(())
}

impl SchemeExpr {
    pub fn point(q: impl Into<BigInt>, m: u32) -> Result<Self> {
        let q = q.into();
        check_q(&q)?;
        if m == 0 {
            return Err(Error::InvalidArgument("point degree m must be at least 1".into()));
        }
        Ok(SchemeExpr::Point { q, m })
    }

    pub fn curve(q: impl Into<BigInt>, coeffs: &[i64]) -> Result<Self> {
        Self::curve_poly(q.into(), Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect()))
    }

    pub fn curve_poly(q: BigInt, p: ZPoly) -> Result<Self> {
        check_q(&q)?;
        Ok(SchemeExpr::Curve { q, p })
    }

    pub fn number_ring(field: AbelianFieldSpec) -> Self {
        SchemeExpr::NumberRing(field)
    }

    pub fn disjoint(children: Vec<SchemeExpr>) -> Self {
        SchemeExpr::Disjoint(children)
    }

    pub fn glue(z: SchemeExpr, u: SchemeExpr) -> Self {
        SchemeExpr::Glue(Box::new(z), Box::new(u))
    }

    pub fn minus(x: SchemeExpr, z: SchemeExpr) -> Self {
        SchemeExpr::Minus(Box::new(x), Box::new(z))
    }

    pub fn affine(r: u32, x: SchemeExpr) -> Self {
        SchemeExpr::Affine(r, Box::new(x))
    }

    pub fn proj(r: u32, x: SchemeExpr) -> Self {
        SchemeExpr::Proj(r, Box::new(x))
    }

    pub fn cellular(b: SchemeExpr, ranks: Vec<u32>) -> Self {
        SchemeExpr::Cellular(Box::new(b), ranks)
    }

    /// `P^1` over `F_q` minus a point glued back along a second point: the
    /// nodal cubic, with `zeta = 1 / (1 - q^{1-s})`.
    pub fn nodal_cubic(q: impl Into<BigInt>) -> Result<Self> {
        let pt = Self::point(q, 1)?;
        Ok(Self::glue(
            pt.clone(),
            Self::minus(Self::affine(1, pt.clone()), pt),
        ))
    }

    pub fn children(&self) -> Vec<&SchemeExpr> {
        match self {
            SchemeExpr::Point { .. } | SchemeExpr::Curve { .. } | SchemeExpr::NumberRing(_) => vec![],
            SchemeExpr::Disjoint(cs) => cs.iter().collect(),
            SchemeExpr::Glue(a, b) | SchemeExpr::Minus(a, b) => vec![a, b],
            SchemeExpr::Affine(_, x) | SchemeExpr::Proj(_, x) | SchemeExpr::Cellular(x, _) => vec![x],
        }
    }

    pub fn contains_number_ring(&self) -> bool {
        matches!(self, SchemeExpr::NumberRing(_)) || self.children().iter().any(|c| c.contains_number_ring())
    }

    /// Bundles as their strata `A^{r_j} x B`.
    pub fn strata(&self) -> Option<(&SchemeExpr, Vec<u32>)> {
        match self {
            SchemeExpr::Proj(r, b) => Some((b, (0..=*r).collect())),
            SchemeExpr::Cellular(b, ranks) => Some((b, ranks.clone())),
            _ => None,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

fn one_minus_t(q: &BigInt, c: BigInt, k: usize) -> ZetaProduct {
    ZetaProduct::finite_poly(q, Poly::one_minus(c, k), -1)
}

/// The zeta function of an expression as a formal product.
pub fn zeta_of(e: &SchemeExpr) -> Result<ZetaProduct> {
    Ok(match e {
        SchemeExpr::Point { q, m } => one_minus_t(q, BigInt::one(), *m as usize),
        SchemeExpr::Curve { q, p } => ZetaProduct::finite_poly(q, p.clone(), 1)
            .multiply(&one_minus_t(q, BigInt::one(), 1))
            .multiply(&one_minus_t(q, q.clone(), 1)),
        SchemeExpr::NumberRing(f) => f
            .characters()?
            .iter()
            .fold(ZetaProduct::one(), |z, chi| z.multiply(&ZetaProduct::dirichlet(chi))),
        SchemeExpr::Disjoint(cs) => {
            let mut z = ZetaProduct::one();
            for c in cs {
                z = z.multiply(&zeta_of(c)?);
            }
            z
        }
        SchemeExpr::Glue(z, u) => zeta_of(z)?.multiply(&zeta_of(u)?),
        SchemeExpr::Minus(x, z) => zeta_of(x)?.divide(&zeta_of(z)?),
        SchemeExpr::Affine(r, x) => zeta_of(x)?.shift_s(*r),
        SchemeExpr::Proj(..) | SchemeExpr::Cellular(..) => {
            let (b, ranks) = e.strata().unwrap();
            let base = zeta_of(b)?;
            ranks
                .iter()
                .fold(ZetaProduct::one(), |z, &r| z.multiply(&base.shift_s(r)))
        }
    })
}

/// Orders of the Weil-etale cohomology groups over a finite field at `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilOrderData {
    /// Degree to `|H^i|`, when the individual orders are known.
    #[serde(serialize_with = "serialize_graded")]
    pub graded: Option<BTreeMap<i64, BigInt>>,
    /// `chi_x = prod |H^i|^{(-1)^i}`.
    #[serde(serialize_with = "crate::ser::display")]
    pub chi_mult: BigRational,
}

fn serialize_graded<S: serde::Serializer>(
    g: &Option<BTreeMap<i64, BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match g {
        None => s.serialize_none(),
        Some(m) => s.collect_map(m.iter().map(|(i, o)| (i.to_string(), o.to_string()))),
    }
}

fn alternating_product(graded: &BTreeMap<i64, BigInt>) -> BigRational {
    graded.iter().fold(BigRational::one(), |acc, (i, o)| {
        let o = BigRational::from_integer(o.clone());
        if i.rem_euclid(2) == 0 {
            acc * o
        } else {
            acc / o
        }
    })
}

impl WeilOrderData {
    pub fn from_graded(graded: BTreeMap<i64, BigInt>) -> Self {
        WeilOrderData {
            chi_mult: alternating_product(&graded),
            graded: Some(graded),
        }
    }

    pub fn euler_only(chi_mult: BigRational) -> Self {
        WeilOrderData {
            graded: None,
            chi_mult,
        }
    }

    /// Degreewise product of orders; graded data survives only if both sides have it.
    pub fn product(&self, other: &Self) -> Self {
        match (&self.graded, &other.graded) {
            (Some(a), Some(b)) => {
                let mut g = a.clone();
                for (i, o) in b {
                    let e = g.entry(*i).or_insert_with(BigInt::one);
                    *e = &*e * o;
                }
                Self::from_graded(g)
            }
            _ => Self::euler_only(&self.chi_mult * &other.chi_mult),
        }
    }

    /// Degrees moved by `i -> i - k`.
    pub fn shift_degrees(&self, k: i64) -> Self {
        WeilOrderData {
            graded: self
                .graded
                .as_ref()
                .map(|g| g.iter().map(|(i, o)| (i - k, o.clone())).collect()),
            chi_mult: if k.rem_euclid(2) == 0 {
                self.chi_mult.clone()
            } else {
                self.chi_mult.recip()
            },
        }
    }
}

fn pow_minus_one(q: &BigInt, e: i64) -> BigInt {
    // q^e - 1 for e >= 1
    num_traits::pow(q.clone(), e as usize) - BigInt::one()
}

/// `|H^i(X_et, Z^c(n))|` for a finite-characteristic expression and `n < 0`.
pub fn weil_order_data(e: &SchemeExpr, n: i64) -> Result<WeilOrderData> {
    if n >= 0 {
        return Err(Error::InvalidArgument(format!("n = {n} must be a negative integer")));
    }
    Ok(match e {
        SchemeExpr::Point { q, m } => {
            WeilOrderData::from_graded(BTreeMap::from([(1, pow_minus_one(q, -(*m as i64) * n))]))
        }
        SchemeExpr::Curve { q, p } => {
            let t = rational_pow(q, -n);
            let h0 = p.map(|c| BigRational::from_integer(c.clone())).eval(&t);
            if h0.is_zero() {
                return Err(Error::WeilViolation {
                    q: q.to_string(),
                    exponent: -n,
                });
            }
            WeilOrderData::from_graded(BTreeMap::from([
                (-1, pow_minus_one(q, 1 - n)),
                (0, h0.to_integer().abs()),
                (1, pow_minus_one(q, -n)),
            ]))
        }
        SchemeExpr::NumberRing(_) => return Err(Error::CharZeroAtom),
        SchemeExpr::Disjoint(cs) => {
            let mut acc = WeilOrderData::from_graded(BTreeMap::new());
            for c in cs {
                acc = acc.product(&weil_order_data(c, n)?);
            }
            acc
        }
        SchemeExpr::Glue(z, u) => {
            let a = weil_order_data(z, n)?;
            let b = weil_order_data(u, n)?;
            WeilOrderData::euler_only(a.chi_mult * b.chi_mult)
        }
        SchemeExpr::Minus(x, z) => {
            let a = weil_order_data(x, n)?;
            let b = weil_order_data(z, n)?;
            WeilOrderData::euler_only(a.chi_mult / b.chi_mult)
        }
        SchemeExpr::Affine(r, x) => weil_order_data(x, n - *r as i64)?.shift_degrees(2 * *r as i64),
        SchemeExpr::Proj(..) | SchemeExpr::Cellular(..) => {
            let (b, ranks) = e.strata().unwrap();
            let mut acc = WeilOrderData::from_graded(BTreeMap::new());
            for r in ranks {
                acc = acc.product(&weil_order_data(b, n - r as i64)?.shift_degrees(2 * r as i64));
            }
            acc
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Canonical text of the offending subexpression.
    pub at: String,
    pub message: String,
}

/// Structural checks; glue and complement nodes are flagged as unverified.
pub fn validate(e: &SchemeExpr) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    validate_into(e, &mut out);
    out
}

fn validate_into(e: &SchemeExpr, out: &mut Vec<Diagnostic>) {
    let mut push = |severity, message: String| {
        out.push(Diagnostic {
            severity,
            at: e.to_string(),
            message,
        })
    };
    match e {
        SchemeExpr::Point { q, m } => {
            if prime_power(q).is_none() {
                push(Severity::Error, format!("{q} is not a prime power"));
            }
            if *m == 0 {
                push(Severity::Error, "point degree must be at least 1".into());
            }
        }
        SchemeExpr::Curve { q, p } => {
            if prime_power(q).is_none() {
                push(Severity::Error, format!("{q} is not a prime power"));
            }
            if !p.coeff(0).is_one() {
                push(Severity::Error, format!("L-polynomial constant term is {}, not 1", p.coeff(0)));
            }
            match p.degree() {
                Some(d) if d % 2 == 1 => push(Severity::Warning, format!("L-polynomial has odd degree {d}")),
                Some(d) if d > 0 => {
                    let lead = num_traits::pow(q.clone(), d / 2);
                    if p.coeff(d) != lead {
                        push(
                            Severity::Warning,
                            format!("leading coefficient {} differs from q^g = {lead}", p.coeff(d)),
                        );
                    }
                }
                _ => {}
            }
        }
        SchemeExpr::NumberRing(f) => {
            if let Err(err) = f.signature() {
                push(Severity::Error, format!("inconsistent field data: {err}"));
            }
        }
        SchemeExpr::Glue(..) => push(
            Severity::Warning,
            "closed-open decomposition is asserted, not verified".into(),
        ),
        SchemeExpr::Minus(..) => push(
            Severity::Warning,
            "complement plausibility unverified: closed embedding is asserted".into(),
        ),
        SchemeExpr::Cellular(_, ranks) => {
            if ranks.is_empty() {
                push(Severity::Error, "cellular rank list is empty".into());
            }
        }
        SchemeExpr::Disjoint(_) | SchemeExpr::Affine(..) | SchemeExpr::Proj(..) => {}
    }
    for c in e.children() {
        validate_into(c, out);
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Canonical s-expression form.
impl fmt::Display for SchemeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeExpr::Point { q, m: 1 } => write!(f, "(point {q})"),
            SchemeExpr::Point { q, m } => write!(f, "(point {q} {m})"),
            SchemeExpr::Curve { q, p } => {
                write!(f, "(curve {q} ")?;
                if p.is_zero() {
                    write!(f, "(0)")?;
                } else {
                    write_list(f, p.coeffs())?;
                }
                write!(f, ")")
            }
            SchemeExpr::NumberRing(field) => {
                if *field == AbelianFieldSpec::rationals() {
                    write!(f, "(Q)")
                } else if *field == AbelianFieldSpec::gaussian() {
                    write!(f, "(Qi)")
                } else {
                    write!(f, "(numberring :conductor {} :subgroup ", field.conductor())?;
                    write_list(f, field.subgroup_generators())?;
                    write!(f, ")")
                }
            }
            SchemeExpr::Disjoint(cs) => {
                write!(f, "(disjoint")?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
            SchemeExpr::Glue(z, u) => write!(f, "(glue {z} {u})"),
            SchemeExpr::Minus(x, z) => write!(f, "(minus {x} {z})"),
            SchemeExpr::Affine(r, x) => write!(f, "(affine {r} {x})"),
            SchemeExpr::Proj(r, x) => write!(f, "(proj {r} {x})"),
            SchemeExpr::Cellular(b, ranks) => {
                write!(f, "(cellular {b} ")?;
                write_list(f, ranks)?;
                write!(f, ")")
            }
        }
    }
}

impl Serialize for SchemeExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pt(q: i64) -> SchemeExpr {
        SchemeExpr::point(q, 1).unwrap()
    }

    fn graded(pairs: &[(i64, i64)]) -> Option<BTreeMap<i64, BigInt>> {
        Some(pairs.iter().map(|&(i, o)| (i, BigInt::from(o))).collect())
    }

    fn geometric(q: i64, c: i64) -> ZetaProduct {
        one_minus_t(&BigInt::from(q), BigInt::from(c), 1)
    }

    #[test]
    fn zeta_examples() {
        let p1 = zeta_of(&SchemeExpr::proj(1, pt(3))).unwrap();
        assert_eq!(p1, geometric(3, 1).multiply(&geometric(3, 3)));
        let nodal = zeta_of(&SchemeExpr::nodal_cubic(2).unwrap()).unwrap();
        assert_eq!(nodal, geometric(2, 2));
        assert!(zeta_of(&SchemeExpr::disjoint(vec![])).unwrap().is_one());
    }

    #[test]
    fn weil_order_examples() {
        let d = weil_order_data(&pt(3), -2).unwrap();
        assert_eq!(d.graded, graded(&[(1, 8)]));
        assert_eq!(d.chi_mult, r(1, 8));

        let d = weil_order_data(&SchemeExpr::nodal_cubic(2).unwrap(), -1).unwrap();
        assert_eq!(d.chi_mult, r(1, 3));
        assert!(d.graded.is_none());

        let c = SchemeExpr::curve(2, &[1, 0, 2]).unwrap();
        let d = weil_order_data(&c, -1).unwrap();
        assert_eq!(d.graded, graded(&[(-1, 3), (0, 9), (1, 1)]));
        assert_eq!(d.chi_mult, r(3, 1));

        let d = weil_order_data(&SchemeExpr::proj(1, pt(2)), -1).unwrap();
        assert_eq!(d.graded, graded(&[(-1, 3), (1, 1)]));
        assert_eq!(d.chi_mult, r(1, 3));

        let err = weil_order_data(&SchemeExpr::number_ring(AbelianFieldSpec::rationals()), -1).unwrap_err();
        assert_eq!(err.code(), "char-zero-atom");
    }

    #[test]
    fn projective_plane_orders() {
        let d = weil_order_data(&SchemeExpr::proj(2, pt(2)), -1).unwrap();
        // strata: point at -1, A^1 from -2 moved to degree -1, A^2 from -3 moved to degree -3
        assert_eq!(d.graded, graded(&[(-3, 7), (-1, 3), (1, 1)]));
        assert_eq!(d.chi_mult, r(1, 21));
    }

    #[test]
    fn validation() {
        let bad = SchemeExpr::curve(2, &[2, 1]).unwrap();
        assert!(validate(&bad).iter().any(|d| d.severity == Severity::Error && d.message.contains("constant term")));
        assert!(validate(&pt(5)).is_empty());
        let m = SchemeExpr::minus(pt(2), SchemeExpr::curve(2, &[1, 0, 2]).unwrap());
        let diags = validate(&m);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, Severity::Warning);
        assert!(validate(&SchemeExpr::cellular(pt(2), vec![])).iter().any(|d| d.severity == Severity::Error));
    }

    #[test]
    fn canonical_printing() {
        let e = SchemeExpr::nodal_cubic(2).unwrap();
        assert_eq!(e.to_string(), "(glue (point 2) (minus (affine 1 (point 2)) (point 2)))");
        let f = SchemeExpr::number_ring(AbelianFieldSpec::new(5, vec![4]).unwrap());
        assert_eq!(f.to_string(), "(numberring :conductor 5 :subgroup (4))");
        assert_eq!(SchemeExpr::number_ring(AbelianFieldSpec::gaussian()).to_string(), "(Qi)");
        assert_eq!(
            SchemeExpr::cellular(SchemeExpr::point(4, 3).unwrap(), vec![0, 2]).to_string(),
            "(cellular (point 4 3) (0 2))"
        );
    }

    #[test]
    fn rejects_bad_bases() {
        assert_eq!(SchemeExpr::point(6, 1).unwrap_err().code(), "not-prime-power");
        assert!(SchemeExpr::point(2, 0).is_err());
    }
}
