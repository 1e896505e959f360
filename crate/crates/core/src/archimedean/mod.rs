//! The archimedean side of vanishing orders: equivariant Betti numbers of
//! `X(C)` with `R(n)` coefficients, their Hodge-theoretic description, and
//! pole counts of archimedean Gamma factors.

mod hodge;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scheme_algebra::SchemeExpr;

pub use hodge::{gamma_factor_order, hodge_equivariant_dims, HodgeData};

/// Equivariant dimensions for one parity of `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityData {
    /// Degree to dimension (zeros omitted); `None` when only the Euler
    /// characteristic is known.
    #[serde(serialize_with = "serialize_dims")]
    pub dims: Option<BTreeMap<i64, u64>>,
    pub chi: i64,
}

fn serialize_dims<S: serde::Serializer>(
    d: &Option<BTreeMap<i64, u64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match d {
        None => s.serialize_none(),
        Some(m) => s.collect_map(m.iter().map(|(i, v)| (i.to_string(), *v))),
    }
}

fn alternating(dims: &BTreeMap<i64, u64>) -> i64 {
    dims.iter()
        .map(|(i, d)| if i.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) })
        .sum()
}

impl ParityData {
    pub fn full(dims: BTreeMap<i64, u64>) -> Self {
        let dims: BTreeMap<i64, u64> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        ParityData {
            chi: alternating(&dims),
            dims: Some(dims),
        }
    }

    pub fn euler_only(chi: i64) -> Self {
        ParityData { dims: None, chi }
    }

    pub fn is_full(&self) -> bool {
        self.dims.is_some()
    }

    pub fn sum(&self, other: &Self) -> Self {
        match (&self.dims, &other.dims) {
            (Some(a), Some(b)) => {
                let mut d = a.clone();
                for (i, v) in b {
                    *d.entry(*i).or_insert(0) += v;
                }
                Self::full(d)
            }
            _ => Self::euler_only(self.chi + other.chi),
        }
    }

    /// Degrees moved by `i -> i + k`.
    pub fn shift_degrees(&self, k: i64) -> Self {
        ParityData {
            dims: self
                .dims
                .as_ref()
                .map(|d| d.iter().map(|(i, v)| (i + k, *v)).collect()),
            chi: if k.rem_euclid(2) == 0 { self.chi } else { -self.chi },
        }
    }
}

/// `dim H^i_c(G_R, X(C), R(n))` for `n` even and `n` odd.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EquivariantBetti {
    pub even: ParityData,
    pub odd: ParityData,
}

impl EquivariantBetti {
    pub fn zero() -> Self {
        EquivariantBetti {
            even: ParityData::full(BTreeMap::new()),
            odd: ParityData::full(BTreeMap::new()),
        }
    }

    pub fn at(&self, n: i64) -> &ParityData {
        if n.rem_euclid(2) == 0 {
            &self.even
        } else {
            &self.odd
        }
    }

    fn map2(&self, other: &Self, f: impl Fn(&ParityData, &ParityData) -> ParityData) -> Self {
        EquivariantBetti {
            even: f(&self.even, &other.even),
            odd: f(&self.odd, &other.odd),
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.map2(other, ParityData::sum)
    }

    /// Data of `A^r x X`: the slot for `n` comes from `X` at `n - r`, moved up by `2r`.
    pub fn affine(&self, r: u32) -> Self {
        let r = r as i64;
        EquivariantBetti {
            even: self.at(-r).shift_degrees(2 * r),
            odd: self.at(1 - r).shift_degrees(2 * r),
        }
    }

    pub fn euler_only(&self) -> Self {
        EquivariantBetti {
            even: ParityData::euler_only(self.even.chi),
            odd: ParityData::euler_only(self.odd.chi),
        }
    }

    fn euler_difference(&self, other: &Self) -> Self {
        EquivariantBetti {
            even: ParityData::euler_only(self.even.chi - other.even.chi),
            odd: ParityData::euler_only(self.odd.chi - other.odd.chi),
        }
    }
}

/// Equivariant Betti data of an expression, for both parities of `n`.
pub fn equivariant_betti(e: &SchemeExpr) -> Result<EquivariantBetti> {
    Ok(match e {
        SchemeExpr::Point { .. } | SchemeExpr::Curve { .. } => EquivariantBetti::zero(),
        SchemeExpr::NumberRing(f) => {
            let (r1, r2) = f.signature()?;
            EquivariantBetti {
                even: ParityData::full(BTreeMap::from([(0, r1 + r2)])),
                odd: ParityData::full(BTreeMap::from([(0, r2)])),
            }
        }
        SchemeExpr::Disjoint(cs) => {
            let mut acc = EquivariantBetti::zero();
            for c in cs {
                acc = acc.sum(&equivariant_betti(c)?);
            }
            acc
        }
        SchemeExpr::Glue(z, u) => equivariant_betti(z)?.sum(&equivariant_betti(u)?).euler_only(),
        SchemeExpr::Minus(x, z) => equivariant_betti(x)?.euler_difference(&equivariant_betti(z)?),
        SchemeExpr::Affine(r, x) => equivariant_betti(x)?.affine(*r),
        SchemeExpr::Proj(..) | SchemeExpr::Cellular(..) => {
            let (b, ranks) = e.strata().unwrap();
            let base = equivariant_betti(b)?;
            ranks
                .iter()
                .fold(EquivariantBetti::zero(), |acc, &r| acc.sum(&base.affine(r)))
        }
    })
}

pub fn equivariant_dims(e: &SchemeExpr, n: i64) -> Result<ParityData> {
    Ok(equivariant_betti(e)?.at(n).clone())
}

/// `chi(R Gamma_c(G_R, X(C), R(n)))`.
pub fn vanishing_order_conjectural(e: &SchemeExpr, n: i64) -> Result<i64> {
    Ok(equivariant_dims(e, n)?.chi)
}

/// `sum_i (-1)^i i (D_{i-1} + D_{i-2})`, the secondary Euler characteristic
/// of the Weil-etale complex tensored with `R`.
pub fn secondary_euler_from_dims(dims: &BTreeMap<i64, u64>) -> i64 {
    let d = |i: i64| dims.get(&i).copied().unwrap_or(0) as i64;
    let Some((&lo, &hi)) = dims.keys().next().zip(dims.keys().next_back()) else {
        return 0;
    };
    (lo + 1..=hi + 2)
        .map(|i| {
            let s = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            s * i * (d(i - 1) + d(i - 2))
        })
        .sum()
}

pub fn secondary_euler_vo(e: &SchemeExpr, n: i64) -> Result<i64> {
    let data = equivariant_dims(e, n)?;
    let dims = data.dims.ok_or(Error::EulerOnly)?;
    Ok(secondary_euler_from_dims(&dims))
}
