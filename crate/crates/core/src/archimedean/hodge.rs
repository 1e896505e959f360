use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Hodge numbers `h^{p,q}` of a smooth projective variety over `R`, with the
/// splitting `h^{p,p} = h^{p,+} + h^{p,-}` under complex conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeData {
    hpq: BTreeMap<(i64, i64), u64>,
    diag: BTreeMap<i64, (u64, u64)>,
}

#[derive(Deserialize)]
struct HodgeFile {
    hpq: BTreeMap<String, u64>,
    #[serde(default)]
    diag: BTreeMap<String, (u64, u64)>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

impl HodgeData {
    pub fn new(
        hpq: BTreeMap<(i64, i64), u64>,
        diag: BTreeMap<i64, (u64, u64)>,
    ) -> Result<Self> {
        let hpq: BTreeMap<_, _> = hpq.into_iter().filter(|(_, h)| *h > 0).collect();
        let diag: BTreeMap<_, _> = diag.into_iter().filter(|(_, (a, b))| a + b > 0).collect();
        for (&(p, q), &h) in &hpq {
            if p < 0 || q < 0 {
                return Err(bad(format!("negative Hodge index ({p},{q})")));
            }
            if hpq.get(&(q, p)).copied().unwrap_or(0) != h {
                return Err(bad(format!("h^{{{p},{q}}} != h^{{{q},{p}}}")));
            }
        }
        let mut ps: Vec<i64> = hpq.keys().filter(|(p, q)| p == q).map(|(p, _)| *p).collect();
        ps.extend(diag.keys());
        for p in ps {
            let h = hpq.get(&(p, p)).copied().unwrap_or(0);
            let (plus, minus) = diag.get(&p).copied().unwrap_or((0, 0));
            if plus + minus != h {
                return Err(bad(format!(
                    "h^{{{p},+}} + h^{{{p},-}} = {} but h^{{{p},{p}}} = {h}",
                    plus + minus
                )));
            }
        }
        Ok(HodgeData { hpq, diag })
    }

    /// Parses `{"hpq": {"p,q": h, ...}, "diag": {"p": [h+, h-], ...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: HodgeFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("hodge data: {e}")))?;
        let mut hpq = BTreeMap::new();
        for (k, v) in file.hpq {
            let (p, q) = k
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("hodge key '{k}' is not 'p,q'")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("hodge key '{k}'")))
            };
            hpq.insert((parse(p)?, parse(q)?), v);
        }
        let mut diag = BTreeMap::new();
        for (k, v) in file.diag {
            let p = k
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("diag key '{k}'")))?;
            diag.insert(p, v);
        }
        Self::new(hpq, diag)
    }

    pub fn projective_line() -> Self {
        Self::new(
            BTreeMap::from([((0, 0), 1), ((1, 1), 1)]),
            BTreeMap::from([(0, (1, 0)), (1, (1, 0))]),
        )
        .unwrap()
    }

    pub fn elliptic_curve() -> Self {
        Self::new(
            BTreeMap::from([((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]),
            BTreeMap::from([(0, (1, 0)), (1, (1, 0))]),
        )
        .unwrap()
    }

    pub fn hpq(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.hpq
    }

    pub fn diag(&self) -> &BTreeMap<i64, (u64, u64)> {
        &self.diag
    }

    pub fn max_degree(&self) -> i64 {
        self.hpq.keys().map(|(p, q)| p + q).max().unwrap_or(0)
    }

    /// `h^{p,s}` for the sign `s = (-1)^{n-p}`.
    fn signed(&self, p: i64, n: i64) -> u64 {
        let (plus, minus) = self.diag.get(&p).copied().unwrap_or((0, 0));
        if (n - p).rem_euclid(2) == 0 {
            plus
        } else {
            minus
        }
    }
}

impl Serialize for HodgeData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            hpq: BTreeMap<String, u64>,
            diag: BTreeMap<String, (u64, u64)>,
        }
        Out {
            hpq: self.hpq.iter().map(|((p, q), h)| (format!("{p},{q}"), *h)).collect(),
            diag: self.diag.iter().map(|(p, v)| (p.to_string(), *v)).collect(),
        }
        .serialize(s)
    }
}

/// Equivariant dimensions in degrees `0..=2d` computed from Hodge numbers.
pub fn hodge_equivariant_dims(h: &HodgeData, n: i64) -> BTreeMap<i64, u64> {
    let mut out: BTreeMap<i64, u64> = (0..=h.max_degree()).map(|i| (i, 0)).collect();
    for (&(p, q), &v) in &h.hpq {
        if p < q {
            *out.entry(p + q).or_insert(0) += v;
        }
    }
    for (&p, _) in &h.diag {
        *out.entry(2 * p).or_insert(0) += h.signed(p, n);
    }
    out
}

fn gamma_r_pole(shifted: i64) -> bool {
    shifted <= 0 && shifted.rem_euclid(2) == 0
}

/// Alternating count of poles at `s = n` of the archimedean Gamma factors
/// of the cohomology in each degree.
pub fn gamma_factor_order(h: &HodgeData, n: i64) -> i64 {
    let sign = |i: i64| if i.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut total = 0i64;
    for (&p, &(plus, minus)) in &h.diag {
        let s = sign(2 * p);
        if gamma_r_pole(n - p) {
            total += s * plus as i64;
        }
        if gamma_r_pole(n - p + 1) {
            total += s * minus as i64;
        }
    }
    for (&(p, q), &v) in &h.hpq {
        if p < q && n - p <= 0 {
            total += sign(p + q) * v as i64;
        }
    }
    total
}
