use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{euler_phi, factorize, mod_pow};
use crate::error::{Error, Result};

use super::CyclotomicNumber;

/// Dirichlet character with values in the `order`-th roots of unity.
///
/// `exponents[a]` is `Some(k)` when `gcd(a, modulus) = 1` and
/// `chi(a) = exp(2 pi i k / order)`, and `None` otherwise. `order` is always
/// the exact order of the character, so equal characters compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    exponents: Vec<Option<u64>>,
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        assert!(modulus >= 1);
        let exponents = (0..modulus)
            .map(|a| (a.gcd(&modulus) == 1).then_some(0))
            .collect();
        DirichletCharacter {
            modulus,
            order: 1,
            exponents,
        }
    }

    /// Builds a character from exponents relative to `level`, checking
    /// multiplicativity, and normalizes to its exact order.
    pub fn from_exponents(modulus: u64, level: u64, exponents: Vec<Option<u64>>) -> Result<Self> {
        if modulus == 0 || level == 0 || exponents.len() != modulus as usize {
            return Err(Error::InvalidArgument("bad character table shape".into()));
        }
        for a in 0..modulus {
            let unit = a.gcd(&modulus) == 1;
            if unit != exponents[a as usize].is_some() {
                return Err(Error::InvalidArgument(format!(
                    "character table must be defined exactly on units (residue {a})"
                )));
            }
        }
        if exponents[(1 % modulus) as usize] != Some(0) {
            return Err(Error::InvalidArgument("chi(1) must be 1".into()));
        }
        for a in 0..modulus {
            for b in 0..modulus {
                if let (Some(x), Some(y)) = (exponents[a as usize], exponents[b as usize]) {
                    let ab = (a * b % modulus) as usize;
                    if exponents[ab] != Some((x + y) % level) {
                        return Err(Error::InvalidArgument(format!(
                            "table is not multiplicative at ({a}, {b})"
                        )));
                    }
                }
            }
        }
        Ok(Self::normalized(modulus, level, exponents))
    }

    fn normalized(modulus: u64, level: u64, exponents: Vec<Option<u64>>) -> Self {
        let g = exponents.iter().flatten().fold(level, |g, &k| g.gcd(&k));
        DirichletCharacter {
            modulus,
            order: level / g,
            exponents: exponents.into_iter().map(|k| k.map(|k| k / g)).collect(),
        }
    }

    /// The quadratic character of `Q(i)`, mod 4.
    pub fn chi_minus_four() -> Self {
        Self::normalized(4, 2, vec![None, Some(0), None, Some(1)])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Exponent `k` with `chi(a) = zeta_order^k`, or `None` when `a` is not a unit.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        self.exponents[a.rem_euclid(self.modulus as i64) as usize]
    }

    /// `chi(a)` as an exact cyclotomic number (zero off the units).
    pub fn value(&self, a: i64) -> CyclotomicNumber {
        match self.exponent(a) {
            Some(k) => CyclotomicNumber::root(self.order, k as i64),
            None => CyclotomicNumber::zero(self.order),
        }
    }

    /// `chi(-1) = +1`?
    pub fn is_even(&self) -> bool {
        self.exponent(-1) == Some(0)
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u32 {
        if self.is_even() {
            0
        } else {
            1
        }
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            order: self.order,
            exponents: self
                .exponents
                .iter()
                .map(|k| k.map(|k| (self.order - k) % self.order))
                .collect(),
        }
    }

    /// Smallest `d | modulus` such that `chi` is trivial on units congruent to 1 mod `d`.
    pub fn conductor(&self) -> u64 {
        let f = self.modulus;
        (1..=f)
            .filter(|d| f % d == 0)
            .find(|&d| {
                (0..f)
                    .filter(|a| a % d == 1 % d)
                    .all(|a| matches!(self.exponents[a as usize], None | Some(0)))
            })
            .unwrap_or(f)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let d = self.conductor();
        if d == self.modulus {
            return self.clone();
        }
        let exponents = (0..d)
            .map(|b| {
                if b.gcd(&d) != 1 {
                    return None;
                }
                // lift b to a unit mod the full modulus
                (0..self.modulus / d)
                    .map(|j| b + j * d)
                    .find_map(|a| self.exponents[a as usize])
            })
            .collect();
        Self::normalized(d, self.order, exponents)
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[mod {}, order {}](", self.modulus, self.order)?;
        let mut first = true;
        for (a, k) in self.exponents.iter().enumerate() {
            if let Some(k) = k {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{a}:{k}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 1 {
            return write!(f, "trivial");
        }
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for DirichletCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let pe = p.pow(e);
    let factors: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    let g = (2..p.max(3))
        .find(|&g| factors.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .unwrap_or(1);
    if e >= 2 && mod_pow(g, p - 1, p * p) == 1 {
        (g + p) % pe
    } else {
        g % pe
    }
}

/// Chinese-remainder lift: `x = r mod m`, `x = 1 mod (f / m)`.
fn crt_lift(r: u64, m: u64, f: u64) -> u64 {
    let other = f / m;
    (0..other)
        .map(|j| r + j * m)
        .find(|x| x % other == 1 % other)
        .expect("coprime moduli")
}

/// Cyclic decomposition of `(Z/f)^x`: generators and their orders.
pub fn unit_group_generators(f: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (p, e) in factorize(f) {
        let pe = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => gens.push((crt_lift(3, pe, f), 2)),
                _ => {
                    gens.push((crt_lift(pe - 1, pe, f), 2));
                    gens.push((crt_lift(5, pe, f), pe / 4));
                }
            }
        } else {
            let g = primitive_root_prime_power(p, e);
            gens.push((crt_lift(g, pe, f), pe / p * (p - 1)));
        }
    }
    gens
}

/// Discrete-log coordinates of every unit with respect to `gens`.
fn log_table(f: u64, gens: &[(u64, u64)]) -> Vec<Option<Vec<u64>>> {
    let mut table = vec![None; f as usize];
    let mut coords = vec![0u64; gens.len()];
    let total: u64 = gens.iter().map(|g| g.1).product();
    for _ in 0..total {
        let a = gens
            .iter()
            .zip(&coords)
            .fold(1 % f, |acc, (&(g, _), &c)| acc * mod_pow(g, c, f) % f);
        table[a as usize] = Some(coords.clone());
        for (c, &(_, n)) in coords.iter_mut().zip(gens) {
            *c += 1;
            if *c < n {
                break;
            }
            *c = 0;
        }
    }
    table
}

/// Closure of a set of units under multiplication mod `f`.
pub fn subgroup_closure(f: u64, gens: &[u64]) -> BTreeSet<u64> {
    let mut h: BTreeSet<u64> = BTreeSet::from([1 % f]);
    let mut frontier: Vec<u64> = h.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x * (g % f) % f;
            if h.insert(y) {
                frontier.push(y);
            }
        }
    }
    h
}

/// All characters mod `f` trivial on the subgroup generated by `h_gens`,
/// each with modulus `f` (not yet reduced to primitive form).
pub fn characters_trivial_on(f: u64, h_gens: &[u64]) -> Result<Vec<DirichletCharacter>> {
    if f == 0 {
        return Err(Error::InvalidArgument("conductor must be positive".into()));
    }
    for &h in h_gens {
        if h.gcd(&f) != 1 {
            return Err(Error::InvalidArgument(format!(
                "subgroup element {h} is not a unit mod {f}"
            )));
        }
    }
    let gens = unit_group_generators(f);
    let table = log_table(f, &gens);
    let level = gens.iter().fold(1u64, |l, g| l.lcm(&g.1));
    let eval = |c: &[u64], coords: &[u64]| -> u64 {
        c.iter()
            .zip(coords)
            .zip(&gens)
            .map(|((ci, ei), (_, n))| ci * ei % n * (level / n))
            .sum::<u64>()
            % level
    };
    let h_coords: Vec<Vec<u64>> = h_gens
        .iter()
        .map(|&h| table[(h % f) as usize].clone().expect("unit"))
        .collect();

    let total: u64 = gens.iter().map(|g| g.1).product();
    let mut out = Vec::new();
    let mut c = vec![0u64; gens.len()];
    for _ in 0..total {
        if h_coords.iter().all(|hc| eval(&c, hc) == 0) {
            let exps = table
                .iter()
                .map(|coords| coords.as_ref().map(|co| eval(&c, co)))
                .collect();
            out.push(DirichletCharacter::normalized(f, level, exps));
        }
        for (ci, &(_, n)) in c.iter_mut().zip(&gens) {
            *ci += 1;
            if *ci < n {
                break;
            }
            *ci = 0;
        }
    }
    let expected = euler_phi(f) / subgroup_closure(f, h_gens).len() as u64;
    if out.len() as u64 != expected {
        return Err(Error::Internal(format!(
            "found {} characters mod {f} trivial on the subgroup, expected {expected}",
            out.len()
        )));
    }
    Ok(out)
}
