use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use super::character::{characters_trivial_on, subgroup_closure};
use super::DirichletCharacter;
use crate::arith::euler_phi;
use crate::error::{Error, Result};

/// Abelian number field given as the fixed field of `H <= (Z/f)^x` inside
/// `Q(zeta_f)`. `H` is stored by generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianFieldSpec {
    conductor: u64,
    subgroup: Vec<u64>,
}

impl AbelianFieldSpec {
    pub fn new(conductor: u64, subgroup: Vec<u64>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let mut gens: Vec<u64> = Vec::with_capacity(subgroup.len());
        for h in subgroup {
            if h.gcd(&conductor) != 1 {
                return Err(Error::InvalidArgument(format!(
                    "subgroup element {h} is not a unit mod {conductor}"
                )));
            }
            gens.push(h);
        }
        gens.sort_unstable();
        gens.dedup();
        Ok(AbelianFieldSpec {
            conductor,
            subgroup: gens,
        })
    }

    pub fn rationals() -> Self {
        AbelianFieldSpec {
            conductor: 1,
            subgroup: Vec::new(),
        }
    }

    pub fn gaussian() -> Self {
        AbelianFieldSpec {
            conductor: 4,
            subgroup: vec![1],
        }
    }

    pub fn cyclotomic(m: u64) -> Self {
        AbelianFieldSpec {
            conductor: m,
            subgroup: vec![1],
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn subgroup_generators(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn subgroup_elements(&self) -> BTreeSet<u64> {
        subgroup_closure(self.conductor, &self.subgroup)
    }

    /// `[F : Q]`, the index of `H`.
    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor) / self.subgroup_elements().len() as u64
    }

    /// Primitive characters `chi` with `zeta_F = prod L(s, chi)`, sorted.
    pub fn characters(&self) -> Result<Vec<DirichletCharacter>> {
        let chars = characters_trivial_on(self.conductor, &self.subgroup)?;
        let prims: BTreeSet<DirichletCharacter> = chars.iter().map(|c| c.primitive()).collect();
        if prims.len() != chars.len() {
            return Err(Error::Internal(
                "distinct characters share a primitive core".into(),
            ));
        }
        Ok(prims.into_iter().collect())
    }

    /// `(r1, r2)`: totally real when every character is even, otherwise totally
    /// imaginary (abelian fields are Galois, so there is no mixed signature).
    pub fn signature(&self) -> Result<(u64, u64)> {
        let chars = self.characters()?;
        let d = chars.len() as u64;
        if d != self.degree() {
            return Err(Error::Internal(format!(
                "character count {d} differs from the field degree {}",
                self.degree()
            )));
        }
        if chars.iter().all(DirichletCharacter::is_even) {
            Ok((d, 0))
        } else {
            Ok((0, d / 2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures_of_standard_fields() {
        let sig = |f: u64, h: Vec<u64>| AbelianFieldSpec::new(f, h).unwrap().signature().unwrap();
        assert_eq!(AbelianFieldSpec::rationals().signature().unwrap(), (1, 0));
        assert_eq!(AbelianFieldSpec::gaussian().signature().unwrap(), (0, 1));
        assert_eq!(sig(5, vec![4]), (2, 0));
        assert_eq!(sig(3, vec![]), (0, 1));
        assert_eq!(sig(5, vec![1]), (0, 2));
        assert_eq!(sig(7, vec![]), (0, 3));
        // maximal real subfield of Q(zeta_7)
        assert_eq!(sig(7, vec![6]), (3, 0));
        // Q(sqrt 2) has conductor 8
        assert_eq!(sig(8, vec![7]), (2, 0));
    }

    #[test]
    fn rationals_via_any_conductor() {
        let f = AbelianFieldSpec::new(12, vec![5, 7, 11]).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.characters().unwrap(), vec![DirichletCharacter::trivial(1)]);
    }

    #[test]
    fn rejects_non_units() {
        assert!(AbelianFieldSpec::new(6, vec![3]).is_err());
        assert!(AbelianFieldSpec::new(0, vec![]).is_err());
    }
}
