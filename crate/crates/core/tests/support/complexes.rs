use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use zetaforge::detcomplex::BoundedFreeComplex;
use zetaforge::IntMatrix;

pub type Rows = Vec<Vec<i64>>;

pub fn to_matrix(rows: &Rows, n_rows: usize, n_cols: usize) -> IntMatrix {
    let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
    IntMatrix::new(n_rows, n_cols, data).unwrap()
}

pub fn to_big(rows: &Rows) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> (usize, usize, Rows) {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let rows = (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    (r, c, rows)
}

fn identity(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mul(a: &Rows, b: &Rows, inner: usize) -> Rows {
    a.iter()
        .map(|row| {
            (0..b.first().map_or(0, Vec::len))
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// A random unimodular `n x n` matrix and its inverse, from a few elementary operations.
fn unimodular<R: Rng>(rng: &mut R, n: usize) -> (Rows, Rows) {
    let mut u = identity(n);
    let mut inv = identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            u[0][0] = -1;
            inv[0][0] = -1;
        }
        return (u, inv);
    }
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        // u <- E u with E = I + c e_ij; inv <- inv E^{-1}
        for k in 0..n {
            u[i][k] += c * u[j][k];
        }
        for row in inv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (u, inv)
}

/// A random complex with finite cohomology: ranks at most 4, degrees in
/// `[-3, 3]`, differential entries in `[-6, 6]`.
pub fn random_torsion_complex<R: Rng>(rng: &mut R) -> BoundedFreeComplex {
    loop {
        let lo: i64 = rng.gen_range(-3..=3);
        let hi: i64 = rng.gen_range(lo..=3.min(lo + 3));
        // k[j] = rank of d^j for j in lo..hi; C^i has rank k[i-1] + k[i]
        let mut k: BTreeMap<i64, usize> = BTreeMap::new();
        for j in lo..hi {
            let prev = k.get(&(j - 1)).copied().unwrap_or(0);
            k.insert(j, rng.gen_range(0..=(4 - prev).min(2)));
        }
        let kk = |j: i64| k.get(&j).copied().unwrap_or(0);
        let rank = |i: i64| kk(i - 1) + kk(i);
        let bases: BTreeMap<i64, (Rows, Rows)> =
            (lo..=hi).map(|i| (i, unimodular(rng, rank(i)))).collect();
        let mut diffs = BTreeMap::new();
        let mut ok = true;
        for j in lo..hi {
            let (src, dst) = (rank(j), rank(j + 1));
            if src == 0 || dst == 0 {
                continue;
            }
            let mut d = vec![vec![0i64; src]; dst];
            for t in 0..kk(j) {
                let v = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
                d[t][kk(j - 1) + t] = v;
            }
            let d = mul(&mul(&bases[&(j + 1)].0, &d, dst), &bases[&j].1, src);
            if d.iter().flatten().any(|x| x.abs() > 6) {
                ok = false;
                break;
            }
            diffs.insert(j, to_matrix(&d, dst, src));
        }
        if !ok {
            continue;
        }
        let ranks: BTreeMap<i64, usize> =
            (lo..=hi).map(|i| (i, rank(i))).filter(|(_, r)| *r > 0).collect();
        return BoundedFreeComplex::new(ranks, diffs).unwrap();
    }
}
