//! Reference computations that share no code with the library: brute-force
//! point counts, Abel summation, Euler-Maclaurin sums at real arguments,
//! minors by cofactor expansion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use zetaforge::numeric::{BigReal, RealScalar};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `#{(x, y) : y^2 + y = x^3}` over `F_2` (`k = 1`) or `F_4` (`k = 2`), plus
/// the point at infinity. `F_4 = {0, 1, w, w + 1}` with `w^2 = w + 1`,
/// encoded as 2-bit integers `b0 + b1 w`.
pub fn count_y2_y_x3(k: u32) -> u64 {
    fn mul(a: u8, b: u8) -> u8 {
        let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
        let c0 = (a0 & b0) ^ (a1 & b1);
        let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        c0 | (c1 << 1)
    }
    let size: u8 = if k == 1 { 2 } else { 4 };
    let mut n = 1;
    for x in 0..size {
        for y in 0..size {
            if mul(y, y) ^ y == mul(x, mul(x, x)) {
                n += 1;
            }
        }
    }
    n
}

/// Arithmetic in `F_{p^2} = F_p[i] / (i^2 - r)` for a non-residue `r`.
#[derive(Clone, Copy)]
struct Fp2 {
    p: i64,
    r: i64,
}

impl Fp2 {
    fn new(p: i64) -> Self {
        let r = (2..p)
            .find(|&r| (1..p).all(|y| (y * y - r).rem_euclid(p) != 0))
            .unwrap();
        Fp2 { p, r }
    }

    fn mul(&self, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        (
            (a.0 * b.0 + self.r * a.1 * b.1).rem_euclid(self.p),
            (a.0 * b.1 + a.1 * b.0).rem_euclid(self.p),
        )
    }

    fn add(&self, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        ((a.0 + b.0).rem_euclid(self.p), (a.1 + b.1).rem_euclid(self.p))
    }
}

/// Projective points of `y^2 = x^3 + a x + b` over `F_{p^k}`, `k` in {1, 2}, `p` odd.
pub fn count_weierstrass(p: i64, a: i64, b: i64, k: u32) -> u64 {
    let f = Fp2::new(p);
    let elems: Vec<(i64, i64)> = if k == 1 {
        (0..p).map(|x| (x, 0)).collect()
    } else {
        (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).collect()
    };
    let mut n = 1;
    for &x in &elems {
        let rhs = f.add(f.add(f.mul(x, f.mul(x, x)), f.mul((a, 0), x)), (b, 0));
        for &y in &elems {
            if f.mul(y, y) == rhs {
                n += 1;
            }
        }
    }
    n
}

fn binom(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `B_0..=B_n` from `sum_{k<=m} C(m+1, k) B_k = 0`.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        let s: BigRational = (0..m)
            .map(|k| BigRational::from_integer(binom(m + 1, k)) * &b[k])
            .sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

type Series = Vec<BigRational>;

/// Coefficients of `p(1 + h)` in powers of `h`.
fn shift_to_one(p: &[BigRational]) -> Series {
    let mut out = vec![BigRational::zero(); p.len()];
    for (k, c) in p.iter().enumerate() {
        for j in 0..=k {
            out[j] += c * BigRational::from_integer(binom(k, j));
        }
    }
    out
}

fn valuation(s: &Series) -> usize {
    s.iter().position(|c| !c.is_zero()).expect("nonzero series")
}

/// Abel sum `lim_{x -> 1^-} (x d/dx)^n [num(x) / den(x)]`, exact.
pub fn abel_limit(num: &[BigRational], den: &[BigRational], n: u32) -> BigRational {
    let order = n as usize + 2;
    let a = shift_to_one(num);
    let b = shift_to_one(den);
    let (va, vb) = (valuation(&a), valuation(&b));
    assert!(va >= vb, "Abel limit diverges");
    let a: Series = a[va..].to_vec();
    let b: Series = b[vb..].to_vec();
    let get = |s: &Series, i: usize| s.get(i).cloned().unwrap_or_else(BigRational::zero);
    // series quotient, then multiply by h^(va - vb)
    let mut q: Series = Vec::with_capacity(order);
    for k in 0..order {
        let mut c = get(&a, k);
        for j in 1..=k {
            c -= get(&b, j) * &q[k - j];
        }
        q.push(c / &b[0]);
    }
    let mut s: Series = vec![BigRational::zero(); va - vb];
    s.extend(q);
    s.truncate(order);
    for _ in 0..n {
        // (1 + h) d/dh
        let d: Series = (1..s.len())
            .map(|k| &s[k] * BigRational::from_integer(k.into()))
            .collect();
        let mut next = d.clone();
        for k in 1..d.len() {
            next[k] += &d[k - 1];
        }
        s = next;
    }
    s[0].clone()
}

/// `zeta(-n)` from the alternating series `sum (-1)^{m-1} m^n`:
/// `eta(-n) = (1 - 2^{1+n}) zeta(-n)`.
pub fn abel_zeta(n: u32) -> BigRational {
    let eta = abel_limit(&[rat(0, 1), rat(1, 1)], &[rat(1, 1), rat(1, 1)], n);
    eta / (BigRational::one() - BigRational::from_integer(BigInt::from(2).pow(n + 1)))
}

/// `L(-n, chi)` for a real character of period `f` given by its values
/// `chi(1), ..., chi(f)`, from `sum chi(m) m^n x^m`.
pub fn abel_l(values: &[i64], n: u32) -> BigRational {
    let f = values.len();
    let mut num = vec![BigRational::zero(); f + 1];
    for (a, v) in values.iter().enumerate() {
        num[a + 1] = rat(*v, 1);
    }
    let mut den = vec![BigRational::zero(); f + 1];
    den[0] = BigRational::one();
    den[f] = -BigRational::one();
    abel_limit(&num, &den, n)
}

/// Hurwitz `zeta(s, a)` for real `s != 1` by Euler-Maclaurin with `terms`
/// direct terms and `corr` Bernoulli corrections.
pub fn hurwitz_real(s: &BigReal, a: &BigRational, terms: u64, corr: usize, bits: usize) -> BigReal {
    let one = BigReal::from_i64(1, bits);
    let a = BigReal::from_rational(a, bits);
    let pow_neg = |x: &BigReal, e: &BigReal| (-(e.clone()) * x.ln()).exp();
    let mut acc = BigReal::from_i64(0, bits);
    for k in 0..terms {
        acc = acc + pow_neg(&(BigReal::from_i64(k as i64, bits) + a.clone()), s);
    }
    let na = BigReal::from_i64(terms as i64, bits) + a;
    acc = acc + pow_neg(&na, &(s.clone() - one.clone())) / (s.clone() - one.clone());
    let base = pow_neg(&na, s);
    acc = acc + base.clone() / BigReal::from_i64(2, bits);
    let b = bernoulli(2 * corr);
    let inv_na2 = one.clone() / (na.clone() * na.clone());
    // (s)_{2j-1} (N+a)^{-s-2j+1} / (2j)!, built incrementally
    let mut term = s.clone() / na.clone();
    let mut fact = BigRational::from_integer(2.into());
    for j in 1..=corr {
        if j > 1 {
            let k = (2 * j - 3) as i64;
            term = term
                * (s.clone() + BigReal::from_i64(k, bits))
                * (s.clone() + BigReal::from_i64(k + 1, bits))
                * inv_na2.clone();
            fact = fact * BigRational::from_integer(((2 * j - 1) * (2 * j)).into());
        }
        let c = BigReal::from_rational(&(b[2 * j].clone() / fact.clone()), bits);
        acc = acc + c * term.clone() * base.clone();
    }
    acc
}

/// `f'(x0)` from the symmetric `2m`-point stencil with step `h`.
pub fn central_derivative(
    f: impl Fn(&BigReal) -> BigReal,
    x0: &BigReal,
    h: &BigRational,
    m: u64,
    bits: usize,
) -> BigReal {
    let fact = |n: u64| (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j));
    let hr = BigReal::from_rational(h, bits);
    let mut acc = BigReal::from_i64(0, bits);
    for k in 1..=m {
        let mut c = BigRational::new(fact(m) * fact(m), BigInt::from(k) * fact(m - k) * fact(m + k));
        if k % 2 == 0 {
            c = -c;
        }
        let step = BigReal::from_rational(&(h * BigRational::from_integer(k.into())), bits);
        let diff = f(&(x0.clone() + step.clone())) - f(&(x0.clone() - step));
        acc = acc + BigReal::from_rational(&c, bits) * diff;
    }
    acc / hr
}

fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][j] * det_cofactor(&sub);
        if j % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k x k` minors (0 if every minor vanishes).
pub fn brute_divisor(a: &[Vec<BigInt>], k: usize) -> BigInt {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut g = BigInt::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let m: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect())
                .collect();
            g = g.gcd(&det_cofactor(&m));
        }
    }
    g
}

/// Invariant factors from ratios of determinantal divisors.
pub fn brute_invariant_factors(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let d = brute_divisor(a, k);
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

/// `l^{v_l(x)}` as a rational, for `x != 0`.
pub fn ell_part(x: &BigRational, ell: u64) -> BigRational {
    let l = BigInt::from(ell);
    let part = |n: &BigInt| {
        let mut n = n.abs();
        let mut p = BigInt::one();
        while (&n % &l).is_zero() {
            n /= &l;
            p *= &l;
        }
        p
    };
    BigRational::new(part(x.numer()), part(x.denom()))
}

pub fn abs_diff(a: &BigReal, b: &BigReal) -> BigReal {
    (a.clone() - b.clone()).abs()
}
