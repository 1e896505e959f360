//! Small elementary number theory helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    match n.to_u64() {
        Some(n) => is_prime_u64(n),
        None => {
            // desk-scale inputs never get here in practice; trial division is exact
            let mut d = BigInt::from(2);
            while &d * &d <= *n {
                if n.is_multiple_of(&d) {
                    return false;
                }
                d += 1;
            }
            true
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: &BigInt) -> Option<(BigInt, u32)> {
    if *q < BigInt::from(2) {
        return None;
    }
    let mut p = BigInt::from(2);
    let p = loop {
        if q.is_multiple_of(&p) {
            break p;
        }
        if &p * &p > *q {
            break q.clone();
        }
        p += 1;
    };
    let mut rest = q.clone();
    let mut k = 0;
    while rest.is_multiple_of(&p) {
        rest /= &p;
        k += 1;
    }
    rest.is_one().then_some((p, k))
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime_u64(n)).collect()
}

/// Prime factorization as `(p, e)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    r as u64
}

/// Integer power with a possibly negative exponent, as a rational.
pub fn rational_pow(base: &BigInt, exp: i64) -> num_rational::BigRational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp >= 0 {
        num_rational::BigRational::from_integer(p)
    } else {
        num_rational::BigRational::new(BigInt::one(), p)
    }
}

pub fn abs_rational(x: &num_rational::BigRational) -> num_rational::BigRational {
    if x.is_negative() {
        -x.clone()
    } else {
        x.clone()
    }
}
