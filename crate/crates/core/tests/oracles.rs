mod support;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use zetaforge::ffengine::point_count;
use zetaforge::intlinalg::smith_normal_form;
use zetaforge::lfunctions::{
    bernoulli_numbers, dedekind_special_value, gauss_sum, l_at_nonpositive, AbelianFieldSpec,
    DirichletCharacter,
};
use zetaforge::numeric::{digits_to_bits, BigReal, RealScalar};

use support::complexes::{random_matrix, to_big, to_matrix};
use support::corpus::curve;
use support::oracle::{self, rat};

fn quadratic(modulus: u64, odd_residues: &[u64]) -> (DirichletCharacter, Vec<i64>) {
    let exps = (0..modulus)
        .map(|a| {
            (num_integer::gcd(a, modulus) == 1).then(|| u64::from(odd_residues.contains(&a)))
        })
        .collect();
    let chi = DirichletCharacter::from_exponents(modulus, 2, exps).unwrap();
    let values = (1..=modulus)
        .map(|a| match a % modulus {
            a if num_integer::gcd(a, modulus) != 1 => 0,
            a if odd_residues.contains(&a) => -1,
            _ => 1,
        })
        .collect();
    (chi, values)
}

#[test]
fn bernoulli_matches_recurrence() {
    assert_eq!(bernoulli_numbers(40)[..=40], oracle::bernoulli(40)[..]);
}

#[test]
fn l_values_match_abel_sums() {
    let chars = [
        quadratic(3, &[2]),
        quadratic(4, &[3]),
        quadratic(5, &[2, 3]),
        quadratic(8, &[3, 5]),
        quadratic(7, &[3, 5, 6]),
    ];
    for (chi, values) in &chars {
        for n in 0..=6u32 {
            let got = l_at_nonpositive(chi, -(n as i64)).as_rational().unwrap();
            assert_eq!(got, oracle::abel_l(values, n), "mod {} at -{n}", chi.modulus());
        }
    }
    let trivial = DirichletCharacter::trivial(1);
    for n in 1..=9u32 {
        let got = l_at_nonpositive(&trivial, -(n as i64)).as_rational().unwrap();
        assert_eq!(got, oracle::abel_zeta(n), "zeta(-{n})");
    }
}

#[test]
fn real_quadratic_dedekind_value() {
    let field = AbelianFieldSpec::new(5, vec![4]).unwrap();
    let (_, values) = quadratic(5, &[2, 3]);
    for n in [1u32, 3, 5] {
        let v = dedekind_special_value(&field, -(n as i64), 30).unwrap();
        assert_eq!(v.order, 0);
        let expected = oracle::abel_zeta(n) * oracle::abel_l(&values, n);
        assert_eq!(v.exact.unwrap(), expected);
    }
    assert_eq!(
        dedekind_special_value(&field, -1, 30).unwrap().exact.unwrap(),
        rat(1, 30)
    );
}

#[test]
fn elliptic_curve_counts_match_enumeration() {
    for p in [5i64, 7, 11] {
        for a in 0..p {
            for b in 0..p {
                if (4 * a * a * a + 27 * b * b).rem_euclid(p) == 0 {
                    continue;
                }
                let n1 = oracle::count_weierstrass(p, a, b, 1) as i64;
                let trace = p + 1 - n1;
                let e = curve(p, &[1, -trace, p]);
                assert_eq!(point_count(&e, 1).unwrap(), BigInt::from(n1));
                if p <= 7 {
                    let n2 = oracle::count_weierstrass(p, a, b, 2);
                    assert_eq!(point_count(&e, 2).unwrap(), BigInt::from(n2), "p={p} a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn supersingular_curve_in_characteristic_two() {
    let e = curve(2, &[1, 0, 2]);
    for k in 1..=2 {
        assert_eq!(point_count(&e, k).unwrap(), BigInt::from(oracle::count_y2_y_x3(k)));
    }
}

#[test]
fn smith_form_matches_determinantal_divisors() {
    let mut rng = support::rng(21);
    for _ in 0..300 {
        let bound = rng.gen_range(1..=9);
        let (r, c, rows) = random_matrix(&mut rng, 4, bound);
        let a = to_matrix(&rows, r, c);
        let big = to_big(&rows);
        let snf = smith_normal_form(&a);
        let d = snf.diagonal();
        let mut prefix = BigInt::one();
        for k in 1..=r.min(c) {
            prefix *= &d[k - 1];
            assert_eq!(prefix.abs(), oracle::brute_divisor(&big, k), "k = {k} in {rows:?}");
        }
        assert_eq!(snf.invariant_factors(), oracle::brute_invariant_factors(&big));
        assert!(d.iter().all(|x| !x.is_negative()));
    }
}

#[test]
fn gauss_sums_have_norm_conductor() {
    let bits = digits_to_bits(40);
    let tol = BigReal::from_rational(&rat(1, 1_000_000_000_000_000_000), bits);
    for (chi, _) in [quadratic(3, &[2]), quadratic(5, &[2, 3]), quadratic(8, &[3, 5])] {
        let tau = gauss_sum(&chi, bits);
        let norm = tau.re.clone() * tau.re.clone() + tau.im.clone() * tau.im.clone();
        let f = BigReal::from_i64(chi.conductor() as i64, bits);
        assert!(oracle::abs_diff(&norm, &f) < tol);
    }
    for f in [5u64, 7, 11, 13] {
        let field = AbelianFieldSpec::cyclotomic(f);
        for chi in field.characters().unwrap() {
            if chi.is_trivial() {
                continue;
            }
            let tau = gauss_sum(&chi, bits);
            let norm = tau.re.clone() * tau.re.clone() + tau.im.clone() * tau.im.clone();
            let cond = BigReal::from_i64(chi.conductor() as i64, bits);
            assert!(oracle::abs_diff(&norm, &cond) < tol, "f = {f}");
            assert!(!norm.is_zero());
        }
    }
}
