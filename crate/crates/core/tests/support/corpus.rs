use rand::seq::SliceRandom;
use rand::Rng;
use zetaforge::lfunctions::AbelianFieldSpec;
use zetaforge::scheme_algebra::SchemeExpr;

pub fn pt(q: i64, m: u32) -> SchemeExpr {
    SchemeExpr::point(q, m).unwrap()
}

pub fn curve(q: i64, c: &[i64]) -> SchemeExpr {
    SchemeExpr::curve(q, c).unwrap()
}

pub fn field(f: u64, h: &[u64]) -> SchemeExpr {
    SchemeExpr::number_ring(AbelianFieldSpec::new(f, h.to_vec()).unwrap())
}

/// The finite-characteristic atoms: points `Spec F_{q^m}` and the listed curves.
pub fn atoms() -> Vec<SchemeExpr> {
    let mut out = Vec::new();
    for q in [2, 3, 4, 5] {
        for m in 1..=3 {
            out.push(pt(q, m));
        }
    }
    out.push(curve(2, &[1, 0, 2]));
    for a in -3..=3 {
        out.push(curve(3, &[1, a, 3]));
    }
    out
}

fn atoms_over(q: i64) -> Vec<SchemeExpr> {
    atoms().into_iter().filter(|e| base_of(e) == q).collect()
}

fn base_of(e: &SchemeExpr) -> i64 {
    match e {
        SchemeExpr::Point { q, .. } | SchemeExpr::Curve { q, .. } => q.try_into().unwrap(),
        _ => panic!("not an atom"),
    }
}

/// A random expression all of whose atoms live over `F_q`.
pub fn random_over<R: Rng>(rng: &mut R, q: i64, depth: u32) -> SchemeExpr {
    let atoms = atoms_over(q);
    if depth == 0 || rng.gen_bool(0.3) {
        return atoms.choose(rng).unwrap().clone();
    }
    match rng.gen_range(0..6) {
        0 => {
            let k = rng.gen_range(2..=3);
            SchemeExpr::disjoint((0..k).map(|_| random_over(rng, q, depth - 1)).collect())
        }
        1 => SchemeExpr::glue(random_over(rng, q, depth - 1), random_over(rng, q, depth - 1)),
        2 => SchemeExpr::affine(rng.gen_range(1..=3), random_over(rng, q, depth - 1)),
        3 => SchemeExpr::proj(rng.gen_range(1..=3), random_over(rng, q, depth - 1)),
        4 => {
            let ranks = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=3)).collect();
            SchemeExpr::cellular(random_over(rng, q, depth - 1), ranks)
        }
        _ => SchemeExpr::minus(
            random_over(rng, q, depth - 1),
            random_over(rng, q, depth - 1),
        ),
    }
}

/// The finite-characteristic corpus: atoms, projective spaces, the nodal
/// cubic, affine twists, and seeded random unions and glues over one base.
pub fn finite_corpus<R: Rng>(rng: &mut R) -> Vec<SchemeExpr> {
    let mut out = atoms();
    for q in [2, 3, 4, 5] {
        for r in 0..=3 {
            out.push(SchemeExpr::proj(r, pt(q, 1)));
        }
    }
    out.push(SchemeExpr::nodal_cubic(2).unwrap());
    out.push(SchemeExpr::nodal_cubic(3).unwrap());
    for r in 1..=3 {
        for x in [pt(2, 1), pt(5, 2), curve(2, &[1, 0, 2]), curve(3, &[1, -1, 3])] {
            out.push(SchemeExpr::affine(r, x));
        }
    }
    for _ in 0..20 {
        let q = *[2, 3, 4, 5].choose(rng).unwrap();
        let a = random_over(rng, q, 2);
        let b = random_over(rng, q, 2);
        out.push(if rng.gen_bool(0.5) {
            SchemeExpr::disjoint(vec![a, b])
        } else {
            SchemeExpr::glue(a, b)
        });
    }
    out
}

/// Number rings of small conductor: Q, Q(i), Q(sqrt 5), Q(sqrt -3), Q(zeta_5), Q(zeta_8)^+.
pub fn number_rings() -> Vec<SchemeExpr> {
    vec![
        field(1, &[]),
        field(4, &[1]),
        field(5, &[4]),
        field(3, &[1]),
        field(5, &[1]),
        field(8, &[7]),
    ]
}

/// A random expression mixing bases and number rings.
pub fn random_mixed<R: Rng>(rng: &mut R, depth: u32) -> SchemeExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.35) {
            number_rings().choose(rng).unwrap().clone()
        } else {
            atoms().choose(rng).unwrap().clone()
        };
    }
    match rng.gen_range(0..4) {
        0 => SchemeExpr::disjoint(vec![random_mixed(rng, depth - 1), random_mixed(rng, depth - 1)]),
        1 => SchemeExpr::glue(random_mixed(rng, depth - 1), random_mixed(rng, depth - 1)),
        2 => SchemeExpr::affine(rng.gen_range(1..=2), random_mixed(rng, depth - 1)),
        _ => SchemeExpr::proj(rng.gen_range(1..=2), random_mixed(rng, depth - 1)),
    }
}
