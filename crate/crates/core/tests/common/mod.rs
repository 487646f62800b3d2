//! Seeded samplers shared by the heavier fuzz-style suites.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabledge_core::lattice::{DivisorClass, IntersectionLattice, ScaledAmpleClass};
use stabledge_core::{rat, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

pub fn pos_rat(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// Random rank-2 lattice of signature (1, 1): congruence transform of
/// diag(d₊, −d₋) by a random invertible integer matrix, so it passes Hodge
/// validation by construction (asserted anyway).
pub fn random_lattice(rng: &mut ChaCha8Rng) -> Arc<IntersectionLattice> {
    loop {
        let a = rng.gen_range(-3i64..=3);
        let b = rng.gen_range(-3i64..=3);
        let c = rng.gen_range(-3i64..=3);
        let d = rng.gen_range(-3i64..=3);
        if a * d - b * c == 0 {
            continue;
        }
        let dp = pos_rat(rng, 6, 4);
        let dq = pos_rat(rng, 6, 4);
        let m = [[rat(a, 1), rat(b, 1)], [rat(c, 1), rat(d, 1)]];
        let mut gram = vec![vec![Rational::zero(); 2]; 2];
        for (i, row) in gram.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = &m[0][i] * &dp * &m[0][j] - &m[1][i] * &dq * &m[1][j];
            }
        }
        let lattice = IntersectionLattice::new(gram, vec!["A".into(), "B".into()]).unwrap();
        assert!(lattice.validate().passed());
        return lattice;
    }
}

pub fn random_class(rng: &mut ChaCha8Rng, lattice: &Arc<IntersectionLattice>) -> DivisorClass {
    let coeffs = (0..lattice.rank())
        .map(|_| small_rat(rng, 12, 6))
        .collect();
    lattice.class(coeffs).unwrap()
}

pub struct Geometry {
    pub lattice: Arc<IntersectionLattice>,
    pub omega: ScaledAmpleClass,
    pub curve: DivisorClass,
}

/// Lattice + ω with ω² > 0 + a curve with C² < 0 oriented so C.ω > 0.
pub fn random_geometry(rng: &mut ChaCha8Rng) -> Geometry {
    loop {
        let lattice = random_lattice(rng);
        let direction = random_class(rng, &lattice);
        if !direction.self_intersection().is_positive() {
            continue;
        }
        let mut curve = random_class(rng, &lattice);
        if !curve.self_intersection().is_negative() {
            continue;
        }
        let across = direction.pair(&curve).unwrap();
        if across.is_zero() {
            continue;
        }
        if across.is_negative() {
            curve = -&curve;
        }
        let omega = ScaledAmpleClass::new(direction, pos_rat(rng, 8, 8)).unwrap();
        return Geometry {
            lattice,
            omega,
            curve,
        };
    }
}

/// Ample class on the blown-up-plane lattice: ω′ = (u+v)H − vE with
/// u, v > 0, which pairs positively with both effective generators and has
/// positive square.
pub fn random_ample_blowup(
    rng: &mut ChaCha8Rng,
    lattice: &Arc<IntersectionLattice>,
) -> ScaledAmpleClass {
    let u = pos_rat(rng, 9, 5);
    let v = pos_rat(rng, 9, 5);
    let direction = lattice.class(vec![&u + &v, -v]).unwrap();
    ScaledAmpleClass::new(direction, pos_rat(rng, 8, 8)).unwrap()
}

/// Ample class on the rank-1 plane lattice.
pub fn random_ample_p2(
    rng: &mut ChaCha8Rng,
    lattice: &Arc<IntersectionLattice>,
) -> ScaledAmpleClass {
    let direction = lattice.class(vec![pos_rat(rng, 9, 5)]).unwrap();
    ScaledAmpleClass::new(direction, pos_rat(rng, 8, 8)).unwrap()
}
