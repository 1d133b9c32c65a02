use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::Vector;
use crate::forms::{increasing_tuples, AntiSymForm};
use crate::scalars::Rational;

fn fnv1a(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Deterministic per-trial generator keyed by seed, check id, dimension and trial index.
pub fn trial_rng(seed: u64, id: &str, n: usize, trial: usize) -> ChaCha8Rng {
    let mut h = fnv1a(id) ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    h = (h ^ n as u64).wrapping_mul(0x0100_0000_01b3);
    h = (h ^ trial as u64).wrapping_mul(0x0100_0000_01b3);
    ChaCha8Rng::seed_from_u64(h)
}

/// `k / d` with `k ∈ {-3..3}`, `d ∈ {1, 2}`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let k: i64 = rng.random_range(-3..=3);
    let d: i64 = rng.random_range(1..=2);
    Rational::new(k, d)
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    Vector::new((0..n).map(|_| random_rational(rng)).collect())
}

pub fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize) -> AntiSymForm {
    let mut t = AntiSymForm::zero(n, k);
    for idx in increasing_tuples(n, k) {
        t.set(&idx, random_rational(rng)).expect("valid tuple");
    }
    t
}

/// Random signed permutation of the frame, 1-based.
pub fn random_signed_permutation<R: Rng>(rng: &mut R, n: usize) -> (Vec<usize>, Vec<bool>) {
    let mut perm: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let signs = (0..n).map(|_| rng.random_bool(0.5)).collect();
    (perm, signs)
}

/// Applies `e_j -> ±e_{perm_j}` to a vector.
pub fn transform_vector(v: &Vector, perm: &[usize], signs: &[bool]) -> Vector {
    let mut out = vec![Rational::zero(); v.n()];
    for (j, c) in v.components.iter().enumerate() {
        out[perm[j] - 1] = if signs[j] { -c } else { c.clone() };
    }
    Vector::new(out)
}
