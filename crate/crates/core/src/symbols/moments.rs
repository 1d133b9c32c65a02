use crate::scalars::{GaussianRational, Rational, SymbolicScalar, Unit};

fn double_factorial_odd(k: u32) -> u64 {
    // (k-1)!! for even k
    (1..k).step_by(2).map(u64::from).product::<u64>().max(1)
}

/// `∫_{S^{d-1}} ξ^α dσ / V(S^{d-1})` on the unit sphere of `R^d`.
pub fn sphere_moment_ratio(alpha: &[u32], d: usize) -> Rational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let num: Rational = alpha
        .iter()
        .fold(Rational::one(), |acc, &a| acc * Rational::from_int(double_factorial_odd(a) as i64));
    let half: u32 = alpha.iter().sum::<u32>() / 2;
    let den = (0..half).fold(Rational::one(), |acc, j| acc * Rational::from_int(d as i64 + 2 * j as i64));
    num / den
}

/// `∫_{S^{n-1}} ξ^α σ(ξ)` as a multiple of `V(S^{n-1})`.
pub fn sphere_moment(alpha: &[u32], n: usize) -> SymbolicScalar {
    SymbolicScalar::term(GaussianRational::real(sphere_moment_ratio(alpha, n)), Unit::VOL_TOP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_examples() {
        assert!(sphere_moment(&[1, 0, 0, 0], 4).is_zero());
        for n in [4usize, 6, 8] {
            let mut a = vec![0; n];
            a[0] = 2;
            assert_eq!(sphere_moment_ratio(&a, n), Rational::new(1, n as i64));
        }
        assert_eq!(sphere_moment_ratio(&[2, 2, 0, 0], 4), Rational::new(1, 24));
        assert_eq!(sphere_moment_ratio(&[4, 0, 0, 0], 4), Rational::new(3, 24));
        assert_eq!(sphere_moment_ratio(&[0, 0, 0, 0], 4), Rational::one());
    }

    #[test]
    fn permutation_symmetry() {
        assert_eq!(
            sphere_moment_ratio(&[2, 4, 0, 2, 0, 0], 6),
            sphere_moment_ratio(&[0, 2, 0, 0, 4, 2], 6)
        );
    }
}
