use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{check_dim, clifford_word, Flavor, LinearOp, Vector};
use crate::residue::trials::{random_vector, trial_rng};
use crate::residue::{summarize, CheckReport, TrialOutcome};
use crate::scalars::{GaussianRational, Rational, SymbolicScalar, Unit};
use crate::symbols::sphere_moment_ratio;

use super::rational::RationalXn;

pub const PI_VOL_SUB: Unit = Unit {
    pi: 1,
    vol_top: 0,
    vol_sub: 1,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryFlavor {
    /// `c(u) c(v) c(w)`
    Psi1,
    /// `c(u) ĉ(v) ĉ(w)`
    Psi2,
}

impl BoundaryFlavor {
    pub const ALL: [BoundaryFlavor; 2] = [BoundaryFlavor::Psi1, BoundaryFlavor::Psi2];

    pub fn pair_flavor(self) -> Flavor {
        match self {
            BoundaryFlavor::Psi1 => Flavor::C,
            BoundaryFlavor::Psi2 => Flavor::Hat,
        }
    }
}

impl fmt::Display for BoundaryFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryFlavor::Psi1 => write!(f, "psi1"),
            BoundaryFlavor::Psi2 => write!(f, "psi2"),
        }
    }
}

impl FromStr for BoundaryFlavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psi1" => Ok(BoundaryFlavor::Psi1),
            "psi2" => Ok(BoundaryFlavor::Psi2),
            _ => Err(Error::UnknownId(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryArgs {
    pub u: Vector,
    pub v: Vector,
    pub w: Vector,
    pub flavor: BoundaryFlavor,
    pub m: usize,
}

impl BoundaryArgs {
    fn validate(&self) -> Result<usize> {
        let n = 2 * self.m;
        if self.m < 2 {
            return Err(Error::UnsupportedDimension(n));
        }
        check_dim(n)?;
        for x in [&self.u, &self.v, &self.w] {
            if x.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: x.n() });
            }
        }
        Ok(n)
    }
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(Rational::from_int(re), Rational::from_int(im))
}

/// `σ_{-1} = i(c(ξ') + ξ_n c_n)/(1+ξ_n²)` split by `ξ'` component: entry `j-1` holds the
/// `ξ_j` coefficient for `j < n`, entry `n-1` the `ξ'`-independent part.
pub fn principal_symbol(n: usize) -> Result<Vec<RationalXn<LinearOp>>> {
    check_dim(n)?;
    let poles = [(g(0, 1), 1), (g(0, -1), 1)];
    let i = GaussianRational::i();
    (1..=n)
        .map(|j| {
            let cj = LinearOp::generator(n, Flavor::C, j)?.scale(&i);
            let numer = if j < n { vec![cj] } else { vec![LinearOp::zero(n), cj] };
            Ok(RationalXn::from_fraction(LinearOp::zero(n), &numer, &poles))
        })
        .collect()
}

/// `π⁺ σ_{-1}`, component-wise.
pub fn symbol_plus(n: usize) -> Result<Vec<RationalXn<LinearOp>>> {
    principal_symbol(n)?.iter().map(|r| r.pi_plus()).collect()
}

/// `∂_{ξ_n} σ_{2-2m}` restricted to `|ξ'| = 1`: `2(1-m) ξ_n / ((ξ_n - i)^m (ξ_n + i)^m)`.
pub fn symbol_derivative(m: usize) -> (Vec<GaussianRational>, Vec<(GaussianRational, usize)>) {
    (vec![g(0, 0), g(2 - 2 * m as i64, 0)], vec![(g(0, 1), m), (g(0, -1), m)])
}

/// Per-component `ξ_n` integrals (as multiples of π) of `Tr[W π⁺σ_{-1}] ∂σ`.
pub fn boundary_line_integrals(args: &BoundaryArgs) -> Result<Vec<GaussianRational>> {
    let n = args.validate()?;
    let f = args.flavor.pair_flavor();
    let word = clifford_word(&[(Flavor::C, args.u.clone()), (f, args.v.clone()), (f, args.w.clone())])?;
    let (numer, poles) = symbol_derivative(args.m);
    symbol_plus(n)?
        .iter()
        .map(|sigma| {
            let traced = sigma.map(GaussianRational::zero(), |op| word.trace_product(op))?;
            traced.mul_fraction(&numer, &poles).line_integral()
        })
        .collect()
}

/// Boundary density in units of `π·V(S^{n-2})`; `ξ'` is integrated by sphere moments.
pub fn boundary_density(args: &BoundaryArgs) -> Result<SymbolicScalar> {
    let n = 2 * args.m;
    let lines = boundary_line_integrals(args)?;
    let mut total = GaussianRational::zero();
    for (j, c) in lines.iter().enumerate() {
        let mut alpha = vec![0u32; n - 1];
        if j < n - 1 {
            alpha[j] = 1;
        }
        total += &c.scale(&sphere_moment_ratio(&alpha, n - 1));
    }
    Ok(SymbolicScalar::term(total, PI_VOL_SUB))
}

/// `u_n g(v,w) - v_n g(u,w) + w_n g(u,v)` for psi1, `u_n g(v,w)` for psi2.
pub fn boundary_contraction(flavor: BoundaryFlavor, u: &Vector, v: &Vector, w: &Vector) -> Rational {
    let n = u.n();
    match flavor {
        BoundaryFlavor::Psi1 => u.get(n) * &v.dot(w) - v.get(n) * &u.dot(w) + w.get(n) * &u.dot(v),
        BoundaryFlavor::Psi2 => u.get(n) * &v.dot(w),
    }
}

/// Closed form per unit contraction, including `Tr(Id) = 2^n`.
pub fn closed_boundary_coefficient(flavor: BoundaryFlavor, m: usize) -> SymbolicScalar {
    let fact = |k: usize| (1..=k as i64).fold(Rational::one(), |a, j| a * Rational::from_int(j));
    let mi = m as i64;
    let base = fact(2 * m - 2) * Rational::from_int(2).pow(1 - 2 * mi as i32) / (fact(m) * fact(m - 1));
    let sign = match flavor {
        BoundaryFlavor::Psi1 => Rational::from_int(1 - mi),
        BoundaryFlavor::Psi2 => Rational::from_int(mi - 1),
    };
    let c = base * sign * Rational::from_int(2).pow(2 * mi as i32);
    SymbolicScalar::term(GaussianRational::new(Rational::zero(), c), PI_VOL_SUB)
}

fn boundary_trial(id: &str, flavor: BoundaryFlavor, m: usize, seed: u64, trial: usize) -> BoundaryArgs {
    let n = 2 * m;
    if trial == 0 {
        let e = Vector::basis(n, n);
        return BoundaryArgs {
            u: e.clone(),
            v: e.clone(),
            w: e,
            flavor,
            m,
        };
    }
    let mut rng = trial_rng(seed, id, n, trial);
    let u = random_vector(&mut rng, n);
    let v = random_vector(&mut rng, n);
    let w = random_vector(&mut rng, n);
    BoundaryArgs { u, v, w, flavor, m }
}

fn run_boundary<F>(id: &str, flavor: BoundaryFlavor, m: usize, trials: usize, seed: u64, unit: F) -> CheckReport
where
    F: Fn() -> Result<SymbolicScalar> + Sync,
{
    let n = 2 * m;
    let outcomes: Vec<TrialOutcome> = (0..trials.max(1))
        .into_par_iter()
        .map(|trial| {
            let args = boundary_trial(id, flavor, m, seed, trial);
            let k = boundary_contraction(flavor, &args.u, &args.v, &args.w);
            match (boundary_density(&args), unit()) {
                (Ok(computed), Ok(coef)) => {
                    let expected = coef.scale_rational(&k);
                    TrialOutcome {
                        ok: computed == expected,
                        computed: computed.render(n),
                        expected: expected.render(n),
                    }
                }
                (Err(e), _) | (_, Err(e)) => TrialOutcome {
                    ok: false,
                    computed: format!("error: {e}"),
                    expected: String::new(),
                },
            }
        })
        .collect();
    summarize(id, n, outcomes)
}

/// Engine density against the closed form times the contraction, trial by trial.
pub fn verify_boundary(flavor: BoundaryFlavor, m: usize, trials: usize, seed: u64) -> CheckReport {
    let coef = closed_boundary_coefficient(flavor, m);
    run_boundary(&format!("B-{flavor}"), flavor, m, trials, seed, || Ok(coef.clone()))
}

/// Proportionality to the contraction with the engine's own unit value (`u = v = w = e_n`).
pub fn verify_boundary_shape(flavor: BoundaryFlavor, m: usize, trials: usize, seed: u64) -> CheckReport {
    let n = 2 * m;
    let e = Vector::basis(n, n);
    let unit = boundary_density(&BoundaryArgs {
        u: e.clone(),
        v: e.clone(),
        w: e,
        flavor,
        m,
    });
    run_boundary(&format!("B-{flavor}-shape"), flavor, m, trials, seed, || unit.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_matches_model() {
        let n = 4;
        let plus = symbol_plus(n).unwrap();
        let half = GaussianRational::ratio(1, 2);
        for (j, r) in plus.iter().enumerate() {
            let c = LinearOp::generator(n, Flavor::C, j + 1).unwrap();
            let coeff = if j + 1 < n {
                c.scale(&half)
            } else {
                c.scale(&(&half * &GaussianRational::i()))
            };
            assert_eq!(r, &RationalXn::pole_term(coeff, g(0, 1), 1));
        }
    }

    #[test]
    fn unit_normal_configuration() {
        let n = 4;
        let e = Vector::basis(n, n);
        let args = BoundaryArgs {
            u: e.clone(),
            v: e.clone(),
            w: e,
            flavor: BoundaryFlavor::Psi1,
            m: 2,
        };
        assert_eq!(boundary_density(&args).unwrap().render(n), "(-2 i) * pi * V(S^2)");
        assert_eq!(
            closed_boundary_coefficient(BoundaryFlavor::Psi1, 2).render(n),
            "(-2 i) * pi * V(S^2)"
        );
    }

    #[test]
    fn tangent_vectors_vanish() {
        let args = BoundaryArgs {
            u: Vector::from_ints(&[1, 2, 0, 0]),
            v: Vector::from_ints(&[0, 1, -1, 0]),
            w: Vector::from_ints(&[3, 0, 1, 0]),
            flavor: BoundaryFlavor::Psi1,
            m: 2,
        };
        assert!(boundary_density(&args).unwrap().is_zero());
        let psi2 = BoundaryArgs {
            flavor: BoundaryFlavor::Psi2,
            ..args
        };
        assert!(boundary_density(&psi2).unwrap().is_zero());
    }

    #[test]
    fn dimension_checks() {
        let args = BoundaryArgs {
            u: Vector::basis(4, 1),
            v: Vector::basis(6, 1),
            w: Vector::basis(4, 1),
            flavor: BoundaryFlavor::Psi2,
            m: 2,
        };
        assert!(boundary_density(&args).is_err());
    }
}
