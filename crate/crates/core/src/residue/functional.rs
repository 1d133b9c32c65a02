use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{clifford_word, Flavor, Vector};
use crate::forms::{form_contract, AntiSymForm, LiftKind};
use crate::scalars::{GaussianRational, Rational, SymbolicScalar, Unit};
use crate::symbols::{interior_integrand, trace_integrate};

use super::report::{summarize, CheckReport, TrialOutcome};
use super::trials::{random_form, random_vector, trial_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FunctionalId {
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl FunctionalId {
    pub const ALL: [FunctionalId; 5] = [
        FunctionalId::T1,
        FunctionalId::T2,
        FunctionalId::T3,
        FunctionalId::T4,
        FunctionalId::T5,
    ];
}

impl fmt::Display for FunctionalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for FunctionalId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" => Ok(FunctionalId::T1),
            "T2" => Ok(FunctionalId::T2),
            "T3" => Ok(FunctionalId::T3),
            "T4" => Ok(FunctionalId::T4),
            "T5" => Ok(FunctionalId::T5),
            _ => Err(Error::UnknownId(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalSpec {
    pub id: FunctionalId,
    pub arg_flavors: Vec<Flavor>,
    pub torsion_degree: usize,
    pub lift: LiftKind,
    pub prefactor: GaussianRational,
}

impl FunctionalSpec {
    pub fn for_id(id: FunctionalId) -> FunctionalSpec {
        use Flavor::{Hat, C};
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        let (arg_flavors, torsion_degree, lift, prefactor) = match id {
            FunctionalId::T1 => (vec![Hat, Hat], 2, LiftKind::T1, i),
            FunctionalId::T2 => (vec![C, C, C], 3, LiftKind::T2, one),
            FunctionalId::T3 => (vec![C, Hat, Hat], 3, LiftKind::T2, one),
            FunctionalId::T4 => (vec![C, C, Hat, Hat], 4, LiftKind::T3, i),
            FunctionalId::T5 => (vec![Hat, Hat, Hat, Hat], 4, LiftKind::T4, i),
        };
        FunctionalSpec {
            id,
            arg_flavors,
            torsion_degree,
            lift,
            prefactor,
        }
    }
}

fn check_inputs(spec: &FunctionalSpec, t: &AntiSymForm, vectors: &[Vector], m: usize) -> Result<()> {
    let n = 2 * m;
    if m < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    if t.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.n() });
    }
    if t.degree() != spec.torsion_degree {
        return Err(Error::WrongDegree {
            expected: spec.torsion_degree,
            found: t.degree(),
        });
    }
    if vectors.len() != spec.arg_flavors.len() {
        return Err(Error::ArgumentCount {
            expected: spec.arg_flavors.len(),
            found: vectors.len(),
        });
    }
    if let Some(v) = vectors.iter().find(|v| v.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: v.n() });
    }
    Ok(())
}

/// Zero-order part and per-`m` sandwich part; the density is `zero + m·sandwich`.
pub fn density_parts(spec: &FunctionalSpec, t: &AntiSymForm, vectors: &[Vector], m: usize) -> Result<(SymbolicScalar, SymbolicScalar)> {
    check_inputs(spec, t, vectors, m)?;
    let args: Vec<(Flavor, Vector)> = spec.arg_flavors.iter().copied().zip(vectors.iter().cloned()).collect();
    let word = clifford_word(&args)?;
    let theta = spec.lift.apply(t)?;
    let poly = interior_integrand(&theta, m, &spec.prefactor)?;
    let zero = trace_integrate(&word, &poly.homogeneous_part(0))?;
    let sandwich = trace_integrate(&word, &poly.homogeneous_part(2))?;
    Ok((zero, sandwich.scale_rational(&Rational::new(1, m as i64))))
}

/// Pointwise residue density of the functional: a multiple of `V(S^{2m-1})`.
pub fn spectral_density(spec: &FunctionalSpec, t: &AntiSymForm, vectors: &[Vector], m: usize) -> Result<SymbolicScalar> {
    check_inputs(spec, t, vectors, m)?;
    let args: Vec<(Flavor, Vector)> = spec.arg_flavors.iter().copied().zip(vectors.iter().cloned()).collect();
    let word = clifford_word(&args)?;
    let theta = spec.lift.apply(t)?;
    trace_integrate(&word, &interior_integrand(&theta, m, &spec.prefactor)?)
}

/// Closed-form coefficients of the five functionals, times `V(S^{2m-1})`.
pub fn closed_coefficient(id: FunctionalId, m: usize) -> SymbolicScalar {
    let mi = m as i64;
    let p2 = |e: i64| Rational::from_int(2).pow(e as i32);
    let (re, im) = match id {
        FunctionalId::T1 => (Rational::zero(), Rational::from_int(2 * mi - 1) * p2(2 * mi)),
        FunctionalId::T2 => (Rational::from_int(3 - 18 * mi) * p2(2 * mi - 1), Rational::zero()),
        FunctionalId::T3 => (Rational::from_int(1 - 2 * mi) * p2(2 * mi - 1), Rational::zero()),
        FunctionalId::T4 => (Rational::zero(), Rational::new(-2 * mi - 1, 3) * p2(2 * mi - 1)),
        FunctionalId::T5 => (Rational::zero(), Rational::from_int(1 - 2 * mi) * p2(2 * mi)),
    };
    SymbolicScalar::term(GaussianRational::new(re, im), Unit::VOL_TOP)
}

/// Unit configuration: `T(e_1..e_k) = 1`, arguments `e_1..e_k`.
pub fn unit_inputs(n: usize, k: usize) -> (AntiSymForm, Vec<Vector>) {
    let idx: Vec<usize> = (1..=k).collect();
    let t = AntiSymForm::unit(n, &idx, Rational::one()).expect("valid unit form");
    (t, (1..=k).map(|j| Vector::basis(n, j)).collect())
}

/// Trial 0 is the unit configuration; later trials are random.
pub fn trial_inputs(id: &str, n: usize, k: usize, nvec: usize, seed: u64, trial: usize) -> (AntiSymForm, Vec<Vector>) {
    if trial == 0 && nvec == k {
        return unit_inputs(n, k);
    }
    let mut rng = trial_rng(seed, id, n, trial);
    let t = random_form(&mut rng, n, k);
    let vs = (0..nvec).map(|_| random_vector(&mut rng, n)).collect();
    (t, vs)
}

pub fn verify_theorem(id: FunctionalId, m: usize, trials: usize, seed: u64) -> CheckReport {
    verify_theorem_against(id, m, trials, seed, &closed_coefficient(id, m))
}

/// Compares the density with `coefficient × T(u, ...)` trial by trial.
pub fn verify_theorem_against(id: FunctionalId, m: usize, trials: usize, seed: u64, coefficient: &SymbolicScalar) -> CheckReport {
    let spec = FunctionalSpec::for_id(id);
    let n = 2 * m;
    let name = id.to_string();
    let outcomes: Vec<TrialOutcome> = (0..trials.max(1))
        .into_par_iter()
        .map(|trial| {
            let (t, vs) = trial_inputs(&name, n, spec.torsion_degree, spec.arg_flavors.len(), seed, trial);
            match (spectral_density(&spec, &t, &vs, m), form_contract(&t, &vs)) {
                (Ok(computed), Ok(contraction)) => {
                    let expected = coefficient.scale_rational(&contraction);
                    TrialOutcome {
                        ok: computed == expected,
                        computed: computed.render(n),
                        expected: expected.render(n),
                    }
                }
                (Err(e), _) | (_, Err(e)) => TrialOutcome {
                    ok: false,
                    computed: format!("error: {e}"),
                    expected: coefficient.render(n),
                },
            }
        })
        .collect();
    summarize(&name, n, outcomes)
}

/// Checks the split `zero-order = (3/2)·2^{2m}·T·V` and `sandwich = -9·2^{2m}·T·V` for the cubic torsion functional.
pub fn verify_assembly(m: usize, trials: usize, seed: u64) -> CheckReport {
    let spec = FunctionalSpec::for_id(FunctionalId::T2);
    let n = 2 * m;
    let id = "T2-assembly";
    let scale = Rational::from_int(2).pow(2 * m as i32);
    let zero_unit = SymbolicScalar::term(GaussianRational::real(Rational::new(3, 2) * &scale), Unit::VOL_TOP);
    let sandwich_unit = SymbolicScalar::term(GaussianRational::real(Rational::from_int(-9) * &scale), Unit::VOL_TOP);
    let outcomes: Vec<TrialOutcome> = (0..trials.max(1))
        .into_par_iter()
        .map(|trial| {
            let (t, vs) = trial_inputs(id, n, 3, 3, seed, trial);
            match (density_parts(&spec, &t, &vs, m), form_contract(&t, &vs)) {
                (Ok((z, s)), Ok(k)) => {
                    let (ez, es) = (zero_unit.scale_rational(&k), sandwich_unit.scale_rational(&k));
                    TrialOutcome {
                        ok: z == ez && s == es,
                        computed: format!("zero-order {}; sandwich {}", z.render(n), s.render(n)),
                        expected: format!("zero-order {}; sandwich {}", ez.render(n), es.render(n)),
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_torsion_gives_zero_density() {
        for id in FunctionalId::ALL {
            let spec = FunctionalSpec::for_id(id);
            let t = AntiSymForm::zero(4, spec.torsion_degree);
            let vs: Vec<Vector> = (1..=spec.arg_flavors.len()).map(|j| Vector::basis(4, j)).collect();
            assert!(spectral_density(&spec, &t, &vs, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn closed_form_coefficients() {
        let show = |id, m| closed_coefficient(id, m).render(2 * m);
        assert_eq!(show(FunctionalId::T1, 2), "(48 i) * V(S^3)");
        assert_eq!(show(FunctionalId::T2, 2), "(-264) * V(S^3)");
        assert_eq!(show(FunctionalId::T3, 2), "(-24) * V(S^3)");
        assert_eq!(show(FunctionalId::T4, 2), "(-40/3 i) * V(S^3)");
        assert_eq!(show(FunctionalId::T5, 2), "(-48 i) * V(S^3)");
        assert_eq!(show(FunctionalId::T5, 3), "(-320 i) * V(S^5)");
    }

    #[test]
    fn input_validation() {
        let spec = FunctionalSpec::for_id(FunctionalId::T2);
        let (t, vs) = unit_inputs(4, 3);
        assert!(spectral_density(&spec, &t, &vs[..2], 2).is_err());
        assert!(spectral_density(&spec, &t, &vs, 3).is_err());
        let (t2, _) = unit_inputs(4, 2);
        assert!(spectral_density(&spec, &t2, &vs, 2).is_err());
    }

    #[test]
    fn parts_sum_to_density() {
        let spec = FunctionalSpec::for_id(FunctionalId::T2);
        let (t, vs) = trial_inputs("parts", 4, 3, 3, 11, 1);
        let (z, s) = density_parts(&spec, &t, &vs, 2).unwrap();
        assert_eq!(
            &z + &s.scale_rational(&Rational::from_int(2)),
            spectral_density(&spec, &t, &vs, 2).unwrap()
        );
    }
}
