use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::{check_dim, clifford, clifford_word, Flavor, LinearOp, Vector};
use crate::forms::{form_contract, AntiSymForm, LiftKind};
use crate::scalars::{GaussianRational, Rational, SymbolicScalar, Unit};
use crate::symbols::sphere_moment_ratio;

use super::functional::unit_inputs;
use super::report::{summarize, CheckReport, TrialOutcome};
use super::trials::{random_form, random_vector, trial_rng};

/// Where the `c(∂_i) ... ξ_j c(ξ)` sandwich sits relative to the lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `Tr(W X)`
    Plain,
    /// `∫ Tr(W c(ξ) X c(ξ))`
    Left,
    /// `∫ Tr(W X c(ξ) c(ξ))`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaShape {
    /// LHS built from an argument word and a lift; RHS `coefficient · T(u, ...) · Tr(Id)` (times `V` if integrated).
    Torsion {
        word: Vec<Flavor>,
        lift: LiftKind,
        placement: Placement,
        coefficient: Rational,
    },
    /// `Tr[c(u) g(v) g(w) c(e_n)]` with `g = c` or `ĉ`.
    Boundary { hat: bool },
    /// `Tr[c(u) c(v)]` against `± g(u, v) Tr(Id)`.
    Metric,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaSpec {
    pub id: &'static str,
    pub shape: LemmaShape,
}

pub const LEMMA_IDS: [&str; 24] = [
    "L2.4", "L2.5a", "L2.5b", "L3.4a", "L3.4b", "L3.5a", "L3.5b", "L3.6a", "L3.6b", "L3.7a", "L3.7b", "L3.8a", "L3.8b", "L3.9a", "L3.9b",
    "L4.5", "L4.6a", "L4.6b", "L4.7", "L4.8a", "L4.8b", "B5.8", "B5.10", "M6.2",
];

impl LemmaSpec {
    pub fn lookup(id: &str) -> Result<LemmaSpec> {
        use Flavor::{Hat as H, C};
        use LiftKind::*;
        use Placement::*;
        let q = |a: i64, b: i64| Rational::new(a, b);
        let (word, lift, placement, coefficient) = match id {
            "L2.4" => (vec![H, H], T1, Plain, q(-1, 1)),
            "L2.5a" => (vec![H, H], T1, Left, q(1, 1)),
            "L2.5b" => (vec![H, H], T1, Right, q(1, 1)),
            "L3.4a" => (vec![C, C, C], T2Cubic, Plain, q(1, 1)),
            "L3.4b" => (vec![C, C, C], T2Mixed, Plain, q(0, 1)),
            "L3.5a" => (vec![C, C, C], T2Mixed, Left, q(0, 1)),
            "L3.5b" => (vec![C, C, C], T2Mixed, Right, q(0, 1)),
            "L3.6a" => (vec![C, C, C], T2Cubic, Right, q(-1, 1)),
            "L3.6b" => (vec![C, C, C], T2Cubic, Left, q(-5, 1)),
            "L3.7a" => (vec![C, H, H], T2Mixed, Plain, q(-2, 1)),
            "L3.7b" => (vec![C, H, H], T2Cubic, Plain, q(0, 1)),
            "L3.8a" => (vec![C, H, H], T2Cubic, Right, q(0, 1)),
            "L3.8b" => (vec![C, H, H], T2Cubic, Left, q(0, 1)),
            "L3.9a" => (vec![C, H, H], T2Mixed, Left, q(2, 1)),
            "L3.9b" => (vec![C, H, H], T2Mixed, Right, q(2, 1)),
            "L4.5" => (vec![C, C, H, H], T3, Plain, q(-1, 6)),
            "L4.6a" => (vec![C, C, H, H], T3, Left, q(-1, 2)),
            "L4.6b" => (vec![C, C, H, H], T3, Right, q(1, 6)),
            "L4.7" => (vec![H, H, H, H], T4, Plain, q(1, 1)),
            "L4.8a" => (vec![H, H, H, H], T4, Left, q(-1, 1)),
            "L4.8b" => (vec![H, H, H, H], T4, Right, q(-1, 1)),
            "B5.8" => {
                return Ok(LemmaSpec {
                    id: "B5.8",
                    shape: LemmaShape::Boundary { hat: false },
                })
            }
            "B5.10" => {
                return Ok(LemmaSpec {
                    id: "B5.10",
                    shape: LemmaShape::Boundary { hat: true },
                })
            }
            "M6.2" => {
                return Ok(LemmaSpec {
                    id: "M6.2",
                    shape: LemmaShape::Metric,
                })
            }
            other => return Err(Error::UnknownId(other.to_string())),
        };
        let id = LEMMA_IDS.iter().find(|s| **s == id).expect("listed id");
        Ok(LemmaSpec {
            id,
            shape: LemmaShape::Torsion {
                word,
                lift,
                placement,
                coefficient,
            },
        })
    }

    pub fn all() -> Vec<LemmaSpec> {
        LEMMA_IDS.iter().map(|id| LemmaSpec::lookup(id).expect("listed id")).collect()
    }

    pub fn vector_count(&self) -> usize {
        match &self.shape {
            LemmaShape::Torsion { word, .. } => word.len(),
            LemmaShape::Boundary { .. } => 3,
            LemmaShape::Metric => 2,
        }
    }

    pub fn form_degree(&self) -> Option<usize> {
        match &self.shape {
            LemmaShape::Torsion { lift, .. } => Some(lift.degree()),
            _ => None,
        }
    }

    /// Inputs for one trial; trial 0 is a unit configuration.
    pub fn trial_inputs(&self, n: usize, seed: u64, trial: usize) -> (Option<AntiSymForm>, Vec<Vector>) {
        if trial == 0 {
            return match &self.shape {
                LemmaShape::Torsion { lift, .. } => {
                    let (t, vs) = unit_inputs(n, lift.degree());
                    (Some(t), vs)
                }
                LemmaShape::Boundary { .. } => (None, vec![Vector::basis(n, n); 3]),
                LemmaShape::Metric => (None, vec![Vector::basis(n, 1); 2]),
            };
        }
        let mut rng = trial_rng(seed, self.id, n, trial);
        let t = self.form_degree().map(|k| random_form(&mut rng, n, k));
        let vs = (0..self.vector_count()).map(|_| random_vector(&mut rng, n)).collect();
        (t, vs)
    }
}

fn c_gen(n: usize, i: usize) -> Result<LinearOp> {
    LinearOp::generator(n, Flavor::C, i)
}

/// `Σ_{i,h} (∫ ξ_i ξ_h) Tr(...)` over the unit sphere, as a multiple of `V(S^{n-1})`.
fn sandwich_trace(n: usize, mut term: impl FnMut(usize, usize) -> Result<GaussianRational>) -> Result<SymbolicScalar> {
    let mut acc = GaussianRational::zero();
    for i in 1..=n {
        for h in 1..=n {
            let mut alpha = vec![0u32; n];
            alpha[i - 1] += 1;
            alpha[h - 1] += 1;
            let w = sphere_moment_ratio(&alpha, n);
            if w.is_zero() {
                continue;
            }
            acc += &term(i, h)?.scale(&w);
        }
    }
    Ok(SymbolicScalar::term(acc, Unit::VOL_TOP))
}

fn g(v: &Vector, w: &Vector) -> Rational {
    v.dot(w)
}

/// Exact left-hand side of a lemma.
pub fn lemma_lhs(spec: &LemmaSpec, n: usize, t: Option<&AntiSymForm>, vectors: &[Vector]) -> Result<SymbolicScalar> {
    check_dim(n)?;
    if vectors.len() != spec.vector_count() {
        return Err(Error::ArgumentCount {
            expected: spec.vector_count(),
            found: vectors.len(),
        });
    }
    match &spec.shape {
        LemmaShape::Torsion { word, lift, placement, .. } => {
            let t = t.ok_or_else(|| Error::Config(format!("{} needs a torsion form", spec.id)))?;
            if t.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: t.n() });
            }
            let args: Vec<(Flavor, Vector)> = word.iter().copied().zip(vectors.iter().cloned()).collect();
            let w = clifford_word(&args)?;
            let x = lift.apply(t)?;
            match placement {
                Placement::Plain => Ok(SymbolicScalar::constant(w.trace_product(&x)?)),
                Placement::Left => sandwich_trace(n, |i, h| w.trace_product(&c_gen(n, i)?.compose(&x)?.compose(&c_gen(n, h)?)?)),
                Placement::Right => sandwich_trace(n, |i, h| w.trace_product(&x.compose(&c_gen(n, i)?)?.compose(&c_gen(n, h)?)?)),
            }
        }
        LemmaShape::Boundary { hat } => {
            let f = if *hat { Flavor::Hat } else { Flavor::C };
            let w = clifford_word(&[(Flavor::C, vectors[0].clone()), (f, vectors[1].clone()), (f, vectors[2].clone())])?;
            Ok(SymbolicScalar::constant(w.trace_product(&c_gen(n, n)?)?))
        }
        LemmaShape::Metric => {
            let a = clifford(Flavor::C, &vectors[0], n)?;
            let b = clifford(Flavor::C, &vectors[1], n)?;
            Ok(SymbolicScalar::constant(a.trace_product(&b)?))
        }
    }
}

/// Closed-form right-hand side; `metric_sign` fixes the sign for the metric shape.
pub fn lemma_rhs(spec: &LemmaSpec, n: usize, t: Option<&AntiSymForm>, vectors: &[Vector], metric_sign: i64) -> Result<SymbolicScalar> {
    let tr_id = Rational::from_int(1i64 << n);
    let constant = |r: Rational| SymbolicScalar::constant(GaussianRational::real(r * &tr_id));
    match &spec.shape {
        LemmaShape::Torsion {
            placement, coefficient, ..
        } => {
            let t = t.ok_or_else(|| Error::Config(format!("{} needs a torsion form", spec.id)))?;
            let v = constant(coefficient * &form_contract(t, vectors)?);
            Ok(if *placement == Placement::Plain {
                v
            } else {
                v.times_unit(Unit::VOL_TOP)
            })
        }
        LemmaShape::Boundary { hat } => {
            let (u, v, w) = (&vectors[0], &vectors[1], &vectors[2]);
            let r = if *hat {
                -(u.get(n) * &g(v, w))
            } else {
                u.get(n) * &g(v, w) - v.get(n) * &g(u, w) + w.get(n) * &g(u, v)
            };
            Ok(constant(r))
        }
        LemmaShape::Metric => Ok(constant(Rational::from_int(metric_sign) * g(&vectors[0], &vectors[1]))),
    }
}

pub fn lemma_check(lemma_id: &str, n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let spec = LemmaSpec::lookup(lemma_id)?;
    check_dim(n)?;
    if let Some(k) = spec.form_degree() {
        if k > n {
            return Err(Error::WrongDegree { expected: n, found: k });
        }
    }
    // Sign convention of the metric trace, read off the unit configuration.
    let metric_sign = match spec.shape {
        LemmaShape::Metric => {
            let (_, vs) = spec.trial_inputs(n, seed, 0);
            let lhs = lemma_lhs(&spec, n, None, &vs)?;
            let unit = lemma_rhs(&spec, n, None, &vs, 1)?;
            match lhs.ratio_to(&unit) {
                Some(k) if k == GaussianRational::one() => 1,
                Some(k) if k == GaussianRational::int(-1) => -1,
                _ => 0,
            }
        }
        _ => 1,
    };
    let outcomes: Vec<TrialOutcome> = (0..trials.max(1))
        .into_par_iter()
        .map(|trial| {
            let (t, vs) = spec.trial_inputs(n, seed, trial);
            match (
                lemma_lhs(&spec, n, t.as_ref(), &vs),
                lemma_rhs(&spec, n, t.as_ref(), &vs, metric_sign),
            ) {
                (Ok(l), Ok(r)) => TrialOutcome {
                    ok: l == r && metric_sign != 0,
                    computed: l.render(n),
                    expected: r.render(n),
                },
                (Err(e), _) | (_, Err(e)) => TrialOutcome {
                    ok: false,
                    computed: format!("error: {e}"),
                    expected: String::new(),
                },
            }
        })
        .collect();
    Ok(summarize(spec.id, n, outcomes))
}
