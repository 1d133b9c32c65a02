use std::time::{Duration, Instant};

use hodge_residue::boundary::{
    boundary_density, symbol_derivative, symbol_plus, verify_boundary, verify_boundary_shape, BoundaryArgs, BoundaryFlavor, RationalXn,
};
use hodge_residue::cli::{cmd_verify, Format, Suite, VerifyArgs};
use hodge_residue::exterior::{clifford_word, Flavor, LinearOp, Vector};
use hodge_residue::forms::form_contract;
use hodge_residue::oracle::{
    boundary_density_float, close, density_float, density_integrand, lemma_lhs_float, line_quadrature, sphere_quadrature,
};
use hodge_residue::residue::trials::{random_form, random_rational, random_signed_permutation, random_vector, transform_vector, trial_rng};
use hodge_residue::residue::{
    lemma_check, lemma_lhs, spectral_density, trial_inputs, verify_assembly, verify_theorem, CheckReport, FunctionalId, FunctionalSpec,
    LemmaSpec, LEMMA_IDS,
};
use hodge_residue::scalars::{GaussianRational, Rational};
use hodge_residue::symbols::{flat_commutator_check, sphere_moment_ratio};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;
const TRIALS: usize = 20;

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.pass = false;
            self.notes.push(note());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn reports(&mut self, reports: &[CheckReport]) {
        for r in reports {
            self.check(r.passed(), || {
                format!("{} n={}: computed {} | expected {}", r.id, r.n, r.computed, r.expected)
            });
        }
        let ok = reports.iter().filter(|r| r.passed()).count();
        self.note(format!("{ok}/{} checks pass", reports.len()));
    }
}

fn criterion(results: &mut Vec<bool>, num: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        out.check(elapsed <= limit, || format!("runtime {elapsed:.2?} exceeds {limit:?}"));
    }
    println!(
        "criterion {num} [{name}]: {} ({elapsed:.2?})",
        if out.pass { "PASS" } else { "FAIL" }
    );
    for n in &out.notes {
        println!("    {n}");
    }
    results.push(out.pass);
}

fn clifford_relations() -> Outcome {
    let mut out = Outcome::new();
    for n in [2usize, 4, 6, 8] {
        let c: Vec<LinearOp> = (1..=n).map(|j| LinearOp::generator(n, Flavor::C, j).unwrap()).collect();
        let h: Vec<LinearOp> = (1..=n).map(|j| LinearOp::generator(n, Flavor::Hat, j).unwrap()).collect();
        let anti = |a: &LinearOp, b: &LinearOp| a.compose(b).unwrap().add(&b.compose(a).unwrap()).unwrap();
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { 2 } else { 0 };
                out.check(anti(&c[i], &c[j]) == LinearOp::scalar(n, GaussianRational::int(-delta)), || {
                    format!("n={n} {{c{i}, c{j}}}")
                });
                out.check(anti(&h[i], &h[j]) == LinearOp::scalar(n, GaussianRational::int(delta)), || {
                    format!("n={n} {{ĉ{i}, ĉ{j}}}")
                });
                out.check(anti(&c[i], &h[j]).is_zero(), || format!("n={n} {{c{i}, ĉ{j}}}"));
            }
        }
    }
    out
}

fn lemma_suite() -> Outcome {
    let mut out = Outcome::new();
    let reports: Vec<CheckReport> = [4usize, 6]
        .iter()
        .flat_map(|&n| LEMMA_IDS.iter().map(move |id| lemma_check(id, n, TRIALS, SEED).unwrap()))
        .collect();
    out.reports(&reports);
    out
}

fn theorem_suite() -> Outcome {
    let mut out = Outcome::new();
    let reports: Vec<CheckReport> = [2usize, 3]
        .iter()
        .flat_map(|&m| FunctionalId::ALL.into_iter().map(move |id| verify_theorem(id, m, TRIALS, SEED)))
        .collect();
    out.reports(&reports);
    out
}

fn assembly() -> Outcome {
    let mut out = Outcome::new();
    let reports: Vec<CheckReport> = [2usize, 3].iter().map(|&m| verify_assembly(m, TRIALS, SEED)).collect();
    out.reports(&reports);
    out
}

fn oracle_equivalence() -> Outcome {
    let mut out = Outcome::new();
    let mut count = 0usize;
    let mut worst = 0.0f64;
    let mut compare = |out: &mut Outcome, what: String, exact: Complex64, float: Complex64| {
        count += 1;
        worst = worst.max((exact - float).norm() / exact.norm().max(1.0));
        out.check(close(exact, float, 1e-9), || format!("{what}: exact {exact} vs oracle {float}"));
    };
    for n in [4usize, 6] {
        for spec in LemmaSpec::all() {
            for trial in 0..3 {
                let (t, vs) = spec.trial_inputs(n, SEED, trial);
                let exact = lemma_lhs(&spec, n, t.as_ref(), &vs).unwrap().numeric_value(n);
                let float = lemma_lhs_float(&spec, n, t.as_ref(), &vs).unwrap();
                compare(&mut out, format!("{} n={n} trial {trial}", spec.id), exact, float);
            }
        }
    }
    let mut mc = 0usize;
    for m in [2usize, 3] {
        let n = 2 * m;
        for id in FunctionalId::ALL {
            let spec = FunctionalSpec::for_id(id);
            for trial in 0..3 {
                let (t, vs) = trial_inputs("acceptance-oracle", n, spec.torsion_degree, spec.arg_flavors.len(), SEED, trial);
                let exact = spectral_density(&spec, &t, &vs, m).unwrap().numeric_value(n);
                compare(
                    &mut out,
                    format!("{id} m={m} trial {trial}"),
                    exact,
                    density_float(&spec, &t, &vs, m).unwrap(),
                );
                if trial == 1 {
                    let f = density_integrand(&spec, &t, &vs, m).unwrap();
                    let est = sphere_quadrature(&f, n, 100_000, SEED + mc as u64);
                    mc += 1;
                    out.check(est.within_sigma(exact, 3.0), || {
                        format!("{id} m={m} Monte Carlo {:?} vs {exact}", est)
                    });
                }
            }
        }
        for flavor in BoundaryFlavor::ALL {
            for trial in 0..3 {
                let mut rng = trial_rng(SEED, "acceptance-boundary", n, trial);
                let (u, v, w) = (random_vector(&mut rng, n), random_vector(&mut rng, n), random_vector(&mut rng, n));
                let exact = boundary_density(&BoundaryArgs {
                    u: u.clone(),
                    v: v.clone(),
                    w: w.clone(),
                    flavor,
                    m,
                })
                .unwrap()
                .numeric_value(n);
                let float = boundary_density_float(flavor == BoundaryFlavor::Psi2, &u, &v, &w, m).unwrap();
                compare(&mut out, format!("{flavor} m={m} trial {trial}"), exact, float);
            }
        }
    }
    out.note(format!(
        "{count} deterministic comparisons, worst relative error {worst:.1e}; {mc} Monte-Carlo estimates at 3 sigma"
    ));
    out
}

fn boundary_integrand(m: usize) -> RationalXn<GaussianRational> {
    // ξ / (2 (ξ - i) (1 + ξ²)^m)
    let (_, mut poles) = symbol_derivative(m);
    poles.push((GaussianRational::i(), 1));
    RationalXn::scalar_fraction(&[GaussianRational::zero(), GaussianRational::ratio(1, 2)], &poles)
}

fn boundary_suite() -> Outcome {
    let mut out = Outcome::new();
    for n in [4usize, 6] {
        let half = GaussianRational::ratio(1, 2);
        for (j, r) in symbol_plus(n).unwrap().iter().enumerate() {
            let c = LinearOp::generator(n, Flavor::C, j + 1).unwrap();
            let coeff = if j + 1 < n {
                c.scale(&half)
            } else {
                c.scale(&(&half * &GaussianRational::i()))
            };
            out.check(*r == RationalXn::pole_term(coeff, GaussianRational::i(), 1), || {
                format!("π⁺ component {} at n={n}", j + 1)
            });
        }
    }
    for m in [2usize, 3] {
        let r = boundary_integrand(m);
        let exact = r.line_integral_symbolic().unwrap();
        let float = line_quadrature(|x| {
            let z = Complex64::new(x, 0.0);
            z / (2.0 * (z - Complex64::i()) * (1.0 + z * z).powi(m as i32))
        })
        .unwrap();
        let e = exact.numeric_value(2 * m);
        out.check(close(e, float, 1e-9), || format!("m={m} line integral {e} vs quadrature {float}"));
        out.note(format!(
            "m={m}: ∫ξ/(2(ξ-i)(1+ξ²)^m) = {} (quadrature {:.12})",
            exact.render(2 * m),
            float
        ));
    }
    let mut reports = Vec::new();
    for m in [2usize, 3] {
        for flavor in BoundaryFlavor::ALL {
            reports.push(verify_boundary_shape(flavor, m, TRIALS, SEED));
            reports.push(verify_boundary(flavor, m, TRIALS, SEED));
        }
    }
    for r in &reports {
        if !r.id.ends_with("-shape") {
            out.note(format!("{} n={}: engine {} | closed form {}", r.id, r.n, r.computed, r.expected));
        }
    }
    out.reports(&reports);
    out
}

fn commutators() -> Outcome {
    let mut out = Outcome::new();
    for n in [2usize, 4] {
        for k in 1..=n {
            let r = flat_commutator_check(n, k, 3).unwrap();
            out.check(r.all_pass() && r.cases > 0, || format!("n={n} k={k}: {r:?}"));
        }
    }
    out
}

fn random_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    GaussianRational::new(random_rational(rng), random_rational(rng))
}

fn properties() -> Outcome {
    const CASES: usize = 100;
    let mut out = Outcome::new();
    let ids = FunctionalId::ALL;
    let tally = |out: &mut Outcome, name: &str, f: &dyn Fn(usize) -> bool| {
        let failed: Vec<usize> = (0..CASES).filter(|&i| !f(i)).collect();
        out.check(failed.is_empty(), || {
            format!("{name}: {} of {CASES} cases fail (first {})", failed.len(), failed[0])
        });
        if failed.is_empty() {
            out.note(format!("{name}: {CASES}/{CASES}"));
        }
    };

    tally(&mut out, "multilinearity", &|i| {
        let spec = FunctionalSpec::for_id(ids[i % 5]);
        let mut rng = trial_rng(SEED, "multilinearity", 4, i);
        let t = random_form(&mut rng, 4, spec.torsion_degree);
        let vs: Vec<Vector> = spec.arg_flavors.iter().map(|_| random_vector(&mut rng, 4)).collect();
        let slot = i % vs.len();
        let extra = random_vector(&mut rng, 4);
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let mut mixed = vs.clone();
        mixed[slot] = vs[slot].scale(&a).add(&extra.scale(&b));
        let mut other = vs.clone();
        other[slot] = extra;
        let d = |v: &[Vector]| spectral_density(&spec, &t, v, 2).unwrap();
        d(&mixed) == d(&vs).scale_rational(&a) + d(&other).scale_rational(&b)
    });

    tally(&mut out, "T-linearity", &|i| {
        let spec = FunctionalSpec::for_id(ids[i % 5]);
        let mut rng = trial_rng(SEED, "t-linearity", 4, i);
        let (t1, t2) = (
            random_form(&mut rng, 4, spec.torsion_degree),
            random_form(&mut rng, 4, spec.torsion_degree),
        );
        let vs: Vec<Vector> = spec.arg_flavors.iter().map(|_| random_vector(&mut rng, 4)).collect();
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let t = t1.scale(&a).add(&t2.scale(&b)).unwrap();
        let d = |t: &_| spectral_density(&spec, t, &vs, 2).unwrap();
        d(&t) == d(&t1).scale_rational(&a) + d(&t2).scale_rational(&b)
    });

    tally(&mut out, "frame covariance", &|i| {
        let spec = FunctionalSpec::for_id(ids[i % 5]);
        let mut rng = trial_rng(SEED, "covariance", 4, i);
        let t = random_form(&mut rng, 4, spec.torsion_degree);
        let vs: Vec<Vector> = spec.arg_flavors.iter().map(|_| random_vector(&mut rng, 4)).collect();
        let (perm, signs) = random_signed_permutation(&mut rng, 4);
        let gt = t.transform(&perm, &signs).unwrap();
        let gv: Vec<Vector> = vs.iter().map(|v| transform_vector(v, &perm, &signs)).collect();
        spectral_density(&spec, &gt, &gv, 2).unwrap() == spectral_density(&spec, &t, &vs, 2).unwrap()
            && form_contract(&gt, &gv).unwrap() == form_contract(&t, &vs).unwrap()
    });

    let word = |rng: &mut ChaCha8Rng, n: usize, len: usize| -> Vec<(Flavor, Vector)> {
        (0..len)
            .map(|_| (if rng.random_bool(0.5) { Flavor::C } else { Flavor::Hat }, random_vector(rng, n)))
            .collect()
    };

    tally(&mut out, "trace cyclicity", &|i| {
        let n = if i % 2 == 0 { 4 } else { 6 };
        let mut rng = trial_rng(SEED, "cyclicity", n, i);
        let a = clifford_word(&word(&mut rng, n, 1 + i % 3)).unwrap();
        let b = clifford_word(&word(&mut rng, n, 1 + (i / 3) % 3)).unwrap();
        a.trace_product(&b).unwrap() == b.trace_product(&a).unwrap()
    });

    tally(&mut out, "odd-word vanishing", &|i| {
        let n = if i % 2 == 0 { 4 } else { 6 };
        let mut rng = trial_rng(SEED, "odd-words", n, i);
        clifford_word(&word(&mut rng, n, 1 + 2 * (i % 3))).unwrap().trace().is_zero()
    });

    tally(&mut out, "sphere-moment permutation symmetry", &|i| {
        let d = 2 + i % 7;
        let mut rng = trial_rng(SEED, "moments", d, i);
        let alpha: Vec<u32> = (0..d).map(|_| rng.random_range(0..=4)).collect();
        let (perm, _) = random_signed_permutation(&mut rng, d);
        let permuted: Vec<u32> = perm.iter().map(|&p| alpha[p - 1]).collect();
        sphere_moment_ratio(&alpha, d) == sphere_moment_ratio(&permuted, d)
    });

    tally(&mut out, "π⁺ idempotence", &|i| {
        let mut rng = trial_rng(SEED, "projection", 0, i);
        let npoles = 1 + i % 3;
        let poles: Vec<(GaussianRational, usize)> = (0..npoles)
            .map(|_| {
                let re = Rational::from_int(rng.random_range(-3..=3));
                let im = Rational::from_int(if rng.random_bool(0.5) { 1 } else { -1 } * rng.random_range(1..=3));
                (GaussianRational::new(re, im), rng.random_range(1..=3))
            })
            .collect();
        let total: usize = poles.iter().map(|p| p.1).sum();
        let numer: Vec<GaussianRational> = (0..total).map(|_| random_gaussian(&mut rng)).collect();
        let r = RationalXn::scalar_fraction(&numer, &poles);
        let p = r.pi_plus().unwrap();
        p.pi_plus().unwrap() == p && p.add(&r.pi_minus().unwrap()) == r
    });
    out
}

fn reproducibility() -> Outcome {
    let mut out = Outcome::new();
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let args = VerifyArgs {
            suite: Suite::All,
            n: None,
            m: Some(2),
            trials: TRIALS,
            seed: SEED,
            out: Some(path.clone()),
            format: Format::Json,
            corrupt_expected: false,
        };
        cmd_verify(&args).unwrap();
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("first.json"), run("second.json"));
    out.check(a == b, || "reports differ between runs".into());
    out.note(format!("{} byte report reproduced", a.len()));
    out
}

fn main() {
    let mut results = Vec::new();
    criterion(
        &mut results,
        1,
        "Clifford relations, n = 2, 4, 6, 8",
        Some(Duration::from_secs(1)),
        clifford_relations,
    );
    criterion(&mut results, 2, "lemma suite, n = 4, 6", Some(Duration::from_secs(10)), lemma_suite);
    criterion(
        &mut results,
        3,
        "theorem coefficients, m = 2, 3",
        Some(Duration::from_secs(30)),
        theorem_suite,
    );
    criterion(&mut results, 4, "cubic assembly split, m = 2, 3", None, assembly);
    criterion(
        &mut results,
        5,
        "oracle equivalence, n = 4, 6",
        Some(Duration::from_secs(60)),
        oracle_equivalence,
    );
    criterion(&mut results, 6, "boundary suite, m = 2, 3", None, boundary_suite);
    criterion(&mut results, 7, "flat commutator identities, n = 2, 4", None, commutators);
    criterion(&mut results, 8, "randomized properties", None, properties);
    criterion(&mut results, 9, "reproducible reports", None, reproducibility);
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    println!("acceptance: {}/{} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
