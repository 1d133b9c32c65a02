use hodge_residue::boundary::{boundary_density, symbol_derivative, BoundaryArgs, BoundaryFlavor, RationalXn};
use hodge_residue::exterior::{clifford_word, Flavor, LinearOp, Vector};
use hodge_residue::oracle::{
    boundary_density_float, close, density_float, density_integrand, float_trace, lemma_lhs_float, line_quadrature, sphere_quadrature,
    DenseOp,
};
use hodge_residue::residue::trials::{random_vector, trial_rng};
use hodge_residue::residue::{lemma_lhs, spectral_density, trial_inputs, FunctionalId, FunctionalSpec, LemmaSpec};
use hodge_residue::scalars::GaussianRational;
use num_complex::Complex64;

const REL: f64 = 1e-9;

#[test]
fn word_traces_agree() {
    for n in [4usize, 6] {
        for trial in 0..10 {
            let mut rng = trial_rng(3, "words", n, trial);
            let len = 1 + trial % 5;
            let word: Vec<(Flavor, Vector)> = (0..len)
                .map(|i| {
                    (
                        if (i + trial) % 2 == 0 { Flavor::C } else { Flavor::Hat },
                        random_vector(&mut rng, n),
                    )
                })
                .collect();
            let exact = clifford_word(&word).unwrap();
            let dense = DenseOp::from_linear_op(&exact).unwrap();
            let f = float_trace(&word).unwrap();
            assert!(close(exact.trace().to_complex(), f, REL), "n={n} trial={trial}");
            assert!(close(dense.trace(), f, REL));
        }
    }
}

#[test]
fn lemma_left_sides_agree() {
    for n in [4usize, 6] {
        for spec in LemmaSpec::all() {
            for trial in 0..3 {
                let (t, vs) = spec.trial_inputs(n, 5, trial);
                let exact = lemma_lhs(&spec, n, t.as_ref(), &vs).unwrap().numeric_value(n);
                let float = lemma_lhs_float(&spec, n, t.as_ref(), &vs).unwrap();
                assert!(close(exact, float, REL), "{} n={n} trial={trial}: {exact} vs {float}", spec.id);
            }
        }
    }
}

#[test]
fn densities_agree_with_cubature() {
    for m in [2usize, 3] {
        for id in FunctionalId::ALL {
            let spec = FunctionalSpec::for_id(id);
            for trial in 0..3 {
                let (t, vs) = trial_inputs("oracle", 2 * m, spec.torsion_degree, spec.arg_flavors.len(), 9, trial);
                let exact = spectral_density(&spec, &t, &vs, m).unwrap().numeric_value(2 * m);
                let float = density_float(&spec, &t, &vs, m).unwrap();
                assert!(close(exact, float, REL), "{id} m={m}: {exact} vs {float}");
            }
        }
    }
}

#[test]
fn cubic_density_agrees_with_monte_carlo() {
    let spec = FunctionalSpec::for_id(FunctionalId::T2);
    let (t, vs) = trial_inputs("mc", 4, 3, 3, 21, 1);
    let exact = spectral_density(&spec, &t, &vs, 2).unwrap().numeric_value(4);
    let f = density_integrand(&spec, &t, &vs, 2).unwrap();
    let est = sphere_quadrature(&f, 4, 1_000_000, 17);
    assert!(est.within_sigma(exact, 3.0), "{est:?} vs {exact}");
    assert!((est.value - exact).norm() <= 1e-3 * exact.norm(), "{est:?} vs {exact}");
}

#[test]
fn boundary_densities_agree() {
    for m in [2usize, 3] {
        let n = 2 * m;
        for flavor in BoundaryFlavor::ALL {
            for trial in 0..4 {
                let mut rng = trial_rng(2, "boundary-oracle", n, trial);
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
                assert!(close(exact, float, REL), "{flavor} m={m}: {exact} vs {float}");
            }
        }
    }
}

#[test]
fn line_integrals_agree_with_quadrature() {
    let half = GaussianRational::ratio(1, 2);
    for m in [2usize, 3] {
        // ξ / (2 (ξ - i) (1 + ξ²)^m)
        let (numer, mut poles) = symbol_derivative(m);
        let numer: Vec<GaussianRational> = numer
            .iter()
            .map(|c| &(c * &half) / &GaussianRational::int(2 - 2 * m as i64))
            .collect();
        poles.push((GaussianRational::i(), 1));
        let r = RationalXn::scalar_fraction(&numer, &poles);
        let exact = r.line_integral_symbolic().unwrap().numeric_value(2 * m);
        let float = line_quadrature(|x| r.eval(x)).unwrap();
        assert!(close(exact, float, REL), "m={m}: {exact} vs {float}");
        let direct = line_quadrature(|x| {
            let z = Complex64::new(x, 0.0);
            z / (2.0 * (z - Complex64::i()) * (1.0 + z * z).powi(m as i32))
        })
        .unwrap();
        assert!(close(exact, direct, REL));
    }
    assert_eq!(
        RationalXn::scalar_fraction(
            &[GaussianRational::one()],
            &[(GaussianRational::i(), 1), (-GaussianRational::i(), 1)]
        )
        .line_integral()
        .unwrap(),
        GaussianRational::one()
    );
}

#[test]
fn oracle_rejects_large_dimensions() {
    let e = Vector::basis(12, 1);
    assert!(float_trace(&[(Flavor::C, e)]).is_err());
    assert!(DenseOp::from_linear_op(&LinearOp::identity(11)).is_err());
}
