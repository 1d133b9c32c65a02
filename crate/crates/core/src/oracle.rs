//! Floating-point oracle: dense Clifford matrices, sphere cubature and
//! Monte-Carlo sampling, and line quadrature on the real axis.
//!
//! Dense generators are rebuilt here from bit arithmetic so the float route
//! shares no operator code with the exact engine.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::{Flavor, LinearOp, Vector};
use crate::forms::{AntiSymForm, LiftKind};
use crate::residue::{FunctionalSpec, LemmaShape, LemmaSpec, Placement};
use crate::scalars::sphere_volume;

pub const MAX_ORACLE_DIM: usize = 10;

type Mat = DMatrix<Complex64>;

fn check_oracle_dim(n: usize) -> Result<()> {
    if (1..=MAX_ORACLE_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// Dense `2^n × 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOp {
    pub n: usize,
    pub matrix: Mat,
}

impl DenseOp {
    pub fn from_linear_op(op: &LinearOp) -> Result<DenseOp> {
        check_oracle_dim(op.n())?;
        let d = op.dim();
        let mut m = Mat::zeros(d, d);
        for (row, col, c) in op.entries() {
            m[(row as usize, col as usize)] = c.to_complex();
        }
        Ok(DenseOp { n: op.n(), matrix: m })
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }
}

/// Dense `c(e_j)` or `ĉ(e_j)` (1-based `j`) from explicit wedge-ordering signs.
pub fn dense_generator(n: usize, flavor: Flavor, j: usize) -> Mat {
    let d = 1usize << n;
    let mut m = Mat::zeros(d, d);
    let bit = 1usize << (j - 1);
    for col in 0..d {
        let before = (0..j - 1).filter(|&i| col & (1 << i) != 0).count();
        let s = if before % 2 == 0 { 1.0 } else { -1.0 };
        if col & bit == 0 {
            m[(col | bit, col)] = Complex64::new(s, 0.0);
        } else {
            let t = if flavor == Flavor::C { -s } else { s };
            m[(col & !bit, col)] = Complex64::new(t, 0.0);
        }
    }
    m
}

struct Generators {
    c: Vec<Mat>,
    h: Vec<Mat>,
}

impl Generators {
    fn new(n: usize) -> Self {
        Generators {
            c: (1..=n).map(|j| dense_generator(n, Flavor::C, j)).collect(),
            h: (1..=n).map(|j| dense_generator(n, Flavor::Hat, j)).collect(),
        }
    }

    fn get(&self, f: Flavor, j: usize) -> &Mat {
        match f {
            Flavor::C => &self.c[j - 1],
            Flavor::Hat => &self.h[j - 1],
        }
    }

    fn clifford(&self, f: Flavor, u: &[f64]) -> Mat {
        let d = self.c[0].nrows();
        let mut m = Mat::zeros(d, d);
        for (j, &x) in u.iter().enumerate() {
            if x != 0.0 {
                m += self.get(f, j + 1) * Complex64::new(x, 0.0);
            }
        }
        m
    }

    fn word(&self, args: &[(Flavor, Vector)]) -> Mat {
        let d = self.c[0].nrows();
        let mut acc = Mat::identity(d, d);
        for (f, v) in args {
            acc *= self.clifford(*f, &to_f64(v));
        }
        acc
    }
}

fn to_f64(v: &Vector) -> Vec<f64> {
    v.components.iter().map(|c| c.to_f64()).collect()
}

/// Dense trace of an ordered Clifford word.
pub fn float_trace(word: &[(Flavor, Vector)]) -> Result<Complex64> {
    let n = word.first().ok_or(Error::EmptyWord)?.1.n();
    check_oracle_dim(n)?;
    if let Some((_, v)) = word.iter().find(|(_, v)| v.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: v.n() });
    }
    Ok(Generators::new(n).word(word).trace())
}

fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| (1..=n).map(move |i| [t.clone(), vec![i]].concat()))
            .collect();
    }
    out
}

fn product(gens: &Generators, word: &[(Flavor, usize)]) -> Mat {
    let d = gens.c[0].nrows();
    word.iter().fold(Mat::identity(d, d), |acc, &(f, j)| acc * gens.get(f, j))
}

/// Dense lift, summed over explicit index loops.
fn dense_lift_with(gens: &Generators, kind: LiftKind, t: &AntiSymForm) -> Result<Mat> {
    let n = t.n();
    let d = 1usize << n;
    let mut m = Mat::zeros(d, d);
    let increasing = |idx: &Vec<usize>| idx.windows(2).all(|w| w[0] < w[1]);
    let distinct = |idx: &Vec<usize>| {
        let mut s = idx.clone();
        s.sort();
        s.windows(2).all(|w| w[0] < w[1])
    };
    let mut add = |idx: &Vec<usize>, flavors: &[Flavor], scale: f64| -> Result<()> {
        let v = t.get(idx)?.to_f64() * scale;
        if v != 0.0 {
            let w: Vec<(Flavor, usize)> = flavors.iter().copied().zip(idx.iter().copied()).collect();
            m += product(gens, &w) * Complex64::new(v, 0.0);
        }
        Ok(())
    };
    use Flavor::{Hat as H, C};
    for idx in all_tuples(n, kind.degree()) {
        match kind {
            LiftKind::T1 if increasing(&idx) => add(&idx, &[H, H], 1.0)?,
            LiftKind::T3 if increasing(&idx) => add(&idx, &[C, C, H, H], 1.0)?,
            LiftKind::T4 if increasing(&idx) => add(&idx, &[H, H, H, H], 1.0)?,
            LiftKind::T2Cubic if increasing(&idx) => add(&idx, &[C, C, C], 1.0)?,
            LiftKind::T2Mixed if distinct(&idx) => add(&idx, &[C, H, H], 1.0)?,
            LiftKind::T2 => {
                if increasing(&idx) {
                    add(&idx, &[C, C, C], 1.5)?;
                }
                if distinct(&idx) {
                    add(&idx, &[C, H, H], -0.25)?;
                }
            }
            _ => {}
        }
    }
    Ok(m)
}

pub fn dense_lift(kind: LiftKind, t: &AntiSymForm) -> Result<DenseOp> {
    check_oracle_dim(t.n())?;
    Ok(DenseOp {
        n: t.n(),
        matrix: dense_lift_with(&Generators::new(t.n()), kind, t)?,
    })
}

/// Degree-5 symmetric cubature on `S^{d-1}`: nodes and weights summing to the sphere area.
pub fn sphere_cubature(d: usize) -> Vec<(Vec<f64>, f64)> {
    let area = sphere_volume(d as i64 - 1);
    let df = d as f64;
    let w_axis = area * (4.0 - df) / (2.0 * df * (df + 2.0));
    let w_diag = area / (df * (df + 2.0));
    let mut nodes = Vec::new();
    for i in 0..d {
        for s in [1.0, -1.0] {
            let mut x = vec![0.0; d];
            x[i] = s;
            nodes.push((x, w_axis));
        }
    }
    if d >= 2 {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..d {
            for j in i + 1..d {
                for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    let mut x = vec![0.0; d];
                    x[i] = si * r;
                    x[j] = sj * r;
                    nodes.push((x, w_diag));
                }
            }
        }
    }
    nodes
}

pub fn cubature_integrate<F: Fn(&[f64]) -> Complex64>(f: F, d: usize) -> Complex64 {
    sphere_cubature(d).iter().map(|(x, w)| f(x) * *w).sum()
}

/// Monte-Carlo estimate of `∫_{S^{n-1}} f` with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub value: Complex64,
    pub std_error: f64,
}

impl McEstimate {
    /// `|value - exact| ≤ k·σ` (with a tiny absolute floor for exact zeros).
    pub fn within_sigma(&self, exact: Complex64, k: f64) -> bool {
        (self.value - exact).norm() <= k * self.std_error + 1e-12
    }
}

const MC_CHUNK: usize = 4096;

/// Uniform sphere samples by normalizing Gaussian vectors; chunked and reduced in order.
pub fn sphere_quadrature<F>(f: F, n: usize, samples: usize, seed: u64) -> McEstimate
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let chunks = samples.div_ceil(MC_CHUNK);
    let partial: Vec<(Complex64, f64, usize)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (c as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let count = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sq = 0.0;
            let mut x = vec![0.0; n];
            for _ in 0..count {
                loop {
                    for xi in x.iter_mut() {
                        *xi = StandardNormal.sample(&mut rng);
                    }
                    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if r > 1e-12 {
                        x.iter_mut().for_each(|v| *v /= r);
                        break;
                    }
                }
                let y = f(&x);
                sum += y;
                sq += y.norm_sqr();
            }
            (sum, sq, count)
        })
        .collect();
    let (sum, sq, count) = partial
        .into_iter()
        .fold((Complex64::new(0.0, 0.0), 0.0, 0usize), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let nf = count as f64;
    let mean = sum / nf;
    let var = (sq / nf - mean.norm_sqr()).max(0.0) * nf / (nf - 1.0).max(1.0);
    let area = sphere_volume(n as i64 - 1);
    McEstimate {
        value: mean * area,
        std_error: (var / nf).sqrt() * area,
    }
}

pub const LINE_CUTOFF: f64 = 1.0e6;

/// `∫_{-∞}^{∞} f` via `ξ = tan θ` on `[-R, R]` plus the `a/ξ²` tail estimate.
pub fn line_quadrature<F: Fn(f64) -> Complex64>(f: F) -> Result<Complex64> {
    let r = LINE_CUTOFF;
    let (fp, fm) = (f(r), f(-r));
    if (fp.norm() + fm.norm()) * r > 1e-4 {
        return Err(Error::InsufficientDecay);
    }
    let theta = r.atan();
    let cuts = [-theta, -1.0, 0.0, 1.0, theta];
    let part = |pick: fn(Complex64) -> f64| -> f64 {
        let g = |t: f64| {
            let c = t.cos();
            pick(f(t.tan())) / (c * c)
        };
        cuts.windows(2)
            .map(|w| quadrature::double_exponential::integrate(g, w[0], w[1], 1e-14).integral)
            .sum()
    };
    let body = Complex64::new(part(|z| z.re), part(|z| z.im));
    Ok(body + (fp + fm) * r)
}

/// Float value of a lemma left-hand side.
pub fn lemma_lhs_float(spec: &LemmaSpec, n: usize, t: Option<&AntiSymForm>, vectors: &[Vector]) -> Result<Complex64> {
    check_oracle_dim(n)?;
    let gens = Generators::new(n);
    match &spec.shape {
        LemmaShape::Torsion { word, lift, placement, .. } => {
            let t = t.ok_or_else(|| Error::Config(format!("{} needs a torsion form", spec.id)))?;
            let args: Vec<(Flavor, Vector)> = word.iter().copied().zip(vectors.iter().cloned()).collect();
            let w = gens.word(&args);
            let x = dense_lift_with(&gens, *lift, t)?;
            Ok(match placement {
                Placement::Plain => (&w * &x).trace(),
                Placement::Left => cubature_integrate(
                    |xi| {
                        let c = gens.clifford(Flavor::C, xi);
                        (&w * &c * &x * &c).trace()
                    },
                    n,
                ),
                Placement::Right => cubature_integrate(
                    |xi| {
                        let c = gens.clifford(Flavor::C, xi);
                        (&w * &x * &c * &c).trace()
                    },
                    n,
                ),
            })
        }
        LemmaShape::Boundary { hat } => {
            let f = if *hat { Flavor::Hat } else { Flavor::C };
            let w = gens.word(&[(Flavor::C, vectors[0].clone()), (f, vectors[1].clone()), (f, vectors[2].clone())]);
            Ok((w * gens.get(Flavor::C, n)).trace())
        }
        LemmaShape::Metric => Ok(gens
            .word(&[(Flavor::C, vectors[0].clone()), (Flavor::C, vectors[1].clone())])
            .trace()),
    }
}

/// Dense integrand `ξ ↦ p·Tr(W[Θ + m(c(ξ)Θ + Θc(ξ))c(ξ)])` of a functional.
pub fn density_integrand(
    spec: &FunctionalSpec,
    t: &AntiSymForm,
    vectors: &[Vector],
    m: usize,
) -> Result<impl Fn(&[f64]) -> Complex64 + Sync> {
    let n = 2 * m;
    check_oracle_dim(n)?;
    let gens = Generators::new(n);
    let args: Vec<(Flavor, Vector)> = spec.arg_flavors.iter().copied().zip(vectors.iter().cloned()).collect();
    let w = gens.word(&args);
    let theta = dense_lift_with(&gens, spec.lift, t)?;
    let p = spec.prefactor.to_complex();
    let mf = Complex64::new(m as f64, 0.0);
    // Precompute Q_ij = Tr(W (c_i Θ + Θ c_i) c_j) so sampling is cheap.
    let zero = (&w * &theta).trace();
    let q: Vec<Vec<Complex64>> = (1..=n)
        .map(|i| {
            let ci = gens.get(Flavor::C, i);
            let s = &w * (ci * &theta + &theta * ci);
            (1..=n).map(|j| (&s * gens.get(Flavor::C, j)).trace()).collect()
        })
        .collect();
    Ok(move |xi: &[f64]| {
        let mut quad = Complex64::new(0.0, 0.0);
        for (i, row) in q.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                quad += v * xi[i] * xi[j];
            }
        }
        p * (zero + mf * quad)
    })
}

/// Deterministic float density by cubature.
pub fn density_float(spec: &FunctionalSpec, t: &AntiSymForm, vectors: &[Vector], m: usize) -> Result<Complex64> {
    let f = density_integrand(spec, t, vectors, m)?;
    Ok(cubature_integrate(&f, 2 * m))
}

/// Float boundary density: cubature over `S^{n-2}` times line quadrature in `ξ_n`.
pub fn boundary_density_float(hat: bool, u: &Vector, v: &Vector, w: &Vector, m: usize) -> Result<Complex64> {
    let n = 2 * m;
    check_oracle_dim(n)?;
    let gens = Generators::new(n);
    let f = if hat { Flavor::Hat } else { Flavor::C };
    let word = gens.word(&[(Flavor::C, u.clone()), (f, v.clone()), (f, w.clone())]);
    let i = Complex64::new(0.0, 1.0);
    let cn = gens.get(Flavor::C, n);
    let sphere = cubature_integrate(
        |xp| {
            let mut full = xp.to_vec();
            full.push(0.0);
            let c = gens.clifford(Flavor::C, &full);
            (&word * (c + cn * i)).trace()
        },
        n - 1,
    );
    let mf = m as f64;
    let line = line_quadrature(|x| {
        let z = Complex64::new(x, 0.0);
        (1.0 / (2.0 * (z - i))) * (2.0 * (1.0 - mf) * x * (1.0 + x * x).powi(-(m as i32)))
    })?;
    Ok(sphere * line)
}

/// Relative agreement with an absolute floor for values near zero.
pub fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
}
