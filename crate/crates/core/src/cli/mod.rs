//! Command-line front end.

mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::boundary::{
    boundary_contraction, boundary_density, closed_boundary_coefficient, verify_boundary, verify_boundary_shape, BoundaryArgs,
    BoundaryFlavor,
};
use crate::error::{Error, Result};
use crate::exterior::MAX_DIM;
use crate::residue::{
    closed_coefficient, lemma_check, spectral_density, verify_assembly, verify_theorem_against, CheckReport, FunctionalId, FunctionalSpec,
    Status, LEMMA_IDS,
};
use crate::scalars::{GaussianRational, SymbolicScalar, Unit};
use crate::symbols::flat_commutator_check;

pub use input::{load_form, load_vectors, parse_vectors};
pub use report::{Format, Report, RunConfig, Suite, Summary};

pub const THREADS_ENV: &str = "HODGE_RESIDUE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "hodge-residue",
    version,
    about = "Exact residue densities and trace identities for Clifford actions on forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Exact interior density of one functional.
    Density(DensityArgs),
    /// Boundary density against its closed form.
    Boundary(BoundaryCmdArgs),
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Dimension for lemma and commutator suites (defaults to 2m, or 4).
    #[arg(long)]
    pub n: Option<usize>,
    /// Half-dimension for theorem and boundary suites (defaults to n/2, or 2).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Test hook: perturb the expected theorem coefficients.
    #[arg(long, hide = true)]
    pub corrupt_expected: bool,
}

#[derive(Args, Debug, Clone)]
pub struct DensityArgs {
    #[arg(long)]
    pub id: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub form: PathBuf,
    #[arg(long)]
    pub vectors: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct BoundaryCmdArgs {
    #[arg(long)]
    pub flavor: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub vectors: PathBuf,
}

impl VerifyArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let m = self.m.or(self.n.map(|n| n / 2)).unwrap_or(2);
        let n = self.n.unwrap_or(2 * m);
        let needs_m = matches!(self.suite, Suite::Theorems | Suite::Boundary | Suite::All);
        if needs_m && (m < 2 || 2 * m > MAX_DIM) {
            return Err(Error::Config(format!("m = {m} out of range; need 4 <= 2m <= {MAX_DIM}")));
        }
        if self.n.is_some() && self.m.is_some() && needs_m && n != 2 * m {
            return Err(Error::Config(format!("n = {n} conflicts with m = {m}")));
        }
        if !(2..=MAX_DIM).contains(&n) || n % 2 == 1 {
            return Err(Error::Config(format!("n = {n} must be even with 2 <= n <= {MAX_DIM}")));
        }
        if matches!(self.suite, Suite::Lemmas | Suite::All) && n < 4 {
            return Err(Error::Config("lemma suite needs n >= 4".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        Ok(RunConfig {
            suite: self.suite,
            n,
            m,
            trials: self.trials,
            seed: self.seed,
        })
    }
}

enum Job {
    Lemma(&'static str),
    Theorem(FunctionalId),
    Assembly,
    Boundary(BoundaryFlavor),
    BoundaryShape(BoundaryFlavor),
    Commutator(usize),
}

fn jobs(suite: Suite, n: usize) -> Vec<Job> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Lemmas | Suite::All) {
        out.extend(LEMMA_IDS.iter().map(|id| Job::Lemma(id)));
    }
    if matches!(suite, Suite::Theorems | Suite::All) {
        out.extend(FunctionalId::ALL.into_iter().map(Job::Theorem));
        out.push(Job::Assembly);
    }
    if matches!(suite, Suite::Boundary | Suite::All) {
        for f in BoundaryFlavor::ALL {
            out.push(Job::Boundary(f));
            out.push(Job::BoundaryShape(f));
        }
    }
    if matches!(suite, Suite::Commutators | Suite::All) {
        out.extend((1..=n).map(Job::Commutator));
    }
    out
}

fn corrupted(id: FunctionalId, m: usize) -> SymbolicScalar {
    closed_coefficient(id, m) + SymbolicScalar::term(GaussianRational::one(), Unit::VOL_TOP)
}

fn commutator_report(n: usize, k: usize) -> CheckReport {
    let id = format!("commutator-x{k}");
    match flat_commutator_check(n, k, 3) {
        Ok(r) => {
            let flag = |b: bool| if b { "holds" } else { "FAILS" };
            CheckReport {
                id,
                n,
                trials: r.cases,
                status: if r.all_pass() { Status::Pass } else { Status::Fail },
                computed: format!(
                    "[d+δ, x] = c: {}; [i(d-δ), x] = iĉ: {}; d² = 0: {}; δ² = 0: {}",
                    flag(r.clifford_c),
                    flag(r.clifford_hat),
                    flag(r.d_squared_zero),
                    flag(r.delta_squared_zero)
                ),
                expected: "all identities hold on polynomial forms of degree < 3".into(),
            }
        }
        Err(e) => CheckReport {
            id,
            n,
            trials: 0,
            status: Status::Fail,
            computed: format!("error: {e}"),
            expected: String::new(),
        },
    }
}

fn run_job(job: &Job, cfg: &RunConfig, corrupt: bool) -> CheckReport {
    let (n, m, trials, seed) = (cfg.n, cfg.m, cfg.trials, cfg.seed);
    match job {
        Job::Lemma(id) => lemma_check(id, n, trials, seed).unwrap_or_else(|e| CheckReport {
            id: id.to_string(),
            n,
            trials: 0,
            status: Status::Fail,
            computed: format!("error: {e}"),
            expected: String::new(),
        }),
        Job::Theorem(id) => {
            let coef = if corrupt { corrupted(*id, m) } else { closed_coefficient(*id, m) };
            verify_theorem_against(*id, m, trials, seed, &coef)
        }
        Job::Assembly => verify_assembly(m, trials, seed),
        Job::Boundary(f) => verify_boundary(*f, m, trials, seed),
        Job::BoundaryShape(f) => verify_boundary_shape(*f, m, trials, seed),
        Job::Commutator(k) => commutator_report(n, *k),
    }
}

/// Runs the configured suites; checks run concurrently, output is sorted by id.
pub fn run_suites(cfg: &RunConfig, corrupt: bool) -> Report {
    let checks: Vec<CheckReport> = jobs(cfg.suite, cfg.n).par_iter().map(|j| run_job(j, cfg, corrupt)).collect();
    Report::new(cfg.clone(), checks)
}

fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {s:?}")))?,
        Err(_) => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(f))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Report> {
    let cfg = args.resolve()?;
    let report = with_pool(|| run_suites(&cfg, args.corrupt_expected))?;
    let text = report.render(args.format);
    match &args.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(report)
}

pub fn cmd_density(args: &DensityArgs) -> Result<String> {
    let id: FunctionalId = args.id.parse()?;
    let spec = FunctionalSpec::for_id(id);
    let t = load_form(&args.form)?;
    let vs = load_vectors(&args.vectors)?;
    let d = with_pool(|| spectral_density(&spec, &t, &vs, args.m))??;
    let v = d.numeric_value(2 * args.m);
    Ok(format!("{}\nfloat: {:.12e} {:+.12e}i\n", d.render(2 * args.m), v.re, v.im))
}

/// Returns the printed lines and whether the engine matches the closed form.
pub fn cmd_boundary(args: &BoundaryCmdArgs) -> Result<(String, bool)> {
    let flavor: BoundaryFlavor = args.flavor.parse()?;
    let vs = load_vectors(&args.vectors)?;
    if vs.len() != 3 {
        return Err(Error::ArgumentCount {
            expected: 3,
            found: vs.len(),
        });
    }
    let n = 2 * args.m;
    let bargs = BoundaryArgs {
        u: vs[0].clone(),
        v: vs[1].clone(),
        w: vs[2].clone(),
        flavor,
        m: args.m,
    };
    let engine = boundary_density(&bargs)?;
    let closed = closed_boundary_coefficient(flavor, args.m).scale_rational(&boundary_contraction(flavor, &bargs.u, &bargs.v, &bargs.w));
    let ok = engine == closed;
    let (ev, pv) = (engine.numeric_value(n), closed.numeric_value(n));
    let text = format!(
        "engine: {} = {:.12e} {:+.12e}i\nclosed: {} = {:.12e} {:+.12e}i\nverdict: {}\n",
        engine.render(n),
        ev.re,
        ev.im,
        closed.render(n),
        pv.re,
        pv.im,
        if ok { "match" } else { "mismatch" }
    );
    Ok((text, ok))
}

/// Entry point; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Verify(a) => cmd_verify(a).map(|r| r.all_pass()),
        Command::Density(a) => cmd_density(a).map(|s| {
            print!("{s}");
            true
        }),
        Command::Boundary(a) => cmd_boundary(a).map(|(s, ok)| {
            print!("{s}");
            ok
        }),
    };
    let _ = std::io::stdout().flush();
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
