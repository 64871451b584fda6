//! The four commands. Each returns a report, a table and whether any
//! invariant failed.

use std::collections::BTreeMap;
use std::time::Instant;

use clifford_ur::dense::{conjugate, max_abs_diff, CMatrix};
use clifford_ur::rotors::{euler_decompose, lift, lift_residual, plane_rotor, reduce_to_axis};
use clifford_ur::states::{gvector_full, project, random_state_with};
use clifford_ur::uncertainty::{
    closed_form_min, concavity_profile, entropy_average, finite_difference_errors, find_minimizer,
    uniform_grid, MinimizerConfig,
};
use clifford_ur::{
    jordan_wigner, Ensemble, GeneratorSet, OrthoTransform, PauliString, RenyiOrder,
    MAX_DENSE_QUBITS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::report::{num, Report, RunConfig, Table};
use crate::CliError;

pub struct Execution {
    pub report: Report,
    pub table: Table,
    pub failed: bool,
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn library(e: clifford_ur::Error) -> CliError {
    CliError::Library(e)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Largest violation-oriented residual; passes when `<= tolerance`.
    pub worst_residual: f64,
    pub tolerance: f64,
    pub count: usize,
}

impl Check {
    fn new(name: &'static str, worst_residual: f64, tolerance: f64, count: usize) -> Self {
        Check {
            name,
            passed: worst_residual <= tolerance,
            worst_residual,
            tolerance,
            count,
        }
    }
}

fn check_anticommutation(gens: &GeneratorSet) -> Result<Check, CliError> {
    let ext = gens.extended_set();
    let mut symplectic_bad = 0usize;
    let mut dense_worst = 0.0f64;
    let dense = if gens.n() <= 8 {
        Some(gens.dense_extended::<f64>().map_err(library)?)
    } else {
        None
    };
    for j in 0..ext.len() {
        for k in 0..ext.len() {
            let jk = ext[j] * ext[k];
            let kj = ext[k] * ext[j];
            let ok = if j == k {
                jk.is_identity() && jk.phase() == 0
            } else {
                jk == kj.neg()
            };
            symplectic_bad += usize::from(!ok);
            if let Some(m) = &dense {
                let d = gens.dim();
                let anti = &m[j] * &m[k] + &m[k] * &m[j];
                let target = CMatrix::<f64>::identity(d, d)
                    * clifford_ur::scalar::C::new(if j == k { 2.0 } else { 0.0 }, 0.0);
                dense_worst = dense_worst.max(max_abs_diff(&anti, &target));
            }
        }
    }
    // an exact symplectic failure counts as an O(1) residual
    let worst = if symplectic_bad > 0 { 1.0 } else { dense_worst };
    Ok(Check::new("anticommutation", worst, 1e-12, ext.len() * ext.len()))
}

fn verify(cfg: &RunConfig) -> Result<(Vec<Check>, Table), CliError> {
    let n = cfg.n.expect("validated");
    let tol = cfg.tolerances;
    let samples = cfg.samples;
    let gens = jordan_wigner(n).map_err(library)?;
    let mut checks = vec![check_anticommutation(&gens)?];

    // projection positivity and the g-vector ball on sampled states
    let mut rng = rng_for(cfg.seed, 1);
    let mut neg_eig = f64::NEG_INFINITY;
    let mut ball_excess = f64::NEG_INFINITY;
    let mut bound_violation = f64::NEG_INFINITY;
    let orders = [RenyiOrder::Shannon, RenyiOrder::Collision, RenyiOrder::Min];
    for i in 0..samples {
        let ens = if i % 2 == 0 {
            Ensemble::MixedHs
        } else {
            Ensemble::PureHaar
        };
        let rho = random_state_with::<f64, _>(n, &mut rng, ens).map_err(library)?;
        let g = gvector_full(&rho, &gens).map_err(library)?;
        ball_excess = ball_excess.max(g.norm_sq() - 1.0);
        match project(&rho, &gens) {
            Ok(p) => neg_eig = neg_eig.max(-p.min_eigenvalue()),
            Err(_) => neg_eig = f64::INFINITY,
        }
        for k in 1..=2 * n + 1 {
            for order in orders {
                let avg = entropy_average(&rho, &gens, k, order).map_err(library)?;
                let bound = closed_form_min::<f64>(k, order).map_err(library)?.value;
                bound_violation = bound_violation.max(bound - avg);
            }
        }
    }
    checks.push(Check::new("projection_positivity", neg_eig, tol.psd, samples));
    checks.push(Check::new("gvector_ball", ball_excess, tol.psd, samples));
    checks.push(Check::new("entropy_bounds", bound_violation, tol.psd, samples));

    // rotors
    let rotor_count = samples.min(100);
    let mut rng = rng_for(cfg.seed, 2);
    let mut lift_worst = 0.0f64;
    let mut euler_worst = 0.0f64;
    for i in 0..rotor_count {
        let t = OrthoTransform::<f64>::random(2 * n + 1, true, &mut rng);
        let u = lift(&t, &gens).map_err(library)?;
        lift_worst = lift_worst.max(lift_residual(&u, &t, &gens).map_err(library)?);
        let improper = OrthoTransform::<f64>::random(2 * n, i % 2 == 0, &mut rng);
        let u = lift(&improper, &gens).map_err(library)?;
        lift_worst = lift_worst.max(lift_residual(&u, &improper, &gens).map_err(library)?);
        let f = euler_decompose(&t).map_err(library)?;
        let err = (f.recompose() - t.matrix())
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        euler_worst = euler_worst.max(err);
    }
    checks.push(Check::new("rotor_lift", lift_worst, tol.lift, 2 * rotor_count));
    checks.push(Check::new("euler_roundtrip", euler_worst, tol.orth, rotor_count));

    let mut rng = rng_for(cfg.seed, 3);
    let mut reduce_worst = 0.0f64;
    for _ in 0..rotor_count {
        let rho = random_state_with::<f64, _>(n, &mut rng, Ensemble::MixedHs).map_err(library)?;
        let red = reduce_to_axis(&rho, &gens).map_err(library)?;
        let back = red.unitary.adjoint() * red.rho_hat.matrix() * &red.unitary;
        let p = project(&rho, &gens).map_err(library)?;
        reduce_worst = reduce_worst.max(max_abs_diff(&back, p.matrix()));
    }
    checks.push(Check::new("rotor_reduce", reduce_worst, tol.recon, rotor_count));

    // concavity
    let grid = uniform_grid(997, 0.001, 0.999);
    let profile = concavity_profile(&grid).map_err(library)?;
    let max_d2 = profile
        .iter()
        .map(|p| p.d2f)
        .fold(f64::NEG_INFINITY, f64::max);
    let fd_worst = profile
        .iter()
        .map(|p| {
            let (a, b) = finite_difference_errors(p);
            a.max(b)
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("concavity_sign", max_d2, 1e-12, grid.len()));
    checks.push(Check::new("concavity_fd", fd_worst, 1e-6, grid.len()));

    let mut table = Table::new(vec!["check", "passed", "worst_residual", "tolerance", "count"]);
    for c in &checks {
        table.push(vec![
            c.name.to_string(),
            c.passed.to_string(),
            num(Some(c.worst_residual)),
            num(Some(c.tolerance)),
            c.count.to_string(),
        ]);
    }
    Ok((checks, table))
}

fn minimizer_config(cfg: &RunConfig) -> MinimizerConfig {
    MinimizerConfig {
        samples: cfg.samples,
        seed: cfg.seed,
        ..MinimizerConfig::default()
    }
}

pub fn run_verify(cfg: RunConfig) -> Result<Execution, CliError> {
    let start = Instant::now();
    let (checks, table) = verify(&cfg)?;
    let failed = checks.iter().any(|c| !c.passed);
    let residuals: BTreeMap<String, f64> = checks
        .iter()
        .map(|c| (c.name.to_string(), c.worst_residual))
        .collect();
    let results = json!({ "passed": !failed, "checks": checks });
    Ok(finish(cfg, results, residuals, table, failed, start))
}

pub fn run_minimize(cfg: RunConfig) -> Result<Execution, CliError> {
    let start = Instant::now();
    let n = cfg.n.expect("validated");
    let k = cfg.k.expect("validated");
    let gens = jordan_wigner(n).map_err(library)?;
    let report = find_minimizer::<f64>(&gens, k, cfg.alpha, &minimizer_config(&cfg))
        .map_err(library)?;
    let ball_excess = report.argmin_g.norm_sq() - 1.0;
    let gap = report.gap;
    let failed = ball_excess > cfg.tolerances.psd
        || gap.is_some_and(|g| g < -cfg.tolerances.opt);
    let within_tolerance = gap.map(|g| g.abs() <= cfg.tolerances.opt);
    let mut residuals = BTreeMap::new();
    residuals.insert("ball_excess".to_string(), ball_excess);
    if let Some(g) = gap {
        residuals.insert("gap".to_string(), g);
    }
    if let Some(c) = report.cross_min {
        residuals.insert("route_disagreement".to_string(), (c - report.numeric_min).abs());
    }
    let mut table = Table::new(vec![
        "n",
        "K",
        "alpha",
        "closed_form_bound",
        "numeric_min",
        "gap",
        "cross_min",
        "samples",
        "seed",
        "argmin_g",
    ]);
    table.push(vec![
        n.to_string(),
        k.to_string(),
        cfg.alpha.to_string(),
        num(report.closed_form_bound),
        num(Some(report.numeric_min)),
        num(gap),
        num(report.cross_min),
        report.samples.to_string(),
        report.seed.to_string(),
        report
            .argmin_g
            .as_slice()
            .iter()
            .map(|v| num(Some(*v)))
            .collect::<Vec<_>>()
            .join(";"),
    ]);
    let mut results = serde_json::to_value(&report).expect("report serializes");
    results["within_tolerance"] = json!(within_tolerance);
    Ok(finish(cfg, results, residuals, table, failed, start))
}

#[derive(Debug, Serialize)]
struct SweepRow {
    #[serde(rename = "K")]
    k: usize,
    alpha: RenyiOrder,
    closed_form: Option<f64>,
    numeric_min: f64,
    gap: Option<f64>,
}

pub fn run_sweep(cfg: RunConfig) -> Result<Execution, CliError> {
    let start = Instant::now();
    let n = cfg.n.expect("validated");
    let (lo, hi) = (cfg.k_min.expect("validated"), cfg.k_max.expect("validated"));
    let gens = jordan_wigner(n).map_err(library)?;
    let mcfg = MinimizerConfig {
        pure_starts: 0,
        ..minimizer_config(&cfg)
    };
    let mut rows = Vec::new();
    for k in lo..=hi {
        let r = find_minimizer::<f64>(&gens, k, cfg.alpha, &mcfg).map_err(library)?;
        rows.push(SweepRow {
            k,
            alpha: cfg.alpha,
            closed_form: r.closed_form_bound,
            numeric_min: r.numeric_min,
            gap: r.gap,
        });
    }
    let worst_gap = rows
        .iter()
        .filter_map(|r| r.gap)
        .map(f64::abs)
        .fold(0.0, f64::max);
    let failed = rows
        .iter()
        .any(|r| r.gap.is_some_and(|g| g < -cfg.tolerances.opt));
    let mut table = Table::new(vec!["K", "alpha", "closed_form", "numeric_min", "gap"]);
    for r in &rows {
        table.push(vec![
            r.k.to_string(),
            r.alpha.to_string(),
            num(r.closed_form),
            num(Some(r.numeric_min)),
            num(r.gap),
        ]);
    }
    let mut residuals = BTreeMap::new();
    residuals.insert("max_abs_gap".to_string(), worst_gap);
    let results = json!({ "rows": rows });
    Ok(finish(cfg, results, residuals, table, failed, start))
}

/// Best-of-five nanoseconds per `product_into` at `n` qubits.
fn product_ns(n: usize, rng: &mut ChaCha8Rng) -> f64 {
    let a = PauliString::random(n, rng);
    let b = PauliString::random(n, rng);
    let mut out = PauliString::identity(n);
    let reps = (20_000_000 / n).max(1);
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(&a)
                .product_into(std::hint::black_box(&b), &mut out)
                .expect("equal sizes");
            std::hint::black_box(&out);
        }
        best = best.min(start.elapsed().as_nanos() as f64 / reps as f64);
    }
    best
}

pub fn run_bench(cfg: RunConfig) -> Result<Execution, CliError> {
    let start = Instant::now();
    let mut rng = rng_for(cfg.seed, 4);
    let mut table = Table::new(vec!["kind", "size", "ns_per_op"]);

    let sizes = [1_000usize, 10_000, 100_000];
    let mut symplectic = Vec::new();
    for &n in &sizes {
        let ns = product_ns(n, &mut rng);
        table.push(vec!["symplectic_product".into(), n.to_string(), num(Some(ns))]);
        symplectic.push(json!({ "n": n, "ns_per_product": ns, "ns_per_qubit": ns / n as f64 }));
    }
    let per_qubit: Vec<f64> = symplectic
        .iter()
        .map(|v| v["ns_per_qubit"].as_f64().unwrap_or(f64::NAN))
        .collect();
    let spread = per_qubit.iter().copied().fold(0.0, f64::max)
        / per_qubit.iter().copied().fold(f64::INFINITY, f64::min);

    let max_dense = cfg.n.unwrap_or(6).min(10);
    let mut dense = Vec::new();
    for q in 1..=max_dense {
        let gens = jordan_wigner(q).map_err(library)?;
        let u = plane_rotor::<f64>(&gens, 1, 2, 0.3).map_err(library)?;
        let a = gens.gamma0().to_dense::<f64>().map_err(library)?;
        let reps = (1usize << 18 >> (3 * q).min(18)).max(3);
        let t = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(conjugate(&u, std::hint::black_box(&a)));
        }
        let ns = t.elapsed().as_nanos() as f64 / reps as f64;
        let d = 1usize << q;
        table.push(vec!["dense_conjugation".into(), d.to_string(), num(Some(ns))]);
        dense.push(json!({ "d": d, "ns_per_conjugation": ns }));
    }

    let pairs = cfg.samples;
    let mut mismatches = 0usize;
    for i in 0..pairs {
        let n = 1 + i % 6;
        let a = PauliString::random(n, &mut rng);
        let b = PauliString::random(n, &mut rng);
        let sym = a.product(&b).map_err(library)?.to_dense::<f64>().map_err(library)?;
        let dense_prod = a.to_dense::<f64>().map_err(library)? * b.to_dense::<f64>().map_err(library)?;
        mismatches += usize::from(sym != dense_prod);
    }

    let failed = mismatches > 0 || spread > 4.0;
    let mut residuals = BTreeMap::new();
    residuals.insert("dense_mismatches".to_string(), mismatches as f64);
    residuals.insert("linear_scaling_spread".to_string(), spread);
    let results = json!({
        "symplectic": symplectic,
        "dense": dense,
        "cross_check": { "pairs": pairs, "mismatches": mismatches },
        "linear_scaling_spread": spread,
    });
    // timings are the point of this command, so wall time is always recorded
    let mut exec = finish(cfg, results, residuals, table, failed, start);
    exec.report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    Ok(exec)
}

fn finish(
    cfg: RunConfig,
    results: serde_json::Value,
    residuals: BTreeMap<String, f64>,
    table: Table,
    failed: bool,
    start: Instant,
) -> Execution {
    let wall = cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    Execution {
        report: Report {
            tool_version: env!("CARGO_PKG_VERSION"),
            command: cfg.command,
            config: cfg,
            results,
            residuals,
            wall_time_ms: wall,
        },
        table,
        failed,
    }
}

/// The dense layer caps the qubit count for state-based commands.
pub fn dense_limit() -> usize {
    MAX_DENSE_QUBITS
}

/// `K` observables must fit in the extended set of `n` qubits.
pub fn k_fits(n: usize, k: usize) -> bool {
    (1..=2 * n + 1).contains(&k)
}

