//! Experiment execution: turns a validated config into CSV/JSON artifacts.
//!
//! Errors are sorted into two exit classes: configuration problems
//! (unreadable/odd-schema/invalid configs → exit 2) and numerical
//! failures at run time (eigensolver breakdowns, non-converged boundary
//! values → exit 3, with a `diagnostics.txt` note next to the partial
//! artifacts).  Successful runs return the artifact paths and the summary
//! document they wrote.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::Rng;
use serde_json::json;
use thiserror::Error;

use crate::config::{
    ConfigError, ExperimentConfig, ExperimentKind, GreenCheckParams, KernelCheckParams,
    MinamiParams, MultiplicityParams, StatsParams,
};
use crate::csvio::{
    cluster_rows, count_rows, green_rows, method_name, minami_row, pmf_rows, write_json_summary,
    write_table, ArtifactMeta, CLUSTER_COLUMNS, COUNT_COLUMNS, GREEN_COLUMNS, MINAMI_COLUMNS,
    PMF_COLUMNS,
};
use crate::green::{green_direct, green_schur, kernel_dim_check, kernel_instances, random_symmetric};
use crate::rng::substream;
use crate::spectral::{
    cluster_multiplicities, eigendecompose, Interval, DEFAULT_RESIDUAL_TOL,
};
use crate::stats::{
    count_distribution, estimate_minami, negligibility_check, poisson_fit, run_ensemble,
    segments, EnsembleSpec,
};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write artifacts: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// Process exit code: 2 for config/schema problems, 3 for runtime
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical(_) | RunError::Io(_) => 3,
        }
    }
}

/// Execution options from the CLI.
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Worker threads; `None` = available parallelism.
    pub threads: Option<usize>,
    pub out_dir: PathBuf,
    /// Overrides the config's master seed.
    pub seed_override: Option<u64>,
}

/// What a run produced.
#[derive(Debug)]
pub struct RunSummary {
    pub kind: &'static str,
    pub artifacts: Vec<PathBuf>,
    pub summary: serde_json::Value,
}

/// Run one experiment end to end.  The effective config (after the seed
/// override) is what gets hashed into artifact headers.
pub fn run(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunSummary, RunError> {
    let mut cfg = config.clone();
    if let Some(seed) = opts.seed_override {
        cfg.master_seed = seed;
    }
    cfg.validate()?;
    std::fs::create_dir_all(&opts.out_dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.unwrap_or(0))
        .build()
        .map_err(|e| RunError::Numerical(format!("worker pool: {e}")))?;
    let result = pool.install(|| execute(&cfg, &opts.out_dir));
    if let Err(err) = &result {
        if err.exit_code() == 3 {
            let note = format!(
                "experiment: {}\nmaster_seed: {}\nconfig_sha256: {}\nerror: {err}\n",
                cfg.experiment.name(),
                cfg.master_seed,
                cfg.sha256()
            );
            // Best effort; the original error matters more.
            let _ = std::fs::write(opts.out_dir.join("diagnostics.txt"), note);
        }
    }
    result
}

fn execute(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunSummary, RunError> {
    let meta = ArtifactMeta::from_config(cfg);
    match &cfg.experiment {
        ExperimentKind::Multiplicity(p) => run_multiplicity(cfg, p, &meta, out_dir, "multiplicity"),
        ExperimentKind::Counterexample(p) => {
            let windows = MultiplicityParams::default().windows;
            let as_mult = MultiplicityParams {
                realizations: p.realizations,
                cluster_delta_rel: p.cluster_delta_rel,
                windows,
            };
            run_multiplicity(cfg, &as_mult, &meta, out_dir, "counterexample")
        }
        ExperimentKind::Minami(p) => run_minami(cfg, p, &meta, out_dir),
        ExperimentKind::Stats(p) => run_stats(cfg, p, &meta, out_dir),
        ExperimentKind::GreenCheck(p) => run_green_check(cfg, p, &meta, out_dir),
        ExperimentKind::KernelCheck(p) => run_kernel_check(cfg, p, &meta, out_dir),
    }
}

/// Shared by `multiplicity` and `counterexample`: diagonalize full
/// samples, cluster, and check window expectations.
fn run_multiplicity(
    cfg: &ExperimentConfig,
    p: &MultiplicityParams,
    meta: &ArtifactMeta,
    out_dir: &Path,
    kind: &'static str,
) -> Result<RunSummary, RunError> {
    let model = cfg.build_model()?;
    let mut rows = Vec::new();
    let mut window_stats: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0); p.windows.len()];
    // (clusters seen, min count, violations) per window.
    for r in 0..p.realizations {
        let sample = model.sample(cfg.master_seed, r as u64);
        let eig = eigendecompose(&sample.matrix, DEFAULT_RESIDUAL_TOL)
            .map_err(|e| RunError::Numerical(format!("realization {r}: {e}")))?;
        let delta = p.cluster_delta_rel * eig.spectral_norm().max(1.0);
        let report = cluster_multiplicities(&eig.values, delta);
        rows.extend(cluster_rows(r, &report));
        for (wi, w) in p.windows.iter().enumerate() {
            for c in &report.clusters {
                if c.value > w.lo && c.value < w.hi {
                    let slot = &mut window_stats[wi];
                    slot.0 += 1;
                    slot.1 = slot.1.min(c.count);
                    let exact_bad = w.expect_exact.is_some_and(|e| c.count != e);
                    let min_bad = w.expect_min.is_some_and(|m| c.count < m);
                    if exact_bad || min_bad {
                        slot.2 += 1;
                    }
                }
            }
        }
    }
    let clusters_path = out_dir.join("clusters.csv");
    write_table(&clusters_path, meta, &CLUSTER_COLUMNS, rows)?;
    let windows: Vec<serde_json::Value> = p
        .windows
        .iter()
        .zip(&window_stats)
        .map(|(w, &(seen, min_count, violations))| {
            json!({
                "lo": w.lo,
                "hi": w.hi,
                "expect_exact": w.expect_exact,
                "expect_min": w.expect_min,
                "clusters_seen": seen,
                "min_count": if seen == 0 { serde_json::Value::Null } else { min_count.into() },
                "violations": violations,
            })
        })
        .collect();
    let all_satisfied = window_stats.iter().all(|&(_, _, v)| v == 0);
    let summary = json!({
        "experiment": kind,
        "realizations": p.realizations,
        "cluster_delta_rel": p.cluster_delta_rel,
        "windows": windows,
        "all_windows_satisfied": all_satisfied,
    });
    let summary_path = out_dir.join("summary.json");
    write_json_summary(&summary_path, meta, summary.clone())?;
    Ok(RunSummary {
        kind,
        artifacts: vec![clusters_path, summary_path],
        summary,
    })
}

fn run_minami(
    cfg: &ExperimentConfig,
    p: &MinamiParams,
    meta: &ArtifactMeta,
    out_dir: &Path,
) -> Result<RunSummary, RunError> {
    let model = cfg.build_model()?;
    let sites = model.site_count();
    let mut rows = Vec::new();
    let mut max_ratio_upper: f64 = 0.0;
    for &size in &p.block_sizes {
        let spec = EnsembleSpec {
            model: model.clone(),
            realizations: p.realizations,
            master_seed: cfg.master_seed,
            energy: p.energy,
            half_width: p.widths.iter().cloned().fold(0.0, f64::max) / 2.0,
            blocks: segments(sites, sites / size),
        };
        let results = run_ensemble(&spec).map_err(|e| RunError::Numerical(e.to_string()))?;
        let all: Vec<usize> = (0..results.block_sites.len()).collect();
        for &width in &p.widths {
            let j = Interval::centered(p.energy, width / 2.0)
                .map_err(|e| RunError::Numerical(e.to_string()))?;
            let est = estimate_minami(&results, &all, j, p.k, p.a, p.b)
                .map_err(|e| RunError::Numerical(e.to_string()))?;
            max_ratio_upper = max_ratio_upper.max(est.ratio_upper);
            rows.push(minami_row(&est));
        }
    }
    let table_path = out_dir.join("minami_ratios.csv");
    write_table(&table_path, meta, &MINAMI_COLUMNS, rows)?;
    let summary = json!({
        "experiment": "minami",
        "energy": p.energy,
        "widths": p.widths,
        "block_sizes": p.block_sizes,
        "realizations": p.realizations,
        "k": p.k,
        "a": p.a,
        "b": p.b,
        "max_ratio_upper": max_ratio_upper,
    });
    let summary_path = out_dir.join("summary.json");
    write_json_summary(&summary_path, meta, summary.clone())?;
    Ok(RunSummary {
        kind: "minami",
        artifacts: vec![table_path, summary_path],
        summary,
    })
}

fn run_stats(
    cfg: &ExperimentConfig,
    p: &StatsParams,
    meta: &ArtifactMeta,
    out_dir: &Path,
) -> Result<RunSummary, RunError> {
    let model = cfg.build_model()?;
    let sites = model.site_count();
    let blocks = crate::config::resolve_grouping(&p.grouping, &model)?;
    let h = p.half_width.unwrap_or(p.half_width_scale / sites as f64);
    let spec = EnsembleSpec {
        model,
        realizations: p.realizations,
        master_seed: cfg.master_seed,
        energy: p.energy,
        half_width: h,
        blocks,
    };
    let results = run_ensemble(&spec).map_err(|e| RunError::Numerical(e.to_string()))?;
    let all: Vec<usize> = (0..results.block_sites.len()).collect();
    let counts_path = out_dir.join("counts.csv");
    write_table(&counts_path, meta, &COUNT_COLUMNS, count_rows(&results, p.energy, h))?;
    let per_block = count_distribution(&results, p.energy, h, &all, false)
        .map_err(|e| RunError::Numerical(e.to_string()))?;
    let per_block_path = out_dir.join("pmf_per_block.csv");
    write_table(&per_block_path, meta, &PMF_COLUMNS, pmf_rows(&per_block))?;
    let mut artifacts = vec![counts_path, per_block_path];
    let j = Interval::centered(p.energy, h).map_err(|e| RunError::Numerical(e.to_string()))?;
    let negligibility = negligibility_check(&results, &all, j)
        .map_err(|e| RunError::Numerical(e.to_string()))?;
    let mut summary = json!({
        "experiment": "stats",
        "energy": p.energy,
        "half_width": h,
        "blocks": results.block_sites.len(),
        "realizations": p.realizations,
        "negligibility_max": negligibility,
        "per_block_mean": per_block.mean,
    });
    if p.summed {
        let summed = count_distribution(&results, p.energy, h, &all, true)
            .map_err(|e| RunError::Numerical(e.to_string()))?;
        let fit = poisson_fit(&summed);
        let summed_path = out_dir.join("pmf_summed.csv");
        write_table(&summed_path, meta, &PMF_COLUMNS, pmf_rows(&summed))?;
        artifacts.push(summed_path);
        let obj = summary.as_object_mut().expect("summary object");
        obj.insert("summed_mean".into(), json!(summed.mean));
        obj.insert("summed_variance".into(), json!(summed.variance));
        obj.insert("lambda_hat".into(), json!(fit.lambda_hat));
        obj.insert("tv_distance".into(), json!(fit.tv_distance));
        obj.insert("one_point_mass".into(), json!(fit.one_point_mass));
    }
    let summary_path = out_dir.join("summary.json");
    write_json_summary(&summary_path, meta, summary.clone())?;
    artifacts.push(summary_path);
    Ok(RunSummary {
        kind: "stats",
        artifacts,
        summary,
    })
}

fn run_green_check(
    cfg: &ExperimentConfig,
    p: &GreenCheckParams,
    meta: &ArtifactMeta,
    out_dir: &Path,
) -> Result<RunSummary, RunError> {
    // Part 1: Schur vs direct on random dense instances.
    let mut check_rows = Vec::new();
    let mut max_rel_discrepancy: f64 = 0.0;
    for i in 0..p.instances {
        let mut rng = substream(cfg.master_seed, i as u64, 0);
        let h = random_symmetric(p.dim, &mut rng);
        let mut block: Vec<usize> = Vec::with_capacity(p.block_size);
        while block.len() < p.block_size {
            let s = rng.random_range(0..p.dim);
            if !block.contains(&s) {
                block.push(s);
            }
        }
        block.sort_unstable();
        let z = Complex64::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(p.min_im..(p.min_im + 2.0)),
        );
        let gd = green_direct(&h, &block, z).map_err(|e| RunError::Numerical(e.to_string()))?;
        let gs = green_schur(&h, &block, z).map_err(|e| RunError::Numerical(e.to_string()))?;
        let diff = (&gd.matrix - &gs.matrix)
            .iter()
            .fold(0.0f64, |m, v| m.max(v.norm()));
        let bound = p.tol * (1.0 + gd.max_norm());
        if diff > bound {
            return Err(RunError::Numerical(format!(
                "instance {i}: Schur/direct discrepancy {diff:.3e} exceeds {bound:.3e}"
            )));
        }
        max_rel_discrepancy = max_rel_discrepancy.max(diff / (1.0 + gd.max_norm()));
        check_rows.push(vec![
            i.to_string(),
            z.re.to_string(),
            z.im.to_string(),
            diff.to_string(),
            gd.max_norm().to_string(),
            bound.to_string(),
        ]);
    }
    let checks_path = out_dir.join("green_checks.csv");
    write_table(
        &checks_path,
        meta,
        &["instance", "re_z", "im_z", "discrepancy", "g_max_norm", "bound"],
        check_rows,
    )?;

    // Part 2: Herglotz sweep over sampled models; grid artifact from the
    // first model.
    let model = cfg.build_model()?;
    let mut min_im_eig = f64::INFINITY;
    let mut grid_rows = Vec::new();
    for m in 0..p.grid_models {
        let sample = model.sample(cfg.master_seed, m as u64);
        let eig = eigendecompose(&sample.matrix, DEFAULT_RESIDUAL_TOL)
            .map_err(|e| RunError::Numerical(format!("model {m}: {e}")))?;
        let lo = eig.values.first().copied().unwrap_or(-1.0) - 0.5;
        let hi = eig.values.last().copied().unwrap_or(1.0) + 0.5;
        let block: Vec<usize> = (0..p.block_size.min(sample.matrix.nrows())).collect();
        for ir in 0..p.grid_re {
            let re = lo + (hi - lo) * ir as f64 / (p.grid_re.max(2) - 1) as f64;
            for ii in 0..p.grid_im {
                let im = 0.05 + 1.95 * ii as f64 / (p.grid_im.max(2) - 1) as f64;
                let g = green_direct(&sample.matrix, &block, Complex64::new(re, im))
                    .map_err(|e| RunError::Numerical(e.to_string()))?;
                let lam = g
                    .imag_min_eigenvalue()
                    .map_err(|e| RunError::Numerical(e.to_string()))?;
                min_im_eig = min_im_eig.min(lam);
                if m == 0 {
                    grid_rows.extend(green_rows(&g));
                }
            }
        }
    }
    let grid_path = out_dir.join("green_grid.csv");
    write_table(&grid_path, meta, &GREEN_COLUMNS, grid_rows)?;
    if min_im_eig < -1e-10 {
        return Err(RunError::Numerical(format!(
            "Herglotz violation: min eigenvalue of Im G = {min_im_eig:.3e}"
        )));
    }
    let summary = json!({
        "experiment": "green-check",
        "instances": p.instances,
        "dim": p.dim,
        "block_size": p.block_size,
        "max_rel_discrepancy": max_rel_discrepancy,
        "tol": p.tol,
        "herglotz_min_im_eigenvalue": min_im_eig,
        "grid_models": p.grid_models,
        "grid_points": p.grid_re * p.grid_im,
        "method_pair": [method_name(crate::green::GreenMethod::Direct),
                        method_name(crate::green::GreenMethod::Schur)],
    });
    let summary_path = out_dir.join("summary.json");
    write_json_summary(&summary_path, meta, summary.clone())?;
    Ok(RunSummary {
        kind: "green-check",
        artifacts: vec![checks_path, grid_path, summary_path],
        summary,
    })
}

fn run_kernel_check(
    cfg: &ExperimentConfig,
    p: &KernelCheckParams,
    meta: &ArtifactMeta,
    out_dir: &Path,
) -> Result<RunSummary, RunError> {
    let instances = kernel_instances(cfg.master_seed, p.instances);
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    let mut dim_counts = [0usize; 3];
    for (i, inst) in instances.iter().enumerate() {
        let dims = kernel_dim_check(&inst.h, &inst.block, inst.lambda, inst.energy, p.tol)
            .map_err(|e| RunError::Numerical(format!("instance {i}: {e}")))?;
        let ok = dims.perturbed_kernel == dims.green_kernel
            && dims.perturbed_kernel == inst.expected_dim;
        if !ok {
            mismatches += 1;
        }
        if inst.expected_dim < 3 {
            dim_counts[inst.expected_dim] += 1;
        }
        rows.push(vec![
            i.to_string(),
            inst.lambda.to_string(),
            inst.energy.to_string(),
            inst.expected_dim.to_string(),
            dims.perturbed_kernel.to_string(),
            dims.green_kernel.to_string(),
            ok.to_string(),
        ]);
    }
    let table_path = out_dir.join("kernel_checks.csv");
    write_table(
        &table_path,
        meta,
        &["instance", "lambda", "energy", "expected", "d1", "d2", "match"],
        rows,
    )?;
    if mismatches > 0 {
        return Err(RunError::Numerical(format!(
            "{mismatches} kernel instances disagree with the planted dimension"
        )));
    }
    let summary = json!({
        "experiment": "kernel-check",
        "instances": p.instances,
        "tol": p.tol,
        "dim0_instances": dim_counts[0],
        "dim1_instances": dim_counts[1],
        "dim2_instances": dim_counts[2],
        "all_match": true,
    });
    let summary_path = out_dir.join("summary.json");
    write_json_summary(&summary_path, meta, summary.clone())?;
    Ok(RunSummary {
        kind: "kernel-check",
        artifacts: vec![table_path, summary_path],
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::BlockGrouping;

    fn opts(dir: &tempfile::TempDir) -> RunOptions {
        RunOptions {
            threads: Some(2),
            out_dir: dir.path().to_path_buf(),
            seed_override: None,
        }
    }

    #[test]
    fn counterexample_recipe_runs_and_satisfies_windows() {
        let mut cfg = ExperimentConfig::recipe("counterexample").unwrap();
        // Shrink for test speed; windows stay the acceptance ones.
        if let crate::config::ModelConfig::Builtin { length, .. } = &mut cfg.model {
            *length = Some(16);
        }
        if let ExperimentKind::Counterexample(p) = &mut cfg.experiment {
            p.realizations = 3;
        }
        let dir = tempfile::tempdir().unwrap();
        let out = run(&cfg, &opts(&dir)).unwrap();
        assert_eq!(out.kind, "counterexample");
        assert_eq!(out.summary["all_windows_satisfied"], true);
        let text = std::fs::read_to_string(dir.path().join("clusters.csv")).unwrap();
        let meta = ArtifactMeta::parse(&text).unwrap();
        assert_eq!(meta.master_seed, cfg.master_seed);
        assert_eq!(meta.config_sha256, cfg.sha256());
    }

    #[test]
    fn seed_override_changes_artifacts_and_header() {
        let mut cfg = ExperimentConfig::recipe("counterexample").unwrap();
        if let crate::config::ModelConfig::Builtin { length, .. } = &mut cfg.model {
            *length = Some(10);
        }
        if let ExperimentKind::Counterexample(p) = &mut cfg.experiment {
            p.realizations = 2;
        }
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        let mut o1 = opts(&d1);
        o1.seed_override = Some(99);
        run(&cfg, &o1).unwrap();
        let mut o2 = opts(&d2);
        o2.seed_override = Some(100);
        run(&cfg, &o2).unwrap();
        let t1 = std::fs::read_to_string(d1.path().join("clusters.csv")).unwrap();
        let t2 = std::fs::read_to_string(d2.path().join("clusters.csv")).unwrap();
        assert_ne!(t1, t2);
        assert_eq!(ArtifactMeta::parse(&t1).unwrap().master_seed, 99);
        assert_eq!(ArtifactMeta::parse(&t2).unwrap().master_seed, 100);
    }

    #[test]
    fn kernel_check_recipe_runs_clean() {
        let mut cfg = ExperimentConfig::recipe("kernel-check").unwrap();
        if let ExperimentKind::KernelCheck(p) = &mut cfg.experiment {
            p.instances = 6;
        }
        let dir = tempfile::tempdir().unwrap();
        let out = run(&cfg, &opts(&dir)).unwrap();
        assert_eq!(out.summary["all_match"], true);
        assert_eq!(out.summary["dim0_instances"], 2);
        assert_eq!(out.summary["dim1_instances"], 2);
        assert_eq!(out.summary["dim2_instances"], 2);
    }

    #[test]
    fn green_check_recipe_runs_clean() {
        let mut cfg = ExperimentConfig::recipe("green-check").unwrap();
        if let ExperimentKind::GreenCheck(p) = &mut cfg.experiment {
            p.instances = 10;
            p.dim = 20;
            p.grid_models = 2;
            p.grid_re = 4;
            p.grid_im = 4;
        }
        let dir = tempfile::tempdir().unwrap();
        let out = run(&cfg, &opts(&dir)).unwrap();
        assert!(out.summary["herglotz_min_im_eigenvalue"].as_f64().unwrap() >= -1e-10);
        assert!(out.summary["max_rel_discrepancy"].as_f64().unwrap() <= 1e-9);
        let grid = std::fs::read_to_string(dir.path().join("green_grid.csv")).unwrap();
        // 4×4 grid × 3×3 block entries from the first model.
        assert_eq!(grid.lines().count(), 4 + 16 * 9);
    }

    #[test]
    fn stats_recipe_runs_and_summarizes() {
        let mut cfg = ExperimentConfig::recipe("stats").unwrap();
        if let crate::config::ModelConfig::Builtin { length, .. } = &mut cfg.model {
            *length = Some(60);
        }
        if let ExperimentKind::Stats(p) = &mut cfg.experiment {
            p.realizations = 120;
            p.grouping = BlockGrouping::Segments { count: 6 };
        }
        let dir = tempfile::tempdir().unwrap();
        let out = run(&cfg, &opts(&dir)).unwrap();
        assert!(out.summary["tv_distance"].is_number());
        assert!(out.summary["negligibility_max"].as_f64().unwrap() <= 1.0);
        assert!(dir.path().join("counts.csv").exists());
        assert!(dir.path().join("pmf_summed.csv").exists());
    }

    #[test]
    fn minami_recipe_runs_with_small_budget() {
        let mut cfg = ExperimentConfig::recipe("minami").unwrap();
        if let crate::config::ModelConfig::Builtin { length, .. } = &mut cfg.model {
            *length = Some(80);
        }
        if let ExperimentKind::Minami(p) = &mut cfg.experiment {
            p.realizations = 60;
            p.block_sizes = vec![20, 40];
            p.widths = vec![0.1, 0.05];
        }
        let dir = tempfile::tempdir().unwrap();
        let out = run(&cfg, &opts(&dir)).unwrap();
        assert!(out.summary["max_ratio_upper"].as_f64().unwrap().is_finite());
        let table = std::fs::read_to_string(dir.path().join("minami_ratios.csv")).unwrap();
        assert_eq!(table.lines().count(), 4 + 4); // header+columns, 2 sizes × 2 widths
    }

    #[test]
    fn serial_and_parallel_runs_are_byte_identical() {
        let mut cfg = ExperimentConfig::recipe("counterexample").unwrap();
        if let crate::config::ModelConfig::Builtin { length, .. } = &mut cfg.model {
            *length = Some(12);
        }
        if let ExperimentKind::Counterexample(p) = &mut cfg.experiment {
            p.realizations = 4;
        }
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        let o1 = RunOptions {
            threads: Some(1),
            out_dir: d1.path().to_path_buf(),
            seed_override: None,
        };
        let o2 = RunOptions {
            threads: Some(4),
            out_dir: d2.path().to_path_buf(),
            seed_override: None,
        };
        run(&cfg, &o1).unwrap();
        run(&cfg, &o2).unwrap();
        for name in ["clusters.csv", "summary.json"] {
            let b1 = std::fs::read(d1.path().join(name)).unwrap();
            let b2 = std::fs::read(d2.path().join(name)).unwrap();
            assert_eq!(b1, b2, "{name} differs between thread counts");
        }
    }
}
