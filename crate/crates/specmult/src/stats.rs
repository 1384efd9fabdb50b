//! Ensemble-level eigenvalue statistics.
//!
//! Runs ensembles of disorder realizations, restricts each sample to a
//! family of disjoint blocks `B_k`, and studies the local eigenvalue
//! counts `η_k = Tr E_{H_{B_k}}([E-h, E+h))`: empirical tail-probability
//! ratios against `|B|^a |J|^{1+b}` (the finite-volume face of two-level
//! suppression bounds), count distributions in per-block and summed mode,
//! Poisson goodness of fit by total variation, and the negligible-array
//! check that licenses reading a summed count limit as (compound) Poisson.
//!
//! Everything downstream of `run_ensemble` is a deterministic fold of the
//! per-realization results, so serial and parallel execution agree
//! exactly.

use rayon::prelude::*;
use thiserror::Error;

use crate::operator::RandomModel;
use crate::spectral::{
    count_in_interval, eigendecompose, restrict, Interval, SpectralError, DEFAULT_RESIDUAL_TOL,
};

/// z-score of the two-sided 95% normal quantile, used by the Wilson
/// score interval.
pub const WILSON_Z: f64 = 1.959_963_984_540_054;

/// Truncation floor for total-variation comparison against a fitted
/// Poisson law: the support is cut at `max(TV_SUPPORT_FLOOR, max count)`
/// and the remaining Poisson tail mass is charged in full.
pub const TV_SUPPORT_FLOOR: usize = 20;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("ensemble needs at least one realization")]
    NoRealizations,
    #[error("block {index} is empty or out of range for {sites} sites")]
    BadBlock { index: usize, sites: usize },
    #[error("blocks overlap: site {site} appears twice")]
    OverlappingBlocks { site: usize },
    #[error("estimate needs at least one block, all of equal size")]
    MismatchedBlocks,
    #[error("block index {index} out of range ({count} blocks)")]
    BlockIndex { index: usize, count: usize },
    #[error("interval must have positive width")]
    EmptyInterval,
    #[error("eigensolve failed at realization {realization}: {source}")]
    Eigen {
        realization: usize,
        source: SpectralError,
    },
}

/// An ensemble experiment: a random model, a realization budget, and the
/// disjoint blocks whose restricted spectra are recorded.
#[derive(Debug, Clone)]
pub struct EnsembleSpec {
    pub model: RandomModel,
    pub realizations: usize,
    pub master_seed: u64,
    /// Reference energy for count windows.
    pub energy: f64,
    /// Default window half-width.
    pub half_width: f64,
    /// Disjoint site sets B_k (not necessarily aligned with the model's
    /// perturbation blocks).
    pub blocks: Vec<Vec<usize>>,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<(), StatsError> {
        if self.realizations == 0 {
            return Err(StatsError::NoRealizations);
        }
        let sites = self.model.site_count();
        let mut seen = vec![false; sites];
        for (index, block) in self.blocks.iter().enumerate() {
            if block.is_empty() || block.iter().any(|&s| s >= sites) {
                return Err(StatsError::BadBlock { index, sites });
            }
            for &s in block {
                if seen[s] {
                    return Err(StatsError::OverlappingBlocks { site: s });
                }
                seen[s] = true;
            }
        }
        Ok(())
    }
}

/// Equal contiguous segments covering `[0, sites)`; `sites` must be a
/// multiple of `count`.
pub fn segments(sites: usize, count: usize) -> Vec<Vec<usize>> {
    assert!(count >= 1 && sites % count == 0, "segments must tile the lattice evenly");
    let w = sites / count;
    (0..count).map(|k| (k * w..(k + 1) * w).collect()).collect()
}

/// Groups of `group_cols` adjacent columns of a layered chain
/// (layer-major site order), one block per group.
pub fn column_groups(layers: usize, length: usize, group_cols: usize) -> Vec<Vec<usize>> {
    assert!(group_cols >= 1 && length % group_cols == 0, "column groups must tile the chain");
    (0..length / group_cols)
        .map(|g| {
            (0..layers)
                .flat_map(|m| {
                    (g * group_cols..(g + 1) * group_cols).map(move |n| m * length + n)
                })
                .collect()
        })
        .collect()
}

/// Per-realization, per-block sorted eigenvalue lists.
#[derive(Debug, Clone)]
pub struct EnsembleResults {
    pub block_sites: Vec<Vec<usize>>,
    /// `eigenvalues[realization][block]`, each ascending.
    pub eigenvalues: Vec<Vec<Vec<f64>>>,
    pub master_seed: u64,
    pub energy: f64,
    pub half_width: f64,
}

impl EnsembleResults {
    pub fn realizations(&self) -> usize {
        self.eigenvalues.len()
    }

    /// η_{block} for one realization and window.
    pub fn count(&self, realization: usize, block: usize, j: Interval) -> usize {
        count_in_interval(&self.eigenvalues[realization][block], j)
    }
}

/// Diagonalize every block restriction of every realization.  Realization
/// `i` draws from substream `i`; the parallel fold is ordered by
/// realization index, so results are independent of the worker count.
pub fn run_ensemble(spec: &EnsembleSpec) -> Result<EnsembleResults, StatsError> {
    spec.validate()?;
    let eigenvalues = (0..spec.realizations)
        .into_par_iter()
        .map(|r| {
            let sample = spec.model.sample(spec.master_seed, r as u64);
            spec.blocks
                .iter()
                .map(|block| {
                    restrict(&sample.matrix, block)
                        .and_then(|sub| eigendecompose(&sub, DEFAULT_RESIDUAL_TOL))
                        .map(|e| e.values)
                        .map_err(|source| StatsError::Eigen {
                            realization: r,
                            source,
                        })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EnsembleResults {
        block_sites: spec.blocks.clone(),
        eigenvalues,
        master_seed: spec.master_seed,
        energy: spec.energy,
        half_width: spec.half_width,
    })
}

/// Wilson 95% score interval for a binomial proportion.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    assert!(trials >= 1 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Empirical tail-probability estimate `P(η_{B,J} ≥ K+1)` with its ratio
/// against the scaling `|B|^a |J|^{1+b}`.
#[derive(Debug, Clone)]
pub struct MinamiEstimate {
    pub p_hat: f64,
    pub successes: usize,
    pub trials: usize,
    /// Tail threshold: successes are realizations with η ≥ k + 1.
    pub k: usize,
    pub a: f64,
    pub b: f64,
    pub block_size: usize,
    pub interval: Interval,
    /// Wilson 95% interval on p_hat.
    pub ci: (f64, f64),
    /// `p_hat / (|B|^a |J|^{1+b})`.
    pub ratio: f64,
    /// Same scaling applied to the upper confidence bound.
    pub ratio_upper: f64,
}

/// Estimate `P(η ≥ K+1)` pooled over realizations × the listed blocks
/// (which must share one size, since `|B|` enters the ratio).  The
/// default two-level case is `k = 1`, `(a, b) = (2, 1)`.
pub fn estimate_minami(
    results: &EnsembleResults,
    blocks: &[usize],
    j: Interval,
    k: usize,
    a: f64,
    b: f64,
) -> Result<MinamiEstimate, StatsError> {
    if results.realizations() == 0 {
        return Err(StatsError::NoRealizations);
    }
    if j.width() <= 0.0 {
        return Err(StatsError::EmptyInterval);
    }
    let (&first, rest) = blocks.split_first().ok_or(StatsError::MismatchedBlocks)?;
    for &bi in blocks {
        if bi >= results.block_sites.len() {
            return Err(StatsError::BlockIndex {
                index: bi,
                count: results.block_sites.len(),
            });
        }
    }
    let block_size = results.block_sites[first].len();
    if rest.iter().any(|&bi| results.block_sites[bi].len() != block_size) {
        return Err(StatsError::MismatchedBlocks);
    }
    let mut successes = 0usize;
    let mut trials = 0usize;
    for r in 0..results.realizations() {
        for &bi in blocks {
            trials += 1;
            if results.count(r, bi, j) >= k + 1 {
                successes += 1;
            }
        }
    }
    let p_hat = successes as f64 / trials as f64;
    let ci = wilson_interval(successes, trials);
    let scale = (block_size as f64).powf(a) * j.width().powf(1.0 + b);
    Ok(MinamiEstimate {
        p_hat,
        successes,
        trials,
        k,
        a,
        b,
        block_size,
        interval: j,
        ci,
        ratio: p_hat / scale,
        ratio_upper: ci.1 / scale,
    })
}

/// [`estimate_minami`] at the standard two-eigenvalue settings
/// `K = 1, a = 2, b = 1`.
pub fn estimate_minami_default(
    results: &EnsembleResults,
    blocks: &[usize],
    j: Interval,
) -> Result<MinamiEstimate, StatsError> {
    estimate_minami(results, blocks, j, 1, 2.0, 1.0)
}

/// Empirical distribution of local eigenvalue counts.
#[derive(Debug, Clone)]
pub struct CountDistribution {
    /// Raw samples (one per block×realization, or per realization when
    /// summed).
    pub counts: Vec<usize>,
    /// `pmf[k] = P̂(N = k)`, trailing entry nonzero.
    pub pmf: Vec<f64>,
    pub sample_size: usize,
    pub mean: f64,
    /// Population variance.
    pub variance: f64,
    pub summed: bool,
}

impl CountDistribution {
    pub fn from_counts(counts: Vec<usize>, summed: bool) -> Self {
        assert!(!counts.is_empty(), "count distribution needs samples");
        let n = counts.len();
        let max = counts.iter().copied().max().unwrap_or(0);
        let mut pmf = vec![0.0; max + 1];
        for &c in &counts {
            pmf[c] += 1.0 / n as f64;
        }
        let mean = counts.iter().sum::<usize>() as f64 / n as f64;
        let variance = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - mean;
                d * d
            })
            .sum::<f64>()
            / n as f64;
        Self {
            counts,
            pmf,
            sample_size: n,
            mean,
            variance,
        summed,
        }
    }

    /// Empirical `P̂(N = k)`.
    pub fn mass_at(&self, k: usize) -> f64 {
        self.pmf.get(k).copied().unwrap_or(0.0)
    }
}

/// Count eigenvalues of the selected blocks in `[E-h, E+h)`, per
/// block×realization (`summed = false`) or summed over blocks per
/// realization (`summed = true`).
pub fn count_distribution(
    results: &EnsembleResults,
    energy: f64,
    half_width: f64,
    blocks: &[usize],
    summed: bool,
) -> Result<CountDistribution, StatsError> {
    if results.realizations() == 0 {
        return Err(StatsError::NoRealizations);
    }
    for &bi in blocks {
        if bi >= results.block_sites.len() {
            return Err(StatsError::BlockIndex {
                index: bi,
                count: results.block_sites.len(),
            });
        }
    }
    let j = Interval::centered(energy, half_width).map_err(|_| StatsError::EmptyInterval)?;
    let mut counts = Vec::new();
    for r in 0..results.realizations() {
        let mut total = 0usize;
        for &bi in blocks {
            let c = results.count(r, bi, j);
            if summed {
                total += c;
            } else {
                counts.push(c);
            }
        }
        if summed {
            counts.push(total);
        }
    }
    Ok(CountDistribution::from_counts(counts, summed))
}

/// Poisson goodness-of-fit summary.
#[derive(Debug, Clone)]
pub struct PoissonFit {
    /// Fitted rate (sample mean).
    pub lambda_hat: f64,
    /// Total variation to Poisson(λ̂) on the truncated support.
    pub tv_distance: f64,
    /// Empirical `P̂(N = 1)` — exactly zero for perfectly M-fold
    /// degenerate spectra with M ≥ 2, the compound-Poisson signature.
    pub one_point_mass: f64,
}

/// Fit a Poisson law by the sample mean and measure the total-variation
/// distance on counts up to `max(20, max observed)`; the Poisson tail
/// beyond the cut is charged in full (the empirical mass there is zero).
pub fn poisson_fit(dist: &CountDistribution) -> PoissonFit {
    let lambda = dist.mean;
    let support = TV_SUPPORT_FLOOR.max(dist.pmf.len() - 1);
    let mut tv = 0.0;
    let mut poisson_mass = 0.0;
    let mut pk = (-lambda).exp(); // Poisson(λ) at k = 0
    for k in 0..=support {
        tv += (dist.mass_at(k) - pk).abs();
        poisson_mass += pk;
        pk *= lambda / (k + 1) as f64;
    }
    tv += 1.0 - poisson_mass; // tail beyond the cut
    PoissonFit {
        lambda_hat: lambda,
        tv_distance: 0.5 * tv,
        one_point_mass: dist.mass_at(1),
    }
}

/// `max_k P̂(η_k ≥ 1)` over the given blocks — the uniform-negligibility
/// proxy.  A summed count limit is only read as (compound) Poisson when
/// every individual block is unlikely to fire.
pub fn negligibility_check(
    results: &EnsembleResults,
    blocks: &[usize],
    j: Interval,
) -> Result<f64, StatsError> {
    if results.realizations() == 0 {
        return Err(StatsError::NoRealizations);
    }
    let n = results.realizations() as f64;
    let mut worst = 0.0f64;
    for &bi in blocks {
        if bi >= results.block_sites.len() {
            return Err(StatsError::BlockIndex {
                index: bi,
                count: results.block_sites.len(),
            });
        }
        let fired = (0..results.realizations())
            .filter(|&r| results.count(r, bi, j) >= 1)
            .count();
        worst = worst.max(fired as f64 / n);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::models::{anderson_chain, remark_stacked_5, trivial_minami};
    use crate::operator::DisorderSpec;
    use approx::assert_abs_diff_eq;

    fn trivial_spec(pairs: usize, realizations: usize, seed: u64) -> EnsembleSpec {
        let model = trivial_minami(pairs, DisorderSpec::Uniform { lo: 0.0, hi: 1.0 }).unwrap();
        let blocks = segments(2 * pairs, pairs); // the scheme's {2n, 2n+1} pairs
        EnsembleSpec {
            model,
            realizations,
            master_seed: seed,
            energy: 0.5,
            half_width: 0.05,
            blocks,
        }
    }

    #[test]
    fn single_realization_matches_direct_pipeline() {
        let spec = trivial_spec(4, 1, 11);
        let results = run_ensemble(&spec).unwrap();
        assert_eq!(results.realizations(), 1);
        let sample = spec.model.sample(11, 0);
        for (bi, block) in spec.blocks.iter().enumerate() {
            let sub = restrict(&sample.matrix, block).unwrap();
            let eig = eigendecompose(&sub, DEFAULT_RESIDUAL_TOL).unwrap();
            assert_eq!(results.eigenvalues[0][bi], eig.values);
        }
    }

    #[test]
    fn ensemble_is_deterministic_and_threadcount_independent() {
        let spec = trivial_spec(6, 40, 23);
        let serial_pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let parallel_pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = serial_pool.install(|| run_ensemble(&spec)).unwrap();
        let b = parallel_pool.install(|| run_ensemble(&spec)).unwrap();
        let c = parallel_pool.install(|| run_ensemble(&spec)).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(b.eigenvalues, c.eigenvalues);
    }

    #[test]
    fn validation_rejects_bad_specs() {
        let mut spec = trivial_spec(4, 10, 1);
        spec.realizations = 0;
        assert!(matches!(spec.validate(), Err(StatsError::NoRealizations)));
        let mut spec2 = trivial_spec(4, 10, 1);
        spec2.blocks[0] = vec![0, 1, 2];
        assert!(matches!(spec2.validate(), Err(StatsError::OverlappingBlocks { site: 2 })));
        let mut spec3 = trivial_spec(4, 10, 1);
        spec3.blocks[0] = vec![99];
        assert!(matches!(spec3.validate(), Err(StatsError::BadBlock { .. })));
    }

    #[test]
    fn block_helpers_tile_disjointly() {
        let segs = segments(12, 3);
        assert_eq!(segs.len(), 3);
        assert_eq!(segs[1], vec![4, 5, 6, 7]);
        let groups = column_groups(5, 6, 2);
        assert_eq!(groups.len(), 3);
        // Group 0: columns 0,1 in every layer (layer-major).
        assert_eq!(groups[0], vec![0, 1, 6, 7, 12, 13, 18, 19, 24, 25]);
        let mut all: Vec<usize> = groups.concat();
        all.sort_unstable();
        assert_eq!(all, (0..30).collect::<Vec<_>>());
    }

    #[test]
    fn wilson_interval_textbook_values() {
        let (lo, hi) = wilson_interval(5, 10);
        assert_abs_diff_eq!(lo, 0.2366, epsilon = 5e-4);
        assert_abs_diff_eq!(hi, 0.7634, epsilon = 5e-4);
        let (lo0, hi0) = wilson_interval(0, 50);
        assert_eq!(lo0, 0.0);
        assert!(hi0 > 0.0 && hi0 < 0.1);
        let (lon, hin) = wilson_interval(50, 50);
        assert_eq!(hin, 1.0);
        assert!(lon > 0.9);
    }

    #[test]
    fn trivial_model_has_no_two_level_events_within_blocks() {
        // Block spectrum {ω, 1+ω}: spacing exactly 1, so no window of
        // width < 1 inside (0,1) ever captures two eigenvalues of one
        // block.
        let spec = trivial_spec(8, 150, 31);
        let results = run_ensemble(&spec).unwrap();
        let all: Vec<usize> = (0..8).collect();
        for width in [0.05, 0.1, 0.2] {
            let j = Interval::centered(0.5, width / 2.0).unwrap();
            let est = estimate_minami_default(&results, &all, j).unwrap();
            assert_eq!(est.successes, 0, "width {width}");
            assert_eq!(est.ratio, 0.0);
        }
    }

    #[test]
    fn paired_blocks_recover_quadratic_interval_scaling() {
        // Union of two independent pair-blocks: η ≥ 2 in J ⊂ (0,1) means
        // both ω's landed in J, so P = |J|² exactly and the pooled ratio
        // locks onto 1/|B|² = 1/16.
        let model = trivial_minami(12, DisorderSpec::Uniform { lo: 0.0, hi: 1.0 }).unwrap();
        let spec = EnsembleSpec {
            model,
            realizations: 400,
            master_seed: 57,
            energy: 0.5,
            half_width: 0.1,
            blocks: segments(24, 6), // six 4-site unions of two pairs
        };
        let results = run_ensemble(&spec).unwrap();
        let all: Vec<usize> = (0..6).collect();
        for width in [0.2, 0.3, 0.4] {
            let j = Interval::centered(0.5, width / 2.0).unwrap();
            let est = estimate_minami_default(&results, &all, j).unwrap();
            let expect = width * width;
            assert!(
                (est.ci.0..=est.ci.1).contains(&expect),
                "P = |J|² = {expect} outside CI {:?} at width {width}",
                est.ci
            );
            assert!(est.ratio_upper < 3.0 / 16.0, "ratio {}", est.ratio_upper);
        }
    }

    #[test]
    fn window_off_spectrum_gives_zero() {
        let spec = trivial_spec(5, 30, 43);
        let results = run_ensemble(&spec).unwrap();
        let j = Interval::new(10.0, 11.0).unwrap();
        let est = estimate_minami(&results, &[0, 1, 2, 3, 4], j, 1, 2.0, 1.0).unwrap();
        assert_eq!(est.p_hat, 0.0);
    }

    #[test]
    fn degenerate_stack_ratio_blows_up_as_window_shrinks() {
        // In (3.05, 4.95) the stacked model's spectrum is exactly
        // triple, so η ≥ 2 coincides with η ≥ 1 and the two-level ratio
        // scales like 1/|J| instead of staying bounded.
        let model = remark_stacked_5(16);
        let spec = EnsembleSpec {
            model,
            realizations: 200,
            master_seed: 71,
            energy: 4.3,
            half_width: 0.2,
            blocks: column_groups(5, 16, 8), // two 40-site blocks
        };
        let results = run_ensemble(&spec).unwrap();
        let mut ratios = Vec::new();
        // Center the windows inside a single flat sub-band (away from the
        // second band's edge near 4.06) so the one-level density is
        // locally constant across widths.
        for width in [0.4, 0.2, 0.1] {
            let j = Interval::centered(4.3, width / 2.0).unwrap();
            let est = estimate_minami_default(&results, &[0, 1], j).unwrap();
            assert!(est.p_hat > 0.0, "no events at width {width}");
            ratios.push(est.ratio);
        }
        assert!(
            ratios[2] > 2.0 * ratios[0],
            "ratio failed to grow: {ratios:?}"
        );
    }

    #[test]
    fn counts_in_degenerate_window_are_triples() {
        let model = remark_stacked_5(16);
        let spec = EnsembleSpec {
            model,
            realizations: 60,
            master_seed: 72,
            energy: 4.0,
            half_width: 0.15,
            blocks: column_groups(5, 16, 4), // four 20-site blocks
        };
        let results = run_ensemble(&spec).unwrap();
        let dist = count_distribution(&results, 4.0, 0.15, &[0, 1, 2, 3], false).unwrap();
        assert!(dist.counts.iter().any(|&c| c > 0), "window saw no spectrum");
        for &c in &dist.counts {
            assert_eq!(c % 3, 0, "count {c} not a triple");
        }
    }

    #[test]
    fn count_distribution_edge_windows() {
        let spec = trivial_spec(4, 25, 83);
        let results = run_ensemble(&spec).unwrap();
        // Huge window: summed count = total block rank = 8, always.
        let huge = count_distribution(&results, 0.0, 1e6, &[0, 1, 2, 3], true).unwrap();
        assert_eq!(huge.pmf.len(), 9);
        assert_abs_diff_eq!(huge.mass_at(8), 1.0, epsilon = 1e-12);
        // Zero window: all counts zero.
        let zero = count_distribution(&results, 0.5, 0.0, &[0, 1, 2, 3], false).unwrap();
        assert_eq!(zero.pmf.len(), 1);
        assert_abs_diff_eq!(zero.mass_at(0), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pmf_moments_are_consistent() {
        let spec = trivial_spec(6, 80, 91);
        let results = run_ensemble(&spec).unwrap();
        let dist = count_distribution(&results, 0.5, 0.2, &[0, 1, 2, 3, 4, 5], true).unwrap();
        let total: f64 = dist.pmf.iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        let mean: f64 = dist.pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
        assert_abs_diff_eq!(mean, dist.mean, epsilon = 1e-10);
        let var: f64 = dist
            .pmf
            .iter()
            .enumerate()
            .map(|(k, p)| (k as f64 - mean).powi(2) * p)
            .sum();
        assert_abs_diff_eq!(var, dist.variance, epsilon = 1e-10);
    }

    #[test]
    fn poisson_fit_accepts_true_poisson_samples() {
        use rand::Rng;
        use rand_distr::Poisson;
        let mut rng = crate::rng::substream(303, 0, 0);
        let law = Poisson::new(0.5).unwrap();
        let counts: Vec<usize> = (0..10_000).map(|_| rng.sample(law) as usize).collect();
        let dist = CountDistribution::from_counts(counts, true);
        let fit = poisson_fit(&dist);
        assert_abs_diff_eq!(fit.lambda_hat, 0.5, epsilon = 0.05);
        assert!(fit.tv_distance <= 0.02, "tv = {}", fit.tv_distance);
    }

    #[test]
    fn poisson_fit_flags_tripled_poisson() {
        use rand::Rng;
        use rand_distr::Poisson;
        let mut rng = crate::rng::substream(304, 0, 0);
        let law = Poisson::new(0.2).unwrap();
        let counts: Vec<usize> = (0..10_000).map(|_| 3 * rng.sample(law) as usize).collect();
        let dist = CountDistribution::from_counts(counts, true);
        let fit = poisson_fit(&dist);
        assert_eq!(fit.one_point_mass, 0.0);
        assert!(fit.tv_distance >= 0.1, "tv = {}", fit.tv_distance);
    }

    #[test]
    fn poisson_fit_degenerate_zero_counts() {
        let dist = CountDistribution::from_counts(vec![0; 200], true);
        let fit = poisson_fit(&dist);
        assert_eq!(fit.lambda_hat, 0.0);
        assert_abs_diff_eq!(fit.tv_distance, 0.0, epsilon = 1e-12);
        assert_eq!(fit.one_point_mass, 0.0);
    }

    #[test]
    fn negligibility_empty_window_and_giant_block() {
        let model = anderson_chain(40, DisorderSpec::Uniform { lo: -5.0, hi: 5.0 }).unwrap();
        let spec = EnsembleSpec {
            model,
            realizations: 50,
            master_seed: 313,
            energy: 0.0,
            half_width: 0.5,
            blocks: vec![(0..40).collect()],
        };
        let results = run_ensemble(&spec).unwrap();
        let empty = Interval::new(0.0, 0.0).unwrap();
        assert_eq!(negligibility_check(&results, &[0], empty).unwrap(), 0.0);
        // One giant block almost surely fires in a unit window at the
        // band center.
        let wide = Interval::centered(0.0, 0.5).unwrap();
        let worst = negligibility_check(&results, &[0], wide).unwrap();
        assert!(worst > 0.9, "giant block fired only {worst}");
    }

    #[test]
    fn negligibility_decreases_with_window_size() {
        let model = anderson_chain(60, DisorderSpec::Uniform { lo: -5.0, hi: 5.0 }).unwrap();
        let spec = EnsembleSpec {
            model,
            realizations: 40,
            master_seed: 317,
            energy: 0.0,
            half_width: 0.3,
            blocks: segments(60, 3),
        };
        let results = run_ensemble(&spec).unwrap();
        let mut last = f64::INFINITY;
        for hw in [0.3, 0.15, 0.05] {
            let j = Interval::centered(0.0, hw).unwrap();
            let v = negligibility_check(&results, &[0, 1, 2], j).unwrap();
            // Nested windows give pathwise-monotone counts, so the
            // worst-block frequency is monotone exactly.
            assert!(v <= last, "negligibility rose from {last} to {v} at halfwidth {hw}");
            last = v;
        }
    }
}
