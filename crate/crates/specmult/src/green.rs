//! Block-projected resolvents `G_B(z) = P_B (H - z)^{-1} P_B` and their
//! boundary values.
//!
//! Two independent evaluation routes are provided: a direct solve of
//! `(H - z) x = e_i` ([`green_direct`]) and the Schur-complement identity
//!
//! ```text
//!     G_B(z) = [ H_BB - z I - H_BC (H_CC - z I)^{-1} H_CB ]^{-1}
//! ```
//!
//! on the block/complement split ([`green_schur`]).  Agreement of the two
//! is a standing cross-check.  For real energies, [`boundary_value`] walks
//! a decreasing `ε`-schedule and classifies the limit `G(E + i0)`:
//! `Converged` (real part Cauchy, residual imaginary part small),
//! `PointMass` (the `ε·‖G‖ = Θ(1)` signature of an eigenvalue at `E`), or
//! `Inconclusive`.
//!
//! [`kernel_dim_check`] tests the kernel-dimension equivalence
//! `dim ker(H + λP_B - E) = dim ker(I + λ G(E+i0))` from both sides, and
//! [`kernel_instances`] manufactures well-conditioned instances with
//! planted kernel dimension 0, 1, or 2 for exercising it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::rng::substream;
use crate::spectral::{eigendecompose, restrict, SpectralError, DEFAULT_RESIDUAL_TOL};

/// Cauchy tolerance on successive real parts in [`boundary_value`].
pub const DEFAULT_BOUNDARY_ABS_TOL: f64 = 1e-8;

/// Residual imaginary-part bound certifying a converged boundary value.
pub const DEFAULT_BOUNDARY_IM_TOL: f64 = 1e-6;

/// Floor for `ε·‖G(E+iε)‖_max` flagging a point mass at `E`.
pub const DIVERGENCE_FLOOR: f64 = 0.1;

/// Number of trailing schedule points that must sit above the floor.
pub const DIVERGENCE_WINDOW: usize = 5;

/// Default kernel-dimension tolerance (eigenvalue window and singular
/// value cutoff) for [`kernel_dim_check`].
pub const DEFAULT_KERNEL_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum GreenError {
    #[error("block is empty")]
    EmptyBlock,
    #[error("block index {0} out of range or repeated")]
    BadBlock(usize),
    #[error("(H - z) solve is singular at z = {0}")]
    SingularSolve(Complex64),
    #[error("complement block (H~ - z) is singular at z = {0}")]
    InnerSingular(Complex64),
    #[error("Schur complement not invertible at z = {0}")]
    OuterSingular(Complex64),
    #[error("eps schedule must be positive and strictly decreasing")]
    BadSchedule,
    #[error("boundary value at E = {energy} ended {status:?}, not converged")]
    NotConverged { energy: f64, status: BoundaryStatus },
    #[error("Hermitian eigensolver failed on the imaginary part")]
    HermitianEigen,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Which route produced a [`GreenMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenMethod {
    Direct,
    Schur,
    BoundaryLimit,
}

/// The complex `|B|×|B|` matrix `G_B(z)`, complex symmetric for real
/// symmetric `H`, with positive-semidefinite imaginary part when
/// `Im z > 0` (matrix Herglotz property).
#[derive(Debug, Clone)]
pub struct GreenMatrix {
    pub z: Complex64,
    pub matrix: DMatrix<Complex64>,
    pub method: GreenMethod,
}

impl GreenMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max_ij |G_ij|`.
    pub fn max_norm(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// `‖G - Gᵀ‖_max` (plain transpose, no conjugation).
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)]).norm());
            }
        }
        worst
    }

    /// The Hermitian imaginary part `(G - G*)/(2i)`.
    pub fn imag_part(&self) -> DMatrix<Complex64> {
        let half_i = Complex64::new(0.0, 2.0);
        let n = self.matrix.nrows();
        DMatrix::from_fn(n, n, |i, j| {
            (self.matrix[(i, j)] - self.matrix[(j, i)].conj()) / half_i
        })
    }

    /// Smallest eigenvalue of the (Hermitian) imaginary part; `≥ -1e-10`
    /// for `Im z > 0` is the Herglotz positivity check.
    pub fn imag_min_eigenvalue(&self) -> Result<f64, GreenError> {
        let im = self.imag_part();
        let eig = nalgebra::SymmetricEigen::try_new(im, f64::EPSILON, 100_000)
            .ok_or(GreenError::HermitianEigen)?;
        Ok(eig.eigenvalues.iter().fold(f64::INFINITY, |m, v| m.min(*v)))
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |w, c| w.max(c.norm()))
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

fn check_block(n: usize, block: &[usize]) -> Result<(), GreenError> {
    if block.is_empty() {
        return Err(GreenError::EmptyBlock);
    }
    let mut seen = vec![false; n];
    for &i in block {
        if i >= n || seen[i] {
            return Err(GreenError::BadBlock(i));
        }
        seen[i] = true;
    }
    Ok(())
}

/// `G_B(z)` by solving `(H - z)x = e_i` for each `i ∈ B` and restricting
/// the solutions to `B`.
pub fn green_direct(
    h: &DMatrix<f64>,
    block: &[usize],
    z: Complex64,
) -> Result<GreenMatrix, GreenError> {
    let n = h.nrows();
    check_block(n, block)?;
    let mut a = complexify(h);
    for i in 0..n {
        a[(i, i)] -= z;
    }
    let rhs = DMatrix::from_fn(n, block.len(), |r, c| {
        if r == block[c] {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let x = a.lu().solve(&rhs).ok_or(GreenError::SingularSolve(z))?;
    if !x.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        return Err(GreenError::SingularSolve(z));
    }
    let b = block.len();
    let matrix = DMatrix::from_fn(b, b, |r, c| x[(block[r], c)]);
    Ok(GreenMatrix {
        z,
        matrix,
        method: GreenMethod::Direct,
    })
}

/// `G_B(z)` via the Schur complement on the block/complement split: invert
/// `H_BB - z - H_BC (H_CC - z)^{-1} H_CB`.
pub fn green_schur(
    h: &DMatrix<f64>,
    block: &[usize],
    z: Complex64,
) -> Result<GreenMatrix, GreenError> {
    let n = h.nrows();
    check_block(n, block)?;
    let in_block: Vec<bool> = {
        let mut v = vec![false; n];
        for &i in block {
            v[i] = true;
        }
        v
    };
    let comp: Vec<usize> = (0..n).filter(|&i| !in_block[i]).collect();
    let b = block.len();
    let h_bb = restrict(h, block)?;
    let mut s = complexify(&h_bb);
    for i in 0..b {
        s[(i, i)] -= z;
    }
    if !comp.is_empty() {
        let mut a_cc = complexify(&restrict(h, &comp)?);
        for i in 0..comp.len() {
            a_cc[(i, i)] -= z;
        }
        let h_cb = DMatrix::from_fn(comp.len(), b, |r, c| {
            Complex64::new(h[(comp[r], block[c])], 0.0)
        });
        let y = a_cc.lu().solve(&h_cb).ok_or(GreenError::InnerSingular(z))?;
        if !y.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(GreenError::InnerSingular(z));
        }
        let h_bc = DMatrix::from_fn(b, comp.len(), |r, c| {
            Complex64::new(h[(block[r], comp[c])], 0.0)
        });
        s -= h_bc * y;
    }
    let matrix = s.try_inverse().ok_or(GreenError::OuterSingular(z))?;
    if !matrix.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        return Err(GreenError::OuterSingular(z));
    }
    Ok(GreenMatrix {
        z,
        matrix,
        method: GreenMethod::Schur,
    })
}

/// The default dyadic schedule `ε_k = 2^{-k}`, `k = 4..24`.
pub fn dyadic_schedule() -> Vec<f64> {
    (4..=24).map(|k| (2.0f64).powi(-k)).collect()
}

/// Tolerances and detection thresholds for [`boundary_value`].
#[derive(Debug, Clone, Copy)]
pub struct BoundaryOptions {
    /// Cauchy tolerance on successive real parts.
    pub abs_tol: f64,
    /// Bound on the residual imaginary part at the smallest `ε`.
    pub im_tol: f64,
    /// `ε·‖G‖_max` floor flagging a point mass.
    pub divergence_floor: f64,
    /// Trailing points that must all exceed the floor.
    pub divergence_window: usize,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        Self {
            abs_tol: DEFAULT_BOUNDARY_ABS_TOL,
            im_tol: DEFAULT_BOUNDARY_IM_TOL,
            divergence_floor: DIVERGENCE_FLOOR,
            divergence_window: DIVERGENCE_WINDOW,
        }
    }
}

/// Outcome of a boundary-value run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryStatus {
    /// Real parts Cauchy and imaginary part below `im_tol`: `G(E+i0)`
    /// exists at schedule resolution and equals `G0` (self-adjoint up to
    /// the residual imaginary part).
    Converged,
    /// `ε·‖G‖` stayed `Θ(1)` over the trailing window: eigenvalue at `E`
    /// with spectral weight on the block (the `1/(iε)` pole).
    PointMass,
    /// Neither criterion met within the schedule.
    Inconclusive,
}

/// Result of walking `G(E + iε)` down an `ε`-schedule.
#[derive(Debug, Clone)]
pub struct BoundaryValue {
    pub energy: f64,
    /// The schedule actually used (descending).
    pub epsilons: Vec<f64>,
    /// `G(E + iε_min)`, whatever the status (near a point mass it is
    /// dominated by the pole term).
    pub g0: DMatrix<Complex64>,
    pub status: BoundaryStatus,
    /// `max |Re G_k - Re G_{k-1}|` at the final step.
    pub final_re_diff: f64,
    /// `‖Im G(E+iε_min)‖_max`.
    pub im_norm: f64,
    /// `ε·‖G(E+iε)‖_max` per schedule point (the pole indicator).
    pub pole_indicator: Vec<f64>,
}

impl BoundaryValue {
    pub fn converged(&self) -> bool {
        self.status == BoundaryStatus::Converged
    }

    pub fn divergence_detected(&self) -> bool {
        self.status == BoundaryStatus::PointMass
    }

    /// The self-adjoint part of `G0`: `(Re G0 + Re G0ᵀ)/2`.  Meaningful
    /// when converged (the limit is self-adjoint; the dropped imaginary
    /// part is ≤ `im_norm`).
    pub fn real_symmetric_part(&self) -> DMatrix<f64> {
        let n = self.g0.nrows();
        DMatrix::from_fn(n, n, |i, j| (self.g0[(i, j)].re + self.g0[(j, i)].re) / 2.0)
    }
}

/// Walk `G(E + iε)` down `schedule` with default tolerances.
pub fn boundary_value(
    h: &DMatrix<f64>,
    block: &[usize],
    energy: f64,
    schedule: &[f64],
) -> Result<BoundaryValue, GreenError> {
    boundary_value_with(h, block, energy, schedule, BoundaryOptions::default())
}

/// Walk `G(E + iε)` down `schedule` and classify the limit.
///
/// The schedule must be positive and strictly decreasing.  Convergence is
/// declared when the real parts are Cauchy at `abs_tol` *and* the residual
/// imaginary part at the smallest `ε` is below `im_tol` (the limit, when
/// it exists, is self-adjoint; its imaginary part vanishes linearly in
/// `ε`, so a complex-norm Cauchy test at 1e-8 would be unattainable at
/// `ε_min = 2^{-24}`).  A point mass at `E` is flagged when
/// `ε·‖G(E+iε)‖_max` stays above the floor over the trailing window.
pub fn boundary_value_with(
    h: &DMatrix<f64>,
    block: &[usize],
    energy: f64,
    schedule: &[f64],
    opts: BoundaryOptions,
) -> Result<BoundaryValue, GreenError> {
    if schedule.is_empty()
        || schedule.iter().any(|&e| !(e > 0.0) || !e.is_finite())
        || schedule.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(GreenError::BadSchedule);
    }
    check_block(h.nrows(), block)?;
    let mut prev: Option<DMatrix<Complex64>> = None;
    let mut final_re_diff = f64::INFINITY;
    let mut pole_indicator = Vec::with_capacity(schedule.len());
    let mut last = DMatrix::zeros(block.len(), block.len());
    for &eps in schedule {
        let g = green_direct(h, block, Complex64::new(energy, eps))?;
        pole_indicator.push(eps * g.max_norm());
        if let Some(p) = &prev {
            let mut d: f64 = 0.0;
            for (a, b) in g.matrix.iter().zip(p.iter()) {
                d = d.max((a.re - b.re).abs());
            }
            final_re_diff = d;
        }
        prev = Some(g.matrix.clone());
        last = g.matrix;
    }
    let im_norm = {
        let n = last.nrows();
        let mut w: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                w = w.max(((last[(i, j)] - last[(j, i)].conj()) / Complex64::new(0.0, 2.0)).norm());
            }
        }
        w
    };
    let window = opts.divergence_window.min(pole_indicator.len());
    let diverged = window > 0
        && pole_indicator[pole_indicator.len() - window..]
            .iter()
            .all(|&x| x >= opts.divergence_floor);
    let status = if diverged {
        BoundaryStatus::PointMass
    } else if final_re_diff <= opts.abs_tol && im_norm <= opts.im_tol {
        BoundaryStatus::Converged
    } else {
        BoundaryStatus::Inconclusive
    };
    Ok(BoundaryValue {
        energy,
        epsilons: schedule.to_vec(),
        g0: last,
        status,
        final_re_diff,
        im_norm,
        pole_indicator,
    })
}

/// The two kernel dimensions of the equivalence under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelDims {
    /// `d1 = dim ker(H + λP_B - E)`: eigenvalues of the perturbed matrix
    /// within `tol` of `E`.
    pub perturbed_kernel: usize,
    /// `d2 = dim ker(I + λ G(E+i0))`: singular values below `tol`.
    pub green_kernel: usize,
}

/// Check the kernel-dimension equivalence at `(H, B, λ, E)`.
///
/// Requires the boundary value at `E` to converge (the finite-volume proxy
/// of `E ∈ Ŝ`); errors otherwise.  `d2` is computed from the self-adjoint
/// part of `G(E+i0)` (the limit is self-adjoint when it exists; the
/// residual imaginary part is below the boundary tolerance).
pub fn kernel_dim_check(
    h: &DMatrix<f64>,
    block: &[usize],
    lambda: f64,
    energy: f64,
    tol: f64,
) -> Result<KernelDims, GreenError> {
    let schedule = dyadic_schedule();
    let bv = boundary_value(h, block, energy, &schedule)?;
    if !bv.converged() {
        return Err(GreenError::NotConverged {
            energy,
            status: bv.status,
        });
    }
    let g0 = bv.real_symmetric_part();
    let b = block.len();
    let mut m = g0 * lambda;
    for i in 0..b {
        m[(i, i)] += 1.0;
    }
    let d2 = m.svd(false, false).singular_values.iter().filter(|&&s| s < tol).count();
    let mut perturbed = h.clone();
    for &i in block {
        perturbed[(i, i)] += lambda;
    }
    let eig = eigendecompose(&perturbed, DEFAULT_RESIDUAL_TOL)?;
    let d1 = eig.values.iter().filter(|&&v| (v - energy).abs() <= tol).count();
    Ok(KernelDims {
        perturbed_kernel: d1,
        green_kernel: d2,
    })
}

/// Dense symmetric matrix with standard normal entries, symmetrized as
/// `(A + Aᵀ)/2`; the workhorse for randomized cross-checks.
pub fn random_symmetric(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| {
        rand_distr::Distribution::<f64>::sample(&rand_distr::StandardNormal, rng)
    });
    (&a + a.transpose()) / 2.0
}

/// A manufactured kernel-equivalence instance with known kernel dimension.
#[derive(Debug, Clone)]
pub struct KernelInstance {
    pub h: DMatrix<f64>,
    pub block: Vec<usize>,
    pub lambda: f64,
    pub energy: f64,
    /// The planted `dim ker(H + λP_B - E)` (0, 1, or 2).
    pub expected_dim: usize,
}

/// Deterministically generate `count` well-conditioned kernel instances
/// cycling through planted dimensions 1, 0, 2, 1, 0, 2, …
///
/// Construction: random symmetric `H`, energy `E` at the midpoint of a
/// wide spectral gap (so the boundary value converges at the default
/// schedule).  For `d = 1`, `λ = -1/g` for a well-separated eigenvalue `g`
/// of `G(E)`; for `d = 0`, `λ` is kept at distance from every critical
/// value `-1/g_j`; for `d = 2`, `H` contains two decoupled copies of the
/// same matrix and `B` pairs the same site in both copies, making the
/// relevant eigenvalue of `G(E)` exactly degenerate.  Conditioning margins
/// are verified numerically and failing draws are discarded (the rejection
/// loop is deterministic in the seed).
pub fn kernel_instances(master_seed: u64, count: usize) -> Vec<KernelInstance> {
    (0..count)
        .map(|i| {
            let planted = [1usize, 0, 2][i % 3];
            let mut attempt = 0u64;
            loop {
                let mut rng = substream(master_seed, i as u64, attempt);
                attempt += 1;
                let candidate = match planted {
                    1 => try_simple_instance(&mut rng, false),
                    0 => try_simple_instance(&mut rng, true),
                    _ => try_double_instance(&mut rng),
                };
                if let Some(inst) = candidate {
                    debug_assert_eq!(inst.expected_dim, planted);
                    return inst;
                }
                assert!(
                    attempt < 200,
                    "kernel instance generation stalled (instance {i}, planted {planted})"
                );
            }
        })
        .collect()
}

/// Margin every non-kernel eigenvalue of `H + λP - E` must keep from 0.
const KERNEL_MARGIN: f64 = 1e-3;

/// Minimum half-width of the spectral gap around `E`.
const GAP_MARGIN: f64 = 0.4;

fn widest_gap_midpoint(values: &[f64]) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for w in values.windows(2) {
        let half = (w[1] - w[0]) / 2.0;
        if best.map_or(true, |(_, b)| half > b) {
            best = Some(((w[0] + w[1]) / 2.0, half));
        }
    }
    best
}

fn try_simple_instance(rng: &mut impl Rng, detuned: bool) -> Option<KernelInstance> {
    let n = 10;
    let h = random_symmetric(n, rng);
    let eig = eigendecompose(&h, DEFAULT_RESIDUAL_TOL).ok()?;
    let (energy, half_gap) = widest_gap_midpoint(&eig.values)?;
    if half_gap < GAP_MARGIN {
        return None;
    }
    let block = vec![0, 1, 2];
    // Exact real resolvent restricted to the block.
    let shifted = {
        let mut m = h.clone();
        for i in 0..n {
            m[(i, i)] -= energy;
        }
        m
    };
    let inv = shifted.try_inverse()?;
    let g = {
        let raw = restrict(&inv, &block).ok()?;
        (&raw + raw.transpose()) / 2.0
    };
    let geig = eigendecompose(&g, DEFAULT_RESIDUAL_TOL).ok()?;
    let lambda = if detuned {
        // Keep λ away from every critical value -1/g_j.
        let lam: f64 = rng.random_range(-8.0..8.0);
        if geig.values.iter().any(|&gj| (1.0 + lam * gj).abs() < 0.05) {
            return None;
        }
        lam
    } else {
        // Target the best-separated, well-sized eigenvalue of G(E).
        let mut best: Option<(usize, f64)> = None;
        for (j, &gj) in geig.values.iter().enumerate() {
            if gj.abs() < 0.02 {
                continue;
            }
            let sep = geig
                .values
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &gk)| (gk - gj).abs())
                .fold(f64::INFINITY, f64::min);
            if best.map_or(true, |(_, s)| sep > s) {
                best = Some((j, sep));
            }
        }
        let (j, sep) = best?;
        if sep < 0.02 {
            return None;
        }
        -1.0 / geig.values[j]
    };
    finish_instance(h, block, lambda, energy, if detuned { 0 } else { 1 })
}

fn try_double_instance(rng: &mut impl Rng) -> Option<KernelInstance> {
    let k = 5;
    let core = random_symmetric(k, rng);
    let eig = eigendecompose(&core, DEFAULT_RESIDUAL_TOL).ok()?;
    let (energy, half_gap) = widest_gap_midpoint(&eig.values)?;
    if half_gap < GAP_MARGIN {
        return None;
    }
    // Extra diagonal filler kept clear of E.
    let filler = {
        let mut f = random_symmetric(k, rng);
        let feig = eigendecompose(&f, DEFAULT_RESIDUAL_TOL).ok()?;
        let shift = if feig.values.iter().any(|&v| (v - energy).abs() < GAP_MARGIN) {
            energy + feig.values.last()? + 2.0 * GAP_MARGIN - feig.values.first()?
        } else {
            0.0
        };
        for i in 0..k {
            f[(i, i)] += shift;
        }
        f
    };
    let feig = eigendecompose(&filler, DEFAULT_RESIDUAL_TOL).ok()?;
    if feig.values.iter().any(|&v| (v - energy).abs() < GAP_MARGIN) {
        return None;
    }
    let n = 3 * k;
    let mut h = DMatrix::zeros(n, n);
    for i in 0..k {
        for j in 0..k {
            h[(i, j)] = core[(i, j)];
            h[(k + i, k + j)] = core[(i, j)];
            h[(2 * k + i, 2 * k + j)] = filler[(i, j)];
        }
    }
    // Same site in the two identical copies: G(E) on B is exactly scalar.
    let site = rng.random_range(0..k);
    let shifted = {
        let mut m = core.clone();
        for i in 0..k {
            m[(i, i)] -= energy;
        }
        m
    };
    let g = shifted.try_inverse()?[(site, site)];
    if g.abs() < 0.02 {
        return None;
    }
    let lambda = -1.0 / g;
    let block = vec![site, k + site];
    finish_instance(h, block, lambda, energy, 2)
}

/// Verify the planted dimension and conditioning margins numerically.
fn finish_instance(
    h: DMatrix<f64>,
    block: Vec<usize>,
    lambda: f64,
    energy: f64,
    expected: usize,
) -> Option<KernelInstance> {
    if !lambda.is_finite() || lambda.abs() > 60.0 {
        return None;
    }
    let mut perturbed = h.clone();
    for &i in &block {
        perturbed[(i, i)] += lambda;
    }
    let eig = eigendecompose(&perturbed, DEFAULT_RESIDUAL_TOL).ok()?;
    let near: Vec<f64> = eig
        .values
        .iter()
        .map(|&v| (v - energy).abs())
        .filter(|&d| d <= KERNEL_MARGIN)
        .collect();
    // Exactly `expected` eigenvalues essentially at E, nothing in the
    // ambiguous middle ground.
    if near.len() != expected || near.iter().any(|&d| d > DEFAULT_KERNEL_TOL / 10.0) {
        return None;
    }
    Some(KernelInstance {
        h,
        block,
        lambda,
        energy,
        expected_dim: expected,
    })
}
