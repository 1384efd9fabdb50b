//! Dense spectral computations: validated eigendecomposition, restriction
//! to coordinate blocks, half-open interval counts `η_{B,J}`, clustering of
//! eigenvalues into multiplicity reports, and cyclic-subspace (Krylov
//! reachability) dimensions.
//!
//! All routines treat numerical failure as a reported error, never a silent
//! fallback: the eigensolver's residuals and the eigenvector orthonormality
//! are checked against explicit tolerances on every call.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// Default relative residual tolerance for [`eigendecompose`].
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-9;

/// Maximum allowed `‖VᵀV - I‖_max` for computed eigenvector matrices.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

/// Default relative gap `δ = 1e-8 · ‖H‖₂` for eigenvalue clustering.
pub const DEFAULT_CLUSTER_DELTA_REL: f64 = 1e-8;

/// Default relative cutoff for numerical rank in [`krylov_reachable_dim`].
pub const DEFAULT_KRYLOV_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("matrix is not symmetric at entry ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix has a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("symmetric eigensolver did not converge")]
    ConvergenceFailed,
    #[error("eigenpair {index} residual {residual:.3e} exceeds tol {tol:.3e}")]
    ResidualTooLarge { index: usize, residual: f64, tol: f64 },
    #[error("eigenvector orthonormality defect {0:.3e} exceeds {ORTHONORMALITY_TOL:.1e}")]
    OrthonormalityDefect(f64),
    #[error("index {0} out of range for restriction")]
    IndexOutOfRange(usize),
    #[error("index {0} repeated in restriction")]
    DuplicateIndex(usize),
    #[error("invalid interval [{lo}, {hi})")]
    BadInterval { lo: f64, hi: f64 },
}

/// Sorted eigenvalues with matching eigenvectors, both validated against
/// the residual and orthonormality tolerances at construction.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector of `values[i]`.
    pub vectors: DMatrix<f64>,
    /// The relative residual tolerance the decomposition was checked
    /// against: `‖Hv - λv‖₂ ≤ residual_tol · (1 + ‖H‖₂)` per pair.
    pub residual_tol: f64,
}

impl EigenDecomposition {
    /// `‖H‖₂ = max |λ|` (0 for the empty matrix).
    pub fn spectral_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn check_symmetric(h: &DMatrix<f64>) -> Result<(), SpectralError> {
    let n = h.nrows();
    for i in 0..n {
        for j in i..n {
            if !h[(i, j)].is_finite() {
                return Err(SpectralError::NonFinite(i, j));
            }
            // Tolerate float-noise asymmetry (e.g. from inverses of
            // symmetric matrices); the solver reads one triangle anyway.
            let scale = 1.0 + h[(i, j)].abs().max(h[(j, i)].abs());
            if (h[(i, j)] - h[(j, i)]).abs() > 1e-12 * scale {
                return Err(SpectralError::NotSymmetric(i, j));
            }
        }
    }
    Ok(())
}

/// Full eigendecomposition of a symmetric matrix, sorted ascending, with
/// per-pair residuals and eigenvector orthonormality verified.
pub fn eigendecompose(h: &DMatrix<f64>, residual_tol: f64) -> Result<EigenDecomposition, SpectralError> {
    check_symmetric(h)?;
    let n = h.nrows();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
            residual_tol,
        });
    }
    let eig = nalgebra::SymmetricEigen::try_new(h.clone(), f64::EPSILON, 100_000)
        .ok_or(SpectralError::ConvergenceFailed)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    let norm = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let bound = residual_tol * (1.0 + norm);
    let hv = h * &vectors;
    for i in 0..n {
        let residual = (hv.column(i) - values[i] * vectors.column(i)).norm();
        if residual > bound {
            return Err(SpectralError::ResidualTooLarge {
                index: i,
                residual,
                tol: bound,
            });
        }
    }
    let gram = vectors.transpose() * &vectors;
    let mut defect: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((gram[(i, j)] - target).abs());
        }
    }
    if defect > ORTHONORMALITY_TOL {
        return Err(SpectralError::OrthonormalityDefect(defect));
    }
    Ok(EigenDecomposition {
        values,
        vectors,
        residual_tol,
    })
}

/// Principal submatrix `H_B` on the given (distinct, in-range) indices, in
/// the order listed.
pub fn restrict(h: &DMatrix<f64>, indices: &[usize]) -> Result<DMatrix<f64>, SpectralError> {
    let n = h.nrows();
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n {
            return Err(SpectralError::IndexOutOfRange(i));
        }
        if seen[i] {
            return Err(SpectralError::DuplicateIndex(i));
        }
        seen[i] = true;
    }
    Ok(DMatrix::from_fn(indices.len(), indices.len(), |r, c| {
        h[(indices[r], indices[c])]
    }))
}

/// Half-open energy window `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, SpectralError> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(SpectralError::BadInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// `[e - half_width, e + half_width)`.
    pub fn centered(e: f64, half_width: f64) -> Result<Self, SpectralError> {
        if half_width < 0.0 {
            return Err(SpectralError::BadInterval {
                lo: e - half_width,
                hi: e + half_width,
            });
        }
        Self::new(e - half_width, e + half_width)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }
}

/// Number of entries of a sorted slice inside the half-open interval.
pub fn count_in_interval(sorted_evals: &[f64], j: Interval) -> usize {
    debug_assert!(
        sorted_evals.windows(2).all(|w| w[0] <= w[1]),
        "eigenvalues must be sorted"
    );
    let lo = sorted_evals.partition_point(|&x| x < j.lo());
    let hi = sorted_evals.partition_point(|&x| x < j.hi());
    hi - lo
}

/// The random variable `η_{B,J}`: eigenvalue count of a block restriction
/// in a window, with the block rank bounding it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingStat {
    pub eta: usize,
    pub block_rank: usize,
    pub interval: Interval,
}

impl CountingStat {
    /// From the sorted spectrum of `H_B`; the rank is the matrix dimension.
    pub fn from_restriction(sorted_evals: &[f64], interval: Interval) -> Self {
        Self {
            eta: count_in_interval(sorted_evals, interval),
            block_rank: sorted_evals.len(),
            interval,
        }
    }
}

/// A group of eigenvalues lying within `δ` of their neighbors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueCluster {
    /// Mean of the clustered eigenvalues.
    pub value: f64,
    /// Number of eigenvalues in the cluster (its numerical multiplicity).
    pub count: usize,
    /// Largest minus smallest member.
    pub spread: f64,
}

/// Clusters of near-degenerate eigenvalues at gap threshold `δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityReport {
    pub clusters: Vec<EigenvalueCluster>,
    pub gap_threshold: f64,
}

impl MultiplicityReport {
    /// Total eigenvalues across clusters.
    pub fn total(&self) -> usize {
        self.clusters.iter().map(|c| c.count).sum()
    }

    /// Smallest cluster multiplicity among clusters whose value falls in
    /// the window (`None` if no cluster does).
    pub fn min_count_in(&self, j: Interval) -> Option<usize> {
        self.clusters
            .iter()
            .filter(|c| j.contains(c.value))
            .map(|c| c.count)
            .min()
    }

    /// Multiplicities of clusters whose value falls in the window.
    pub fn counts_in(&self, j: Interval) -> Vec<usize> {
        self.clusters
            .iter()
            .filter(|c| j.contains(c.value))
            .map(|c| c.count)
            .collect()
    }
}

/// Greedy single-linkage clustering of sorted eigenvalues: a new cluster
/// starts whenever the gap to the previous eigenvalue exceeds `δ`.
///
/// Panics if `δ ≤ 0` or the input is unsorted (caller bug).
pub fn cluster_multiplicities(sorted_evals: &[f64], delta: f64) -> MultiplicityReport {
    assert!(delta > 0.0, "cluster gap threshold must be positive");
    assert!(
        sorted_evals.windows(2).all(|w| w[0] <= w[1]),
        "eigenvalues must be sorted"
    );
    let mut clusters = Vec::new();
    let mut start = 0usize;
    for i in 1..=sorted_evals.len() {
        let gap_break = i == sorted_evals.len() || sorted_evals[i] - sorted_evals[i - 1] > delta;
        if gap_break && i > start {
            let members = &sorted_evals[start..i];
            let value = members.iter().sum::<f64>() / members.len() as f64;
            clusters.push(EigenvalueCluster {
                value,
                count: members.len(),
                spread: members[members.len() - 1] - members[0],
            });
            start = i;
        }
    }
    MultiplicityReport {
        clusters,
        gap_threshold: delta,
    }
}

/// Dimension of the reachable subspace `span{ H^k e_i : k ≥ 0, i ∈ block }`
/// computed by growing the Krylov basis one power at a time and tracking
/// the numerical rank (singular values above `tol · σ_max`); stops when a
/// new power adds no rank.
pub fn krylov_reachable_dim(
    h: &DMatrix<f64>,
    block: &[usize],
    tol: f64,
) -> Result<usize, SpectralError> {
    check_symmetric(h)?;
    let n = h.nrows();
    if block.is_empty() {
        return Ok(0);
    }
    let mut seen = vec![false; n];
    for &i in block {
        if i >= n {
            return Err(SpectralError::IndexOutOfRange(i));
        }
        if seen[i] {
            return Err(SpectralError::DuplicateIndex(i));
        }
        seen[i] = true;
    }
    let mut basis: Vec<DVector<f64>> = block
        .iter()
        .map(|&i| {
            let mut v = DVector::zeros(n);
            v[i] = 1.0;
            v
        })
        .collect();
    let mut frontier = basis.clone();
    let mut rank = numerical_rank(&basis, tol);
    for _ in 0..n {
        if rank == n {
            break;
        }
        let mut next = Vec::with_capacity(frontier.len());
        for v in &frontier {
            let mut w = h * v;
            let norm = w.norm();
            if norm > 0.0 {
                w /= norm;
            }
            next.push(w);
        }
        basis.extend(next.iter().cloned());
        let new_rank = numerical_rank(&basis, tol);
        if new_rank == rank {
            break;
        }
        rank = new_rank;
        frontier = next;
    }
    Ok(rank)
}

fn numerical_rank(cols: &[DVector<f64>], tol: f64) -> usize {
    let n = cols[0].len();
    let m = DMatrix::from_fn(n, cols.len(), |r, c| cols[c][r]);
    let sv = m.singular_values();
    let smax = sv.iter().fold(0.0f64, |m, s| m.max(*s));
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * smax).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{build_h0, Boundary, LatticeSpec};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn eigendecompose_diagonal_matrix() {
        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, -1.0, 2.0]));
        let e = eigendecompose(&h, DEFAULT_RESIDUAL_TOL).unwrap();
        assert_eq!(e.values, vec![-1.0, 2.0, 3.0]);
        assert_eq!(e.spectral_norm(), 3.0);
    }

    #[test]
    fn free_chain_spectrum_matches_closed_form() {
        // Eigenvalues of the L-site path are 2 cos(kπ/(L+1)), k = 1..L.
        let l = 11;
        let h = build_h0(&LatticeSpec::chain(l, Boundary::Dirichlet)).unwrap();
        let e = eigendecompose(&h, DEFAULT_RESIDUAL_TOL).unwrap();
        let mut expect: Vec<f64> = (1..=l)
            .map(|k| 2.0 * (k as f64 * PI / (l as f64 + 1.0)).cos())
            .collect();
        expect.sort_by(f64::total_cmp);
        for (got, want) in e.values.iter().zip(&expect) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigendecompose_rejects_asymmetric_input() {
        let mut h = DMatrix::zeros(2, 2);
        h[(0, 1)] = 1.0;
        assert!(matches!(
            eigendecompose(&h, DEFAULT_RESIDUAL_TOL),
            Err(SpectralError::NotSymmetric(0, 1))
        ));
    }

    #[test]
    fn restrict_picks_principal_submatrix() {
        let h = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 5.0, 3.0, 5.0, 6.0]);
        let r = restrict(&h, &[0, 2]).unwrap();
        assert_eq!(r, DMatrix::from_row_slice(2, 2, &[1.0, 3.0, 3.0, 6.0]));
        assert!(matches!(restrict(&h, &[0, 3]), Err(SpectralError::IndexOutOfRange(3))));
        assert!(matches!(restrict(&h, &[1, 1]), Err(SpectralError::DuplicateIndex(1))));
    }

    #[test]
    fn interval_is_half_open() {
        let j = Interval::new(0.0, 1.0).unwrap();
        assert!(j.contains(0.0));
        assert!(!j.contains(1.0));
        let evals = vec![-0.5, 0.0, 0.5, 1.0, 1.5];
        assert_eq!(count_in_interval(&evals, j), 2);
        // Degenerate [a, a) is empty.
        let empty = Interval::new(0.5, 0.5).unwrap();
        assert_eq!(count_in_interval(&evals, empty), 0);
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn centered_interval() {
        let j = Interval::centered(2.0, 0.5).unwrap();
        assert_eq!(j.lo(), 1.5);
        assert_eq!(j.hi(), 2.5);
        assert_abs_diff_eq!(j.width(), 1.0);
        assert!(Interval::centered(0.0, -1.0).is_err());
    }

    #[test]
    fn counting_stat_respects_rank_bound() {
        let evals = vec![0.1, 0.2, 0.9];
        let s = CountingStat::from_restriction(&evals, Interval::new(0.0, 1.0).unwrap());
        assert_eq!(s.eta, 3);
        assert_eq!(s.block_rank, 3);
        assert!(s.eta <= s.block_rank);
    }

    #[test]
    fn clustering_groups_near_degenerate_values() {
        let evals = vec![1.0, 1.0 + 1e-12, 2.0];
        let report = cluster_multiplicities(&evals, 1e-9);
        assert_eq!(report.clusters.len(), 2);
        assert_eq!(report.clusters[0].count, 2);
        assert_abs_diff_eq!(report.clusters[0].value, 1.0, epsilon = 1e-9);
        assert!(report.clusters[0].spread <= 2e-12);
        assert_eq!(report.clusters[1].count, 1);
        assert_eq!(report.total(), 3);
    }

    #[test]
    fn clustering_is_single_linkage_on_chains() {
        // Chain of points each within δ of the next merges into one cluster
        // even though the ends are farther apart than δ.
        let evals = vec![0.0, 0.9e-8, 1.8e-8, 2.7e-8];
        let report = cluster_multiplicities(&evals, 1e-8);
        assert_eq!(report.clusters.len(), 1);
        assert_eq!(report.clusters[0].count, 4);
        assert_abs_diff_eq!(report.clusters[0].spread, 2.7e-8, epsilon = 1e-20);
    }

    #[test]
    fn cluster_counts_in_window() {
        let evals = vec![0.0, 1.0, 1.0, 2.0, 2.0, 2.0];
        let report = cluster_multiplicities(&evals, 1e-6);
        let j = Interval::new(0.5, 2.5).unwrap();
        assert_eq!(report.min_count_in(j), Some(2));
        assert_eq!(report.counts_in(j), vec![2, 3]);
        assert_eq!(report.min_count_in(Interval::new(5.0, 6.0).unwrap()), None);
    }

    #[test]
    fn krylov_corner_site_is_cyclic_for_chain() {
        let h = build_h0(&LatticeSpec::chain(5, Boundary::Dirichlet)).unwrap();
        let d = krylov_reachable_dim(&h, &[0], DEFAULT_KRYLOV_TOL).unwrap();
        assert_eq!(d, 5);
    }

    #[test]
    fn krylov_center_site_sees_only_symmetric_subspace() {
        // The middle site of an odd path is reflection-symmetric, so its
        // Krylov space is the symmetric sector: dimension (L+1)/2.
        let h = build_h0(&LatticeSpec::chain(5, Boundary::Dirichlet)).unwrap();
        let d = krylov_reachable_dim(&h, &[2], DEFAULT_KRYLOV_TOL).unwrap();
        assert_eq!(d, 3);
    }

    #[test]
    fn krylov_single_layer_site_cannot_reach_other_layers() {
        // Two decoupled identical layers: a site in layer 0 reaches only
        // layer 0.
        let lattice = LatticeSpec::layered_chain(4, vec![1.0, 1.0], Boundary::Dirichlet);
        let h = build_h0(&lattice).unwrap();
        let d = krylov_reachable_dim(&h, &[0], DEFAULT_KRYLOV_TOL).unwrap();
        assert_eq!(d, 4);
        // The full column block reaches both layers.
        let d2 = krylov_reachable_dim(&h, &[0, 4], DEFAULT_KRYLOV_TOL).unwrap();
        assert_eq!(d2, 8);
    }

    #[test]
    fn krylov_empty_block_is_zero() {
        let h = build_h0(&LatticeSpec::chain(3, Boundary::Dirichlet)).unwrap();
        assert_eq!(krylov_reachable_dim(&h, &[], DEFAULT_KRYLOV_TOL).unwrap(), 0);
    }
}
