//! Finite-volume random operators `H(ω) = H0 + Σ_n ω_n P_n`.
//!
//! `H0` is a deterministic symmetric hopping matrix built from a lattice
//! geometry ([`LatticeSpec`] / [`build_h0`]), the `P_n` are orthogonal
//! projections onto disjoint coordinate blocks that partition the sites
//! ([`ProjectionScheme`]), and the couplings `ω_n` are i.i.d. draws from a
//! disorder distribution ([`DisorderSpec`]).  A [`RandomModel`] bundles the
//! three and produces reproducible [`HamiltonianSample`]s keyed by
//! `(master_seed, realization_index)`.
//!
//! The module also implements the orthogonal change of variables behind
//! averaging over a group of blocks `B = ∪_{n∈S} blocks(n)`: an orthogonal
//! matrix `U` whose first row is `(1,…,1)/√b` maps `ω ↦ w = Uω`, splitting
//! the coupling sum into a uniform shift `(w_1/√b)·P_B` plus a background
//! operator independent of `w_1` ([`build_averaging_orthogonal`],
//! [`decompose_sample`]).

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Cauchy, Distribution, Normal, Uniform};
use thiserror::Error;

use crate::rng::substream;

/// Errors for model construction and sampling.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("lattice extent {0} is below the minimum of 2")]
    ExtentTooSmall(usize),
    #[error("box geometry needs at least one extent")]
    EmptyExtents,
    #[error("layered chain needs at least one layer hopping coefficient")]
    NoHoppings,
    #[error("hopping coefficient {0} is not finite")]
    NonFiniteHopping(f64),
    #[error("projection blocks must partition the sites: site {0} is repeated or out of range")]
    BadPartition(usize),
    #[error("projection block {0} is empty")]
    EmptyBlock(usize),
    #[error("coupling vector has length {got} but the scheme has {expected} blocks")]
    OmegaLength { got: usize, expected: usize },
    #[error("scheme covers {scheme} sites but the matrix has {matrix} rows")]
    SchemeSizeMismatch { scheme: usize, matrix: usize },
    #[error("averaging over an empty block selection")]
    EmptyAveraging,
    #[error("block id {0} is out of range or repeated in the selection")]
    BadBlockSelection(usize),
    #[error("matrix is not symmetric at entry ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("invalid disorder parameters: {0}")]
    BadDisorder(String),
}

/// Lattice geometry for the deterministic part `H0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    /// Path of `length` sites.
    Chain { length: usize },
    /// d-dimensional box with the given side extents, sites indexed
    /// row-major (last coordinate fastest).
    Box { extents: Vec<usize> },
    /// `hoppings.len()` independent copies of a chain of `length` sites,
    /// layer `m` scaled by `hoppings[m]`.  Sites are indexed layer-major:
    /// site `(m, n) ↦ m·length + n`, so `H0` is block diagonal with blocks
    /// `t_m · tridiag(1, 0, 1)`.
    LayeredChain { length: usize, hoppings: Vec<f64> },
}

/// Boundary condition for the hopping graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Open ends: no wrap-around bonds.
    Dirichlet,
    /// Each axis closes into a ring.  On an axis of extent 2 the wrap bond
    /// coincides with the forward bond, doubling that matrix entry.
    Periodic,
}

/// Geometry plus boundary condition.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub geometry: Geometry,
    pub boundary: Boundary,
}

impl LatticeSpec {
    pub fn chain(length: usize, boundary: Boundary) -> Self {
        Self { geometry: Geometry::Chain { length }, boundary }
    }

    pub fn boxed(extents: Vec<usize>, boundary: Boundary) -> Self {
        Self { geometry: Geometry::Box { extents }, boundary }
    }

    pub fn layered_chain(length: usize, hoppings: Vec<f64>, boundary: Boundary) -> Self {
        Self { geometry: Geometry::LayeredChain { length, hoppings }, boundary }
    }

    /// Number of lattice sites (the matrix dimension of `H0`).
    pub fn site_count(&self) -> usize {
        match &self.geometry {
            Geometry::Chain { length } => *length,
            Geometry::Box { extents } => extents.iter().product(),
            Geometry::LayeredChain { length, hoppings } => length * hoppings.len(),
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match &self.geometry {
            Geometry::Chain { length } => {
                if *length < 2 {
                    return Err(ModelError::ExtentTooSmall(*length));
                }
            }
            Geometry::Box { extents } => {
                if extents.is_empty() {
                    return Err(ModelError::EmptyExtents);
                }
                for &e in extents {
                    if e < 2 {
                        return Err(ModelError::ExtentTooSmall(e));
                    }
                }
            }
            Geometry::LayeredChain { length, hoppings } => {
                if *length < 2 {
                    return Err(ModelError::ExtentTooSmall(*length));
                }
                if hoppings.is_empty() {
                    return Err(ModelError::NoHoppings);
                }
                for &t in hoppings {
                    if !t.is_finite() {
                        return Err(ModelError::NonFiniteHopping(t));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Add one undirected bond of weight `t` (entries accumulate, so a doubled
/// bond on a periodic extent-2 axis ends up with weight `2t`).
fn add_bond(m: &mut DMatrix<f64>, i: usize, j: usize, t: f64) {
    m[(i, j)] += t;
    m[(j, i)] += t;
}

/// Hopping matrix of the lattice: adjacency of the nearest-neighbor graph,
/// with per-layer scaling for layered chains.
pub fn build_h0(lattice: &LatticeSpec) -> Result<DMatrix<f64>, ModelError> {
    lattice.validate()?;
    let n = lattice.site_count();
    let mut m = DMatrix::zeros(n, n);
    let periodic = lattice.boundary == Boundary::Periodic;
    match &lattice.geometry {
        Geometry::Chain { length } => {
            chain_bonds(&mut m, 0, *length, 1.0, periodic);
        }
        Geometry::Box { extents } => {
            // Row-major strides: last coordinate fastest.
            let d = extents.len();
            let mut strides = vec![1usize; d];
            for k in (0..d.saturating_sub(1)).rev() {
                strides[k] = strides[k + 1] * extents[k + 1];
            }
            for site in 0..n {
                for k in 0..d {
                    let coord = (site / strides[k]) % extents[k];
                    if coord + 1 < extents[k] {
                        add_bond(&mut m, site, site + strides[k], 1.0);
                    } else if periodic {
                        add_bond(&mut m, site, site - (extents[k] - 1) * strides[k], 1.0);
                    }
                }
            }
        }
        Geometry::LayeredChain { length, hoppings } => {
            for (layer, &t) in hoppings.iter().enumerate() {
                chain_bonds(&mut m, layer * length, *length, t, periodic);
            }
        }
    }
    Ok(m)
}

fn chain_bonds(m: &mut DMatrix<f64>, offset: usize, length: usize, t: f64, periodic: bool) {
    for i in 0..length - 1 {
        add_bond(m, offset + i, offset + i + 1, t);
    }
    if periodic {
        add_bond(m, offset + length - 1, offset, t);
    }
}

/// Partition of the site set `{0, …, N-1}` into non-empty coordinate
/// blocks; block `n` carries the rank-`|block n|` projection `P_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionScheme {
    blocks: Vec<Vec<usize>>,
    site_count: usize,
}

impl ProjectionScheme {
    /// Validate that `blocks` partitions `{0, …, N-1}` where `N` is the
    /// total number of listed sites.  Blocks are stored with sorted indices.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        let site_count: usize = blocks.iter().map(|b| b.len()).sum();
        let mut seen = vec![false; site_count];
        let mut sorted = Vec::with_capacity(blocks.len());
        for (k, mut b) in blocks.into_iter().enumerate() {
            if b.is_empty() {
                return Err(ModelError::EmptyBlock(k));
            }
            for &i in &b {
                if i >= site_count || seen[i] {
                    return Err(ModelError::BadPartition(i));
                }
                seen[i] = true;
            }
            b.sort_unstable();
            sorted.push(b);
        }
        Ok(Self { blocks: sorted, site_count })
    }

    /// One single-site block per site (the classical rank-one scheme).
    pub fn singletons(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
            site_count: n,
        }
    }

    /// Consecutive blocks `{0,…,k-1}, {k,…,2k-1}, …`; requires `k | n`.
    pub fn contiguous(n: usize, k: usize) -> Result<Self, ModelError> {
        if k == 0 {
            return Err(ModelError::EmptyBlock(0));
        }
        if n % k != 0 {
            return Err(ModelError::BadPartition(n));
        }
        Ok(Self {
            blocks: (0..n / k).map(|b| (b * k..(b + 1) * k).collect()).collect(),
            site_count: n,
        })
    }

    /// One block per column of a layer-major layered chain: block `n` is
    /// `{m·length + n : m = 0,…,layers-1}`, a rank-`layers` projection tying
    /// all layers of column `n` to a single coupling.
    pub fn layered_columns(length: usize, layers: usize) -> Self {
        Self {
            blocks: (0..length)
                .map(|n| (0..layers).map(|m| m * length + n).collect())
                .collect(),
            site_count: length * layers,
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn site_count(&self) -> usize {
        self.site_count
    }

    /// Sorted site indices of block `n`.
    pub fn block(&self, n: usize) -> &[usize] {
        &self.blocks[n]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[usize]> {
        self.blocks.iter().map(|b| b.as_slice())
    }

    /// Rank of `P_n` (the block size).
    pub fn rank(&self, n: usize) -> usize {
        self.blocks[n].len()
    }

    /// Sorted union of the sites of the selected blocks.  Errors on ids out
    /// of range or repeated in the selection.
    pub fn union_sites(&self, selected: &[usize]) -> Result<Vec<usize>, ModelError> {
        let mut chosen = vec![false; self.blocks.len()];
        let mut sites = Vec::new();
        for &id in selected {
            if id >= self.blocks.len() || chosen[id] {
                return Err(ModelError::BadBlockSelection(id));
            }
            chosen[id] = true;
            sites.extend_from_slice(&self.blocks[id]);
        }
        sites.sort_unstable();
        Ok(sites)
    }

    /// Dense projector onto the sites of the selected blocks.
    pub fn projector(&self, selected: &[usize]) -> Result<DMatrix<f64>, ModelError> {
        let sites = self.union_sites(selected)?;
        let mut p = DMatrix::zeros(self.site_count, self.site_count);
        for i in sites {
            p[(i, i)] = 1.0;
        }
        Ok(p)
    }
}

/// Single-site disorder distribution for the couplings `ω_n`.
#[derive(Debug, Clone, PartialEq)]
pub enum DisorderSpec {
    Gaussian { mean: f64, sd: f64 },
    Cauchy { location: f64, scale: f64 },
    Uniform { lo: f64, hi: f64 },
}

impl DisorderSpec {
    /// Whether the distribution has full support on the real line.  The
    /// multiplicity and statistics theory assumes full support; bounded
    /// families are kept for counterexample models.
    pub fn support_full_r(&self) -> bool {
        matches!(self, DisorderSpec::Gaussian { .. } | DisorderSpec::Cauchy { .. })
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: String| Err(ModelError::BadDisorder(msg));
        match self {
            DisorderSpec::Gaussian { mean, sd } => {
                if !mean.is_finite() || !sd.is_finite() || *sd <= 0.0 {
                    return bad(format!("gaussian(mean={mean}, sd={sd})"));
                }
            }
            DisorderSpec::Cauchy { location, scale } => {
                if !location.is_finite() || !scale.is_finite() || *scale <= 0.0 {
                    return bad(format!("cauchy(location={location}, scale={scale})"));
                }
            }
            DisorderSpec::Uniform { lo, hi } => {
                if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                    return bad(format!("uniform(lo={lo}, hi={hi})"));
                }
            }
        }
        Ok(())
    }

    fn draw(&self, rng: &mut impl Rng) -> f64 {
        match self {
            DisorderSpec::Gaussian { mean, sd } => {
                Normal::new(*mean, *sd).expect("validated").sample(rng)
            }
            DisorderSpec::Cauchy { location, scale } => {
                Cauchy::new(*location, *scale).expect("validated").sample(rng)
            }
            DisorderSpec::Uniform { lo, hi } => {
                Uniform::new(*lo, *hi).expect("validated").sample(rng)
            }
        }
    }
}

/// One coupling per block, each drawn from its own RNG substream keyed by
/// `(master_seed, realization, block)`.  The draw for block `b` therefore
/// does not depend on how many other blocks exist or in which order they
/// are sampled.
pub fn sample_disorder(
    spec: &DisorderSpec,
    scheme: &ProjectionScheme,
    master_seed: u64,
    realization: u64,
) -> Vec<f64> {
    (0..scheme.block_count())
        .map(|b| spec.draw(&mut substream(master_seed, realization, b as u64)))
        .collect()
}

/// `H0 + Σ_n ω_n P_n`: adds `ω_n` to the diagonal entries of block `n`.
pub fn assemble(
    h0: &DMatrix<f64>,
    scheme: &ProjectionScheme,
    omega: &[f64],
) -> Result<DMatrix<f64>, ModelError> {
    if scheme.site_count() != h0.nrows() {
        return Err(ModelError::SchemeSizeMismatch {
            scheme: scheme.site_count(),
            matrix: h0.nrows(),
        });
    }
    if omega.len() != scheme.block_count() {
        return Err(ModelError::OmegaLength {
            got: omega.len(),
            expected: scheme.block_count(),
        });
    }
    let mut m = h0.clone();
    for (w, block) in omega.iter().zip(scheme.blocks()) {
        for &i in block {
            m[(i, i)] += w;
        }
    }
    Ok(m)
}

/// A sampled operator together with its provenance.
#[derive(Debug, Clone)]
pub struct HamiltonianSample {
    /// Dense symmetric matrix `H0 + Σ_n ω_n P_n`.
    pub matrix: DMatrix<f64>,
    /// The couplings, one per block of the scheme.
    pub omega: Vec<f64>,
    pub master_seed: u64,
    pub realization_index: u64,
}

/// Background operator + disorder + projection scheme; the full model
/// specification from which samples are drawn.
#[derive(Debug, Clone)]
pub struct RandomModel {
    h0: DMatrix<f64>,
    scheme: ProjectionScheme,
    disorder: DisorderSpec,
}

impl RandomModel {
    /// Requires `h0` symmetric (exactly), square, matching the scheme's
    /// site count, and a valid disorder spec.
    pub fn new(
        h0: DMatrix<f64>,
        scheme: ProjectionScheme,
        disorder: DisorderSpec,
    ) -> Result<Self, ModelError> {
        if h0.nrows() != h0.ncols() || h0.nrows() != scheme.site_count() {
            return Err(ModelError::SchemeSizeMismatch {
                scheme: scheme.site_count(),
                matrix: h0.nrows(),
            });
        }
        for i in 0..h0.nrows() {
            for j in i + 1..h0.ncols() {
                if h0[(i, j)] != h0[(j, i)] {
                    return Err(ModelError::NotSymmetric(i, j));
                }
            }
        }
        disorder.validate()?;
        Ok(Self { h0, scheme, disorder })
    }

    pub fn from_lattice(
        lattice: &LatticeSpec,
        scheme: ProjectionScheme,
        disorder: DisorderSpec,
    ) -> Result<Self, ModelError> {
        Self::new(build_h0(lattice)?, scheme, disorder)
    }

    pub fn h0(&self) -> &DMatrix<f64> {
        &self.h0
    }

    pub fn scheme(&self) -> &ProjectionScheme {
        &self.scheme
    }

    pub fn disorder(&self) -> &DisorderSpec {
        &self.disorder
    }

    pub fn site_count(&self) -> usize {
        self.h0.nrows()
    }

    /// Draw the couplings for `(master_seed, realization)` and assemble the
    /// sampled operator.
    pub fn sample(&self, master_seed: u64, realization: u64) -> HamiltonianSample {
        let omega = sample_disorder(&self.disorder, &self.scheme, master_seed, realization);
        let matrix = assemble(&self.h0, &self.scheme, &omega).expect("model invariants");
        HamiltonianSample {
            matrix,
            omega,
            master_seed,
            realization_index: realization,
        }
    }
}

/// Orthogonal matrix on a group of `b` blocks whose first row is the
/// normalized all-ones vector; `w = Uω` isolates the average coupling in
/// `w_1` while `w_2, …, w_b` span the orthogonal complement.
#[derive(Debug, Clone)]
pub struct AveragingOrthogonal {
    u: DMatrix<f64>,
}

impl AveragingOrthogonal {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// `w = Uω`.
    pub fn apply(&self, omega: &[f64]) -> Vec<f64> {
        assert_eq!(omega.len(), self.u.nrows(), "coupling length mismatch");
        (0..self.u.nrows())
            .map(|r| (0..self.u.ncols()).map(|c| self.u[(r, c)] * omega[c]).sum())
            .collect()
    }

    /// Largest entry of `UUᵀ - I` in absolute value.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = &self.u * self.u.transpose();
        let n = g.nrows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }
}

/// Build the averaging orthogonal for `b` coordinates by Gram–Schmidt on
/// `(1,…,1)/√b, e_1, e_2, …`, keeping the first `b` independent vectors.
/// Each candidate is orthogonalized twice against the accepted rows for
/// numerical orthogonality.
pub fn build_averaging_orthogonal(b: usize) -> Result<AveragingOrthogonal, ModelError> {
    if b == 0 {
        return Err(ModelError::EmptyAveraging);
    }
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(b);
    let inv = 1.0 / (b as f64).sqrt();
    rows.push(vec![inv; b]);
    let mut candidate = 0usize;
    while rows.len() < b {
        let mut v = vec![0.0; b];
        v[candidate] = 1.0;
        candidate += 1;
        for _ in 0..2 {
            for row in &rows {
                let dot: f64 = row.iter().zip(&v).map(|(r, x)| r * x).sum();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= dot * r;
                }
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            rows.push(v);
        }
    }
    let u = DMatrix::from_fn(b, b, |i, j| rows[i][j]);
    Ok(AveragingOrthogonal { u })
}

/// A sample split as `background + uniform_shift · P_B` for a selected
/// group of blocks `B`.
#[derive(Debug, Clone)]
pub struct SampleDecomposition {
    /// Everything except the average coupling on the selected blocks:
    /// `H0 + Σ_{n∉B} ω_n P_n + Σ_{j≥2} w_j (Σ_i u_{ji} P_{n_i})`.
    pub background: DMatrix<f64>,
    /// The coefficient `w_1/√b` multiplying `P_B` (the average of the
    /// selected couplings).
    pub uniform_shift: f64,
    /// Sorted sites of `P_B`.
    pub projected_sites: Vec<usize>,
    /// The transformed couplings `w = Uω_B`.
    pub transformed: Vec<f64>,
}

impl SampleDecomposition {
    /// Dense `P_B` of the ambient dimension `n`.
    pub fn projector(&self, n: usize) -> DMatrix<f64> {
        let mut p = DMatrix::zeros(n, n);
        for &i in &self.projected_sites {
            p[(i, i)] = 1.0;
        }
        p
    }

    /// `background + uniform_shift · P_B`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut m = self.background.clone();
        for &i in &self.projected_sites {
            m[(i, i)] += self.uniform_shift;
        }
        m
    }
}

/// Split `sample` over the selected blocks via the averaging orthogonal:
/// with `ω_B` the selected couplings and `w = Uω_B`, the sample equals
/// `background + (w_1/√b)·P_B` up to the orthogonality defect of `U`
/// (entrywise ≤ 1e-12 for all practical `b`).
pub fn decompose_sample(
    sample: &HamiltonianSample,
    scheme: &ProjectionScheme,
    selected: &[usize],
) -> Result<SampleDecomposition, ModelError> {
    if selected.is_empty() {
        return Err(ModelError::EmptyAveraging);
    }
    if sample.omega.len() != scheme.block_count() {
        return Err(ModelError::OmegaLength {
            got: sample.omega.len(),
            expected: scheme.block_count(),
        });
    }
    if scheme.site_count() != sample.matrix.nrows() {
        return Err(ModelError::SchemeSizeMismatch {
            scheme: scheme.site_count(),
            matrix: sample.matrix.nrows(),
        });
    }
    let sites = scheme.union_sites(selected)?;
    let b = selected.len();
    let avg = build_averaging_orthogonal(b)?;
    let omega_b: Vec<f64> = selected.iter().map(|&id| sample.omega[id]).collect();
    let w = avg.apply(&omega_b);
    let shift = w[0] / (b as f64).sqrt();
    // Background couplings on the selected blocks come from w_2, …, w_b
    // through the transpose of U (column i of U minus its first-row entry):
    // Σ_{j≥2} w_j u_{ji} = ω_i - w_1 u_{1i} in exact arithmetic.
    let mut background = sample.matrix.clone();
    for (i, &id) in selected.iter().enumerate() {
        let mut residual_coupling = 0.0;
        for j in 1..b {
            residual_coupling += w[j] * avg.matrix()[(j, i)];
        }
        let delta = residual_coupling - omega_b[i];
        for &site in scheme.block(id) {
            background[(site, site)] += delta;
        }
    }
    Ok(SampleDecomposition {
        background,
        uniform_shift: shift,
        projected_sites: sites,
        transformed: w,
    })
}

/// Ready-made models used across the examples and experiments.
pub mod models {
    use super::*;

    /// Five stacked chains with hoppings `(1, 1, 2, 2, 2)`, one rank-5
    /// projection per column (all layers of a column share one coupling),
    /// couplings uniform on `[0, 1]`.
    ///
    /// The two `t = 1` layers contribute spectrum inside `[-2, 3]` and the
    /// three `t = 2` layers inside `[-4, 5]`; on `(3, 5)` every eigenvalue
    /// comes from the triple of identical `t = 2` layers and therefore has
    /// multiplicity exactly 3, while on `(-2, 3)` both groups overlap and
    /// the multiplicity is at least 2.
    pub fn remark_stacked_5(length: usize) -> RandomModel {
        let lattice = LatticeSpec::layered_chain(
            length,
            vec![1.0, 1.0, 2.0, 2.0, 2.0],
            Boundary::Dirichlet,
        );
        RandomModel::from_lattice(
            &lattice,
            ProjectionScheme::layered_columns(length, 5),
            DisorderSpec::Uniform { lo: 0.0, hi: 1.0 },
        )
        .expect("static model")
    }

    /// `layers` identical copies of a chain with hopping `t`, columns tied
    /// by rank-`layers` projections.  Every sampled operator is a direct
    /// sum of `layers` copies of the same chain, so all eigenvalues have
    /// multiplicity `layers` and interval counts are divisible by it.
    pub fn stacked_chain(
        length: usize,
        layers: usize,
        t: f64,
        disorder: DisorderSpec,
    ) -> Result<RandomModel, ModelError> {
        let lattice = LatticeSpec::layered_chain(length, vec![t; layers], Boundary::Dirichlet);
        RandomModel::from_lattice(
            &lattice,
            ProjectionScheme::layered_columns(length, layers),
            disorder,
        )
    }

    /// Free background with alternating on-site energies `1, 0, 1, 0, …`
    /// and rank-2 blocks `{2n, 2n+1}`: the block-restricted spectrum is
    /// `{ω_n, 1 + ω_n}`, so no interval shorter than 1 can catch two
    /// eigenvalues of one block.  The generalized Minami bound at `K = 1`
    /// holds with exponents `a = 2`, `b = 1` for trivial reasons.
    pub fn trivial_minami(pairs: usize, disorder: DisorderSpec) -> Result<RandomModel, ModelError> {
        let n = 2 * pairs;
        let h0 = DMatrix::from_fn(n, n, |i, j| if i == j && i % 2 == 0 { 1.0 } else { 0.0 });
        RandomModel::new(h0, ProjectionScheme::contiguous(n, 2)?, disorder)
    }

    /// Standard Anderson chain: nearest-neighbor hopping with one rank-1
    /// projection (single-site coupling) per site.
    pub fn anderson_chain(length: usize, disorder: DisorderSpec) -> Result<RandomModel, ModelError> {
        RandomModel::from_lattice(
            &LatticeSpec::chain(length, Boundary::Dirichlet),
            ProjectionScheme::singletons(length),
            disorder,
        )
    }
}
