//! Polynomial machinery for multiplicity certificates.
//!
//! The pipeline mirrors the algebraic multiplicity argument: from the
//! characteristic polynomial `F(x) = det(M - xI)` of a Green matrix,
//! compute `G = gcd(F, F')` by a tolerance-controlled Euclidean algorithm,
//! the squarefree part `F~ = F / G`, and the remainders `F mod F~^K`; the
//! remainder vanishing certifies that every root of `F` has multiplicity
//! at least `K` ([`remainder_test`]).  The Sylvester resultant of `(F, F')`
//! gives the discriminant, whose non-vanishing certifies simple roots
//! ([`discriminant`]).  A companion-matrix root finder with cluster
//! detection ([`root_multiplicities`]) serves as an independent
//! cross-oracle, and [`planted`] manufactures corpora of polynomials with
//! known root patterns for exercising all of the above.
//!
//! Everything is done in complex floating point with monic normalization
//! at every Euclidean step; ill-conditioned divisions are reported, never
//! silently absorbed.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

/// Dimension cap for [`char_poly`]: coefficient conditioning of
/// characteristic polynomials degrades exponentially with dimension;
/// beyond this, work in root space ([`root_multiplicities`] on eigenvalues
/// directly).
pub const CHAR_POLY_DIM_CAP: usize = 12;

/// Default Euclidean zero-declaration tolerance (max-norm of a remainder
/// of monic-normalized operands).
pub const DEFAULT_GCD_TOL: f64 = 1e-7;

/// Relative division-residual bound above which [`squarefree_part`]
/// reports the input as ill-conditioned.
pub const SQUAREFREE_RESIDUAL_TOL: f64 = 1e-6;

/// Default clustering radius for companion-matrix roots.  Multiplicity-m
/// roots split by roughly `noise^(1/m)` (about 1e-3 for m = 4 at double
/// precision), so this sits two orders above the splitting and well below
/// the 0.3 separation of the planted corpora.
pub const DEFAULT_ROOT_CLUSTER_DELTA: f64 = 0.05;

/// Threshold on `|discriminant|` below which roots are treated as
/// repeated.  Pinned against the planted corpus: float noise on exactly
/// singular Sylvester determinants stays orders below it, while the
/// smallest simple-root discriminant (separation ≥ 0.3, degree ≤ 4 for
/// all-simple patterns) stays orders above.
pub const DEFAULT_DISCRIMINANT_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("matrix dimension {dim} exceeds the characteristic-polynomial cap {CHAR_POLY_DIM_CAP}")]
    DimensionCap { dim: usize },
    #[error("degree {got} below the required {need}")]
    DegreeTooSmall { got: usize, need: usize },
    #[error("division residual {residual:.3e} flags an ill-conditioned gcd/squarefree step")]
    IllConditioned { residual: f64 },
    #[error("companion-matrix eigenvalue computation failed")]
    RootSolverFailed,
}

/// Complex polynomial, coefficients in ascending degree order, trailing
/// zeros trimmed.  The zero polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Trim exactly-zero trailing coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self::with_trim(coeffs, 0.0)
    }

    /// Trim trailing coefficients of modulus ≤ `tau`.
    pub fn with_trim(mut coeffs: Vec<Complex64>, tau: f64) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() <= tau) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// From real coefficients, ascending.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic product `∏ (x - r_i)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p = p.mul(&Self::new(vec![-r, Complex64::new(1.0, 0.0)]));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::default(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    /// Divide by the leading coefficient (identity for the zero poly).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => Self::new(self.coeffs.iter().map(|&c| c / lc).collect()),
        }
    }

    /// Largest coefficient modulus (0 for the zero polynomial).
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::default(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dd = d.degree().ok_or(PolyError::ZeroDivisor)?;
        let lc = d.leading().expect("nonzero divisor");
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::default(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let q = rem[dd + k] / lc;
            quot[k] = q;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[i + k] -= q * dc;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }
}

/// Characteristic polynomial `F(x) = det(M - xI)` by the Faddeev–LeVerrier
/// recurrence; degree = dim, leading coefficient `(-1)^dim`.
pub fn char_poly(m: &DMatrix<Complex64>) -> Result<Poly, PolyError> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "characteristic polynomial needs a square matrix");
    if n > CHAR_POLY_DIM_CAP {
        return Err(PolyError::DimensionCap { dim: n });
    }
    // det(xI - M) = x^n + c_1 x^{n-1} + … + c_n via
    // N_1 = I, c_k = -tr(M N_k)/k, N_{k+1} = M N_k + c_k I.
    let mut work = DMatrix::identity(n, n);
    let mut c = Vec::with_capacity(n);
    for k in 1..=n {
        let mn = m * &work;
        let ck = -mn.trace() / Complex64::new(k as f64, 0.0);
        c.push(ck);
        if k < n {
            work = mn;
            for i in 0..n {
                work[(i, i)] += ck;
            }
        }
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut coeffs = vec![Complex64::default(); n + 1];
    coeffs[n] = Complex64::new(sign, 0.0);
    for (k, &ck) in c.iter().enumerate() {
        coeffs[n - (k + 1)] = ck * sign;
    }
    Ok(Poly { coeffs })
}

/// Monic approximate gcd by the Euclidean remainder sequence with monic
/// normalization at every step; a remainder counts as zero when its
/// coefficient max-norm drops to `tau` or below.  Returns the constant 1
/// for coprime inputs.
pub fn poly_gcd(f: &Poly, g: &Poly, tau: f64) -> Poly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let (mut a, mut b) = (f.monic(), g.monic());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree() == Some(0) {
            return Poly::one();
        }
        let (_, r) = a.div_rem(&b).expect("nonzero divisor in Euclid loop");
        if r.max_coeff_norm() <= tau {
            return b;
        }
        a = b;
        b = r.monic();
    }
}

/// Squarefree part `F / gcd(F, F')`: shares every root of `F`, each with
/// multiplicity one.  Errors when the division residual exceeds
/// [`SQUAREFREE_RESIDUAL_TOL`] relative to `‖F‖_max` (ill-conditioned
/// input: the gcd tolerance misjudged the multiplicity structure).
pub fn squarefree_part(f: &Poly, tau: f64) -> Result<Poly, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(Poly::one());
    }
    let g = poly_gcd(f, &f.derivative(), tau);
    let (q, r) = f.div_rem(&g)?;
    let residual = r.max_coeff_norm() / f.max_coeff_norm();
    if residual > SQUAREFREE_RESIDUAL_TOL {
        return Err(PolyError::IllConditioned { residual });
    }
    Ok(q.monic())
}

/// How a [`MultiplicityCertificate`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateMethod {
    /// Remainder of `F` modulo powers of its squarefree part.
    GcdRemainder,
    /// Companion-matrix root clustering.
    RootCluster,
}

/// Certified lower bound on root multiplicities: "every root of the
/// polynomial has multiplicity ≥ K".
#[derive(Debug, Clone)]
pub struct MultiplicityCertificate {
    /// The K the caller asked about.
    pub requested_k: usize,
    /// Whether the requested K is certified.
    pub granted: bool,
    /// Largest K the evidence grants (≥ 1 for any nonzero polynomial with
    /// a root).
    pub max_granted: usize,
    /// `‖F mod F~^K‖_max` at the requested K (gcd-remainder method only).
    pub remainder_norm: Option<f64>,
    pub method: CertificateMethod,
    /// The zero-declaration tolerance used.
    pub tolerance: f64,
}

/// Remainder test: compute `R = F mod F~^K` for the squarefree part `F~`;
/// `‖R‖_max ≤ τ·‖F‖_max` certifies that every root of `F` has multiplicity
/// at least `K`.  Also reports the largest granted `K`.
///
/// Errors propagate ill-conditioned gcd/squarefree computations — an
/// explicit "inconclusive" outcome rather than a wrong certificate.
pub fn remainder_test(f: &Poly, k: usize, tau: f64) -> Result<MultiplicityCertificate, PolyError> {
    assert!(k >= 1, "multiplicity threshold must be at least 1");
    let deg_f = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    if deg_f == 0 {
        return Err(PolyError::DegreeTooSmall { got: 0, need: 1 });
    }
    let sf = squarefree_part(f, DEFAULT_GCD_TOL)?;
    let deg_sf = sf.degree().unwrap_or(0).max(1);
    let threshold = tau * f.max_coeff_norm();
    let remainder_at = |kk: usize| -> Result<f64, PolyError> {
        let (_, r) = f.div_rem(&sf.pow(kk))?;
        Ok(r.max_coeff_norm())
    };
    let mut max_granted = 0usize;
    let mut kk = 1usize;
    while kk * deg_sf <= deg_f {
        if remainder_at(kk)? <= threshold {
            max_granted = kk;
            kk += 1;
        } else {
            break;
        }
    }
    let remainder_norm = if k * deg_sf <= deg_f {
        remainder_at(k)?
    } else {
        // F~^K outdegrees F: the remainder is F itself.
        f.max_coeff_norm()
    };
    Ok(MultiplicityCertificate {
        requested_k: k,
        granted: k <= max_granted,
        max_granted,
        remainder_norm: Some(remainder_norm),
        method: CertificateMethod::GcdRemainder,
        tolerance: tau,
    })
}

/// The `(m+n)×(m+n)` Sylvester matrix of two polynomials of degrees
/// `m, n ≥ 1`; its determinant is the resultant.
#[derive(Debug, Clone)]
pub struct SylvesterMatrix {
    pub matrix: DMatrix<Complex64>,
    pub deg_f: usize,
    pub deg_g: usize,
}

impl SylvesterMatrix {
    /// `Res(f, g)` as the determinant (LU).
    pub fn resultant(&self) -> Complex64 {
        self.matrix.clone().lu().determinant()
    }
}

/// Build the Sylvester matrix of `(f, g)`: `deg g` shifted rows of `f`'s
/// descending coefficients above `deg f` shifted rows of `g`'s.
pub fn sylvester_matrix(f: &Poly, g: &Poly) -> Result<SylvesterMatrix, PolyError> {
    let m = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    let n = g.degree().ok_or(PolyError::ZeroPolynomial)?;
    if m == 0 || n == 0 {
        return Err(PolyError::DegreeTooSmall {
            got: m.min(n),
            need: 1,
        });
    }
    let size = m + n;
    let mut s = DMatrix::from_element(size, size, Complex64::default());
    for row in 0..n {
        for (k, j) in (0..=m).rev().enumerate() {
            s[(row, row + k)] = f.coeff(j);
        }
    }
    for row in 0..m {
        for (k, j) in (0..=n).rev().enumerate() {
            s[(n + row, row + k)] = g.coeff(j);
        }
    }
    Ok(SylvesterMatrix {
        matrix: s,
        deg_f: m,
        deg_g: n,
    })
}

/// Discriminant `(-1)^{n(n-1)/2}·Res(F, F')/lc(F)`; `|Δ|` above threshold
/// certifies simple roots, `|Δ| ≈ 0` flags a repeated root.
pub fn discriminant(f: &Poly) -> Result<Complex64, PolyError> {
    let n = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n < 2 {
        return Err(PolyError::DegreeTooSmall { got: n, need: 2 });
    }
    let res = sylvester_matrix(f, &f.derivative())?.resultant();
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(res * sign / f.leading().expect("nonzero"))
}

/// Coefficients of `f(x + s)` (Ruffini–Horner Taylor shift).
fn taylor_shift(f: &Poly, s: Complex64) -> Poly {
    let Some(n) = f.degree() else {
        return Poly::zero();
    };
    let mut b = f.coeffs.clone();
    for k in 0..n {
        for j in (k..n).rev() {
            let t = b[j + 1] * s;
            b[j] += t;
        }
    }
    Poly::new(b)
}

/// Eigenvalues of the companion matrix of a monic polynomial.
fn companion_roots(monic: &Poly) -> Option<Vec<Complex64>> {
    let n = monic.degree()?;
    let mut companion = DMatrix::from_element(n, n, Complex64::default());
    for i in 0..n {
        companion[(i, n - 1)] = -monic.coeff(i);
        if i + 1 < n {
            companion[(i + 1, i)] = Complex64::new(1.0, 0.0);
        }
    }
    let schur = companion.try_schur(1e-12, 100_000)?;
    Some(schur.eigenvalues()?.iter().copied().collect())
}

/// Roots with multiplicities: companion-matrix eigenvalues (complex Schur)
/// clustered at radius `delta_root` (single linkage); multiplicities are
/// cluster sizes, root estimates are cluster means.  Output sorted by
/// (Re, Im).
pub fn root_multiplicities(
    f: &Poly,
    delta_root: f64,
) -> Result<Vec<(Complex64, usize)>, PolyError> {
    let n = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Err(PolyError::DegreeTooSmall { got: 0, need: 1 });
    }
    let monic = f.monic();
    // The QR iteration can stall on special structure (e.g. the nilpotent
    // companion of x^n); recentering the polynomial breaks it.
    let roots: Vec<Complex64> = companion_roots(&monic)
        .or_else(|| {
            let s = Complex64::new(0.537_219, 0.291_83);
            companion_roots(&taylor_shift(&monic, s).monic())
                .map(|rs| rs.into_iter().map(|r| r + s).collect())
        })
        .ok_or(PolyError::RootSolverFailed)?;
    // Single-linkage components of the proximity graph at radius δ.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= delta_root {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::HashMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(roots[i]);
    }
    let mut out: Vec<(Complex64, usize)> = groups
        .into_values()
        .map(|members| {
            let sum: Complex64 = members.iter().sum();
            (sum / members.len() as f64, members.len())
        })
        .collect();
    out.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).expect("finite roots"));
    Ok(out)
}

/// Certificate from the root-clustering route: `K` is the smallest cluster
/// multiplicity found.
pub fn root_cluster_certificate(
    f: &Poly,
    delta_root: f64,
) -> Result<MultiplicityCertificate, PolyError> {
    let clusters = root_multiplicities(f, delta_root)?;
    let k = clusters.iter().map(|&(_, m)| m).min().unwrap_or(0);
    Ok(MultiplicityCertificate {
        requested_k: k,
        granted: true,
        max_granted: k,
        remainder_norm: None,
        method: CertificateMethod::RootCluster,
        tolerance: delta_root,
    })
}

/// Smallest multiplicity in a [`root_multiplicities`] result.
pub fn min_multiplicity(clusters: &[(Complex64, usize)]) -> Option<usize> {
    clusters.iter().map(|&(_, m)| m).min()
}

/// Corpora of polynomials with planted root patterns for exercising the
/// certificate machinery against a known ground truth.
pub mod planted {
    use super::*;
    use crate::rng::substream;
    use rand::Rng;

    /// Minimum pairwise separation of planted distinct roots.
    pub const MIN_SEPARATION: f64 = 0.3;

    /// Maximum total degree.
    pub const MAX_DEGREE: usize = 8;

    /// Maximum root multiplicity.
    pub const MAX_MULTIPLICITY: usize = 4;

    /// A polynomial with known root pattern.
    #[derive(Debug, Clone)]
    pub struct PlantedPoly {
        pub poly: Poly,
        /// Distinct roots with their planted multiplicities.
        pub roots: Vec<(Complex64, usize)>,
        pub min_multiplicity: usize,
        pub max_multiplicity: usize,
        pub has_repeated: bool,
    }

    /// Deterministic corpus cycling through three pattern classes:
    /// all-simple, mixed (some repeated, minimum 1), and all-repeated
    /// (minimum ≥ 2).  Degrees ≤ 8, multiplicities ≤ 4, pairwise root
    /// separation ≥ 0.3, roots in the square `[-1.5, 1.5]²`.
    pub fn corpus(master_seed: u64, count: usize) -> Vec<PlantedPoly> {
        (0..count)
            .map(|i| {
                let class = i % 3;
                let mut attempt = 0u64;
                loop {
                    let mut rng = substream(master_seed, i as u64, attempt);
                    attempt += 1;
                    if let Some(p) = try_planted(&mut rng, class) {
                        return p;
                    }
                    assert!(attempt < 500, "planted corpus generation stalled");
                }
            })
            .collect()
    }

    fn try_planted(rng: &mut impl Rng, class: usize) -> Option<PlantedPoly> {
        let mults: Vec<usize> = match class {
            0 => {
                let d = rng.random_range(2..=4);
                vec![1; d]
            }
            1 => {
                let d = rng.random_range(2..=3);
                let mut m: Vec<usize> = (0..d)
                    .map(|_| rng.random_range(1..=MAX_MULTIPLICITY))
                    .collect();
                m[0] = 1;
                if !m.iter().any(|&x| x >= 2) {
                    m[1] = rng.random_range(2..=MAX_MULTIPLICITY);
                }
                m
            }
            _ => {
                let d = rng.random_range(1..=3);
                (0..d)
                    .map(|_| rng.random_range(2..=MAX_MULTIPLICITY))
                    .collect()
            }
        };
        if mults.iter().sum::<usize>() > MAX_DEGREE {
            return None;
        }
        let mut roots: Vec<Complex64> = Vec::with_capacity(mults.len());
        for _ in 0..mults.len() {
            let re = rng.random_range(-1.5..1.5);
            let im = if rng.random_bool(0.5) {
                0.0
            } else {
                rng.random_range(-1.5..1.5)
            };
            roots.push(Complex64::new(re, im));
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if (roots[i] - roots[j]).norm() < MIN_SEPARATION {
                    return None;
                }
            }
        }
        let expanded: Vec<Complex64> = roots
            .iter()
            .zip(&mults)
            .flat_map(|(&r, &m)| std::iter::repeat_n(r, m))
            .collect();
        let poly = Poly::from_roots(&expanded);
        Some(PlantedPoly {
            poly,
            roots: roots.iter().copied().zip(mults.iter().copied()).collect(),
            min_multiplicity: *mults.iter().min().expect("nonempty"),
            max_multiplicity: *mults.iter().max().expect("nonempty"),
            has_repeated: mults.iter().any(|&m| m >= 2),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn poly_basics() {
        let p = Poly::from_real(&[2.0, -3.0, 1.0]); // x² - 3x + 2
        assert_eq!(p.degree(), Some(2));
        assert_abs_diff_eq!(p.eval(r(1.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.eval(r(2.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.eval(r(0.0)).re, 2.0);
        let dp = p.derivative();
        assert_eq!(dp.coeffs(), &[r(-3.0), r(2.0)]);
        assert!(Poly::zero().is_zero());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::new(vec![r(1.0), r(0.0)]).degree(), Some(0));
    }

    #[test]
    fn from_roots_expands_products() {
        let p = Poly::from_roots(&[r(1.0), r(2.0)]);
        assert_eq!(p.coeffs().len(), 3);
        assert_abs_diff_eq!(p.coeff(0).re, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.coeff(1).re, -3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.coeff(2).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = Poly::from_roots(&[r(1.0), r(2.0), c(0.5, -0.5)]);
        let d = Poly::from_real(&[0.3, 1.0, 2.0]);
        let (q, rem) = f.div_rem(&d).unwrap();
        // q·d + rem = f.
        let diff = q.mul(&d).sub(&f).sub(&rem.scale(r(-1.0)));
        assert!(diff.max_coeff_norm() < 1e-12);
        assert!(rem.degree().map_or(true, |dr| dr < 2));
        assert!(f.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn char_poly_diagonal() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![r(1.0), r(2.0)]));
        let p = char_poly(&m).unwrap();
        // det(M - xI) = (1-x)(2-x) = x² - 3x + 2.
        assert_eq!(p.degree(), Some(2));
        assert_abs_diff_eq!(p.coeff(0).re, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p.coeff(1).re, -3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p.coeff(2).re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn char_poly_zero_matrix() {
        let m = DMatrix::from_element(3, 3, Complex64::default());
        let p = char_poly(&m).unwrap();
        // det(0 - xI) = -x³.
        assert_eq!(p.degree(), Some(3));
        assert_abs_diff_eq!(p.coeff(3).re, -1.0, epsilon = 1e-15);
        for k in 0..3 {
            assert_abs_diff_eq!(p.coeff(k).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn char_poly_dimension_cap() {
        let m = DMatrix::from_element(13, 13, Complex64::default());
        assert!(matches!(char_poly(&m), Err(PolyError::DimensionCap { dim: 13 })));
    }

    #[test]
    fn char_poly_roots_match_eigenvalues() {
        use crate::green::random_symmetric;
        use crate::rng::substream;
        use crate::spectral::{eigendecompose, DEFAULT_RESIDUAL_TOL};
        let mut rng = substream(77, 0, 0);
        let h = random_symmetric(5, &mut rng);
        let hc = h.map(|x| Complex64::new(x, 0.0));
        let p = char_poly(&hc).unwrap();
        let clusters = root_multiplicities(&p, 1e-6).unwrap();
        let mut roots: Vec<f64> = clusters.iter().map(|&(z, _)| z.re).collect();
        roots.sort_by(f64::total_cmp);
        let eig = eigendecompose(&h, DEFAULT_RESIDUAL_TOL).unwrap();
        assert_eq!(roots.len(), 5);
        for (a, b) in roots.iter().zip(&eig.values) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn char_poly_vanishes_on_spectrum() {
        use crate::green::random_symmetric;
        use crate::rng::substream;
        use crate::spectral::{eigendecompose, DEFAULT_RESIDUAL_TOL};
        for n in [3, 5, 8] {
            let mut rng = substream(78, n as u64, 0);
            let h = random_symmetric(n, &mut rng);
            let p = char_poly(&h.map(|x| Complex64::new(x, 0.0))).unwrap();
            let eig = eigendecompose(&h, DEFAULT_RESIDUAL_TOL).unwrap();
            let bound = 1e-6 * p.max_coeff_norm();
            for &v in &eig.values {
                assert!(
                    p.eval(r(v)).norm() <= bound,
                    "char poly does not vanish at eigenvalue {v} (n={n})"
                );
            }
        }
    }

    #[test]
    fn gcd_textbook_cases() {
        // F = (x-1)²(x-2): gcd(F, F') = (x-1).
        let f = Poly::from_roots(&[r(1.0), r(1.0), r(2.0)]);
        let g = poly_gcd(&f, &f.derivative(), DEFAULT_GCD_TOL);
        assert_eq!(g.degree(), Some(1));
        assert_abs_diff_eq!(g.coeff(0).re, -1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(g.coeff(1).re, 1.0, epsilon = 1e-8);
        // Coprime inputs → constant.
        let a = Poly::from_roots(&[r(0.0), r(1.0)]);
        let b = Poly::from_roots(&[r(2.0), r(3.0)]);
        assert_eq!(poly_gcd(&a, &b, DEFAULT_GCD_TOL).degree(), Some(0));
        // F = (x-1)²(x-2)²: gcd(F, F') = (x-1)(x-2) = x² - 3x + 2.
        let f2 = Poly::from_roots(&[r(1.0), r(1.0), r(2.0), r(2.0)]);
        let g2 = poly_gcd(&f2, &f2.derivative(), DEFAULT_GCD_TOL);
        assert_eq!(g2.degree(), Some(2));
        assert_abs_diff_eq!(g2.coeff(0).re, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(g2.coeff(1).re, -3.0, epsilon = 1e-8);
    }

    #[test]
    fn squarefree_textbook_cases() {
        // (x-1)³ → (x-1).
        let f = Poly::from_roots(&[r(1.0); 3]);
        let sf = squarefree_part(&f, DEFAULT_GCD_TOL).unwrap();
        assert_eq!(sf.degree(), Some(1));
        assert_abs_diff_eq!(sf.coeff(0).re, -1.0, epsilon = 1e-8);
        // Simple-root F → F (monic).
        let s = Poly::from_roots(&[r(-1.0), r(0.5), c(0.0, 1.0)]);
        let ss = squarefree_part(&s, DEFAULT_GCD_TOL).unwrap();
        assert_eq!(ss.degree(), Some(3));
        assert!(ss.sub(&s.monic()).max_coeff_norm() < 1e-8);
        // (x-1)²(x-2)² → (x-1)(x-2).
        let f2 = Poly::from_roots(&[r(1.0), r(1.0), r(2.0), r(2.0)]);
        let sf2 = squarefree_part(&f2, DEFAULT_GCD_TOL).unwrap();
        assert_eq!(sf2.degree(), Some(2));
        assert_abs_diff_eq!(sf2.coeff(0).re, 2.0, epsilon = 1e-7);
        assert_abs_diff_eq!(sf2.coeff(1).re, -3.0, epsilon = 1e-7);
    }

    #[test]
    fn remainder_test_grants_and_refuses() {
        // (x-1)²(x-2)², K=2: granted.
        let f = Poly::from_roots(&[r(1.0), r(1.0), r(2.0), r(2.0)]);
        let cert = remainder_test(&f, 2, DEFAULT_GCD_TOL).unwrap();
        assert!(cert.granted);
        assert_eq!(cert.max_granted, 2);
        // (x-1)³(x+2), K=2: refused (min multiplicity 1).
        let g = Poly::from_roots(&[r(1.0), r(1.0), r(1.0), r(-2.0)]);
        let cert2 = remainder_test(&g, 2, DEFAULT_GCD_TOL).unwrap();
        assert!(!cert2.granted);
        assert_eq!(cert2.max_granted, 1);
        assert!(cert2.remainder_norm.unwrap() > 1e-3);
        // Simple-root F, K=1: granted with remainder ≈ 0.
        let s = Poly::from_roots(&[r(0.3), r(-0.9), r(1.4)]);
        let cert3 = remainder_test(&s, 1, DEFAULT_GCD_TOL).unwrap();
        assert!(cert3.granted);
        assert_eq!(cert3.max_granted, 1);
    }

    #[test]
    fn sylvester_resultant_matches_root_products() {
        // Res(f, g) = ∏_{i,j} (α_i - β_j) for monic f, g.
        let f = Poly::from_roots(&[r(1.0), r(2.0)]);
        let g = Poly::from_roots(&[r(4.0)]);
        let res = sylvester_matrix(&f, &g).unwrap().resultant();
        assert_abs_diff_eq!(res.re, 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(res.im, 0.0, epsilon = 1e-12);
        // Complex roots too.
        let a = [c(0.5, 0.5), c(-1.0, 0.2)];
        let b = [c(0.1, -0.7), c(1.3, 0.0), c(0.0, 1.0)];
        let fa = Poly::from_roots(&a);
        let fb = Poly::from_roots(&b);
        let res2 = sylvester_matrix(&fa, &fb).unwrap().resultant();
        let mut expect = c(1.0, 0.0);
        for &ai in &a {
            for &bj in &b {
                expect *= ai - bj;
            }
        }
        assert!((res2 - expect).norm() < 1e-10);
    }

    #[test]
    fn discriminant_quadratic_formula() {
        // x² + bx + c → b² - 4c; x² - 1 → 4.
        for (b, cc) in [(0.0, -1.0), (3.0, 1.0), (-2.0, 5.0)] {
            let f = Poly::from_real(&[cc, b, 1.0]);
            let d = discriminant(&f).unwrap();
            assert_abs_diff_eq!(d.re, b * b - 4.0 * cc, epsilon = 1e-12);
            assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-12);
        }
        // (x-1)² → 0.
        let sq = Poly::from_roots(&[r(1.0), r(1.0)]);
        assert!(discriminant(&sq).unwrap().norm() < 1e-13);
        // Degenerate degree.
        assert!(discriminant(&Poly::from_real(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn discriminant_matches_root_difference_product() {
        // Monic cubic: Δ = ∏_{i<j} (r_i - r_j)².
        let roots = [c(0.4, 0.0), c(-1.1, 0.3), c(0.9, -0.8)];
        let f = Poly::from_roots(&roots);
        let d = discriminant(&f).unwrap();
        let mut expect = c(1.0, 0.0);
        for i in 0..3 {
            for j in i + 1..3 {
                let diff = roots[i] - roots[j];
                expect *= diff * diff;
            }
        }
        assert!(
            (d - expect).norm() < 1e-10 * expect.norm().max(1.0),
            "disc {d} vs product {expect}"
        );
    }

    #[test]
    fn root_multiplicities_trivial_cases() {
        // (x-1)²(x-2)² → [(1,2),(2,2)].
        let f = Poly::from_roots(&[r(1.0), r(1.0), r(2.0), r(2.0)]);
        let ms = root_multiplicities(&f, DEFAULT_ROOT_CLUSTER_DELTA).unwrap();
        assert_eq!(ms.len(), 2);
        assert_abs_diff_eq!(ms[0].0.re, 1.0, epsilon = 1e-5);
        assert_eq!(ms[0].1, 2);
        assert_abs_diff_eq!(ms[1].0.re, 2.0, epsilon = 1e-5);
        assert_eq!(ms[1].1, 2);
        // x³ → [(0,3)].
        let g = Poly::from_real(&[0.0, 0.0, 0.0, 1.0]);
        let ms2 = root_multiplicities(&g, DEFAULT_ROOT_CLUSTER_DELTA).unwrap();
        assert_eq!(ms2.len(), 1);
        assert_eq!(ms2[0].1, 3);
        assert!(ms2[0].0.norm() < 1e-4);
        assert_eq!(min_multiplicity(&ms2), Some(3));
    }

    #[test]
    fn planted_corpus_is_valid_and_varied() {
        let corpus = planted::corpus(404, 60);
        assert_eq!(corpus.len(), 60);
        let mut saw_simple = false;
        let mut saw_mixed = false;
        let mut saw_all_repeated = false;
        for p in &corpus {
            let deg: usize = p.roots.iter().map(|&(_, m)| m).sum();
            assert!(deg <= planted::MAX_DEGREE);
            assert_eq!(p.poly.degree(), Some(deg));
            for i in 0..p.roots.len() {
                for j in i + 1..p.roots.len() {
                    assert!(
                        (p.roots[i].0 - p.roots[j].0).norm() >= planted::MIN_SEPARATION
                    );
                }
            }
            for &(root, _) in &p.roots {
                assert!(p.poly.eval(root).norm() < 1e-9 * p.poly.max_coeff_norm().max(1.0));
            }
            saw_simple |= !p.has_repeated;
            saw_mixed |= p.has_repeated && p.min_multiplicity == 1;
            saw_all_repeated |= p.min_multiplicity >= 2;
        }
        assert!(saw_simple && saw_mixed && saw_all_repeated);
    }

    #[test]
    fn gcd_degree_identity_on_planted_corpus() {
        // deg gcd(F, F') = deg F - (#distinct roots).
        for p in planted::corpus(405, 30) {
            let g = poly_gcd(&p.poly, &p.poly.derivative(), DEFAULT_GCD_TOL);
            let deg_f = p.poly.degree().unwrap();
            assert_eq!(
                g.degree(),
                Some(deg_f - p.roots.len()),
                "gcd degree off for pattern {:?}",
                p.roots.iter().map(|&(_, m)| m).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn oracle_agreement_remainder_vs_root_clusters() {
        for (i, p) in planted::corpus(406, 60).iter().enumerate() {
            let cert = remainder_test(&p.poly, 1, DEFAULT_GCD_TOL).unwrap();
            assert_eq!(
                cert.max_granted, p.min_multiplicity,
                "remainder oracle off at corpus index {i}"
            );
            let clusters = root_multiplicities(&p.poly, DEFAULT_ROOT_CLUSTER_DELTA).unwrap();
            assert_eq!(
                min_multiplicity(&clusters),
                Some(p.min_multiplicity),
                "root-cluster oracle off at corpus index {i}"
            );
            assert_eq!(clusters.len(), p.roots.len());
        }
    }

    #[test]
    fn discriminant_separates_repeated_from_simple() {
        let mut max_repeated: f64 = 0.0;
        let mut min_simple = f64::INFINITY;
        for p in planted::corpus(407, 90) {
            if p.poly.degree() == Some(1) {
                continue;
            }
            let d = discriminant(&p.poly).unwrap().norm();
            if p.has_repeated {
                max_repeated = max_repeated.max(d);
            } else {
                min_simple = min_simple.min(d);
            }
        }
        // The pinned threshold must clear both sides by an order of
        // magnitude on this corpus.
        assert!(
            max_repeated < DEFAULT_DISCRIMINANT_TOL / 10.0,
            "repeated-root float noise {max_repeated:.3e} too close to τ"
        );
        assert!(
            min_simple > DEFAULT_DISCRIMINANT_TOL * 10.0,
            "smallest simple discriminant {min_simple:.3e} too close to τ"
        );
    }

    #[test]
    fn root_cluster_certificate_reports_min() {
        let f = Poly::from_roots(&[r(1.0), r(1.0), r(1.0), r(2.0), r(2.0), r(2.0)]);
        let cert = root_cluster_certificate(&f, DEFAULT_ROOT_CLUSTER_DELTA).unwrap();
        assert_eq!(cert.max_granted, 3);
        assert_eq!(cert.method, CertificateMethod::RootCluster);
    }

    #[test]
    fn green_matrix_char_poly_shows_triple_degeneracy() {
        // Remark-style stack: restrict attention to the three identical
        // layers; the Green matrix on two columns of those layers has
        // every eigenvalue exactly 3-fold.
        use crate::green::green_direct;
        use crate::operator::models::remark_stacked_5;
        let model = remark_stacked_5(20);
        let sample = model.sample(55, 0);
        // Columns 7, 8 in the identical layers 2, 3, 4 (layer-major).
        let block: Vec<usize> = [2usize, 3, 4]
            .iter()
            .flat_map(|&m| [m * 20 + 7, m * 20 + 8])
            .collect();
        let z = Complex64::new(0.3, 0.8);
        let g = green_direct(&sample.matrix, &block, z).unwrap();
        let f = char_poly(&g.matrix).unwrap();
        assert_eq!(f.degree(), Some(6));
        let clusters = root_multiplicities(&f, 1e-4).unwrap();
        assert_eq!(min_multiplicity(&clusters), Some(3), "clusters: {clusters:?}");
        let cert = remainder_test(&f, 3, DEFAULT_GCD_TOL).unwrap();
        assert!(cert.granted, "remainder certificate refused: {cert:?}");
        assert_eq!(cert.max_granted, 3);
    }
}
