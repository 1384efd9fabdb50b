//! Numerical laboratory for finite-volume random operators of the form
//!
//! ```text
//!     H(ω) = H0 + Σ_n ω_n P_n
//! ```
//!
//! where `H0` is a deterministic hopping matrix on a finite lattice, the
//! `P_n` are orthogonal projections onto disjoint coordinate blocks that
//! together partition the sites, and the couplings `ω_n` are i.i.d. draws
//! from a common disorder distribution.
//!
//! The crate provides four groups of tools:
//!
//! * **Operators** ([`operator`], [`spectral`]): lattice geometries and
//!   their hopping matrices, projection schemes, disorder sampling with
//!   deterministic per-`(seed, realization, block)` substreams, dense
//!   eigendecomposition, eigenvalue clustering into multiplicity reports,
//!   and cyclic-subspace (Krylov reachability) dimensions.
//! * **Green matrices** ([`green`]): the block-projected resolvent
//!   `G(z) = P (H - z)^{-1} P` computed by two independent routes (direct
//!   solve and Schur complement), boundary values `G(E + iε)` along a
//!   dyadic `ε`-schedule with pole detection, and the kernel-dimension
//!   equivalence `dim ker(H + λP - E) = dim ker(I + λ G(E))` checked from
//!   both sides.
//! * **Polynomial certificates** ([`poly`]): characteristic polynomials,
//!   approximate gcd / squarefree parts, remainder-based lower bounds on
//!   root multiplicities, Sylvester resultants and discriminants, and a
//!   companion-matrix root finder used as an independent cross-check.
//! * **Statistics** ([`stats`]): ensembles of eigenvalue counts
//!   `η_{B,J} = #(spectrum of H_B in J)`, Minami-type ratio estimates
//!   `P(η ≥ K+1) / (|B|^a |J|^{1+b})` with Wilson confidence intervals,
//!   count distributions with Poisson fits in total variation, and
//!   negligibility diagnostics for triangular-array limits.
//!
//! Experiments are driven either through the runnable programs in
//! `examples/` (one per capability) or through the thin `specmult` binary,
//! which reads a JSON [`config`] and writes CSV/JSON artifacts via
//! [`runner`].

pub mod config;
pub mod csvio;
pub mod green;
pub mod operator;
pub mod poly;
pub mod rng;
pub mod runner;
pub mod spectral;
pub mod stats;
