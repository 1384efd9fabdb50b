//! Experiment configuration: JSON schema, validation, canonical hashing,
//! and the built-in recipes behind each CLI subcommand.
//!
//! A config names a random model (either a built-in or an explicit
//! geometry/blocks/disorder triple) and one experiment kind with its
//! numeric parameters.  Every artifact written from a config embeds
//! `(schema_version, master_seed, config hash)` in its header, so any
//! output file can be traced back to the exact inputs that produced it.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::operator::{
    models, Boundary, DisorderSpec, LatticeSpec, ModelError, ProjectionScheme, RandomModel,
};

/// Version stamp carried by configs and artifact headers.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("config is not valid JSON for the schema: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("config schema_version {got} unsupported (expected {SCHEMA_VERSION})")]
    SchemaVersion { got: u32 },
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("model section does not build: {0}")]
    Model(#[from] ModelError),
}

/// Top-level configuration document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub master_seed: u64,
    /// Output directory; the CLI `--out` flag overrides it.
    #[serde(default)]
    pub out_dir: Option<String>,
    pub model: ModelConfig,
    pub experiment: ExperimentKind,
}

/// Model section: a named built-in or an explicit triple.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ModelConfig {
    /// One of the ready-made models, with optional size/disorder knobs.
    Builtin {
        name: BuiltinModel,
        /// Chain length (or pair count for `trivial-minami`).
        #[serde(default)]
        length: Option<usize>,
        /// Overrides the built-in's default disorder.
        #[serde(default)]
        disorder: Option<DisorderConfig>,
    },
    /// Fully explicit model.
    Custom {
        geometry: GeometryConfig,
        #[serde(default)]
        boundary: BoundaryConfig,
        blocks: BlocksConfig,
        disorder: DisorderConfig,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinModel {
    /// Five stacked chains, hoppings (1,1,2,2,2), shared uniform[0,1]
    /// column couplings: multiplicity exactly 3 on (3.05, 4.95), ≥ 2 on
    /// (−1.95, 2.95).
    #[serde(rename = "remark-stacked-5")]
    RemarkStacked5,
    /// Alternating diagonal background with rank-2 blocks {2n, 2n+1}.
    TrivialMinami,
    /// Nearest-neighbor chain with one rank-1 coupling per site.
    #[serde(rename = "anderson-1d-rank1")]
    Anderson1dRank1,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeometryConfig {
    Chain { length: usize },
    Box { extents: Vec<usize> },
    LayeredChain { length: usize, hoppings: Vec<f64> },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryConfig {
    #[default]
    Dirichlet,
    Periodic,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlocksConfig {
    /// One rank-1 block per site.
    Singletons,
    /// Contiguous blocks of `rank` sites (must tile the lattice).
    Contiguous { rank: usize },
    /// One block per column of a layered chain (rank = layer count).
    LayeredColumns,
    /// Hand-written partition.
    Explicit { blocks: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DisorderConfig {
    Gaussian { mean: f64, sd: f64 },
    Cauchy { location: f64, scale: f64 },
    Uniform { lo: f64, hi: f64 },
}

impl DisorderConfig {
    pub fn to_spec(&self) -> DisorderSpec {
        match *self {
            DisorderConfig::Gaussian { mean, sd } => DisorderSpec::Gaussian { mean, sd },
            DisorderConfig::Cauchy { location, scale } => DisorderSpec::Cauchy { location, scale },
            DisorderConfig::Uniform { lo, hi } => DisorderSpec::Uniform { lo, hi },
        }
    }
}

/// How an experiment groups sites into observation blocks B_k.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum BlockGrouping {
    /// `count` equal contiguous segments.
    Segments { count: usize },
    /// Groups of `cols` adjacent columns of a layered chain.
    ColumnGroups { cols: usize },
    /// The model's own perturbation blocks.
    SchemeBlocks,
    /// Hand-written disjoint site sets.
    Explicit { blocks: Vec<Vec<usize>> },
}

/// One spectral window with optional multiplicity expectations.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub lo: f64,
    pub hi: f64,
    /// Every cluster in the window must have exactly this count.
    #[serde(default)]
    pub expect_exact: Option<usize>,
    /// Every cluster in the window must have at least this count.
    #[serde(default)]
    pub expect_min: Option<usize>,
}

/// Experiment kind plus parameters, adjacently tagged:
/// `{"kind": "...", "params": {...}}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Cluster the full spectrum of sampled operators and check window
    /// expectations.
    Multiplicity(MultiplicityParams),
    /// Tail-probability ratio table over interval widths × block sizes.
    Minami(MinamiParams),
    /// Count distributions, Poisson fit, negligibility.
    Stats(StatsParams),
    /// Cross-method resolvent consistency and Herglotz positivity sweep.
    GreenCheck(GreenCheckParams),
    /// Planted kernel-dimension instances through the boundary-value
    /// bijection.
    KernelCheck(KernelCheckParams),
    /// The fixed stacked-counterexample multiplicity experiment.
    Counterexample(CounterexampleParams),
}

impl ExperimentKind {
    /// Stable kind name, matching the CLI subcommand.
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Multiplicity(_) => "multiplicity",
            ExperimentKind::Minami(_) => "minami",
            ExperimentKind::Stats(_) => "stats",
            ExperimentKind::GreenCheck(_) => "green-check",
            ExperimentKind::KernelCheck(_) => "kernel-check",
            ExperimentKind::Counterexample(_) => "counterexample",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct MultiplicityParams {
    pub realizations: usize,
    /// Cluster gap as a multiple of ‖H‖₂.
    pub cluster_delta_rel: f64,
    pub windows: Vec<WindowConfig>,
}

impl Default for MultiplicityParams {
    fn default() -> Self {
        Self {
            realizations: 20,
            cluster_delta_rel: 1e-8,
            windows: vec![
                WindowConfig {
                    lo: 3.05,
                    hi: 4.95,
                    expect_exact: Some(3),
                    expect_min: None,
                },
                WindowConfig {
                    lo: -1.95,
                    hi: 2.95,
                    expect_exact: None,
                    expect_min: Some(2),
                },
            ],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct MinamiParams {
    pub energy: f64,
    /// Interval widths |J|.
    pub widths: Vec<f64>,
    /// Block sizes |B|; each must divide the site count (segment tiling).
    pub block_sizes: Vec<usize>,
    pub realizations: usize,
    /// Tail threshold: estimates P(η ≥ k+1).
    pub k: usize,
    /// |B| exponent.
    pub a: f64,
    /// |J| exponent minus one.
    pub b: f64,
}

impl Default for MinamiParams {
    fn default() -> Self {
        Self {
            energy: 0.0,
            widths: vec![0.04, 0.02, 0.01],
            block_sizes: vec![20, 40],
            realizations: 400,
            k: 1,
            a: 2.0,
            b: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct StatsParams {
    pub energy: f64,
    /// Window half-width h = scale / site_count (unless overridden).
    pub half_width_scale: f64,
    /// Absolute half-width override.
    pub half_width: Option<f64>,
    pub grouping: BlockGrouping,
    pub realizations: usize,
    /// Also fit the per-realization block-sum distribution.
    pub summed: bool,
}

impl Default for StatsParams {
    fn default() -> Self {
        Self {
            energy: 0.0,
            half_width_scale: 2.5,
            half_width: None,
            grouping: BlockGrouping::Segments { count: 10 },
            realizations: 400,
            summed: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct GreenCheckParams {
    /// Random (H, B, z) instances for the Schur-vs-direct comparison.
    pub instances: usize,
    pub dim: usize,
    pub block_size: usize,
    /// Smallest Im z used in the comparison.
    pub min_im: f64,
    /// Pass bound: max discrepancy ≤ tol · (1 + ‖G‖_max).
    pub tol: f64,
    /// Herglotz sweep grid: models × (Re z, Im z) points.
    pub grid_models: usize,
    pub grid_re: usize,
    pub grid_im: usize,
}

impl Default for GreenCheckParams {
    fn default() -> Self {
        Self {
            instances: 100,
            dim: 50,
            block_size: 3,
            min_im: 0.1,
            tol: 1e-9,
            grid_models: 10,
            grid_re: 20,
            grid_im: 20,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct KernelCheckParams {
    pub instances: usize,
    pub tol: f64,
}

impl Default for KernelCheckParams {
    fn default() -> Self {
        Self {
            instances: 50,
            tol: crate::green::DEFAULT_KERNEL_TOL,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct CounterexampleParams {
    pub realizations: usize,
    pub cluster_delta_rel: f64,
}

impl Default for CounterexampleParams {
    fn default() -> Self {
        Self {
            realizations: 20,
            cluster_delta_rel: 1e-8,
        }
    }
}

impl ExperimentConfig {
    /// The default recipe behind a bare CLI subcommand (no `--config`).
    pub fn recipe(kind: &str) -> Option<Self> {
        let (model, experiment) = match kind {
            "multiplicity" => (
                ModelConfig::Builtin {
                    name: BuiltinModel::RemarkStacked5,
                    length: Some(40),
                    disorder: None,
                },
                ExperimentKind::Multiplicity(MultiplicityParams {
                    realizations: 10,
                    ..Default::default()
                }),
            ),
            "minami" => (
                ModelConfig::Builtin {
                    name: BuiltinModel::Anderson1dRank1,
                    length: Some(200),
                    disorder: Some(DisorderConfig::Uniform { lo: -5.0, hi: 5.0 }),
                },
                ExperimentKind::Minami(MinamiParams::default()),
            ),
            "stats" => (
                ModelConfig::Builtin {
                    name: BuiltinModel::Anderson1dRank1,
                    length: Some(200),
                    disorder: Some(DisorderConfig::Uniform { lo: -5.0, hi: 5.0 }),
                },
                ExperimentKind::Stats(StatsParams::default()),
            ),
            "green-check" => (
                ModelConfig::Builtin {
                    name: BuiltinModel::Anderson1dRank1,
                    length: Some(50),
                    disorder: Some(DisorderConfig::Gaussian { mean: 0.0, sd: 1.0 }),
                },
                ExperimentKind::GreenCheck(GreenCheckParams::default()),
            ),
            "kernel-check" => (
                ModelConfig::Builtin {
                    name: BuiltinModel::Anderson1dRank1,
                    length: Some(10),
                    disorder: Some(DisorderConfig::Gaussian { mean: 0.0, sd: 1.0 }),
                },
                ExperimentKind::KernelCheck(KernelCheckParams::default()),
            ),
            "counterexample" => (
                ModelConfig::Builtin {
                    name: BuiltinModel::RemarkStacked5,
                    length: Some(60),
                    disorder: None,
                },
                ExperimentKind::Counterexample(CounterexampleParams::default()),
            ),
            _ => return None,
        };
        Some(Self {
            schema_version: SCHEMA_VERSION,
            master_seed: 1,
            out_dir: None,
            model,
            experiment,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        let cfg: Self = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ConfigError::SchemaVersion {
                got: self.schema_version,
            });
        }
        // Surface model-section problems now rather than mid-run.
        let model = self.build_model()?;
        let invalid = |msg: String| Err(ConfigError::Invalid(msg));
        match &self.experiment {
            ExperimentKind::Multiplicity(p) => {
                if p.realizations == 0 {
                    return invalid("multiplicity.realizations must be ≥ 1".into());
                }
                if p.cluster_delta_rel <= 0.0 {
                    return invalid("multiplicity.cluster_delta_rel must be > 0".into());
                }
                for w in &p.windows {
                    if w.lo >= w.hi {
                        return invalid(format!("window [{}, {}) is empty", w.lo, w.hi));
                    }
                }
            }
            ExperimentKind::Minami(p) => {
                if p.realizations == 0 {
                    return invalid("minami.realizations must be ≥ 1".into());
                }
                if p.widths.is_empty() || p.widths.iter().any(|&w| w <= 0.0) {
                    return invalid("minami.widths must be nonempty and positive".into());
                }
                if p.block_sizes.is_empty() || p.block_sizes.contains(&0) {
                    return invalid("minami.block_sizes must be nonempty and positive".into());
                }
                for &size in &p.block_sizes {
                    if model.site_count() % size != 0 {
                        return invalid(format!(
                            "block size {size} does not tile {} sites",
                            model.site_count()
                        ));
                    }
                }
            }
            ExperimentKind::Stats(p) => {
                if p.realizations == 0 {
                    return invalid("stats.realizations must be ≥ 1".into());
                }
                let h_override = p.half_width.unwrap_or(f64::INFINITY);
                if p.half_width_scale <= 0.0 || h_override <= 0.0 {
                    return invalid("stats window half-width must be > 0".into());
                }
                resolve_grouping(&p.grouping, &model)?;
            }
            ExperimentKind::GreenCheck(p) => {
                if p.tol <= 0.0 || p.min_im <= 0.0 {
                    return invalid("green-check tolerances must be > 0".into());
                }
                if p.dim == 0 || p.block_size == 0 || p.block_size > p.dim {
                    return invalid("green-check block must fit inside the matrix".into());
                }
            }
            ExperimentKind::KernelCheck(p) => {
                if p.tol <= 0.0 {
                    return invalid("kernel-check.tol must be > 0".into());
                }
            }
            ExperimentKind::Counterexample(p) => {
                if p.realizations == 0 {
                    return invalid("counterexample.realizations must be ≥ 1".into());
                }
                if p.cluster_delta_rel <= 0.0 {
                    return invalid("counterexample.cluster_delta_rel must be > 0".into());
                }
            }
        }
        Ok(())
    }

    /// Instantiate the model section.
    pub fn build_model(&self) -> Result<RandomModel, ConfigError> {
        match &self.model {
            ModelConfig::Builtin {
                name,
                length,
                disorder,
            } => {
                let spec = disorder.as_ref().map(DisorderConfig::to_spec);
                Ok(match name {
                    BuiltinModel::RemarkStacked5 => {
                        if let Some(d) = spec {
                            let lattice = LatticeSpec::layered_chain(
                                length.unwrap_or(60),
                                vec![1.0, 1.0, 2.0, 2.0, 2.0],
                                Boundary::Dirichlet,
                            );
                            RandomModel::from_lattice(
                                &lattice,
                                ProjectionScheme::layered_columns(length.unwrap_or(60), 5),
                                d,
                            )?
                        } else {
                            models::remark_stacked_5(length.unwrap_or(60))
                        }
                    }
                    BuiltinModel::TrivialMinami => models::trivial_minami(
                        length.unwrap_or(30),
                        spec.unwrap_or(DisorderSpec::Uniform { lo: 0.0, hi: 1.0 }),
                    )?,
                    BuiltinModel::Anderson1dRank1 => models::anderson_chain(
                        length.unwrap_or(100),
                        spec.unwrap_or(DisorderSpec::Uniform { lo: -5.0, hi: 5.0 }),
                    )?,
                })
            }
            ModelConfig::Custom {
                geometry,
                boundary,
                blocks,
                disorder,
            } => {
                let boundary = match boundary {
                    BoundaryConfig::Dirichlet => Boundary::Dirichlet,
                    BoundaryConfig::Periodic => Boundary::Periodic,
                };
                let lattice = match geometry {
                    GeometryConfig::Chain { length } => LatticeSpec::chain(*length, boundary),
                    GeometryConfig::Box { extents } => {
                        LatticeSpec::boxed(extents.clone(), boundary)
                    }
                    GeometryConfig::LayeredChain { length, hoppings } => {
                        LatticeSpec::layered_chain(*length, hoppings.clone(), boundary)
                    }
                };
                let sites = lattice.site_count();
                let scheme = match blocks {
                    BlocksConfig::Singletons => ProjectionScheme::singletons(sites),
                    BlocksConfig::Contiguous { rank } => ProjectionScheme::contiguous(sites, *rank)?,
                    BlocksConfig::LayeredColumns => match geometry {
                        GeometryConfig::LayeredChain { length, hoppings } => {
                            ProjectionScheme::layered_columns(*length, hoppings.len())
                        }
                        _ => {
                            return Err(ConfigError::Invalid(
                                "layered_columns blocks need a layered_chain geometry".into(),
                            ))
                        }
                    },
                    BlocksConfig::Explicit { blocks } => ProjectionScheme::new(blocks.clone())?,
                };
                Ok(RandomModel::from_lattice(&lattice, scheme, disorder.to_spec())?)
            }
        }
    }

    /// Canonical JSON serialization (field order fixed by the schema).
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// SHA-256 of the canonical JSON, lowercase hex.
    pub fn sha256(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// Resolve B_k site sets from a grouping choice.
pub fn resolve_grouping(
    grouping: &BlockGrouping,
    model: &RandomModel,
) -> Result<Vec<Vec<usize>>, ConfigError> {
    let sites = model.site_count();
    match grouping {
        BlockGrouping::Segments { count } => {
            if *count == 0 || sites % count != 0 {
                return Err(ConfigError::Invalid(format!(
                    "{count} segments do not tile {sites} sites"
                )));
            }
            Ok(crate::stats::segments(sites, *count))
        }
        BlockGrouping::ColumnGroups { cols } => {
            let scheme = model.scheme();
            let blocks: usize = scheme.block_count();
            // Layered-columns schemes have one block per column; the rank
            // is the layer count.
            let layers = scheme.rank(0);
            let length = blocks;
            if layers * length != sites {
                return Err(ConfigError::Invalid(
                    "column_groups grouping needs a layered-columns model".into(),
                ));
            }
            if *cols == 0 || length % cols != 0 {
                return Err(ConfigError::Invalid(format!(
                    "{cols}-column groups do not tile {length} columns"
                )));
            }
            Ok(crate::stats::column_groups(layers, length, *cols))
        }
        BlockGrouping::SchemeBlocks => {
            Ok(model.scheme().blocks().map(|b| b.to_vec()).collect())
        }
        BlockGrouping::Explicit { blocks } => Ok(blocks.clone()),
    }
}
