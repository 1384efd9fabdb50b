//! CSV and JSON artifact writers.
//!
//! Every artifact starts with a three-line comment header carrying
//! `(schema_version, master_seed, config_sha256)`, so a plot made from
//! any output file can be traced to the exact config and seed that
//! produced it:
//!
//! ```text
//! # schema_version=1
//! # master_seed=7
//! # config_sha256=9f86d08…
//! realization,value,count,spread
//! 0,3.9812,3,1.2e-13
//! ```
//!
//! Columns are in fixed order, floats use `.` decimals (Rust's shortest
//! round-trip formatting), and lines end with `\n` on every platform, so
//! artifacts from identical runs are byte-identical and diffable.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::config::ExperimentConfig;
use crate::green::{GreenMatrix, GreenMethod};
use crate::spectral::MultiplicityReport;
use crate::stats::{CountDistribution, EnsembleResults, MinamiEstimate};

/// Reproducibility stamp embedded in every artifact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtifactMeta {
    pub schema_version: u32,
    pub master_seed: u64,
    pub config_sha256: String,
}

impl ArtifactMeta {
    pub fn from_config(cfg: &ExperimentConfig) -> Self {
        Self {
            schema_version: cfg.schema_version,
            master_seed: cfg.master_seed,
            config_sha256: cfg.sha256(),
        }
    }

    /// The three header comment lines, `\n`-terminated.
    pub fn header(&self) -> String {
        format!(
            "# schema_version={}\n# master_seed={}\n# config_sha256={}\n",
            self.schema_version, self.master_seed, self.config_sha256
        )
    }

    /// Parse the header back from artifact text (for verification).
    pub fn parse(text: &str) -> Option<Self> {
        let mut lines = text.lines();
        let version = lines.next()?.strip_prefix("# schema_version=")?;
        let seed = lines.next()?.strip_prefix("# master_seed=")?;
        let hash = lines.next()?.strip_prefix("# config_sha256=")?;
        Some(Self {
            schema_version: version.parse().ok()?,
            master_seed: seed.parse().ok()?,
            config_sha256: hash.to_string(),
        })
    }
}

/// Write a CSV artifact: header comments, column line, then rows.
pub fn write_table(
    path: &Path,
    meta: &ArtifactMeta,
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> std::io::Result<()> {
    let mut out = String::new();
    out.push_str(&meta.header());
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), columns.len(), "row arity must match columns");
        out.push_str(&row.join(","));
        out.push('\n');
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

/// Write a JSON summary with the meta stamp merged into the top level.
pub fn write_json_summary(
    path: &Path,
    meta: &ArtifactMeta,
    body: serde_json::Value,
) -> std::io::Result<()> {
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), meta.schema_version.into());
    doc.insert("master_seed".into(), meta.master_seed.into());
    doc.insert("config_sha256".into(), meta.config_sha256.clone().into());
    if let serde_json::Value::Object(map) = body {
        for (k, v) in map {
            doc.insert(k, v);
        }
    } else {
        doc.insert("result".into(), body);
    }
    let text = serde_json::to_string_pretty(&serde_json::Value::Object(doc))?;
    std::fs::write(path, text + "\n")
}

/// Columns of the multiplicity-report artifact.
pub const CLUSTER_COLUMNS: [&str; 4] = ["realization", "value", "count", "spread"];

/// One row per eigenvalue cluster.
pub fn cluster_rows(realization: usize, report: &MultiplicityReport) -> Vec<Vec<String>> {
    report
        .clusters
        .iter()
        .map(|c| {
            vec![
                realization.to_string(),
                c.value.to_string(),
                c.count.to_string(),
                c.spread.to_string(),
            ]
        })
        .collect()
}

/// Columns of the Green-matrix grid artifact.
pub const GREEN_COLUMNS: [&str; 7] = ["re_z", "im_z", "row", "col", "re_g", "im_g", "method"];

pub fn method_name(method: GreenMethod) -> &'static str {
    match method {
        GreenMethod::Direct => "direct",
        GreenMethod::Schur => "schur",
        GreenMethod::BoundaryLimit => "boundary",
    }
}

/// One row per matrix entry of a Green matrix evaluation.
pub fn green_rows(g: &GreenMatrix) -> Vec<Vec<String>> {
    let mut rows = Vec::with_capacity(g.dim() * g.dim());
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let v: Complex64 = g.matrix[(i, j)];
            rows.push(vec![
                g.z.re.to_string(),
                g.z.im.to_string(),
                i.to_string(),
                j.to_string(),
                v.re.to_string(),
                v.im.to_string(),
                method_name(g.method).to_string(),
            ]);
        }
    }
    rows
}

/// Columns of the per-realization count artifact.
pub const COUNT_COLUMNS: [&str; 3] = ["realization", "block", "count"];

/// One row per (realization, block) count in the window `[E-h, E+h)`.
pub fn count_rows(results: &EnsembleResults, energy: f64, half_width: f64) -> Vec<Vec<String>> {
    let j = crate::spectral::Interval::centered(energy, half_width).expect("valid window");
    let mut rows = Vec::new();
    for r in 0..results.realizations() {
        for b in 0..results.block_sites.len() {
            rows.push(vec![
                r.to_string(),
                b.to_string(),
                results.count(r, b, j).to_string(),
            ]);
        }
    }
    rows
}

/// Columns of the pmf artifact.
pub const PMF_COLUMNS: [&str; 2] = ["count", "probability"];

pub fn pmf_rows(dist: &CountDistribution) -> Vec<Vec<String>> {
    dist.pmf
        .iter()
        .enumerate()
        .map(|(k, p)| vec![k.to_string(), p.to_string()])
        .collect()
}

/// Columns of the tail-ratio table artifact.
pub const MINAMI_COLUMNS: [&str; 9] = [
    "width",
    "block_size",
    "trials",
    "successes",
    "p_hat",
    "ci_low",
    "ci_high",
    "ratio",
    "ratio_upper",
];

pub fn minami_row(est: &MinamiEstimate) -> Vec<String> {
    vec![
        est.interval.width().to_string(),
        est.block_size.to_string(),
        est.trials.to_string(),
        est.successes.to_string(),
        est.p_hat.to_string(),
        est.ci.0.to_string(),
        est.ci.1.to_string(),
        est.ratio.to_string(),
        est.ratio_upper.to_string(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{cluster_multiplicities, EigenvalueCluster};

    fn meta() -> ArtifactMeta {
        ArtifactMeta {
            schema_version: 1,
            master_seed: 42,
            config_sha256: "ab".repeat(32),
        }
    }

    #[test]
    fn header_layout_is_exact() {
        let m = meta();
        let h = m.header();
        let expect = format!(
            "# schema_version=1\n# master_seed=42\n# config_sha256={}\n",
            "ab".repeat(32)
        );
        assert_eq!(h, expect);
        assert_eq!(ArtifactMeta::parse(&h), Some(m));
    }

    #[test]
    fn table_is_byte_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let p1 = dir.path().join("a.csv");
        let p2 = dir.path().join("b.csv");
        let rows = || {
            vec![
                vec!["0".to_string(), (0.1f64 + 0.2).to_string()],
                vec!["1".to_string(), f64::MIN_POSITIVE.to_string()],
            ]
        };
        write_table(&p1, &meta(), &["idx", "x"], rows()).unwrap();
        write_table(&p2, &meta(), &["idx", "x"], rows()).unwrap();
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert_eq!(b1, b2);
        let text = String::from_utf8(b1).unwrap();
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));
        assert!(text.contains("idx,x\n"));
        // Shortest round-trip float formatting with '.' decimals.
        assert!(text.contains("0,0.30000000000000004\n"));
    }

    #[test]
    fn cluster_rows_match_report() {
        let values = vec![1.0, 1.0 + 1e-12, 2.5];
        let report = cluster_multiplicities(&values, 1e-6);
        let rows = cluster_rows(7, &report);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0][0], "7");
        assert_eq!(rows[0][2], "2");
        assert_eq!(rows[1][2], "1");
        let _: EigenvalueCluster = report.clusters[0].clone();
    }

    #[test]
    fn json_summary_carries_meta() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("summary.json");
        write_json_summary(&p, &meta(), serde_json::json!({"tv": 0.01}))
            .unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["master_seed"], 42);
        assert_eq!(doc["tv"], 0.01);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn green_rows_cover_all_entries() {
        use crate::green::green_direct;
        use nalgebra::DMatrix;
        let h = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let g = green_direct(&h, &[0, 1], Complex64::new(0.0, 1.0)).unwrap();
        let rows = green_rows(&g);
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.len() == GREEN_COLUMNS.len()));
        assert_eq!(rows[0][6], "direct");
    }
}
