//! Run orchestration and table emission: configuration, the classification
//! report document, deterministic serialization to JSON, CSV, and markdown,
//! and the seeded random cross-check of the two fixed-point-counting
//! routes.
//!
//! A report is assembled from the library searches, sorted into canonical
//! label order, and serialized without any volatile fields, so two runs
//! with equal configuration produce byte-identical output.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{nu_oracle, CurveAction};
use crate::classify::{
    d4_families, reducible_search, search_families, sort_families, FamilyRecord, SearchBounds,
};
use crate::error::{Error, Result};
use crate::fixtures::{fixture_tables, verify_family, VerificationReport};
use crate::genvec::GeneratingVector;
use crate::group::GroupDescriptor;

/// Schema identifier stamped on every serialized document.
pub const SCHEMA: &str = "symsq-deg2/v1";

/// Covering-genus roof for the cyclic scan inside [`run_classify`]. The
/// classified regime pins the base genus to 2; the roof leaves headroom so
/// emptiness above it is witnessed by the scan rather than assumed.
const REDUCIBLE_GENUS_ROOF: u32 = 10;

/// The three parametric families at their smallest admissible parameters.
const D4_MINIMAL: [(&str, u32, u32); 3] = [("D4.1", 4, 4), ("D4.2", 2, 8), ("D4.3", 4, 8)];

/// Serialization format for report emission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Markdown => "markdown",
        };
        write!(out, "{name}")
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "markdown" => Ok(OutputFormat::Markdown),
            other => Err(Error::Config {
                detail: format!("unknown output format {other:?}; use json, csv, or markdown"),
            }),
        }
    }
}

/// Bounds and switches for one classification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Smallest half rotation order scanned (the parametric families sit
    /// at 2).
    pub l_min: u32,
    /// Largest half rotation order scanned.
    pub l_max: u32,
    /// Largest cyclic group order scanned for reducible pairs.
    pub m_max: u32,
    /// Largest `s` parameter instantiated for the parametric families.
    pub s_max: u32,
    /// Largest `k` parameter instantiated for the parametric families.
    pub k_max: u32,
    /// Node and class cap for vector enumeration.
    pub vector_cap: usize,
    /// When set, every emitted record is re-derived from its vector and
    /// the two fixed-point-counting routes are cross-checked element by
    /// element; the reports ride on the document.
    pub verify_mode: bool,
    pub output_format: OutputFormat,
    /// When set, the CLI writes the emitted bytes here instead of stdout.
    pub output_path: Option<PathBuf>,
    /// Seed for randomized cross-check sampling.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            l_min: 2,
            l_max: 12,
            m_max: 20,
            s_max: 16,
            k_max: 16,
            vector_cap: 10_000,
            verify_mode: false,
            output_format: OutputFormat::Json,
            output_path: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Checks the bounds: everything positive and the rotation range
    /// non-empty.
    pub fn validate(&self) -> Result<()> {
        let positives = [
            ("l_min", self.l_min),
            ("l_max", self.l_max),
            ("m_max", self.m_max),
            ("s_max", self.s_max),
            ("k_max", self.k_max),
        ];
        for (name, value) in positives {
            if value == 0 {
                return Err(Error::Config {
                    detail: format!("{name} must be positive"),
                });
            }
        }
        if self.vector_cap == 0 {
            return Err(Error::Config {
                detail: "vector_cap must be positive".to_string(),
            });
        }
        if self.l_max < self.l_min {
            return Err(Error::Config {
                detail: format!(
                    "empty rotation range: l_max {} is below l_min {}",
                    self.l_max, self.l_min
                ),
            });
        }
        Ok(())
    }

    /// Parses a configuration from JSON text; absent fields take their
    /// defaults.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|err| Error::Config {
            detail: format!("config file does not parse: {err}"),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One classification run: configuration echo, coverage markers, records
/// in canonical label order, and verification reports when requested.
///
/// Contains no volatile fields (timing lives on stderr in the CLI), so
/// serialization is byte-identical across runs with equal configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    pub config: RunConfig,
    /// True when the configured bounds exclude part of the classified
    /// range (some rotation orders, cyclic orders, or minimal parametric
    /// instances were not scanned).
    pub partial: bool,
    /// True when any search hit a cap before exhausting its space.
    pub truncated: bool,
    pub records: Vec<FamilyRecord>,
    pub verification: Vec<VerificationReport>,
}

impl ReportDocument {
    /// Whether every attached verification report is clean.
    pub fn verification_clean(&self) -> bool {
        self.verification.iter().all(|report| report.diffs.is_empty())
    }
}

/// Runs the full classification within the configured bounds.
///
/// The document contains every family the searches find: the reducible
/// scan up to `m_max`, the dihedral searches for each half rotation order
/// in `[max(l_min, 3), l_max]`, and one record per parametric family at
/// its smallest parameters when 2 lies in the rotation range. Records the
/// reference tables do not list are included with the sentinel label and
/// sort last. `partial` is set when the bounds exclude any part of the
/// classified range.
pub fn run_classify(cfg: &RunConfig) -> Result<ReportDocument> {
    cfg.validate()?;
    let mut records: Vec<FamilyRecord> = Vec::new();
    let mut truncated = false;
    let mut partial = false;

    if cfg.m_max >= 4 {
        let scan = reducible_search(cfg.m_max, REDUCIBLE_GENUS_ROOF)?;
        truncated |= scan.truncated;
        records.extend(scan.families);
    }
    if cfg.m_max < 10 {
        partial = true;
    }

    if (cfg.l_min..=cfg.l_max).contains(&2) {
        for (label, s, k) in D4_MINIMAL {
            if s <= cfg.s_max && k <= cfg.k_max {
                let instance = d4_families(s, k)?
                    .into_iter()
                    .find(|record| record.label == label)
                    .ok_or_else(|| {
                        Error::invariant(format!(
                            "parametric instantiation at ({s}, {k}) lost its {label} member"
                        ))
                    })?;
                records.push(instance);
            } else {
                partial = true;
            }
        }
    } else {
        partial = true;
    }

    let bounds = SearchBounds {
        max_branch_points: SearchBounds::default().max_branch_points,
        vector_cap: cfg.vector_cap,
    };
    for l in cfg.l_min.max(3)..=cfg.l_max {
        let search = search_families(l, &bounds)?;
        truncated |= search.truncated;
        records.extend(search.families);
    }
    for covered in [3, 5] {
        if !(cfg.l_min..=cfg.l_max).contains(&covered) {
            partial = true;
        }
    }

    sort_families(&mut records);

    let mut verification = Vec::new();
    if cfg.verify_mode {
        for record in &records {
            verification.push(verify_family(record)?);
        }
    }

    Ok(ReportDocument {
        schema: SCHEMA.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        partial,
        truncated,
        records,
        verification,
    })
}

/// Fixed CSV column order.
pub const CSV_HEADER: &str = "label,l,t,r,s,k,p,gD,gC,gB,paB,paD,Bsq,Dsq,nodesB,nodesD,\
                              BdotDelta,moduliD,moduliC,flags,bn_cxc";

fn csv_flags(record: &FamilyRecord) -> String {
    record
        .flags
        .iter()
        .map(|flag| flag.as_str())
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_bytes(records: &[FamilyRecord]) -> Vec<u8> {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for record in records {
        let pair = &record.pair;
        let l = record.l.map_or(String::new(), |l| l.to_string());
        let moduli_c = record
            .moduli_dim_c
            .map_or(String::new(), |dim| dim.to_string());
        let row = [
            record.label.clone(),
            l,
            pair.t.to_string(),
            pair.r.to_string(),
            pair.s.to_string(),
            pair.k.to_string(),
            pair.p.to_string(),
            pair.h.to_string(),
            pair.g.to_string(),
            pair.b.to_string(),
            pair.pa_b.to_string(),
            pair.pa_d.to_string(),
            pair.b_sq.to_string(),
            pair.d_sq.to_string(),
            pair.nodes_b.to_string(),
            pair.nodes_d.to_string(),
            pair.b_dot_delta.to_string(),
            record.moduli_dim_d.to_string(),
            moduli_c,
            csv_flags(record),
            record.bn_cxc.to_string(),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out.into_bytes()
}

const MARKDOWN_COLUMNS: [&str; 13] = [
    "label", "g_D", "g_C", "g_B", "Bsq", "pa_B", "pa_D", "nodes_B", "nodes_D", "moduli_D",
    "moduli_C", "flags", "bn_cxc",
];

fn markdown_bytes(records: &[FamilyRecord]) -> Vec<u8> {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", MARKDOWN_COLUMNS.join(" | ")));
    out.push_str(&format!(
        "|{}\n",
        " --- |".repeat(MARKDOWN_COLUMNS.len())
    ));
    for record in records {
        let pair = &record.pair;
        let flags = if record.flags.is_empty() {
            "-".to_string()
        } else {
            record
                .flags
                .iter()
                .map(|flag| flag.as_str())
                .collect::<Vec<_>>()
                .join("+")
        };
        let moduli_c = record
            .moduli_dim_c
            .map_or_else(|| "-".to_string(), |dim| dim.to_string());
        let cells = [
            record.label.clone(),
            pair.h.to_string(),
            pair.g.to_string(),
            pair.b.to_string(),
            pair.b_sq.to_string(),
            pair.pa_b.to_string(),
            pair.pa_d.to_string(),
            pair.nodes_b.to_string(),
            pair.nodes_d.to_string(),
            record.moduli_dim_d.to_string(),
            moduli_c,
            flags,
            record.bn_cxc.to_string(),
        ];
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out.into_bytes()
}

/// Serializes a document. JSON carries the full record graph including
/// generating vectors in normal form; CSV emits one row per family in the
/// fixed column order; markdown mirrors the family table columns.
/// Serialization is deterministic: equal documents produce equal bytes.
pub fn emit(doc: &ReportDocument, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut bytes =
                serde_json::to_vec_pretty(doc).expect("report documents always serialize");
            bytes.push(b'\n');
            bytes
        }
        OutputFormat::Csv => csv_bytes(&doc.records),
        OutputFormat::Markdown => markdown_bytes(&doc.records),
    }
}

/// On-disk form of the canonical family tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub schema: String,
    pub records: Vec<FamilyRecord>,
}

/// The canonical family tables serialized for shipping as a versioned
/// data file. A test pins the committed file to these exact bytes.
pub fn fixture_file_bytes() -> Result<Vec<u8>> {
    let file = FixtureFile {
        schema: SCHEMA.to_string(),
        records: fixture_tables()?,
    };
    let mut bytes = serde_json::to_vec_pretty(&file).expect("fixture tables always serialize");
    bytes.push(b'\n');
    Ok(bytes)
}

/// Cross-checks the closed-form fixed-point count against the independent
/// orbit-counting oracle on `samples` randomly generated valid vectors
/// over dihedral groups with rotation order up to `n_max` and covering
/// genus up to `h_max`. Sampling is deterministic in `seed`. Returns the
/// total number of (vector, element) pairs checked; any disagreement is an
/// invariant violation.
pub fn random_vector_cross_check(seed: u64, samples: u32, n_max: u32, h_max: u32) -> Result<u64> {
    if n_max < 3 || samples == 0 {
        return Err(Error::domain(
            "random_vector_cross_check",
            "need at least one sample and rotation order at least three",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0u32;
    let mut checked = 0u64;
    let mut attempts = 0u64;
    let attempt_cap = 2_000 * u64::from(samples);
    while accepted < samples {
        attempts += 1;
        if attempts > attempt_cap {
            return Err(Error::invariant(format!(
                "random sampling stalled after {attempts} attempts with {accepted} of \
                 {samples} vectors accepted"
            )));
        }
        let n = rng.gen_range(3..=n_max);
        let group = GroupDescriptor::dihedral(n)?;
        let pool: Vec<_> = group
            .elements()
            .into_iter()
            .filter(|e| !e.is_identity())
            .collect();
        let base_genus = u32::from(rng.gen_ratio(1, 4));
        let count = rng.gen_range(2..=6usize);
        let mut entries: Vec<_> = (0..count)
            .map(|_| pool[rng.gen_range(0..pool.len())])
            .collect();
        let mut hyperbolic_pairs = Vec::new();
        let mut prefix = group.identity();
        if base_genus == 1 {
            let a = pool[rng.gen_range(0..pool.len())];
            let b = pool[rng.gen_range(0..pool.len())];
            hyperbolic_pairs.push((a, b));
            let commutator = group.mul(
                group.mul(a, b),
                group.mul(group.inverse(a), group.inverse(b)),
            );
            prefix = commutator;
        }
        for &entry in &entries[..count - 1] {
            prefix = group.mul(prefix, entry);
        }
        let last = group.inverse(prefix);
        if last.is_identity() {
            continue;
        }
        entries[count - 1] = last;
        let vector = GeneratingVector {
            group,
            base_genus,
            hyperbolic_pairs,
            branch_entries: entries,
        };
        if vector.validate().is_err() {
            continue;
        }
        if vector.genus()? > h_max {
            continue;
        }
        let action = CurveAction::new(vector)?;
        for gamma in group.elements() {
            if gamma.is_identity() {
                continue;
            }
            let fast = action.nu(gamma)?;
            let direct = nu_oracle(&action, gamma)?;
            if fast != direct {
                return Err(Error::invariant(format!(
                    "fixed-point count mismatch on a random vector over {group}: nu({gamma}) \
                     is {fast} by the class formula but {direct} by orbit counting"
                )));
            }
            checked += 1;
        }
        accepted += 1;
    }
    Ok(checked)
}
