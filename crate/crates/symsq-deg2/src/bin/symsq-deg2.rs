//! Command-line surface over the classification library.
//!
//! Subcommands: `classify`, `reducible-search`, `genvec search`,
//! `fixed-points`, `verify`, `bn-check`. All flags are long-form. Reports
//! go to stdout (or `--output`); timing, warnings, and diagnostics go to
//! stderr. Exit codes: 0 success, 1 verification diff or truncated search,
//! 2 configuration or domain error, 3 internal invariant violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use symsq_deg2::action::{nu_oracle, CurveAction};
use symsq_deg2::brill_noether::degree_bound;
use symsq_deg2::classify::reducible_low_order_diagnostics;
use symsq_deg2::error::{Error, Result};
use symsq_deg2::fixtures::{
    fixture_tables, printed_reference, verify_family, verify_printed_row, PrintedRowReport,
    VerificationReport,
};
use symsq_deg2::genvec::{search_vectors, GeneratingVector, Signature};
use symsq_deg2::group::{GroupDescriptor, GroupElement};
use symsq_deg2::report::{
    emit, fixture_file_bytes, random_vector_cross_check, run_classify, OutputFormat,
    ReportDocument, RunConfig, SCHEMA,
};

/// Environment variable naming a JSON file with default run configuration.
const CONFIG_ENV: &str = "SYMSQ_DEG2_CONFIG";

#[derive(Parser)]
#[command(
    name = "symsq-deg2",
    version,
    about = "Exact classification of positive degree-two curves in a symmetric square"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full classification within bounds and emit the report.
    Classify(ClassifyArgs),
    /// Scan cyclic actions for reducible pairs and emit the report.
    ReducibleSearch(ReducibleSearchArgs),
    /// Generating-vector utilities.
    Genvec {
        #[command(subcommand)]
        command: GenvecCommand,
    },
    /// Fixed-point count of one element under one action, cross-checked
    /// against the independent orbit-counting route.
    FixedPoints(FixedPointsArgs),
    /// Verify the shipped reference tables by full recomputation.
    Verify(VerifyArgs),
    /// Brill-Noether style degree bound for curves on the symmetric
    /// square.
    BnCheck(BnCheckArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Smallest half rotation order scanned.
    #[arg(long)]
    l_min: Option<u32>,
    /// Largest half rotation order scanned.
    #[arg(long)]
    l_max: Option<u32>,
    /// Largest cyclic group order scanned for reducible pairs.
    #[arg(long)]
    m_max: Option<u32>,
    /// Largest s parameter instantiated for the parametric families.
    #[arg(long)]
    s_max: Option<u32>,
    /// Largest k parameter instantiated for the parametric families.
    #[arg(long)]
    k_max: Option<u32>,
    /// Node and class cap for vector enumeration.
    #[arg(long)]
    vector_cap: Option<usize>,
    /// Re-derive every record and cross-check both fixed-point routes.
    #[arg(long)]
    verify: bool,
    /// Output format: json, csv, or markdown.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Seed echoed into the report for randomized sampling.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ReducibleSearchArgs {
    /// Largest cyclic group order scanned.
    #[arg(long, default_value_t = 20)]
    m_max: u32,
    /// Largest covering genus scanned.
    #[arg(long, default_value_t = 10)]
    g_max: u32,
    /// Output format: json, csv, or markdown.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenvecCommand {
    /// Enumerate generating-vector classes with a given signature.
    Search(GenvecSearchArgs),
}

#[derive(Args)]
struct GenvecSearchArgs {
    /// Group, e.g. D10 (dihedral of order 20) or Z10 (cyclic).
    #[arg(long)]
    group: String,
    /// Signature, e.g. "(0; 10,2,2,2)".
    #[arg(long)]
    signature: String,
    /// Cap on enumerated classes.
    #[arg(long, default_value_t = 10_000)]
    cap: usize,
}

#[derive(Args)]
struct FixedPointsArgs {
    /// Group, e.g. D10 or Z10.
    #[arg(long)]
    group: String,
    /// Branch entries of the vector, e.g. "r, r^5, r^4*f, f".
    #[arg(long)]
    vector: String,
    /// Element whose fixed points are counted, e.g. "r^5".
    #[arg(long)]
    element: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify the shipped family tables and printed reference rows.
    #[arg(long)]
    fixtures: bool,
    /// Also cross-check this many random vectors against the
    /// orbit-counting oracle.
    #[arg(long)]
    samples: Option<u32>,
    /// Seed for random cross-check sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Export the canonical tables as a versioned data file.
    #[arg(long)]
    export: Option<PathBuf>,
    /// Write the verification report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BnCheckArgs {
    /// Base curve genus (at least 4).
    #[arg(long)]
    g: u32,
    /// Self-intersection of the degree-two curve.
    #[arg(long, default_value_t = 1)]
    bsq: i64,
    /// Intersection with the diagonal.
    #[arg(long, default_value_t = 0)]
    delta: u32,
}

/// Verification output of `verify --fixtures`.
#[derive(Serialize)]
struct VerifyDocument {
    schema: String,
    tool_version: String,
    family_reports: Vec<VerificationReport>,
    printed_row_reports: Vec<PrintedRowReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    random_elements_checked: Option<u64>,
}

fn io_error(path: &Path, err: std::io::Error) -> Error {
    Error::Config {
        detail: format!("cannot write {}: {err}", path.display()),
    }
}

fn write_payload(path: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(path) => fs::write(path, bytes).map_err(|err| io_error(path, err)),
        None => {
            print!("{}", String::from_utf8_lossy(bytes));
            Ok(())
        }
    }
}

fn default_config() -> Result<RunConfig> {
    match std::env::var_os(CONFIG_ENV) {
        Some(path) => {
            let path = PathBuf::from(path);
            let text = fs::read_to_string(&path).map_err(|err| Error::Config {
                detail: format!("cannot read config file {}: {err}", path.display()),
            })?;
            RunConfig::from_json_str(&text)
        }
        None => Ok(RunConfig::default()),
    }
}

fn classify_command(args: ClassifyArgs) -> Result<i32> {
    let mut cfg = default_config()?;
    if let Some(l_min) = args.l_min {
        cfg.l_min = l_min;
    }
    if let Some(l_max) = args.l_max {
        cfg.l_max = l_max;
    }
    if let Some(m_max) = args.m_max {
        cfg.m_max = m_max;
    }
    if let Some(s_max) = args.s_max {
        cfg.s_max = s_max;
    }
    if let Some(k_max) = args.k_max {
        cfg.k_max = k_max;
    }
    if let Some(vector_cap) = args.vector_cap {
        cfg.vector_cap = vector_cap;
    }
    if args.verify {
        cfg.verify_mode = true;
    }
    if let Some(format) = &args.format {
        cfg.output_format = format.parse()?;
    }
    if let Some(output) = args.output {
        cfg.output_path = Some(output);
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }

    let started = Instant::now();
    let doc = run_classify(&cfg)?;
    let bytes = emit(&doc, cfg.output_format);
    write_payload(&cfg.output_path, &bytes)?;
    eprintln!(
        "classified {} in {:.1?}",
        count_families(doc.records.len()),
        started.elapsed()
    );
    report_exit(&doc)
}

fn count_families(count: usize) -> String {
    if count == 1 {
        "1 family".to_string()
    } else {
        format!("{count} families")
    }
}

fn report_exit(doc: &ReportDocument) -> Result<i32> {
    let mut code = 0;
    if doc.truncated {
        eprintln!("warning: a search hit its cap before exhausting the space");
        code = 1;
    }
    if !doc.verification_clean() {
        eprintln!("warning: verification reported differences");
        code = 1;
    }
    Ok(code)
}

fn reducible_search_command(args: ReducibleSearchArgs) -> Result<i32> {
    let format: OutputFormat = args.format.parse()?;
    let started = Instant::now();
    let search = symsq_deg2::classify::reducible_search(args.m_max, args.g_max)?;

    if args.m_max >= 3 && args.g_max >= 2 {
        let diagnostics = reducible_low_order_diagnostics(args.m_max.min(7), args.g_max)?;
        for hit in &diagnostics.candidates {
            eprintln!(
                "diagnostic: below the classified order range, order {} signature {} alpha {} \
                 has nu(alpha) = {}, nu(alpha^2) = {}, g = {}, Bsq = {}",
                hit.group.order(),
                hit.signature,
                hit.alpha,
                hit.nu_alpha,
                hit.nu_alpha_sq,
                hit.g,
                hit.b_sq
            );
        }
    }

    let cfg = RunConfig {
        m_max: args.m_max,
        output_format: format,
        ..RunConfig::default()
    };
    let doc = ReportDocument {
        schema: SCHEMA.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg,
        partial: true,
        truncated: search.truncated,
        records: search.families,
        verification: Vec::new(),
    };
    let bytes = emit(&doc, format);
    write_payload(&args.output, &bytes)?;
    eprintln!(
        "reducible scan found {} in {:.1?}",
        count_families(doc.records.len()),
        started.elapsed()
    );
    report_exit(&doc)
}

fn genvec_search_command(args: GenvecSearchArgs) -> Result<i32> {
    let group: GroupDescriptor = args.group.parse()?;
    let signature: Signature = args.signature.parse()?;
    let search = search_vectors(group, &signature, args.cap)?;
    for vector in &search.vectors {
        println!("{vector}");
    }
    eprintln!(
        "{} class{} for {} with signature {}",
        search.vectors.len(),
        if search.vectors.len() == 1 { "" } else { "es" },
        group,
        signature
    );
    if search.truncated {
        eprintln!("warning: enumeration stopped at the cap of {}", args.cap);
        return Ok(1);
    }
    Ok(0)
}

fn fixed_points_command(args: FixedPointsArgs) -> Result<i32> {
    let group: GroupDescriptor = args.group.parse()?;
    let vector = GeneratingVector::parse_branch(group, &args.vector)?;
    let action = CurveAction::new(vector)?;
    let element: GroupElement = args.element.parse()?;
    let fast = action.nu(element)?;
    let direct = nu_oracle(&action, element)?;
    if fast != direct {
        return Err(Error::invariant(format!(
            "nu({element}) is {fast} by the class formula but {direct} by orbit counting"
        )));
    }
    println!("{fast}");
    eprintln!(
        "nu({element}) = {fast} on the genus-{} covering; both counting routes agree",
        action.covering_genus()
    );
    Ok(0)
}

fn verify_command(args: VerifyArgs) -> Result<i32> {
    if !args.fixtures {
        return Err(Error::Config {
            detail: "nothing to verify; pass --fixtures".to_string(),
        });
    }
    let started = Instant::now();
    let records = fixture_tables()?;
    let family_reports: Vec<VerificationReport> =
        records.iter().map(verify_family).collect::<Result<_>>()?;
    let printed_row_reports: Vec<PrintedRowReport> = printed_reference()
        .iter()
        .map(|row| verify_printed_row(row, &records))
        .collect::<Result<_>>()?;
    let random_elements_checked = match args.samples {
        Some(samples) => Some(random_vector_cross_check(args.seed, samples, 12, 8)?),
        None => None,
    };

    if let Some(path) = &args.export {
        fs::write(path, fixture_file_bytes()?).map_err(|err| io_error(path, err))?;
        eprintln!("exported canonical tables to {}", path.display());
    }

    let doc = VerifyDocument {
        schema: SCHEMA.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        family_reports,
        printed_row_reports,
        random_elements_checked,
    };
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("verify documents always serialize");
    bytes.push(b'\n');
    write_payload(&args.output, &bytes)?;

    let dirty_families: Vec<&str> = doc
        .family_reports
        .iter()
        .filter(|report| !report.diffs.is_empty())
        .map(|report| report.label.as_str())
        .collect();
    let defect_rows = doc
        .printed_row_reports
        .iter()
        .filter(|report| !report.clean())
        .count();
    eprintln!(
        "verified {} records ({} printed rows with reported defects) in {:.1?}",
        doc.family_reports.len(),
        defect_rows,
        started.elapsed()
    );
    if dirty_families.is_empty() {
        Ok(0)
    } else {
        eprintln!(
            "warning: stored records disagree with recomputation: {}",
            dirty_families.join(", ")
        );
        Ok(1)
    }
}

fn bn_check_command(args: BnCheckArgs) -> Result<i32> {
    let bound = degree_bound(args.g, args.bsq, args.delta)?;
    println!("{bound}");
    eprintln!(
        "largest degree d with h^0 forced below the Brill-Noether wall: genus {}, Bsq {}, \
         diagonal intersection {}",
        args.g, args.bsq, args.delta
    );
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Classify(args) => classify_command(args),
        Command::ReducibleSearch(args) => reducible_search_command(args),
        Command::Genvec { command } => match command {
            GenvecCommand::Search(args) => genvec_search_command(args),
        },
        Command::FixedPoints(args) => fixed_points_command(args),
        Command::Verify(args) => verify_command(args),
        Command::BnCheck(args) => bn_check_command(args),
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
