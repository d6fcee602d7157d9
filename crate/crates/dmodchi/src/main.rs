use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use dmodchi::cli::{self, IdealSource, ModuleSelector, OutputFormat, RunConfig};
use dmodchi::exactlin::FieldCfg;
use dmodchi::monomial::VarSet;

/// Exact Koszul and de Rham homology of graded local cohomology modules of
/// squarefree monomial ideals, with Euler characteristic verification.
#[derive(Parser, Debug)]
#[command(name = "dmodchi", version, about)]
struct Args {
    /// Number of variables v = n + 1 of the polynomial ring K[x0..x{v-1}].
    #[arg(long, visible_alias = "nvars")]
    vars: usize,

    /// Inline ideal: comma-separated monomial generators like "x0*x1, x2"
    /// (empty string or "0" is the zero ideal).
    #[arg(long, conflicts_with_all = ["ideal_file", "corpus"])]
    ideal: Option<String>,

    /// File with one ideal per line in the same syntax.
    #[arg(long, conflicts_with_all = ["ideal", "corpus"])]
    ideal_file: Option<PathBuf>,

    /// Sweep the whole corpus: every squarefree monomial ideal on v
    /// variables (v <= 4 exhaustive; v = 5 uses a fixed-seed sample).
    #[arg(long, conflicts_with_all = ["ideal", "ideal_file"])]
    corpus: bool,

    /// Sample size for corpus mode (defaults to the full corpus for
    /// v <= 4 and to 100 for v = 5).
    #[arg(long)]
    sample: Option<usize>,

    /// Restrict to one cohomological degree j.
    #[arg(long, conflicts_with = "localize")]
    j: Option<usize>,

    /// Verify the localization R_(X_T) instead of local cohomology;
    /// T is a comma-separated list of variable indices, e.g. "0,2".
    #[arg(long)]
    localize: Option<String>,

    /// Field: "rational" (default) or a prime p for F_p (cross-check
    /// only; the rational field is the verdict field).
    #[arg(long, default_value = "rational")]
    field: String,

    /// Run the brute-force box oracle with this radius (>= 4).
    #[arg(long)]
    oracle: Option<i64>,

    /// Raise the oracle size cap (cells = v * (2B+1)^v).
    #[arg(long)]
    oracle_cap: Option<usize>,

    /// Output format: table, json, or csv.
    #[arg(long, default_value = "table")]
    format: String,

    /// Write the report to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Reject non-squarefree generators instead of radicalizing them.
    #[arg(long)]
    strict_squarefree: bool,
}

fn parse_args(args: Args) -> Result<RunConfig, String> {
    let source = if args.corpus {
        IdealSource::Corpus {
            sample: args.sample,
        }
    } else if let Some(path) = args.ideal_file {
        IdealSource::File(path)
    } else if let Some(text) = args.ideal {
        IdealSource::Inline(text)
    } else {
        return Err("exactly one of --ideal, --ideal-file, --corpus is required".to_string());
    };
    if args.sample.is_some() && !matches!(source, IdealSource::Corpus { .. }) {
        return Err("--sample only applies to --corpus".to_string());
    }
    let selector = if let Some(spec) = args.localize {
        let mut t = VarSet::EMPTY;
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let i: usize = part
                .parse()
                .map_err(|_| format!("bad variable index '{part}' in --localize"))?;
            if i >= args.vars {
                return Err(format!(
                    "--localize index {i} out of range for {} vars",
                    args.vars
                ));
            }
            t = t.insert(i);
        }
        ModuleSelector::Localization(t)
    } else if let Some(j) = args.j {
        ModuleSelector::Degree(j)
    } else {
        ModuleSelector::AllDegrees
    };
    let field = match args.field.as_str() {
        "rational" => FieldCfg::Rational,
        other => {
            let p: u64 = other
                .parse()
                .map_err(|_| format!("--field must be 'rational' or a prime, got '{other}'"))?;
            FieldCfg::Prime(p)
        }
    };
    let format = match args.format.as_str() {
        "table" => OutputFormat::Table,
        "json" => OutputFormat::Json,
        "csv" => OutputFormat::Csv,
        other => return Err(format!("unknown format '{other}'")),
    };
    let workers = match std::env::var("DMODCHI_WORKERS") {
        Err(_) => None,
        Ok(v) => Some(
            v.parse::<usize>()
                .map_err(|_| format!("DMODCHI_WORKERS must be a positive integer, got '{v}'"))?,
        ),
    };
    Ok(RunConfig {
        nvars: args.vars,
        source,
        selector,
        field,
        oracle_radius: args.oracle,
        oracle_cap: args.oracle_cap,
        format,
        output: args.output,
        strict_squarefree: args.strict_squarefree,
        workers,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = match parse_args(args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match cli::run(&config) {
        Ok(outcome) => {
            let to_stdout = config.output.is_none();
            if let Some(path) = &config.output {
                if let Err(e) = std::fs::write(path, &outcome.rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.rendered);
            }
            if let Some(line) = &outcome.verified_line {
                // The table renderer already ends with the VERIFIED line;
                // keep machine-readable stdout formats clean of it.
                let table_to_stdout = to_stdout && matches!(config.format, OutputFormat::Table);
                if !table_to_stdout {
                    if to_stdout {
                        eprintln!("{line}");
                    } else {
                        println!("{line}");
                    }
                }
            }
            let _ = std::io::stdout().flush();
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
