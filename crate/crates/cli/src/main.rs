//! `dga`: command-line front end to the DG algebra engine.

mod cache;
mod input;
mod jobs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use cache::Cache;
use input::{parse_document, Document, JobDoc};
use jobs::Overrides;
use report::{render_pretty, run_document, RunOptions, EXIT_INTERNAL, EXIT_VALIDATION};

#[derive(Parser)]
#[command(name = "dga", version, about = "Exact computations with DG algebras over Q and F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reuse results stored under this directory.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Report UNSTABLE(N) instead of comparing with cutoff N + 1.
    #[arg(long)]
    no_stabilize: bool,
    /// Plain-text tables instead of JSON.
    #[arg(long)]
    pretty: bool,
    /// Add wall-clock timing to the report.
    #[arg(long)]
    timing: bool,
}

// Flags mirroring the fields of a job entry.
#[derive(Args, Clone, Default)]
struct JobArgs {
    /// Document supplying named objects (its jobs are ignored).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Field when no input document is given: Q or F<p>.
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    coefficients: Option<String>,
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    module: Option<String>,
    #[arg(long)]
    bimodule: Option<String>,
    /// Coefficients of the point, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    point: Option<Vec<String>>,
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    generators: Option<String>,
    /// Degree range LO HI.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    degrees: Option<Vec<i32>>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i32>,
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    max_poly: Option<usize>,
    /// Leave out the degree -1 generator in `lurie`.
    #[arg(long)]
    without_z: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Run every job of a document.
    Run {
        file: PathBuf,
        /// Worker threads for independent jobs.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Hochschild cohomology HH^n(R, M).
    Hh(JobArgs),
    /// Ext^n between two modules over R.
    Ext(JobArgs),
    /// Derivation cohomology Der^n(R, M).
    Der(JobArgs),
    /// Homotopy group of the mapping space at a map.
    Pi(JobArgs),
    /// Exactness verdicts for a long exact sequence.
    LesCheck(JobArgs),
    /// Unit groups of HH^0 and H^0 over a prime field.
    TheoremA(JobArgs),
    /// Square-zero extension dimension comparison.
    LemmaC(JobArgs),
    /// Dimensions of the free algebra F(X).
    FreeF(JobArgs),
    /// Count both sides of the free-forgetful adjunction.
    AdjunctionCheck(JobArgs),
    /// Quasi-isomorphism check for the bar augmentation.
    BarCheck(JobArgs),
    /// Whether 1⊗1 - 1 generates the cohomology of I(X).
    GenerationCheck(JobArgs),
    /// F(X) → F(S) on distinguished objects.
    Axiom3Smoke(JobArgs),
    /// Homotopy classes out of associative vs commutative sources.
    Lurie(JobArgs),
}

fn fail(code: i32, msg: &str) -> ExitCode {
    eprintln!("dga: {msg}");
    ExitCode::from(code as u8)
}

fn read(path: &PathBuf) -> Result<(Document, Vec<u8>), ExitCode> {
    let bytes = std::fs::read(path).map_err(|e| fail(EXIT_VALIDATION, &format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| fail(EXIT_VALIDATION, "input is not UTF-8"))?;
    let doc = parse_document(&text).map_err(|e| fail(EXIT_VALIDATION, &format!("schema violation {e}")))?;
    Ok((doc, bytes))
}

fn single(op: &str, a: JobArgs) -> Result<(Document, Vec<u8>, Output), ExitCode> {
    let (mut doc, bytes) = match &a.input {
        Some(p) => read(p)?,
        None => (Document { field: Value::String(a.field.clone()), ..Default::default() }, Vec::new()),
    };
    let degrees = match a.degrees.as_deref() {
        Some([lo, hi]) => Some([*lo, *hi]),
        _ => None,
    };
    doc.jobs = vec![JobDoc {
        op: op.to_string(),
        algebra: a.algebra,
        coefficients: a.coefficients,
        source: a.source,
        target: a.target,
        module: a.module,
        bimodule: a.bimodule,
        point: a.point.map(|p| p.into_iter().map(Value::String).collect()),
        map: a.map,
        generators: a.generators,
        degrees,
        n: a.n,
        cutoff: a.cutoff,
        max_len: a.max_len,
        max_poly: a.max_poly,
        stabilize: None,
        with_z: a.without_z.then_some(false),
    }];
    Ok((doc, bytes, a.output))
}

fn execute(doc: Document, bytes: Vec<u8>, jobs: usize, output: Output) -> ExitCode {
    let cache = match &output.cache_dir {
        Some(d) => match Cache::open(d) {
            Ok(c) => Some(c),
            Err(e) => return fail(EXIT_INTERNAL, &format!("cache directory {}: {e}", d.display())),
        },
        None => None,
    };
    let opts = RunOptions {
        jobs,
        cache: cache.as_ref(),
        overrides: Overrides { no_stabilize: output.no_stabilize },
        timing: output.timing,
    };
    let (report, code) = run_document(&doc, &bytes, &opts);
    let text = if output.pretty {
        render_pretty(&report)
    } else {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    };
    match &output.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                return fail(EXIT_INTERNAL, &format!("{}: {e}", p.display()));
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = report.get("error") {
        eprintln!("dga: {}", e["message"].as_str().unwrap_or("invalid input"));
    }
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (op, args) = match cli.command {
        Command::Run { file, jobs, output } => {
            return match read(&file) {
                Ok((doc, bytes)) => execute(doc, bytes, jobs, output),
                Err(code) => code,
            };
        }
        Command::Hh(a) => ("hh", a),
        Command::Ext(a) => ("ext", a),
        Command::Der(a) => ("der", a),
        Command::Pi(a) => ("pi", a),
        Command::LesCheck(a) => ("les-check", a),
        Command::TheoremA(a) => ("theorem-a", a),
        Command::LemmaC(a) => ("lemma-c", a),
        Command::FreeF(a) => ("free-f", a),
        Command::AdjunctionCheck(a) => ("adjunction-check", a),
        Command::BarCheck(a) => ("bar-check", a),
        Command::GenerationCheck(a) => ("generation-check", a),
        Command::Axiom3Smoke(a) => ("axiom3-smoke", a),
        Command::Lurie(a) => ("lurie", a),
    };
    match single(op, args) {
        Ok((doc, bytes, output)) => execute(doc, bytes, 1, output),
        Err(code) => code,
    }
}
