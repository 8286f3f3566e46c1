use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use negabent::bridge::Source;
use negabent::cli::{self, Output};
use negabent::field::FieldSpec;
use negabent::spectra::Transform;
use negabent::suites::{Suite, SuiteParams};

#[derive(Parser)]
#[command(name = "negabent", version, about = "Construct and verify bent and negabent Boolean functions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for randomized searches and sampled suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the artifact (table file or CSV) here
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Include wall-clock time in the report
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumArg {
    Walsh,
    Nega,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, weight and spectral verdicts of a truth-table file
    Analyze {
        path: PathBuf,
        /// Expected field of the table
        #[arg(long)]
        field: Option<FieldSpec>,
        /// Export one spectrum as CSV
        #[arg(long, value_enum)]
        spectra: Option<SpectrumArg>,
    },
    /// Classify every Tr(l x^(2^k+1)) over a field
    SweepMonomial {
        #[arg(long)]
        field: FieldSpec,
        #[arg(long)]
        k: u32,
    },
    /// Build Tr(x pi(y) + h(y)) on GF(2^t) x GF(2^t)
    MmBuild {
        #[arg(long, conflicts_with = "field", required_unless_present = "field")]
        t: Option<u32>,
        #[arg(long)]
        field: Option<FieldSpec>,
        /// Terms such as "2*x^1,1*x^3"
        #[arg(long)]
        pi: String,
        #[arg(long, default_value = "0")]
        h: String,
    },
    /// Check whether pi is a complete mapping
    CmVerify {
        #[arg(long, conflicts_with = "field", required_unless_present = "field")]
        t: Option<u32>,
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        pi: String,
    },
    /// Bent-negabent function of degree n/2
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "search")]
        source: Source,
        /// Override h over GF(2^(n/2))
        #[arg(long)]
        h: Option<String>,
    },
    /// Run a verification suite
    Verify {
        /// monomial-grid, mm, transport, construction or field-core
        suite: Suite,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        t_max: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        exhaustive_quadratics: bool,
    },
}

fn field_or_default(t: Option<u32>, field: Option<FieldSpec>) -> Result<FieldSpec> {
    match field {
        Some(f) => Ok(f),
        None => Ok(FieldSpec::default_for(t.context("either --t or --field is required")?)?),
    }
}

fn run(cli: Cli, argv: Vec<String>) -> Result<(Output, Format)> {
    let c = &cli.common;
    Ok(match cli.command {
        Command::Analyze { path, field, spectra } => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let spectrum = spectra.map(|s| match s {
                SpectrumArg::Walsh => Transform::Walsh,
                SpectrumArg::Nega => Transform::Nega,
            });
            let out = cli::analyze(argv, &path.display().to_string(), &text, field, spectrum)?;
            (out, c.format.unwrap_or(Format::Json))
        }
        Command::SweepMonomial { field, k } => {
            (cli::sweep_monomial(argv, field, k)?, c.format.unwrap_or(Format::Csv))
        }
        Command::MmBuild { t, field, pi, h } => {
            (cli::mm_build_cmd(argv, field_or_default(t, field)?, &pi, &h)?, c.format.unwrap_or(Format::Json))
        }
        Command::CmVerify { t, field, pi } => {
            (cli::cm_verify(argv, field_or_default(t, field)?, &pi)?, c.format.unwrap_or(Format::Json))
        }
        Command::Construct { n, source, h } => {
            (cli::construct(argv, n, source, c.seed, h.as_deref())?, c.format.unwrap_or(Format::Json))
        }
        Command::Verify { suite, n, n_max, t_max, samples, exhaustive_quadratics } => {
            let params = SuiteParams { n, n_max, t_max, samples, exhaustive_quadratics, seed: c.seed };
            (cli::verify(argv, suite, &params)?, c.format.unwrap_or(Format::Json))
        }
    })
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn print_stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// With `--out` the artifact goes to the file and the report to stdout.
/// Without it, `--format csv` prints the artifact and `json` the report
/// (with any table artifact embedded).
fn emit(mut out: Output, format: Format, path: Option<&PathBuf>) -> Result<()> {
    if let Some(p) = path {
        let artifact = out.artifact.as_deref().context("this command produces no file output")?;
        std::fs::write(p, artifact).with_context(|| format!("writing {}", p.display()))?;
        return print_stdout(&format!("{}\n", out.report.to_json()));
    }
    match format {
        Format::Csv => {
            let artifact = out.artifact.context("no CSV output for this command")?;
            print_stdout(&artifact)?;
        }
        Format::Json => {
            if let Some(text) = out.artifact.take().filter(|a| a.starts_with("btf1")) {
                let data = out.report.data.get_or_insert_with(|| serde_json::json!({}));
                data["table"] = serde_json::Value::String(text);
            }
            print_stdout(&format!("{}\n", out.report.to_json()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let timing = cli.common.timing;
    let path = cli.common.out.clone();
    let start = Instant::now();
    let result = run(cli, argv).and_then(|(mut out, format)| {
        if timing {
            out.report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        let passed = out.report.passed;
        emit(out, format, path.as_ref())?;
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
