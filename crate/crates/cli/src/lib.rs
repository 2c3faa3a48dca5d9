//! The `frontier-pp` command line: `fmt`, `bench` and `check-factory`.
//!
//! [`run`] takes its streams as arguments so the commands can be driven
//! in-process by tests.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use frontier_pp::cost::{check_factory_validity, FactoryName, InvalidMaxLex, Linear, MaxOverflow, Quadratic};
use frontier_pp::formatters::{json_to_doc, parse_doc_ir, sexp_to_doc};
use frontier_pp::workloads::{generate, Family};
use frontier_pp::{print, Arena, CostFactory, Layout, PrintError, ResolverConfig, StyleConfig, ValidityReport};

pub const EXIT_OK: i32 = 0;
/// Bad arguments, unreadable or malformed input.
pub const EXIT_INPUT: i32 = 1;
/// The document has no layout.
pub const EXIT_NO_LAYOUT: i32 = 2;
/// The factory checker found a contract violation.
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "frontier-pp", version, about = "Optimal pretty printer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Format a JSON, S-expression or document IR file.
    Fmt(FmtArgs),
    /// Print a generated benchmark document and report timings.
    Bench(BenchArgs),
    /// Randomly test a cost factory against its contracts.
    CheckFactory(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Syntax {
    Json,
    Sexp,
    Docir,
}

#[derive(Args, Debug)]
struct PrintOpts {
    #[arg(long, default_value_t = 80)]
    page_width: usize,
    /// Columns and indentation explored before results are tainted.
    #[arg(long, default_value_t = 100)]
    computation_width: usize,
    /// linear, quadratic or max.
    #[arg(long, default_value = "quadratic")]
    factory: String,
}

#[derive(Args, Debug)]
struct FmtArgs {
    #[arg(long, value_enum)]
    syntax: Syntax,
    #[command(flatten)]
    print: PrintOpts,
    /// Write `tainted: yes|no` to standard error.
    #[arg(long)]
    report_tainted: bool,
    /// JSON member indentation.
    #[arg(long, default_value_t = 2)]
    indent: usize,
    /// Also allow hanging S-expression arguments.
    #[arg(long)]
    sexp_hang: bool,
    /// Input file; standard input when omitted.
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// concat, fillsep, flatten, sexpfull, randfit, randover or json.
    family: String,
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    print: PrintOpts,
    /// Timed repetitions; the median is reported.
    #[arg(long, default_value_t = 3)]
    runs: usize,
    /// Also write the printed layout to this file.
    #[arg(long)]
    layout_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// linear, quadratic, max or invalid-maxlex.
    name: String,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 80)]
    page_width: usize,
}

/// Binds `$f` to the named factory and evaluates `$body`.
macro_rules! with_factory {
    ($name:expr, $width:expr, |$f:ident| $body:expr) => {
        match $name {
            FactoryName::Linear => {
                let $f = Linear { page_width: $width };
                $body
            }
            FactoryName::Quadratic => {
                let $f = Quadratic { page_width: $width };
                $body
            }
            FactoryName::Max => {
                let $f = MaxOverflow { page_width: $width };
                $body
            }
            FactoryName::InvalidMaxLex => {
                let $f = InvalidMaxLex { page_width: $width };
                $body
            }
        }
    };
}

/// Runs one command line (including the program name) and returns its exit
/// status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_stdout =
                matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if to_stdout {
                let _ = stdout.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(text.as_bytes());
            return EXIT_INPUT;
        }
    };
    let result = match cli.command {
        Command::Fmt(a) => cmd_fmt(&a, stdin, stdout, stderr),
        Command::Bench(a) => cmd_bench(&a, stdout),
        Command::CheckFactory(a) => cmd_check_factory(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

fn input_error(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, msg.to_string())
}

fn printing_factory(name: &str) -> Result<FactoryName, Failure> {
    match name.parse::<FactoryName>().map_err(input_error)? {
        FactoryName::InvalidMaxLex => Err(input_error("invalid-maxlex cannot be used for printing")),
        valid => Ok(valid),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| input_error(format!("cannot write output: {e}")))
}

fn cmd_fmt(a: &FmtArgs, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let factory = printing_factory(&a.print.factory)?;
    let src = match &a.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| input_error(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    let style = StyleConfig { indent_width: a.indent, sexp_hang: a.sexp_hang, ..StyleConfig::default() };
    with_factory!(factory, a.print.page_width, |f| {
        let mut arena = Arena::new();
        let doc = match a.syntax {
            Syntax::Json => json_to_doc(&src, &style, &mut arena),
            Syntax::Sexp => sexp_to_doc(&src, &style, &mut arena),
            Syntax::Docir => parse_doc_ir(&src, &mut arena),
        }
        .map_err(input_error)?;
        let cfg = ResolverConfig::new(f).with_width_limit(a.print.computation_width);
        match print(&arena, doc, &cfg) {
            Ok(out) => {
                write_out(stdout, &out.layout.to_text())?;
                write_out(stdout, "\n")?;
                if a.report_tainted {
                    let _ = writeln!(stderr, "tainted: {}", yes_no(out.tainted));
                }
                Ok(EXIT_OK)
            }
            Err(e @ PrintError::NoLayout) => Err(Failure(EXIT_NO_LAYOUT, e.to_string())),
        }
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// One benchmark configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchSpec {
    pub family: Family,
    pub size: usize,
    pub seed: u64,
    pub page_width: usize,
    pub width_limit: usize,
    pub factory: FactoryName,
    pub runs: usize,
}

impl BenchSpec {
    pub fn new(family: Family, size: usize) -> Self {
        BenchSpec { family, size, seed: 0, page_width: 80, width_limit: 100, factory: FactoryName::Quadratic, runs: 3 }
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub spec: BenchSpec,
    pub nodes: usize,
    pub filter_met: Option<bool>,
    pub generation: Duration,
    /// Wall time of each print, in run order.
    pub runs: Vec<Duration>,
    pub layout: Layout,
    pub tainted: bool,
    /// The cost, rendered with `Debug`.
    pub cost: String,
}

impl BenchReport {
    pub fn median(&self) -> Duration {
        let mut sorted = self.runs.clone();
        sorted.sort();
        sorted[sorted.len() / 2]
    }

    /// `key: value` lines. Only `gen_ms` and `time_ms` vary between reruns.
    pub fn render(&self) -> String {
        let s = &self.spec;
        let filter = match self.filter_met {
            Some(b) => yes_no(b),
            None => "n/a",
        };
        let ms = |d: Duration| format!("{:.3}", d.as_secs_f64() * 1e3);
        format!(
            "family: {}\nsize: {}\nseed: {}\npage_width: {}\ncomputation_width: {}\nfactory: {}\nnodes: {}\nfilter_met: {}\ngen_ms: {}\ntime_ms: {}\nlines: {}\ntainted: {}\ncost: {}\n",
            s.family,
            s.size,
            s.seed,
            s.page_width,
            s.width_limit,
            s.factory,
            self.nodes,
            filter,
            ms(self.generation),
            ms(self.median()),
            self.layout.line_count(),
            yes_no(self.tainted),
            self.cost,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BenchError {
    Workload(String),
    NoRuns,
    NoLayout,
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::Workload(msg) => f.write_str(msg),
            BenchError::NoRuns => f.write_str("at least one run is required"),
            BenchError::NoLayout => f.write_str("generated document has no layout"),
        }
    }
}

impl std::error::Error for BenchError {}

/// Generates the workload once, then times `spec.runs` independent prints.
pub fn run_bench(spec: &BenchSpec) -> Result<BenchReport, BenchError> {
    if spec.runs == 0 {
        return Err(BenchError::NoRuns);
    }
    with_factory!(spec.factory, spec.page_width, |f| bench_with(spec, f))
}

fn bench_with<F: CostFactory>(spec: &BenchSpec, f: F) -> Result<BenchReport, BenchError> {
    let start = Instant::now();
    let w = generate::<F::Cost>(spec.family, spec.size, spec.seed, spec.page_width)
        .map_err(|e| BenchError::Workload(e.to_string()))?;
    let generation = start.elapsed();
    let cfg = ResolverConfig::new(f).with_width_limit(spec.width_limit);
    let mut runs = Vec::with_capacity(spec.runs);
    let mut last = None;
    for _ in 0..spec.runs {
        let start = Instant::now();
        let out = print(&w.arena, w.doc, &cfg).map_err(|_| BenchError::NoLayout)?;
        runs.push(start.elapsed());
        last = Some(out);
    }
    let out = last.expect("at least one run");
    Ok(BenchReport {
        spec: spec.clone(),
        nodes: w.arena.len(),
        filter_met: w.filter_met,
        generation,
        runs,
        layout: out.layout,
        tainted: out.tainted,
        cost: format!("{:?}", out.cost),
    })
}

fn cmd_bench(a: &BenchArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let spec = BenchSpec {
        family: a.family.parse().map_err(input_error)?,
        size: a.size,
        seed: a.seed,
        page_width: a.print.page_width,
        width_limit: a.print.computation_width,
        factory: printing_factory(&a.print.factory)?,
        runs: a.runs,
    };
    let report = run_bench(&spec).map_err(|e| match e {
        BenchError::NoLayout => Failure(EXIT_NO_LAYOUT, e.to_string()),
        _ => input_error(e),
    })?;
    if let Some(path) = &a.layout_out {
        let mut text = report.layout.to_text();
        text.push('\n');
        std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    write_out(stdout, &report.render())?;
    Ok(EXIT_OK)
}

fn cmd_check_factory(a: &CheckArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let name: FactoryName = a.name.parse().map_err(input_error)?;
    let report =
        with_factory!(name, a.page_width, |f| check_factory_validity(&f, a.trials, a.seed)).map_err(input_error)?;
    let (text, code) = match report {
        ValidityReport::Pass { trials } => (format!("factory: {name}\nresult: pass\ntrials: {trials}\n"), EXIT_OK),
        ValidityReport::Counterexample(c) => (
            format!(
                "factory: {name}\nresult: counterexample\ncontract: {}\nwitnesses: {}\n",
                c.contract,
                c.witnesses.join(" ")
            ),
            EXIT_COUNTEREXAMPLE,
        ),
    };
    write_out(stdout, &text)?;
    Ok(code)
}
