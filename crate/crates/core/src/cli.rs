//! The `root` command: solve one root problem and print its iterates as a
//! table, CSV or JSON.
//!
//! Exit codes: 0 converged, 2 invalid input, 3 no convergence (the partial
//! trace is still printed). Diagnostics go to the error stream only.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::convergence::{analyze, ObservedOrder, PrecisionMode, Reference, StoppingRule};
use crate::error::{Error, Result};
use crate::iteration::{iterate, IterationTrace, RootProblem};
use crate::rational::ExactRational;
use crate::sexagesimal::{from_sexagesimal, to_sexagesimal, SexagesimalNumeral};

pub const EXIT_CONVERGED: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;

/// Prefix marking a base-60 number on the command line, e.g. `sex:1;24,51,10`.
pub const SEXAGESIMAL_PREFIX: &str = "sex:";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    FixedPrecision,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

/// Approximate the m-th root of a positive rational with the Babylonian
/// (Newton) iteration in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "root", version)]
pub struct Args {
    /// Number whose root is sought: 17, 33/8, 4.125 or sex:4;7,30
    #[arg(allow_hyphen_values = true)]
    pub radicand: String,

    /// Root degree m
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub degree: i64,

    /// First approximation x_1 (same formats as the radicand)
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,

    /// Relative residual tolerance, read exactly
    #[arg(long, default_value = "1e-30", allow_hyphen_values = true)]
    pub tol: String,

    /// Maximum number of steps
    #[arg(long = "max-iter", default_value_t = crate::convergence::DEFAULT_MAX_ITER)]
    pub max_iter: usize,

    /// Decimal digits shown; also the grid size in fixed-precision mode
    #[arg(long, default_value_t = 50)]
    pub precision: u32,

    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,

    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,

    /// Add a base-60 column with this many fractional places
    #[arg(long, value_name = "PLACES")]
    pub sexagesimal: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemEcho {
    pub radicand: String,
    pub degree: u32,
    pub x0: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub n: usize,
    pub exact: String,
    pub decimal: String,
    pub residual: String,
    pub sexagesimal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRecord {
    pub converged: bool,
    pub iterations: usize,
    pub observed_order: String,
}

/// Everything the command prints, in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputRecord {
    pub problem: ProblemEcho,
    pub steps: Vec<StepRecord>,
    pub report: ReportRecord,
}

impl OutputRecord {
    pub fn new(
        trace: &IterationTrace,
        converged: bool,
        order: ObservedOrder,
        precision: usize,
        sexagesimal_places: Option<usize>,
    ) -> Self {
        let problem = trace.problem();
        let steps = trace
            .iterates()
            .iter()
            .map(|it| StepRecord {
                n: it.index,
                exact: it.value.to_string(),
                decimal: it.value.decimal_string(precision),
                residual: it.residual.decimal_string(precision),
                sexagesimal: sexagesimal_places.map(|p| to_sexagesimal(&it.value, p).to_string()),
            })
            .collect();
        OutputRecord {
            problem: ProblemEcho {
                radicand: problem.radicand().to_string(),
                degree: problem.degree(),
                x0: problem.initial_guess().to_string(),
            },
            steps,
            report: ReportRecord {
                converged,
                iterations: trace.len(),
                observed_order: order.to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["n", "exact", "decimal", "residual", "sexagesimal"])
            .expect("in-memory write");
        for step in &self.steps {
            let n = step.n.to_string();
            writer
                .write_record([
                    n.as_str(),
                    &step.exact,
                    &step.decimal,
                    &step.residual,
                    step.sexagesimal.as_deref().unwrap_or(""),
                ])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn to_table(&self) -> String {
        let with_sex = self.steps.iter().any(|s| s.sexagesimal.is_some());
        let mut rows: Vec<Vec<&str>> = Vec::with_capacity(self.steps.len() + 1);
        let mut header = vec!["n", "exact", "decimal", "residual"];
        if with_sex {
            header.push("sexagesimal");
        }
        rows.push(header);
        let indices: Vec<String> = self.steps.iter().map(|s| s.n.to_string()).collect();
        for (step, n) in self.steps.iter().zip(&indices) {
            let mut row = vec![n.as_str(), &step.exact, &step.decimal, &step.residual];
            if with_sex {
                row.push(step.sexagesimal.as_deref().unwrap_or(""));
            }
            rows.push(row);
        }
        let columns = rows[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();

        let mut out = String::new();
        for row in &rows {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c + 1 == columns {
                    line.push_str(cell);
                } else {
                    line.push_str(&format!("{cell:<width$}  ", width = widths[c]));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out.push_str(&format!(
            "\nconverged: {}  iterations: {}  observed order: {}\n",
            self.report.converged, self.report.iterations, self.report.observed_order
        ));
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.to_table(),
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Reads a command-line number: integer, fraction, decimal, or `sex:`-prefixed
/// base-60.
pub fn parse_number(s: &str) -> Result<ExactRational> {
    match s.strip_prefix(SEXAGESIMAL_PREFIX) {
        Some(rest) => from_sexagesimal(&rest.parse::<SexagesimalNumeral>()?),
        None => s.parse(),
    }
}

fn build_problem(args: &Args) -> Result<RootProblem> {
    let radicand = parse_number(&args.radicand)?;
    let degree = u32::try_from(args.degree)
        .ok()
        .filter(|&m| m >= 1)
        .ok_or(Error::InvalidDegree(args.degree))?;
    let x0 = args.x0.as_deref().map(parse_number).transpose()?;
    let tol = args.tol.parse::<ExactRational>()?;
    let mode = match args.mode {
        Mode::Exact => PrecisionMode::Exact,
        Mode::FixedPrecision => PrecisionMode::FixedPrecision {
            digits: args.precision,
        },
    };
    let stopping = StoppingRule::new(tol, args.max_iter, mode)?;
    RootProblem::new(radicand, degree, x0, stopping)
}

/// Decimal digits the trace is resolved to: the tolerance's, or the grid's in
/// fixed precision.
fn working_digits(problem: &RootProblem) -> u32 {
    let tol = problem.stopping().tolerance();
    let tol_digits = (-tol.log10_abs()).ceil().max(1.0) as u32;
    match problem.stopping().mode() {
        PrecisionMode::Exact => tol_digits,
        PrecisionMode::FixedPrecision { digits } => tol_digits.max(digits),
    }
}

fn observed_order(trace: &IterationTrace) -> Result<ObservedOrder> {
    let problem = trace.problem();
    if problem.radicand().is_zero() {
        return Ok(ObservedOrder::Undetermined);
    }
    let digits = 3 * working_digits(problem) + 10;
    let reference = Reference::bisect(problem.radicand(), problem.degree(), digits)?;
    Ok(analyze(trace, &reference)?.observed_order)
}

/// Runs the command with `args` (program name first). Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(args) => args,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_CONVERGED;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return EXIT_INVALID_INPUT;
        }
    };

    let problem = match build_problem(&args) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID_INPUT;
        }
    };

    let (trace, failure) = match iterate(&problem) {
        Ok(trace) => (trace, None),
        Err(Error::NonConvergence(trace)) => {
            let message = format!("no convergence after {} iterates", trace.len());
            (*trace, Some(message))
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID_INPUT;
        }
    };

    let order = match observed_order(&trace) {
        Ok(order) => order,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID_INPUT;
        }
    };
    let record = OutputRecord::new(
        &trace,
        trace.converged(),
        order,
        args.precision as usize,
        args.sexagesimal,
    );
    let _ = out.write_all(record.render(args.output).as_bytes());

    match failure {
        None => EXIT_CONVERGED,
        Some(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_NON_CONVERGENCE
        }
    }
}
