//! Command-line front end. `run` returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::distance;
use crate::equienergetic::{self, FamilyCase, Side, DEFAULT_ENERGY_TOL, DEFAULT_MAX_N};
use crate::error::{Error, Result};
use crate::expr::{self, Value};
use crate::numlin::{self, format_sig, Comparison, SpectrumJson, DEFAULT_COMPARE_TOL};
use crate::theory::{closed_form_spectrum, TheoremRegistry};
use crate::transforms::BlockedGraph;
use crate::verify::{select_theorem, verify};

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about = "Distance spectra of double joins of merged subdivisions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Numeric,
    Closed,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression and export the graph as JSON.
    Graph {
        expr: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the distance matrix as CSV.
        #[arg(long)]
        distances: Option<PathBuf>,
    },
    /// Distance spectrum, numeric and/or closed form.
    Spectrum {
        expr: String,
        #[arg(long, value_enum, default_value_t = Method::Numeric)]
        method: Method,
        #[arg(long)]
        json: bool,
        /// Force a closed form by name instead of matching the construction.
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long, default_value_t = DEFAULT_COMPARE_TOL)]
        tol: f64,
    },
    /// Distance energy to 10 significant digits.
    Energy { expr: String },
    /// Template check and closed form versus numeric comparison.
    Verify {
        expr: String,
        #[arg(long, default_value_t = DEFAULT_COMPARE_TOL)]
        tol: f64,
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and check an equienergetic family over partitions of N.
    Families {
        #[arg(long)]
        case: String,
        #[arg(long)]
        g: String,
        /// H1 kind for cases ii and iv, H2 kind for case iii.
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        vary: String,
        #[arg(long)]
        fixed: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ENERGY_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// `SPECTRA_MAX_N`, or the default cap when unset.
pub fn max_n_from_env() -> Result<usize> {
    match std::env::var("SPECTRA_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("SPECTRA_MAX_N must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn blocked(value: Value, what: &str) -> Result<BlockedGraph> {
    match value {
        Value::Blocked(bg) => Ok(bg),
        _ => Err(Error::NoClosedForm(format!("{what} needs a djoin(...) expression"))),
    }
}

fn spectrum_lines(values: &[f64], labels: &[String]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        match labels.get(i) {
            Some(l) => out.push_str(&format!("{}\t{l}\n", format_sig(*v, 12))),
            None => out.push_str(&format!("{}\n", format_sig(*v, 12))),
        }
    }
    out
}

#[derive(Serialize)]
struct BothJson {
    numeric: SpectrumJson,
    closed_form: SpectrumJson,
    comparison: Comparison,
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    let registry = TheoremRegistry::standard();
    match cmd {
        Command::Graph { expr, out: file, distances } => {
            let value = expr::parse(&expr)?.eval()?;
            let json = match &value {
                Value::Blocked(bg) => to_json(&bg.to_json_value())?,
                v => to_json(&v.graph().to_json_value())?,
            };
            if let Some(path) = distances {
                write_file(&path, &distance::distance_matrix(value.graph())?.to_csv())?;
            }
            match file {
                Some(path) => write_file(&path, &json)?,
                None => out.write_all(json.as_bytes())?,
            }
        }
        Command::Spectrum { expr, method, json, theorem, tol } => {
            let value = expr::parse(&expr)?.eval()?;
            let numeric = || distance::distance_spectrum(value.graph());
            let closed = || -> Result<numlin::Spectrum> {
                let bg = blocked(value.clone(), "the closed form")?;
                let t = select_theorem(&registry, &bg, theorem.as_deref())?;
                closed_form_spectrum(&bg, t)
            };
            let mut gap_error = None;
            let text = match method {
                Method::Numeric | Method::Closed => {
                    let s = if method == Method::Numeric { numeric()? } else { closed()? };
                    let sj = s.to_json();
                    if json {
                        to_json(&sj)?
                    } else {
                        spectrum_lines(&sj.values, &sj.labels)
                    }
                }
                Method::Both => {
                    let (c, n) = (closed()?, numeric()?);
                    let cmp = numlin::compare_spectra(&c, &n, tol)?;
                    if !cmp.equal {
                        gap_error = Some(Error::Verification(format!(
                            "max gap {:e} exceeds {tol:e}",
                            cmp.max_gap
                        )));
                    }
                    let both = BothJson {
                        numeric: n.to_json(),
                        closed_form: c.to_json(),
                        comparison: Comparison {
                            equal: cmp.equal,
                            max_gap: numlin::round_sig(cmp.max_gap, 12),
                        },
                    };
                    if json {
                        to_json(&both)?
                    } else {
                        format!(
                            "closed form\n{}numeric\n{}max gap {:e} ({})\n",
                            spectrum_lines(&both.closed_form.values, &both.closed_form.labels),
                            spectrum_lines(&both.numeric.values, &[]),
                            both.comparison.max_gap,
                            if cmp.equal { "agree" } else { "differ" }
                        )
                    }
                }
            };
            out.write_all(text.as_bytes())?;
            if let Some(e) = gap_error {
                return Err(e);
            }
        }
        Command::Energy { expr } => {
            let g = expr::parse(&expr)?.eval()?.into_graph();
            writeln!(out, "{}", format_sig(distance::distance_energy(&g)?, 10))?;
        }
        Command::Verify { expr, tol, theorem, out: file } => {
            let bg = blocked(expr::parse(&expr)?.eval()?, "verify")?;
            let t = select_theorem(&registry, &bg, theorem.as_deref())?;
            let report = verify(&bg, t, tol)?;
            let json = to_json(&report)?;
            if let Some(path) = file {
                write_file(&path, &json)?;
            }
            out.write_all(json.as_bytes())?;
            report.outcome()?;
        }
        Command::Families { case, g, h, vary, fixed, n, tol, json, out: file, csv } => {
            let case: FamilyCase = case.parse().map_err(Error::Precondition)?;
            let vary: Side = vary.parse().map_err(Error::Precondition)?;
            let (h1, h2) = case.kinds(h.as_deref())?;
            let base = expr::parse(&g)?.eval()?.into_graph();
            let fixed = expr::parse(&fixed)?.eval()?.into_graph();
            let family = equienergetic::build_family(
                &registry,
                case,
                &base,
                h1,
                h2,
                vary,
                &fixed,
                n,
                max_n_from_env()?,
            )?;
            let report = equienergetic::verify_family(&registry, &family, tol)?;
            let report_json = to_json(&report)?;
            if let Some(path) = &file {
                write_file(path, &report_json)?;
            }
            if let Some(path) = &csv {
                write_file(path, &report.to_csv())?;
            }
            if json {
                out.write_all(report_json.as_bytes())?;
            } else {
                let mut text = format!("{:<16} {:>20} {:>12} {:>4}\n", "partition", "energy", "deviation", "diam");
                for m in &report.members {
                    text.push_str(&format!(
                        "{:<16} {:>20} {:>12.3e} {:>4}\n",
                        m.partition,
                        format_sig(m.energy, 12),
                        m.deviation,
                        m.diameter
                    ));
                }
                text.push_str(&format!(
                    "members {}  max deviation {:e}  mechanism {}  shared clauses {}\n",
                    report.members.len(),
                    report.max_deviation,
                    if report.mechanism_ok { "ok" } else { "FAILED" },
                    if report.shared_clauses_identical { "identical" } else { "DIFFER" },
                ));
                out.write_all(text.as_bytes())?;
            }
            if !report.passed() {
                return Err(Error::Verification(format!(
                    "family check failed (max deviation {:e}, tol {tol:e})",
                    report.max_deviation
                )));
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command, and maps errors to
/// exit codes. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(cli.command, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
