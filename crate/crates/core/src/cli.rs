//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and returns the exit code: 0 for a definitive answer, 1 when
//! the answer is inconclusive, 2 for usage and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bounds::{tower, DEFAULT_CAP_DIGITS};
use crate::certificate::{Certificate, CertificateError};
use crate::cnf::{
    decode_model, encode, format_solver_output, parse_dimacs, run_solver, solve_builtin,
    write_dimacs, CnfError, SolveResult,
};
use crate::cube::Coloring;
use crate::error::CubeError;
use crate::gadgets::{
    case_lemma_check, find_interval_line, pattern_coloring, verify_gadget_lines, ColourVector,
    GadgetError, Method, Quadruple,
};
use crate::report::{
    parse_report, BoundReport, EncodeReport, FindLineReport, GadgetReport, GenReport, Report,
    ReportError, SolveReport,
};
use crate::search::{
    exhaustive_search, local_search, seeded_random_coloring, ExhaustiveOptions, Outcome,
    SearchError, DEFAULT_EXHAUSTIVE_CAP,
};

pub const EXIT_DEFINITIVE: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("write failed: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "hjlab",
    version,
    about = "Interval lines in 2-coloured cubes [3]^n"
)]
struct Cli {
    /// Worker threads for parallel searches (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Direct,
    Gadget,
    Pipeline,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Gadget => Method::Gadget,
            MethodArg::Pipeline => Method::Pipeline,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Local,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Pattern,
    Random,
    Constant,
}

fn parse_quadruple(s: &str) -> Result<[usize; 4], String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<usize>| format!("need four comma-separated numbers, got {}", v.len()))
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the five gadget lines and the 32-case colour table.
    VerifyGadgets {
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// A single quadruple a1,a2,a3,a4.
        #[arg(long, value_parser = parse_quadruple, conflicts_with = "exhaustive_quadruples")]
        quadruple: Option<[usize; 4]>,
        /// Every quadruple for this n (the default when no quadruple is given).
        #[arg(long)]
        exhaustive_quadruples: bool,
    },
    /// Look for a monochromatic interval line in a colouring file.
    FindLine {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, value_enum, default_value = "direct")]
        method: MethodArg,
        /// Write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a colouring with no monochromatic interval line.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Flip budget for local search.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        no_symmetry: bool,
        /// Largest n accepted by the exhaustive search.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: usize,
        /// Write the avoider (if any) here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the avoider CNF instance in DIMACS format.
    Encode {
        #[arg(long)]
        n: usize,
        #[arg(long = "max-intervals", default_value_t = 1)]
        max_intervals: usize,
        #[arg(long)]
        sym_break: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a DIMACS file and decode the model into a verified avoider.
    Solve {
        #[arg(long)]
        cnf: PathBuf,
        /// External solver command; the CNF path is appended. Without one
        /// the built-in DPLL is used.
        #[arg(long, env = "HJ_SOLVER")]
        solver: Option<String>,
        #[arg(long)]
        timeout: Option<f64>,
        /// Write the decoded avoider (or the solver transcript) here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print upper bounds for the Ramsey tower.
    Bound {
        #[arg(long, default_value_t = DEFAULT_CAP_DIGITS)]
        cap: usize,
    },
    /// Generate a colouring file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Colour vector d1..d5 for --kind pattern.
        #[arg(long)]
        d: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Colour for --kind constant.
        #[arg(long, default_value_t = 0)]
        color: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Built-in DPLL with a standard solver interface.
    #[command(hide = true)]
    Dpll { file: PathBuf },
    /// Re-read a saved report.
    #[command(hide = true)]
    Report { file: PathBuf },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs the CLI on `args` (including the program name).
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                EXIT_DEFINITIVE
            } else {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            };
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            let _ = writeln!(err, "error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        // Fails harmlessly if the global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    match run(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(out: &mut dyn Write, report: &Report) -> Result<(), CliError> {
    write!(out, "{report}")?;
    Ok(())
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::VerifyGadgets {
            n,
            quadruple,
            exhaustive_quadruples: _,
        } => {
            let cases = case_lemma_check()?;
            let (count, detail) = match quadruple {
                Some(a) => {
                    let q = Quadruple::new(a, n)?;
                    let lines = verify_gadget_lines(&q)?;
                    (1, Some((a, lines.to_vec())))
                }
                None => {
                    let all = Quadruple::all(n);
                    if all.is_empty() {
                        return Err(CliError::Usage(format!(
                            "no quadruples for n={n}; need n >= 5"
                        )));
                    }
                    for q in &all {
                        verify_gadget_lines(q)?;
                    }
                    (all.len(), None)
                }
            };
            emit(
                out,
                &Report::VerifyGadgets(GadgetReport {
                    n,
                    quadruples: count,
                    detail,
                    cases,
                }),
            )?;
            Ok(EXIT_DEFINITIVE)
        }
        Cmd::FindLine {
            coloring,
            method,
            out: cert_path,
        } => {
            let c = Coloring::parse_file(&read(&coloring)?)?;
            let method = Method::from(method);
            let found = find_interval_line(&c, method);
            let report = FindLineReport {
                n: c.n(),
                method,
                certificate: found.clone(),
            };
            if let Some(path) = cert_path {
                let cert = match found {
                    Some(lc) => Certificate::MonoLine(lc),
                    None => Certificate::None {
                        method: method.name().into(),
                    },
                };
                write(&path, &cert.to_string())?;
            }
            let definitive = report.definitive();
            emit(out, &Report::FindLine(report))?;
            Ok(if definitive {
                EXIT_DEFINITIVE
            } else {
                EXIT_INCONCLUSIVE
            })
        }
        Cmd::Search {
            n,
            mode,
            seed,
            budget,
            no_symmetry,
            cap,
            out: path,
        } => {
            let report = match mode {
                ModeArg::Exhaustive => exhaustive_search(
                    n,
                    &ExhaustiveOptions {
                        symmetry: !no_symmetry,
                        cap,
                        jobs: cli.jobs,
                    },
                )?,
                ModeArg::Local => local_search(n, seed, budget)?,
            };
            let _ = writeln!(err, "elapsed={:.3}s", report.elapsed.as_secs_f64());
            if let (Some(path), Some(c)) = (&path, report.outcome.avoider()) {
                write(path, &c.to_file_string())?;
            }
            let code = match report.outcome {
                Outcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
                _ => EXIT_DEFINITIVE,
            };
            emit(out, &Report::Search(report))?;
            Ok(code)
        }
        Cmd::Encode {
            n,
            max_intervals,
            sym_break,
            out: path,
        } => {
            let inst = encode(n, max_intervals, sym_break)?;
            write(&path, &write_dimacs(&inst))?;
            emit(
                out,
                &Report::Encode(EncodeReport {
                    n,
                    m: max_intervals,
                    symmetry_break: sym_break,
                    lines: inst.line_count(),
                    variables: inst.num_vars,
                    clauses: inst.clauses.len(),
                }),
            )?;
            Ok(EXIT_DEFINITIVE)
        }
        Cmd::Solve {
            cnf,
            solver,
            timeout,
            out: path,
        } => {
            let text = read(&cnf)?;
            let dimacs = parse_dimacs(&text)?;
            let timeout = match timeout {
                Some(t) if !(t.is_finite() && t > 0.0) => {
                    return Err(CliError::Usage(format!(
                        "--timeout must be positive, got {t}"
                    )))
                }
                t => t.map(Duration::from_secs_f64),
            };
            let (name, result) = match &solver {
                Some(cmd) => (cmd.clone(), run_solver(&text, cmd, timeout)),
                None => ("builtin-dpll".to_string(), solve_builtin(&dimacs)),
            };
            let mut avoider = None;
            if let (SolveResult::Sat(model), Some(info)) = (&result, dimacs.info) {
                let c = decode_model(model, info.n, info.m)?;
                avoider = Some(c.bitstring());
                if let Some(p) = &path {
                    write(p, &c.to_file_string())?;
                }
            } else if let Some(p) = &path {
                write(p, &format_solver_output(&result))?;
            }
            let code = match result {
                SolveResult::Unknown(_) => EXIT_INCONCLUSIVE,
                _ => EXIT_DEFINITIVE,
            };
            emit(
                out,
                &Report::Solve(SolveReport {
                    solver: name,
                    encoding: dimacs.info.map(|i| (i.n, i.m)),
                    result,
                    avoider,
                }),
            )?;
            Ok(code)
        }
        Cmd::Bound { cap } => {
            emit(
                out,
                &Report::Bound(BoundReport {
                    cap_digits: cap,
                    tower: tower(cap),
                }),
            )?;
            Ok(EXIT_DEFINITIVE)
        }
        Cmd::Gen {
            n,
            kind,
            d,
            seed,
            color,
            out: path,
        } => {
            let (c, params) = match kind {
                GenKind::Pattern => {
                    let d = d.ok_or_else(|| {
                        CliError::Usage("--kind pattern needs --d d1d2d3d4d5".into())
                    })?;
                    let v: ColourVector = d.parse()?;
                    (
                        pattern_coloring(n, &v)?,
                        vec![("d".to_string(), v.to_string())],
                    )
                }
                GenKind::Random => (
                    seeded_random_coloring(n, seed)?,
                    vec![("seed".to_string(), seed.to_string())],
                ),
                GenKind::Constant => (
                    Coloring::constant(n, color)?,
                    vec![("color".to_string(), color.to_string())],
                ),
            };
            write(&path, &c.to_file_string())?;
            let name = match kind {
                GenKind::Pattern => "pattern",
                GenKind::Random => "random",
                GenKind::Constant => "constant",
            };
            emit(
                out,
                &Report::Gen(GenReport {
                    n,
                    kind: name.into(),
                    params,
                    ones: c.count_ones(),
                    cells: c.len(),
                }),
            )?;
            Ok(EXIT_DEFINITIVE)
        }
        Cmd::Dpll { file } => {
            let result = solve_builtin(&parse_dimacs(&read(&file)?)?);
            write!(out, "{}", format_solver_output(&result))?;
            Ok(match result {
                SolveResult::Sat(_) => 10,
                SolveResult::Unsat => 20,
                SolveResult::Unknown(_) => 0,
            })
        }
        Cmd::Report { file } => {
            let parsed = parse_report(&read(&file)?)?;
            for (k, v) in &parsed.fields {
                writeln!(out, "{k}={v}")?;
            }
            Ok(EXIT_DEFINITIVE)
        }
    }
}
