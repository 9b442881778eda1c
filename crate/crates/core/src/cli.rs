//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 non-decomposable input, 4 internal invariant violation.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, LatticeMatrix};
use crate::mee::{mee_run, MeeOptions};
use crate::minee::minee_run;
use crate::plucker::{compute_plucker, PluckerVector};
use crate::positivity::{positivize_g2n, SwapOrder};
use crate::reconstruct::assemble;
use crate::sample::random_instance;
use crate::transforms::{parse_int, TraceJson};
use crate::verify::verify_batch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Mee,
    Minee,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "grassmann-cf", about = "Subtractive continued fractions on integer Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plücker vector of an integer matrix (one row per line, `#` comments).
    Plucker {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run an algorithm on a Plücker vector and reconstruct a realizing matrix.
    Run(RunArgs),
    /// Seeded random full-rank matrix and its Plücker vector.
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Re-check a trace against the vector it was computed from.
    Verify {
        /// `TRACE PLUCKER`, or pairs of them with `--batch`.
        files: Vec<PathBuf>,
        #[arg(long)]
        batch: bool,
    },
    /// Make every coordinate of a G(2,n) vector positive.
    Positivize {
        file: PathBuf,
        #[arg(long)]
        strict_trace: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    file: PathBuf,
    #[arg(long = "algo", value_enum, default_value_t = Algorithm::Minee)]
    algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Positivize by the literal lexicographic swap scan.
    #[arg(long)]
    strict_trace: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    bound: i64,
}

/// Settings of one `run` invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub input: PathBuf,
    pub format: Format,
    pub seed: u64,
    pub bound: i64,
    pub strict_trace: bool,
}

impl From<RunArgs> for RunConfig {
    fn from(a: RunArgs) -> Self {
        RunConfig {
            algorithm: a.algorithm,
            input: a.file,
            format: a.format,
            seed: a.seed,
            bound: a.bound,
            strict_trace: a.strict_trace,
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(cli.command, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    match cmd {
        Command::Plucker { file, format } => {
            let m = parse_matrix(&read_input(&file, stdin)?)?;
            let p = compute_plucker(&m)?;
            if p.is_zero() {
                return Err(Error::Validation("matrix does not have full row rank".into()));
            }
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&p.to_json()).unwrap()),
                Format::Text => writeln!(out, "{p}"),
            }
            .map_err(io)?;
            Ok(0)
        }
        Command::Run(args) => cmd_run(&args.into(), stdin, out),
        Command::Random { k, n, bound, seed, format } => {
            let (m, p) = random_instance(k, n, bound, seed)?;
            match format {
                Format::Json => {
                    let doc = json!({ "matrix": matrix_json(&m), "plucker": p.to_json() });
                    writeln!(out, "{doc}")
                }
                Format::Text => writeln!(out, "{m}# plucker: {p}"),
            }
            .map_err(io)?;
            Ok(0)
        }
        Command::Verify { files, batch } => {
            if files.len() % 2 != 0 || files.is_empty() || (!batch && files.len() != 2) {
                return Err(Error::Validation("verify expects TRACE PLUCKER (pairs with --batch)".into()));
            }
            let jobs = files
                .chunks(2)
                .map(|pair| Ok((parse_trace(&read_input(&pair[0], stdin)?)?, PluckerVector::parse(&read_input(&pair[1], stdin)?)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut ok = true;
            for (pair, report) in files.chunks(2).zip(verify_batch(&jobs)) {
                let report = report?;
                if batch {
                    writeln!(out, "# {}", pair[0].display()).map_err(io)?;
                }
                write!(out, "{report}").map_err(io)?;
                ok &= report.all_passed();
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Positivize { file, strict_trace, format } => {
            let p = PluckerVector::parse(&read_input(&file, stdin)?)?;
            let order = if strict_trace { SwapOrder::LexScan } else { SwapOrder::Sorted };
            let r = positivize_g2n(&p, order)?;
            match format {
                Format::Json => {
                    let steps: Vec<Value> = r
                        .transforms
                        .iter()
                        .map(|u| json!({ "descriptor": u.descriptor().to_string(), "matrix": matrix_json(u.matrix()) }))
                        .collect();
                    let doc = json!({ "vector": r.vector.to_json(), "transforms": steps, "swaps": r.swaps });
                    writeln!(out, "{doc}")
                }
                Format::Text => {
                    let ds: Vec<String> = r.transforms.iter().map(|u| u.descriptor().to_string()).collect();
                    writeln!(out, "{}\n# transforms: {}", r.vector, ds.join(" "))
                }
            }
            .map_err(io)?;
            Ok(0)
        }
    }
}

/// `run`: trace, terminal coordinate and a realizing matrix.
pub fn cmd_run(cfg: &RunConfig, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let p = PluckerVector::parse(&read_input(&cfg.input, stdin)?)?;
    let trace = match cfg.algorithm {
        Algorithm::Mee => {
            let swap_order = if cfg.strict_trace { SwapOrder::LexScan } else { SwapOrder::Sorted };
            mee_run(&p, MeeOptions { swap_order, accelerate: false })?
        }
        Algorithm::Minee => minee_run(&p)?,
    };
    let result = assemble(&trace, &p)?;
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    match cfg.format {
        Format::Json => {
            let algo = match cfg.algorithm {
                Algorithm::Mee => "mee",
                Algorithm::Minee => "minee",
            };
            let doc = json!({
                "algorithm": algo,
                "input": p.to_json(),
                "trace": trace.to_json(),
                "result": result.to_json(),
            });
            writeln!(out, "{doc}").map_err(io)?;
        }
        Format::Text => {
            writeln!(out, "p_hat: {}\nindex: {}\nsteps: {}", result.p_hat, result.sublattice_index, trace.len()).map_err(io)?;
            for (i, s) in trace.steps.iter().enumerate() {
                writeln!(out, "# {i} {} n={} {}", s.label, s.ambient_n, s.transform.descriptor()).map_err(io)?;
            }
            write!(out, "{}", result.matrix).map_err(io)?;
        }
    }
    Ok(0)
}

fn read_input(path: &PathBuf, stdin: &mut dyn Read) -> Result<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

/// Whitespace-separated rows, one per line; `#` starts a comment.
/// A JSON array of rows of decimal strings or numbers is accepted too.
pub fn parse_matrix(s: &str) -> Result<LatticeMatrix> {
    let rows: Vec<Vec<num_bigint::BigInt>> = if s.trim_start().starts_with('[') {
        let v: Vec<Vec<Value>> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        v.iter()
            .map(|r| {
                r.iter()
                    .map(|x| match x {
                        Value::String(t) => parse_int(t),
                        Value::Number(n) => parse_int(&n.to_string()),
                        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?
    } else {
        s.lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(parse_int).collect())
            .collect::<Result<_>>()?
    };
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    let m = IntMatrix::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))?;
    if m.nrows() > m.ncols() {
        return Err(Error::Dimension(format!("{}x{} matrix has more rows than columns", m.nrows(), m.ncols())));
    }
    Ok(m)
}

/// Accepts a bare trace or a `run` document containing one.
pub fn parse_trace(s: &str) -> Result<TraceJson> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let v = match v.get("trace") {
        Some(t) => t.clone(),
        None => v,
    };
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.rows()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}
