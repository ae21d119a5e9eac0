use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use brunel_core::analysis::VerifyReport;
use brunel_core::coeffs::CoeffKind;
use brunel_core::operator::{
    appendix_example, brunel, cesaro, check_cesaro_domination, check_mean_bound_theorem,
    check_power_bound_theorem, random_column_stochastic, random_doubly_stochastic,
    random_row_stochastic, rotation, BrunelOptions, DenseMatrix, Norm, OperatorError, Truncation,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::figure::{self, FigureId};
use crate::formats::{self, TableRow};
use crate::verify::{verify, RectOverride};

#[derive(Debug, Parser)]
#[command(name = "brunel", version, about = "Coefficients of powers of (1 - sqrt(1 - x))/x, their inequalities, and the Brunel operator on matrices")]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "opinf")]
    pub norm: NormArg,
    /// Target for the certified truncation tail.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub eps: f64,
    /// Seed for random test matrices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Opinf,
    Fro,
    Max,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Norm {
        match n {
            NormArg::Opinf => Norm::OpInf,
            NormArg::Fro => Norm::Frobenius,
            NormArg::Max => Norm::Max,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Alpha,
    Beta,
}

impl From<KindArg> for CoeffKind {
    fn from(k: KindArg) -> CoeffKind {
        match k {
            KindArg::Alpha => CoeffKind::Alpha,
            KindArg::Beta => CoeffKind::Beta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RandomKind {
    Doubly,
    Row,
    Column,
    /// Plane rotation by one radian; ignores `--dim`.
    Rotation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one exact coefficient.
    Coeff {
        #[arg(long, value_enum, default_value = "alpha")]
        kind: KindArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Export exact coefficients for n in [1, n-max] and p in [0, p-max].
    Table {
        #[arg(long, value_enum, default_value = "alpha")]
        kind: KindArg,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[arg(long, default_value_t = 10)]
        p_max: u64,
    },
    /// Emit figure data.
    Figure {
        #[arg(value_enum)]
        figure: FigureId,
        /// Powers to plot [default: 10,20 for fig1, 1,10,20,40 otherwise].
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
        /// Last p for fig1.
        #[arg(long, default_value_t = 60)]
        p_max: u64,
        /// Uniform grid size on [0, 0.9999] for fig2 and fig3.
        #[arg(long, default_value_t = figure::DEFAULT_X_POINTS)]
        x_points: usize,
        /// Explicit abscissae, replacing the grid.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        x: Vec<f64>,
    },
    /// Run a verification suite or group; exit 0 on pass, 1 on failures, 2 if unknown.
    Verify {
        #[arg(required_unless_present = "list")]
        suite: Option<String>,
        #[arg(long)]
        n_min: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        p_min: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
        #[arg(long)]
        x_points: Option<u64>,
        /// Worker threads for groups [default: available cores].
        #[arg(long)]
        jobs: Option<usize>,
        /// List registered suites and exit.
        #[arg(long)]
        list: bool,
    },
    /// Evaluate the Brunel operator or check a theorem on a matrix.
    Operator {
        /// Matrix JSON file `{"dim": d, "rows": [[...], ...]}`.
        #[arg(long, global = true, conflicts_with = "random")]
        matrix: Option<PathBuf>,
        /// Use a seeded random matrix instead of a file.
        #[arg(long, global = true, value_enum)]
        random: Option<RandomKind>,
        #[arg(long, global = true, default_value_t = 3)]
        dim: usize,
        #[command(subcommand)]
        action: Action,
    },
}

#[derive(Debug, Subcommand)]
pub enum Action {
    /// A^n(T) with its certified tail bound.
    BrunelPower {
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// Fixed truncation instead of the eps-driven one.
        #[arg(long)]
        p: Option<u64>,
        /// Rounds of partial-sum averaging.
        #[arg(long, default_value_t = 0)]
        averaging: u32,
    },
    /// The Cesaro mean (I + T + ... + T^(N-1))/N.
    Cesaro {
        #[arg(long = "N")]
        big_n: u64,
    },
    CheckPowerBound {
        #[arg(long, default_value_t = 40)]
        n_max: u64,
    },
    CheckMeanBound {
        #[arg(long, default_value_t = 30)]
        n_max: u64,
    },
    CheckDomination {
        #[arg(long = "N-max", default_value_t = 200)]
        big_n_max: u64,
    },
    /// Closed form against series for the 2x2 example; needs no matrix.
    AppendixDemo {
        #[arg(long, default_value_t = 5)]
        n: u64,
    },
}

/// Failure with an exit status attached.
struct Exit(u8, String);

impl<E: std::fmt::Display> From<E> for Exit {
    fn from(e: E) -> Self {
        Exit(2, e.to_string())
    }
}

struct Out(Box<dyn Write>);

impl Out {
    fn open(path: &Option<PathBuf>) -> io::Result<Out> {
        Ok(Out(match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        }))
    }

    fn json<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut self.0, value)?;
        writeln!(self.0)?;
        self.0.flush()
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Exit> {
    let mut out = Out::open(&cli.out)?;
    match &cli.command {
        Command::Coeff { kind, n, p } => {
            let kind = CoeffKind::from(*kind);
            let v = kind.eval(*n, *p);
            match cli.format {
                None => writeln!(out.0, "{v}")?,
                Some(Format::Json) => out.json(&json!({"kind": kind, "n": n, "p": p, "value": v, "approx": v.to_f64()}))?,
                Some(Format::Csv) => {
                    writeln!(out.0, "kind,n,p,value,approx")?;
                    writeln!(out.0, "{},{n},{p},{v},{:e}", kind_name(kind), v.to_f64())?;
                }
            }
        }
        Command::Table { kind, n_max, p_max } => {
            let rows: Vec<TableRow> = formats::table_rows((*kind).into(), *n_max, *p_max);
            match cli.format {
                Some(Format::Json) => out.json(&rows)?,
                _ => formats::write_table_csv(&mut out.0, &rows)?,
            }
        }
        Command::Figure { figure, n, p_max, x_points, x } => {
            let xs = if x.is_empty() { figure::default_grid(*x_points) } else { x.clone() };
            let json = cli.format == Some(Format::Json);
            match figure {
                FigureId::Fig1 => {
                    let ns = if n.is_empty() { vec![10, 20] } else { n.clone() };
                    let rows = figure::fig1(&ns, *p_max);
                    if json {
                        out.json(&rows)?
                    } else {
                        figure::write_csv(&mut out.0, &["n", "p", "diff", "kind"], &rows)?
                    }
                }
                FigureId::Fig2 | FigureId::Fig3 => {
                    let ns = if n.is_empty() { vec![1, 10, 20, 40] } else { n.clone() };
                    let (rows, col) = if *figure == FigureId::Fig2 {
                        (figure::fig2(&ns, &xs), "absdiff")
                    } else {
                        (figure::fig3(&ns, &xs), "value")
                    };
                    if json {
                        out.json(&rows)?
                    } else {
                        figure::write_csv(&mut out.0, &["n", "x", col], &rows)?
                    }
                }
            }
        }
        Command::Verify { suite, n_min, n_max, p_min, p_max, x_points, jobs, list } => {
            if *list {
                for s in brunel_core::analysis::SUITES {
                    writeln!(out.0, "{:<20} {}", s.name, s.about)?;
                }
                out.0.flush()?;
                return Ok(0);
            }
            let overrides = RectOverride {
                n_min: *n_min,
                n_max: *n_max,
                p_min: *p_min,
                p_max: *p_max,
                x_points: *x_points,
            };
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let report = verify(suite.as_deref().unwrap_or_default(), &overrides, jobs)?;
            if cli.format == Some(Format::Csv) {
                writeln!(out.0, "suite,checks,failed,indeterminate,skipped,elapsed_s")?;
                let rows = if report.parts.is_empty() { vec![&report] } else { report.parts.iter().collect() };
                for r in rows {
                    writeln!(out.0, "{},{},{},{},{},{:.3}", r.suite, r.checks, r.failed, r.indeterminate, r.skipped, r.elapsed_s)?;
                }
                out.0.flush()?;
            } else {
                out.json(&report)?;
            }
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Operator { matrix, random, dim, action } => return operator(cli, &mut out, matrix, *random, *dim, action),
    }
    out.0.flush()?;
    Ok(0)
}

fn kind_name(kind: CoeffKind) -> &'static str {
    match kind {
        CoeffKind::Alpha => "alpha",
        CoeffKind::Beta => "beta",
    }
}

fn error_kind(e: &OperatorError) -> &'static str {
    match e {
        OperatorError::NonFinite => "non_finite",
        OperatorError::Shape(_) => "shape",
        OperatorError::NonConvergence { .. } => "non_convergence",
        OperatorError::SpectralExplosion { .. } => "spectral_explosion",
        OperatorError::NotMeanBounded { .. } => "not_mean_bounded",
        OperatorError::NegativeEntries => "negative_entries",
    }
}

fn load_matrix(matrix: &Option<PathBuf>, random: Option<RandomKind>, dim: usize, seed: u64) -> Result<DenseMatrix, Exit> {
    match (matrix, random) {
        (Some(path), _) => Ok(formats::read_matrix(path)?),
        (None, Some(kind)) => {
            if dim == 0 {
                return Err(Exit(2, "--dim must be positive".into()));
            }
            Ok(match kind {
                RandomKind::Doubly => random_doubly_stochastic(dim, seed),
                RandomKind::Row => random_row_stochastic(dim, seed),
                RandomKind::Column => random_column_stochastic(dim, seed),
                RandomKind::Rotation => rotation(1.0),
            })
        }
        (None, None) => Err(Exit(2, "give --matrix PATH or --random KIND".into())),
    }
}

fn operator(cli: &Cli, out: &mut Out, matrix: &Option<PathBuf>, random: Option<RandomKind>, dim: usize, action: &Action) -> Result<u8, Exit> {
    let opts = BrunelOptions {
        eps: cli.eps,
        norm: cli.norm.into(),
        ..BrunelOptions::default()
    };
    if let Action::AppendixDemo { n } = action {
        if *n == 0 {
            return Err(Exit(2, "--n must be positive".into()));
        }
        let ex = appendix_example(*n);
        out.json(&ex)?;
        return Ok(if ex.agreement <= 1e-8 { 0 } else { 1 });
    }
    let t = load_matrix(matrix, random, dim, cli.seed)?;
    let passed = |rep: &VerifyReport| if rep.passed() { 0 } else { 1 };
    let outcome: Result<(serde_json::Value, Option<DenseMatrix>, u8), OperatorError> = match action {
        Action::BrunelPower { n, p, averaging } => {
            if *n == 0 {
                return Err(Exit(2, "--n must be positive".into()));
            }
            let o = BrunelOptions {
                truncation: p.map_or(Truncation::Auto, Truncation::Fixed),
                averaging: *averaging,
                ..opts.clone()
            };
            brunel(&t, *n, &o).map(|r| (json!(r), Some(r.matrix), 0))
        }
        Action::Cesaro { big_n } => {
            if *big_n == 0 {
                return Err(Exit(2, "--N must be positive".into()));
            }
            let m = cesaro(&t, *big_n);
            Ok((json!(m), Some(m), 0))
        }
        Action::CheckPowerBound { n_max } => {
            check_power_bound_theorem(&t, (*n_max).max(1), &opts).map(|r| (json!(r), None, passed(&r)))
        }
        Action::CheckMeanBound { n_max } => {
            check_mean_bound_theorem(&t, (*n_max).max(1), &opts).map(|r| (json!(r), None, passed(&r)))
        }
        Action::CheckDomination { big_n_max } => {
            check_cesaro_domination(&t, (*big_n_max).max(1), &opts).map(|r| (json!(r), None, passed(&r)))
        }
        Action::AppendixDemo { .. } => unreachable!("handled above"),
    };
    match outcome {
        Ok((_, Some(m), code)) if cli.format == Some(Format::Csv) => {
            write!(out.0, "{}", formats::matrix_csv(&m))?;
            out.0.flush()?;
            Ok(code)
        }
        Ok((value, _, code)) => {
            out.json(&value)?;
            Ok(code)
        }
        Err(e) => {
            out.json(&json!({"error": {"kind": error_kind(&e), "message": e.to_string()}}))?;
            Ok(1)
        }
    }
}
