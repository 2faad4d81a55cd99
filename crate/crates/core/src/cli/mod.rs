//! Batch command-line front end: read a matrix, run one operation, write
//! the result.
//!
//! Exit status: 0 on success, 1 for unreadable or unparsable input, 2 when a
//! numerical iteration fails to converge, 3 for invalid arguments. Every
//! error is reported on stderr with an `error:` prefix.

pub mod format;
pub mod io;

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::decomp::{
    si_eigenvalues, ui_hadamard_signature, ui_signature, ui_singular_values, ui_svd,
};
use crate::error::Error;
use crate::inverses::{ginv, linv, mixed_block_inverse, rinv, BlockPartition};
use crate::matrix::{pinv, Matrix, ToleranceConfig};
use crate::scaling::{dscale, sinkhorn_scale, SizeFunction};

pub use format::{format_g, Precision};
pub use io::{parse, render, Block, Format, ParseError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 1;
pub const EXIT_NON_CONVERGENCE: u8 = 2;
pub const EXIT_INVALID_ARGS: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "uclinalg",
    version,
    about = "Unit-consistent generalized inverses and unit-invariant SVD"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Input matrix file, `-` for stdin
    input: PathBuf,
    /// Output file (default: stdout)
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Balancing convergence threshold
    #[arg(long)]
    tol: Option<f64>,
    /// Relative singular-value cutoff
    #[arg(long = "rank-tol")]
    rank_tol: Option<f64>,
    /// Maximum balancing sweeps
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Print round-trip-exact values (%.17g) instead of 6 significant digits
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Unit-consistent generalized inverse
    Uinv(Common),
    /// Moore-Penrose pseudoinverse
    Pinv(Common),
    /// Left unit-consistent inverse
    Linv(Common),
    /// Right unit-consistent inverse
    Rinv(Common),
    /// General diagonal scaling: writes dl, dr and the scaled matrix
    Dscale {
        #[command(flatten)]
        common: Common,
        /// Balance with a Sinkhorn-type iteration under this size function
        /// (gm | p:<p> | ab:<a>:<b>)
        #[arg(long = "size-fn", value_parser = parse_size_fn)]
        size_fn: Option<SizeFunction>,
    },
    /// Unit-invariant singular values
    Usvd(Common),
    /// Unit-invariant SVD: writes diag(D), U, s, V, diag(E)
    Usvdecomp(Common),
    /// Scale-invariant eigenvalues, one `re,im` row each
    Sieig(Common),
    /// Top-k unit-invariant singular values, or vec(A ∘ ginv(A)ᵀ)
    Signature {
        #[command(flatten)]
        common: Common,
        #[arg(
            long,
            required_unless_present = "hadamard",
            conflicts_with = "hadamard"
        )]
        k: Option<usize>,
        /// Emit the Hadamard signature instead of singular values
        #[arg(long)]
        hadamard: bool,
    },
    /// Block inverse consistent under blockdiag(diagonal, orthonormal)
    Mixedinv {
        #[command(flatten)]
        common: Common,
        /// Order of the leading diagonally-consistent block
        #[arg(long)]
        partition: usize,
    },
}

/// Parses `gm`, `p:<p>` or `ab:<a>:<b>`.
pub fn parse_size_fn(s: &str) -> Result<SizeFunction, String> {
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| format!("invalid number {t:?}"))
    };
    let f = match s.split(':').collect::<Vec<_>>().as_slice() {
        ["gm"] => SizeFunction::GeometricMean,
        ["p", p] => SizeFunction::PNorm(num(p)?),
        ["ab", a, b] => SizeFunction::RatioAB(num(a)?, num(b)?),
        _ => return Err(format!("expected gm, p:<p> or ab:<a>:<b>, got {s:?}")),
    };
    f.validate().map_err(|e| e.to_string())?;
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SignatureMode {
    TopK(usize),
    Hadamard,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Operation {
    Uinv,
    Pinv,
    Linv,
    Rinv,
    /// `None` runs the log-domain balancing; `Some` a Sinkhorn-type
    /// iteration under the given size function.
    Dscale(Option<SizeFunction>),
    Usvd,
    Usvdecomp,
    Sieig,
    Signature(SignatureMode),
    Mixedinv {
        m_top: usize,
    },
}

/// A validated command line.
#[derive(Clone, Debug, PartialEq)]
pub struct CliRequest {
    pub operation: Operation,
    pub input: PathBuf,
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
    pub format: Format,
    pub cfg: ToleranceConfig,
    pub precision: Precision,
}

impl CliRequest {
    /// Parses and validates arguments (the first item is the program name).
    pub fn from_args<I, S>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let (operation, common) = match cli.command {
            Command::Uinv(c) => (Operation::Uinv, c),
            Command::Pinv(c) => (Operation::Pinv, c),
            Command::Linv(c) => (Operation::Linv, c),
            Command::Rinv(c) => (Operation::Rinv, c),
            Command::Dscale { common, size_fn } => (Operation::Dscale(size_fn), common),
            Command::Usvd(c) => (Operation::Usvd, c),
            Command::Usvdecomp(c) => (Operation::Usvdecomp, c),
            Command::Sieig(c) => (Operation::Sieig, c),
            Command::Signature {
                common,
                k,
                hadamard,
            } => {
                let mode = match (k, hadamard) {
                    (_, true) => SignatureMode::Hadamard,
                    (Some(k), false) => SignatureMode::TopK(k),
                    (None, false) => unreachable!("clap requires --k or --hadamard"),
                };
                (Operation::Signature(mode), common)
            }
            Command::Mixedinv { common, partition } => {
                (Operation::Mixedinv { m_top: partition }, common)
            }
        };

        let defaults = ToleranceConfig::default();
        let cfg = ToleranceConfig {
            rank_tol: common.rank_tol.or(defaults.rank_tol),
            balance_tol: common.tol.unwrap_or(defaults.balance_tol),
            max_iter: common.max_iter.unwrap_or(defaults.max_iter),
        };
        cfg.validate().map_err(|e| {
            clap::Error::raw(clap::error::ErrorKind::ValueValidation, format!("{e}\n"))
        })?;
        if let Operation::Signature(SignatureMode::TopK(0)) = operation {
            return Err(clap::Error::raw(
                clap::error::ErrorKind::ValueValidation,
                "--k must be positive\n",
            ));
        }
        if let Operation::Mixedinv { m_top: 0 } = operation {
            return Err(clap::Error::raw(
                clap::error::ErrorKind::ValueValidation,
                "--partition must be positive\n",
            ));
        }

        Ok(CliRequest {
            operation,
            input: common.input,
            output: common.output,
            format: common.format,
            cfg,
            precision: if common.exact {
                Precision::Exact
            } else {
                Precision::default()
            },
        })
    }
}

/// Runs `op` on `a` and collects the output blocks. This is the whole
/// numerical side of the CLI.
pub fn execute(op: Operation, a: &Matrix<f64>, cfg: &ToleranceConfig) -> Result<Vec<Block>, Error> {
    // Shape checks first so no computation starts on invalid arguments.
    match op {
        Operation::Sieig if !a.is_square() => {
            return Err(Error::NotSquare {
                op: "sieig",
                rows: a.rows(),
                cols: a.cols(),
            })
        }
        Operation::Signature(SignatureMode::TopK(k)) if k > a.rows().min(a.cols()) => {
            return Err(Error::InvalidArgument(format!(
                "--k {k} exceeds min(rows, cols) = {}",
                a.rows().min(a.cols())
            )))
        }
        Operation::Mixedinv { .. } if !a.is_square() => {
            return Err(Error::NotSquare {
                op: "mixedinv",
                rows: a.rows(),
                cols: a.cols(),
            })
        }
        _ => {}
    }

    Ok(match op {
        Operation::Uinv => vec![Block::Matrix(ginv(a, cfg)?)],
        Operation::Pinv => vec![Block::Matrix(pinv(a, cfg)?)],
        Operation::Linv => vec![Block::Matrix(linv(a, cfg)?)],
        Operation::Rinv => vec![Block::Matrix(rinv(a, cfg)?)],
        Operation::Dscale(size_fn) => {
            let s = match size_fn {
                None => dscale(a, cfg)?,
                Some(f) => sinkhorn_scale(a, f, cfg)?,
            };
            vec![
                Block::Vector(s.dl),
                Block::Vector(s.dr),
                Block::Matrix(s.scaled),
            ]
        }
        Operation::Usvd => vec![Block::Vector(ui_singular_values(a, cfg)?)],
        Operation::Usvdecomp => {
            let f = ui_svd(a, cfg)?;
            vec![
                Block::Vector(f.d.entries().to_vec()),
                Block::Matrix(f.u),
                Block::Vector(f.s),
                Block::Matrix(f.v),
                Block::Vector(f.e.entries().to_vec()),
            ]
        }
        Operation::Sieig => {
            let ev = si_eigenvalues(a, cfg)?;
            let flat: Vec<f64> = ev.iter().flat_map(|z| [z.re, z.im]).collect();
            vec![Block::Matrix(Matrix::new(ev.len(), 2, flat)?)]
        }
        Operation::Signature(SignatureMode::TopK(k)) => {
            vec![Block::Vector(ui_signature(a, k, cfg)?)]
        }
        Operation::Signature(SignatureMode::Hadamard) => {
            vec![Block::Vector(ui_hadamard_signature(a, cfg)?)]
        }
        Operation::Mixedinv { m_top } => {
            let part = BlockPartition::split(a.rows(), m_top)?;
            vec![Block::Matrix(mixed_block_inverse(a, part, cfg)?)]
        }
    })
}

/// Exit status for a library error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NonConvergence { .. } | Error::SvdFailed | Error::EigenFailed => {
            EXIT_NON_CONVERGENCE
        }
        Error::EmptyMatrix { .. } | Error::EntryCount { .. } | Error::NonFinite { .. } => {
            EXIT_PARSE
        }
        _ => EXIT_INVALID_ARGS,
    }
}

fn read_input(req: &CliRequest) -> Result<Matrix<f64>, String> {
    let text = if req.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(&req.input)
            .map_err(|e| format!("reading {}: {e}", req.input.display()))?
    };
    parse(&text, req.format).map_err(|e| format!("parsing {}: {e}", req.input.display()))
}

/// Executes a validated request, returning the process exit status.
pub fn run(req: &CliRequest) -> u8 {
    let a = match read_input(req) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_PARSE;
        }
    };
    let blocks = match execute(req.operation, &a, &req.cfg) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = render(&blocks, req.format, req.precision);
    let written = match &req.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| format!("writing stdout: {e}")),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_PARSE
        }
    }
}

/// Full entry point: argument parsing plus [`run`].
pub fn main_with_args<I, S>(args: I) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match CliRequest::from_args(args) {
        Ok(req) => run(&req),
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    EXIT_OK
                }
                _ => {
                    let msg = e.to_string();
                    let msg = msg.trim_start_matches("error: ").trim_end();
                    eprintln!("error: {msg}");
                    EXIT_INVALID_ARGS
                }
            }
        }
    }
}
