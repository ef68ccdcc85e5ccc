//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse / usage / i/o
//! error, 3 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bidiag::bidiagonalize;
use crate::error::Error;
use crate::format::{fmt_f64, read_qmat, read_rmat, write_qmat, write_rmat};
use crate::oracle::adjoint_singular_values;
use crate::qmat::RMatrix;
use crate::qsvd::{qsvd, verify, Check, QsvdResult};
use crate::random::{random_qmatrix, seeded};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "quatsvd", version, about = "Quaternion matrix SVD via real bidiagonalization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded random quaternion matrix.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        rows: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cols: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reduce to real bidiagonal form: writes L.qmat, B.rmat, R.qmat.
    Bidiag {
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Singular value decomposition: writes U.qmat, S.rmat, V.qmat.
    Svd {
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// Write S.rmat only.
        #[arg(long)]
        values_only: bool,
    },
    /// Verify a decomposition A = U·S·V̄ᵀ.
    Check {
        a: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        v: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
        tol: f64,
    },
    /// Singular values from the real adjoint, one per line.
    AdjointSvs { input: PathBuf },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NoConvergence { .. } | Error::GroupingFailure(_) | Error::NotSymmetric { .. } => {
            EXIT_NUMERIC
        }
        _ => EXIT_PARSE,
    }
}

/// Error tagged with the file it came from.
struct Failure {
    path: Option<PathBuf>,
    err: Error,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Self { path: None, err }
    }
}

fn at(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |err| Failure { path: Some(path.to_path_buf()), err }
}

/// Parses `args` and runs the command, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure { path, err: e }) => {
            let _ = match path {
                Some(p) => writeln!(err, "error: {}: {e}", p.display()),
                None => writeln!(err, "error: {e}"),
            };
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Gen { rows, cols, seed, out: path } => {
            run_gen(rows as usize, cols as usize, seed, &path)?;
            Ok(EXIT_OK)
        }
        Command::Bidiag { input, out_dir } => {
            run_bidiag(&input, &out_dir)?;
            Ok(EXIT_OK)
        }
        Command::Svd { input, out_dir, values_only } => {
            run_svd(&input, &out_dir, values_only)?;
            Ok(EXIT_OK)
        }
        Command::Check { a, u, s, v, tol } => run_check(&a, &u, &s, &v, tol, out),
        Command::AdjointSvs { input } => {
            run_adjoint_svs(&input, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn run_gen(rows: usize, cols: usize, seed: u64, path: &Path) -> Result<(), Failure> {
    let m = random_qmatrix(rows, cols, &mut seeded(seed));
    write_qmat(path, &m).map_err(at(path))
}

fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| at(dir)(e.into()))
}

fn run_bidiag(input: &Path, out_dir: &Path) -> Result<(), Failure> {
    let a = read_qmat(input).map_err(at(input))?;
    let res = bidiagonalize(&a);
    ensure_dir(out_dir)?;
    let l_path = out_dir.join("L.qmat");
    write_qmat(&l_path, &res.l).map_err(at(&l_path))?;
    let b_path = out_dir.join("B.rmat");
    write_rmat(&b_path, &res.b).map_err(at(&b_path))?;
    let r_path = out_dir.join("R.qmat");
    write_qmat(&r_path, &res.r).map_err(at(&r_path))?;
    Ok(())
}

fn run_svd(input: &Path, out_dir: &Path, values_only: bool) -> Result<(), Failure> {
    let a = read_qmat(input).map_err(at(input))?;
    let res = qsvd(&a, !values_only)?;
    ensure_dir(out_dir)?;
    let s = RMatrix::rect_diag(a.rows(), a.cols(), &res.sigma);
    let s_path = out_dir.join("S.rmat");
    write_rmat(&s_path, &s).map_err(at(&s_path))?;
    if let (Some(u), Some(v)) = (&res.u, &res.v) {
        let u_path = out_dir.join("U.qmat");
        write_qmat(&u_path, u).map_err(at(&u_path))?;
        let v_path = out_dir.join("V.qmat");
        write_qmat(&v_path, v).map_err(at(&v_path))?;
    }
    Ok(())
}

fn run_check(
    a_path: &Path,
    u_path: &Path,
    s_path: &Path,
    v_path: &Path,
    tol: f64,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let a = read_qmat(a_path).map_err(at(a_path))?;
    let u = read_qmat(u_path).map_err(at(u_path))?;
    let s = read_rmat(s_path).map_err(at(s_path))?;
    let v = read_qmat(v_path).map_err(at(v_path))?;

    let (r, c) = a.shape();
    let shape_err = |path: &Path, what: String| Failure {
        path: Some(path.to_path_buf()),
        err: Error::ShapeMismatch(what),
    };
    if u.shape() != (r, r) {
        return Err(shape_err(u_path, format!("U is {}x{}, expected {r}x{r}", u.rows(), u.cols())));
    }
    if v.shape() != (c, c) {
        return Err(shape_err(v_path, format!("V is {}x{}, expected {c}x{c}", v.rows(), v.cols())));
    }
    if s.shape() != (r, c) {
        return Err(shape_err(s_path, format!("S is {}x{}, expected {r}x{c}", s.rows(), s.cols())));
    }

    let off_diagonal = (0..r)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| s[(i, j)].abs())
        .fold(0.0_f64, f64::max);
    let res = QsvdResult { u: Some(u), sigma: s.diagonal(), v: Some(v) };
    let mut report = verify(&a, &res, tol)?;
    report.checks.push(Check::new("diagonal(S)", off_diagonal, 0.0));

    writeln!(out, "{report}").map_err(|e| Failure::from(Error::from(e)))?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
}

fn run_adjoint_svs(input: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let a = read_qmat(input).map_err(at(input))?;
    let values = adjoint_singular_values(&a)?;
    for v in values {
        writeln!(out, "{}", fmt_f64(v)).map_err(|e| Failure::from(Error::from(e)))?;
    }
    Ok(())
}
