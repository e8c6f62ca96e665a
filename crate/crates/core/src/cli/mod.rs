//! Command-line front end: configuration, dispatch, tables and `verify`.

pub mod config;
pub mod table;
pub mod verify;

use crate::error::{Error, Result};
use crate::special::real;
use crate::surface::{area, dim_holomorphic, dim_via_residue};
use crate::trace_geom::{geometric_trace, TraceBreakdown, TraceOptions};
use crate::zeta_det::{a_for, b_d_constants, c_constant, log_det_resolvent, selberg_zeta_trunc};
use clap::{Parser, Subcommand};
use config::{parse_grid, FileConfig, RunConfig, SurfaceSource};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::path::PathBuf;
use table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_MODEL: i32 = 4;
pub const EXIT_OTHER: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "hyperdet", version, about = "Resolvent traces and determinants of n-Laplacians on hyperbolic surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON config file; flags override its fields
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// surface signature JSON file
    #[arg(long, global = true)]
    pub surface: Option<PathBuf>,
    /// length spectrum JSON file
    #[arg(long, global = true)]
    pub spectrum: Option<PathBuf>,
    /// none | modular | file:PATH
    #[arg(long, global = true)]
    pub scattering: Option<String>,
    /// weight n (largest n for `dims`)
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// order of the zero of phi at s = 0, used by `constants` at n = 0
    #[arg(long, global = true)]
    pub n0: Option<u32>,
    /// comma-separated evaluation points
    #[arg(long, global = true)]
    pub s: Option<String>,
    /// second parameter of the difference form for `trace`
    #[arg(long, global = true)]
    pub a: Option<f64>,
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    /// csv | json
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub skip_scattering: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// d_n and its residue cross-check for n = 0..=N
    Dims,
    /// hyperbolic area
    Area,
    /// geometric trace per evaluation point
    Trace,
    /// log det(Delta_n + s(s+2n-1)) per evaluation point
    Det,
    /// A, B, D, C_n, d_n
    Constants,
    /// truncated Selberg zeta function per evaluation point
    Zeta,
    /// run invariant suites and print a JSON report
    Verify { suite: Option<String> },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        Error::Convergence(_) => EXIT_CONVERGENCE,
        Error::Model(_) => EXIT_MODEL,
        _ => EXIT_OTHER,
    }
}

impl Cli {
    fn file_config(&self) -> Result<FileConfig> {
        let flags = FileConfig {
            surface: self.surface.clone().map(SurfaceSource::Path),
            spectrum: self.spectrum.clone(),
            scattering: self.scattering.clone(),
            n: self.n,
            n0: self.n0,
            s: self.s.as_deref().map(parse_grid).transpose()?,
            a: self.a,
            kmax: self.kmax,
            format: self.format.clone(),
            jobs: self.jobs,
            skip_scattering: self.skip_scattering.then_some(true),
        };
        match &self.config {
            Some(p) => Ok(flags.or(FileConfig::load(p)?)),
            None => Ok(flags),
        }
    }
}

/// Runs a parsed command line, writing output to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    match dispatch(cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    if let Command::Verify { suite } = &cli.command {
        let report = verify::run(suite.as_deref())?;
        let code = if report.failed == 0 { EXIT_OK } else { EXIT_FAILED };
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        return Ok((text, code));
    }
    let cfg = RunConfig::resolve(cli.file_config()?)?;
    let (table, code) = match cli.command {
        Command::Dims => cmd_dims(&cfg)?,
        Command::Area => (cmd_area(&cfg)?, EXIT_OK),
        Command::Trace => (cmd_trace(&cfg)?, EXIT_OK),
        Command::Det => (cmd_det(&cfg)?, EXIT_OK),
        Command::Constants => (cmd_constants(&cfg)?, EXIT_OK),
        Command::Zeta => (cmd_zeta(&cfg)?, EXIT_OK),
        Command::Verify { .. } => unreachable!(),
    };
    let mut text = table.emit(cfg.output_format);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok((text, code))
}

/// Evaluates `f` on every grid point in a pool of `jobs` threads, keeping input order.
fn map_grid<F>(cfg: &RunConfig, f: F) -> Result<Vec<Vec<Cell>>>
where
    F: Fn(f64) -> Result<Vec<Cell>> + Sync + Send,
{
    let grid = cfg.grid()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::config(format!("worker pool: {e}")))?;
    pool.install(|| grid.par_iter().map(|&s| f(s)).collect())
}

pub fn cmd_dims(cfg: &RunConfig) -> Result<(Table, i32)> {
    let sig = cfg.surface()?;
    let mut t = Table::new(&["n", "d_n", "d_n_residue"]);
    let mut code = EXIT_OK;
    for n in 0..=cfg.n {
        let d = dim_holomorphic(sig, n)? as i64;
        let via = if n == 0 {
            Cell::Missing
        } else {
            let r = dim_via_residue(sig, n)?;
            match r.to_i64().filter(|_| r.is_integer()) {
                Some(v) => {
                    if v != d {
                        code = EXIT_FAILED;
                    }
                    Cell::Int(v)
                }
                None => {
                    code = EXIT_FAILED;
                    Cell::from(r.to_f64())
                }
            }
        };
        t.push(vec![Cell::Int(n as i64), Cell::Int(d), via]);
    }
    Ok((t, code))
}

pub fn cmd_area(cfg: &RunConfig) -> Result<Table> {
    let sig = cfg.surface()?;
    let mut t = Table::new(&["area", "area_over_2pi"]);
    t.push(vec![area(sig).into(), sig.area_over_2pi().to_f64().into()]);
    Ok(t)
}

pub fn cmd_trace(cfg: &RunConfig) -> Result<Table> {
    let sig = cfg.surface()?;
    let opts = TraceOptions { kmax: cfg.kmax, skip_scattering: cfg.skip_scattering };
    let mut t = Table::new(&[
        "s", "identity", "hyperbolic", "elliptic", "parabolic", "total", "truncation_error", "sigma", "partial",
    ]);
    let rows = map_grid(cfg, |s| {
        let b = match cfg.a {
            None => geometric_trace(sig, cfg.n, real(s), &cfg.spectrum, &cfg.scattering, &opts)?,
            Some(a) => {
                let x = geometric_trace(sig, cfg.n, real(s), &cfg.spectrum, &cfg.scattering, &opts)?;
                let y = geometric_trace(sig, cfg.n, real(a), &cfg.spectrum, &cfg.scattering, &opts)?;
                TraceBreakdown {
                    identity: x.identity - y.identity,
                    hyperbolic: x.hyperbolic - y.hyperbolic,
                    elliptic: x.elliptic - y.elliptic,
                    parabolic: x.parabolic - y.parabolic,
                    total: x.total - y.total,
                    truncation_error: x.truncation_error + y.truncation_error,
                    sigma: x.sigma.zip(y.sigma).map(|(p, q)| p - q),
                    partial: x.partial || y.partial,
                }
            }
        };
        Ok(vec![
            s.into(),
            b.identity.re.into(),
            b.hyperbolic.re.into(),
            b.elliptic.re.into(),
            b.parabolic.re.into(),
            b.total.re.into(),
            b.truncation_error.into(),
            b.sigma.map(|v| v.re).into(),
            b.partial.into(),
        ])
    })?;
    t.rows = rows;
    Ok(t)
}

pub fn cmd_det(cfg: &RunConfig) -> Result<Table> {
    let sig = cfg.surface()?;
    let a = a_for(sig, &cfg.scattering)?;
    let mut t = Table::new(&["s", "log_z_infinity", "log_z", "log_z_ell", "log_z_par", "exponent", "log_det", "det"]);
    t.rows = map_grid(cfg, |s| {
        let d = log_det_resolvent(sig, cfg.n, real(s), &cfg.spectrum, a, cfg.kmax)?;
        Ok(vec![
            s.into(),
            d.z_infinity.re.into(),
            d.z_selberg.re.into(),
            d.z_ell.re.into(),
            d.z_par.re.into(),
            d.exponent.re.into(),
            d.log_det.re.into(),
            d.log_det.re.exp().into(),
        ])
    })?;
    Ok(t)
}

pub fn cmd_constants(cfg: &RunConfig) -> Result<Table> {
    let sig = cfg.surface()?;
    let a = a_for(sig, &cfg.scattering)?;
    let (b, d) = b_d_constants(sig, cfg.n)?;
    let c = c_constant(sig, cfg.n, a, cfg.n0)?;
    let mut t = Table::new(&["n", "d_n", "A", "B", "D", "log_abs_C", "sign_C", "C"]);
    t.push(vec![
        Cell::Int(cfg.n as i64),
        Cell::Int(dim_holomorphic(sig, cfg.n)? as i64),
        Cell::Int(a),
        b.into(),
        d.into(),
        c.log_abs.into(),
        Cell::Int(c.sign as i64),
        c.value().into(),
    ]);
    Ok(t)
}

pub fn cmd_zeta(cfg: &RunConfig) -> Result<Table> {
    let mut t = Table::new(&["s", "log_z", "tail"]);
    t.rows = map_grid(cfg, |s| {
        let z = selberg_zeta_trunc(&cfg.spectrum, real(s), cfg.kmax)?;
        Ok(vec![s.into(), z.log.re.into(), z.tail.into()])
    })?;
    Ok(t)
}
