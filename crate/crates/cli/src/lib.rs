//! `meandro` command-line front end: every computation of the core crate as a
//! subcommand emitting a CSV or JSON table.
//!
//! Exit codes: 0 when no row is flagged, 1 on flagged rows or computation
//! errors, 2 on malformed input or schema violations.

// negated comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod table;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use meandro::C64;

pub use config::{build_model, load_perforation, Model, ModelKind};
pub use table::{Cell, Table};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or schema violation.
    Config(String),
    Compute(meandro::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Compute(e) => e.kind(),
            CliError::Io(_) => "io",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<meandro::Error> for CliError {
    fn from(e: meandro::Error) -> Self {
        CliError::Compute(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE or RE,IM, got {s:?}")),
    }
}

/// `lo,hi`.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let z = parse_complex(s)?;
    Ok((z.re, z.im))
}

#[derive(Debug, Parser)]
#[command(
    name = "meandro",
    version,
    about = "Sums, jets and polar parts of meandromorphic series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "meander")]
    pub model: ModelKind,

    /// Model parameter `x` with `0 < |x| < 1`, as RE or RE,IM.
    #[arg(long, global = true, default_value = "0.5", value_parser = parse_complex, allow_hyphen_values = true)]
    pub x: C64,

    /// Perforation document (poles, radius, lambda).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,

    /// Sheets checked explicitly by residual-set scans.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub cutoff: usize,

    /// Report errors as JSON objects on stderr.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// S(f) at points or along a ray: z_re,z_im,S_re,S_im,tail_bound,terms_used,status
    Eval {
        #[arg(long = "z", value_parser = parse_complex, allow_hyphen_values = true)]
        z: Vec<C64>,
        /// Evaluate along z = t e^(i angle) for t = 0, t_step, ..., t_max.
        #[arg(long)]
        ray: bool,
        #[arg(long, default_value_t = std::f64::consts::TAU * std::f64::consts::SQRT_2, allow_hyphen_values = true)]
        angle: f64,
        #[arg(long, default_value_t = 1.95)]
        t_max: f64,
        #[arg(long, default_value_t = 0.05)]
        t_step: f64,
    },
    /// Taylor coefficients: k,a_re,a_im,tail_bound
    Jet {
        #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
        z0: C64,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Fiber polar sums at --z (z_re,z_im,P_re,P_im,tail_bound,terms_used,status), or
    /// with --sheet the polar coefficients of one sheet at omega (j,c_re,c_im)
    Polar {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        omega: C64,
        #[arg(long = "z", value_parser = parse_complex, allow_hyphen_values = true)]
        z: Vec<C64>,
        #[arg(long)]
        sheet: Option<usize>,
    },
    /// Gevrey fit and divergence verdict of the jet:
    /// c,alpha,prefactor,r2,radius_estimate,verdict; with --z adds the
    /// smallest-term truncation z_re,z_im,order,T_re,T_im,ln_remainder
    Gevrey {
        #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
        z0: C64,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        window: Option<(f64, f64)>,
        #[arg(long = "z", value_parser = parse_complex, allow_hyphen_values = true)]
        z: Vec<C64>,
    },
    /// Real roots of the truncated meander polynomial: x,branch,root
    Curve {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "0,0.9", value_parser = parse_range, allow_hyphen_values = true)]
        x_range: (f64, f64),
        #[arg(long, default_value_t = 91)]
        steps: usize,
    },
    /// Residual-set membership on a grid: z_re,z_im,status,sheet
    Residual {
        #[arg(long, default_value = "-1.5,1.5", value_parser = parse_range, allow_hyphen_values = true)]
        re_range: (f64, f64),
        #[arg(long, default_value = "-1.5,1.5", value_parser = parse_range, allow_hyphen_values = true)]
        im_range: (f64, f64),
        #[arg(long, default_value_t = 61)]
        nx: usize,
        #[arg(long, default_value_t = 61)]
        ny: usize,
        /// Disc inflation factor; 1 tests the perforation itself.
        #[arg(long, default_value_t = 1.0)]
        margin: f64,
    },
    /// Covering inclusion sweep:
    /// alpha,r,omega_re,omega_im,s,rho,inner_margin,outer_margin,status
    Covering {
        #[arg(long, default_value_t = 2)]
        alpha: u32,
        #[arg(long, value_delimiter = ',', default_value = "0.01,0.001")]
        r: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.5,0.9,1.0")]
        modulus: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        arg: f64,
        #[arg(long, default_value_t = 360)]
        angles: usize,
    },
}

/// A command's table plus the number of rows it flagged.
pub struct Report {
    pub table: Table,
    pub flagged: usize,
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let pool = thread_pool()?;
    pool.install(|| commands::dispatch(cli))
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("MEANDRO_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Config(format!("MEANDRO_THREADS={v:?} is not a count")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Config(e.to_string()))
}

fn render(cli: &Cli, table: &Table) -> String {
    match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn report_error(json: bool, e: &CliError) {
    if json {
        let obj = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
        eprintln!("{obj}");
    } else {
        eprintln!("error: {e}");
    }
}

/// Parses `args`, runs the command, writes the table and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = execute(&cli).and_then(|report| {
        let text = render(&cli, &report.table);
        match &cli.out {
            Some(p) => std::fs::write(p, text).map_err(CliError::Io)?,
            None => print!("{text}"),
        }
        Ok(report.flagged)
    });
    match result {
        Ok(0) => 0,
        Ok(n) => {
            if cli.json {
                eprintln!("{}", serde_json::json!({ "flagged": n }));
            } else {
                eprintln!("{n} flagged rows");
            }
            1
        }
        Err(e) => {
            report_error(cli.json, &e);
            e.exit_code()
        }
    }
}
