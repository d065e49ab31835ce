mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use leafscheme::Error;

/// Exact period series, Gauss-Manin foliations, Frobenius powers of vector
/// fields and the hypergeometric isogeny locus.
#[derive(Debug, Parser)]
#[command(name = "leafscheme", version)]
pub struct Cli {
    /// Maximum number of worker threads used inside library calls.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Period series for every beta of a family config, as JSON.
    Periods {
        #[arg(long)]
        config: PathBuf,
    },
    /// Denominator table for every beta of a family config, as CSV.
    Denominators {
        #[arg(long)]
        config: PathBuf,
        /// Trial-division bound; larger cofactors are reported unfactored.
        #[arg(long, default_value_t = leafscheme::periods::DEFAULT_TRIAL_BOUND)]
        trial_bound: u64,
    },
    /// Closed-form quartic series for the full 35-monomial deformation.
    Eq1 {
        #[arg(long)]
        truncation: u32,
    },
    /// Griffiths basis monomials and their pole orders.
    Griffiths {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// Integrability dB = B ^ B of the connection in a system file.
    FoliationCheck {
        #[arg(long)]
        system: PathBuf,
    },
    /// Gauss-Manin assembly and the local equations of the Hodge locus.
    Gm {
        #[arg(long)]
        system: PathBuf,
        /// Hodge block sizes, overriding the system file.
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<usize>>,
    },
    /// p-th iterate of a vector field as a derivation modulo p.
    Pcurvature {
        #[command(flatten)]
        vars: input::VarArgs,
        #[arg(long)]
        field: String,
        #[arg(long)]
        prime: u64,
    },
    /// Generators of the ideal of minors of (v, w_1, ..., w_k).
    Sch {
        #[command(flatten)]
        vars: input::VarArgs,
        #[arg(long)]
        field: String,
        #[arg(long = "with")]
        with: Vec<String>,
        /// Only report whether this point lies in the zero set.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<String>>,
    },
    /// Bounded check that w(v) lies in an ideal for every form w.
    Tangency {
        #[command(flatten)]
        vars: input::VarArgs,
        #[arg(long)]
        field: String,
        #[arg(long = "form", required = true)]
        forms: Vec<String>,
        #[arg(long = "ideal")]
        ideal: Vec<String>,
        /// Cofactor degree bound; defaults to twice the largest input degree.
        #[arg(long)]
        degree: Option<u32>,
        /// Check v^p modulo this prime instead of v.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Solution of dY = B Y with Y(0) = I, truncated at total degree `order`.
    SolveLinear {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        order: u32,
    },
    /// Points of the degree-N isogeny locus over a grid of t1.
    HypergeoLocus {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long, default_value_t = 0.05)]
        from: f64,
        #[arg(long, default_value_t = 0.55)]
        to: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// The partner t2 of a single t1 on the degree-N isogeny locus.
    HypergeoWitness {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        t1: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Hodge-Tate predicate for a weighted hypersurface.
    Steenbrink {
        #[arg(long)]
        d: u32,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
        #[arg(long)]
        n: u32,
    },
}

/// What a successful run produced.
pub struct Report {
    pub text: String,
    /// Set when a bounded check ended without a certificate.
    pub unknown: bool,
}

impl Report {
    fn definite(text: String) -> Self {
        Report { text, unknown: false }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    let report = match commands::run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &report.text),
        None => std::io::stdout().lock().write_all(report.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if report.unknown { 1 } else { 0 })
}
