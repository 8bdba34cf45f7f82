//! `subadd`: Betti tables, maximal shifts and subadditivity checks for
//! monomial ideals.
//!
//! Exit codes: 0 success, 1 input error, 2 violation of a proved statement
//! (engine bug), 3 size cap exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subadd::{Caps, FieldSpec, Method};

/// Environment variable that sets the worker thread count.
const THREADS_ENV: &str = "SUBADD_THREADS";

#[derive(Debug, Parser)]
#[command(name = "subadd", version, about = "Graded Betti numbers and subadditivity checks for monomial ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coefficient field: GF(p) for a prime p, or Q.
    #[arg(long, global = true, default_value = "GF(2)")]
    pub field: FieldSpec,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Largest polarized variable count accepted by the Hochster engine.
    #[arg(long, global = true, default_value_t = Caps::default().hochster_vars)]
    pub max_vars: usize,

    /// Largest generator count accepted by the Taylor engine.
    #[arg(long, global = true, default_value_t = Caps::default().taylor_gens)]
    pub max_gens: usize,
}

impl Cli {
    pub fn caps(&self) -> Caps {
        Caps {
            hochster_vars: self.max_vars,
            taylor_gens: self.max_gens,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// Exactly one of an inline argument or `--file` (`-` reads stdin).
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Inline input text.
    pub text: Option<String>,
    /// Read the input from a file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Hochster,
    Taylor,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Hochster => Method::Hochster,
            MethodArg::Taylor => Method::Taylor,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded Betti table of S/I.
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Maximal shifts t_0..t_p and the projective dimension p.
    Shifts {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "taylor")]
        method: MethodArg,
    },
    /// Subadditivity, the prefix-sum bound and the one-step bound.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "taylor")]
        method: MethodArg,
    },
    /// Search for a Taylor basis element realizing t_c.
    Witness {
        #[command(flatten)]
        input: Input,
        /// Homological degree; defaults to the projective dimension.
        #[arg(long)]
        c: Option<usize>,
    },
    /// The lcm-ratio criterion and its ratios.
    Ab6 {
        #[command(flatten)]
        input: Input,
    },
    /// Union lemma on a family of complexes separated by `|`, or a seeded
    /// random campaign with `--random`.
    #[command(name = "verify-lemma1")]
    VerifyLemma1 {
        /// Family in fixture form, e.g. `n=3; facets: 1 2 | n=3; facets: 2 3`.
        text: Option<String>,
        #[arg(long, conflicts_with = "text")]
        file: Option<PathBuf>,
        /// Degree to check; all degrees when omitted.
        #[arg(long, allow_hyphen_values = true)]
        j: Option<i32>,
        /// Run this many seeded random instances instead.
        #[arg(long, conflicts_with_all = ["text", "file"])]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        t_max: usize,
    },
    /// Vanishing of the induced union for one instance, or a seeded random
    /// campaign with `--random`.
    #[command(name = "verify-prop2")]
    VerifyProp2 {
        /// Complex in fixture form, e.g. `facets: 1 2; 2 3; 3 1`.
        text: Option<String>,
        #[arg(long, conflicts_with = "text")]
        file: Option<PathBuf>,
        /// Vertex set W, 1-based labels separated by spaces or commas.
        #[arg(long)]
        w: Option<String>,
        /// Vertex set A inside W.
        #[arg(long = "a-set")]
        a_set: Option<String>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, conflicts_with_all = ["text", "file"])]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Seeded fuzz campaign over random ideals.
    Fuzz(FuzzArgs),
    /// Re-run a campaign CSV or a repro bundle (JSON) and compare.
    Replay {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub r_min: usize,
    #[arg(long, default_value_t = 6)]
    pub r_max: usize,
    #[arg(long, default_value_t = 1)]
    pub deg_min: u32,
    #[arg(long, default_value_t = 4)]
    pub deg_max: u32,
    #[arg(long)]
    pub squarefree: bool,
    /// Comma-separated fields; defaults to `--field`.
    #[arg(long, value_delimiter = ',')]
    pub fields: Vec<FieldSpec>,
    /// Largest polarized variable count that gets the Hochster cross-check.
    #[arg(long, default_value_t = 12)]
    pub cross_check_vars: usize,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the JSON summary here.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Write the repro bundle of an aborted campaign here.
    #[arg(long)]
    pub bundle: Option<PathBuf>,
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    // usage errors exit with 1, not clap's default 2, which is reserved
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.data);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
