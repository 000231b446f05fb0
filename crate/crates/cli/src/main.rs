//! `cmds`: JSON-in, JSON-out front end.
//!
//! Exit codes: 0 when the property holds or the construction succeeds, 1 when
//! the property fails, 2 on usage or input errors (one line on stderr).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cmds", version, about = "MDS matrices with prescribed zero patterns")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    /// Nested running intersections of sizes k-1, .., 0.
    Thm5,
    /// Staircase sizes |S_i| <= i - 1, with one extra padding point.
    Thm7,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build an MDS matrix with zero pattern given by a set system.
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        sets: PathBuf,
        #[arg(long)]
        q: u64,
        /// Evaluation points, e.g. `1,0,3` or `(1;0),(0;1)`; defaults to field order.
        #[arg(long)]
        points: Option<String>,
        /// Reorder rows so that the method's hypothesis holds.
        #[arg(long)]
        reorder: bool,
    },
    /// Check every k x k minor of a matrix.
    VerifyMds {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Print the zero pattern of a matrix as a set system.
    ZeroPattern {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Check |I| + |intersection of S_i over I| <= k for all nonempty I.
    CheckMdsCondition {
        #[arg(long)]
        sets: PathBuf,
    },
    /// Determinant of the coefficient matrix, direct and in closed form.
    SymbolicDet {
        #[arg(long)]
        sets: PathBuf,
        /// `auto` or an explicit chain such as `1,2,3`.
        #[arg(long, default_value = "auto")]
        witness: String,
    },
    /// Check the V_l(k) property of a vector family.
    VkCheck {
        #[arg(long)]
        vectors: PathBuf,
        /// Defaults to the k in the file.
        #[arg(long)]
        k: Option<usize>,
        /// Defaults to n (plain V(k)).
        #[arg(long)]
        l: Option<usize>,
    },
    /// Exact linear independence of P(k, V).
    Independence {
        #[arg(long)]
        vectors: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Null vector certificate for the W_b family.
    Counterexample {
        #[arg(long)]
        b: usize,
    },
    /// Exhaustive independence check over small V_l(k) families.
    L2Sweep {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        mmax: usize,
        #[arg(long, default_value_t = 1)]
        kmin: usize,
        #[arg(long, default_value_t = 1)]
        nmin: usize,
        /// Number of trailing coordinates allowed to exceed 1.
        #[arg(long, default_value_t = 2)]
        level: usize,
        /// Largest entry; defaults to k - 1.
        #[arg(long)]
        entry_cap: Option<u32>,
        #[arg(long)]
        budget: Option<u128>,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("CMDS_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("CMDS_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("CMDS_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg.lines().next().unwrap_or("").trim_start_matches("error: "));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&e.to_string()),
    };
    if let Err(e) = configure_threads() {
        return fail(&e);
    }
    match commands::run(cli.command) {
        Ok(out) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&out.payload)
            } else {
                serde_json::to_string(&out.payload)
            }
            .expect("JSON values serialize");
            println!("{text}");
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&e.to_string()),
    }
}
