//! `nhom`: batch verification and constructions on JSON bundle documents.
//!
//! Exit status is 0 when every checked identity holds, 1 when one fails and
//! 2 when an input cannot be used. Reports and bundles go to standard output,
//! everything else to standard error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nhom", version, about = "Exact checks for n-ary Hom-Lie and Hom-pre-Lie superalgebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads for the identity loops (defaults to rayon's choice).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest accepted arity.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_n: usize,
    /// Largest accepted space dimension.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_dim: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the defining identities of an algebra or representation bundle.
    Verify {
        /// Bundle file, or `-` for standard input.
        file: String,
        /// Report only this identity id (`multiplicativity` is also accepted).
        #[arg(long)]
        identity: Option<String>,
        /// Loop over every tuple instead of canonical representatives.
        #[arg(long)]
        full_loops: bool,
    },
    /// Build a derived bundle.
    Construct {
        what: Construction,
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Check an operator document against an algebra or representation.
    CheckOperator {
        what: OperatorKind,
        op: String,
        bundle: String,
        /// Rota-Baxter weight as `p/q`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        weight: String,
        /// Power of the twist applied to the operator in the Rota-Baxter sum.
        #[arg(long, default_value_t = 0)]
        power: u32,
        #[arg(long)]
        full_loops: bool,
    },
    /// Induce an n-ary product or representation from a binary one and a form.
    Induce {
        what: Induction,
        phi: String,
        bundle: String,
    },
    /// Enumerate operators with entries from a grid and print the passing ones.
    Search {
        what: SearchTarget,
        bundle: String,
        /// Comma-separated rationals, e.g. "-1,0,1".
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        limit: Option<usize>,
        /// Defaults to rota-baxter on algebras and o-operator on representations.
        #[arg(long)]
        kind: Option<OperatorKind>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value_t = 0)]
        power: u32,
        /// Refuse grids with more candidates than this.
        #[arg(long, default_value_t = 10_000_000)]
        max_candidates: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Subadjacent,
    Semidirect,
    Adjoint,
    RhoTilde,
    Dual,
    Tensor,
    Twist,
    NtLift,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    RotaBaxter,
    OOperator,
    Nijenhuis,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Induction {
    Nary,
    Representation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    Operator,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("nhom: cannot configure {k} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("nhom: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
