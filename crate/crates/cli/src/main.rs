//! `gapprin` command-line front end.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "gapprin", version, about = "Gap principles, minimal pairs, automorphism groups and Thue censuses")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Precision budget in bits for root refinement and group reconstruction.
    #[arg(long, global = true, default_value_t = 512)]
    pub precision_bits: u32,
    /// Seed echoed into the report; every computation is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal pair (P, Q) with P(α) + βQ(α) = 0.
    Minpair {
        alpha: String,
        /// An algebraic number, or `alpha:POLY` for POLY(α).
        beta: String,
        /// `exact` minimizes the height; `siegel` only checks the Siegel bound.
        #[arg(long, default_value = "exact")]
        mode: commands::Mode,
    },
    /// Gap-principle constants.
    #[command(subcommand)]
    Constants(ConstantsCmd),
    /// Enhanced automorphism group Aut'|F| of a binary form.
    Aut { form: String },
    /// Thue inequality |F(x, y)| <= m.
    #[command(subcommand)]
    Thue(ThueCmd),
    /// Dichotomy checks for approximation pairs.
    #[command(subcommand)]
    Gap(GapCmd),
    /// p-adic roots by Hensel lifting.
    #[command(subcommand)]
    Padic(PadicCmd),
    /// The degree-12 family with a D12 group: invariance and scaling identities.
    D12 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Run the dichotomy experiment suite.
    Sweep,
}

#[derive(Subcommand, Debug)]
pub enum ConstantsCmd {
    /// C1, C2 and their ingredients for complex α and β in ℚ(α).
    Arch {
        alpha: String,
        beta: String,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value = "1")]
        c0: String,
    },
    /// C3, C4 for the p-adic root of F congruent to the residue, with β = BETA(α).
    Padic {
        form: String,
        beta: String,
        #[arg(long)]
        prime: String,
        #[arg(long, allow_hyphen_values = true)]
        residue: String,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value = "1")]
        c0: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ThueCmd {
    /// Primitive solutions with max(|x|, |y|) <= B, one row per ±-class.
    Enum { form: String, m: String, bound: String },
    /// Solutions, root assignment, orbits, C5 and the counting bound.
    Census {
        form: String,
        m: String,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long = "box", default_value = "100")]
        bound: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GapCmd {
    /// Check pairs `x1/y1:x2/y2` of approximations to α and β.
    Check {
        /// α, or the polynomial F when `--prime` is given.
        alpha: String,
        /// β, or the polynomial BETA with β = BETA(α) when `--prime` is given.
        beta: String,
        #[arg(required = true, allow_hyphen_values = true)]
        pairs: Vec<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value = "1")]
        c0: String,
        #[arg(long)]
        prime: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        residue: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PadicCmd {
    /// Lift the simple root of F congruent to R0 modulo P.
    Root {
        form: String,
        p: String,
        #[arg(allow_hyphen_values = true)]
        r0: String,
        /// Number of p-adic digits to lift.
        #[arg(long, default_value_t = 8)]
        digits: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = commands::run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.text.as_bytes());
    let _ = stdout.flush();
    if let Some(msg) = &out.message {
        eprintln!("gapprin: {msg}");
    }
    ExitCode::from(out.code)
}
