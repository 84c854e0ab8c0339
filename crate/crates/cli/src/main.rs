//! `splitring`: build, verify and export universal splitting rings.

mod commands;
mod job;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use splitring_core::splitting::DEFAULT_CAP;

use crate::commands::Outcome;
use crate::job::{Convention, Input};

#[derive(Parser)]
#[command(name = "splitring", version, about = "Universal splitting rings of monic polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,
    /// Largest degree to build (default 6).
    #[arg(long, global = true, env = "SPLITRING_CAP")]
    cap_override: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct PolyArgs {
    /// Base ring: Z, Q, Zmod:<m>, Mat:<k>:<spec>, PolyCoef:<t>:<spec>, UpperTri:<k>:<spec>.
    #[arg(long, default_value = "Z")]
    ring: String,
    /// All coefficients of f, constant term first.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["a", "b"])]
    f: Option<String>,
    /// a_1..a_n, where f = Z^n - a_1 Z^(n-1) + ... + (-1)^n a_n.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "b")]
    a: Option<String>,
    /// b_0..b_(n-1), where f = Z^n + b_(n-1) Z^(n-1) + ... + b_0 (the default reading).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Degree; checked against the coefficient count, or alone for zero coefficients.
    #[arg(long)]
    n: Option<usize>,
}

impl PolyArgs {
    fn input(&self) -> Input {
        let (convention, coeffs) = match (&self.f, &self.a, &self.b) {
            (Some(f), _, _) => (Convention::Full, Some(f.clone())),
            (_, Some(a), _) => (Convention::A, Some(a.clone())),
            (_, _, b) => (Convention::B, b.clone()),
        };
        Input { ring: self.ring.clone(), convention, coeffs, n: self.n }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the relations f_1..f_n by both constructions.
    Relations(PolyArgs),
    /// Build the matrices A_1..A_n and run every check.
    Matrices(PolyArgs),
    /// Reduce a finite noncommutative base by the commutator ideal, then build.
    Noncomm(PolyArgs),
    /// Certify the permutation and scaling automorphisms.
    Automorphisms(PolyArgs),
    /// Re-import a JSON export of `matrices` and check it again.
    Verify {
        /// File written by `matrices --format json`.
        file: PathBuf,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let cap = cli.common.cap_override.unwrap_or(DEFAULT_CAP);
    let mut rng = StdRng::seed_from_u64(cli.common.seed);
    match &cli.command {
        Command::Relations(p) => commands::relations(&p.input()),
        Command::Matrices(p) => commands::matrices(&p.input(), cap, &mut rng),
        Command::Noncomm(p) => commands::noncomm(&p.input(), cap, &mut rng),
        Command::Automorphisms(p) => commands::automorphisms(&p.input(), cap),
        Command::Verify { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| anyhow::anyhow!("{}: {e}", file.display()))?;
            let doc: serde_json::Value = serde_json::from_str(&text)?;
            commands::verify(&doc, cap)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            if matches!(e.downcast_ref(), Some(splitring_core::Error::NonCentralCoefficients)) {
                eprintln!("hint: `splitring noncomm` first reduces a finite base by the commutator ideal");
            }
            return ExitCode::from(2);
        }
    };
    let mut rendered = match cli.common.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable"),
        Format::Text => outcome.text.trim_end().to_string(),
    };
    rendered.push('\n');
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
