//! `gamma-cycles`: command-line front end for divided powers, polynomial
//! laws and zero cycles.
//!
//! Exit status: 0 on success, 1 when a requested check fails, 2 on
//! malformed input or a construction error.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "gamma-cycles", version, about = "Divided powers, polynomial laws and zero cycles")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiply divided-power elements: external product, or the internal
    /// product over an algebra when `--algebra` is given.
    GammaMul {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Ring for elements that do not name one (`Q` or `F<p>`).
        #[arg(long, default_value = "Q")]
        ring: String,
    },
    /// Check that a law is multiplicative.
    LawCheck {
        #[arg(long)]
        law: PathBuf,
    },
    /// Evaluate a law at an element, or print it as a polynomial.
    LawEval {
        #[arg(long)]
        law: PathBuf,
        /// `x^2 + 1` in the algebra's generators, or `[c1,..,cn]`.
        #[arg(long)]
        element: Option<String>,
    },
    /// The trace θ = Θ_1 of a law.
    Trace {
        #[arg(long)]
        law: PathBuf,
    },
    /// The law determined by a degree-d trace.
    Norm {
        #[arg(long)]
        trace: PathBuf,
    },
    /// Θ_k(b_1, .., b_k), with k the number of `--element` arguments.
    Theta {
        #[arg(long, conflicts_with = "trace", required_unless_present = "trace")]
        law: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long = "element")]
        elements: Vec<String>,
    },
    /// Characteristic polynomial χ(t) = n(b − t).
    Charpoly {
        #[arg(long)]
        law: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Push a law to its Cayley–Hamilton quotient.
    ChReduce {
        #[arg(long)]
        law: PathBuf,
    },
    /// First-order deformations of the trace of d·[Q].
    Tangent {
        #[arg(long)]
        algebra: PathBuf,
        /// Values of the generators at Q, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        degree: usize,
    },
    /// The reduced pair (Y, n) of a zero cycle.
    CycleLaw {
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Sum of cycles.
    Sum {
        #[arg(long = "cycle", num_args = 1.., required = true)]
        cycles: Vec<PathBuf>,
    },
    /// Direct image of a cycle. `--map` gives, for each generator of the
    /// target ambient, its image as a polynomial on the cycle's ambient.
    Pushforward {
        #[arg(long)]
        cycle: PathBuf,
        /// `poly:Q[u,v]` or an algebra file.
        #[arg(long)]
        to: String,
        #[arg(long = "map", allow_hyphen_values = true)]
        maps: Vec<String>,
    },
    /// Equivalence of two cycles; exits 1 when they differ.
    Equiv {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Norm of a cocycle of invertible modules.
    CocycleNorm {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// The Chow form Ω_l of a projective zero cycle.
    ChowForm {
        #[arg(long)]
        cycle: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Multiplicativity of Chow forms up to `--top`, and optionally whether
    /// Ω_level separates the cycle from `--against`.
    ChowCheck {
        #[arg(long)]
        cycle: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long, default_value_t = 2)]
        top: usize,
    },
    /// Run the property suites. Timing goes to stderr.
    VerifyAll {
        /// Overridden by GAMMA_CYCLES_SEED.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Run a single suite.
        #[arg(long)]
        suite: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serialisable"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
