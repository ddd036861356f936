//! `knotamp`: evaluate link invariants and classify two-site operators.

mod commands;
mod emit;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotamp::Error;

#[derive(Parser)]
#[command(name = "knotamp", version, about = "State-sum link invariants and Yang-Baxter operator checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Out::Text, global = true)]
    out: Out,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Out {
    Text,
    Json,
}

#[derive(Args, Clone)]
pub struct Input {
    /// Braid word such as "3: s1 s2^-1 v1"; repeatable.
    #[arg(long)]
    braid: Vec<String>,
    /// Morse event list such as "U0,X0,X0,A0"; repeatable.
    #[arg(long)]
    morse: Vec<String>,
    /// Close braid inputs.
    #[arg(long)]
    closed: bool,
}

#[derive(Args, Clone)]
pub struct ModelArg {
    /// bracket | swapfg | product | virtual
    #[arg(long, default_value = "bracket")]
    model: String,
    /// Product model: s = i^k.
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    s_exponent: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a model on braid or Morse inputs.
    Eval {
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        input: Input,
        /// Divide out the writhe monomial.
        #[arg(long)]
        normalize: bool,
        /// Also evaluate numerically at A = e^{iθ}.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Bracket by exhaustive state expansion.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        normalize: bool,
    },
    /// Three-strand representation at A = e^{iθ}.
    Jones3 {
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        /// Optional 3-strand braid for the trace formula.
        #[arg(long)]
        braid: Option<String>,
    },
    /// Yang-Baxter equation for a JSON matrix, or every consistency check of a model.
    Ybe {
        #[arg(long, conflicts_with = "model")]
        matrix: Option<String>,
        #[arg(long)]
        model: Option<String>,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        s_exponent: i64,
    },
    /// Entanglement verdict for a 4×4 operator.
    Entangle {
        #[arg(long, conflicts_with = "model")]
        matrix: Option<String>,
        /// bracket | virtual: use the model's R.
        #[arg(long)]
        model: Option<String>,
        /// Substitute A = e^{iθ} into the model's R.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
    },
    /// Sample random closed diagrams and test SC − w − 1 ≡ 0 (mod 2).
    Parity {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_strands: usize,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        /// Random Morse moves applied to each closure.
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    /// Apply random regular-isotopy moves and re-evaluate.
    Moves {
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Internal(_) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { model, input, normalize, theta, jobs } => commands::eval(&model, &input, normalize, theta, jobs),
        Command::Oracle { input, normalize } => commands::oracle(&input, normalize),
        Command::Jones3 { theta, braid } => commands::jones3(theta, braid.as_deref()),
        Command::Ybe { matrix, model, s_exponent } => commands::ybe(matrix.as_deref(), model.as_deref(), s_exponent),
        Command::Entangle { matrix, model, theta } => commands::entangle(matrix.as_deref(), model.as_deref(), theta),
        Command::Parity { seed, count, max_strands, max_len, steps } => {
            commands::parity(seed, count, max_strands, max_len, steps)
        }
        Command::Moves { model, input, seed, steps } => commands::moves(&model, &input, seed, steps),
    };
    match result {
        Ok(report) => {
            match cli.out {
                Out::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
                Out::Text => print!("{}", report.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("knotamp: error[{}]: {}", e.code(), e);
            ExitCode::from(exit_code(&e))
        }
    }
}
