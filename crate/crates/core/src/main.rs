use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use creal::cli::{
    compare_command, eval_command, lub_demo_command, sqrt_command, CliError, EvalConfig,
};
use creal::lub::{LubConfig, LubMode};
use creal::Rational;

#[derive(Parser)]
#[command(name = "creal", version, about = "Exact real calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Paper,
    Fast,
}

impl From<Mode> for LubMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Paper => LubMode::Paper,
            Mode::Fast => LubMode::Fast,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    Sqrt2,
}

#[derive(clap::Args)]
struct Budgets {
    /// Largest precision tried when separating a value from zero
    #[arg(long, default_value_t = 1 << 20)]
    sep_budget: u64,
    /// Ceiling on least-upper-bound steps
    #[arg(long, default_value_t = 1 << 24)]
    lub_steps: u64,
}

impl Budgets {
    fn config(&self, mode: Mode) -> EvalConfig {
        EvalConfig {
            sep_budget: self.sep_budget,
            lub: LubConfig {
                step_cap: self.lub_steps,
                ..LubConfig::default()
            },
            mode: mode.into(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print it to N decimal places
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 20)]
        digits: usize,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Compare two expressions at precision K: LESS, GREATER or CLOSE(1/K)
    Compare {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, default_value_t = 1_000_000)]
        k: u64,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Square root of a rational, as a least upper bound
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        radicand: String,
        #[arg(long, default_value_t = 20)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = Mode::Fast)]
        mode: Mode,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Least-upper-bound demonstrations
    LubDemo {
        #[arg(value_enum)]
        demo: Demo,
        #[arg(long, default_value_t = 2)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = Mode::Fast)]
        mode: Mode,
        #[command(flatten)]
        budgets: Budgets,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Eval {
            expr,
            digits,
            budgets,
        } => eval_command(&expr, digits, &budgets.config(Mode::Fast)),
        Command::Compare {
            lhs,
            rhs,
            k,
            budgets,
        } => compare_command(&lhs, &rhs, k.max(1), &budgets.config(Mode::Fast)),
        Command::Sqrt {
            radicand,
            digits,
            mode,
            budgets,
        } => sqrt_command(&radicand, digits, &budgets.config(mode)),
        Command::LubDemo {
            demo: Demo::Sqrt2,
            digits,
            mode,
            budgets,
        } => {
            let (printed, summary) = lub_demo_command(digits, &budgets.config(mode))?;
            if let Some(s) = summary {
                let i = s.last_no.i;
                let window = &s.last_no.a - Rational::new(2, i).expect("i ≥ 1");
                eprintln!(
                    "paper mode: {} steps, {} NO answers; a'_(m_{i}) = {} >= result > {}",
                    s.steps,
                    i,
                    s.last_no.a.to_decimal(digits + 4),
                    window.to_decimal(digits + 4),
                );
            }
            Ok(printed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
