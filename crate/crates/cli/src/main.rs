use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use puiseux_cli::{execute, Command, Options};

/// Exact power series, Puiseux series and the F = z²F' + z counterexample.
///
/// Exit status: 0 on success, 1 when a check fails, 2 on usage or parse
/// errors.
#[derive(Parser)]
#[command(name = "puiseux", version)]
struct Cli {
    /// Number of terms (or exponent bound) to compute and print.
    #[arg(long, global = true, default_value_t = 20)]
    order: usize,
    /// Emit JSON instead of text. Coefficients are {"num", "den"} decimal strings.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Evaluate an expression in z, in x and y, or in t.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Solve a linear equation such as "z^2*F' - F = -z"; lists a_0..a_N.
    OdeSolve {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        /// F(0), required when A(0) != 0.
        #[arg(long, allow_hyphen_values = true)]
        initial: Option<String>,
    },
    /// Check that the residual vanishes at indices below --order.
    OdeCheck {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        /// Series in z to check instead of the computed solution.
        #[arg(long, allow_hyphen_values = true)]
        candidate: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        initial: Option<String>,
    },
    /// Search for the least n <= nmax with |a_n|*r^n > M.
    Diverge {
        #[arg(allow_hyphen_values = true)]
        series: String,
        #[arg(long)]
        r: String,
        #[arg(long = "M", alias = "m")]
        m: String,
        #[arg(long, default_value_t = 1000)]
        nmax: usize,
    },
    /// Compare two Puiseux elements through exponent --order.
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Cauchy-Riemann check through degree --order: one series in z, or a
    /// pair of series in x and y.
    CrCheck {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: Option<String>,
    },
    /// Replay the counterexample: solve, residual, Cauchy-Riemann, divergence.
    Counterexample {
        #[arg(long, default_value = "1/10")]
        r: String,
        #[arg(long = "M", alias = "m", default_value = "1000000")]
        m: String,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
        /// Perturb coefficient K of the solution after stage 1.
        #[arg(long, hide = true)]
        tamper: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Sub::Eval { expr } => Command::Eval { expr },
        Sub::OdeSolve { equation, initial } => Command::OdeSolve { equation, initial },
        Sub::OdeCheck {
            equation,
            candidate,
            initial,
        } => Command::OdeCheck {
            equation,
            candidate,
            initial,
        },
        Sub::Diverge { series, r, m, nmax } => Command::Diverge { series, r, m, nmax },
        Sub::Compare { a, b } => Command::Compare { a, b },
        Sub::CrCheck { first, second } => Command::CrCheck { first, second },
        Sub::Counterexample { r, m, nmax, tamper } => {
            Command::Counterexample { r, m, nmax, tamper }
        }
    };
    let opts = Options {
        order: cli.order,
        seed: cli.seed,
    };
    match execute(&command, &opts) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(report.output(cli.json).as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
