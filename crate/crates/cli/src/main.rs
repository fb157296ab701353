use std::io::Write;
use std::process::ExitCode;

use arndt_carlitz::asymptotics::{SumCutoff, DEFAULT_DIGITS};
use arndt_carlitz::composition::CAP_ENV_VAR;
use arndt_carlitz::{BruteForceLimit, Parity, DEFAULT_ORDER};
use arndt_carlitz_cli::{
    cmd_asymptotics, cmd_count, cmd_list, cmd_series, render_count, render_series, verify,
    CliError, Format, Method,
};
use clap::{Parser, Subcommand};

/// Count and enumerate Arndt-Carlitz compositions.
#[derive(Parser)]
#[command(name = "arndt-carlitz", version, after_help = after_help())]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn after_help() -> String {
    format!(
        "The brute-force size cap (default {}) can be raised with {CAP_ENV_VAR}.",
        BruteForceLimit::DEFAULT_CAP
    )
}

#[derive(Subcommand)]
enum Command {
    /// Even, odd and total counts for one n
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "all")]
        parity: Parity,
        #[arg(long, default_value = "gf")]
        method: Method,
        #[arg(long, default_value = "plain")]
        format: Format,
        /// Add the leading-term estimate and its relative error
        #[arg(long)]
        asymptotic: bool,
    },
    /// Coefficients 0..=order of a counting series
    Series {
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value = "all")]
        parity: Parity,
        #[arg(long, default_value = "gf")]
        method: Method,
        #[arg(long, default_value = "plain")]
        format: Format,
    },
    /// Every composition of n, one per line
    List {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "all")]
        parity: Parity,
    },
    /// Pole, growth rate and amplitudes
    Asymptotics {
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: usize,
        /// Cut every alpha/beta sum after K terms instead of summing to convergence
        #[arg(long, value_name = "K")]
        sum_terms: Option<usize>,
        #[arg(long, default_value = "plain")]
        format: Format,
    },
    /// Cross-check every counting route and the numeric constants
    Verify {
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let limit = BruteForceLimit::from_env();
    match cli.command {
        Command::Count {
            n,
            parity,
            method,
            format,
            asymptotic,
        } => {
            let record = cmd_count(n, method, limit, asymptotic)?;
            render_count(&record, parity, method, format)
        }
        Command::Series {
            order,
            parity,
            method,
            format,
        } => {
            let coeffs = cmd_series(order, parity, method, limit)?;
            render_series(&coeffs, parity, method, format)
        }
        Command::List { n, parity } => cmd_list(n, parity, limit),
        Command::Asymptotics {
            digits,
            sum_terms,
            format,
        } => {
            let cutoff = sum_terms.map_or(SumCutoff::Converged, SumCutoff::Terms);
            cmd_asymptotics(digits, cutoff, format)
        }
        Command::Verify { max_n, order } => verify(max_n, order, limit).map(|r| r.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Mismatch(report)) => {
            print!("{report}");
            eprintln!("error: verification failed");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
