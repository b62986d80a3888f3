use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use gammaeval::numerics::DEFAULT_PRECISION;
use gammaeval::qseries::DEFAULT_ORDER;
use gammaeval::telescoping::DEFAULT_MAX_ORDER;
use gammaeval_cli::commands::{self, finish};
use gammaeval_cli::{EntryStatus, Outcome, Settings, EXIT_DIAGNOSTIC, EXIT_OK, EXIT_USAGE};

/// Gamma evaluations of hypergeometric series: search, synthesis,
/// telescoping and certification.
#[derive(Parser, Debug)]
#[command(name = "gammaeval", version)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "GAMMAEVAL_PREC", default_value_t = DEFAULT_PRECISION)]
    prec: usize,
    /// Truncation order for q-series checks.
    #[arg(long, global = true, env = "GAMMAEVAL_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Wall-clock limit in seconds; 0 disables it.
    #[arg(long, global = true, default_value_t = 30.0)]
    timeout: f64,
    /// Print the JSON document instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Contiguous decomposition F(β+γ) = R·F(β) + Q·F'(β) for a shift.
    Derive {
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
    },
    /// Admissible families for a shift, as a JSON array.
    Find {
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        /// Extra candidate arguments, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        z0_hints: Option<String>,
    },
    /// Gamma closed form for one admissible family.
    ClosedForm {
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        /// Index into the families printed by `find`.
        #[arg(long, default_value_t = 0)]
        family: usize,
    },
    /// Recurrence in t for the sum over n of a hypergeometric term.
    Recurrence {
        /// Upper parameters, comma separated linear forms in t.
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        /// Lower parameters other than 1.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        lower: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Numeric certification of an identity record.
    Verify {
        /// JSON file or corpus:NAME.
        #[arg(long)]
        identity: String,
        /// Sample points in t, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Coefficientwise check of a q-series identity.
    Qverify {
        /// Built-in or corpus name, or a JSON file.
        #[arg(long)]
        identity: String,
    },
    /// Runs the shipped corpus, optionally filtered by a name pattern.
    Corpus {
        #[arg(default_value = "*")]
        pattern: String,
        #[arg(long, value_enum)]
        status: Option<StatusArg>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StatusArg {
    Certified,
    Derived,
    Failed,
}

impl From<StatusArg> for EntryStatus {
    fn from(s: StatusArg) -> Self {
        match s {
            StatusArg::Certified => EntryStatus::Certified,
            StatusArg::Derived => EntryStatus::Derived,
            StatusArg::Failed => EntryStatus::Failed,
        }
    }
}

fn dispatch(command: Command, settings: Settings) -> Outcome {
    finish(match command {
        Command::Derive { shift } => commands::derive(&shift),
        Command::Find { shift, z0_hints } => commands::find(&shift, z0_hints.as_deref()),
        Command::ClosedForm { shift, family } => commands::closed_form(&shift, family, settings.prec),
        Command::Recurrence { upper, lower, z, max_order } => commands::recurrence(&upper, &lower, &z, max_order),
        Command::Verify { identity, points } => commands::verify(&identity, points.as_deref(), settings),
        Command::Qverify { identity } => commands::qverify(&identity, settings),
        Command::Corpus { pattern, status } => commands::corpus_run(&pattern, status.map(Into::into), settings),
    })
}

fn run(cli: Cli) -> Outcome {
    if cli.prec < 32 {
        return Outcome::usage(format!("precision {} is below the 32-bit minimum", cli.prec));
    }
    if !(cli.timeout >= 0.0 && cli.timeout.is_finite()) {
        return Outcome::usage(format!("invalid timeout {}", cli.timeout));
    }
    let settings = Settings { prec: cli.prec, order: cli.order };
    let command = cli.command;
    if cli.timeout == 0.0 {
        return dispatch(command, settings);
    }
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(dispatch(command, settings));
    });
    match rx.recv_timeout(Duration::from_secs_f64(cli.timeout)) {
        Ok(o) => o,
        Err(mpsc::RecvTimeoutError::Timeout) => {
            let m = format!("timed out after {}s", cli.timeout);
            Outcome {
                code: EXIT_DIAGNOSTIC,
                text: format!("error: {m}"),
                json: serde_json::json!({ "error": "timeout", "message": m }),
            }
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => Outcome {
            code: EXIT_DIAGNOSTIC,
            text: "error: command aborted".into(),
            json: serde_json::json!({ "error": "diagnostic", "message": "command aborted" }),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    let out = run(cli);
    if json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
    } else if out.json.get("error").is_some() {
        eprintln!("{}", out.text);
    } else {
        println!("{}", out.text);
    }
    ExitCode::from(out.code)
}
