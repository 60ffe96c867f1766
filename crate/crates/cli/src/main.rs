//! `abvar`: identity checks, one-off Fourier transforms and ledger reports.
//!
//! Exit codes: 0 success, 1 an identity failed, 2 usage or parse error.
//! Output is assembled in full before anything is written, so a usage
//! error never leaves partial output behind.

use std::io::Write;
use std::process::ExitCode;

use abvar_core::fourier::verify::{verify, Identity};
use abvar_core::fourier::FourierTransform;
use abvar_core::ledger::{self, Assumptions, Format};
use abvar_core::{CohClass, HomClass, Variety};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "abvar",
    version,
    about = "Fourier transform and Lawson-homology ledger for abelian varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a transform identity on exhaustive or seeded random inputs.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        dim: u8,
        /// Identity name, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
    },
    /// Apply the Fourier transform to one class.
    Fm {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        dim: u8,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Side::Coh)]
        side: Side,
        /// Only the weight-`i` piece `P^i/i!` of the kernel.
        #[arg(long)]
        component: Option<usize>,
    },
    /// Resolve every eigen-slot of Lawson homology.
    Ledger {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        dim: u8,
        #[arg(long, default_value = "none")]
        assume: Assumptions,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Semi-topological K-theory in degree `j`.
    Ksst {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        dim: u8,
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        j: i64,
        #[arg(long, default_value = "none")]
        assume: Assumptions,
        #[arg(long, default_value = "table")]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Coh,
    Hom,
}

/// Everything a command produced, written out only once it is complete.
#[derive(Debug, PartialEq, Eq)]
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message + "\n",
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify {
            dim,
            identity,
            trials,
            seed,
            format,
        } => run_verify(dim as usize, &identity, trials, seed, format),
        Command::Fm {
            dim,
            expr,
            side,
            component,
        } => run_fm(dim as usize, &expr, side, component),
        Command::Ledger {
            dim,
            assume,
            format,
        } => match ledger::resolve(dim as usize, assume) {
            Ok(r) => Outcome::ok(match format {
                Format::Table => ledger::ledger_table(&r),
                Format::Json => ledger::ledger_json(&r),
            }),
            Err(e) => Outcome::usage(format!("error: {e}")),
        },
        Command::Ksst {
            dim,
            j,
            assume,
            format,
        } => match ledger::resolve(dim as usize, assume) {
            Ok(r) => {
                let report = ledger::ksst(&r, j);
                Outcome::ok(match format {
                    Format::Table => ledger::ksst_table(&report, &r),
                    Format::Json => ledger::ksst_json(&report, &r),
                })
            }
            Err(e) => Outcome::usage(format!("error: {e}")),
        },
    }
}

fn run_verify(n: usize, identity: &str, trials: usize, seed: u64, format: VerifyFormat) -> Outcome {
    let identities: Vec<Identity> = if identity == "all" {
        Identity::ALL.to_vec()
    } else {
        match identity.parse() {
            Ok(i) => vec![i],
            Err(e) => {
                let names: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
                return Outcome::usage(format!("error: {e} (expected all, {})", names.join(", ")));
            }
        }
    };
    let mut reports = Vec::new();
    for id in identities {
        match verify(id, n, trials, seed) {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome::usage(format!("error: {e}")),
        }
    }
    let failed = reports.iter().any(|r| !r.passed());
    let stdout = match format {
        VerifyFormat::Text => reports.iter().map(|r| r.to_text() + "\n").collect(),
        VerifyFormat::Json => serde_json::to_string_pretty(&reports).expect("plain data") + "\n",
    };
    Outcome {
        code: u8::from(failed),
        stdout,
        stderr: String::new(),
    }
}

fn run_fm(n: usize, expr: &str, side: Side, component: Option<usize>) -> Outcome {
    let x = Variety::abelian("X", n);
    let f = FourierTransform::new(&x);
    if component.is_some_and(|i| i > 2 * n) {
        return Outcome::usage(format!("error: --component must be at most {}", 2 * n));
    }
    let out = match side {
        Side::Coh => CohClass::parse(&x, expr).map(|a| {
            let image = match component {
                Some(i) => f.component(i, &a),
                None => f.apply(&a),
            };
            image.expect("class lives on X").to_string()
        }),
        Side::Hom => HomClass::parse(&x, expr).map(|y| {
            let image = match component {
                Some(i) => f
                    .component(i, &y.to_cohomology())
                    .map(|c| c.poincare_dual()),
                None => f.apply_homology(&y),
            };
            image.expect("class lives on X").to_string()
        }),
    };
    match out {
        Ok(s) => Outcome::ok(s + "\n"),
        Err(e) => Outcome::usage(format!(
            "error: {e}\n  {expr}\n  {:>width$}",
            "^",
            width = e.position + 1
        )),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap prints help/version to stdout (exit 0) and usage errors to stderr (exit 2)
        Err(e) => e.exit(),
    };
    let outcome = run(cli);
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
