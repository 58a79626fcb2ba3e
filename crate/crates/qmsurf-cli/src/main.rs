use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use qmsurf_cli::commands::{
    cmd_frob, cmd_infer, cmd_maximal, cmd_quat, cmd_satotate, cmd_verify_lk, FrobArgs, InferArgs,
    MaximalArgs, QuatArgs, QuatOp, SatoTateArgs, VerifyLkArgs,
};
use qmsurf_cli::scan::EmbeddingChoice;
use qmsurf_cli::{fixtures, CliError};
use qmsurf_core::modell::RootChoice;

/// Endomorphism structure of genus-2 Jacobians from Frobenius data.
#[derive(Parser)]
#[command(name = "qmsurf", version, about)]
struct Cli {
    /// Worker threads for the per-prime scan (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count points and emit Frobenius trace data as CSV.
    Frob(FrobCli),
    /// Infer the endomorphism structure from a prime scan.
    Infer(InferCli),
    /// Decide maximality of the residual mod-ell image from a traces CSV.
    Maximal(MaximalCli),
    /// Histogram of normalized Frobenius traces (degree-1 fast path).
    Satotate(SatoTateCli),
    /// Verify that all endomorphisms are defined over the base field.
    VerifyLk(VerifyLkCli),
    /// Quaternion algebra computations.
    #[command(subcommand)]
    Quat(QuatCli),
    /// Regenerate the bundled example curve files.
    Fixtures(FixturesCli),
}

#[derive(Args)]
struct FrobCli {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    #[arg(long)]
    pmax: u64,
    /// Count over F_p only (no quartic, no candidates).
    #[arg(long)]
    deg1_only: bool,
    /// Which embedding sqrt(d) -> r to use: +, - or both.
    #[arg(long, default_value = "both")]
    embedding: String,
    /// Primes to skip, comma separated.
    #[arg(long)]
    exclude: Option<String>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InferCli {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    #[arg(long)]
    pmax: u64,
    /// Assumed reduced discriminant of the quaternion algebra.
    #[arg(long)]
    disc: u64,
    /// Ramification set override, comma separated (default: bad primes).
    #[arg(long)]
    bad: Option<String>,
    /// Candidate delta override, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    deltas: Option<String>,
    #[arg(long, default_value_t = 3)]
    min_split: usize,
    #[arg(long, default_value_t = 3)]
    min_inert: usize,
    /// Write the machine-readable CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MaximalCli {
    /// Traces CSV as produced by `frob`.
    #[arg(long)]
    traces: PathBuf,
    #[arg(long)]
    ell: u64,
    /// Field m of the two-dimensional component.
    #[arg(long, allow_negative_numbers = true)]
    field: i64,
    /// Square root choice mod ell: + or -.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    root: String,
    /// Restrict to these rational primes, comma separated.
    #[arg(long)]
    primes: Option<String>,
}

#[derive(Args)]
struct SatoTateCli {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    #[arg(long)]
    pmax: u64,
    #[arg(long)]
    bins: usize,
    /// Skip primes violating the square-type parity instead of aborting.
    #[arg(long)]
    allow_mixed: bool,
    /// Reference density overlay (one `x,density` row per bin).
    #[arg(long, name = "ref")]
    reference: Option<PathBuf>,
    /// Histogram CSV destination.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyLkCli {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    #[arg(long)]
    pmax: u64,
    /// Ramification set override, comma separated.
    #[arg(long)]
    bad: Option<String>,
}

#[derive(Subcommand)]
#[command(args_override_self = false)]
enum QuatCli {
    /// Ramified places and reduced discriminant of (a, b / Q).
    Disc {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    /// Does Q(sqrt m) embed into the algebra of discriminant D?
    Embed {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        disc: u64,
    },
    /// Are three quadratic fields consistent as the intermediate algebras?
    Triple {
        #[arg(allow_negative_numbers = true)]
        m1: i64,
        #[arg(allow_negative_numbers = true)]
        m2: i64,
        #[arg(allow_negative_numbers = true)]
        m3: i64,
        disc: u64,
    },
    /// Is an order of this reduced discriminant hereditary?
    Hereditary { disc: u64 },
    /// Does (-D*delta, m / Q) have reduced discriminant D?
    Structure {
        disc: u64,
        delta: u64,
        #[arg(allow_negative_numbers = true)]
        m: i64,
    },
}

#[derive(Args)]
struct FixturesCli {
    /// Directory to write c1.curve and c2.curve into.
    #[arg(long, default_value = "fixtures")]
    dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let workers = cli.workers;
    match cli.command {
        Command::Frob(a) => {
            let embedding: EmbeddingChoice =
                a.embedding.parse().map_err(CliError::Input)?;
            let out = cmd_frob(&FrobArgs {
                curve: a.curve,
                pmin: a.pmin,
                pmax: a.pmax,
                deg1_only: a.deg1_only,
                embedding,
                exclude: a.exclude,
                workers,
            })?;
            for note in &out.notes {
                eprintln!("{note}");
            }
            match a.out {
                Some(path) => std::fs::write(path, out.csv)?,
                None => print!("{}", out.csv),
            }
        }
        Command::Infer(a) => {
            let out = cmd_infer(&InferArgs {
                curve: a.curve,
                pmin: a.pmin,
                pmax: a.pmax,
                disc: a.disc,
                bad: a.bad,
                deltas: a.deltas,
                min_split: a.min_split,
                min_inert: a.min_inert,
                embedding: EmbeddingChoice::Plus,
                workers,
            })?;
            for note in &out.notes {
                eprintln!("{note}");
            }
            print!("{}", out.text);
            if let Some(path) = a.out {
                std::fs::write(path, &out.csv)?;
            }
        }
        Command::Maximal(a) => {
            let root = match a.root.as_str() {
                "+" | "plus" => RootChoice::Plus,
                "-" | "minus" => RootChoice::Minus,
                other => return Err(CliError::input(format!("bad root '{other}'"))),
            };
            let out = cmd_maximal(&MaximalArgs {
                traces: a.traces,
                ell: a.ell,
                field: a.field,
                root,
                primes: a.primes,
            })?;
            print!("{}", out.text);
        }
        Command::Satotate(a) => {
            let out = cmd_satotate(&SatoTateArgs {
                curve: a.curve,
                pmin: a.pmin,
                pmax: a.pmax,
                bins: a.bins,
                allow_mixed: a.allow_mixed,
                reference: a.reference,
                workers,
            })?;
            print!("{}", out.text);
            std::fs::write(a.out, &out.csv)?;
        }
        Command::VerifyLk(a) => {
            let out = cmd_verify_lk(&VerifyLkArgs {
                curve: a.curve,
                pmin: a.pmin,
                pmax: a.pmax,
                bad: a.bad,
                workers,
            })?;
            print!("{}", out.text);
        }
        Command::Quat(q) => {
            let op = match q {
                QuatCli::Disc { a, b } => QuatOp::Disc { a, b },
                QuatCli::Embed { m, disc } => QuatOp::Embed { m, disc },
                QuatCli::Triple { m1, m2, m3, disc } => QuatOp::Triple { m1, m2, m3, disc },
                QuatCli::Hereditary { disc } => QuatOp::Hereditary { disc },
                QuatCli::Structure { disc, delta, m } => QuatOp::Structure { disc, delta, m },
            };
            print!("{}", cmd_quat(&QuatArgs { op })?);
        }
        Command::Fixtures(a) => {
            let written = fixtures::write_fixtures(&a.dir)?;
            for path in written {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}
