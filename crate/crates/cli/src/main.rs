use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fano3_core::catalog::{render_catalog, render_model, render_series, render_sweep, Format};
use fano3_core::model::{propose_model_with, ModelOptions, DEFAULT_CAP};
use fano3_core::orbifold::{check_index, Basket, Candidate, Convention, DEFAULT_ORDER};
use fano3_core::pipeline::{run_pipeline, sweep, PipelineOptions, DEFAULT_INDICES};
use fano3_core::tables::propose_all;
use fano3_core::Error;

#[derive(Parser)]
#[command(
    name = "fano3",
    version,
    about = "Hilbert series and model proposals for Fano 3-folds of index 3 to 19"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert series and stage flags of one basket.
    Series(SingleArgs),
    /// Run every stage at one index and list the surviving candidates.
    Classify(ClassifyArgs),
    /// Number of distinct series (and unstable ones) per index.
    Sweep(SweepArgs),
    /// Propose a weighted projective embedding for one basket.
    Model(SingleArgs),
}

#[derive(Args)]
struct Common {
    /// Series expansion order.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Use a^-1 instead of f·a^-1 as the residue multiplier.
    #[arg(long)]
    literal_b: bool,
    /// table, json or csv.
    #[arg(long, default_value = "table")]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn convention(&self) -> Convention {
        if self.literal_b {
            Convention::Literal
        } else {
            Convention::Standard
        }
    }
}

#[derive(Args)]
struct SingleArgs {
    #[arg(long)]
    index: u32,
    /// Germs as `r,a;r,a;...`; empty for the smooth case.
    #[arg(long, allow_hyphen_values = true)]
    basket: String,
    /// Degree cap for the generator estimate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    index: u32,
    /// Only list stable candidates.
    #[arg(long)]
    stable_only: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    /// `a..b` (inclusive), a comma list, or a mix such as `3..11,13,17,19`.
    #[arg(long)]
    indices: Option<String>,
    #[command(flatten)]
    common: Common,
}

fn parse_indices(text: &str) -> Result<Vec<u32>, Error> {
    let bad = |part: &str| Error::Format(format!("bad index list element {part:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: u32 = a.trim().parse().map_err(|_| bad(part))?;
                let b: u32 = b.trim().parse().map_err(|_| bad(part))?;
                if a > b {
                    return Err(bad(part));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad(part))?),
        }
    }
    if out.is_empty() {
        return Err(Error::Format("empty index list".into()));
    }
    for &f in &out {
        check_index(f)?;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn candidate(args: &SingleArgs) -> Result<Candidate, Error> {
    check_index(args.index)?;
    if args.common.order < args.index as usize {
        return Err(Error::OrderTooSmall {
            order: args.common.order,
            needed: args.index as usize,
        });
    }
    let basket = Basket::parse(args.index, &args.basket)?;
    Ok(Candidate::build_with(
        basket,
        args.common.order,
        args.common.convention(),
    ))
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>), Error> {
    match cli.command {
        Command::Series(args) => {
            let c = candidate(&args)?;
            Ok((render_series(&c, args.common.format)?, args.common.out))
        }
        Command::Model(args) => {
            let c = candidate(&args)?;
            let m = propose_model_with(
                &c,
                ModelOptions {
                    cap: args.cap,
                    ..Default::default()
                },
            )?;
            Ok((render_model(&c, &m, args.common.format)?, args.common.out))
        }
        Command::Classify(args) => {
            check_index(args.index)?;
            let report = run_pipeline(
                args.index,
                PipelineOptions {
                    apply_stability: args.stable_only,
                    convention: args.common.convention(),
                    order: args.common.order,
                },
            )?;
            let proposals = propose_all(&report, args.cap);
            Ok((
                render_catalog(&report, &proposals, args.common.format)?,
                args.common.out,
            ))
        }
        Command::Sweep(args) => {
            let indices = match &args.indices {
                Some(text) => parse_indices(text)?,
                None => DEFAULT_INDICES.to_vec(),
            };
            Ok((
                render_sweep(&sweep(&indices)?, args.common.format)?,
                args.common.out,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli).and_then(|(text, out)| match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::from(e)),
                _ => Ok(()),
            }
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() || matches!(e, Error::Format(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
