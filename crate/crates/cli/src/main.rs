//! `spoofsim` command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage, validation or parse errors, 2 when
//! individual samples fail during an augmentation job.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spoofsim::pipeline::{
    run_augment_job, run_preview, run_score_job, write_report, AugmentJobConfig, ParamRanges,
    PreviewAug, Protocol, PARAM_KEYS,
};
use spoofsim::Error;

#[derive(Parser)]
#[command(
    name = "spoofsim",
    version,
    about = "Simulated spoofing-clue augmentation and anti-spoofing scoring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Augment the live samples of a manifest under a protocol.
    Augment {
        #[arg(long)]
        manifest: PathBuf,
        /// p1, p2.1 or p2.2
        #[arg(long)]
        protocol: Protocol,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: u64,
        /// Augmented copies per live sample.
        #[arg(long, default_value_t = 1)]
        multiplier: u32,
        /// Narrow a sampling range, `KEY=LO:HI` or `KEY=V`. Repeatable.
        #[arg(long = "param", value_name = "KEY=RANGE", long_help = param_help())]
        params: Vec<String>,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compute APCER, BPCER, ACER and AUC for a prediction file.
    Score {
        #[arg(long)]
        predictions: PathBuf,
        /// Pick the threshold minimizing ACER on this dev prediction file.
        #[arg(long, conflicts_with = "threshold")]
        dev: Option<PathBuf>,
        /// Fixed live threshold; defaults to 0.5.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        report: PathBuf,
    },
    /// Write an image next to one augmented version of it.
    Preview {
        #[arg(long)]
        input: PathBuf,
        /// spsc, sdsc, moire, jitter or noise
        #[arg(long)]
        aug: PreviewAug,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Face mask for sdsc; a centered ellipse is used otherwise.
        #[arg(long)]
        mask: Option<PathBuf>,
        #[arg(long = "param", value_name = "KEY=RANGE")]
        params: Vec<String>,
    },
}

fn param_help() -> String {
    format!(
        "Narrow a sampling range, `KEY=LO:HI` or `KEY=V`. Repeatable. Keys: {}",
        PARAM_KEYS.join(", ")
    )
}

fn ranges(params: &[String]) -> spoofsim::Result<ParamRanges> {
    ParamRanges::with_overrides(params.iter().map(String::as_str))
}

fn run(command: Command) -> spoofsim::Result<()> {
    match command {
        Command::Augment {
            manifest,
            protocol,
            out,
            seed,
            multiplier,
            params,
            workers,
        } => {
            let mut config = AugmentJobConfig::new(manifest, protocol, out, seed);
            config.multiplier = multiplier;
            config.ranges = ranges(&params)?;
            config.workers = workers;
            let written = run_augment_job(&config)?;
            println!("{}", written.display());
        }
        Command::Score {
            predictions,
            dev,
            threshold,
            report,
        } => {
            let result = run_score_job(&predictions, dev.as_deref(), threshold)?;
            write_report(&report, &result)?;
            println!(
                "threshold {:.4}  APCER {:.4}  BPCER {:.4}  ACER {:.4}  AUC {:.4}",
                result.threshold, result.apcer, result.bpcer, result.acer, result.auc
            );
        }
        Command::Preview {
            input,
            aug,
            seed,
            out,
            mask,
            params,
        } => {
            run_preview(&input, mask.as_deref(), aug, seed, &ranges(&params)?, &out)?;
            println!("{}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::SampleFailures(failures) = &e {
                for failure in failures {
                    eprintln!("  {failure}");
                }
            }
            ExitCode::from(if e.is_sample_failure() { 2 } else { 1 })
        }
    }
}
