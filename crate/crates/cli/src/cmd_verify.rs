//! `entlab verify`: inequality checks on sampled or supplied states.

use clap::Args;
use inequality_lab::{
    check_duality, check_lemma1, check_main_inequality, cloning_gap, fuzz_campaign, CheckKind,
    InequalityReport,
};
use qstate_core::json::to_json_string;
use roof_optimizer::OptimizerConfig;

use crate::errors::{CliError, Result};
use crate::io::{load_state, require_pure, write_text};
use crate::{OptimizerKnobs, OutputFormat};

#[derive(Args)]
pub struct VerifyArgs {
    /// Which inequality to check: duality, lemma1, main or cloning
    check: String,
    /// Single state file to check (otherwise a sampling campaign runs)
    #[arg(long, short = 's')]
    state: Option<String>,
    /// Number of sampled states for campaign mode
    #[arg(long)]
    samples: Option<usize>,
    /// Factor dimensions for sampled states, e.g. 2,2,2,2
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[command(flatten)]
    knobs: OptimizerKnobs,
    /// Report file (stdout when omitted)
    #[arg(long, short = 'o')]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

pub fn run(args: VerifyArgs) -> Result<u8> {
    let check = CheckKind::parse(&args.check)?;
    let config: OptimizerConfig = args.knobs.resolve();

    let report = match &args.state {
        Some(path) => single_state_report(check, path, &config)?,
        None => {
            let samples = args.samples.ok_or_else(|| {
                CliError::Mismatch(
                    "campaign mode needs --samples (or pass --state for a single check)".into(),
                )
            })?;
            let dims = args.dims.clone().ok_or_else(|| {
                CliError::Mismatch("campaign mode needs --dims, e.g. --dims 2,2,2,2".into())
            })?;
            fuzz_campaign(check, samples, &dims, config.seed, &config)?
        }
    };

    println!(
        "check={} samples={} sound={} violations={} slack[min/mean/max]=[{:.3e}, {:.3e}, {:.3e}]",
        report.check,
        report.samples,
        report.sound_records,
        report.violations,
        report.min_slack_bits,
        report.mean_slack_bits,
        report.max_slack_bits,
    );

    let mut content = match args.format {
        OutputFormat::Json => to_json_string(&report),
        OutputFormat::Csv => report.to_csv(),
    };
    if !content.ends_with('\n') {
        content.push('\n');
    }
    match &args.out {
        Some(path) => write_text(path, &content)?,
        None => print!("{content}"),
    }

    Ok(if report.passed() { 0 } else { 1 })
}

fn single_state_report(
    check: CheckKind,
    path: &str,
    config: &OptimizerConfig,
) -> Result<InequalityReport> {
    let loaded = load_state(path)?;
    let record = match check {
        CheckKind::Duality => {
            let phi = require_pure(loaded, "the duality check")?;
            check_duality(&phi, config)?
        }
        CheckKind::Lemma1 => {
            let phi = require_pure(loaded, "the four-partite pure check")?;
            check_lemma1(&phi, config)?
        }
        CheckKind::Main => check_main_inequality(&loaded.into_density(), config, None)?,
        CheckKind::Cloning => {
            let rho = loaded.into_density();
            let rep = cloning_gap(&rho, config)?;
            println!(
                "cloning gap: joint {:.6} ({}) vs single {:.6} ({}), gap {:.6} bits; entangled input: {}",
                rep.ef_joint.value,
                rep.ef_joint.direction,
                rep.ef_single.value,
                rep.ef_single.direction,
                rep.gap_bits,
                rep.input_entangled
                    .map(|b| b.to_string())
                    .unwrap_or_else(|| "undetermined".into()),
            );
            println!("note: {}", rep.note);
            rep.to_record(format!("cloning single-state {path}"))
        }
    };
    Ok(InequalityReport::from_records(
        check.name(),
        vec![record.with_sample(0)],
    ))
}
