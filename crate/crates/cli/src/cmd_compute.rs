//! `entlab compute`: measures on a single state file.

use clap::Args;
use measures::{
    classical_correlation, classical_correlation_max, correlation_roof, cost_lower_bound_chain,
    eof_exact_two_qubit, eof_numeric, Bipartition, MeasureResult, MeasuredSide, RoofVariant,
    WitnessJson,
};
use qstate_core::json::to_json_string;
use qstate_core::{DensityMatrix, Ensemble};
use roof_optimizer::{BoundDirection, Diagnostics, OptimizerConfig};
use serde::Serialize;

use crate::errors::{CliError, Result};
use crate::io::{load_state, load_witness, write_text};
use crate::{OptimizerKnobs, OutputFormat};

/// Measure names. The arrow suffix of the directed correlations points at
/// the inferred side: `c-right` measures the first cut group, `c-left`
/// measures the second; the roof variants `g-right`/`g-left` follow the
/// same convention and `g-hv` takes the per-member max of both.
const MEASURES: &[&str] = &[
    "entropy", "c-left", "c-right", "c-max", "eof-exact", "eof", "g-left", "g-right", "g-hv",
    "ec-chain",
];

#[derive(Args)]
pub struct ComputeArgs {
    /// Measure to compute: entropy, c-left, c-right, c-max, eof-exact, eof,
    /// g-left, g-right, g-hv or ec-chain
    #[arg(long)]
    measure: String,
    /// State file (density matrix or vector JSON)
    #[arg(long, short = 's')]
    state: String,
    /// Bipartition as slash-separated factor groups, e.g. 0,1/2,3
    /// (default: first factor vs rest)
    #[arg(long)]
    cut: Option<String>,
    /// Copies for the cost-chain measure
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Known decomposition (ensemble JSON) used as a search initialization
    #[arg(long)]
    witness: Option<String>,
    #[command(flatten)]
    knobs: OptimizerKnobs,
    /// Output file (JSON printed to stdout when omitted)
    #[arg(long, short = 'o')]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Serialize)]
struct MeasureReport<'a> {
    measure: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut: Option<String>,
    value_bits: f64,
    direction: BoundDirection,
    seed: u64,
    diagnostics: &'a Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct ChainReportJson<'a> {
    measure: &'a str,
    cut: String,
    copies: u32,
    roof_estimate_bits: f64,
    chain_value_bits: f64,
    limit_value_bits: f64,
    direction: BoundDirection,
    note: &'a str,
    seed: u64,
    diagnostics: &'a Diagnostics,
}

fn resolve_cut(rho: &DensityMatrix, spec: &Option<String>) -> Result<Bipartition> {
    let n = rho.dims().len();
    match spec {
        Some(s) => Ok(Bipartition::parse(s, n)?),
        None => Ok(Bipartition::head_vs_rest(n)?),
    }
}

pub fn run(args: ComputeArgs) -> Result<u8> {
    let config: OptimizerConfig = args.knobs.resolve();
    let rho = load_state(&args.state)?.into_density();
    let witness: Option<Ensemble> = match &args.witness {
        Some(path) => Some(load_witness(path, &rho)?),
        None => None,
    };
    let inits: Vec<Ensemble> = witness.into_iter().collect();

    if args.measure == "ec-chain" {
        let cut = resolve_cut(&rho, &args.cut)?;
        let report = cost_lower_bound_chain(&rho, &cut, args.n, &config, &inits)?;
        println!(
            "chain_value = {:.6} bits ({}) for {} copies; roof estimate {:.6}, limit {:.6}",
            report.chain_value,
            report.roof_estimate.direction,
            report.copies,
            report.roof_estimate.value,
            report.limit_value,
        );
        println!("note: {}", report.note);
        let json = ChainReportJson {
            measure: "ec-chain",
            cut: cut.to_string(),
            copies: report.copies,
            roof_estimate_bits: report.roof_estimate.value,
            chain_value_bits: report.chain_value,
            limit_value_bits: report.limit_value,
            direction: report.roof_estimate.direction,
            note: report.note,
            seed: config.seed,
            diagnostics: &report.roof_estimate.diagnostics,
        };
        return emit(&args, to_json_string(&json), || {
            format!(
                "measure,cut,copies,chain_value_bits,direction\nec-chain,{},{},{:.16e},{}\n",
                cut, report.copies, report.chain_value, report.roof_estimate.direction
            )
        });
    }

    let (result, cut_label): (MeasureResult, Option<String>) = match args.measure.as_str() {
        "entropy" => (
            MeasureResult::exact(rho.von_neumann_entropy()),
            None,
        ),
        "c-left" | "c-right" | "c-max" => {
            let cut = resolve_cut(&rho, &args.cut)?;
            let r = match args.measure.as_str() {
                "c-left" => classical_correlation(&rho, &cut, MeasuredSide::Right, &config)?,
                "c-right" => classical_correlation(&rho, &cut, MeasuredSide::Left, &config)?,
                _ => classical_correlation_max(&rho, &cut, &config)?,
            };
            (r, Some(cut.to_string()))
        }
        "eof-exact" => {
            let cut = resolve_cut(&rho, &args.cut)?;
            let grouped = rho.regroup(cut.left(), cut.right())?;
            if grouped.dims().factors() != [2, 2] {
                return Err(CliError::Mismatch(format!(
                    "eof-exact needs a 2x2 cut; cut {cut} groups the state into {}",
                    grouped.dims()
                )));
            }
            (eof_exact_two_qubit(&grouped)?, Some(cut.to_string()))
        }
        "eof" => {
            let cut = resolve_cut(&rho, &args.cut)?;
            (
                eof_numeric(&rho, &cut, &config, &inits)?,
                Some(cut.to_string()),
            )
        }
        "g-left" | "g-right" | "g-hv" => {
            let cut = resolve_cut(&rho, &args.cut)?;
            let variant = match args.measure.as_str() {
                "g-left" => RoofVariant::MeasureRight,
                "g-right" => RoofVariant::MeasureLeft,
                _ => RoofVariant::Max,
            };
            (
                correlation_roof(&rho, &cut, variant, &config, &inits)?,
                Some(cut.to_string()),
            )
        }
        other => {
            return Err(CliError::Mismatch(format!(
                "unknown measure {other:?}; available: {}",
                MEASURES.join(", ")
            )))
        }
    };

    println!(
        "{} = {:.6} bits ({}) converged={}",
        args.measure, result.value, result.direction, result.diagnostics.converged
    );
    let report = MeasureReport {
        measure: &args.measure,
        cut: cut_label.clone(),
        value_bits: result.value,
        direction: result.direction,
        seed: config.seed,
        diagnostics: &result.diagnostics,
        witness: result.witness_json(),
    };
    emit(&args, to_json_string(&report), || {
        format!(
            "measure,cut,value_bits,direction,converged\n{},{},{:.16e},{},{}\n",
            args.measure,
            cut_label.unwrap_or_default(),
            result.value,
            result.direction,
            result.diagnostics.converged
        )
    })
}

fn emit(args: &ComputeArgs, json: String, csv: impl FnOnce() -> String) -> Result<u8> {
    let mut content = match args.format {
        OutputFormat::Json => json,
        OutputFormat::Csv => csv(),
    };
    if !content.ends_with('\n') {
        content.push('\n');
    }
    match &args.out {
        Some(path) => write_text(path, &content)?,
        None => print!("{content}"),
    }
    Ok(0)
}
