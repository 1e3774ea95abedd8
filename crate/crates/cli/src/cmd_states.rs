//! `entlab states`: canonical state generation.

use clap::Args;
use inequality_lab::{canonical_state, CanonicalName};
use qstate_core::json::{to_json_string, EnsembleJson};

use crate::errors::Result;
use crate::io::{density_to_json_string, write_text};

#[derive(Args)]
pub struct StatesArgs {
    /// One of: singlet, product, classically_correlated, werner, isotropic,
    /// tiles, random_separable
    name: String,
    /// Mixing parameter for werner/isotropic
    #[arg(long)]
    p: Option<f64>,
    /// Local dimension for isotropic
    #[arg(long)]
    d: Option<usize>,
    /// Number of product terms for random_separable
    #[arg(long)]
    k: Option<usize>,
    /// Seed for random_separable; generated and printed when omitted
    #[arg(long)]
    seed: Option<u64>,
    /// Output file
    #[arg(long, short = 'o')]
    out: String,
}

pub fn run(args: StatesArgs) -> Result<u8> {
    let seed = match (args.name.as_str(), args.seed) {
        ("random_separable" | "random-separable", None) => {
            let s: u64 = rand::random();
            println!("seed: {s}");
            Some(s)
        }
        (_, s) => s,
    };
    let name = CanonicalName::parse(&args.name, args.p, args.d, args.k, seed)?;
    let built = canonical_state(&name)?;

    write_text(&args.out, &density_to_json_string(&built.state))?;
    println!(
        "wrote {} ({}, dims {})",
        args.out,
        built.description,
        built.state.dims()
    );

    if let Some(witness) = &built.witness {
        let witness_path = witness_path_for(&args.out);
        let mut text = to_json_string(&EnsembleJson::from_ensemble(witness));
        text.push('\n');
        write_text(&witness_path, &text)?;
        println!("wrote {witness_path} (decomposition witness, {} members)", witness.len());
    }
    Ok(0)
}

fn witness_path_for(out: &str) -> String {
    match out.strip_suffix(".json") {
        Some(stem) => format!("{stem}.witness.json"),
        None => format!("{out}.witness.json"),
    }
}
