use serde_json::{json, Value};

use rydberg_renyi::constants::{airy_constant, bessel_constant, cosine_constant};
use rydberg_renyi::Error;

use crate::args::{ConstantArgs, Format};
use crate::config::RunConfig;
use crate::output::{csv_row, emit, format_number, SCHEMA_LINE};
use crate::CliError;

enum Outcome {
    Value(f64),
    /// A flag the constant needs was not given.
    Missing(&'static str),
    Failed(Error),
}

impl Outcome {
    fn value(&self) -> Option<f64> {
        match self {
            Outcome::Value(v) => Some(*v),
            _ => None,
        }
    }

    fn note(&self) -> String {
        match self {
            Outcome::Value(_) => String::new(),
            Outcome::Missing(flags) => format!("needs {flags}"),
            Outcome::Failed(e) => format!("{}: {e}", e.name()),
        }
    }
}

/// Exits 3 if any constant failed to reach its tolerance; other failures
/// are reported in the table as violated preconditions.
pub fn run(args: &ConstantArgs, cfg: &RunConfig) -> Result<i32, CliError> {
    if args.alpha.is_none() && args.beta.is_none() && args.p.is_none() {
        return Err(CliError::Usage("pass at least one of --alpha, --beta, --p".into()));
    }
    let acc = &cfg.accuracy;
    let from = |r: rydberg_renyi::Result<f64>| r.map_or_else(Outcome::Failed, Outcome::Value);
    let table = [
        (
            "C",
            match (args.beta, args.p) {
                (Some(beta), Some(p)) => from(cosine_constant(beta, p)),
                _ => Outcome::Missing("--beta and --p"),
            },
        ),
        (
            "C_B",
            match (args.alpha, args.beta, args.p) {
                (Some(alpha), Some(beta), Some(p)) => from(bessel_constant(alpha, beta, p, acc)),
                _ => Outcome::Missing("--alpha, --beta and --p"),
            },
        ),
        (
            "C_A",
            match args.p {
                Some(p) => from(airy_constant(p, acc)),
                None => Outcome::Missing("--p"),
            },
        ),
    ];

    let text = match cfg.format {
        Format::Json => {
            let rows: Vec<Value> = table
                .iter()
                .map(|(name, o)| {
                    let note = o.note();
                    json!({ "name": name, "value": o.value(), "note": (!note.is_empty()).then_some(note) })
                })
                .collect();
            let doc = json!({
                "inputs": { "alpha": args.alpha, "beta": args.beta, "p": args.p },
                "constants": rows,
            });
            format!("{doc}\n")
        }
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
            let mut text = format!("{SCHEMA_LINE}\nconstant,alpha,beta,p,value,note\n");
            for (name, o) in &table {
                text += &csv_row([
                    name.to_string(),
                    opt(args.alpha),
                    opt(args.beta),
                    opt(args.p),
                    opt(o.value()),
                    o.note(),
                ]);
                text.push('\n');
            }
            text
        }
    };
    emit(&text, cfg.out.as_deref())?;

    let tolerance = table.iter().find_map(|(_, o)| match o {
        Outcome::Failed(e @ Error::Tolerance { .. }) => Some(e),
        _ => None,
    });
    Ok(match tolerance {
        Some(e) => {
            eprintln!("{}: {e}", e.name());
            3
        }
        None => 0,
    })
}
