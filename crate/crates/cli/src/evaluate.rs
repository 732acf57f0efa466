use rayon::prelude::*;
use serde_json::{json, Value};

use rydberg_renyi::entropy::{evaluate as evaluate_quantity, EntropyResult, Method, OscillatorState, Quantity};
use rydberg_renyi::Accuracy;

use crate::args::{EntropyArgs, Format, QuantityArg, SweepArgs, SweepVar};
use crate::config::RunConfig;
use crate::output::{csv_row, emit, format_number, SCHEMA_LINE};
use crate::CliError;

/// Grids longer than this are almost certainly a typo in the step.
const MAX_SWEEP_POINTS: usize = 100_000;

/// Everything needed to reproduce one value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Inputs {
    pub n: usize,
    pub l: usize,
    pub dim: f64,
    pub p: f64,
    pub lambda: f64,
    pub quantity: Quantity,
    pub method: Method,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Record {
    pub inputs: Inputs,
    pub alpha: f64,
    pub beta: f64,
    pub result: EntropyResult,
}

fn round_to_12_digits(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Parses `start:stop:step` into an inclusive grid. Points are rounded to 12
/// significant digits so that 0.5:5:0.5 hits 1.0 and 5.0 exactly.
pub fn parse_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("--range `{spec}`: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(bad("expected start:stop:step"));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| bad("not a number"))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !(step > 0.0) {
        return Err(bad("step must be positive"));
    }
    if stop < start {
        return Err(bad("stop is below start"));
    }
    let span = (stop - start) / step;
    if span >= MAX_SWEEP_POINTS as f64 {
        return Err(bad("too many points"));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| round_to_12_digits(start + k as f64 * step))
        .collect())
}

/// The order used for `quantity`, checking that it is admissible.
fn order_for(quantity: QuantityArg, p: Option<f64>) -> Result<f64, CliError> {
    let p = match (quantity, p) {
        (QuantityArg::Diseq, None | Some(2.0)) => return Ok(2.0),
        (QuantityArg::Diseq, Some(other)) => {
            return Err(CliError::Usage(format!("diseq is fixed at p = 2, got --p {other}")));
        }
        (_, None) => return Err(CliError::Usage("--p is required for this quantity".into())),
        (_, Some(p)) => p,
    };
    if !(p > 0.0 && p.is_finite()) {
        return Err(CliError::Usage(format!("--p must be positive and finite, got {p}")));
    }
    if p == 1.0 && matches!(quantity, QuantityArg::Renyi | QuantityArg::Power) {
        return Err(CliError::Usage(
            "p = 1 is excluded for renyi and power; use --quantity wp for the unit-order moment".into(),
        ));
    }
    Ok(p)
}

pub(crate) fn compute(inputs: &Inputs, acc: &Accuracy) -> Result<Record, CliError> {
    let state = OscillatorState::new(inputs.n, inputs.l, inputs.dim, inputs.lambda)?;
    let spec = state.spec(inputs.p)?;
    let result = evaluate_quantity(&state, inputs.quantity, inputs.p, inputs.method, acc)?;
    Ok(Record {
        inputs: *inputs,
        alpha: spec.alpha,
        beta: spec.beta,
        result,
    })
}

fn caveat_str(r: &Record) -> &'static str {
    r.result.caveat.map_or("", |c| c.as_str())
}

pub(crate) fn record_json(r: &Record) -> Value {
    let i = &r.inputs;
    json!({
        "inputs": {
            "n": i.n,
            "l": i.l,
            "dim": i.dim,
            "p": i.p,
            "lambda": i.lambda,
            "quantity": i.quantity.as_str(),
            "method": i.method.as_str(),
        },
        "derived": {
            "alpha": r.alpha,
            "beta": r.beta,
            "branch": r.result.branch.as_str(),
            "method": r.result.method.as_str(),
        },
        "value": r.result.value,
        "caveat": r.result.caveat.map(|c| c.as_str()),
    })
}

pub fn entropy(args: &EntropyArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let inputs = Inputs {
        n: args.n,
        l: args.l,
        dim: args.dim,
        p: order_for(args.quantity, args.p)?,
        lambda: args.lambda,
        quantity: args.quantity.into(),
        method: cfg.method.unwrap_or(Method::Auto),
    };
    let r = compute(&inputs, &cfg.accuracy)?;
    let text = match cfg.format {
        Format::Json => format!("{}\n", record_json(&r)),
        Format::Csv => {
            let header = "n,l,dim,p,lambda,quantity,method,alpha,beta,branch,value,caveat";
            let row = csv_row([
                r.inputs.n.to_string(),
                r.inputs.l.to_string(),
                format_number(r.inputs.dim),
                format_number(r.inputs.p),
                format_number(r.inputs.lambda),
                r.inputs.quantity.as_str().to_string(),
                r.result.method.as_str().to_string(),
                format_number(r.alpha),
                format_number(r.beta),
                r.result.branch.as_str().to_string(),
                format_number(r.result.value),
                caveat_str(&r).to_string(),
            ]);
            format!("{SCHEMA_LINE}\n{header}\n{row}\n")
        }
    };
    emit(&text, cfg.out.as_deref())?;
    Ok(())
}

fn as_count(v: f64, name: &str) -> Result<usize, CliError> {
    if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(CliError::Usage(format!(
            "{name} must be a non-negative integer, got {v}"
        )))
    }
}

/// Evaluates `grid` in parallel; results keep the grid order.
pub(crate) fn evaluate_grid(grid: &[Inputs], acc: &Accuracy) -> Result<Vec<Record>, CliError> {
    grid.par_iter()
        .map(|inputs| compute(inputs, acc))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn sweep(args: &SweepArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let var = args.var;
    let fixed_given = match var {
        SweepVar::P => args.p.is_some(),
        SweepVar::N => args.n.is_some(),
        SweepVar::L => args.l.is_some(),
        SweepVar::Dim => args.dim.is_some(),
    };
    if fixed_given {
        return Err(CliError::Usage(format!("--{0} conflicts with --var {0}", var.as_str())));
    }
    if var == SweepVar::P && args.quantity == QuantityArg::Diseq {
        return Err(CliError::Usage(
            "diseq does not depend on p; sweep another variable".into(),
        ));
    }
    let mut grid = parse_range(&args.range)?;
    let quantity: Quantity = args.quantity.into();
    if var == SweepVar::P && matches!(args.quantity, QuantityArg::Renyi | QuantityArg::Power) {
        let before = grid.len();
        grid.retain(|&p| p != 1.0);
        if grid.len() < before {
            eprintln!("note: skipping p = 1, where {} is undefined", quantity.as_str());
        }
    }
    let missing = |name: &str| CliError::Usage(format!("--{name} is required unless it is the swept variable"));
    let base = Inputs {
        n: if var == SweepVar::N {
            0
        } else {
            args.n.ok_or_else(|| missing("n"))?
        },
        l: args.l.unwrap_or(0),
        dim: if var == SweepVar::Dim {
            0.0
        } else {
            args.dim.ok_or_else(|| missing("dim"))?
        },
        p: if var == SweepVar::P {
            0.0
        } else {
            order_for(args.quantity, args.p)?
        },
        lambda: args.lambda,
        quantity,
        method: cfg.method.unwrap_or(Method::Auto),
    };
    let points = grid
        .iter()
        .map(|&v| {
            let mut inputs = base;
            match var {
                SweepVar::P => inputs.p = order_for(args.quantity, Some(v))?,
                SweepVar::N => inputs.n = as_count(v, "n")?,
                SweepVar::L => inputs.l = as_count(v, "l")?,
                SweepVar::Dim => inputs.dim = v,
            }
            Ok(inputs)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let records = evaluate_grid(&points, &cfg.accuracy)?;

    let text = match cfg.format {
        Format::Json => {
            let rows: Vec<Value> = grid
                .iter()
                .zip(&records)
                .map(|(v, r)| {
                    let mut row = record_json(r);
                    row["var"] = json!(v);
                    row
                })
                .collect();
            let doc = json!({
                "var": var.as_str(),
                "range": args.range,
                "rows": rows,
            });
            format!("{doc}\n")
        }
        Format::Csv => {
            let mut fixed = vec![format!("var={}", var.as_str()), format!("range={}", args.range)];
            if var != SweepVar::N {
                fixed.push(format!("n={}", base.n));
            }
            if var != SweepVar::L {
                fixed.push(format!("l={}", base.l));
            }
            if var != SweepVar::Dim {
                fixed.push(format!("dim={}", format_number(base.dim)));
            }
            if var != SweepVar::P {
                fixed.push(format!("p={}", format_number(base.p)));
            }
            fixed.push(format!("lambda={}", format_number(base.lambda)));
            fixed.push(format!("quantity={}", quantity.as_str()));
            fixed.push(format!("method={}", base.method.as_str()));
            let mut text = format!(
                "{SCHEMA_LINE}\n# {}\nvar,alpha,beta,branch,value,caveat\n",
                fixed.join(" ")
            );
            for (v, r) in grid.iter().zip(&records) {
                text += &csv_row([
                    format_number(*v),
                    format_number(r.alpha),
                    format_number(r.beta),
                    r.result.branch.as_str().to_string(),
                    format_number(r.result.value),
                    caveat_str(r).to_string(),
                ]);
                text.push('\n');
            }
            text
        }
    };
    emit(&text, cfg.out.as_deref())?;
    Ok(())
}
