use std::path::PathBuf;

use rydberg_renyi::entropy::{Method, Quantity};

use crate::args::FigureArgs;
use crate::config::RunConfig;
use crate::evaluate::{evaluate_grid, parse_range, Inputs};
use crate::output::{csv_row, emit, format_number, SCHEMA_LINE};
use crate::CliError;

pub const FIGURE_IDS: [usize; 5] = [1, 2, 3, 4, 5];

/// One figure: the independent variable, then one column per curve.
struct Figure {
    id: usize,
    description: String,
    method: Method,
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

fn disequilibrium(n: usize, l: usize, dim: f64, method: Method) -> Inputs {
    Inputs {
        n,
        l,
        dim,
        p: 2.0,
        lambda: 1.0,
        quantity: Quantity::Disequilibrium,
        method,
    }
}

/// Rydberg-regime figures default to the asymptotic evaluator; the ones
/// checked at n = 50 for monotonicity default to Auto (exact there).
fn default_method(id: usize) -> Method {
    match id {
        1 | 4 => Method::Auto,
        _ => Method::Asymptotic,
    }
}

fn build(id: usize, cfg: &RunConfig) -> Result<Figure, CliError> {
    let method = cfg.method.unwrap_or(default_method(id));
    let acc = &cfg.accuracy;
    let column = |grid: Vec<Inputs>| -> Result<Vec<f64>, CliError> {
        Ok(evaluate_grid(&grid, acc)?.iter().map(|r| r.result.value).collect())
    };
    let transpose = |xs: Vec<f64>, cols: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        xs.iter()
            .enumerate()
            .map(|(i, &x)| std::iter::once(x).chain(cols.iter().map(|c| c[i])).collect())
            .collect()
    };
    let (description, header, rows) = match id {
        1 => {
            let orders: Vec<f64> = parse_range("0.5:5:0.1")?.into_iter().filter(|&p| p != 1.0).collect();
            let curve = |dim: f64| {
                column(
                    orders
                        .iter()
                        .map(|&p| Inputs {
                            n: 50,
                            l: 0,
                            dim,
                            p,
                            lambda: 1.0,
                            quantity: Quantity::Power,
                            method,
                        })
                        .collect(),
                )
            };
            let cols = vec![curve(2.0)?, curve(4.0)?];
            (
                "renyi power vs p at n=50 l=0",
                vec!["p", "power_d2", "power_d4"],
                transpose(orders, cols),
            )
        }
        2 | 3 => {
            let dim = if id == 2 { 2.0 } else { 6.0 };
            let ns: Vec<usize> = (10..=100).collect();
            let col = column(ns.iter().map(|&n| disequilibrium(n, 0, dim, method)).collect())?;
            let desc = if id == 2 {
                "diseq vs n at l=0 dim=2"
            } else {
                "diseq vs n at l=0 dim=6"
            };
            (
                desc,
                vec!["n", "diseq"],
                transpose(ns.iter().map(|&n| n as f64).collect(), vec![col]),
            )
        }
        4 => {
            let ls: Vec<usize> = (0..=10).collect();
            let col = column(ls.iter().map(|&l| disequilibrium(50, l, 4.0, method)).collect())?;
            (
                "diseq vs l at n=50 dim=4",
                vec!["l", "diseq"],
                transpose(ls.iter().map(|&l| l as f64).collect(), vec![col]),
            )
        }
        5 => {
            let dims: Vec<f64> = (2..=30).map(f64::from).collect();
            let col = column(dims.iter().map(|&d| disequilibrium(50, 0, d, method)).collect())?;
            (
                "diseq vs dim at n=50 l=0",
                vec!["dim", "diseq"],
                transpose(dims, vec![col]),
            )
        }
        _ => return Err(CliError::Usage(format!("unknown figure id {id} (expected 1-5)"))),
    };
    Ok(Figure {
        id,
        description: description.to_string(),
        method,
        header,
        rows,
    })
}

fn render(fig: &Figure) -> String {
    let mut text = format!(
        "{SCHEMA_LINE}\n# figure={} {} method={}\n{}\n",
        fig.id,
        fig.description.replace(' ', "_"),
        fig.method.as_str(),
        fig.header.join(",")
    );
    for row in &fig.rows {
        text += &csv_row(row.iter().map(|&v| format_number(v)));
        text.push('\n');
    }
    text
}

fn parse_which(which: &str) -> Result<Vec<usize>, CliError> {
    if which == "all" {
        return Ok(FIGURE_IDS.to_vec());
    }
    match which.parse::<usize>() {
        Ok(id) if FIGURE_IDS.contains(&id) => Ok(vec![id]),
        _ => Err(CliError::Usage(format!(
            "unknown figure id `{which}` (expected 1-5 or all)"
        ))),
    }
}

pub fn run(args: &FigureArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let ids = parse_which(&args.which)?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    for id in ids {
        let fig = build(id, cfg)?;
        let path = dir.join(format!("figure{id}.csv"));
        emit(&render(&fig), Some(&path))?;
        println!("{}", path.display());
    }
    Ok(())
}
