use std::io::Write;

use serde_json::json;

use rydberg_renyi::acceptance::{run_criterion, Status, VerifyOptions, CRITERIA};

use crate::args::{Format, VerifyArgs};
use crate::config::RunConfig;
use crate::output::emit;
use crate::CliError;

/// Prints one line per criterion as it finishes; exit code 1 if any failed.
pub fn run(args: &VerifyArgs, cfg: &RunConfig) -> Result<i32, CliError> {
    let ids: Vec<usize> = if args.only.is_empty() {
        (1..=CRITERIA).collect()
    } else {
        args.only.clone()
    };
    if let Some(bad) = ids.iter().find(|&&id| id == 0 || id > CRITERIA) {
        return Err(CliError::Usage(format!("no criterion {bad} (expected 1-{CRITERIA})")));
    }
    let opts = VerifyOptions {
        fast: args.fast,
        zones: cfg.zones,
        accuracy: cfg.accuracy,
    };
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        let report = run_criterion(id, &opts);
        println!("{report}");
        std::io::stdout().flush()?;
        reports.push(report);
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let failed = count(Status::Fail);
    println!(
        "{} passed, {failed} failed, {} skipped",
        count(Status::Pass),
        count(Status::Skipped)
    );
    if cfg.format == Format::Json {
        let rows: Vec<_> = reports
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "title": r.title,
                    "status": r.status.as_str(),
                    "detail": r.detail,
                    "seconds": r.elapsed.as_secs_f64(),
                })
            })
            .collect();
        let doc = json!({ "criteria": rows, "all_passed": failed == 0 });
        match &cfg.out {
            Some(path) => emit(&format!("{doc}\n"), Some(path))?,
            None => println!("{doc}"),
        }
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
