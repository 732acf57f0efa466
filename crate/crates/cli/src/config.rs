use std::path::PathBuf;

use rydberg_renyi::entropy::Method;
use rydberg_renyi::laguerre::ZoneConfig;
use rydberg_renyi::Accuracy;

use crate::args::{Format, GlobalArgs};
use crate::CliError;

/// Environment variable naming an optional key=value settings file.
pub const CONFIG_ENV: &str = "RYDBERG_RENYI_CONFIG";

/// Settings resolved from defaults, the config file and flags, validated
/// before any computation starts.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub accuracy: Accuracy,
    pub zones: ZoneConfig,
    pub method: Option<Method>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(global: &GlobalArgs, file_text: Option<&str>) -> Result<RunConfig, CliError> {
        let mut accuracy = Accuracy::default();
        let mut zones = ZoneConfig::default();
        if let Some(text) = file_text {
            apply_file(text, &mut accuracy, &mut zones)?;
        }
        let overrides = [
            (&mut accuracy.abs_tol, global.abs_tol),
            (&mut accuracy.rel_tol, global.rel_tol),
            (&mut zones.theta, global.theta),
            (&mut zones.epsilon, global.epsilon),
            (&mut zones.t_max, global.t_max),
        ];
        for (slot, value) in overrides {
            if let Some(v) = value {
                *slot = v;
            }
        }
        let accuracy = Accuracy::new(accuracy.abs_tol, accuracy.rel_tol).map_err(|e| CliError::Usage(e.to_string()))?;
        zones.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(RunConfig {
            accuracy,
            zones,
            method: global.method.map(Method::from),
            format: global.format.unwrap_or_default(),
            out: global.out.clone(),
        })
    }

    /// Reads the file named by [`CONFIG_ENV`], if set.
    pub fn from_env(global: &GlobalArgs) -> Result<RunConfig, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            None => RunConfig::resolve(global, None),
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    CliError::Usage(format!("cannot read {CONFIG_ENV}={}: {e}", path.to_string_lossy()))
                })?;
                RunConfig::resolve(global, Some(&text))
            }
        }
    }
}

fn apply_file(text: &str, accuracy: &mut Accuracy, zones: &mut ZoneConfig) -> Result<(), CliError> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| CliError::Usage(format!("config line {}: {why}: `{raw}`", i + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        let value: f64 = value.trim().parse().map_err(|_| bad("value is not a number"))?;
        let slot = match key.trim() {
            "abs_tol" => &mut accuracy.abs_tol,
            "rel_tol" => &mut accuracy.rel_tol,
            "theta" => &mut zones.theta,
            "epsilon" => &mut zones.epsilon,
            "t_max" => &mut zones.t_max,
            "hilb_c" => &mut zones.hilb_c,
            "hilb_cap" => &mut zones.hilb_cap,
            _ => return Err(bad("unknown key")),
        };
        *slot = value;
    }
    Ok(())
}
