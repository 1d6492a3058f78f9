//! Optional `key=value` configuration file mirroring the global flags.
//!
//! Recognized keys: `seed`, `cases`, `tol-abs`, `tol-rel`, `format`.
//! Blank lines and lines starting with `#` are ignored. Values given on the
//! command line take precedence over the file.

use std::path::Path;

use relmodes::ReportFormat;

#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub cases: Option<usize>,
    pub tol_abs: Option<f64>,
    pub tol_rel: Option<f64>,
    pub format: Option<ReportFormat>,
}

pub fn load(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("config file {}: {e}", path.display()))
}

fn parse(text: &str) -> Result<FileConfig, String> {
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value, got `{line}`", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: String| format!("line {}: invalid {key}: {e}", lineno + 1);
        match key {
            "seed" => cfg.seed = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "cases" => cfg.cases = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "tol-abs" => cfg.tol_abs = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "tol-rel" => cfg.tol_rel = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "format" => cfg.format = Some(value.parse().map_err(|e: relmodes::VerifyError| bad(e.to_string()))?),
            other => {
                return Err(format!(
                    "line {}: unknown key `{other}` (expected seed, cases, tol-abs, tol-rel, format)",
                    lineno + 1
                ))
            }
        }
    }
    Ok(cfg)
}
