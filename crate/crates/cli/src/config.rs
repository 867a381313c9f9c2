//! Sweep configuration files: plain `key = value` text in `[sweep]` and
//! `[run]` sections.
//!
//! ```text
//! # word-error-rate sweep
//! [sweep]
//! gamma_x_star = 0.0 0.3 0.5 0.674 0.8
//! trials = 1000
//! seed = 7
//! rows = 1
//! codewords_per_page = 16
//! out = wer.csv
//!
//! [run]
//! scheme = slc-conv
//! ecc = conv-1/2
//! interleave = off
//!
//! [run]
//! scheme = slc-rll
//! ecc = mod-3/4
//! interleave = on
//! ```
//!
//! Every key is optional; omitted values fall back to the reference
//! comparison defaults. A file without `[run]` sections keeps the default
//! four-run comparison. Grid values may be separated by spaces or commas.

use anyhow::{bail, Context, Result};

use crate::sim::{RunSpec, SweepConfig};

pub fn parse_sweep_config(text: &str) -> Result<SweepConfig> {
    let defaults = SweepConfig::reference_comparison();
    let mut sweep = defaults.clone();
    let mut runs: Vec<RunSpec> = Vec::new();
    let mut section = String::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .with_context(|| format!("line {}: unterminated section header", lineno + 1))?
                .trim();
            match name {
                "sweep" => {}
                "run" => runs.push(RunSpec::new("slc-rll", "mod-3/4", false)),
                other => bail!("line {}: unknown section [{other}]", lineno + 1),
            }
            section = name.to_string();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .with_context(|| format!("line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let err = || format!("line {}: bad value for {key}", lineno + 1);
        match (section.as_str(), key) {
            ("sweep", "gamma_x_star") => {
                sweep.gamma_x_star = value
                    .split([' ', ',', '\t'])
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect::<Result<Vec<f64>, _>>()
                    .with_context(err)?;
            }
            ("sweep", "trials") => sweep.trials = value.parse().with_context(err)?,
            ("sweep", "seed") => sweep.seed = value.parse().with_context(err)?,
            ("sweep", "rows") => sweep.rows = value.parse().with_context(err)?,
            ("sweep", "codewords_per_page") => {
                sweep.codewords_per_page = value.parse().with_context(err)?
            }
            ("sweep", "out") => sweep.out = Some(value.into()),
            ("run", "scheme") => runs.last_mut().expect("inside [run]").scheme = value.into(),
            ("run", "ecc") => runs.last_mut().expect("inside [run]").ecc = value.into(),
            ("run", "interleave") => {
                runs.last_mut().expect("inside [run]").interleave = parse_switch(value)
                    .with_context(err)?
            }
            ("", _) => bail!("line {}: {key} appears before any section", lineno + 1),
            (s, _) => bail!("line {}: unknown key {key} in section [{s}]", lineno + 1),
        }
    }

    if !runs.is_empty() {
        sweep.runs = runs;
    }
    sweep.validate()?;
    Ok(sweep)
}

pub fn parse_switch(value: &str) -> Result<bool> {
    match value {
        "on" | "true" | "1" => Ok(true),
        "off" | "false" | "0" => Ok(false),
        _ => bail!("expected on or off, got {value:?}"),
    }
}
