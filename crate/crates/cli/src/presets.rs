//! Named presets for schemes, ECC parameters and codebooks.

use anyhow::{anyhow, bail, Result};
use flashmod_core::channel::{CouplingParams, StateDistribution};
use flashmod_core::codebook::{build_codebook, BoundaryPolicy, Codebook};
use flashmod_core::ecc::{EccParams, PageLayout};
use flashmod_core::pipeline::{Scheme, SchemeConfig};

pub const SCHEME_PRESETS: &[&str] = &[
    "slc-conv",
    "slc-rll",
    "mlc2-binrll",
    "mlc2-q-cb1",
    "mlc2-q-cb2",
    "mlc3-8ary-8_9",
    "mlc3-8ary-11_12",
    "mlc3-8ary-14_15",
];

pub const CODEBOOK_PRESETS: &[&str] =
    &["q-cb1", "q-cb2", "8ary-8_9", "8ary-11_12", "8ary-14_15"];

pub const ECC_PRESETS: &[&str] = &["conv-9/10", "conv-1/2", "mod-3/4"];

/// Resolves an ECC preset name, or custom parameters written `n:k:t`.
pub fn ecc_params(name: &str) -> Result<EccParams> {
    if let Some(params) = EccParams::preset(name) {
        return Ok(params);
    }
    let fields: Vec<&str> = name.split(':').collect();
    if fields.len() == 3 {
        let parse = |s: &str, what: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("bad {what} in custom ECC spec {name:?}"))
        };
        let n = parse(fields[0], "n")?;
        let k = parse(fields[1], "k")?;
        let t = parse(fields[2], "t")? as u32;
        return Ok(EccParams::new(n, k, t)?);
    }
    Err(anyhow!(
        "unknown ECC spec {name:?}: expected one of {ECC_PRESETS:?} or custom n:k:t"
    ))
}

pub fn ecc_layout(name: &str, codewords_per_page: usize) -> Result<PageLayout> {
    Ok(PageLayout::new(codewords_per_page, ecc_params(name)?)?)
}

pub fn codebook(name: &str) -> Result<Codebook> {
    let cb = match name {
        "q-cb1" => build_codebook(2, 5, 8, BoundaryPolicy::ExcludeLevelAtEnds(0))?,
        "q-cb2" => build_codebook(2, 5, 9, BoundaryPolicy::ExcludeExtremesAtBothEnds)?,
        "8ary-8_9" => build_codebook(3, 3, 8, BoundaryPolicy::ExcludeLevelAtEnds(0))?,
        "8ary-11_12" => build_codebook(3, 4, 11, BoundaryPolicy::ExcludeLevelAtEnds(0))?,
        "8ary-14_15" => build_codebook(3, 5, 14, BoundaryPolicy::ExcludeLevelAtEnds(0))?,
        _ => bail!("unknown codebook preset {name:?}, expected one of {CODEBOOK_PRESETS:?}"),
    };
    Ok(cb)
}

/// Builds a scheme configuration. With `ecc` set the row length follows from
/// the code geometry; in pass-through mode it is `cols`. Coupling starts at
/// zero; sweeps install their own per-point parameters.
pub fn scheme_config(
    name: &str,
    ecc: Option<PageLayout>,
    interleave: bool,
    rows: usize,
    cols: usize,
) -> Result<SchemeConfig> {
    let (scheme, m_bits, cb) = match name {
        "slc-conv" => (Scheme::SlcConventional, 1, None),
        "slc-rll" => (Scheme::SlcRllNrzi, 1, None),
        "mlc2-binrll" => (Scheme::MlcBinaryRll, 2, None),
        "mlc2-q-cb1" => (Scheme::MlcMaryCodebook, 2, Some(codebook("q-cb1")?)),
        "mlc2-q-cb2" => (Scheme::MlcMaryCodebook, 2, Some(codebook("q-cb2")?)),
        "mlc3-8ary-8_9" => (Scheme::MlcMaryCodebook, 3, Some(codebook("8ary-8_9")?)),
        "mlc3-8ary-11_12" => (Scheme::MlcMaryCodebook, 3, Some(codebook("8ary-11_12")?)),
        "mlc3-8ary-14_15" => (Scheme::MlcMaryCodebook, 3, Some(codebook("8ary-14_15")?)),
        _ => bail!("unknown scheme preset {name:?}, expected one of {SCHEME_PRESETS:?}"),
    };
    let dist = if m_bits == 1 {
        StateDistribution::slc()
    } else {
        StateDistribution::evenly_spaced(m_bits, 0.08)?
    };
    let mut cfg = SchemeConfig {
        scheme,
        m_bits,
        codebook: cb,
        ecc,
        interleave,
        coupling: CouplingParams::x_only(0.0),
        dist,
        rows,
        cols,
    };
    if cfg.ecc.is_some() {
        cfg.cols = cfg.derived_cols()?;
    }
    cfg.validate()?;
    Ok(cfg)
}
