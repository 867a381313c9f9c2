//! Line-oriented codebook files.
//!
//! Header `M=<m> L=<len> B=<data_bits> P=<policy>`, then one codeword per
//! line as space-separated symbol digits, in data-index order. Policies are
//! spelled `exclude-ends-<level>` and `exclude-extremes`.

use anyhow::{anyhow, bail, Context, Result};
use flashmod_core::codebook::{BoundaryPolicy, Codebook};

pub fn policy_name(policy: BoundaryPolicy) -> String {
    match policy {
        BoundaryPolicy::ExcludeLevelAtEnds(level) => format!("exclude-ends-{level}"),
        BoundaryPolicy::ExcludeExtremesAtBothEnds => "exclude-extremes".to_string(),
    }
}

pub fn parse_policy(name: &str) -> Result<BoundaryPolicy> {
    if name == "exclude-extremes" {
        return Ok(BoundaryPolicy::ExcludeExtremesAtBothEnds);
    }
    if let Some(level) = name.strip_prefix("exclude-ends-") {
        return Ok(BoundaryPolicy::ExcludeLevelAtEnds(
            level.parse().with_context(|| format!("bad policy level in {name:?}"))?,
        ));
    }
    bail!("unknown boundary policy {name:?}")
}

pub fn export_codebook(cb: &Codebook) -> String {
    let mut out = format!(
        "M={} L={} B={} P={}\n",
        cb.m_bits(),
        cb.word_len(),
        cb.data_bits(),
        policy_name(cb.policy())
    );
    for word in cb.words() {
        let digits: Vec<String> = word.iter().map(u8::to_string).collect();
        out.push_str(&digits.join(" "));
        out.push('\n');
    }
    out
}

/// Parses and fully revalidates a codebook file (word count, symbol ranges,
/// E-PH freedom, boundary policy, distinctness).
pub fn import_codebook(text: &str) -> Result<Codebook> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| anyhow!("empty codebook file"))?;
    let mut m_bits = None;
    let mut word_len = None;
    let mut data_bits = None;
    let mut policy = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .with_context(|| format!("bad header field {field:?}"))?;
        match key {
            "M" => m_bits = Some(value.parse::<u8>().context("bad M")?),
            "L" => word_len = Some(value.parse::<usize>().context("bad L")?),
            "B" => data_bits = Some(value.parse::<usize>().context("bad B")?),
            "P" => policy = Some(parse_policy(value)?),
            _ => bail!("unknown header field {key:?}"),
        }
    }
    let m_bits = m_bits.ok_or_else(|| anyhow!("header is missing M"))?;
    let word_len = word_len.ok_or_else(|| anyhow!("header is missing L"))?;
    let data_bits = data_bits.ok_or_else(|| anyhow!("header is missing B"))?;
    let policy = policy.ok_or_else(|| anyhow!("header is missing P"))?;

    let mut words = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let word: Vec<u8> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .with_context(|| format!("line {}: bad symbol", lineno + 2))?;
        words.push(word);
    }
    Ok(Codebook::from_words(m_bits, word_len, data_bits, policy, words)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn export_import_round_trip() {
        for preset in presets::CODEBOOK_PRESETS {
            let cb = presets::codebook(preset).unwrap();
            let text = export_codebook(&cb);
            let back = import_codebook(&text).unwrap();
            assert_eq!(back, cb, "{preset}");
        }
    }

    #[test]
    fn header_format_is_stable() {
        let cb = presets::codebook("q-cb1").unwrap();
        let text = export_codebook(&cb);
        assert!(text.starts_with("M=2 L=5 B=8 P=exclude-ends-0\n"));
        let cb2 = presets::codebook("q-cb2").unwrap();
        assert!(export_codebook(&cb2).starts_with("M=2 L=5 B=9 P=exclude-extremes\n"));
    }

    #[test]
    fn tampered_files_are_rejected() {
        let cb = presets::codebook("q-cb1").unwrap();
        let good = export_codebook(&cb);
        // Drop a codeword line.
        let short: Vec<&str> = good.lines().take(100).collect();
        assert!(import_codebook(&short.join("\n")).is_err());
        // Corrupt one word into a forbidden adjacency.
        let bad = good.replacen("1 1 1 1 1", "1 0 3 1 1", 1);
        assert!(import_codebook(&bad).is_err());
        // Duplicate a codeword.
        let mut lines: Vec<&str> = good.lines().collect();
        lines[1] = lines[2];
        assert!(import_codebook(&lines.join("\n")).is_err());
        assert!(import_codebook("").is_err());
        assert!(import_codebook("M=2 L=5 B=8 P=exclude-middle\n").is_err());
    }
}
