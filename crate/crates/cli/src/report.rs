//! CSV renderers. Comma separators, header row, `.` decimal separator,
//! LF line endings; floats carry fixed precision so reruns are
//! byte-identical.

use flashmod_core::epattern::PatternCounts;

use crate::sim::WerPoint;

pub fn wer_csv(points: &[WerPoint]) -> String {
    let mut out = String::from(
        "gamma_x_star,scheme,wer,trials,wilson_interval_low,wilson_interval_high\n",
    );
    for p in points {
        out.push_str(&format!(
            "{},{},{:.6},{},{:.6},{:.6}\n",
            p.gamma_x_star, p.scheme, p.wer, p.trials, p.wilson_low, p.wilson_high
        ));
    }
    out
}

pub fn patterns_csv(counts: &PatternCounts) -> String {
    let mut out = String::from("n_x,n_y,n_xy,count,fraction_of_E_cells\n");
    for (class, &n) in &counts.by_class {
        let fraction = n as f64 / counts.e_cells.max(1) as f64;
        out.push_str(&format!(
            "{},{},{},{},{:.6}\n",
            class.n_x, class.n_y, class.n_xy, n, fraction
        ));
    }
    out
}

/// Per-level histograms before and after interference, one scheme per block
/// of rows, all sharing the same binning.
pub struct DistributionTable {
    pub levels: usize,
    /// (scheme label, bin center, pre counts per level, post counts per level)
    pub rows: Vec<(String, f64, Vec<u64>, Vec<u64>)>,
}

pub fn distribution_csv(table: &DistributionTable) -> String {
    let mut header = String::from("scheme,voltage_bin_center");
    for l in 0..table.levels {
        header.push_str(&format!(",pre_s{l}"));
    }
    for l in 0..table.levels {
        header.push_str(&format!(",post_s{l}"));
    }
    header.push('\n');
    let mut out = header;
    for (scheme, center, pre, post) in &table.rows {
        out.push_str(&format!("{scheme},{center:.3}"));
        for c in pre {
            out.push_str(&format!(",{c}"));
        }
        for c in post {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
    }
    out
}
