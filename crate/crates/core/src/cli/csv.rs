//! CSV emitters for the figure data. Numbers carry six significant digits,
//! lines end in `\n`.

use std::fmt::Write;

use crate::harness::{summarize, Algorithm, CdfSeries, SweepPoint, TrialResult};
use crate::Result;

pub const FIG4_HEADER: &str = "algorithm,highest,worst,mean,std,unit";
pub const FIG5_HEADER: &str = "num_vehicles,algorithm,mean_worst_rate";
pub const FIG6_HEADER: &str = "rate_bits_s_hz,algorithm,cdf";

pub const UNIT_MBPS: &str = "Mbit/s";
pub const UNIT_SPECTRAL: &str = "bit/s/Hz";

/// Fixed six significant digits in positional notation, no exponent.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.5e}");
    let rounded: f64 = sci.parse().expect("formatted float parses");
    let exponent: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).expect("exponent");
    let decimals = (5 - exponent).max(0) as usize;
    let s = format!("{rounded:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// One row per algorithm in Mbit/s, then one per algorithm in bit/s/Hz.
pub fn fig4(results: &[TrialResult], algorithms: &[Algorithm], bandwidth_hz: f64) -> Result<String> {
    let summaries = algorithms.iter().map(|&a| summarize(results, a).map(|s| (a, s))).collect::<Result<Vec<_>>>()?;
    let mut out = String::new();
    writeln!(out, "{FIG4_HEADER}").unwrap();
    for (unit, divisor) in [(UNIT_MBPS, 1e6), (UNIT_SPECTRAL, bandwidth_hz)] {
        for (a, s) in &summaries {
            let s = s.scaled(divisor);
            writeln!(out, "{a},{},{},{},{},{unit}", sig6(s.highest), sig6(s.worst), sig6(s.mean), sig6(s.std)).unwrap();
        }
    }
    Ok(out)
}

/// Mean worst-vehicle rate in Mbit/s.
pub fn fig5(points: &[SweepPoint]) -> String {
    let mut out = String::new();
    writeln!(out, "{FIG5_HEADER}").unwrap();
    for p in points {
        writeln!(out, "{},{},{}", p.num_vehicles, p.algorithm, sig6(p.mean_worst_rate / 1e6)).unwrap();
    }
    out
}

pub fn fig6(series: &[(Algorithm, CdfSeries)]) -> String {
    let mut out = String::new();
    writeln!(out, "{FIG6_HEADER}").unwrap();
    for (a, s) in series {
        for (g, c) in s.grid.iter().zip(&s.cdf) {
            writeln!(out, "{},{a},{}", sig6(*g), sig6(*c)).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(8.219876), "8.21988");
        assert_eq!(sig6(8219876.5), "8219880");
        assert_eq!(sig6(0.000123456789), "0.000123457");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(-2.5), "-2.50000");
        assert_eq!(sig6(999999.7), "1000000");
        assert_eq!(sig6(9.999996), "10.0000");
    }
}
