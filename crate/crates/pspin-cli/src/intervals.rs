//! Parsing of interval-union level sets: `"-inf..-1.63"`, `"0.5..1,2..3"`.

use pspin::{Interval, IntervalUnion};

pub fn parse_interval_union(s: &str) -> Result<IntervalUnion, String> {
    let mut parts = Vec::new();
    for piece in s.split(',') {
        let piece = piece.trim();
        let (lo_s, hi_s) = piece
            .split_once("..")
            .ok_or_else(|| format!("interval `{piece}` must look like `lo..hi`"))?;
        let lo = parse_endpoint(lo_s)?;
        let hi = parse_endpoint(hi_s)?;
        if lo > hi {
            return Err(format!("interval `{piece}` has lo > hi"));
        }
        parts.push(Interval::new(lo, hi));
    }
    if parts.is_empty() {
        return Err("empty interval union".to_string());
    }
    Ok(IntervalUnion::new(parts))
}

fn parse_endpoint(s: &str) -> Result<f64, String> {
    match s.trim() {
        "-inf" | "-Inf" | "-INF" => Ok(f64::NEG_INFINITY),
        "inf" | "Inf" | "INF" | "+inf" => Ok(f64::INFINITY),
        other => other
            .parse::<f64>()
            .map_err(|_| format!("cannot parse endpoint `{other}`")),
    }
}

/// Renders the union back for metadata lines.
pub fn format_interval_union(b: &IntervalUnion) -> String {
    b.parts()
        .iter()
        .map(|i| {
            let lo = if i.lo == f64::NEG_INFINITY { "-inf".to_string() } else { format!("{}", i.lo) };
            let hi = if i.hi == f64::INFINITY { "inf".to_string() } else { format!("{}", i.hi) };
            format!("{lo}..{hi}")
        })
        .collect::<Vec<_>>()
        .join(",")
}
