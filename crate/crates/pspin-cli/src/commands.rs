//! Subcommand implementations.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use pspin::complexity;
use pspin::goe;
use pspin::landscape::{self, EnumerationOptions};
use pspin::sharp;
use pspin::tap as tap_mod;
use pspin::IntervalUnion;

use crate::intervals::format_interval_union;
use crate::output::{emit, fmt_f64, resolve_seed, Format, Meta, Table};
use crate::Common;

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| anyhow!("cannot parse {what} entry `{x}`"))
        })
        .collect()
}

fn grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 || !(lo < hi) {
        bail!("grid needs at least 2 points and lo < hi (got [{lo}, {hi}] x {points})");
    }
    Ok((0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect())
}

pub fn curves(
    p: u32,
    k_list: &str,
    u_min: f64,
    u_max: f64,
    points: usize,
    common: &Common,
) -> Result<ExitCode> {
    let ks: Vec<u32> = parse_list(k_list, "k")?;
    let seed = resolve_seed(common.seed);
    let us = grid(u_min, u_max, points)?;
    let mut meta = Meta::new("curves", seed);
    meta.push("p", p);
    meta.push("k_list", k_list);
    meta.push("u_min", u_min);
    meta.push("u_max", u_max);
    meta.push("points", points);
    let mut table = Table::new(&["u", "curve", "value"]);
    for &u in &us {
        let total = complexity::theta_total(p, u).context("theta_total")?;
        table.push_row(vec![fmt_f64(u), "total".into(), fmt_f64(total)]);
        for &k in &ks {
            let v = complexity::theta_index(p, k, u).context("theta_index")?;
            table.push_row(vec![fmt_f64(u), k.to_string(), fmt_f64(v)]);
        }
    }
    emit(&common.output, &table.render(&meta, common.format))?;
    Ok(ExitCode::SUCCESS)
}

pub fn thresholds(p_list: &str, k_max: u32, common: &Common) -> Result<ExitCode> {
    let ps: Vec<u32> = parse_list(p_list, "p")?;
    if ps.is_empty() {
        bail!("thresholds needs at least one p");
    }
    if let Some(bad) = ps.iter().find(|&&p| p < 3) {
        eprintln!("error: thresholds requires p >= 3 (got p = {bad}); E_k has no isolated root at p = 2");
        return Ok(ExitCode::from(2));
    }
    let seed = resolve_seed(common.seed);
    let mut meta = Meta::new("thresholds", seed);
    meta.push("p_list", p_list);
    meta.push("k_max", k_max);
    meta.push("agreement_tol", "1e-6");
    let mut cols = vec!["p".to_string(), "e_infinity".to_string()];
    for k in 0..=k_max {
        cols.push(format!("e_{k}"));
    }
    cols.extend(["gs_variational".to_string(), "gs_scalar".to_string(), "agree".to_string()]);
    let mut table = Table { columns: cols, rows: Vec::new() };
    let mut all_agree = true;
    for &p in &ps {
        let t = complexity::ThresholdTable::compute(p, k_max).context("threshold table")?;
        let (gamma, _, _) = complexity::ground_state_variational(p).context("variational route")?;
        let scalar = complexity::ground_state_scalar(p).context("scalar route")?;
        let e0 = t.e_k[0].1;
        let agree = (gamma - e0).abs() < 1e-6 && (scalar - e0).abs() < 1e-6;
        all_agree &= agree;
        let mut row = vec![p.to_string(), fmt_f64(t.e_infinity)];
        row.extend(t.e_k.iter().map(|&(_, v)| fmt_f64(v)));
        row.extend([fmt_f64(gamma), fmt_f64(scalar), agree.to_string()]);
        table.push_row(row);
    }
    emit(&common.output, &table.render(&meta, common.format))?;
    Ok(if all_agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Monte Carlo block size: fixed so the reduction tree (and hence the float
/// sums) is identical for every thread count.
const MC_BLOCK: u64 = 8192;

pub fn mc_estimate_parallel(
    p: u32,
    n: usize,
    k: Option<usize>,
    b: &IntervalUnion,
    n_samples: u64,
    seed: u64,
) -> Result<goe::McEstimate> {
    let n_blocks = n_samples.div_ceil(MC_BLOCK);
    let blocks: Vec<goe::McAccumulator> = (0..n_blocks)
        .into_par_iter()
        .map(|blk| {
            let start = blk * MC_BLOCK;
            let count = MC_BLOCK.min(n_samples - start);
            goe::mc_identity_block(p, n, k, b, seed, start, count)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| anyhow!("GOE Monte Carlo failed: {e}"))?;
    let acc = blocks
        .into_iter()
        .fold(goe::McAccumulator::EMPTY, goe::McAccumulator::merge);
    Ok(goe::mc_identity_combine(p, n, acc))
}

pub struct EnumerationSummary {
    pub counts: Vec<f64>,
    pub n_rejected: usize,
}

pub fn enumerate_counts_parallel(
    p: u32,
    n: usize,
    k: Option<usize>,
    b: &IntervalUnion,
    n_instances: usize,
    seed: u64,
) -> Result<EnumerationSummary> {
    let opts = EnumerationOptions::default();
    let per_instance: Vec<Option<u64>> = (0..n_instances as u64)
        .into_par_iter()
        .map(|i| {
            let inst = landscape::LandscapeInstance::sample(p, n, seed, i)?;
            let report = landscape::enumerate_critical_points(&inst, &opts)?;
            Ok(report.morse_ok.then(|| report.count_in(k, b)))
        })
        .collect::<Result<Vec<_>, landscape::LandscapeError>>()
        .map_err(|e| anyhow!("enumeration failed: {e}"))?;
    let counts: Vec<f64> = per_instance.iter().flatten().map(|&c| c as f64).collect();
    let n_rejected = n_instances - counts.len();
    Ok(EnumerationSummary { counts, n_rejected })
}

pub fn verify_identity(
    p: u32,
    n: usize,
    k: Option<usize>,
    b: &IntervalUnion,
    n_samples: u64,
    n_instances: usize,
    common: &Common,
) -> Result<ExitCode> {
    let seed = resolve_seed(common.seed);
    let summary = enumerate_counts_parallel(p, n, k, b, n_instances, seed)?;
    let lhs = landscape::summarize_counts(&summary.counts, summary.n_rejected, n_instances)
        .map_err(|e| anyhow!("{e}"))?;
    // shift the GOE stream away from the instance stream indices
    let rhs = mc_estimate_parallel(p, n, k, b, n_samples, seed ^ 0x5ca1_ab1e)?;
    let rhs_mean = rhs.estimate.to_f64();
    let rhs_se = rhs.std_error.to_f64();
    let diff = lhs.mean - rhs_mean;
    let combined_se = (lhs.std_error * lhs.std_error + rhs_se * rhs_se).sqrt();
    // exact agreement with zero variance (the p = 2 case) is a zero z-score
    let z = if diff == 0.0 { 0.0 } else { diff / combined_se };
    let exact = match k {
        None => Some(
            pspin::specfun::exact_mean_total(p, n, b)
                .map_err(|e| anyhow!("quadrature failed: {e}"))?
                .to_f64(),
        ),
        Some(_) => None,
    };
    let pass = z.abs() < 3.0;

    let mut meta = Meta::new("verify-identity", seed);
    meta.push("p", p);
    meta.push("n", n);
    meta.push("k", k.map_or("all".to_string(), |k| k.to_string()));
    meta.push("b", format_interval_union(b));
    meta.push("n_instances", n_instances);
    meta.push("n_samples", n_samples);
    let content = match common.format {
        Format::Json => {
            let doc = serde_json::json!({
                "meta": meta.json_value(),
                "lhs": {
                    "mean": lhs.mean,
                    "std_error": lhs.std_error,
                    "n_used": lhs.n_used,
                    "n_rejected": lhs.n_rejected,
                },
                "rhs": {
                    "mean": rhs_mean,
                    "std_error": rhs_se,
                    "n_samples": rhs.n_samples,
                },
                "exact": exact,
                "z_score": z,
                "pass": pass,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut table = Table::new(&["metric", "value"]);
            table.push_row(vec!["lhs_mean".into(), fmt_f64(lhs.mean)]);
            table.push_row(vec!["lhs_std_error".into(), fmt_f64(lhs.std_error)]);
            table.push_row(vec!["lhs_n_used".into(), lhs.n_used.to_string()]);
            table.push_row(vec!["lhs_n_rejected".into(), lhs.n_rejected.to_string()]);
            table.push_row(vec!["rhs_mean".into(), fmt_f64(rhs_mean)]);
            table.push_row(vec!["rhs_std_error".into(), fmt_f64(rhs_se)]);
            if let Some(e) = exact {
                table.push_row(vec!["exact".into(), fmt_f64(e)]);
            }
            table.push_row(vec!["z_score".into(), fmt_f64(z)]);
            table.push_row(vec!["pass".into(), pass.to_string()]);
            table.render(&meta, Format::Csv)
        }
    };
    emit(&common.output, &content)?;
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn tap(
    p: u32,
    beta: f64,
    k: u32,
    u_min: f64,
    u_max: Option<f64>,
    points: usize,
    common: &Common,
) -> Result<ExitCode> {
    let e_inf = complexity::e_infinity(p).map_err(|e| anyhow!("{e}"))?;
    let u_hi = u_max.unwrap_or(-e_inf);
    if u_hi > -e_inf {
        bail!("tap requires u <= -E_inf(p) = {}", -e_inf);
    }
    let seed = resolve_seed(common.seed);
    let us = grid(u_min, u_hi, points)?;
    let ustar = tap_mod::u_star(p, beta).map_err(|e| anyhow!("{e}"))?;
    let mut meta = Meta::new("tap", seed);
    meta.push("p", p);
    meta.push("beta", beta);
    meta.push("k", k);
    meta.push("u_star", fmt_f64(ustar));
    let mut table = Table::new(&["u", "complexity", "vanishing_regime"]);
    for &u in &us {
        let tc = tap_mod::tap_complexity(p, k, u, beta).map_err(|e| anyhow!("{e}"))?;
        table.push_row(vec![
            fmt_f64(u),
            fmt_f64(tc.value),
            tc.vanishing_regime.to_string(),
        ]);
    }
    emit(&common.output, &table.render(&meta, common.format))?;
    Ok(ExitCode::SUCCESS)
}

pub fn sharp(p: u32, u: f64, n_list: &str, common: &Common) -> Result<ExitCode> {
    let ns: Vec<usize> = parse_list(n_list, "N")?;
    if ns.is_empty() {
        bail!("sharp needs at least one N");
    }
    let seed = resolve_seed(common.seed);
    let rows = sharp::compare_exact_sharp(p, u, &ns).map_err(|e| anyhow!("{e}"))?;
    let mut meta = Meta::new("sharp", seed);
    meta.push("p", p);
    meta.push("u", u);
    meta.push("regime", format!("{:?}", sharp::regime(p, u).map_err(|e| anyhow!("{e}"))?));
    let mut table = Table::new(&["p", "u", "N", "exact_log", "sharp_log", "rel_dev"]);
    for r in rows {
        table.push_row(vec![
            p.to_string(),
            fmt_f64(u),
            r.n.to_string(),
            fmt_f64(r.exact_log),
            fmt_f64(r.sharp_log),
            fmt_f64(r.rel_dev),
        ]);
    }
    emit(&common.output, &table.render(&meta, common.format))?;
    Ok(ExitCode::SUCCESS)
}

pub fn goe_ldp(
    n_list: &str,
    k: u32,
    x_min: f64,
    x_max: f64,
    points: usize,
    n_samples: u64,
    common: &Common,
) -> Result<ExitCode> {
    let ns: Vec<usize> = parse_list(n_list, "N")?;
    if ns.is_empty() {
        bail!("goe-ldp needs at least one N");
    }
    let seed = resolve_seed(common.seed);
    let xs = grid(x_min, x_max, points)?;
    let mut meta = Meta::new("goe-ldp", seed);
    meta.push("n_list", n_list);
    meta.push("k", k);
    meta.push("n_samples", n_samples);
    meta.push("sigma", fmt_f64(goe::SIGMA_MAIN));
    let mut table = Table::new(&[
        "N",
        "k",
        "x",
        "rate_estimate",
        "is_lower_bound",
        "hits",
        "rate_i_k",
        "rate_i_1",
    ]);
    for &n in &ns {
        for &x in &xs {
            let est = goe::tail_estimate(n, k, x, n_samples, seed ^ (n as u64))
                .map_err(|e| anyhow!("{e}"))?;
            let ik = goe::ldp_rate(k, x, goe::SIGMA_MAIN).map_err(|e| anyhow!("{e}"))?;
            let i1 = goe::ldp_rate(1, x, goe::SIGMA_MAIN).map_err(|e| anyhow!("{e}"))?;
            table.push_row(vec![
                n.to_string(),
                k.to_string(),
                fmt_f64(x),
                fmt_f64(est.rate),
                est.is_lower_bound.to_string(),
                est.hits.to_string(),
                fmt_f64(ik),
                fmt_f64(i1),
            ]);
        }
    }
    emit(&common.output, &table.render(&meta, common.format))?;
    Ok(ExitCode::SUCCESS)
}

pub fn enumerate(p: u32, n: usize, instance: u64, common: &Common) -> Result<ExitCode> {
    let seed = resolve_seed(common.seed);
    let inst = landscape::LandscapeInstance::sample(p, n, seed, instance)
        .map_err(|e| anyhow!("{e}"))?;
    let report = landscape::enumerate_critical_points(&inst, &EnumerationOptions::default())
        .map_err(|e| anyhow!("{e}"))?;
    let mut meta = Meta::new("enumerate", seed);
    meta.push("p", p);
    meta.push("n", n);
    meta.push("instance", instance);
    let content = match common.format {
        Format::Json => {
            let points: Vec<serde_json::Value> = report
                .points
                .iter()
                .map(|pt| {
                    serde_json::json!({
                        "position": pt.position,
                        "normalized_energy": pt.normalized_energy,
                        "index": pt.index,
                        "hessian_spectrum": pt.hessian_spectrum,
                        "residual": pt.residual,
                    })
                })
                .collect();
            let counts: serde_json::Map<String, serde_json::Value> = report
                .counts_by_index
                .iter()
                .enumerate()
                .map(|(k, &c)| (k.to_string(), serde_json::Value::from(c)))
                .collect();
            let doc = serde_json::json!({
                "meta": meta.json_value(),
                "seed": report.seed,
                "instance_index": report.instance_index,
                "p": report.p,
                "N": report.n,
                "points": points,
                "counts": counts,
                "morse_ok": report.morse_ok,
                "rejected": report.rejected,
                "starts_used": report.starts_used,
                "last_new_start": report.last_new_start,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            meta.push("morse_ok", report.morse_ok);
            meta.push("rejected", report.rejected);
            meta.push("starts_used", report.starts_used);
            let mut table = Table::new(&["point", "index", "normalized_energy", "residual"]);
            for (i, pt) in report.points.iter().enumerate() {
                table.push_row(vec![
                    i.to_string(),
                    pt.index.to_string(),
                    fmt_f64(pt.normalized_energy),
                    fmt_f64(pt.residual),
                ]);
            }
            table.render(&meta, Format::Csv)
        }
    };
    emit(&common.output, &content)?;
    Ok(if report.morse_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
