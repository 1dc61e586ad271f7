//! GOE sampling, eigenvalue statistics, the Monte Carlo side of the exact
//! counting identity, and the large-deviation rate function for edge
//! eigenvalues.
//!
//! Variance convention: entries of an `N x N` sample are independent centered
//! Gaussians with `E M_ij^2 = sigma^2 (1 + delta_ij) / N`. The main-text GOE
//! of the counting identity is the `sigma = 2^{-1/2}` case; the API takes
//! `sigma` explicitly because a silent factor of sqrt(2) between the two
//! conventions is the classic mistake here.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;


use crate::interval::IntervalUnion;
use crate::linalg::{self, LinalgError};
use crate::logspace::LogScaledReal;
use crate::rng::{self, tag};

/// `sigma` for the main-text convention `E M_ij^2 = (1+delta_ij)/(2N)`.
pub const SIGMA_MAIN: f64 = core::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, PartialEq)]
pub enum GoeError {
    Domain(&'static str),
    Eigensolve(LinalgError),
}

impl fmt::Display for GoeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoeError::Domain(m) => write!(f, "domain error: {m}"),
            GoeError::Eigensolve(e) => write!(f, "eigensolve failed: {e}"),
        }
    }
}

impl core::error::Error for GoeError {}

impl From<LinalgError> for GoeError {
    fn from(e: LinalgError) -> Self {
        GoeError::Eigensolve(e)
    }
}

/// One GOE draw: ascending eigenvalues under the given variance convention.
#[derive(Debug, Clone, PartialEq)]
pub struct GoeSample {
    pub n: usize,
    pub sigma: f64,
    pub eigenvalues: Vec<f64>,
}

impl GoeSample {
    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Draws sample `index` of the stream `(seed, index)` and returns its sorted
/// spectrum. The matrix trace is returned alongside inside the sample via the
/// eigenvalues; entries are discarded.
pub fn sample_goe(n: usize, sigma: f64, seed: u64, index: u64) -> Result<GoeSample, GoeError> {
    let m = sample_goe_matrix(n, sigma, seed, index)?;
    let eigenvalues = linalg::sym_eigenvalues(&m, n)?;
    Ok(GoeSample { n, sigma, eigenvalues })
}

/// The raw symmetric matrix of one draw (row-major), for callers that need
/// more than the spectrum.
pub fn sample_goe_matrix(n: usize, sigma: f64, seed: u64, index: u64) -> Result<Vec<f64>, GoeError> {
    if n == 0 {
        return Err(GoeError::Domain("sample_goe needs N >= 1"));
    }
    if !(sigma > 0.0) {
        return Err(GoeError::Domain("sample_goe needs sigma > 0"));
    }
    let mut r = rng::stream(seed, tag::GOE, index);
    let nf = n as f64;
    let off = sigma / libm::sqrt(nf);
    let diag = sigma * libm::sqrt(2.0 / nf);
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let g = rng::standard_normal(&mut r);
            let v = if i == j { diag * g } else { off * g };
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    }
    Ok(m)
}

/// Streaming moments of the Monte Carlo weights for one index `k`.
///
/// Weights are `exp(-N (p-2)/(2p) lambda_k^2) 1{lambda_k in scaled B}`, all
/// in `[0, 1]`, so plain `f64` accumulation is exact enough; the huge
/// prefactor is attached at combine time in log scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McAccumulator {
    pub sum: f64,
    pub sum_sq: f64,
    pub count: u64,
}

impl McAccumulator {
    pub const EMPTY: Self = McAccumulator { sum: 0.0, sum_sq: 0.0, count: 0 };

    pub fn merge(self, other: Self) -> Self {
        McAccumulator {
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
            count: self.count + other.count,
        }
    }
}

/// Monte Carlo estimate with standard error, both log-scaled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: LogScaledReal,
    pub std_error: LogScaledReal,
    pub n_samples: u64,
}

fn identity_weight(p: u32, n: usize, lambda: f64, scaled_b: &IntervalUnion) -> f64 {
    if scaled_b.contains(lambda) {
        let pf = f64::from(p);
        libm::exp(-(n as f64) * (pf - 2.0) / (2.0 * pf) * lambda * lambda)
    } else {
        0.0
    }
}

/// Accumulates identity weights for samples `start .. start + count` of the
/// stream `(seed)`. `k_or_sum = Some(k)` uses the (k+1)-th smallest
/// eigenvalue; `None` sums the weight over all indices per draw (the k-summed
/// identity).
pub fn mc_identity_block(
    p: u32,
    n: usize,
    k_or_sum: Option<usize>,
    b: &IntervalUnion,
    seed: u64,
    start: u64,
    count: u64,
) -> Result<McAccumulator, GoeError> {
    if p < 2 {
        return Err(GoeError::Domain("identity needs p >= 2"));
    }
    if let Some(k) = k_or_sum {
        if k >= n {
            return Err(GoeError::Domain("identity needs 0 <= k <= N-1"));
        }
    }
    let scaled_b = b.scaled(libm::sqrt(f64::from(p) / (2.0 * (f64::from(p) - 1.0))));
    let mut acc = McAccumulator::EMPTY;
    for i in start..start + count {
        let sample = sample_goe(n, SIGMA_MAIN, seed, i)?;
        let w = match k_or_sum {
            Some(k) => identity_weight(p, n, sample.eigenvalues[k], &scaled_b),
            None => sample
                .eigenvalues
                .iter()
                .map(|&l| identity_weight(p, n, l, &scaled_b))
                .sum(),
        };
        acc.sum += w;
        acc.sum_sq += w * w;
        acc.count += 1;
    }
    Ok(acc)
}

/// Turns accumulated weights into the identity's right-hand side:
/// `2 sqrt(2/p) (p-1)^{N/2} * mean`, with its standard error.
pub fn mc_identity_combine(p: u32, n: usize, acc: McAccumulator) -> McEstimate {
    let pf = f64::from(p);
    let nf = n as f64;
    let count = acc.count as f64;
    let prefactor =
        LogScaledReal::from_f64(2.0 * libm::sqrt(2.0 / pf)).scale_exp(0.5 * nf * libm::log(pf - 1.0));
    let mean = acc.sum / count;
    let var = ((acc.sum_sq - count * mean * mean) / (count - 1.0)).max(0.0);
    let se = libm::sqrt(var / count);
    McEstimate {
        estimate: prefactor * LogScaledReal::from_f64(mean),
        std_error: prefactor * LogScaledReal::from_f64(se),
        n_samples: acc.count,
    }
}

/// Serial Monte Carlo for `E Crt_{N,k}(B)` (Theorem-2.1 right-hand side).
pub fn mc_identity_rhs(
    p: u32,
    n: usize,
    k: usize,
    b: &IntervalUnion,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate, GoeError> {
    let acc = mc_identity_block(p, n, Some(k), b, seed, 0, n_samples)?;
    Ok(mc_identity_combine(p, n, acc))
}

/// Serial Monte Carlo for the k-summed identity (Theorem-2.2 right-hand
/// side divided by the rho_N integral form, i.e. same estimator summed over k).
pub fn mc_identity_rhs_total(
    p: u32,
    n: usize,
    b: &IntervalUnion,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate, GoeError> {
    let acc = mc_identity_block(p, n, None, b, seed, 0, n_samples)?;
    Ok(mc_identity_combine(p, n, acc))
}

/// LDP rate function for the k-th largest eigenvalue exceeding `x`:
/// `I_k(x; sigma) = k I_1(x; sigma)`, `+inf` below the edge `2 sigma`.
pub fn ldp_rate(k: u32, x: f64, sigma: f64) -> Result<f64, GoeError> {
    if k < 1 {
        return Err(GoeError::Domain("ldp_rate needs k >= 1"));
    }
    if !(sigma > 0.0) {
        return Err(GoeError::Domain("ldp_rate needs sigma > 0"));
    }
    if x < 2.0 * sigma {
        return Ok(f64::INFINITY);
    }
    // closed form of int_{2s}^x sqrt((z/2s)^2 - 1)/s dz with c = x/(2 sigma)
    let c = x / (2.0 * sigma);
    let s = libm::sqrt(c * c - 1.0);
    Ok(f64::from(k) * (c * s - libm::log(c + s)))
}

/// Monte Carlo estimate of `-(1/N) log P[lambda_{(k-th largest)} >= x]` at
/// `sigma = 2^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub rate: f64,
    pub hits: u64,
    pub n_samples: u64,
    /// True when no events were observed and `rate` is the rule-of-three
    /// one-sided 95% lower bound instead of a point estimate.
    pub is_lower_bound: bool,
}

pub fn tail_estimate(
    n: usize,
    k: u32,
    x: f64,
    n_samples: u64,
    seed: u64,
) -> Result<TailEstimate, GoeError> {
    if k < 1 || (k as usize) > n {
        return Err(GoeError::Domain("tail_estimate needs 1 <= k <= N"));
    }
    if x <= 2.0 * SIGMA_MAIN {
        return Err(GoeError::Domain("tail_estimate needs x > sqrt(2)"));
    }
    let mut hits = 0u64;
    for i in 0..n_samples {
        let sample = sample_goe(n, SIGMA_MAIN, seed, i)?;
        if sample.eigenvalues[n - k as usize] >= x {
            hits += 1;
        }
    }
    let nf = n as f64;
    if hits == 0 {
        // rule of three: P <= 3/n at ~95 % confidence
        let p_bound = 3.0 / n_samples as f64;
        Ok(TailEstimate {
            rate: -libm::log(p_bound) / nf,
            hits,
            n_samples,
            is_lower_bound: true,
        })
    } else {
        Ok(TailEstimate {
            rate: -libm::log(hits as f64 / n_samples as f64) / nf,
            hits,
            n_samples,
            is_lower_bound: false,
        })
    }
}

/// Semicircle density `sqrt((2 sigma)^2 - x^2) / (2 pi sigma^2)` on its
/// support, 0 outside.
pub fn semicircle_density(x: f64, sigma: f64) -> f64 {
    let edge = 2.0 * sigma;
    if libm::fabs(x) >= edge {
        0.0
    } else {
        libm::sqrt(edge * edge - x * x) / (2.0 * core::f64::consts::PI * sigma * sigma)
    }
}

/// Fixed-range histogram of pooled eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMeasure {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl SpectralMeasure {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        assert!(lo < hi && bins > 0);
        SpectralMeasure { lo, hi, counts: vec![0; bins], total: 0 }
    }

    pub fn add(&mut self, x: f64) {
        self.total += 1;
        if x < self.lo || x >= self.hi {
            return;
        }
        let idx = ((x - self.lo) / (self.hi - self.lo) * self.counts.len() as f64) as usize;
        let last = self.counts.len() - 1;
        self.counts[idx.min(last)] += 1;
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * self.bin_width()
    }

    /// Normalized weights (they sum to the in-range fraction of draws).
    pub fn weights(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.total as f64).collect()
    }
}
