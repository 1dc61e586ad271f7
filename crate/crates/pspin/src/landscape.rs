//! Sampled p-spin landscapes: exact sphere-restricted derivatives,
//! multistart Riemannian-Newton enumeration of critical points at desk
//! scale, and the empirical side of the counting identity.
//!
//! All geometry runs on the unit sphere through the variance-one process
//! `f(sigma) = sum J_{i_1..i_p} sigma_{i_1}...sigma_{i_p}`; energies are
//! reported normalized, `u = f / sqrt(N)`. Gradients and Hessians are exact
//! polynomial derivatives (no finite differences); the Hessian is the
//! projected `P D2f P - <sigma, Df> P` in an orthonormal tangent frame.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::interval::IntervalUnion;
use crate::linalg::{self, LinalgError};
use crate::rng::{self, tag};

#[derive(Debug, Clone, PartialEq)]
pub enum LandscapeError {
    Domain(&'static str),
    /// `N^p` exceeds the coefficient-array cap.
    SizeCap { requested: u64, cap: u64 },
    /// Off-sphere evaluation point.
    OffSphere { norm_dev: f64 },
    /// More than 5 % of instances failed the Morse certificate.
    EnumerationUnreliable { rejected: usize, total: usize },
    /// Ground state requested from an incomplete enumeration.
    IncompleteEnumeration,
    Eigensolve(LinalgError),
}

impl fmt::Display for LandscapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LandscapeError::Domain(m) => write!(f, "domain error: {m}"),
            LandscapeError::SizeCap { requested, cap } => {
                write!(f, "coefficient array of size {requested} exceeds cap {cap}")
            }
            LandscapeError::OffSphere { norm_dev } => {
                write!(f, "point is off the unit sphere by {norm_dev:e}")
            }
            LandscapeError::EnumerationUnreliable { rejected, total } => {
                write!(f, "{rejected}/{total} instances failed the Morse certificate")
            }
            LandscapeError::IncompleteEnumeration => {
                write!(f, "enumeration did not pass the Morse certificate")
            }
            LandscapeError::Eigensolve(e) => write!(f, "eigensolve failed: {e}"),
        }
    }
}

impl core::error::Error for LandscapeError {}

impl From<LinalgError> for LandscapeError {
    fn from(e: LinalgError) -> Self {
        LandscapeError::Eigensolve(e)
    }
}

const COEFFICIENT_CAP: u64 = 1 << 22;

/// One sampled Hamiltonian: the full i.i.d. coefficient array `J_{i_1..i_p}`
/// (unsymmetrized, exactly as the covariance demands) plus its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeInstance {
    p: u32,
    n: usize,
    seed: u64,
    index: u64,
    coefficients: Vec<f64>,
}

/// Exact value/gradient/Hessian of `f` at a point (ambient coordinates).
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Vec<f64>, // row-major N x N
}

impl LandscapeInstance {
    /// Draws instance `index` of the `(seed)` stream.
    pub fn sample(p: u32, n: usize, seed: u64, index: u64) -> Result<Self, LandscapeError> {
        if p < 2 {
            return Err(LandscapeError::Domain("instance needs p >= 2"));
        }
        if n < 2 {
            return Err(LandscapeError::Domain("instance needs N >= 2"));
        }
        let size = (n as u64).checked_pow(p).ok_or(LandscapeError::SizeCap {
            requested: u64::MAX,
            cap: COEFFICIENT_CAP,
        })?;
        if size > COEFFICIENT_CAP {
            return Err(LandscapeError::SizeCap { requested: size, cap: COEFFICIENT_CAP });
        }
        let mut r = rng::stream(seed, tag::INSTANCE, index);
        let coefficients = (0..size).map(|_| rng::standard_normal(&mut r)).collect();
        Ok(LandscapeInstance { p, n, seed, index, coefficients })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `f(sigma)` alone.
    pub fn value(&self, sigma: &[f64]) -> f64 {
        let p = self.p as usize;
        let mut digits = vec![0usize; p];
        let mut total = 0.0;
        for &coef in &self.coefficients {
            let mut prod = coef;
            for &d in digits.iter() {
                prod *= sigma[d];
            }
            total += prod;
            advance(&mut digits, self.n);
        }
        total
    }

    /// Value, ambient gradient and ambient Hessian in one sweep over the
    /// coefficient array.
    pub fn evaluate(&self, sigma: &[f64]) -> Evaluation {
        let n = self.n;
        let p = self.p as usize;
        let mut digits = vec![0usize; p];
        let mut vals = vec![0.0; p];
        let mut value = 0.0;
        let mut gradient = vec![0.0; n];
        let mut hessian = vec![0.0; n * n];
        for &coef in &self.coefficients {
            for (m, &d) in digits.iter().enumerate() {
                vals[m] = sigma[d];
            }
            let mut prod_all = coef;
            for &v in vals.iter() {
                prod_all *= v;
            }
            value += prod_all;
            for m in 0..p {
                let mut loo = coef;
                for (l, &v) in vals.iter().enumerate() {
                    if l != m {
                        loo *= v;
                    }
                }
                gradient[digits[m]] += loo;
                for m2 in m + 1..p {
                    let mut lto = coef;
                    for (l, &v) in vals.iter().enumerate() {
                        if l != m && l != m2 {
                            lto *= v;
                        }
                    }
                    let (a, b) = (digits[m], digits[m2]);
                    hessian[a * n + b] += lto;
                    hessian[b * n + a] += lto;
                }
            }
            advance(&mut digits, n);
        }
        Evaluation { value, gradient, hessian }
    }

    /// For p = 2 the landscape is the quadratic form of the symmetrized
    /// coefficient matrix; exposes it for the eigenvalue cross-check.
    pub fn symmetrized_matrix(&self) -> Option<Vec<f64>> {
        if self.p != 2 {
            return None;
        }
        let n = self.n;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] =
                    0.5 * (self.coefficients[i * n + j] + self.coefficients[j * n + i]);
            }
        }
        Some(m)
    }
}

fn advance(digits: &mut [usize], base: usize) {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return;
        }
        *d = 0;
    }
}

/// Orthonormal tangent frame at a unit vector: columns `E_0..E_{N-2}` of the
/// Householder reflection carrying `e_N` to `-sign(sigma_N) sigma`.
fn tangent_frame(sigma: &[f64]) -> Vec<Vec<f64>> {
    let n = sigma.len();
    let s = if sigma[n - 1] >= 0.0 { 1.0 } else { -1.0 };
    let mut w: Vec<f64> = sigma.to_vec();
    w[n - 1] += s;
    let wn2: f64 = w.iter().map(|x| x * x).sum();
    (0..n - 1)
        .map(|i| {
            let coef = 2.0 * w[i] / wn2;
            let mut e: Vec<f64> = (0..n).map(|j| -coef * w[j]).collect();
            e[i] += 1.0;
            e
        })
        .collect()
}

/// Riemannian gradient (tangent coordinates) and covariant Hessian
/// ((N-1) x (N-1), row-major) of `f` at a unit-sphere point.
pub fn riemannian_grad_hess(
    instance: &LandscapeInstance,
    sigma: &[f64],
) -> Result<(Vec<f64>, Vec<f64>), LandscapeError> {
    let norm: f64 = libm::sqrt(sigma.iter().map(|x| x * x).sum());
    let dev = libm::fabs(norm - 1.0);
    if dev > 1e-12 {
        return Err(LandscapeError::OffSphere { norm_dev: dev });
    }
    let eval = instance.evaluate(sigma);
    let frame = tangent_frame(sigma);
    Ok(project_to_frame(&eval, sigma, &frame, instance.n))
}

fn project_to_frame(
    eval: &Evaluation,
    sigma: &[f64],
    frame: &[Vec<f64>],
    n: usize,
) -> (Vec<f64>, Vec<f64>) {
    let dim = n - 1;
    let radial: f64 = sigma.iter().zip(&eval.gradient).map(|(a, b)| a * b).sum();
    let grad: Vec<f64> = frame
        .iter()
        .map(|e| e.iter().zip(&eval.gradient).map(|(a, b)| a * b).sum())
        .collect();
    // hess_ij = E_i^T D2f E_j - <sigma, Df> delta_ij
    let mut hess = vec![0.0; dim * dim];
    let mut he = vec![0.0; n];
    for (j, ej) in frame.iter().enumerate() {
        for r in 0..n {
            he[r] = (0..n).map(|c| eval.hessian[r * n + c] * ej[c]).sum();
        }
        for (i, ei) in frame.iter().enumerate() {
            let mut v: f64 = ei.iter().zip(&he).map(|(a, b)| a * b).sum();
            if i == j {
                v -= radial;
            }
            hess[i * dim + j] = v;
        }
    }
    (grad, hess)
}

/// A located critical point of one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    /// Unit-sphere position.
    pub position: Vec<f64>,
    /// `u = f(sigma) / sqrt(N)`.
    pub normalized_energy: f64,
    /// Morse index: negative eigenvalues of the covariant Hessian.
    pub index: usize,
    /// Spectrum of the covariant Hessian of `f` (ascending, N-1 values).
    pub hessian_spectrum: Vec<f64>,
    /// Riemannian gradient norm at the reported position.
    pub residual: f64,
}

/// Knobs for the enumeration; the defaults are tuned for `N <= 6`, `p <= 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationOptions {
    /// Stop after this many consecutive starts found nothing new.
    pub saturation: u64,
    pub max_starts: u64,
    /// Geodesic dedup radius between distinct points.
    pub dedup_radius: f64,
    /// |eigenvalue| below this flags the Hessian as degenerate.
    pub degeneracy_tol: f64,
    pub grad_tol: f64,
    pub max_newton_iters: u32,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            saturation: 200,
            max_starts: 40_000,
            dedup_radius: 1e-5,
            degeneracy_tol: 1e-7,
            grad_tol: 1e-11,
            max_newton_iters: 80,
        }
    }
}

/// Outcome of enumerating one instance, with the completeness certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationReport {
    pub seed: u64,
    pub instance_index: u64,
    pub p: u32,
    pub n: usize,
    pub points: Vec<CriticalPoint>,
    /// Counts by Morse index, length N-1+1 = N (indices 0..N-1).
    pub counts_by_index: Vec<u64>,
    /// Alternating index sum equals the sphere's Euler characteristic.
    pub morse_ok: bool,
    /// True when a near-degenerate Hessian forced a rejection; the instance
    /// must not enter statistics.
    pub rejected: bool,
    pub starts_used: u64,
    pub last_new_start: u64,
}

impl EnumerationReport {
    /// Number of located points with the given index (None = any index) and
    /// normalized energy inside `b`.
    pub fn count_in(&self, k: Option<usize>, b: &IntervalUnion) -> u64 {
        self.points
            .iter()
            .filter(|pt| k.is_none_or(|k| pt.index == k) && b.contains(pt.normalized_energy))
            .count() as u64
    }

    pub fn euler_characteristic(n: usize) -> i64 {
        if (n - 1) % 2 == 0 {
            2
        } else {
            0
        }
    }

    pub fn morse_sum(&self) -> i64 {
        self.counts_by_index
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

fn normalize(v: &mut [f64]) {
    let norm = libm::sqrt(v.iter().map(|x| x * x).sum());
    for x in v.iter_mut() {
        *x /= norm;
    }
}

/// Damped Riemannian Newton from one start; returns the converged unit
/// vector or None.
fn newton_from(
    instance: &LandscapeInstance,
    start: &[f64],
    opts: &EnumerationOptions,
) -> Option<Vec<f64>> {
    let n = instance.n;
    let dim = n - 1;
    let mut sigma = start.to_vec();
    normalize(&mut sigma);
    let mut grad_norm2 = f64::INFINITY;
    for _ in 0..opts.max_newton_iters {
        let eval = instance.evaluate(&sigma);
        let frame = tangent_frame(&sigma);
        let (grad, mut hess) = project_to_frame(&eval, &sigma, &frame, n);
        grad_norm2 = grad.iter().map(|x| x * x).sum();
        if libm::sqrt(grad_norm2) < opts.grad_tol {
            return Some(sigma);
        }
        let mut step: Vec<f64> = grad.iter().map(|g| -g).collect();
        if linalg::solve_linear(&mut hess, &mut step, dim).is_err() {
            return None;
        }
        // backtracking on the squared gradient norm
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial = sigma.clone();
            for (i, e) in frame.iter().enumerate() {
                for (tr, &ev) in trial.iter_mut().zip(e.iter()) {
                    *tr += t * step[i] * ev;
                }
            }
            normalize(&mut trial);
            let t_eval = instance.evaluate(&trial);
            let t_frame = tangent_frame(&trial);
            let (t_grad, _) = project_to_frame(&t_eval, &trial, &t_frame, n);
            let t_norm2: f64 = t_grad.iter().map(|x| x * x).sum();
            if t_norm2 <= grad_norm2 * (1.0 - 1e-4 * t) {
                sigma = trial;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    if libm::sqrt(grad_norm2) < opts.grad_tol {
        Some(sigma)
    } else {
        None
    }
}

fn geodesic_distance(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    libm::acos(dot.clamp(-1.0, 1.0))
}

/// Fibonacci lattice on S^2 (used for N = 3 starts).
fn fibonacci_sphere(count: usize) -> Vec<Vec<f64>> {
    let golden = core::f64::consts::PI * (3.0 - libm::sqrt(5.0));
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = libm::sqrt((1.0 - z * z).max(0.0));
            let phi = golden * i as f64;
            vec![r * libm::cos(phi), r * libm::sin(phi), z]
        })
        .collect()
}

/// Multistart enumeration with dedup, index classification and the Morse
/// certificate. Completeness is certified by the alternating sum alone;
/// saturation only decides when to stop trying.
pub fn enumerate_critical_points(
    instance: &LandscapeInstance,
    opts: &EnumerationOptions,
) -> Result<EnumerationReport, LandscapeError> {
    let n = instance.n;
    let dim = n - 1;
    let mut starts_rng = rng::stream(instance.seed, tag::STARTS, instance.index);
    let lattice = if n == 3 { fibonacci_sphere(64) } else { Vec::new() };

    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut rejected = false;
    let mut consecutive_empty = 0u64;
    let mut starts_used = 0u64;
    let mut last_new_start = 0u64;

    while starts_used < opts.max_starts {
        let start: Vec<f64> = if (starts_used as usize) < lattice.len() {
            lattice[starts_used as usize].clone()
        } else {
            let mut v: Vec<f64> = (0..n).map(|_| rng::standard_normal(&mut starts_rng)).collect();
            normalize(&mut v);
            v
        };
        starts_used += 1;
        let found = newton_from(instance, &start, opts);
        let mut new_point = false;
        if let Some(sigma) = found {
            let is_known = points
                .iter()
                .any(|pt| geodesic_distance(&pt.position, &sigma) < opts.dedup_radius);
            if !is_known {
                let eval = instance.evaluate(&sigma);
                let frame = tangent_frame(&sigma);
                let (grad, hess) = project_to_frame(&eval, &sigma, &frame, n);
                let spectrum = linalg::sym_eigenvalues(&hess, dim)?;
                let residual = libm::sqrt(grad.iter().map(|x| x * x).sum());
                if spectrum.iter().any(|l| libm::fabs(*l) < opts.degeneracy_tol) {
                    rejected = true;
                } else {
                    let index = spectrum.iter().filter(|l| **l < 0.0).count();
                    points.push(CriticalPoint {
                        position: sigma,
                        normalized_energy: eval.value / libm::sqrt(n as f64),
                        index,
                        hessian_spectrum: spectrum,
                        residual,
                    });
                    new_point = true;
                    last_new_start = starts_used;
                }
            }
        }
        if new_point {
            consecutive_empty = 0;
        } else {
            consecutive_empty += 1;
            if consecutive_empty >= opts.saturation && starts_used >= lattice.len() as u64 {
                break;
            }
        }
    }

    let mut counts_by_index = vec![0u64; n];
    for pt in &points {
        counts_by_index[pt.index] += 1;
    }
    let report = EnumerationReport {
        seed: instance.seed,
        instance_index: instance.index,
        p: instance.p,
        n,
        morse_ok: false,
        rejected,
        starts_used,
        last_new_start,
        points,
        counts_by_index,
    };
    let morse_ok = report.morse_sum() == EnumerationReport::euler_characteristic(n) && !rejected;
    Ok(EnumerationReport { morse_ok, ..report })
}

/// Sample mean and standard error of `Crt_{N,k}(B)` over independent
/// instances, counting only instances that pass the Morse certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrtStatistics {
    pub mean: f64,
    pub std_error: f64,
    pub n_used: usize,
    pub n_rejected: usize,
}

pub fn empirical_crt_statistics(
    p: u32,
    n: usize,
    k: Option<usize>,
    b: &IntervalUnion,
    n_instances: usize,
    seed: u64,
    opts: &EnumerationOptions,
) -> Result<CrtStatistics, LandscapeError> {
    if n > 6 {
        return Err(LandscapeError::Domain("enumeration regime is N <= 6"));
    }
    let mut counts: Vec<f64> = Vec::with_capacity(n_instances);
    let mut n_rejected = 0usize;
    for i in 0..n_instances {
        let instance = LandscapeInstance::sample(p, n, seed, i as u64)?;
        let report = enumerate_critical_points(&instance, opts)?;
        if report.morse_ok {
            counts.push(report.count_in(k, b) as f64);
        } else {
            n_rejected += 1;
        }
    }
    summarize_counts(&counts, n_rejected, n_instances)
}

/// Shared tail of [`empirical_crt_statistics`]; public so parallel drivers
/// can enumerate instances themselves and reduce deterministically.
pub fn summarize_counts(
    counts: &[f64],
    n_rejected: usize,
    n_total: usize,
) -> Result<CrtStatistics, LandscapeError> {
    if n_rejected * 20 > n_total {
        return Err(LandscapeError::EnumerationUnreliable { rejected: n_rejected, total: n_total });
    }
    let n_used = counts.len();
    let mean = counts.iter().sum::<f64>() / n_used as f64;
    let var = counts.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>() / (n_used as f64 - 1.0);
    Ok(CrtStatistics {
        mean,
        std_error: libm::sqrt(var / n_used as f64),
        n_used,
        n_rejected,
    })
}

/// Normalized ground-state energy of one enumerated instance.
pub fn ground_state_of_instance(report: &EnumerationReport) -> Result<f64, LandscapeError> {
    if !report.morse_ok {
        return Err(LandscapeError::IncompleteEnumeration);
    }
    report
        .points
        .iter()
        .map(|pt| pt.normalized_energy)
        .min_by(|a, b| a.partial_cmp(b).expect("finite energies"))
        .ok_or(LandscapeError::IncompleteEnumeration)
}

/// `(f, grad, hess)` of `f` in the tangent frame at the north pole, straight
/// from the instance evaluator (the frame there is the coordinate one).
pub fn north_pole_derivatives(instance: &LandscapeInstance) -> (f64, Vec<f64>, Vec<f64>) {
    let n = instance.n;
    let mut pole = vec![0.0; n];
    pole[n - 1] = 1.0;
    let eval = instance.evaluate(&pole);
    let frame = tangent_frame(&pole);
    let (grad, hess) = project_to_frame(&eval, &pole, &frame, n);
    (eval.value, grad, hess)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goe;

    fn unit(v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        normalize(&mut out);
        out
    }

    /// Independent recursive reference for the defining sum.
    fn naive_value(inst: &LandscapeInstance, sigma: &[f64], prefix: &mut Vec<usize>) -> f64 {
        if prefix.len() == inst.p as usize {
            let mut idx = 0usize;
            let mut stride = 1usize;
            let mut prod = 1.0;
            for &d in prefix.iter() {
                idx += d * stride;
                stride *= inst.n;
                prod *= sigma[d];
            }
            return inst.coefficients[idx] * prod;
        }
        (0..inst.n)
            .map(|d| {
                prefix.push(d);
                let v = naive_value(inst, sigma, prefix);
                prefix.pop();
                v
            })
            .sum()
    }

    #[test]
    fn evaluator_matches_naive_reference() {
        for (p, n) in [(2u32, 4usize), (3, 3), (4, 3)] {
            let inst = LandscapeInstance::sample(p, n, 5, 0).unwrap();
            let sigma = unit(&(0..n).map(|i| 0.3 + i as f64).collect::<Vec<_>>());
            let direct = inst.value(&sigma);
            let naive = naive_value(&inst, &sigma, &mut Vec::new());
            assert!((direct - naive).abs() < 1e-12 * naive.abs().max(1.0));
            let eval = inst.evaluate(&sigma);
            assert!((eval.value - naive).abs() < 1e-12 * naive.abs().max(1.0));
        }
    }

    #[test]
    fn gradient_and_hessian_match_finite_differences() {
        let inst = LandscapeInstance::sample(3, 4, 9, 1).unwrap();
        let sigma = unit(&[0.2, -0.5, 0.8, 0.1]);
        let eval = inst.evaluate(&sigma);
        let h = 1e-4;
        for a in 0..4 {
            let mut plus = sigma.clone();
            plus[a] += h;
            let mut minus = sigma.clone();
            minus[a] -= h;
            let fd = (inst.value(&plus) - inst.value(&minus)) / (2.0 * h);
            assert!((fd - eval.gradient[a]).abs() < 1e-6, "grad[{a}]");
            for b in 0..4 {
                let mut pp = sigma.clone();
                pp[a] += h;
                pp[b] += h;
                let mut pm = sigma.clone();
                pm[a] += h;
                pm[b] -= h;
                let mut mp = sigma.clone();
                mp[a] -= h;
                mp[b] += h;
                let mut mm = sigma.clone();
                mm[a] -= h;
                mm[b] -= h;
                let fd2 = (inst.value(&pp) - inst.value(&pm) - inst.value(&mp)
                    + inst.value(&mm))
                    / (4.0 * h * h);
                assert!(
                    (fd2 - eval.hessian[a * 4 + b]).abs() < 1e-6,
                    "hess[{a}][{b}]: {fd2} vs {}",
                    eval.hessian[a * 4 + b]
                );
            }
        }
    }

    #[test]
    fn determinism_and_size_cap() {
        let a = LandscapeInstance::sample(3, 3, 7, 2).unwrap();
        let b = LandscapeInstance::sample(3, 3, 7, 2).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            LandscapeInstance::sample(12, 64, 0, 0),
            Err(LandscapeError::SizeCap { .. })
        ));
    }

    #[test]
    fn odd_p_is_antisymmetric() {
        let inst = LandscapeInstance::sample(3, 4, 11, 0).unwrap();
        let sigma = unit(&[0.4, 0.3, -0.7, 0.2]);
        let neg: Vec<f64> = sigma.iter().map(|x| -x).collect();
        assert_eq!(inst.value(&sigma), -inst.value(&neg));
    }

    #[test]
    fn covariance_scaling_statistical() {
        // Var f(sigma) = 1 and Cov(f(sigma), f(sigma')) = R^p within 4 SE
        let n_draws = 30_000;
        let p = 3u32;
        let n = 4usize;
        let s1 = unit(&[1.0, 0.2, -0.3, 0.5]);
        let s2 = unit(&[-0.4, 1.0, 0.1, 0.3]);
        let orth = {
            // Gram-Schmidt a vector against s1
            let mut v = vec![0.3, -0.2, 0.9, 0.1];
            let d: f64 = v.iter().zip(&s1).map(|(a, b)| a * b).sum();
            for (x, &y) in v.iter_mut().zip(&s1) {
                *x -= d * y;
            }
            unit(&v)
        };
        let r: f64 = s1.iter().zip(&s2).map(|(a, b)| a * b).sum();
        let (mut v11, mut v12, mut v1o) = (0.0, 0.0, 0.0);
        for i in 0..n_draws {
            let inst = LandscapeInstance::sample(p, n, 101, i).unwrap();
            let (a, b, c) = (inst.value(&s1), inst.value(&s2), inst.value(&orth));
            v11 += a * a;
            v12 += a * b;
            v1o += a * c;
        }
        let nf = n_draws as f64;
        let se = 4.0 / libm::sqrt(nf); // crude scale for products of unit Gaussians
        assert!((v11 / nf - 1.0).abs() < 2.0 * se, "Var f = {}", v11 / nf);
        assert!(
            (v12 / nf - libm::pow(r, p as f64)).abs() < 2.0 * se,
            "Cov = {} want {}",
            v12 / nf,
            libm::pow(r, p as f64)
        );
        assert!((v1o / nf).abs() < 2.0 * se, "orthogonal Cov = {}", v1o / nf);
    }

    #[test]
    fn north_pole_covariances_match_conditioning_lemma() {
        // E[f^2] = 1, E[f_i f_j] = p delta_ij, E[f f_ij] = -p delta_ij,
        // E[f f_i] = 0, E[f_i f_jk] = 0, and
        // E[f_ij f_kl] = p(p-1)(d_ik d_jl + d_il d_jk) + p^2 d_ij d_kl
        let p = 3u32;
        let n = 4usize;
        let dim = n - 1;
        let draws = 40_000;
        let mut m_ff = 0.0;
        let mut m_gg = vec![0.0; dim * dim];
        let mut m_fh = vec![0.0; dim * dim];
        let mut m_hhhh = vec![0.0; dim * dim * dim * dim];
        let mut m_fg = vec![0.0; dim];
        let mut m_gh = 0.0;
        for i in 0..draws {
            let inst = LandscapeInstance::sample(p, n, 55, i).unwrap();
            let (f, g, h) = north_pole_derivatives(&inst);
            m_ff += f * f;
            for a in 0..dim {
                m_fg[a] += f * g[a];
                for b in 0..dim {
                    m_gg[a * dim + b] += g[a] * g[b];
                    m_fh[a * dim + b] += f * h[a * dim + b];
                    for c in 0..dim {
                        for d in 0..dim {
                            m_hhhh[((a * dim + b) * dim + c) * dim + d] +=
                                h[a * dim + b] * h[c * dim + d];
                        }
                    }
                }
            }
            m_gh += g[0] * h[dim + 2.min(dim - 1)];
        }
        let nf = draws as f64;
        let pf = f64::from(p);
        let tol = 4.0 * pf / libm::sqrt(nf) * 3.0;
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        assert!((m_ff / nf - 1.0).abs() < tol);
        for a in 0..dim {
            for b in 0..dim {
                assert!((m_gg[a * dim + b] / nf - pf * d(a, b)).abs() < tol);
                assert!((m_fh[a * dim + b] / nf + pf * d(a, b)).abs() < tol);
                for c in 0..dim {
                    for e in 0..dim {
                        let want =
                            pf * (pf - 1.0) * (d(a, c) * d(b, e) + d(a, e) * d(b, c))
                                + pf * pf * d(a, b) * d(c, e);
                        let got = m_hhhh[((a * dim + b) * dim + c) * dim + e] / nf;
                        assert!(
                            (got - want).abs() < 3.0 * tol,
                            "E[f_{a}{b} f_{c}{e}] = {got}, want {want}"
                        );
                    }
                }
            }
            assert!((m_fg[a] / nf).abs() < tol);
        }
        assert!((m_gh / nf).abs() < tol);
    }

    #[test]
    fn riemannian_gradient_validates_sphere() {
        let inst = LandscapeInstance::sample(3, 3, 21, 0).unwrap();
        assert!(matches!(
            riemannian_grad_hess(&inst, &[1.0, 0.0, 0.1]),
            Err(LandscapeError::OffSphere { .. })
        ));
        let sigma = unit(&[1.0, 1.0, 1.0]);
        let (g, h) = riemannian_grad_hess(&inst, &sigma).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(h.len(), 4);
        assert!((h[1] - h[2]).abs() < 1e-12, "Hessian symmetric");
    }

    #[test]
    fn p2_enumeration_finds_eigenvector_pairs() {
        for idx in 0..3 {
            let inst = LandscapeInstance::sample(2, 3, 31, idx).unwrap();
            let report = enumerate_critical_points(&inst, &EnumerationOptions::default()).unwrap();
            assert!(report.morse_ok);
            assert_eq!(report.points.len(), 6, "2N critical points");
            assert_eq!(report.counts_by_index, vec![2, 2, 2]);
            // critical values are the eigenvalues of the symmetrized matrix
            let m = inst.symmetrized_matrix().unwrap();
            let eig = linalg::sym_eigenvalues(&m, 3).unwrap();
            let gs = ground_state_of_instance(&report).unwrap();
            assert!(
                (gs - eig[0] / libm::sqrt(3.0)).abs() < 1e-8,
                "ground state {gs} vs {}",
                eig[0] / libm::sqrt(3.0)
            );
            // every reported energy is ranked above the ground state
            for pt in &report.points {
                assert!(pt.normalized_energy >= gs - 1e-12);
                assert!(pt.residual < 1e-9);
            }
        }
    }

    #[test]
    fn p3_enumeration_morse_certificate_and_symmetry() {
        let inst = LandscapeInstance::sample(3, 3, 77, 4).unwrap();
        let report = enumerate_critical_points(&inst, &EnumerationOptions::default()).unwrap();
        assert!(report.morse_ok, "counts {:?}", report.counts_by_index);
        assert_eq!(report.morse_sum(), 2, "chi(S^2)");
        // odd p: count_k(B) = count_{N-1-k}(-B); over all energies this is
        // count_k = count_{N-1-k}
        assert_eq!(report.counts_by_index[0], report.counts_by_index[2]);
        // antipodal pairing of ground state and maximum
        let us: Vec<f64> = report.points.iter().map(|pt| pt.normalized_energy).collect();
        let min = us.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = us.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((min + max).abs() < 1e-9);
    }

    #[test]
    fn deduplication_and_reverification() {
        let inst = LandscapeInstance::sample(3, 3, 13, 0).unwrap();
        let opts = EnumerationOptions::default();
        let report = enumerate_critical_points(&inst, &opts).unwrap();
        for (i, a) in report.points.iter().enumerate() {
            for b in report.points.iter().skip(i + 1) {
                assert!(geodesic_distance(&a.position, &b.position) > opts.dedup_radius);
            }
            // independent re-polish stays put
            let polished = newton_from(&inst, &a.position, &opts).unwrap();
            assert!(geodesic_distance(&polished, &a.position) < 1e-10);
        }
    }

    #[test]
    fn index_invariant_under_frame_rotation() {
        // recompute each spectrum in a randomly rotated tangent frame
        use rand::Rng;
        let inst = LandscapeInstance::sample(3, 4, 41, 0).unwrap();
        let report = enumerate_critical_points(&inst, &EnumerationOptions::default()).unwrap();
        let mut r = rng::stream(999, 0, 0);
        for pt in report.points.iter().take(4) {
            let n = 4;
            let eval = inst.evaluate(&pt.position);
            let mut frame = tangent_frame(&pt.position);
            // random rotation in the tangent plane: mix frame vectors
            for _ in 0..3 {
                let i = (r.gen::<u64>() % 3) as usize;
                let j = ((r.gen::<u64>() % 2) as usize + i + 1) % 3;
                let angle: f64 = r.gen::<f64>() * 2.0 * core::f64::consts::PI;
                let (c, s) = (libm::cos(angle), libm::sin(angle));
                for t in 0..n {
                    let (a, b) = (frame[i][t], frame[j][t]);
                    frame[i][t] = c * a + s * b;
                    frame[j][t] = -s * a + c * b;
                }
            }
            let (_, hess) = project_to_frame(&eval, &pt.position, &frame, n);
            let spec = linalg::sym_eigenvalues(&hess, 3).unwrap();
            for (a, b) in spec.iter().zip(&pt.hessian_spectrum) {
                assert!((a - b).abs() < 1e-8, "spectrum under rotated frame");
            }
        }
    }

    #[test]
    fn empirical_statistics_p2_deterministic_count() {
        let stats = empirical_crt_statistics(
            2,
            3,
            None,
            &IntervalUnion::all(),
            40,
            3,
            &EnumerationOptions::default(),
        )
        .unwrap();
        assert_eq!(stats.mean, 6.0);
        assert_eq!(stats.std_error, 0.0);
        assert_eq!(stats.n_rejected, 0);
    }

    #[test]
    fn conditional_hessian_matches_goe_shift_construction() {
        // Lemma-3.2(b) check at reduced scale: the conditional Hessian given
        // f = x, sampled entrywise, matches sqrt(2(N-1)p(p-1)) M^{N-1} - xp I
        // in distribution; compare pooled spectra bin by bin (per-draw
        // clustered SEs, 4 sigma with a Bonferroni-style margin).
        let (p, n) = (3u32, 6usize);
        let dim = n - 1;
        let x = -1.5;
        let pf = f64::from(p);
        let draws = 4000;
        let bins = 12;
        let (lo, hi) = (-20.0, 20.0);
        let mut h_a = vec![0.0f64; bins];
        let mut h_a2 = vec![0.0f64; bins];
        let mut h_b = vec![0.0f64; bins];
        let mut h_b2 = vec![0.0f64; bins];
        let scale = libm::sqrt(2.0 * (dim as f64) * pf * (pf - 1.0));
        for i in 0..draws {
            // side A: direct conditional sampling of the Hessian entries
            let mut r = rng::stream(404, tag::CONDITIONAL, i);
            let mut m = vec![0.0; dim * dim];
            for a in 0..dim {
                for b in 0..=a {
                    let sd = if a == b {
                        libm::sqrt(2.0 * pf * (pf - 1.0))
                    } else {
                        libm::sqrt(pf * (pf - 1.0))
                    };
                    let v = sd * rng::standard_normal(&mut r) - if a == b { x * pf } else { 0.0 };
                    m[a * dim + b] = v;
                    m[b * dim + a] = v;
                }
            }
            let eig_a = linalg::sym_eigenvalues(&m, dim).unwrap();
            // side B: GOE sample, scaled and shifted
            let goe = goe::sample_goe(dim, goe::SIGMA_MAIN, 405, i).unwrap();
            let mut counts_a = vec![0.0; bins];
            let mut counts_b = vec![0.0; bins];
            for l in eig_a {
                let b = (((l - lo) / (hi - lo)) * bins as f64) as usize;
                counts_a[b.min(bins - 1)] += 1.0;
            }
            for l in goe.eigenvalues {
                let shifted = scale * l - x * pf;
                let b = (((shifted - lo) / (hi - lo)) * bins as f64) as usize;
                counts_b[b.min(bins - 1)] += 1.0;
            }
            for b in 0..bins {
                h_a[b] += counts_a[b];
                h_a2[b] += counts_a[b] * counts_a[b];
                h_b[b] += counts_b[b];
                h_b2[b] += counts_b[b] * counts_b[b];
            }
        }
        let nf = draws as f64;
        for b in 0..bins {
            let mean_a = h_a[b] / nf;
            let mean_b = h_b[b] / nf;
            let var_a = h_a2[b] / nf - mean_a * mean_a;
            let var_b = h_b2[b] / nf - mean_b * mean_b;
            let se = libm::sqrt((var_a + var_b) / nf).max(1e-9);
            assert!(
                libm::fabs(mean_a - mean_b) < 4.5 * se,
                "bin {b}: {mean_a} vs {mean_b} (se {se})"
            );
        }
    }
}
