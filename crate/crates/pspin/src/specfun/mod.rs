//! GOE one-point density via Hermite functions, Airy functions, and the
//! exact finite-N evaluation of the mean critical-point count.

mod airy;
mod airy_tables;
mod hermite;

pub use airy::{airy_ai, airy_ai_prime};
pub use hermite::{hermite_phi, hermite_phi_f64};

use alloc::vec::Vec;
use core::fmt;

use crate::interval::IntervalUnion;
use crate::logspace::LogScaledReal;
use crate::quad::{self, QuadError};

const SQRT_2: f64 = core::f64::consts::SQRT_2;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecFunError {
    Domain(&'static str),
    Quadrature(QuadError),
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFunError::Domain(msg) => write!(f, "domain error: {msg}"),
            SpecFunError::Quadrature(e) => write!(f, "quadrature error: {e}"),
        }
    }
}

impl core::error::Error for SpecFunError {}

impl From<QuadError> for SpecFunError {
    fn from(e: QuadError) -> Self {
        SpecFunError::Quadrature(e)
    }
}

const REL_TOL: f64 = 1e-9;
const MAX_PANELS: usize = 60_000;

/// `J_N(x) = int eps(sqrt(N) x - t) phi_N(t) dt`, reduced by parity:
/// even `N`: `sign(x) sqrt(N) int_0^{|x|} phi_N(s sqrt(N)) ds` (odd in `x`);
/// odd `N`: `-sqrt(N) int_{|x|}^inf phi_N(s sqrt(N)) ds` (even in `x`).
pub fn j_integral_log(n: usize, x: f64) -> Result<LogScaledReal, SpecFunError> {
    assert!(n >= 1, "j_integral needs N >= 1");
    let sqrt_n = libm::sqrt(n as f64);
    let integrand = move |s: f64| hermite_phi(n, s * sqrt_n);
    if n % 2 == 0 {
        if x == 0.0 {
            return Ok(LogScaledReal::ZERO);
        }
        let (v, _) = quad::integrate_log(integrand, 0.0, libm::fabs(x), REL_TOL, MAX_PANELS)?;
        let signed = if x > 0.0 { v } else { -v };
        Ok(signed.scale_exp(libm::log(sqrt_n)))
    } else {
        let (v, _) = quad::integrate_log_tail(integrand, libm::fabs(x), 1.0, REL_TOL, MAX_PANELS)?;
        Ok((-v).scale_exp(libm::log(sqrt_n)))
    }
}

/// `J_N(x)` as a plain double.
pub fn j_integral(n: usize, x: f64) -> Result<f64, SpecFunError> {
    Ok(j_integral_log(n, x)?.to_f64())
}

/// Evaluator for the normalized GOE one-point density `rho_N`.
///
/// Holds the pieces that do not depend on the evaluation point (for odd `N`,
/// the normalization `int phi_{N-1}` of the correction term), so sweeping a
/// grid or driving an outer quadrature pays the setup once.
pub struct RhoN {
    n: usize,
    sqrt_n: f64,
    /// `1 / int phi_{N-1}(t) dt` for odd `N`.
    alpha_norm: Option<LogScaledReal>,
}

impl RhoN {
    pub fn new(n: usize) -> Result<Self, SpecFunError> {
        assert!(n >= 1, "rho_N needs N >= 1");
        let alpha_norm = if n % 2 == 1 {
            let (half, _) = quad::integrate_log_tail(
                move |t| hermite_phi(n - 1, t),
                0.0,
                1.0,
                REL_TOL,
                MAX_PANELS,
            )?;
            let total = half.scale_exp(core::f64::consts::LN_2); // even integrand
            Some(total.recip())
        } else {
            None
        };
        Ok(RhoN {
            n,
            sqrt_n: libm::sqrt(n as f64),
            alpha_norm,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `rho_N(x)`, log-scaled, via Christoffel-Darboux plus the J-term and
    /// (for odd N) the projector correction.
    pub fn eval_log(&self, x: f64) -> Result<LogScaledReal, SpecFunError> {
        let n = self.n;
        let nf = n as f64;
        let arg = self.sqrt_n * x;
        let phi_n = hermite_phi(n, arg);
        let phi_nm1 = hermite_phi(n - 1, arg);
        let phi_np1 = hermite_phi(n + 1, arg);
        let cd = LogScaledReal::from_f64(nf) * phi_n * phi_n
            - LogScaledReal::from_f64(libm::sqrt(nf * (nf + 1.0))) * phi_nm1 * phi_np1;
        let jn = j_integral_log(n, x)?;
        let jterm = LogScaledReal::from_f64(libm::sqrt(nf / 2.0)) * phi_nm1 * jn;
        let alpha = match &self.alpha_norm {
            Some(norm) => hermite_phi(n - 1, arg) * *norm,
            None => LogScaledReal::ZERO,
        };
        Ok((cd + jterm + alpha).scale_exp(-libm::log(self.sqrt_n)))
    }

    pub fn eval(&self, x: f64) -> Result<f64, SpecFunError> {
        Ok(self.eval_log(x)?.to_f64())
    }

    /// Density values on a sorted grid.
    ///
    /// The `J_N` piece is accumulated incrementally between consecutive grid
    /// points, so an `m`-point sweep costs `O(m)` panel integrals instead of
    /// `O(m)` full integrals from the parity anchor.
    pub fn curve(&self, grid: &[f64]) -> Result<Vec<(f64, f64)>, SpecFunError> {
        debug_assert!(grid.windows(2).all(|w| w[0] <= w[1]), "grid must be sorted");
        let n = self.n;
        let nf = n as f64;
        let sq = self.sqrt_n;
        let integrand = move |s: f64| hermite_phi(n, s * sq);
        let mut out = Vec::with_capacity(grid.len());
        let mut j_prev: Option<(f64, LogScaledReal)> = None;
        for &x in grid {
            let jn = match j_prev {
                None => j_integral_log(n, x)?,
                Some((x0, j0)) => {
                    let (inc, _) = quad::integrate_log(integrand, x0, x, REL_TOL, MAX_PANELS)?;
                    // d/dx J_N(x) = sqrt(N) phi_N(x sqrt(N)) for both parities
                    j0 + inc.scale_exp(libm::log(sq))
                }
            };
            j_prev = Some((x, jn));
            let arg = sq * x;
            let phi_n = hermite_phi(n, arg);
            let phi_nm1 = hermite_phi(n - 1, arg);
            let phi_np1 = hermite_phi(n + 1, arg);
            let cd = LogScaledReal::from_f64(nf) * phi_n * phi_n
                - LogScaledReal::from_f64(libm::sqrt(nf * (nf + 1.0))) * phi_nm1 * phi_np1;
            let jterm = LogScaledReal::from_f64(libm::sqrt(nf / 2.0)) * phi_nm1 * jn;
            let alpha = match &self.alpha_norm {
                Some(norm) => phi_nm1 * *norm,
                None => LogScaledReal::ZERO,
            };
            out.push((x, (cd + jterm + alpha).scale_exp(-libm::log(sq)).to_f64()));
        }
        Ok(out)
    }
}

/// `rho_N(x)` as a plain double (one-shot; see [`RhoN`] for sweeps).
pub fn rho_n(n: usize, x: f64) -> Result<f64, SpecFunError> {
    RhoN::new(n)?.eval(x)
}

/// Edge rate integral `Ibar(x) = int_sqrt2^x sqrt(y^2 - 2) dy` in closed form.
///
/// The discriminant is kept factored as `(x - sqrt2)(x + sqrt2)` so the value
/// vanishes exactly at the edge.
pub fn ibar(x: f64) -> f64 {
    debug_assert!(x >= SQRT_2);
    let s = libm::sqrt(((x - SQRT_2) * (x + SQRT_2)).max(0.0));
    0.5 * x * s - libm::log((x + s) / SQRT_2)
}

/// `psi(x) = sqrt(|x^2 - 2|)`, the derivative of `Ibar` past the edge.
pub fn psi_edge(x: f64) -> f64 {
    libm::sqrt(libm::fabs((x - SQRT_2) * (x + SQRT_2)))
}

/// `h(x) = |(x-sqrt2)/(x+sqrt2)|^{1/4} + |(x+sqrt2)/(x-sqrt2)|^{1/4}`.
pub fn h_edge(x: f64) -> f64 {
    let r = libm::fabs((x - SQRT_2) / (x + SQRT_2));
    let q = libm::sqrt(libm::sqrt(r));
    q + 1.0 / q
}

/// Plancherel-Rotach approximation of `phi_N(sqrt(N) x)` beyond the edge:
/// `e^{-N Ibar(x)} h(x) / sqrt(4 pi sqrt(2N))`, valid for `x > sqrt2 + delta`.
pub fn pr_asymptotic(n: usize, x: f64) -> Result<f64, SpecFunError> {
    if x <= SQRT_2 + 0.05 {
        return Err(SpecFunError::Domain(
            "Plancherel-Rotach form requires x > sqrt(2) + 0.05",
        ));
    }
    let nf = n as f64;
    Ok(libm::exp(-nf * ibar(x)) * h_edge(x) / libm::sqrt(4.0 * core::f64::consts::PI * libm::sqrt(2.0 * nf)))
}

/// Exact mean total number of critical points with normalized energy in `B`:
/// `2N sqrt(2/p) (p-1)^{N/2} int_{s B} exp(-N (p-2) x^2 / (2p)) rho_N(x) dx`
/// with `s = sqrt(p/(2(p-1)))`, evaluated by adaptive quadrature in log scale.
pub fn exact_mean_total(
    p: u32,
    n: usize,
    b: &IntervalUnion,
) -> Result<LogScaledReal, SpecFunError> {
    assert!(p >= 2, "exact_mean_total needs p >= 2");
    assert!(n >= 1, "exact_mean_total needs N >= 1");
    let pf = f64::from(p);
    let nf = n as f64;
    let rho = RhoN::new(n)?;
    let scale = libm::sqrt(pf / (2.0 * (pf - 1.0)));
    let gauss_coef = nf * (pf - 2.0) / (2.0 * pf);
    let integrand = |x: f64| -> LogScaledReal {
        match rho.eval_log(x) {
            Ok(r) => r.scale_exp(-gauss_coef * x * x),
            Err(_) => LogScaledReal::ZERO,
        }
    };
    let mut total = LogScaledReal::ZERO;
    for part in b.scaled(scale).parts() {
        let seg = match (part.lo.is_infinite(), part.hi.is_infinite()) {
            (true, true) => {
                let (left, _) =
                    quad::integrate_log_tail(&integrand, 0.0, -1.0, REL_TOL, MAX_PANELS)?;
                let (right, _) =
                    quad::integrate_log_tail(&integrand, 0.0, 1.0, REL_TOL, MAX_PANELS)?;
                left + right
            }
            (true, false) => {
                let (v, _) =
                    quad::integrate_log_tail(&integrand, part.hi, -1.0, REL_TOL, MAX_PANELS)?;
                v
            }
            (false, true) => {
                let (v, _) =
                    quad::integrate_log_tail(&integrand, part.lo, 1.0, REL_TOL, MAX_PANELS)?;
                v
            }
            (false, false) => {
                let (v, _) =
                    quad::integrate_log(&integrand, part.lo, part.hi, REL_TOL, MAX_PANELS)?;
                v
            }
        };
        total = total + seg;
    }
    let prefactor = LogScaledReal::from_f64(2.0 * nf * libm::sqrt(2.0 / pf))
        .scale_exp(0.5 * nf * libm::log(pf - 1.0));
    Ok(prefactor * total)
}
