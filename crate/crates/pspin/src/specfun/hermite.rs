//! Orthonormal Hermite functions `phi_j(x) = (2^j j! sqrt(pi))^{-1/2} H_j(x) e^{-x^2/2}`.
//!
//! Values are produced by the three-term recurrence
//! `phi_{j+1} = x sqrt(2/(j+1)) phi_j - sqrt(j/(j+1)) phi_{j-1}`
//! carried on a rescaled pair with a running log offset, so `phi_N(sqrt(N) x)`
//! is available far beyond the range where `e^{-x^2/2}` underflows a double.

use crate::logspace::LogScaledReal;

const QUARTER_LOG_PI: f64 = 0.286_182_471_462_350_34; // ln(pi)/4

/// phi_j(x), log-scaled.
pub fn hermite_phi(j: usize, x: f64) -> LogScaledReal {
    // log of phi_0(x) = pi^{-1/4} e^{-x^2/2}; the recurrence runs on values
    // relative to this offset.
    let mut offset = -QUARTER_LOG_PI - 0.5 * x * x;
    let mut prev = 1.0; // scaled phi_0
    let mut cur = x * core::f64::consts::SQRT_2; // scaled phi_1
    if j == 0 {
        return LogScaledReal::from_f64(prev).scale_exp(offset);
    }
    for jj in 1..j {
        let jjf = jj as f64;
        let next = x * libm::sqrt(2.0 / (jjf + 1.0)) * cur - libm::sqrt(jjf / (jjf + 1.0)) * prev;
        prev = cur;
        cur = next;
        let m = libm::fabs(prev).max(libm::fabs(cur));
        if !(1e-120..=1e120).contains(&m) && m > 0.0 {
            let shift = libm::log(m);
            let scale = libm::exp(-shift);
            prev *= scale;
            cur *= scale;
            offset += shift;
        }
    }
    LogScaledReal::from_f64(cur).scale_exp(offset)
}

/// phi_j(x) as a plain double (0.0 on underflow).
pub fn hermite_phi_f64(j: usize, x: f64) -> f64 {
    hermite_phi(j, x).to_f64()
}
