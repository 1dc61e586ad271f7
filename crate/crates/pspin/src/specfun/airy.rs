//! Airy function of the first kind and its derivative.
//!
//! Maclaurin series on `|x| <= 1.5`; outside, the standard exponential or
//! trigonometric asymptotic forms with Chebyshev-fitted correction factors
//! (tables in `airy_tables.rs`). Accuracy is ~1e-13 relative on the positive
//! axis and ~1e-12 relative to the oscillation envelope on the negative axis.

use super::airy_tables::{NEG_A, NEG_B, NEG_C, NEG_D, RAI, RAIP, SMAX, SWITCH_X};

const AI_0: f64 = 0.355_028_053_887_817_2;
const AI_PRIME_0: f64 = -0.258_819_403_792_806_8;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Clenshaw evaluation of a Chebyshev series at `s` in `[0, SMAX]`.
fn cheb(coef: &[f64], s: f64) -> f64 {
    let t = 2.0 * s / SMAX - 1.0;
    let t2 = 2.0 * t;
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coef.iter().rev() {
        let b0 = c + t2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1 - t * b2
}

/// Maclaurin series of the two solutions of y'' = x y: `f` (f(0)=1, f'(0)=0)
/// and `g` (g(0)=0, g'(0)=1), plus derivatives.
fn maclaurin(x: f64) -> (f64, f64, f64, f64) {
    let x3 = x * x * x;
    let (mut f_term, mut g_term) = (1.0, x);
    let (mut fp_term, mut gp_term) = (0.5 * x * x, 1.0);
    let (mut f, mut g, mut fp, mut gp) = (f_term, g_term, 0.0, gp_term);
    for k in 1..40 {
        let kf = k as f64;
        let k3 = 3.0 * kf;
        f_term *= x3 / (k3 * (k3 - 1.0));
        g_term *= x3 / (k3 * (k3 + 1.0));
        gp_term *= x3 / (k3 * (k3 - 2.0));
        if k > 1 {
            fp_term *= x3 / (3.0 * (kf - 1.0) * (k3 - 1.0));
        }
        f += f_term;
        g += g_term;
        fp += fp_term;
        gp += gp_term;
        if f_term.abs() <= 1e-18 * f.abs() && g_term.abs() <= 1e-18 * g.abs().max(1e-30) {
            break;
        }
    }
    (f, g, fp, gp)
}

/// Ai(x).
pub fn airy_ai(x: f64) -> f64 {
    if libm::fabs(x) <= SWITCH_X {
        let (f, g, _, _) = maclaurin(x);
        AI_0 * f + AI_PRIME_0 * g
    } else if x > 0.0 {
        let zeta = 2.0 / 3.0 * x * libm::sqrt(x);
        libm::exp(-zeta) / (2.0 * SQRT_PI * libm::sqrt(libm::sqrt(x))) * cheb(&RAI, 1.0 / zeta)
    } else {
        let y = -x;
        let xi = 2.0 / 3.0 * y * libm::sqrt(y);
        let theta = xi + core::f64::consts::FRAC_PI_4;
        let s = 1.0 / xi;
        (libm::sin(theta) * cheb(&NEG_A, s) - libm::cos(theta) * cheb(&NEG_B, s))
            / (SQRT_PI * libm::sqrt(libm::sqrt(y)))
    }
}

/// Ai'(x).
pub fn airy_ai_prime(x: f64) -> f64 {
    if libm::fabs(x) <= SWITCH_X {
        let (_, _, fp, gp) = maclaurin(x);
        AI_0 * fp + AI_PRIME_0 * gp
    } else if x > 0.0 {
        let zeta = 2.0 / 3.0 * x * libm::sqrt(x);
        -libm::sqrt(libm::sqrt(x)) * libm::exp(-zeta) / (2.0 * SQRT_PI) * cheb(&RAIP, 1.0 / zeta)
    } else {
        let y = -x;
        let xi = 2.0 / 3.0 * y * libm::sqrt(y);
        let theta = xi + core::f64::consts::FRAC_PI_4;
        let s = 1.0 / xi;
        -(libm::cos(theta) * cheb(&NEG_C, s) + libm::sin(theta) * cheb(&NEG_D, s))
            * libm::sqrt(libm::sqrt(y))
            / SQRT_PI
    }
}
