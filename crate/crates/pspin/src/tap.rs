//! The TAP functional on the ball, its stationarity structure in the radial
//! overlap `q`, and the TAP complexity.
//!
//! In spherical coordinates the functional splits as
//! `f_tap(q, sigma) = 2^{-1/2} q^{p/2} h + B_{p,beta}(q)` with `h` the
//! normalized energy of the spherical configuration and `B` the Onsager
//! term, so everything radial reduces to scalar root-finding in `q`.

use core::fmt;

use crate::complexity::{self, ComplexityError};

#[derive(Debug, Clone, PartialEq)]
pub enum TapError {
    Domain(&'static str),
    Complexity(ComplexityError),
}

impl fmt::Display for TapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TapError::Domain(m) => write!(f, "domain error: {m}"),
            TapError::Complexity(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TapError {}

impl From<ComplexityError> for TapError {
    fn from(e: ComplexityError) -> Self {
        TapError::Complexity(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TapParams {
    pub p: u32,
    pub beta: f64,
}

impl TapParams {
    pub fn new(p: u32, beta: f64) -> Result<Self, TapError> {
        if p < 3 {
            return Err(TapError::Domain("TAP machinery needs p >= 3"));
        }
        if !(beta > 0.0) {
            return Err(TapError::Domain("TAP machinery needs beta > 0"));
        }
        Ok(TapParams { p, beta })
    }
}

fn check_params(p: u32, beta: f64) -> Result<(), TapError> {
    TapParams::new(p, beta).map(|_| ())
}

/// Onsager correction
/// `B(q) = -log(1-q)/(2 beta) - (beta/4)(1 + (p-1) q^p - p q^{p-1})`.
pub fn onsager_b(p: u32, beta: f64, q: f64) -> Result<f64, TapError> {
    check_params(p, beta)?;
    if !(0.0..1.0).contains(&q) {
        return Err(TapError::Domain("onsager_b needs q in [0, 1)"));
    }
    let pf = f64::from(p);
    Ok(-libm::log(1.0 - q) / (2.0 * beta)
        - beta / 4.0 * (1.0 + (pf - 1.0) * libm::pow(q, pf) - pf * libm::pow(q, pf - 1.0)))
}

fn onsager_b_prime(p: u32, beta: f64, q: f64) -> f64 {
    let pf = f64::from(p);
    1.0 / (2.0 * beta * (1.0 - q)) + beta * pf * (pf - 1.0) / 4.0 * libm::pow(q, pf - 2.0) * (1.0 - q)
}

fn onsager_b_second(p: u32, beta: f64, q: f64) -> f64 {
    let pf = f64::from(p);
    1.0 / (2.0 * beta * (1.0 - q) * (1.0 - q))
        - beta * pf * (pf - 1.0) / 4.0
            * libm::pow(q, pf - 3.0)
            * ((pf - 1.0) * q - (pf - 2.0))
}

/// Radial derivative of the TAP functional at fixed spherical energy `h`:
/// `d/dq f_tap = 2^{-3/2} p q^{p/2-1} h + B'(q)`.
pub fn tap_q_derivative(p: u32, beta: f64, h: f64, q: f64) -> f64 {
    let pf = f64::from(p);
    libm::pow(2.0, -1.5) * pf * libm::pow(q, pf / 2.0 - 1.0) * h + onsager_b_prime(p, beta, q)
}

/// Second radial derivative of the TAP functional at fixed `h`.
pub fn tap_q_second_derivative(p: u32, beta: f64, h: f64, q: f64) -> f64 {
    let pf = f64::from(p);
    libm::pow(2.0, -0.5) * (pf / 2.0) * (pf / 2.0 - 1.0) * libm::pow(q, pf / 2.0 - 2.0) * h
        + onsager_b_second(p, beta, q)
}

/// Temperature scale `beta(u)` at which level `u` becomes reachable:
/// `p/(2^{3/2}(p-1)) (p/(p-2))^{(p-2)/2} (-u - sqrt(u^2 - E_inf^2))`.
pub fn beta_of_u(p: u32, u: f64) -> Result<f64, TapError> {
    if p < 3 {
        return Err(TapError::Domain("beta_of_u needs p >= 3"));
    }
    let e = complexity::e_infinity(p)?;
    if u > -e {
        return Err(TapError::Domain("beta_of_u needs u <= -E_inf(p)"));
    }
    let pf = f64::from(p);
    let root = libm::sqrt((u * u - e * e).max(0.0));
    Ok(pf / (libm::pow(2.0, 1.5) * (pf - 1.0))
        * libm::pow(pf / (pf - 2.0), (pf - 2.0) / 2.0)
        * (-u - root))
}

/// `u*(beta) = sup{v <= -E_inf : beta(v) < beta}`: the inverse of
/// [`beta_of_u`] capped at `-E_inf`.
pub fn u_star(p: u32, beta: f64) -> Result<f64, TapError> {
    check_params(p, beta)?;
    let e = complexity::e_infinity(p)?;
    let beta_edge = beta_of_u(p, -e)?;
    if beta >= beta_edge {
        return Ok(-e);
    }
    // beta(v) is increasing in v; bracket downward then bisect
    let mut hi = -e;
    let mut lo = -e - 1.0;
    while beta_of_u(p, lo)? >= beta {
        lo = -e + 2.0 * (lo + e);
        if lo < -1e12 {
            return Err(TapError::Domain("u_star bracket ran away"));
        }
    }
    while hi - lo > 1e-12 * libm::fabs(lo).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if beta_of_u(p, mid)? < beta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `z(q) = (1-q) q^{p/2-1}`, the radial stationarity variable.
pub fn z_of_q(p: u32, q: f64) -> f64 {
    (1.0 - q) * libm::pow(q, f64::from(p) / 2.0 - 1.0)
}

/// The peak value of `z(q)`, attained at `q = (p-2)/p`.
pub fn z_max(p: u32) -> f64 {
    let pf = f64::from(p);
    2.0 / pf * libm::pow((pf - 2.0) / pf, (pf - 2.0) / 2.0)
}

/// Radial stationary points of the TAP functional at energy `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TapRoots {
    /// No radial stationary point (`h > u*(beta)` or complex branch values).
    None,
    /// Threshold case: a double root at `q = (p-2)/p`.
    Double { q: f64, z: f64 },
    /// The generic case: two roots straddling `(p-2)/p` at a common z-level.
    Pair { q1: f64, q2: f64, z: f64 },
}

/// Solves the radial stationarity conditions.
///
/// The stationarity equation is a quadratic in `beta z` with roots
/// `(-h +- sqrt(h^2 - E_inf^2)) / (sqrt(2)(p-1))`; the branch tied to
/// `beta(u)` is the minus root, and inverting `z(q)` on each monotone side
/// of its peak gives the `q` pair.
pub fn solve_q(p: u32, beta: f64, h: f64) -> Result<TapRoots, TapError> {
    check_params(p, beta)?;
    let e = complexity::e_infinity(p)?;
    if h > -e {
        return Ok(TapRoots::None);
    }
    let pf = f64::from(p);
    let w_minus = (-h - libm::sqrt((h * h - e * e).max(0.0))) / (core::f64::consts::SQRT_2 * (pf - 1.0));
    let z_level = w_minus / beta;
    let zm = z_max(p);
    let q_peak = (pf - 2.0) / pf;
    if z_level > zm * (1.0 + 1e-13) {
        return Ok(TapRoots::None);
    }
    if z_level >= zm * (1.0 - 1e-13) {
        return Ok(TapRoots::Double { q: q_peak, z: zm });
    }
    let q1 = bisect_z(p, z_level, 0.0, q_peak, true);
    let q2 = bisect_z(p, z_level, q_peak, 1.0, false);
    Ok(TapRoots::Pair { q1, q2, z: z_level })
}

/// Bisection for `z(q) = level` on a monotone side of the peak.
fn bisect_z(p: u32, level: f64, mut lo: f64, mut hi: f64, increasing: bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let above = z_of_q(p, mid) > level;
        if above == increasing {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Sign of the radial curvature `d^2/dq^2 f_tap` at a stationary `(q, h)`.
///
/// Evaluated through the factored form
/// `-p * [p(p-1) / (8 q beta (1-q)^2)] (q - (p-2)/p)(beta^2 z^2 - 2/(p(p-1)))`,
/// which matches the direct second derivative on the stationarity manifold
/// (the two z-branch factors carry the sign; the leading factor is positive).
/// Returns 0 exactly at the double root.
pub fn q_curvature_sign(p: u32, beta: f64, h: f64, q: f64) -> Result<i8, TapError> {
    check_params(p, beta)?;
    if !(0.0 < q && q < 1.0) {
        return Err(TapError::Domain("q_curvature_sign needs q in (0, 1)"));
    }
    let resid = libm::fabs(tap_q_derivative(p, beta, h, q));
    if resid > 1e-6 {
        return Err(TapError::Domain("q_curvature_sign needs a stationary (q, h) pair"));
    }
    let pf = f64::from(p);
    let z = z_of_q(p, q);
    let factor_a = q - (pf - 2.0) / pf;
    let factor_b = beta * beta * z * z - 2.0 / (pf * (pf - 1.0));
    let product = -factor_a * factor_b;
    Ok(if libm::fabs(factor_a) < 1e-12 || libm::fabs(factor_b) < 1e-12 {
        0
    } else if product > 0.0 {
        1
    } else {
        -1
    })
}

/// TAP complexity (Theorem-6.1 shape) plus the vanishing-count predicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TapComplexity {
    /// `Theta_{(k-1) v 0, p}(u*(beta) ^ u)`.
    pub value: f64,
    /// True in the regime where the count vanishes in probability
    /// (`beta < beta(-E_{(k-1) v 0})` or `u < -E_{(k-1) v 0}`).
    pub vanishing_regime: bool,
}

pub fn tap_complexity(p: u32, k: u32, u: f64, beta: f64) -> Result<TapComplexity, TapError> {
    check_params(p, beta)?;
    let e = complexity::e_infinity(p)?;
    if u > -e {
        return Err(TapError::Domain("tap_complexity needs u <= -E_inf(p)"));
    }
    let ustar = u_star(p, beta)?;
    let cap = if ustar < u { ustar } else { u };
    let index = k.saturating_sub(1);
    let value = complexity::theta_index(p, index, cap)?;
    let e_layer = complexity::threshold_ek(p, index)?;
    let vanishing = beta < beta_of_u(p, -e_layer)? || u < -e_layer;
    Ok(TapComplexity { value, vanishing_regime: vanishing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{e_infinity, theta_index, threshold_ek};
    use crate::rng;

    #[test]
    fn onsager_values() {
        for p in [3u32, 5] {
            for &beta in &[0.5, 2.0] {
                assert!((onsager_b(p, beta, 0.0).unwrap() + beta / 4.0).abs() < 1e-15);
                // divergence toward q = 1
                assert!(onsager_b(p, beta, 0.999999).unwrap() > 1.0 / beta);
                // B'(0) = 1/(2 beta) for p >= 3
                let h = 1e-7;
                let fd = (onsager_b(p, beta, h).unwrap() - onsager_b(p, beta, 0.0).unwrap()) / h;
                assert!((fd - 1.0 / (2.0 * beta)).abs() < 1e-5);
                assert!((onsager_b_prime(p, beta, 0.0) - 1.0 / (2.0 * beta)).abs() < 1e-15);
            }
        }
        assert!(onsager_b(3, 1.0, 1.0).is_err());
    }

    #[test]
    fn onsager_derivatives_match_finite_differences() {
        let (p, beta) = (5u32, 1.3);
        for &q in &[0.11, 0.4, 0.83] {
            let b = |q| onsager_b(p, beta, q).unwrap();
            let h1 = 1e-6;
            let fd1 = (b(q + h1) - b(q - h1)) / (2.0 * h1);
            assert!((fd1 - onsager_b_prime(p, beta, q)).abs() < 1e-7);
            // wider step for the second difference: roundoff goes as eps/h^2
            let h2 = 1e-4;
            let fd2 = (b(q + h2) - 2.0 * b(q) + b(q - h2)) / (h2 * h2);
            assert!((fd2 - onsager_b_second(p, beta, q)).abs() < 1e-4);
        }
    }

    #[test]
    fn beta_at_edge_is_three_halves_for_p3() {
        let e = e_infinity(3).unwrap();
        assert!((beta_of_u(3, -e).unwrap() - 1.5).abs() < 1e-12);
        // increasing in u, vanishing toward -infinity
        let mut prev = 0.0;
        for i in (1..60).rev() {
            let u = -e - 0.2 * i as f64;
            let b = beta_of_u(3, u).unwrap();
            assert!(b > prev);
            prev = b;
        }
        assert!(beta_of_u(3, -1000.0).unwrap() < 2e-3);
        assert!(beta_of_u(3, 0.0).is_err());
    }

    #[test]
    fn u_star_cap_and_round_trip() {
        let e = e_infinity(3).unwrap();
        // beta = 2 > beta(-E_inf) = 3/2: the sup is the endpoint
        assert_eq!(u_star(3, 2.0).unwrap(), -e);
        for p in [3u32, 4, 7] {
            let beta_edge = beta_of_u(p, -e_infinity(p).unwrap()).unwrap();
            let mut prev = f64::NEG_INFINITY;
            for &frac in &[0.15, 0.4, 0.7, 0.95] {
                let beta = frac * beta_edge;
                let v = u_star(p, beta).unwrap();
                let back = beta_of_u(p, v).unwrap();
                assert!((back - beta).abs() < 1e-10 * beta.max(1.0), "p={p} beta={beta}");
                assert!(v >= prev, "u_star non-decreasing in beta");
                prev = v;
            }
        }
    }

    #[test]
    fn solve_q_trichotomy() {
        let p = 3;
        let e = e_infinity(p).unwrap();
        // h above the edge: empty
        assert_eq!(solve_q(p, 1.0, -1.0).unwrap(), TapRoots::None);
        // h below u*(beta): a straddling pair at one z-level
        let beta = 2.0;
        let h = -1.9;
        assert!(h < u_star(p, beta).unwrap());
        match solve_q(p, beta, h).unwrap() {
            TapRoots::Pair { q1, q2, z } => {
                let q_peak = (f64::from(p) - 2.0) / f64::from(p);
                assert!(0.0 < q1 && q1 < q_peak && q_peak < q2 && q2 < 1.0);
                assert!((z_of_q(p, q1) - z_of_q(p, q2)).abs() < 1e-10);
                assert!((z_of_q(p, q1) - z).abs() < 1e-12);
                // stationarity residual of the defining equation
                for q in [q1, q2] {
                    assert!(
                        libm::fabs(tap_q_derivative(p, beta, h, q)) < 1e-9,
                        "residual at q={q}"
                    );
                }
            }
            other => panic!("expected a pair, got {other:?}"),
        }
        // h between u*(beta) and -E_inf at small beta: no roots
        let beta_small = 0.3;
        let h2 = -e - 1e-3;
        assert!(h2 > u_star(p, beta_small).unwrap());
        assert_eq!(solve_q(p, beta_small, h2).unwrap(), TapRoots::None);
    }

    #[test]
    fn threshold_double_root() {
        // pick h, then beta so that w_minus/beta lands exactly on z_max
        let p = 4;
        let e = e_infinity(p).unwrap();
        let h = -e - 0.4;
        let pf = f64::from(p);
        let w_minus =
            (-h - libm::sqrt(h * h - e * e)) / (core::f64::consts::SQRT_2 * (pf - 1.0));
        let beta = w_minus / z_max(p);
        match solve_q(p, beta, h).unwrap() {
            TapRoots::Double { q, .. } => {
                assert!((q - (pf - 2.0) / pf).abs() < 1e-12);
                assert_eq!(q_curvature_sign(p, beta, h, q).unwrap(), 0);
            }
            other => panic!("expected double root, got {other:?}"),
        }
    }

    #[test]
    fn vieta_product_of_branch_values() {
        // the two beta*z roots of the stationarity quadratic multiply to 2/(p(p-1))
        for p in [3u32, 4, 5] {
            let pf = f64::from(p);
            let e = e_infinity(p).unwrap();
            for &h in &[-e - 0.05, -e - 0.7, -3.0] {
                let s = libm::sqrt(h * h - e * e);
                let w_minus = (-h - s) / (core::f64::consts::SQRT_2 * (pf - 1.0));
                let w_plus = (-h + s) / (core::f64::consts::SQRT_2 * (pf - 1.0));
                assert!(
                    (w_minus * w_plus - 2.0 / (pf * (pf - 1.0))).abs() < 1e-10,
                    "p={p} h={h}"
                );
            }
        }
    }

    #[test]
    fn curvature_signs_oppose_and_match_finite_differences() {
        use rand::Rng;
        let mut r = rng::stream(2024, 77, 0);
        let mut checked = 0;
        while checked < 1000 {
            let p = 3 + (r.gen::<u32>() % 3);
            let e = e_infinity(p).unwrap();
            let beta: f64 = 0.2 + 3.0 * r.gen::<f64>();
            let h = -e - 2.5 * r.gen::<f64>() - 1e-3;
            if let TapRoots::Pair { q1, q2, .. } = solve_q(p, beta, h).unwrap() {
                let s1 = q_curvature_sign(p, beta, h, q1).unwrap();
                let s2 = q_curvature_sign(p, beta, h, q2).unwrap();
                assert_eq!(s1 * s2, -1, "signs must oppose (p={p} beta={beta} h={h})");
                // finite-difference oracle on f_tap(q) = 2^{-1/2} q^{p/2} h + B(q)
                for (q, s) in [(q1, s1), (q2, s2)] {
                    let f = |q: f64| {
                        libm::pow(2.0, -0.5) * libm::pow(q, f64::from(p) / 2.0) * h
                            + onsager_b(p, beta, q).unwrap()
                    };
                    let hstep = 1e-5;
                    let fd = (f(q + hstep) - 2.0 * f(q) + f(q - hstep)) / (hstep * hstep);
                    assert_eq!(
                        fd > 0.0,
                        s > 0,
                        "FD curvature {fd} vs sign {s} at q={q} (p={p} beta={beta} h={h})"
                    );
                    // corrected factorization equals the direct second derivative
                    let direct = tap_q_second_derivative(p, beta, h, q);
                    let pf = f64::from(p);
                    let z = z_of_q(p, q);
                    let factored = -pf
                        * (pf * (pf - 1.0) / (8.0 * q * beta * (1.0 - q) * (1.0 - q)))
                        * (q - (pf - 2.0) / pf)
                        * (beta * beta * z * z - 2.0 / (pf * (pf - 1.0)));
                    assert!(
                        (direct - factored).abs() < 1e-8 * direct.abs().max(1e-8),
                        "factored {factored} vs direct {direct}"
                    );
                }
                checked += 1;
            }
        }
    }

    #[test]
    fn tap_complexity_regimes() {
        let p = 3;
        let e = e_infinity(p).unwrap();
        // large beta caps at u itself: theta_0p(u)
        for &u in &[-e - 0.001, -1.64, -1.65] {
            let tc = tap_complexity(p, 0, u, 50.0).unwrap();
            assert!((tc.value - theta_index(p, 0, u).unwrap()).abs() < 1e-9);
        }
        // k = 1 reproduces the k = 0 curve (index shift)
        let tc0 = tap_complexity(p, 0, -1.65, 2.0).unwrap();
        let tc1 = tap_complexity(p, 1, -1.65, 2.0).unwrap();
        assert_eq!(tc0.value, tc1.value);
        // vanishing predicate below -E_0
        let e0 = threshold_ek(p, 0).unwrap();
        assert!(tap_complexity(p, 0, -e0 - 0.01, 2.0).unwrap().vanishing_regime);
        assert!(tap_complexity(p, 0, -e, 1.0).is_ok());
        assert!(tap_complexity(p, 0, -1.0, 2.0).is_err());
        // non-decreasing in u and beta
        let mut prev = f64::NEG_INFINITY;
        for i in 0..40 {
            let u = -2.5 + 0.02 * i as f64;
            let v = tap_complexity(p, 0, u, 1.2).unwrap().value;
            assert!(v >= prev - 1e-13);
            prev = v;
        }
        let mut prev = f64::NEG_INFINITY;
        for i in 1..40 {
            let v = tap_complexity(p, 0, -1.8, 0.1 * i as f64).unwrap().value;
            assert!(v >= prev - 1e-13);
            prev = v;
        }
    }
}
