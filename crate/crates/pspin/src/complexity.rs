//! Asymptotic complexity functions of the spherical p-spin model, the energy
//! thresholds `E_inf` and `E_k`, and three independent ground-state routes.
//!
//! All values here are O(1) reals; exponentially scaled quantities live in
//! the counting modules.

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum ComplexityError {
    Domain(&'static str),
    /// Bisection or minimization failed; carries a short diagnostic.
    NoConvergence(&'static str),
}

impl fmt::Display for ComplexityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityError::Domain(m) => write!(f, "domain error: {m}"),
            ComplexityError::NoConvergence(m) => write!(f, "did not converge: {m}"),
        }
    }
}

impl core::error::Error for ComplexityError {}

/// Model scale: spin degree `p`, and the dimension `N` where finite-N
/// quantities need it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelParams {
    pub p: u32,
    pub n: Option<usize>,
}

impl ModelParams {
    pub fn new(p: u32, n: Option<usize>) -> Result<Self, ComplexityError> {
        if p < 2 {
            return Err(ComplexityError::Domain("p must be >= 2"));
        }
        if n == Some(0) {
            return Err(ComplexityError::Domain("N must be >= 1"));
        }
        Ok(ModelParams { p, n })
    }
}

/// The threshold `E_inf(p) = 2 sqrt((p-1)/p)`.
pub fn e_infinity(p: u32) -> Result<f64, ComplexityError> {
    if p < 2 {
        return Err(ComplexityError::Domain("e_infinity needs p >= 2"));
    }
    let pf = f64::from(p);
    Ok(2.0 * libm::sqrt((pf - 1.0) / pf))
}

/// Rate function `I_1(u)` on `u <= -E_inf(p)`:
/// the closed form of `(2/E_inf^2) int_u^{-E_inf} sqrt(z^2 - E_inf^2) dz`.
pub fn rate_i1(p: u32, u: f64) -> Result<f64, ComplexityError> {
    let e = e_infinity(p)?;
    if u > -e {
        return Err(ComplexityError::Domain("rate_i1 needs u <= -E_inf(p)"));
    }
    Ok(i1_unchecked(e, u))
}

fn i1_unchecked(e_inf: f64, u: f64) -> f64 {
    let s = libm::sqrt((u * u - e_inf * e_inf).max(0.0));
    -(u / (e_inf * e_inf)) * s - libm::log(-u + s) + libm::log(e_inf)
}

/// Total complexity `Theta_p(u)`: continuous, non-decreasing, flat at
/// `log(p-1)/2` for `u >= 0`.
pub fn theta_total(p: u32, u: f64) -> Result<f64, ComplexityError> {
    let e = e_infinity(p)?;
    let pf = f64::from(p);
    let base = 0.5 * libm::log(pf - 1.0);
    Ok(if u <= -e {
        base - (pf - 2.0) / (4.0 * (pf - 1.0)) * u * u - i1_unchecked(e, u)
    } else if u <= 0.0 {
        base - (pf - 2.0) / (4.0 * (pf - 1.0)) * u * u
    } else {
        base
    })
}

/// Fixed-index complexity `Theta_{k,p}(u)`: plateau `log(p-1)/2 - (p-2)/p`
/// for `u >= -E_inf`, with `(k+1) I_1` subtracted below.
pub fn theta_index(p: u32, k: u32, u: f64) -> Result<f64, ComplexityError> {
    let e = e_infinity(p)?;
    let pf = f64::from(p);
    let base = 0.5 * libm::log(pf - 1.0);
    Ok(if u <= -e {
        base - (pf - 2.0) / (4.0 * (pf - 1.0)) * u * u
            - (f64::from(k) + 1.0) * i1_unchecked(e, u)
    } else {
        base - (pf - 2.0) / pf
    })
}

/// Exponential growth rates of the total counts over the whole line:
/// `(1/N) log E Crt_N(R) -> log(p-1)/2` and
/// `(1/N) log E Crt_{N,k}(R) -> log(p-1)/2 - (p-2)/p` (any fixed k).
pub fn total_count_exponents(p: u32) -> Result<(f64, f64), ComplexityError> {
    if p < 2 {
        return Err(ComplexityError::Domain("total_count_exponents needs p >= 2"));
    }
    let pf = f64::from(p);
    let total = 0.5 * libm::log(pf - 1.0);
    Ok((total, total - (pf - 2.0) / pf))
}

const EK_BISECTION_TOL: f64 = 1e-13;

/// `E_k(p)`: the unique root of `Theta_{k,p}(-x) = 0` above `E_inf(p)`.
///
/// `Theta_{k,p}(-x)` is strictly decreasing in `x` past the edge, so plain
/// bisection on `(E_inf + 1e-12, E_inf + 10)` is safe; the square-root
/// singularity at the edge rules out derivative-based methods.
pub fn threshold_ek(p: u32, k: u32) -> Result<f64, ComplexityError> {
    if p < 3 {
        return Err(ComplexityError::Domain(
            "threshold_ek needs p >= 3 (the p=2 plateau is 0, no isolated root)",
        ));
    }
    let e = e_infinity(p)?;
    let f = |x: f64| theta_index(p, k, -x).expect("p checked");
    let mut lo = e + 1e-12;
    let mut hi = e + 10.0;
    if f(lo) <= 0.0 || f(hi) >= 0.0 {
        return Err(ComplexityError::NoConvergence("E_k bracket does not straddle zero"));
    }
    while hi - lo > EK_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// E_inf plus the first `k_max + 1` layered thresholds for one `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdTable {
    pub p: u32,
    pub e_infinity: f64,
    pub e_k: alloc::vec::Vec<(u32, f64)>,
}

impl ThresholdTable {
    pub fn compute(p: u32, k_max: u32) -> Result<Self, ComplexityError> {
        let e_inf = e_infinity(p)?;
        let mut e_k = alloc::vec::Vec::with_capacity(k_max as usize + 1);
        let mut prev = f64::INFINITY;
        for k in 0..=k_max {
            let v = threshold_ek(p, k)?;
            if v >= prev || v <= e_inf {
                return Err(ComplexityError::NoConvergence(
                    "E_k sequence is not strictly decreasing toward E_inf",
                ));
            }
            prev = v;
            e_k.push((k, v));
        }
        Ok(ThresholdTable { p, e_infinity: e_inf, e_k })
    }
}

/// Ground state by the reduced two-parameter variational problem
/// `gamma = inf_{c,d} (c + p d + (log(c+d) - log d)/c) / 2`,
/// solved by a coarse grid seed plus Nelder-Mead descent.
///
/// Returns `(gamma, c, d)` so callers can check the stationarity relation
/// `d (c + d) = 1/p`.
pub fn ground_state_variational(p: u32) -> Result<(f64, f64, f64), ComplexityError> {
    if p < 3 {
        return Err(ComplexityError::Domain("ground_state_variational needs p >= 3"));
    }
    let pf = f64::from(p);
    let obj = |c: f64, d: f64| 0.5 * (c + pf * d + (libm::log(c + d) - libm::log(d)) / c);

    // coarse 50x50 grid over [0.05, 10]^2
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..50 {
        for j in 0..50 {
            let c = 0.05 + (10.0 - 0.05) * i as f64 / 49.0;
            let d = 0.05 + (10.0 - 0.05) * j as f64 / 49.0;
            let v = obj(c, d);
            if v < best.0 {
                best = (v, c, d);
            }
        }
    }

    // box [eps, M]; the paper leaves the constants unspecified, we fix them
    // and verify the minimizer is interior
    const EPS_BOX: f64 = 1e-3;
    const M_BOX: f64 = 50.0;
    let clamped = |c: f64, d: f64| -> f64 {
        if !(EPS_BOX..=M_BOX).contains(&c) || !(EPS_BOX..=M_BOX).contains(&d) {
            f64::INFINITY
        } else {
            obj(c, d)
        }
    };
    let (_, c0, d0) = nelder_mead_2d(clamped, best.1, best.2, 1e-10, 4000)
        .ok_or(ComplexityError::NoConvergence("simplex descent on P(c,d) stalled"))?;
    if c0 < 2.0 * EPS_BOX || d0 < 2.0 * EPS_BOX || c0 > 0.5 * M_BOX || d0 > 0.5 * M_BOX {
        return Err(ComplexityError::NoConvergence("P(c,d) minimizer sits on the box boundary"));
    }
    // Newton polish on the stationarity system; the simplex pins the value
    // to 1e-10 but leaves O(1e-5) slack in (c, d)
    let (c, d) = polish_stationary_point(pf, c0, d0)
        .ok_or(ComplexityError::NoConvergence("stationarity polish of P(c,d) diverged"))?;
    Ok((obj(c, d), c, d))
}

/// 2x2 Newton on grad P = 0 with analytic gradient and finite-difference
/// Jacobian.
fn polish_stationary_point(pf: f64, mut c: f64, mut d: f64) -> Option<(f64, f64)> {
    let grad = |c: f64, d: f64| -> (f64, f64) {
        let gc = 0.5 * (1.0 + 1.0 / (c * (c + d)) - (libm::log(c + d) - libm::log(d)) / (c * c));
        let gd = 0.5 * (pf + (1.0 / (c + d) - 1.0 / d) / c);
        (gc, gd)
    };
    for _ in 0..60 {
        let (gc, gd) = grad(c, d);
        if libm::fabs(gc) < 1e-13 && libm::fabs(gd) < 1e-13 {
            return Some((c, d));
        }
        let h = 1e-7;
        let (gc_c, gd_c) = grad(c + h, d);
        let (gc_d, gd_d) = grad(c, d + h);
        let j11 = (gc_c - gc) / h;
        let j12 = (gc_d - gc) / h;
        let j21 = (gd_c - gd) / h;
        let j22 = (gd_d - gd) / h;
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 {
            return None;
        }
        let dc = (gc * j22 - gd * j12) / det;
        let dd = (gd * j11 - gc * j21) / det;
        c -= dc;
        d -= dd;
        if !(c > 0.0 && d > 0.0 && c.is_finite() && d.is_finite()) {
            return None;
        }
    }
    None
}

/// Nelder-Mead on two variables; returns `(f, x, y)` at the best vertex once
/// the simplex diameter and value spread drop below `tol`.
fn nelder_mead_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    x0: f64,
    y0: f64,
    tol: f64,
    max_iter: usize,
) -> Option<(f64, f64, f64)> {
    let mut pts = [
        (x0, y0),
        (x0 * 1.05 + 0.01, y0),
        (x0, y0 * 1.05 + 0.01),
    ];
    let mut vals = [f(pts[0].0, pts[0].1), f(pts[1].0, pts[1].1), f(pts[2].0, pts[2].1)];
    for _ in 0..max_iter {
        // order: 0 best, 2 worst
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap_or(core::cmp::Ordering::Equal));
        let (b, m, w) = (idx[0], idx[1], idx[2]);
        let spread = (vals[w] - vals[b]).abs();
        let diam = {
            let dx = |a: (f64, f64), c: (f64, f64)| libm::hypot(a.0 - c.0, a.1 - c.1);
            dx(pts[b], pts[m]).max(dx(pts[b], pts[w]))
        };
        if spread < tol && diam < libm::sqrt(tol) {
            return Some((vals[b], pts[b].0, pts[b].1));
        }
        let cx = 0.5 * (pts[b].0 + pts[m].0);
        let cy = 0.5 * (pts[b].1 + pts[m].1);
        let refl = (2.0 * cx - pts[w].0, 2.0 * cy - pts[w].1);
        let fr = f(refl.0, refl.1);
        if fr < vals[b] {
            let exp = (cx + 2.0 * (refl.0 - cx), cy + 2.0 * (refl.1 - cy));
            let fe = f(exp.0, exp.1);
            if fe < fr {
                pts[w] = exp;
                vals[w] = fe;
            } else {
                pts[w] = refl;
                vals[w] = fr;
            }
        } else if fr < vals[m] {
            pts[w] = refl;
            vals[w] = fr;
        } else {
            let con = (0.5 * (cx + pts[w].0), 0.5 * (cy + pts[w].1));
            let fc = f(con.0, con.1);
            if fc < vals[w] {
                pts[w] = con;
                vals[w] = fc;
            } else {
                for i in [m, w] {
                    pts[i] = (0.5 * (pts[i].0 + pts[b].0), 0.5 * (pts[i].1 + pts[b].1));
                    vals[i] = f(pts[i].0, pts[i].1);
                }
            }
        }
    }
    None
}

/// Ground state by the scalar reduction: the root of
/// `g_p(a) = (a-1)^2 + p(a-1) - p a log a` above `p-1`, then
/// `gamma = y + (p-1)/(p y)` with `y = sqrt(a/p)`.
pub fn ground_state_scalar(p: u32) -> Result<f64, ComplexityError> {
    if p < 3 {
        return Err(ComplexityError::Domain("ground_state_scalar needs p >= 3"));
    }
    let pf = f64::from(p);
    let g = |a: f64| (a - 1.0) * (a - 1.0) + pf * (a - 1.0) - pf * a * libm::log(a);
    let mut lo = pf - 1.0;
    if g(lo) >= 0.0 {
        return Err(ComplexityError::NoConvergence("g_p(p-1) not negative"));
    }
    let mut hi = lo;
    for _ in 0..200 {
        hi *= 2.0;
        if g(hi) > 0.0 {
            break;
        }
    }
    if g(hi) <= 0.0 {
        return Err(ComplexityError::NoConvergence("no sign change bracketing g_p"));
    }
    while hi - lo > 1e-14 * hi {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    let y = libm::sqrt(a / pf);
    Ok(y + (pf - 1.0) / (y * pf))
}

/// Crisanti-Sommers complexity of local minima at normalized energy `E`:
/// `g(E) = ((2-p)/p - log(p z^2/2) + (p-1) z^2/2 - 2/(p^2 z^2)) / 2` with
/// `z = (-E - sqrt(E^2 - 2(p-1)/p))/(p-1)`. Equals `Theta_{0,p}(sqrt(2) E)`
/// on its domain `E <= -sqrt(2(p-1)/p)`.
pub fn cs_minima_complexity(p: u32, e: f64) -> Result<f64, ComplexityError> {
    if p < 3 {
        return Err(ComplexityError::Domain("cs_minima_complexity needs p >= 3"));
    }
    let pf = f64::from(p);
    let edge = libm::sqrt(2.0 * (pf - 1.0) / pf);
    if e > -edge {
        return Err(ComplexityError::Domain(
            "cs_minima_complexity needs E <= -sqrt(2(p-1)/p)",
        ));
    }
    let z = (-e - libm::sqrt((e * e - edge * edge).max(0.0))) / (pf - 1.0);
    let z2 = z * z;
    Ok(0.5
        * ((2.0 - pf) / pf - libm::log(pf * z2 / 2.0) + (pf - 1.0) / 2.0 * z2
            - 2.0 / (pf * pf * z2)))
}
