//! Sign/log-magnitude arithmetic for exponentially large or small quantities.
//!
//! Mean critical-point counts carry factors like `(p-1)^{N/2}` and `e^{N Theta}`
//! that overflow `f64` long before the sizes of interest, so every count,
//! density integral and prefactor in this crate is carried as a
//! [`LogScaledReal`]: a sign together with the natural log of the magnitude.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// A real number stored as `sign * exp(log_abs)`.
///
/// Zero is represented by `sign == 0` and `log_abs == -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaledReal {
    sign: i8,
    log_abs: f64,
}

impl LogScaledReal {
    pub const ZERO: Self = LogScaledReal {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };
    pub const ONE: Self = LogScaledReal {
        sign: 1,
        log_abs: 0.0,
    };

    /// Builds from sign and natural-log magnitude, normalising zeros.
    pub fn from_parts(sign: i8, log_abs: f64) -> Self {
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogScaledReal {
                sign: sign.signum(),
                log_abs,
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogScaledReal {
                sign: if x > 0.0 { 1 } else { -1 },
                log_abs: libm::log(libm::fabs(x)),
            }
        }
    }

    /// `exp(x)` as a log-scaled value; exact in log space for any `x`.
    pub fn exp_of(x: f64) -> Self {
        LogScaledReal {
            sign: 1,
            log_abs: x,
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude (`-inf` for zero).
    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_finite(&self) -> bool {
        self.sign == 0 || self.log_abs.is_finite()
    }

    /// Converts back to `f64`; overflows to `+-inf` and underflows to 0.
    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * libm::exp(self.log_abs)
    }

    pub fn abs(&self) -> Self {
        LogScaledReal {
            sign: self.sign.abs(),
            log_abs: self.log_abs,
        }
    }

    pub fn recip(&self) -> Self {
        LogScaledReal {
            sign: self.sign,
            log_abs: -self.log_abs,
        }
    }

    /// Multiplies by `exp(x)` without leaving log space.
    pub fn scale_exp(&self, x: f64) -> Self {
        if self.sign == 0 {
            Self::ZERO
        } else {
            LogScaledReal {
                sign: self.sign,
                log_abs: self.log_abs + x,
            }
        }
    }

    /// Natural log of a positive value.
    ///
    /// Returns `None` when the value is zero or negative.
    pub fn ln(&self) -> Option<f64> {
        (self.sign > 0).then_some(self.log_abs)
    }

    /// Relative difference |self/other - 1|, computed stably in log space.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        let ratio = *self / *other;
        libm::fabs(ratio.sign as f64 * libm::exp(ratio.log_abs) - 1.0)
    }

    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.log_abs
            .partial_cmp(&other.log_abs)
            .unwrap_or(Ordering::Equal)
    }
}

impl Mul for LogScaledReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        LogScaledReal {
            sign: self.sign * rhs.sign,
            log_abs: self.log_abs + rhs.log_abs,
        }
    }
}

impl Div for LogScaledReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogScaledReal {
            sign: self.sign * rhs.sign,
            log_abs: self.log_abs - rhs.log_abs,
        }
    }
}

impl Neg for LogScaledReal {
    type Output = Self;
    fn neg(self) -> Self {
        LogScaledReal {
            sign: -self.sign,
            log_abs: self.log_abs,
        }
    }
}

impl Add for LogScaledReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        // Order by magnitude so the log-sum-exp argument is <= 0.
        let (big, small) = if self.magnitude_cmp(&rhs) == Ordering::Less {
            (rhs, self)
        } else {
            (self, rhs)
        };
        let d = small.log_abs - big.log_abs;
        if big.sign == small.sign {
            LogScaledReal {
                sign: big.sign,
                log_abs: big.log_abs + libm::log1p(libm::exp(d)),
            }
        } else {
            let m = -libm::expm1(d); // 1 - exp(d) in [0, 1]
            if m == 0.0 {
                Self::ZERO
            } else {
                LogScaledReal {
                    sign: big.sign,
                    log_abs: big.log_abs + libm::log(m),
                }
            }
        }
    }
}

impl Sub for LogScaledReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl core::iter::Sum for LogScaledReal {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

impl PartialOrd for LogScaledReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            ord => return Some(ord),
        }
        match self.sign {
            1 => self.log_abs.partial_cmp(&other.log_abs),
            -1 => other.log_abs.partial_cmp(&self.log_abs),
            _ => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for LogScaledReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => {
                let v = self.to_f64();
                if v.is_finite() && v != 0.0 {
                    write!(f, "{v:e}")
                } else if s > 0 {
                    write!(f, "exp({})", self.log_abs)
                } else {
                    write!(f, "-exp({})", self.log_abs)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn round_trip_and_scale() {
        // exp(ln x) costs at most a couple of ulps; 0 and +-1 are exact
        for &x in &[0.0f64, 1.0, -1.0] {
            assert_eq!(LogScaledReal::from_f64(x).to_f64(), x);
        }
        for &x in &[-3.5e17f64, 2.2e-12, 7.25, -0.062] {
            let l = LogScaledReal::from_f64(x);
            // exp(ln x) error grows with |ln x|
            let bound = (2.0 + l.log_abs().abs()) * f64::EPSILON * x.abs();
            assert!((l.to_f64() - x).abs() <= bound, "round trip {x}");
        }
        // values far outside f64 range stay exact in log space
        let huge = LogScaledReal::exp_of(5000.0);
        assert_eq!((huge * huge).log_abs(), 10000.0);
        assert_eq!(huge.to_f64(), f64::INFINITY);
    }

    #[test]
    fn addition_with_cancellation() {
        let a = LogScaledReal::from_f64(1.0 + 1e-9);
        let b = LogScaledReal::from_f64(-1.0);
        let s = a + b;
        assert!((s.to_f64() - 1e-9).abs() < 1e-15);
        let z = a + (-a);
        assert!(z.is_zero());
    }

    #[test]
    fn comparison_follows_real_order() {
        let vals = [-2.0f64, -0.5, 0.0, 1e-30, 3.0];
        for &a in &vals {
            for &b in &vals {
                let la = LogScaledReal::from_f64(a);
                let lb = LogScaledReal::from_f64(b);
                assert_eq!(la.partial_cmp(&lb), a.partial_cmp(&b), "{a} vs {b}");
            }
        }
    }

    proptest! {
        #[test]
        fn field_ops_match_f64(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let (la, lb) = (LogScaledReal::from_f64(a), LogScaledReal::from_f64(b));
            let sum = (la + lb).to_f64();
            let prod = (la * lb).to_f64();
            prop_assert!((sum - (a + b)).abs() <= 1e-9 * (1.0 + (a + b).abs()));
            let pref = (a * b).abs().max(1e-300);
            prop_assert!((prod - a * b).abs() <= 1e-9 * pref);
        }
    }
}
