//! Finite unions of real intervals, used as level sets for counting.

use alloc::vec;
use alloc::vec::Vec;

/// A single interval `[lo, hi]` with possibly infinite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// A finite union of intervals. Endpoint overlaps are the caller's business;
/// counting treats the union as a set (membership is an `any`).
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn new(parts: Vec<Interval>) -> Self {
        assert!(!parts.is_empty(), "empty interval union");
        IntervalUnion { parts }
    }

    /// The whole real line.
    pub fn all() -> Self {
        IntervalUnion {
            parts: vec![Interval::new(f64::NEG_INFINITY, f64::INFINITY)],
        }
    }

    /// `(-inf, u]`.
    pub fn below(u: f64) -> Self {
        IntervalUnion {
            parts: vec![Interval::new(f64::NEG_INFINITY, u)],
        }
    }

    /// `[u, inf)`.
    pub fn above(u: f64) -> Self {
        IntervalUnion {
            parts: vec![Interval::new(u, f64::INFINITY)],
        }
    }

    pub fn between(lo: f64, hi: f64) -> Self {
        IntervalUnion {
            parts: vec![Interval::new(lo, hi)],
        }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|i| i.contains(x))
    }

    /// Scales every endpoint by a positive factor.
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(factor > 0.0);
        IntervalUnion {
            parts: self
                .parts
                .iter()
                .map(|i| Interval::new(i.lo * factor, i.hi * factor))
                .collect(),
        }
    }
}
