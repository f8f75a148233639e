use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The real quadratic irrational `(p + q·√d) / r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadIrrational {
    p: i64,
    q: i64,
    d: i64,
    r: i64,
}

impl QuadIrrational {
    pub fn new(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        if d < 2 || is_square(d) {
            return Err(Error::InvalidIrrational(format!("d = {d} must be a positive non-square")));
        }
        if r < 1 {
            return Err(Error::InvalidIrrational(format!("r = {r} must be positive")));
        }
        if q == 0 {
            return Err(Error::InvalidIrrational("q = 0 gives a rational number".into()));
        }
        Ok(QuadIrrational { p, q, d, r })
    }

    /// √2.
    pub fn sqrt2() -> Self {
        Self::new(0, 1, 2, 1).unwrap()
    }

    /// The golden ratio `(1 + √5) / 2`.
    pub fn golden() -> Self {
        Self::new(1, 1, 5, 2).unwrap()
    }

    pub fn parts(&self) -> (i64, i64, i64, i64) {
        (self.p, self.q, self.d, self.r)
    }

    /// `⌊n·α⌋`, exact for every integer `n`.
    pub fn floor_mul(&self, n: i64) -> i128 {
        let a = n as i128 * self.p as i128;
        let b = n as i128 * self.q as i128;
        // ⌊b√d⌋: b²d is never a perfect square for b ≠ 0, so the negative case
        // rounds down past the integer square root.
        let root = ((b * b) as u128 * self.d as u128).isqrt() as i128;
        let floor_b_sqrt_d = match b.signum() {
            0 => 0,
            1 => root,
            _ => -root - 1,
        };
        (a + floor_b_sqrt_d).div_euclid(self.r as i128)
    }

    /// `⌊α⌋`.
    pub fn floor(&self) -> i128 {
        self.floor_mul(1)
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.d as f64).sqrt()) / self.r as f64
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/{}", self.p, self.q, self.d, self.r)
    }
}

fn is_square(d: i64) -> bool {
    d >= 0 && (d as u64).isqrt().pow(2) == d as u64
}
