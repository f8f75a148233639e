//! Kernels of the characters `χ_g(x, y) = e^{2πi(g_x x + g_y y)}` of the
//! 2-torus, restricted to rational points.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dirset::Cluster;
use crate::error::{Error, Result};
use crate::lattice::{Direction, Vec2};
use crate::tiling::cyclotomic_tests;
use crate::Rational;

fn frac(x: Rational) -> Rational {
    x - x.floor()
}

/// A point of `(R/Z)²` with rational coordinates in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalPoint2 {
    x: Rational,
    y: Rational,
}

impl RationalPoint2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint2 { x: frac(x), y: frac(y) }
    }

    pub fn x(&self) -> Rational {
        self.x
    }

    pub fn y(&self) -> Rational {
        self.y
    }
}

impl fmt::Display for RationalPoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `ker χ_{n h} = { k/(n(a²+b²))·(a,b) + t·(-b,a) : k, t }` for `h = (a,b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelParam {
    pub h: Direction,
    pub n: i64,
    /// `k / (n(a²+b²))` for `k = 0, …, n(a²+b²) - 1`.
    pub offsets: Vec<Rational>,
    /// `(-b, a)`.
    pub axis: Vec2,
}

impl KernelParam {
    /// `offsets[k]·h + t·axis`, reduced mod Z².
    pub fn point(&self, k: usize, t: Rational) -> RationalPoint2 {
        let (a, b) = (self.h.dx() as i128, self.h.dy() as i128);
        let l = self.offsets[k];
        let (ax, ay) = (self.axis.x as i128, self.axis.y as i128);
        RationalPoint2::new(l * a + t * ax, l * b + t * ay)
    }

    /// Whether `pt` lies on the parametrized family.
    pub fn covers(&self, pt: RationalPoint2) -> bool {
        let (lambda, _) = lift_to_primitive_frame(pt, self.h);
        let scaled = frac(lambda) * Rational::from(self.offsets.len() as i128);
        scaled.is_integer()
    }
}

pub fn kernel_parametrization(h: Direction, n: i64) -> Result<KernelParam> {
    if n < 1 {
        return Err(Error::ZeroInput("n must be positive"));
    }
    let (a, b) = (h.dx(), h.dy());
    let count = n * (a * a + b * b);
    let offsets = (0..count).map(|k| Rational::new(k as i128, count as i128)).collect();
    Ok(KernelParam { h, n, offsets, axis: Vec2::new(-b, a) })
}

/// `χ_g(pt) = 1`, i.e. `g_x x + g_y y ∈ Z`.
pub fn in_kernel(pt: RationalPoint2, g: Vec2) -> bool {
    (pt.x * Rational::from(g.x as i128) + pt.y * Rational::from(g.y as i128)).is_integer()
}

/// `(λ, t)` with `pt = λ·(a,b) + t·(-b,a)` for the representative of `pt` in
/// `[0,1)²`.
pub fn lift_to_primitive_frame(pt: RationalPoint2, h: Direction) -> (Rational, Rational) {
    let (a, b) = (Rational::from(h.dx() as i128), Rational::from(h.dy() as i128));
    let norm = a * a + b * b;
    ((a * pt.x + b * pt.y) / norm, (-b * pt.x + a * pt.y) / norm)
}

/// `(m, passes)` for `m = 1..=m_max`: whether every line polynomial
/// `Σ_{g∈F_j} z^{⟨g,h⟩}` over lines `F_j` parallel to `h` is divisible by
/// `Φ_p(z^{p^{m-1}})`.
pub fn grouped_vanishing(f: &Cluster, h: Direction, p: i64) -> Result<Vec<(u32, bool)>> {
    cyclotomic_tests(f, h, p)
}

/// Rational points of `(R/Z)²` with denominators dividing `den`.
pub fn grid_points(den: i64) -> impl Iterator<Item = RationalPoint2> {
    let d = den as i128;
    (0..d).flat_map(move |i| (0..d).map(move |j| RationalPoint2::new(Rational::new(i, d), Rational::new(j, d))))
}

/// The rational points with common denominator at most `max_den`, each once,
/// in order.
pub fn points_up_to(max_den: i64) -> Vec<RationalPoint2> {
    let set: BTreeSet<RationalPoint2> = (1..=max_den).flat_map(grid_points).collect();
    set.into_iter().collect()
}
