//! Integer lattice primitives: vectors, primitive directions, Bezout data and
//! finite-index sublattices of Z² in Hermite normal form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point (or translation vector) of Z².
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: i64,
    pub y: i64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0, y: 0 };
    pub const E1: Vec2 = Vec2 { x: 1, y: 0 };
    pub const E2: Vec2 = Vec2 { x: 0, y: 1 };

    pub const fn new(x: i64, y: i64) -> Self {
        Vec2 { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn dot(self, other: Vec2) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the planar cross product `self × other`.
    pub fn cross(self, other: Vec2) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_inf(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn scale(self, k: i64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<Vec2> for i64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs.scale(self)
    }
}

/// A line through the origin, stored as its canonical primitive vector:
/// `gcd(|dx|, |dy|) = 1` and `dy > 0`, or `dy = 0` and `dx = 1`.
///
/// Directions are ordered by the angle of the canonical vector in `[0, π)`,
/// so `(1,0) < (1,1) < (0,1) < (-1,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction {
    dx: i64,
    dy: i64,
}

impl Direction {
    pub const HORIZONTAL: Direction = Direction { dx: 1, dy: 0 };
    pub const VERTICAL: Direction = Direction { dx: 0, dy: 1 };

    /// Builds a direction from an arbitrary nonzero vector; see [`direction_of`].
    pub fn new(dx: i64, dy: i64) -> Result<Self> {
        direction_of(Vec2::new(dx, dy))
    }

    pub fn dx(self) -> i64 {
        self.dx
    }

    pub fn dy(self) -> i64 {
        self.dy
    }

    pub fn vector(self) -> Vec2 {
        Vec2::new(self.dx, self.dy)
    }

    /// The canonical direction perpendicular to this one.
    pub fn normal(self) -> Direction {
        direction_of(Vec2::new(self.dy, -self.dx)).expect("primitive vectors are nonzero")
    }

    /// Index of the line parallel to `self` passing through `p`. Two points
    /// share a line iff they have the same index.
    pub fn line_index(self, p: Vec2) -> i64 {
        self.vector().cross(p)
    }

    pub fn contains(self, v: Vec2) -> bool {
        !v.is_zero() && self.vector().cross(v) == 0
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        // Canonical vectors live in the half-open upper half plane, where the
        // sign of the cross product is a total order on angles.
        match self.vector().cross(other.vector()) {
            c if c > 0 => Ordering::Less,
            c if c < 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

/// Extended Euclid. Returns `(g, x0, y0)` with `g = gcd(a, b) > 0` and
/// `a·x0 + b·y0 = g`.
pub fn bezout(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::ZeroInput("bezout of (0,0)"));
    }
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    Ok((r0, s0, t0))
}

/// The canonical primitive vector parallel to `v`.
pub fn direction_of(v: Vec2) -> Result<Direction> {
    if v.is_zero() {
        return Err(Error::ZeroInput("direction of the zero vector"));
    }
    let g = v.x.gcd(&v.y);
    let (mut dx, mut dy) = (v.x / g, v.y / g);
    if dy < 0 || (dy == 0 && dx < 0) {
        dx = -dx;
        dy = -dy;
    }
    Ok(Direction { dx, dy })
}

/// A finite-index sublattice of Z² with basis `(a,0), (c,b)` in Hermite
/// normal form, `a, b ≥ 1` and `0 ≤ c < a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice2 {
    a: i64,
    c: i64,
    b: i64,
}

impl Lattice2 {
    /// Lattice from HNF entries. Rejects anything that is not already in HNF.
    pub fn hnf(a: i64, c: i64, b: i64) -> Result<Self> {
        if a < 1 || b < 1 || c < 0 || c >= a {
            return Err(Error::InvalidLattice(format!(
                "({a},0),({c},{b}) is not in Hermite normal form"
            )));
        }
        Ok(Lattice2 { a, c, b })
    }

    /// `n·Z × n·Z`.
    pub fn square(n: i64) -> Result<Self> {
        Self::diagonal(n, n)
    }

    pub fn diagonal(a: i64, b: i64) -> Result<Self> {
        Self::hnf(a, 0, b)
    }

    /// The lattice generated by two linearly independent vectors.
    pub fn from_basis(u: Vec2, v: Vec2) -> Result<Self> {
        let det = u.cross(v);
        if det == 0 {
            return Err(Error::InvalidLattice(format!("{u} and {v} are linearly dependent")));
        }
        let (g, s, t) = bezout(u.y, v.y)?;
        // w has second coordinate g; z lies on the x-axis.
        let w = s * u + t * v;
        let z = (v.y / g) * u - (u.y / g) * v;
        let a = z.x.abs();
        debug_assert_eq!(a * g, det.abs());
        Self::hnf(a, w.x.rem_euclid(a), g)
    }

    pub fn basis(&self) -> (Vec2, Vec2) {
        (Vec2::new(self.a, 0), Vec2::new(self.c, self.b))
    }

    pub fn index(&self) -> i64 {
        self.a * self.b
    }

    /// Smallest positive `k` with `k·e1` in the lattice.
    pub fn x_period(&self) -> i64 {
        self.a
    }

    /// Smallest positive `k` with `k·e2` in the lattice.
    pub fn y_period(&self) -> i64 {
        self.a / self.a.gcd(&self.c) * self.b
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.reduce(p).is_zero()
    }

    /// The representative of `p + L` in the fundamental domain `[0,a) × [0,b)`.
    pub fn reduce(&self, p: Vec2) -> Vec2 {
        let y = p.y.rem_euclid(self.b);
        let k = (p.y - y) / self.b;
        let x = (p.x - k * self.c).rem_euclid(self.a);
        Vec2::new(x, y)
    }

    /// Coset representatives, one per residue class, in row-major order.
    pub fn cosets(&self) -> Vec<Vec2> {
        (0..self.b)
            .flat_map(|y| (0..self.a).map(move |x| Vec2::new(x, y)))
            .collect()
    }
}

impl fmt::Display for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = self.basis();
        write!(f, "<{u},{v}>")
    }
}

/// Cosets of `L` (free function form).
pub fn cosets(lattice: &Lattice2) -> Vec<Vec2> {
    lattice.cosets()
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}
