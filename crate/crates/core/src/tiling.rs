//! Tilings of finite torus quotients `Z² / (mod_x·Z × mod_y·Z)`, dilations,
//! and the line-divisibility analysis for clusters of prime-square size.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::dirset::{dir, parse_ints, strip_comment, Cluster, DirectionSet};
use crate::error::{Error, Result};
use crate::lattice::{Direction, Vec2};
use crate::poly::{cyclotomic_pm, divides_1var, is_prime, LaurentPoly1};

/// Emitted by the prime-square report once the rectangle structure is
/// confirmed.
pub const ORDER_TWO_CONCLUSION: &str = "order ≤ 2 for every F-tiling";

/// The biperiodic set `anchors + (mod_x·Z × mod_y·Z)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TorusTiling {
    mod_x: i64,
    mod_y: i64,
    anchors: BTreeSet<Vec2>,
}

impl TorusTiling {
    /// Anchors are reduced into `[0,mod_x) × [0,mod_y)`.
    pub fn new<I: IntoIterator<Item = Vec2>>(mod_x: i64, mod_y: i64, anchors: I) -> Result<Self> {
        if mod_x < 1 || mod_y < 1 {
            return Err(Error::ZeroInput("torus dimensions must be positive"));
        }
        let anchors = anchors.into_iter().map(|p| Vec2::new(p.x.rem_euclid(mod_x), p.y.rem_euclid(mod_y))).collect();
        Ok(TorusTiling { mod_x, mod_y, anchors })
    }

    pub fn mod_x(&self) -> i64 {
        self.mod_x
    }

    pub fn mod_y(&self) -> i64 {
        self.mod_y
    }

    pub fn anchors(&self) -> &BTreeSet<Vec2> {
        &self.anchors
    }

    pub fn area(&self) -> i64 {
        self.mod_x * self.mod_y
    }

    pub fn reduce(&self, p: Vec2) -> Vec2 {
        Vec2::new(p.x.rem_euclid(self.mod_x), p.y.rem_euclid(self.mod_y))
    }

    /// Whether `p ∈ T` in Z².
    pub fn contains(&self, p: Vec2) -> bool {
        self.anchors.contains(&self.reduce(p))
    }

    /// `torus MX MY` followed by one `x y` anchor per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dims = None;
        let mut anchors = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            match dims {
                None => {
                    let rest = line
                        .strip_prefix("torus")
                        .ok_or_else(|| Error::parse(i + 1, "expected header `torus MX MY`"))?;
                    let nums = parse_ints(rest, i + 1)?;
                    if nums.len() != 2 || nums[0] < 1 || nums[1] < 1 {
                        return Err(Error::parse(i + 1, "torus dimensions must be two positive integers"));
                    }
                    dims = Some((nums[0], nums[1]));
                }
                Some(_) => {
                    let nums = parse_ints(line, i + 1)?;
                    if nums.len() != 2 {
                        return Err(Error::parse(i + 1, format!("expected `x y`, got `{line}`")));
                    }
                    anchors.push(Vec2::new(nums[0], nums[1]));
                }
            }
        }
        let (mx, my) = dims.ok_or_else(|| Error::parse(0, "missing `torus MX MY` header"))?;
        TorusTiling::new(mx, my, anchors)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("torus {} {}\n", self.mod_x, self.mod_y);
        for a in &self.anchors {
            out.push_str(&format!("{} {}\n", a.x, a.y));
        }
        out
    }
}

impl fmt::Display for TorusTiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.anchors.iter().map(|a| a.to_string()).collect();
        write!(f, "{}x{}: {}", self.mod_x, self.mod_y, parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TilingCheck {
    Ok,
    /// First cell (rows by increasing `y`) covered `count ≠ 1` times.
    Violation { p: Vec2, count: usize },
}

impl TilingCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, TilingCheck::Ok)
    }
}

/// Checks `Σ_{v∈F} 1_T(p - v) = 1` at every cell of the torus.
pub fn verify_tiling(f: &Cluster, t: &TorusTiling) -> TilingCheck {
    let (mx, my) = (t.mod_x, t.mod_y);
    let mut counts = vec![0usize; (mx * my) as usize];
    for &a in &t.anchors {
        for v in f.iter() {
            let q = t.reduce(a + v);
            counts[(q.y * mx + q.x) as usize] += 1;
        }
    }
    for y in 0..my {
        for x in 0..mx {
            let count = counts[(y * mx + x) as usize];
            if count != 1 {
                return TilingCheck::Violation { p: Vec2::new(x, y), count };
            }
        }
    }
    TilingCheck::Ok
}

/// First pair of points of `f` that coincide modulo the torus.
fn collision(f: &Cluster, mod_x: i64, mod_y: i64) -> Option<(Vec2, Vec2)> {
    let mut seen = BTreeMap::new();
    for p in f.iter() {
        let key = (p.x.rem_euclid(mod_x), p.y.rem_euclid(mod_y));
        if let Some(&q) = seen.get(&key) {
            return Some((q, p));
        }
        seen.insert(key, p);
    }
    None
}

/// Exact-cover search state on the torus cells.
struct Search<'a> {
    mod_x: i64,
    mod_y: i64,
    /// Cells covered by the tile anchored at each cell.
    cover: &'a [Vec<usize>],
    /// Anchors whose tile covers each cell.
    candidates: &'a [Vec<usize>],
    covered: Vec<bool>,
    chosen: Vec<usize>,
    found: Vec<TorusTiling>,
}

impl Search<'_> {
    fn fits(&self, anchor: usize) -> bool {
        self.cover[anchor].iter().all(|&c| !self.covered[c])
    }

    /// Uncovered cell with the fewest fitting anchors, with those anchors.
    /// `None` when every cell is covered.
    fn most_constrained(&self) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for cell in (0..self.covered.len()).filter(|&c| !self.covered[c]) {
            let fitting: Vec<usize> = self.candidates[cell].iter().copied().filter(|&a| self.fits(a)).collect();
            let better = best.as_ref().is_none_or(|(_, b)| fitting.len() < b.len());
            if better {
                let dead = fitting.is_empty();
                best = Some((cell, fitting));
                if dead {
                    break;
                }
            }
        }
        best
    }

    fn place(&mut self, anchor: usize, on: bool) {
        for &c in &self.cover[anchor] {
            self.covered[c] = on;
        }
        if on {
            self.chosen.push(anchor);
        } else {
            self.chosen.pop();
        }
    }

    fn run(&mut self) {
        match self.most_constrained() {
            None => {
                let mx = self.mod_x;
                let anchors = self.chosen.iter().map(|&a| Vec2::new(a as i64 % mx, a as i64 / mx));
                self.found.push(TorusTiling::new(self.mod_x, self.mod_y, anchors).expect("valid torus"));
            }
            Some((_, fitting)) => {
                for a in fitting {
                    self.place(a, true);
                    self.run();
                    self.place(a, false);
                }
            }
        }
    }
}

/// All `F`-tilings of the `mod_x × mod_y` torus, sorted lexicographically by
/// anchor list. An empty result says nothing about tilings of Z² with other
/// periods.
pub fn enumerate_tilings(f: &Cluster, mod_x: i64, mod_y: i64) -> Result<Vec<TorusTiling>> {
    enumerate_tilings_parallel(f, mod_x, mod_y, 1)
}

/// [`enumerate_tilings`], splitting the first branching decision across
/// `jobs` threads.
pub fn enumerate_tilings_parallel(f: &Cluster, mod_x: i64, mod_y: i64, jobs: usize) -> Result<Vec<TorusTiling>> {
    let mismatch = |reason: String| Error::TorusMismatch { size: f.len(), mod_x, mod_y, reason };
    if mod_x < 1 || mod_y < 1 {
        return Err(mismatch("torus dimensions must be positive".into()));
    }
    let area = mod_x * mod_y;
    if area % f.len() as i64 != 0 {
        return Err(mismatch(format!("{} does not divide the area {area}", f.len())));
    }
    if let Some((a, b)) = collision(f, mod_x, mod_y) {
        return Err(mismatch(format!("{a} and {b} coincide modulo the torus")));
    }
    let cell = |p: Vec2| (p.y.rem_euclid(mod_y) * mod_x + p.x.rem_euclid(mod_x)) as usize;
    let n = area as usize;
    let cover: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let anchor = Vec2::new(a as i64 % mod_x, a as i64 / mod_x);
            f.iter().map(|v| cell(anchor + v)).collect()
        })
        .collect();
    let mut candidates = vec![Vec::new(); n];
    for (a, cells) in cover.iter().enumerate() {
        for &c in cells {
            candidates[c].push(a);
        }
    }
    let fresh = || Search {
        mod_x,
        mod_y,
        cover: &cover,
        candidates: &candidates,
        covered: vec![false; n],
        chosen: Vec::new(),
        found: Vec::new(),
    };
    let root = fresh();
    let (_, first) = root.most_constrained().expect("torus is nonempty");
    let jobs = jobs.max(1).min(first.len().max(1));
    let mut found = if jobs == 1 {
        let mut s = fresh();
        s.run();
        s.found
    } else {
        let chunks: Vec<Vec<usize>> = (0..jobs).map(|j| first.iter().copied().skip(j).step_by(jobs).collect()).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    let mut s = fresh();
                    scope.spawn(move || {
                        for a in chunk {
                            s.place(a, true);
                            s.run();
                            s.place(a, false);
                        }
                        s.found
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
        })
    };
    found.sort();
    Ok(found)
}

/// `αF = {α·a : a ∈ F}`.
pub fn dilate(f: &Cluster, alpha: i64) -> Result<Cluster> {
    if alpha == 0 {
        return Err(Error::ZeroInput("dilation factor must be nonzero"));
    }
    Ok(f.map(|p| alpha * p))
}

/// Verifies that `T` is also an `αF`-tiling of the torus.
pub fn check_dilation(f: &Cluster, t: &TorusTiling, alpha: i64) -> Result<TilingCheck> {
    let g = dilate(f, alpha)?;
    if let Some((a, b)) = collision(&g, t.mod_x, t.mod_y) {
        return Err(Error::NonInjectiveDilation { alpha, a, b });
    }
    Ok(verify_tiling(&g, t))
}

/// Whether `gcd(α, |F|) = 1`, the hypothesis under which dilation preserves
/// tilings.
pub fn dilation_guaranteed(f: &Cluster, alpha: i64) -> bool {
    alpha.gcd(&(f.len() as i64)) == 1
}

/// For each line parallel to `d` (keyed by line index), the polynomial
/// `Σ_{g on the line} z^{⟨g, h⟩}` with `h` the primitive vector of `d`.
pub fn line_polynomials(f: &Cluster, d: Direction) -> BTreeMap<i64, LaurentPoly1> {
    let h = d.vector();
    let mut exps: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for g in f.iter() {
        exps.entry(d.line_index(g)).or_default().push(g.dot(h));
    }
    exps.into_iter().map(|(k, e)| (k, LaurentPoly1::from_exponents(e))).collect()
}

/// Largest `m` with `deg Φ_{p^m} = p^{m-1}(p-1) ≤ spread`, or 0. A nonzero
/// polynomial whose exponents span less than `deg Φ` cannot be divisible by it.
pub fn max_cyclotomic_level(p: i64, spread: i64) -> u32 {
    let mut m = 0;
    let mut deg = p - 1;
    while deg <= spread {
        m += 1;
        deg = match deg.checked_mul(p) {
            Some(d) => d,
            None => break,
        };
    }
    m
}

/// `(m, passes)` for `m = 1..=m_max`, where `passes` means every line
/// polynomial of `f` along `d` is divisible by `Φ_p(z^{p^{m-1}})`.
pub fn cyclotomic_tests(f: &Cluster, d: Direction, p: i64) -> Result<Vec<(u32, bool)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let lines = line_polynomials(f, d);
    let spread = lines.values().map(|l| l.spread()).max().unwrap_or(0);
    (1..=max_cyclotomic_level(p, spread))
        .map(|m| {
            let phi = cyclotomic_pm(p, m)?;
            let mut ok = true;
            for l in lines.values() {
                ok &= divides_1var(&phi, l)?;
            }
            Ok((m, ok))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub direction: Direction,
    pub p: i64,
    /// Points of `F` on each line parallel to `direction`, by line index.
    pub line_counts: BTreeMap<i64, usize>,
    pub all_divisible: bool,
    /// Levels `m` at which every line polynomial is divisible by `Φ_{p^m}`.
    pub cyclotomic_levels: Vec<u32>,
    pub max_level: u32,
}

pub fn line_divisibility(f: &Cluster, d: Direction, p: i64) -> Result<DivisibilityReport> {
    let tests = cyclotomic_tests(f, d, p)?;
    let line_counts = f.line_counts(d);
    let all_divisible = line_counts.values().all(|&c| c as i64 % p == 0);
    Ok(DivisibilityReport {
        direction: d,
        p,
        line_counts,
        all_divisible,
        cyclotomic_levels: tests.iter().filter(|(_, ok)| *ok).map(|(m, _)| *m).collect(),
        max_level: tests.len() as u32,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RectangleOutcome {
    /// `F = {(α·d1 + β·d2) / frame_index : α ∈ a, β ∈ b}`; when the frame is
    /// unimodular (`frame_index = 1`) these are plain integer coordinates.
    IsRectangle {
        a: BTreeSet<i64>,
        b: BTreeSet<i64>,
        basis: (Direction, Direction),
        frame_index: i64,
        unimodular: bool,
    },
    /// Fewer than two directions with every line count divisible by `p`.
    NotApplicable { reason: String, divisible: Vec<Direction> },
    /// Two divisible directions but no product structure. For `|F| = p²`
    /// this should never occur.
    CounterexampleWitness { basis: (Direction, Direction), missing: (i64, i64) },
}

impl RectangleOutcome {
    pub fn is_rectangle(&self) -> bool {
        matches!(self, RectangleOutcome::IsRectangle { .. })
    }
}

/// Frame coordinates `(α, β)` of `g` with `|D|·g = α·d1 + β·d2`,
/// `D = d1 × d2`.
fn frame_coords(g: Vec2, d1: Vec2, d2: Vec2) -> (i64, i64) {
    let sign = d1.cross(d2).signum();
    (g.cross(d2) * sign, d1.cross(g) * sign)
}

/// Directions spanned by pairs of points of `f` along which every line count
/// is divisible by `p`.
pub fn divisible_directions(f: &Cluster, p: i64) -> Result<Vec<Direction>> {
    let mut out = Vec::new();
    for d in f.pair_directions() {
        if line_divisibility(f, d, p)?.all_divisible {
            out.push(d);
        }
    }
    Ok(out)
}

pub fn rectangle_check(f: &Cluster, p: i64) -> Result<RectangleOutcome> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f.len() as i64 != p * p {
        return Err(Error::NotPrimeSquare(f.len()));
    }
    let divisible = divisible_directions(f, p)?;
    if divisible.len() < 2 {
        return Ok(RectangleOutcome::NotApplicable {
            reason: format!("{} divisible direction(s) found, two are needed", divisible.len()),
            divisible,
        });
    }
    let pairs: Vec<(Direction, Direction)> = divisible
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| divisible[i + 1..].iter().map(move |&b| (a, b)))
        .collect();
    let (d1, d2) = pairs
        .iter()
        .copied()
        .find(|(a, b)| a.vector().cross(b.vector()).abs() == 1)
        .unwrap_or(pairs[0]);
    let (u, v) = (d1.vector(), d2.vector());
    let coords: BTreeSet<(i64, i64)> = f.iter().map(|g| frame_coords(g, u, v)).collect();
    let a: BTreeSet<i64> = coords.iter().map(|c| c.0).collect();
    let b: BTreeSet<i64> = coords.iter().map(|c| c.1).collect();
    for &x in &a {
        for &y in &b {
            if !coords.contains(&(x, y)) {
                return Ok(RectangleOutcome::CounterexampleWitness { basis: (d1, d2), missing: (x, y) });
            }
        }
    }
    let frame_index = u.cross(v).abs();
    Ok(RectangleOutcome::IsRectangle { a, b, basis: (d1, d2), frame_index, unimodular: frame_index == 1 })
}

/// The `p` with `|F| = p²`, if there is one.
pub fn prime_square_root(n: usize) -> Option<i64> {
    let r = (n as u64).isqrt() as i64;
    (r * r == n as i64 && is_prime(r)).then_some(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSquareReport {
    pub p: i64,
    pub size: usize,
    /// One report per direction spanned by a pair of points, in angle order.
    pub divisibility: Vec<DivisibilityReport>,
    pub rectangle: RectangleOutcome,
    pub dir: DirectionSet,
    pub order_bound: usize,
    pub conclusion: Option<String>,
}

pub fn prime_square_report(f: &Cluster) -> Result<PrimeSquareReport> {
    let p = prime_square_root(f.len()).ok_or(Error::NotPrimeSquare(f.len()))?;
    let divisibility = f
        .pair_directions()
        .into_iter()
        .map(|d| line_divisibility(f, d, p))
        .collect::<Result<Vec<_>>>()?;
    let rectangle = rectangle_check(f, p)?;
    let dir = dir(f);
    let order_bound = dir.len();
    let conclusion = (rectangle.is_rectangle() && order_bound <= 2).then(|| ORDER_TWO_CONCLUSION.to_string());
    Ok(PrimeSquareReport { p, size: f.len(), divisibility, rectangle, dir, order_bound, conclusion })
}
