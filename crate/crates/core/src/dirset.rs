//! Clusters (finite subsets of Z²), their direction sets, and the order upper
//! bounds that follow from them.
//!
//! For a finite set `S` and `v ∈ S`, `dir_S(v)` is the set of lines through the
//! origin parallel to `p - v` for `p ∈ S \ {v}`; the direction set `dir(S)` is
//! the intersection of all `dir_S(v)`. Equivalently, a line belongs to `dir(S)`
//! iff every parallel translate meets `S` in zero or at least two points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{direction_of, Direction, Vec2};
use crate::poly::LaurentPoly2;

/// A nonempty finite subset of Z².
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cluster {
    points: BTreeSet<Vec2>,
}

impl Cluster {
    pub fn new<I: IntoIterator<Item = Vec2>>(points: I) -> Result<Self> {
        let points: BTreeSet<Vec2> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptyCluster);
        }
        Ok(Cluster { points })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Vec2::new(x, y)))
    }

    pub fn points(&self) -> &BTreeSet<Vec2> {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.points.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.points.contains(&p)
    }

    pub fn translate(&self, t: Vec2) -> Cluster {
        Cluster { points: self.iter().map(|p| p + t).collect() }
    }

    pub fn map(&self, f: impl Fn(Vec2) -> Vec2) -> Cluster {
        Cluster { points: self.iter().map(f).collect() }
    }

    /// Lower-left corner of the bounding box.
    pub fn min_corner(&self) -> Vec2 {
        let x = self.iter().map(|p| p.x).min().unwrap();
        let y = self.iter().map(|p| p.y).min().unwrap();
        Vec2::new(x, y)
    }

    pub fn max_corner(&self) -> Vec2 {
        let x = self.iter().map(|p| p.x).max().unwrap();
        let y = self.iter().map(|p| p.y).max().unwrap();
        Vec2::new(x, y)
    }

    /// The translate whose bounding box has its lower-left corner at the origin.
    pub fn canonical(&self) -> Cluster {
        self.translate(-self.min_corner())
    }

    /// Largest ∞-norm distance between two points of the cluster.
    pub fn diameter(&self) -> i64 {
        let (lo, hi) = (self.min_corner(), self.max_corner());
        (hi - lo).norm_inf()
    }

    /// Directions spanned by pairs of distinct points, in angle order.
    pub fn pair_directions(&self) -> BTreeSet<Direction> {
        let pts: Vec<Vec2> = self.iter().collect();
        let mut out = BTreeSet::new();
        for (i, &p) in pts.iter().enumerate() {
            for &q in &pts[i + 1..] {
                out.insert(direction_of(q - p).expect("distinct points"));
            }
        }
        out
    }

    /// Number of points on each line parallel to `d`, keyed by line index.
    pub fn line_counts(&self, d: Direction) -> BTreeMap<i64, usize> {
        let mut counts = BTreeMap::new();
        for p in self.iter() {
            *counts.entry(d.line_index(p)).or_insert(0) += 1;
        }
        counts
    }

    /// Parses the cluster text format: one `x y` pair per line; blank lines
    /// and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let nums = parse_ints(line, i + 1)?;
            if nums.len() != 2 {
                return Err(Error::parse(i + 1, format!("expected `x y`, got `{line}`")));
            }
            points.insert(Vec2::new(nums[0], nums[1]));
        }
        if points.is_empty() {
            return Err(Error::parse(0, "cluster file contains no points"));
        }
        Ok(Cluster { points })
    }

    pub fn to_text(&self) -> String {
        self.iter().map(|p| format!("{} {}\n", p.x, p.y)).collect()
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub(crate) fn parse_ints(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::parse(lineno, format!("`{tok}` is not an integer")))
        })
        .collect()
}

/// A finite set of canonical directions, ordered by angle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionSet(pub BTreeSet<Direction>);

impl DirectionSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, d: Direction) -> bool {
        self.0.contains(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = Direction> + '_ {
        self.0.iter().copied()
    }

    pub fn intersection(&self, other: &DirectionSet) -> DirectionSet {
        DirectionSet(self.0.intersection(&other.0).copied().collect())
    }
}

impl fmt::Display for DirectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(none)");
        }
        let parts: Vec<String> = self.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `dir_S(v)`: directions from `v` to the other points of `S`.
pub fn dir_at(s: &Cluster, v: Vec2) -> Result<DirectionSet> {
    if !s.contains(v) {
        return Err(Error::NotInSupport(v));
    }
    Ok(DirectionSet(
        s.iter()
            .filter(|&p| p != v)
            .map(|p| direction_of(p - v).expect("p != v"))
            .collect(),
    ))
}

/// The direction set `dir(S) = ⋂_{v ∈ S} dir_S(v)`.
pub fn dir(s: &Cluster) -> DirectionSet {
    let mut points = s.iter();
    let first = points.next().expect("clusters are nonempty");
    let mut acc = dir_at(s, first).expect("member point");
    for v in points {
        if acc.is_empty() {
            break;
        }
        acc = acc.intersection(&dir_at(s, v).expect("member point"));
    }
    acc
}

/// Upper bound `|dir(F)|` on the order of any `F`-tiling.
pub fn order_bound_tiling(f: &Cluster) -> usize {
    dir(f).len()
}

/// `⋂_f dir(supp f)` over a finite family of annihilators.
pub fn annihilator_directions(polys: &[LaurentPoly2]) -> Result<DirectionSet> {
    let (first, rest) = polys.split_first().ok_or(Error::EmptyFamily)?;
    let mut acc = dir(&first.support_cluster()?);
    for f in rest {
        acc = acc.intersection(&dir(&f.support_cluster()?));
    }
    Ok(acc)
}

/// Order bound from a finite family of annihilators of one configuration.
///
/// The true bound intersects over the whole annihilator ideal; any finite
/// subfamily yields a superset of that intersection and hence a weaker but
/// still valid bound.
pub fn annihilator_direction_bound(polys: &[LaurentPoly2]) -> Result<usize> {
    annihilator_directions(polys).map(|d| d.len())
}

/// Representative coordinates for the clusters drawn in the literature on
/// tilings of low order.
pub mod fixtures {
    use super::Cluster;

    /// `{(0,0),(1,0),(0,1)}`.
    pub fn l_tromino() -> Cluster {
        Cluster::from_coords(&[(0, 0), (1, 0), (0, 1)]).unwrap()
    }

    /// Centre and its four axis neighbours.
    pub fn plus() -> Cluster {
        Cluster::from_coords(&[(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]).unwrap()
    }

    /// The 4×4 square with its four corners removed (12 points).
    pub fn octagon() -> Cluster {
        let pts = (0..4)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .filter(|&(x, y)| !((x == 0 || x == 3) && (y == 0 || y == 3)))
            .map(|(x, y)| crate::Vec2::new(x, y));
        Cluster::new(pts).unwrap()
    }

    pub fn rectangle(w: i64, h: i64) -> Cluster {
        Cluster::new((0..w).flat_map(|x| (0..h).map(move |y| crate::Vec2::new(x, y)))).unwrap()
    }

    pub fn domino() -> Cluster {
        rectangle(2, 1)
    }

    /// `{(0,0),(1,0),(1,1),(2,1)}`.
    pub fn skew_tetromino() -> Cluster {
        Cluster::from_coords(&[(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap()
    }
}
