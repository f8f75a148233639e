//! Text formats for configurations and window dumps.
//!
//! Configuration files are line oriented. Each component is a block
//! opened by `component <kind>` and closed by `end`; `#` starts a comment.
//!
//! ```text
//! component finite
//!   point 0 0 1
//! end
//! component biperiodic
//!   lattice 2 1 2          # HNF basis (2,0),(1,2)
//!   value 1 0 1/2          # coset representative and value
//! end
//! component one_periodic
//!   period 0 2
//!   lane periodic 1 0      # one lane per phase along the period
//!   lane table 0 3=1 -4=1  # default, then index=value overrides
//! end
//! component one_periodic
//!   period 1 0
//!   lane sturmian -1 1 2 1 # (p + q*sqrt(d))/r
//! end
//! component sturmian_diff
//!   alpha 0 1 2 1
//! end
//! component random_product
//!   seed 7
//! end
//! component coset_restriction
//!   modulus 2
//!   coset 0 0
//!   component sturmian_diff  # nested components form the base
//!     alpha 1 1 5 2
//!   end
//! end
//! ```
//!
//! Window dumps start with `window X0 Y0 WIDTH HEIGHT`, followed by one line
//! per row (increasing `y`) of space-separated exact values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Component, Configuration, LaneGenerator, OnePeriodic, PointRule, QuadIrrational, Window};
use crate::dirset::strip_comment;
use crate::error::{Error, Result};
use crate::lattice::{Lattice2, Vec2};
use crate::Rational;

/// An axis-aligned rectangle `[x0, x1] × [y0, y1]`, bounds inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl Rect {
    pub fn new(x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Self> {
        if x1 < x0 || y1 < y0 {
            return Err(Error::ZeroInput("empty rectangle"));
        }
        Ok(Rect { x0, y0, x1, y1 })
    }

    /// `[-r, r]²`.
    pub fn centered(r: i64) -> Self {
        Rect::new(-r, -r, r, r).expect("r >= 0")
    }

    pub fn min(&self) -> Vec2 {
        Vec2::new(self.x0, self.y0)
    }

    pub fn width(&self) -> i64 {
        self.x1 - self.x0 + 1
    }

    pub fn height(&self) -> i64 {
        self.y1 - self.y0 + 1
    }

    pub fn contains(&self, p: Vec2) -> bool {
        (self.x0..=self.x1).contains(&p.x) && (self.y0..=self.y1).contains(&p.y)
    }

    /// Row-major scan: `y` outer, `x` inner, both increasing.
    pub fn points(&self) -> impl Iterator<Item = Vec2> {
        let r = *self;
        (r.y0..=r.y1).flat_map(move |y| (r.x0..=r.x1).map(move |x| Vec2::new(x, y)))
    }

    /// Minkowski sum with the bounding box of `pts`.
    pub(crate) fn expand(&self, lo: Vec2, hi: Vec2) -> Rect {
        Rect { x0: self.x0 + lo.x, y0: self.y0 + lo.y, x1: self.x1 + hi.x, y1: self.y1 + hi.y }
    }
}

impl std::fmt::Display for Rect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x0, self.x1, self.y0, self.y1)
    }
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l)))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let (n, l) = *self.lines.get(self.pos)?;
        self.pos += 1;
        Some((n, l.split_whitespace().collect()))
    }
}

fn int(tok: &str, line: usize) -> Result<i64> {
    tok.parse().map_err(|_| Error::parse(line, format!("`{tok}` is not an integer")))
}

fn rat(tok: &str, line: usize) -> Result<Rational> {
    tok.parse().map_err(|_| Error::parse(line, format!("`{tok}` is not a rational")))
}

fn args<const N: usize>(toks: &[&str], line: usize) -> Result<[i64; N]> {
    if toks.len() != N + 1 {
        return Err(Error::parse(line, format!("`{}` expects {N} integers", toks[0])));
    }
    let mut out = [0; N];
    for (o, t) in out.iter_mut().zip(&toks[1..]) {
        *o = int(t, line)?;
    }
    Ok(out)
}

fn irrational(toks: &[&str], line: usize) -> Result<QuadIrrational> {
    let [p, q, d, r] = args::<4>(toks, line)?;
    QuadIrrational::new(p, q, d, r).map_err(|e| Error::parse(line, e.to_string()))
}

fn parse_lane(toks: &[&str], line: usize) -> Result<LaneGenerator> {
    match toks.get(1).copied() {
        Some("periodic") => {
            let values = toks[2..].iter().map(|t| rat(t, line)).collect::<Result<Vec<_>>>()?;
            if values.is_empty() {
                return Err(Error::parse(line, "periodic lane needs at least one value"));
            }
            Ok(LaneGenerator::PeriodicWord(values))
        }
        Some("table") => {
            let default = rat(toks.get(2).ok_or_else(|| Error::parse(line, "missing default"))?, line)?;
            let overrides = toks[3..]
                .iter()
                .map(|t| {
                    let (i, v) = t
                        .split_once('=')
                        .ok_or_else(|| Error::parse(line, format!("`{t}` is not index=value")))?;
                    Ok((int(i, line)?, rat(v, line)?))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            Ok(LaneGenerator::ExplicitTable { default, overrides })
        }
        Some("sturmian") => Ok(LaneGenerator::SturmianWord(irrational(&toks[1..], line)?)),
        other => Err(Error::parse(line, format!("unknown lane kind {other:?}"))),
    }
}

fn parse_block(lines: &mut Lines<'_>, kind: &str, start: usize) -> Result<Component> {
    let mut points = BTreeMap::new();
    let mut lattice = None;
    let mut values = Vec::new();
    let mut period = None;
    let mut lanes = Vec::new();
    let mut alpha = None;
    let mut seed = None;
    let mut modulus = None;
    let mut cosets = BTreeSet::new();
    let mut nested = Vec::new();
    loop {
        let (n, toks) = lines
            .next()
            .ok_or_else(|| Error::parse(start, format!("component `{kind}` is missing `end`")))?;
        match (kind, toks[0]) {
            (_, "end") => break,
            ("finite", "point") => {
                if toks.len() != 4 {
                    return Err(Error::parse(n, "`point` expects x y value"));
                }
                let v = rat(toks[3], n)?;
                points.insert(Vec2::new(int(toks[1], n)?, int(toks[2], n)?), v);
            }
            ("biperiodic", "lattice") => {
                let [a, c, b] = args::<3>(&toks, n)?;
                lattice = Some(Lattice2::hnf(a, c, b).map_err(|e| Error::parse(n, e.to_string()))?);
            }
            ("biperiodic", "value") => {
                if toks.len() != 4 {
                    return Err(Error::parse(n, "`value` expects x y value"));
                }
                values.push((Vec2::new(int(toks[1], n)?, int(toks[2], n)?), rat(toks[3], n)?));
            }
            ("one_periodic", "period") => {
                let [x, y] = args::<2>(&toks, n)?;
                period = Some(Vec2::new(x, y));
            }
            ("one_periodic", "lane") => lanes.push(parse_lane(&toks, n)?),
            ("sturmian_diff", "alpha") => alpha = Some(irrational(&toks, n)?),
            ("random_product", "seed") => seed = Some(args::<1>(&toks, n)?[0]),
            ("coset_restriction", "modulus") => {
                let [m] = args::<1>(&toks, n)?;
                if m < 1 {
                    return Err(Error::parse(n, "modulus must be positive"));
                }
                modulus = Some(m);
            }
            ("coset_restriction", "coset") => {
                let [x, y] = args::<2>(&toks, n)?;
                cosets.insert(Vec2::new(x, y));
            }
            ("coset_restriction", "component") => {
                let inner = toks.get(1).ok_or_else(|| Error::parse(n, "missing component kind"))?;
                nested.push(parse_block(lines, inner, n)?);
            }
            (k, key) => return Err(Error::parse(n, format!("unexpected `{key}` in component `{k}`"))),
        }
    }
    let missing = |what: &str| Error::parse(start, format!("component `{kind}` is missing `{what}`"));
    Ok(match kind {
        "finite" => Component::FiniteSupport(points.into_iter().filter(|(_, v)| *v != Rational::from(0)).collect()),
        "biperiodic" => {
            let lattice = lattice.ok_or_else(|| missing("lattice"))?;
            match Configuration::biperiodic(lattice, values).components.pop() {
                Some(c) => c,
                None => unreachable!(),
            }
        }
        "one_periodic" => {
            let period = period.ok_or_else(|| missing("period"))?;
            Component::OnePeriodic(OnePeriodic::new(period, lanes).map_err(|e| Error::parse(start, e.to_string()))?)
        }
        "sturmian_diff" => Component::PointRule(PointRule::SturmianDiff(alpha.ok_or_else(|| missing("alpha"))?)),
        "random_product" => Component::PointRule(PointRule::RandomProduct { seed: seed.ok_or_else(|| missing("seed"))? }),
        "coset_restriction" => {
            let modulus = modulus.ok_or_else(|| missing("modulus"))?;
            if let Some(bad) = cosets.iter().find(|c| !(0..modulus).contains(&c.x) || !(0..modulus).contains(&c.y)) {
                return Err(Error::parse(start, format!("coset {bad} is not reduced mod {modulus}")));
            }
            Component::CosetRestriction { modulus, cosets, base: Box::new(Configuration::new(nested)) }
        }
        other => return Err(Error::parse(start, format!("unknown component kind `{other}`"))),
    })
}

fn write_lane(out: &mut String, indent: &str, lane: &LaneGenerator) {
    match lane {
        LaneGenerator::PeriodicWord(w) => {
            let vals: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{indent}lane periodic {}", vals.join(" "));
        }
        LaneGenerator::ExplicitTable { default, overrides } => {
            let _ = write!(out, "{indent}lane table {default}");
            for (i, v) in overrides {
                let _ = write!(out, " {i}={v}");
            }
            out.push('\n');
        }
        LaneGenerator::SturmianWord(a) => {
            let (p, q, d, r) = a.parts();
            let _ = writeln!(out, "{indent}lane sturmian {p} {q} {d} {r}");
        }
    }
}

fn write_component(out: &mut String, depth: usize, c: &Component) {
    let indent = "  ".repeat(depth);
    let inner = "  ".repeat(depth + 1);
    match c {
        Component::FiniteSupport(m) => {
            let _ = writeln!(out, "{indent}component finite");
            for (p, v) in m {
                let _ = writeln!(out, "{inner}point {} {} {v}", p.x, p.y);
            }
        }
        Component::Biperiodic { lattice, table } => {
            let (u, v) = lattice.basis();
            let _ = writeln!(out, "{indent}component biperiodic");
            let _ = writeln!(out, "{inner}lattice {} {} {}", u.x, v.x, v.y);
            for (p, val) in table {
                let _ = writeln!(out, "{inner}value {} {} {val}", p.x, p.y);
            }
        }
        Component::OnePeriodic(o) => {
            let _ = writeln!(out, "{indent}component one_periodic");
            let _ = writeln!(out, "{inner}period {} {}", o.period().x, o.period().y);
            for lane in o.lanes() {
                write_lane(out, &inner, lane);
            }
        }
        Component::PointRule(PointRule::SturmianDiff(a)) => {
            let (p, q, d, r) = a.parts();
            let _ = writeln!(out, "{indent}component sturmian_diff");
            let _ = writeln!(out, "{inner}alpha {p} {q} {d} {r}");
        }
        Component::PointRule(PointRule::RandomProduct { seed }) => {
            let _ = writeln!(out, "{indent}component random_product");
            let _ = writeln!(out, "{inner}seed {seed}");
        }
        Component::CosetRestriction { modulus, cosets, base } => {
            let _ = writeln!(out, "{indent}component coset_restriction");
            let _ = writeln!(out, "{inner}modulus {modulus}");
            for k in cosets {
                let _ = writeln!(out, "{inner}coset {} {}", k.x, k.y);
            }
            for b in base.components() {
                write_component(out, depth + 1, b);
            }
        }
    }
    let _ = writeln!(out, "{indent}end");
}

impl Configuration {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let mut components = Vec::new();
        while let Some((n, toks)) = lines.next() {
            match (toks[0], toks.get(1)) {
                ("component", Some(kind)) => components.push(parse_block(&mut lines, kind, n)?),
                _ => return Err(Error::parse(n, format!("expected `component <kind>`, got `{}`", toks.join(" ")))),
            }
        }
        Ok(Configuration::new(components))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# latcfg configuration\n");
        for c in &self.components {
            write_component(&mut out, 0, c);
        }
        out
    }
}

impl Window {
    pub fn to_text(&self) -> String {
        let mut out = format!("window {} {} {} {}\n", self.origin.x, self.origin.y, self.width, self.height);
        for row in self.values.chunks(self.width as usize) {
            let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&vals.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (n, head) = lines.next().ok_or_else(|| Error::parse(1, "empty window dump"))?;
        if head[0] != "window" {
            return Err(Error::parse(n, "expected `window X0 Y0 WIDTH HEIGHT`"));
        }
        let [x0, y0, w, h] = args::<4>(&head, n)?;
        if w < 1 || h < 1 {
            return Err(Error::parse(n, "window dimensions must be positive"));
        }
        let mut values = Vec::with_capacity((w * h) as usize);
        for _ in 0..h {
            let (n, toks) = lines.next().ok_or_else(|| Error::parse(n, "too few rows"))?;
            if toks.len() as i64 != w {
                return Err(Error::parse(n, format!("expected {w} values, got {}", toks.len())));
            }
            for t in toks {
                values.push(rat(t, n)?);
            }
        }
        if let Some((n, _)) = lines.next() {
            return Err(Error::parse(n, "trailing data after the last row"));
        }
        Window::new(Vec2::new(x0, y0), w, h, values)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{random_product_config, sturmian_config};
    use super::*;
    use proptest::prelude::*;

    fn sample_config() -> Configuration {
        let text = include_str!("../../tests/data/everything.cfg");
        Configuration::parse(text).unwrap()
    }

    #[test]
    fn parse_all_component_kinds() {
        let c = sample_config();
        assert_eq!(c.components().len(), 7);
        assert_eq!(Configuration::parse(&c.to_text()).unwrap(), c);
        // printing is a fixed point
        assert_eq!(Configuration::parse(&c.to_text()).unwrap().to_text(), c.to_text());
    }

    #[test]
    fn generated_configs_round_trip() {
        for c in [sturmian_config(QuadIrrational::golden()), random_product_config(-3)] {
            assert_eq!(Configuration::parse(&c.to_text()).unwrap(), c);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = Configuration::parse("component finite\n  point 0 0\nend\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = Configuration::parse("component sturmian_diff\n alpha 0 1 4 1\nend\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = Configuration::parse("component finite\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
        let e = Configuration::parse("\n\nbogus\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = Configuration::parse("component one_periodic\nperiod 0 2\nlane periodic 1\nend\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
    }

    #[test]
    fn window_dump_format() {
        let c = Configuration::x_parity_stripes();
        let w = Window::sample(&c, &Rect::new(0, 0, 2, 1).unwrap());
        assert_eq!(w.to_text(), "window 0 0 3 2\n0 1 0\n0 1 0\n");
        assert!(Window::parse("window 0 0 2 1\n1\n").is_err());
        assert!(Window::parse("window 0 0 1 1\n1\n2\n").is_err());
    }

    proptest! {
        #[test]
        fn window_dump_round_trips(
            x0 in -5i64..5, y0 in -5i64..5, w in 1i64..5, h in 1i64..5,
            vals in prop::collection::vec((-9i128..9, 1i128..5), 25),
        ) {
            let values: Vec<Rational> = vals.iter().take((w * h) as usize).map(|&(a, b)| Rational::new(a, b)).collect();
            let win = Window::new(Vec2::new(x0, y0), w, h, values).unwrap();
            prop_assert_eq!(Window::parse(&win.to_text()).unwrap(), win);
        }
    }
}
