//! Configurations `c: Z² → Q`, represented symbolically as finite sums of
//! components that can each be evaluated exactly at any point.
//!
//! Laurent polynomials act by convolution: `(f·c)(p) = Σ_v a_v c(p - v)`, the
//! same convention under which an `F`-tiling `T` satisfies
//! `Σ_{v∈F} 1_T(p - v) = 1`.

mod action;
mod generators;
mod irrational;
mod split;
mod text;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{bezout, direction_of, lcm, Direction, Lattice2, Vec2};
use crate::Rational;

pub use action::{apply_poly, certify_annihilation, find_periods, AnnihilationCertificate};
pub use generators::{random_bit, random_product_config, sturmian_config, STREAM_PHI, STREAM_PSI};
pub use irrational::QuadIrrational;
pub use split::{order2_annihilator, split_order2, CosetClass, SplitResult};
pub use text::Rect;

/// A bi-infinite word indexed by the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaneGenerator {
    /// `values[i mod len]`.
    PeriodicWord(Vec<Rational>),
    /// `overrides[i]`, else `default`.
    ExplicitTable { default: Rational, overrides: BTreeMap<i64, Rational> },
    /// The Sturmian word `s(i) = ⌊(i+1)α⌋ - ⌊iα⌋`.
    SturmianWord(QuadIrrational),
}

impl LaneGenerator {
    pub fn periodic<I: IntoIterator<Item = i128>>(values: I) -> Result<Self> {
        let values: Vec<Rational> = values.into_iter().map(Rational::from).collect();
        if values.is_empty() {
            return Err(Error::ZeroInput("periodic word must be nonempty"));
        }
        Ok(LaneGenerator::PeriodicWord(values))
    }

    pub fn eval(&self, i: i64) -> Rational {
        match self {
            LaneGenerator::PeriodicWord(w) => w[i.rem_euclid(w.len() as i64) as usize],
            LaneGenerator::ExplicitTable { default, overrides } => {
                overrides.get(&i).copied().unwrap_or(*default)
            }
            LaneGenerator::SturmianWord(a) => {
                Rational::from(a.floor_mul(i + 1) - a.floor_mul(i))
            }
        }
    }

    fn period(&self) -> Option<i64> {
        match self {
            LaneGenerator::PeriodicWord(w) => Some(w.len() as i64),
            _ => None,
        }
    }
}

/// A configuration invariant under a nonzero period `g = k·h`, `h` primitive.
///
/// Points are indexed by the transversal coordinate `t(p) = ⟨p, n⟩`, with `n`
/// the canonical normal of `h`, and the phase `s(p) mod k` along `h`, where
/// `s(p) = ⟨p, (x0, y0)⟩` for Bezout data `h.x·x0 + h.y·y0 = 1`. The value at
/// `p` is `lanes[s(p) mod k](t(p))`. For a vertical period `(0,1)` this is
/// simply `lanes[0](x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePeriodic {
    period: Vec2,
    lanes: Vec<LaneGenerator>,
    normal: Vec2,
    phase: Vec2,
}

impl OnePeriodic {
    pub fn new(period: Vec2, lanes: Vec<LaneGenerator>) -> Result<Self> {
        let h = direction_of(period)?;
        let k = period.x.abs().max(period.y.abs()) / h.dx().abs().max(h.dy().abs());
        if lanes.len() as i64 != k {
            return Err(Error::InvalidLattice(format!(
                "period {period} has multiplicity {k} but {} lanes were given",
                lanes.len()
            )));
        }
        let (_, x0, y0) = bezout(h.dx(), h.dy())?;
        Ok(OnePeriodic { period, lanes, normal: h.normal().vector(), phase: Vec2::new(x0, y0) })
    }

    /// Single-lane configuration with primitive period.
    pub fn simple(period: Vec2, lane: LaneGenerator) -> Result<Self> {
        Self::new(period, vec![lane])
    }

    pub fn period(&self) -> Vec2 {
        self.period
    }

    pub fn direction(&self) -> Direction {
        direction_of(self.period).expect("nonzero period")
    }

    pub fn lanes(&self) -> &[LaneGenerator] {
        &self.lanes
    }

    pub fn eval(&self, p: Vec2) -> Rational {
        let k = self.lanes.len() as i64;
        let s = p.dot(self.phase).rem_euclid(k) as usize;
        self.lanes[s].eval(p.dot(self.normal))
    }

    fn period_box(&self) -> Option<(i64, i64)> {
        let mut len = 1;
        for lane in &self.lanes {
            len = lcm(len, lane.period()?);
        }
        let p = lcm(len, self.lanes.len() as i64);
        Some((p, p))
    }
}

/// Configurations given by a closed-form rule at every point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointRule {
    /// `⌊(i+j)α⌋ - ⌊iα⌋ - ⌊jα⌋`, a binary configuration of order 3.
    SturmianDiff(QuadIrrational),
    /// `φ(i) + ψ(j)` for seeded pseudo-random bits `φ, ψ`; values in {0,1,2}.
    RandomProduct { seed: i64 },
}

impl PointRule {
    pub fn eval(&self, p: Vec2) -> Rational {
        match *self {
            PointRule::SturmianDiff(a) => {
                Rational::from(a.floor_mul(p.x + p.y) - a.floor_mul(p.x) - a.floor_mul(p.y))
            }
            PointRule::RandomProduct { seed } => Rational::from(
                random_bit(seed, STREAM_PHI, p.x) as i128 + random_bit(seed, STREAM_PSI, p.y) as i128,
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    FiniteSupport(BTreeMap<Vec2, Rational>),
    /// Values keyed by coset representative in the lattice's fundamental domain.
    Biperiodic { lattice: Lattice2, table: BTreeMap<Vec2, Rational> },
    OnePeriodic(OnePeriodic),
    PointRule(PointRule),
    /// `base` on the residue classes `cosets` of `modulus·Z²`, zero elsewhere.
    CosetRestriction { modulus: i64, cosets: BTreeSet<Vec2>, base: Box<Configuration> },
}

impl Component {
    pub fn eval(&self, p: Vec2) -> Rational {
        match self {
            Component::FiniteSupport(m) => m.get(&p).copied().unwrap_or_else(Rational::zero),
            Component::Biperiodic { lattice, table } => {
                table.get(&lattice.reduce(p)).copied().unwrap_or_else(Rational::zero)
            }
            Component::OnePeriodic(o) => o.eval(p),
            Component::PointRule(r) => r.eval(p),
            Component::CosetRestriction { modulus, cosets, base } => {
                let key = Vec2::new(p.x.rem_euclid(*modulus), p.y.rem_euclid(*modulus));
                if cosets.contains(&key) {
                    base.eval(p)
                } else {
                    Rational::zero()
                }
            }
        }
    }

    /// `(Px, Py)` with the component invariant under `Px·e1` and `Py·e2`, for
    /// components that are fully periodic.
    fn period_box(&self) -> Option<(i64, i64)> {
        match self {
            Component::Biperiodic { lattice, .. } => Some((lattice.x_period(), lattice.y_period())),
            Component::OnePeriodic(o) => o.period_box(),
            Component::CosetRestriction { modulus, base, .. } => {
                let (px, py) = base.period_box()?;
                Some((lcm(px, *modulus), lcm(py, *modulus)))
            }
            Component::FiniteSupport(_) | Component::PointRule(_) => None,
        }
    }
}

/// A finite sum of components; its value at `p` is the sum of theirs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Configuration {
    components: Vec<Component>,
}

impl Configuration {
    pub fn new(components: Vec<Component>) -> Self {
        Configuration { components }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn push(&mut self, c: Component) {
        self.components.push(c);
    }

    pub fn plus(mut self, other: Configuration) -> Self {
        self.components.extend(other.components);
        self
    }

    pub fn eval(&self, p: Vec2) -> Rational {
        self.components.iter().map(|c| c.eval(p)).sum()
    }

    pub fn finite<I: IntoIterator<Item = (Vec2, Rational)>>(values: I) -> Self {
        let map = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Self::new(vec![Component::FiniteSupport(map)])
    }

    /// A biperiodic configuration; table keys are reduced into the
    /// fundamental domain (later entries overwrite earlier ones).
    pub fn biperiodic<I: IntoIterator<Item = (Vec2, Rational)>>(lattice: Lattice2, values: I) -> Self {
        let table = values
            .into_iter()
            .map(|(p, v)| (lattice.reduce(p), v))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self::new(vec![Component::Biperiodic { lattice, table }])
    }

    pub fn constant(v: Rational) -> Self {
        Self::biperiodic(Lattice2::square(1).unwrap(), [(Vec2::ZERO, v)])
    }

    pub fn one_periodic(o: OnePeriodic) -> Self {
        Self::new(vec![Component::OnePeriodic(o)])
    }

    pub fn point_rule(r: PointRule) -> Self {
        Self::new(vec![Component::PointRule(r)])
    }

    pub fn restricted(self, modulus: i64, cosets: BTreeSet<Vec2>) -> Self {
        Self::new(vec![Component::CosetRestriction { modulus, cosets, base: Box::new(self) }])
    }

    /// `c(x, y) = x mod 2`: vertical stripes.
    pub fn x_parity_stripes() -> Self {
        Self::one_periodic(
            OnePeriodic::simple(Vec2::E2, LaneGenerator::periodic([0, 1]).unwrap()).unwrap(),
        )
    }

    /// Common period box of the fully periodic components, if every
    /// component is fully periodic.
    pub fn period_box(&self) -> Option<(i64, i64)> {
        self.components.iter().try_fold((1, 1), |(px, py), c| {
            let (a, b) = c.period_box()?;
            Some((lcm(px, a), lcm(py, b)))
        })
    }

    /// Splits into (fully periodic components, finitely supported components,
    /// everything else).
    fn partition(&self) -> (Configuration, Configuration, bool) {
        let mut periodic = Configuration::zero();
        let mut finite = Configuration::zero();
        let mut other = false;
        for c in &self.components {
            match c {
                Component::FiniteSupport(_) => finite.push(c.clone()),
                c if c.period_box().is_some() => periodic.push(c.clone()),
                _ => other = true,
            }
        }
        (periodic, finite, other)
    }

    /// Points carrying a nonzero value of some finitely supported component.
    fn finite_support(&self) -> BTreeSet<Vec2> {
        let mut out = BTreeSet::new();
        for c in &self.components {
            if let Component::FiniteSupport(m) = c {
                out.extend(m.keys().copied());
            }
        }
        out
    }

    /// First point of `w` (in scan order) where the value is not 0 or 1.
    pub fn first_non_binary(&self, w: &Rect) -> Option<(Vec2, Rational)> {
        w.points()
            .map(|p| (p, self.eval(p)))
            .find(|(_, v)| !(v.is_zero() || v.is_one()))
    }
}

/// Dense values of a configuration on a rectangle, row-major with rows of
/// increasing `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    origin: Vec2,
    width: i64,
    height: i64,
    values: Vec<Rational>,
}

impl Window {
    pub fn new(origin: Vec2, width: i64, height: i64, values: Vec<Rational>) -> Result<Self> {
        if width < 1 || height < 1 || values.len() as i64 != width * height {
            return Err(Error::ZeroInput("window dimensions do not match its values"));
        }
        Ok(Window { origin, width, height, values })
    }

    pub fn sample(c: &Configuration, rect: &Rect) -> Self {
        Window {
            origin: rect.min(),
            width: rect.width(),
            height: rect.height(),
            values: rect.points().map(|p| c.eval(p)).collect(),
        }
    }

    pub fn origin(&self) -> Vec2 {
        self.origin
    }

    pub fn width(&self) -> i64 {
        self.width
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn rect(&self) -> Rect {
        Rect::new(
            self.origin.x,
            self.origin.y,
            self.origin.x + self.width - 1,
            self.origin.y + self.height - 1,
        )
        .expect("nonempty window")
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, p: Vec2) -> Option<Rational> {
        let (dx, dy) = (p.x - self.origin.x, p.y - self.origin.y);
        if dx < 0 || dy < 0 || dx >= self.width || dy >= self.height {
            return None;
        }
        Some(self.values[(dy * self.width + dx) as usize])
    }

    /// Nonzero entries with their points, in scan order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec2, Rational)> + '_ {
        self.rect().points().zip(self.values.iter().copied()).filter(|(_, v)| !v.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}
