//! Sparse Laurent polynomials.
//!
//! [`LaurentPoly2`] is an element of `Q[x^±, y^±]`, written `Σ a_v U^v` with
//! `U^v = x^{v.x} y^{v.y}`. It acts on configurations by convolution, see
//! [`crate::config`]. [`LaurentPoly1`] is an integer Laurent polynomial in one
//! variable `z`, used for cyclotomic divisibility along lines of a cluster.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::dirset::{dir, parse_ints, strip_comment, Cluster};
use crate::error::{Error, Result};
use crate::lattice::{direction_of, Direction, Vec2};
use crate::Rational;

/// A two-variable Laurent polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<Vec2, Rational>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec2::ZERO, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Vec2::ZERO, c)
    }

    /// `c · U^v`.
    pub fn monomial(v: Vec2, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(v, c);
        }
        LaurentPoly2 { terms }
    }

    /// `U^v - 1`.
    pub fn unit_difference(v: Vec2) -> Self {
        &Self::monomial(v, Rational::one()) - &Self::one()
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec2, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (v, c) in terms {
            p.add_term(v, c);
        }
        p
    }

    /// `Σ_{a ∈ F} U^{-a}`, whose action sums `c` over the translate `p + F`.
    pub fn tile_polynomial(f: &Cluster) -> Self {
        Self::from_terms(f.iter().map(|a| (-a, Rational::one())))
    }

    fn add_term(&mut self, v: Vec2, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(v).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: Vec2) -> Rational {
        self.terms.get(&v).copied().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec2, Rational)> + '_ {
        self.terms.iter().map(|(&v, &c)| (v, c))
    }

    pub fn support(&self) -> BTreeSet<Vec2> {
        self.terms.keys().copied().collect()
    }

    pub fn support_cluster(&self) -> Result<Cluster> {
        if self.is_zero() {
            return Err(Error::ZeroInput("support of the zero polynomial"));
        }
        Cluster::new(self.terms.keys().copied())
    }

    /// Multiplication by `U^v`.
    pub fn shift(&self, v: Vec2) -> Self {
        LaurentPoly2 { terms: self.terms.iter().map(|(&e, &c)| (e + v, c)).collect() }
    }

    pub fn scale(&self, k: Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly2 { terms: self.terms.iter().map(|(&e, &c)| (e, c * k)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The direction `v` if `self` is a line polynomial `Σ a_i U^{i v}` with at
    /// least two terms. Monomials lie on every line and yield `None`.
    pub fn is_line_polynomial(&self) -> Result<Option<Direction>> {
        let mut exps = self.terms.keys().copied();
        let base = exps.next().ok_or(Error::ZeroInput("line test of the zero polynomial"))?;
        let mut dir: Option<Direction> = None;
        for e in exps {
            let d = direction_of(e - base).expect("distinct exponents");
            match dir {
                None => dir = Some(d),
                Some(prev) if prev != d => return Ok(None),
                _ => {}
            }
        }
        // Collinear with each other is not enough: the line must pass through
        // the origin.
        match dir {
            Some(d) if base.is_zero() || d.contains(base) => Ok(Some(d)),
            _ => Ok(None),
        }
    }

    /// Parses the polynomial text format: one `coeff x_exp y_exp` term per
    /// line, coefficients integer or `a/b`. Repeated exponents accumulate.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Self::zero();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let coeff = toks.next().unwrap();
            let c: Rational = coeff
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("`{coeff}` is not a rational")))?;
            let rest: Vec<&str> = toks.collect();
            let exps = parse_ints(&rest.join(" "), i + 1)?;
            if exps.len() != 2 {
                return Err(Error::parse(i + 1, format!("expected `coeff x y`, got `{line}`")));
            }
            p.add_term(Vec2::new(exps[0], exps[1]), c);
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        self.terms.iter().map(|(v, c)| format!("{c} {} {}\n", v.x, v.y)).collect()
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (v, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -*c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if v.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "U^{v}")?;
            } else {
                write!(f, "{mag}*U^{v}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (v, c) in rhs.terms() {
            out.add_term(v, c);
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (v, c) in rhs.terms() {
            out.add_term(v, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u + v, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        self.scale(-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $m(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// `f - U^v f`. If `f` annihilates `c` up to a constant (`f·c ≡ k`), this
/// annihilates `c` outright.
pub fn difference_annihilator(f: &LaurentPoly2, v: Vec2) -> Result<LaurentPoly2> {
    if v.is_zero() {
        return Err(Error::ZeroInput("difference annihilator with zero shift"));
    }
    Ok(f - &f.shift(v))
}

/// `Π_{v ∈ supp f, v ≠ v0} (U^{n0 (v - v0)} - 1)`.
///
/// Some positive `n0` depending only on `f` makes this an annihilator of every
/// finitary integral configuration annihilated by `f`. No procedure for `n0`
/// is known in general, so callers pick it and certify the product.
pub fn product_annihilator(f: &LaurentPoly2, v0: Vec2, n0: i64) -> Result<LaurentPoly2> {
    if n0 < 1 {
        return Err(Error::ZeroInput("product annihilator needs n0 >= 1"));
    }
    if f.coeff(v0).is_zero() {
        return Err(Error::NotInSupport(v0));
    }
    if f.len() < 2 {
        return Err(Error::ZeroInput("product annihilator of a monomial"));
    }
    Ok(f.support()
        .into_iter()
        .filter(|&v| v != v0)
        .fold(LaurentPoly2::one(), |acc, v| &acc * &LaurentPoly2::unit_difference((v - v0).scale(n0))))
}

/// Whether `v` separates `F` from its translate in a way that drops `d` from
/// the direction set of `supp(f - U^v f)`, `f = Σ_{a∈F} U^{-a}`.
pub fn is_separating_shift(f: &Cluster, d: Direction, v: Vec2) -> bool {
    if v.is_zero() || d.contains(v) {
        return false;
    }
    if f.iter().any(|p| f.contains(p + v)) {
        return false;
    }
    let fv = difference_annihilator(&LaurentPoly2::tile_polynomial(f), v).expect("v != 0");
    let support = fv.support_cluster().expect("disjoint translates cannot cancel");
    !dir(&support).contains(d)
}

/// Finds a shift `v` with `is_separating_shift(F, d, v)`, searching ∞-norm
/// rings of increasing radius. Requires `d ∉ dir(F)`.
pub fn separated_shift(f: &Cluster, d: Direction) -> Result<Vec2> {
    if dir(f).contains(d) {
        return Err(Error::DirectionInSet(d));
    }
    // A shift with |d × v| beyond the spread of line indices of F and ∞-norm
    // beyond the diameter always works, so the search terminates by then.
    let spread = {
        let idx: Vec<i64> = f.iter().map(|p| d.line_index(p)).collect();
        idx.iter().max().unwrap() - idx.iter().min().unwrap()
    };
    let limit = (f.diameter() + 1).max(spread + 1) * (d.dx().abs() + d.dy().abs() + 1);
    for n in 1..=limit {
        let mut ring: Vec<Vec2> = (-n..=n)
            .flat_map(|x| (-n..=n).map(move |y| Vec2::new(x, y)))
            .filter(|v| v.norm_inf() == n)
            .collect();
        ring.sort_by_key(|v| (v.x.abs() + v.y.abs(), -v.y, v.x));
        if let Some(v) = ring.into_iter().find(|&v| is_separating_shift(f, d, v)) {
            return Ok(v);
        }
    }
    unreachable!("a separating shift exists within the search radius")
}

/// A one-variable Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i64, i128>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: i64, c: i128) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i128)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `Σ_e z^e` over the given exponents (with multiplicity).
    pub fn from_exponents<I: IntoIterator<Item = i64>>(exps: I) -> Self {
        Self::from_terms(exps.into_iter().map(|e| (e, 1)))
    }

    fn add_term(&mut self, e: i64, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i128 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, zero for the zero polynomial.
    pub fn spread(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn eval_at_one(&self) -> i128 {
        self.terms.values().sum()
    }

    /// Dense coefficients after dividing out the lowest power of `z`.
    fn normalized(&self) -> Vec<i128> {
        let Some(lo) = self.min_exp() else { return Vec::new() };
        let mut dense = vec![0; (self.spread() + 1) as usize];
        for (e, c) in self.terms() {
            dense[(e - lo) as usize] = c;
        }
        dense
    }
}

impl Add for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Mul for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match (e, c) {
                (0, c) => format!("{c}"),
                (e, 1) => format!("z^{e}"),
                (e, c) => format!("{c}*z^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// `Φ_{p^m}(z) = Φ_p(z^{p^{m-1}}) = Σ_{i<p} z^{i p^{m-1}}`.
pub fn cyclotomic_pm(p: i64, m: u32) -> Result<LaurentPoly1> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroInput("cyclotomic level m must be >= 1"));
    }
    let step = p.pow(m - 1);
    Ok(LaurentPoly1::from_exponents((0..p).map(|i| i * step)))
}

/// Whether `f = d·q` for some integer Laurent polynomial `q`.
pub fn divides_1var(d: &LaurentPoly1, f: &LaurentPoly1) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::ZeroInput("division by the zero polynomial"));
    }
    if f.is_zero() {
        return Ok(true);
    }
    // Powers of z are units, so both sides reduce to ordinary polynomials with
    // nonzero constant term.
    let den = d.normalized();
    let mut rem = f.normalized();
    if rem.len() < den.len() {
        return Ok(false);
    }
    let lead = *den.last().unwrap();
    for shift in (0..=rem.len() - den.len()).rev() {
        let top = rem[shift + den.len() - 1];
        if top == 0 {
            continue;
        }
        if top % lead != 0 {
            return Ok(false);
        }
        let q = top / lead;
        for (i, &c) in den.iter().enumerate() {
            rem[shift + i] -= q * c;
        }
    }
    Ok(rem.iter().all(|&c| c == 0))
}
