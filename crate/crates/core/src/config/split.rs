use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{certify_annihilation, AnnihilationCertificate, Configuration, Rect, Window};
use crate::error::{Error, Result};
use crate::lattice::Vec2;
use crate::poly::LaurentPoly2;
use crate::Rational;

/// How a coset of `nZ×nZ` was classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetClass {
    /// Invariant under `n·e2`.
    Vertical,
    /// Invariant under `n·e1` only.
    Horizontal,
    /// Invariant under both; counted as vertical.
    Ambiguous,
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub classes: BTreeMap<Vec2, CosetClass>,
    /// Includes the ambiguous cosets.
    pub vertical_cosets: BTreeSet<Vec2>,
    pub horizontal_cosets: BTreeSet<Vec2>,
    pub ambiguous_cosets: BTreeSet<Vec2>,
    /// `c` on the vertical cosets, zero elsewhere; `n·e2`-periodic.
    pub vertical: Configuration,
    /// `c` on the horizontal cosets, zero elsewhere; `n·e1`-periodic.
    pub horizontal: Configuration,
    /// Certificate for the annihilation by `(U^{n e2} - 1)(U^{n e1} - 1)`.
    pub certificate: AnnihilationCertificate,
}

/// `(U^{n·e2} - 1)(U^{n·e1} - 1)`.
pub fn order2_annihilator(n: i64) -> LaurentPoly2 {
    &LaurentPoly2::unit_difference(Vec2::new(0, n)) * &LaurentPoly2::unit_difference(Vec2::new(n, 0))
}

/// Whether `c(p) = c(p + step)` for every `p ≡ coset (mod n)` with both
/// points in the sampled region.
fn invariant(win: &Window, n: i64, coset: Vec2, step: Vec2) -> bool {
    let r = win.rect();
    r.points()
        .filter(|p| p.x.rem_euclid(n) == coset.x && p.y.rem_euclid(n) == coset.y)
        .all(|p| match win.get(p + step) {
            Some(b) => win.get(p) == Some(b),
            None => true,
        })
}

/// Splits a binary configuration annihilated by `(U^{n e2} - 1)(U^{n e1} - 1)`
/// into an `n·e2`-periodic and an `n·e1`-periodic part, coset by coset.
///
/// Each coset `(k, l)` of `nZ×nZ` is tested for `n·e2`-invariance first, then
/// `n·e1`-invariance. With an exact certificate the tests run over a full
/// period box of `c`, otherwise over `w`.
pub fn split_order2(c: &Configuration, n: i64, w: &Rect) -> Result<SplitResult> {
    if n < 1 {
        return Err(Error::ZeroInput("n must be positive"));
    }
    if let Some((at, value)) = c.first_non_binary(w) {
        return Err(Error::NotBinary { at, value: value.to_string() });
    }
    let certificate = certify_annihilation(&order2_annihilator(n), c, w);
    if let AnnihilationCertificate::Fails { witness, value } = certificate {
        return Err(Error::NotAnnihilated { at: witness, value: value.to_string() });
    }
    let region = match certificate {
        AnnihilationCertificate::ExactPeriodic { period_box: (px, py) } => {
            // one extra step of n so every comparison stays inside
            let (bx, by) = (crate::lattice::lcm(px, n), crate::lattice::lcm(py, n));
            Rect::new(0, 0, bx + n - 1, by + n - 1)?
        }
        _ => *w,
    };
    let win = Window::sample(c, &region);
    let mut classes = BTreeMap::new();
    for k in 0..n {
        for l in 0..n {
            let coset = Vec2::new(k, l);
            let vertical = invariant(&win, n, coset, Vec2::new(0, n));
            let horizontal = invariant(&win, n, coset, Vec2::new(n, 0));
            let class = match (vertical, horizontal) {
                (true, true) => CosetClass::Ambiguous,
                (true, false) => CosetClass::Vertical,
                (false, true) => CosetClass::Horizontal,
                (false, false) => return Err(Error::UnclassifiableCoset(coset)),
            };
            classes.insert(coset, class);
        }
    }
    let pick = |want: &[CosetClass]| -> BTreeSet<Vec2> {
        classes.iter().filter(|(_, c)| want.contains(c)).map(|(k, _)| *k).collect()
    };
    let vertical_cosets = pick(&[CosetClass::Vertical, CosetClass::Ambiguous]);
    let horizontal_cosets = pick(&[CosetClass::Horizontal]);
    let ambiguous_cosets = pick(&[CosetClass::Ambiguous]);
    Ok(SplitResult {
        vertical: c.clone().restricted(n, vertical_cosets.clone()),
        horizontal: c.clone().restricted(n, horizontal_cosets.clone()),
        classes,
        vertical_cosets,
        horizontal_cosets,
        ambiguous_cosets,
        certificate,
    })
}

impl SplitResult {
    /// Checks on `w` that the parts are binary, disjoint and sum to `c`.
    pub fn check_parts(&self, c: &Configuration, w: &Rect) -> bool {
        let one = Rational::from(1);
        w.points().all(|p| {
            let (v, h) = (self.vertical.eval(p), self.horizontal.eval(p));
            let binary = |x: Rational| x == Rational::from(0) || x == one;
            binary(v) && binary(h) && !(v == one && h == one) && v + h == c.eval(p)
        })
    }
}
