use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Configuration, Rect, Window};
use crate::error::{Error, Result};
use crate::lattice::Vec2;
use crate::poly::LaurentPoly2;
use crate::Rational;

/// How strongly `f·c = 0` has been established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnnihilationCertificate {
    /// Holds on all of Z²: the periodic part was checked on a full period box
    /// `[0,px)×[0,py)` and the finite part on its whole influence region.
    ExactPeriodic { period_box: (i64, i64) },
    /// Holds on `window` only.
    WindowChecked { window: Rect },
    /// `(f·c)(witness) = value ≠ 0`.
    Fails { witness: Vec2, value: Rational },
}

impl AnnihilationCertificate {
    pub fn is_fail(&self) -> bool {
        matches!(self, AnnihilationCertificate::Fails { .. })
    }
}

fn support_box(f: &LaurentPoly2) -> (Vec2, Vec2) {
    bounding_box(f.support()).map_or((Vec2::ZERO, Vec2::ZERO), |b| (b.min(), Vec2::new(b.x1, b.y1)))
}

/// `(f·c)(p) = Σ_v a_v c(p - v)` for every `p` in `w`.
pub fn apply_poly(f: &LaurentPoly2, c: &Configuration, w: &Rect) -> Window {
    if f.is_zero() {
        return Window::new(w.min(), w.width(), w.height(), vec![Rational::zero(); (w.width() * w.height()) as usize])
            .expect("dimensions match");
    }
    let (lo, hi) = support_box(f);
    // every p - v with p ∈ w and v ∈ supp(f)
    let padded = w.expand(-hi, -lo);
    let cache = Window::sample(c, &padded);
    let values = w
        .points()
        .map(|p| {
            f.terms()
                .map(|(v, a)| a * cache.get(p - v).expect("inside padded window"))
                .sum()
        })
        .collect();
    Window::new(w.min(), w.width(), w.height(), values).expect("dimensions match")
}

fn bounding_box<I: IntoIterator<Item = Vec2>>(pts: I) -> Option<Rect> {
    let mut it = pts.into_iter();
    let first = it.next()?;
    let (lo, hi) = it.fold((first, first), |(lo, hi), p| {
        (Vec2::new(lo.x.min(p.x), lo.y.min(p.y)), Vec2::new(hi.x.max(p.x), hi.y.max(p.y)))
    });
    Some(Rect::new(lo.x, lo.y, hi.x, hi.y).expect("ordered corners"))
}

/// Checks `f·c = 0`, first on `w` and then, when every component of `c` is
/// periodic or finitely supported, on all of Z².
pub fn certify_annihilation(f: &LaurentPoly2, c: &Configuration, w: &Rect) -> AnnihilationCertificate {
    if let Some((witness, value)) = apply_poly(f, c, w).nonzero().next() {
        return AnnihilationCertificate::Fails { witness, value };
    }
    let (periodic, finite, other) = c.partition();
    if other {
        return AnnihilationCertificate::WindowChecked { window: *w };
    }
    let (px, py) = periodic.period_box().expect("periodic components only");
    // f·c_fin is supported in supp(c_fin) + supp(f)
    let influence = if f.is_zero() {
        None
    } else {
        let (lo, hi) = support_box(f);
        bounding_box(finite.finite_support()).map(|b| b.expand(lo, hi))
    };
    let domain = Rect::new(0, 0, px - 1, py - 1).expect("positive periods");
    if let Some((q, value)) = apply_poly(f, &periodic, &domain).nonzero().next() {
        // move the witness right, past the finite part's influence
        let shift = match influence {
            Some(b) if b.x1 >= q.x => (b.x1 - q.x) / px + 1,
            _ => 0,
        };
        return AnnihilationCertificate::Fails { witness: q + Vec2::new(shift * px, 0), value };
    }
    if let Some(b) = influence {
        if let Some((witness, value)) = apply_poly(f, &finite, &b).nonzero().next() {
            return AnnihilationCertificate::Fails { witness, value };
        }
    }
    AnnihilationCertificate::ExactPeriodic { period_box: (px, py) }
}

/// Nonzero `v` with `‖v‖∞ ≤ max_norm` and `c(p) = c(p - v)` whenever `p` and
/// `p - v` both lie in `w`, in lexicographic order. This only certifies
/// behavior on `w`.
pub fn find_periods(c: &Configuration, w: &Rect, max_norm: i64) -> Result<Vec<Vec2>> {
    if max_norm < 1 {
        return Err(Error::ZeroInput("max_norm must be positive"));
    }
    if w.width() <= 2 * max_norm || w.height() <= 2 * max_norm {
        return Err(Error::WindowTooSmall { width: w.width(), height: w.height(), max_norm });
    }
    let win = Window::sample(c, w);
    let mut out = Vec::new();
    for x in -max_norm..=max_norm {
        for y in -max_norm..=max_norm {
            let v = Vec2::new(x, y);
            if v == Vec2::ZERO {
                continue;
            }
            let ok = w.points().all(|p| match win.get(p - v) {
                Some(b) => win.get(p) == Some(b),
                None => true,
            });
            if ok {
                out.push(v);
            }
        }
    }
    Ok(out)
}
