//! The two aperiodic families: Sturmian order-3 configurations and the
//! product configurations `c(i, j) = φ(i) + ψ(j)`.
//!
//! `φ` and `ψ` come from a counter-based SplitMix64 stream, so any bit can be
//! computed in isolation and results are reproducible bit for bit:
//!
//! ```text
//! mix(z)  = z += 0x9E3779B97F4A7C15;
//!           z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//!           z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//!           z ^ (z >> 31)                            (all wrapping, u64)
//! key     = mix(seed as u64 + stream)
//! bit(i)  = mix(key + (i as u64) * 0x9E3779B97F4A7C15) >> 63
//! ```

use super::{Configuration, PointRule, QuadIrrational};

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream constant for the column word `φ`.
pub const STREAM_PHI: u64 = 0x243F_6A88_85A3_08D3;
/// Stream constant for the row word `ψ`.
pub const STREAM_PSI: u64 = 0x1319_8A2E_0370_7344;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Bit `i` of the word selected by `(seed, stream)`.
pub fn random_bit(seed: i64, stream: u64, i: i64) -> u8 {
    let key = mix((seed as u64).wrapping_add(stream));
    (mix(key.wrapping_add((i as u64).wrapping_mul(GAMMA))) >> 63) as u8
}

/// `c(i, j) = ⌊(i+j)α⌋ - ⌊iα⌋ - ⌊jα⌋`.
pub fn sturmian_config(alpha: QuadIrrational) -> Configuration {
    Configuration::point_rule(PointRule::SturmianDiff(alpha))
}

/// `c(i, j) = φ(i) + ψ(j)` with seeded pseudo-random bits.
pub fn random_product_config(seed: i64) -> Configuration {
    Configuration::point_rule(PointRule::RandomProduct { seed })
}

#[cfg(test)]
mod tests {
    use super::super::{apply_poly, Rect, Window};
    use super::*;
    use crate::dirset::{annihilator_direction_bound, Cluster};
    use crate::lattice::Vec2;
    use crate::poly::LaurentPoly2;
    use crate::Rational;
    use num_traits::{One, Zero};

    #[test]
    fn mix_reference_values() {
        // SplitMix64 seeded with 0 produces these first outputs.
        let mut state = 0u64;
        let mut next = || {
            let out = mix(state);
            state = state.wrapping_add(GAMMA);
            out
        };
        assert_eq!(next(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(next(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(next(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn words_are_deterministic_and_balanced() {
        let ones: u32 = (0..4000).map(|i| random_bit(7, STREAM_PHI, i) as u32).sum();
        assert!((1800..2200).contains(&ones), "{ones}");
        let differs = (0..200).filter(|&i| random_bit(7, STREAM_PHI, i) != random_bit(7, STREAM_PSI, i)).count();
        assert!(differs > 50);
        let r = Rect::new(0, 0, 100, 100).unwrap();
        assert_eq!(Window::sample(&random_product_config(7), &r), Window::sample(&random_product_config(7), &r));
        assert_ne!(Window::sample(&random_product_config(7), &r), Window::sample(&random_product_config(8), &r));
    }

    #[test]
    fn sturmian_values_are_binary() {
        let c = sturmian_config(QuadIrrational::sqrt2());
        assert_eq!(c.eval(Vec2::ZERO), Rational::zero());
        let r = Rect::new(0, 0, 20, 20).unwrap();
        assert!(c.first_non_binary(&r).is_none());
        assert!(Window::sample(&c, &r).values().iter().any(|v| v.is_one()));
        let c = sturmian_config(QuadIrrational::new(3, -2, 7, 3).unwrap());
        assert!(c.first_non_binary(&Rect::centered(40)).is_none());
    }

    #[test]
    fn product_rows_have_constant_differences() {
        for seed in [-5, 0, 7, 123_456_789] {
            let c = random_product_config(seed);
            let r = Rect::centered(25);
            let w = Window::sample(&c, &r);
            assert!(w.values().iter().all(|v| *v >= Rational::zero() && *v <= Rational::from(2)));
            let row_diff = apply_poly(&LaurentPoly2::unit_difference(Vec2::E2), &c, &r);
            for y in r.y0..=r.y1 {
                let first = row_diff.get(Vec2::new(r.x0, y)).unwrap();
                assert!((r.x0..=r.x1).all(|x| row_diff.get(Vec2::new(x, y)) == Some(first)));
            }
            let f = &LaurentPoly2::unit_difference(Vec2::E1) * &LaurentPoly2::unit_difference(Vec2::E2);
            assert!(apply_poly(&f, &c, &r).is_zero());
            assert_eq!(annihilator_direction_bound(&[f]).unwrap(), 2);
        }
        let square = Cluster::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(crate::dirset::dir(&square).len(), 2);
    }
}
