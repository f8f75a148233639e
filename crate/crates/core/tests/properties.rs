use std::collections::BTreeSet;

use latcfg::config::{
    apply_poly, certify_annihilation, find_periods, split_order2, sturmian_config, AnnihilationCertificate, LaneGenerator,
    OnePeriodic, QuadIrrational,
};
use latcfg::dirset::{annihilator_directions, dir, fixtures};
use latcfg::poly::{difference_annihilator, product_annihilator};
use latcfg::tiling::{enumerate_tilings, verify_tiling};
use latcfg::{Cluster, Configuration, Lattice2, LaurentPoly2, Rational, Rect, TorusTiling, Vec2, Window};
use proptest::prelude::*;

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn line_poly() -> impl Strategy<Value = LaurentPoly2> {
    // U^v - 1 or 1 + U^v + U^2v along a short primitive-or-not vector
    ((-2i64..=2, -2i64..=2), any::<bool>()).prop_filter_map("nonzero step", |((x, y), long)| {
        let v = Vec2::new(x, y);
        if v == Vec2::ZERO {
            return None;
        }
        let one = Rational::from(1);
        Some(if long {
            LaurentPoly2::from_terms([(Vec2::ZERO, one), (v, one), (2 * v, one)])
        } else {
            LaurentPoly2::unit_difference(v)
        })
    })
}

fn biperiodic() -> impl Strategy<Value = Configuration> {
    (1i64..4, 0i64..4, 1i64..4, prop::collection::vec(-1i128..3, 16)).prop_map(|(a, c, b, vals)| {
        let l = Lattice2::hnf(a, c % a, b).unwrap();
        let values: Vec<_> = l.cosets().into_iter().zip(vals).map(|(p, v)| (p, Rational::from(v))).collect();
        Configuration::biperiodic(l, values)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // f1^m1 ⋯ fk^mk annihilating exactly forces f1 ⋯ fk to annihilate exactly
    #[test]
    fn strong_radicality(c in biperiodic(), fs in prop::collection::vec((line_poly(), 1u32..3), 1..3)) {
        let w = Rect::centered(3);
        let mut powered = LaurentPoly2::one();
        let mut reduced = LaurentPoly2::one();
        for (f, m) in &fs {
            powered = &powered * &f.pow(*m);
            reduced = &reduced * f;
        }
        if let AnnihilationCertificate::ExactPeriodic { .. } = certify_annihilation(&powered, &c, &w) {
            let cert = certify_annihilation(&reduced, &c, &w);
            prop_assert!(matches!(cert, AnnihilationCertificate::ExactPeriodic { .. }), "{:?}", cert);
        }
    }

    // F·1_T is constant for a tiling, so its differences annihilate 1_T
    #[test]
    fn derived_annihilators_kill_tilings(v in (-3i64..=3, -3i64..=3), n0 in 1i64..3) {
        let f = fixtures::rectangle(2, 2);
        let t = TorusTiling::new(4, 4, [Vec2::new(0, 0), Vec2::new(2, 0), Vec2::new(0, 2), Vec2::new(2, 2)]).unwrap();
        prop_assert!(verify_tiling(&f, &t).is_ok());
        let indicator = Configuration::biperiodic(
            Lattice2::square(4).unwrap(),
            t.anchors().iter().map(|&a| (a, Rational::from(1))),
        );
        let w = Rect::centered(4);
        let cover = LaurentPoly2::from_terms(f.iter().map(|v| (v, Rational::from(1))));
        let counts = apply_poly(&cover, &indicator, &w);
        prop_assert!(w.points().all(|p| counts.get(p) == Some(Rational::from(1))));
        let v = Vec2::new(v.0, v.1);
        prop_assume!(v != Vec2::ZERO);
        let g = difference_annihilator(&cover, v).unwrap();
        prop_assert!(!certify_annihilation(&g, &indicator, &w).is_fail());
        // the period lattice is 4Z², so n0 = 4k makes every factor vanish
        let v0 = *g.support().iter().next().unwrap();
        let h = product_annihilator(&g, v0, 4 * n0).unwrap();
        let exact = matches!(certify_annihilation(&h, &indicator, &w), AnnihilationCertificate::ExactPeriodic { .. });
        prop_assert!(exact);
    }
}

#[test]
fn configuration_file_round_trip() {
    let c = Configuration::parse(&data("everything.cfg")).unwrap();
    let text = c.to_text();
    let again = Configuration::parse(&text).unwrap();
    assert_eq!(again, c);
    let r = Rect::new(-6, -4, 7, 5).unwrap();
    let w = Window::sample(&c, &r);
    assert_eq!(Window::parse(&w.to_text()).unwrap(), w);
}

#[test]
fn cluster_and_tiling_files() {
    let f = Cluster::parse(&data("l_tromino.txt")).unwrap();
    assert_eq!(f, fixtures::l_tromino());
    let t = TorusTiling::parse(&data("l_tromino_6x6.tiling")).unwrap();
    assert!(verify_tiling(&f, &t).is_ok());
    assert!(enumerate_tilings(&f, 6, 6).unwrap().contains(&t));
}

#[test]
fn split_components_are_one_periodic() {
    let even: BTreeSet<Vec2> = [Vec2::new(0, 0), Vec2::new(0, 1)].into();
    let odd: BTreeSet<Vec2> = [Vec2::new(1, 0), Vec2::new(1, 1)].into();
    let u = QuadIrrational::new(-1, 1, 2, 1).unwrap();
    let v = QuadIrrational::new(-2, 1, 7, 1).unwrap();
    let cols = Configuration::one_periodic(OnePeriodic::simple(Vec2::E2, LaneGenerator::SturmianWord(u)).unwrap());
    let rows = Configuration::one_periodic(OnePeriodic::simple(Vec2::E1, LaneGenerator::SturmianWord(v)).unwrap());
    let c = cols.restricted(2, even.clone()).plus(rows.restricted(2, odd.clone()));
    let w = Rect::centered(16);
    let s = split_order2(&c, 2, &w).unwrap();
    assert_eq!(s.vertical_cosets, even);
    assert_eq!(s.horizontal_cosets, odd);
    let vp = find_periods(&s.vertical, &w, 3).unwrap();
    let hp = find_periods(&s.horizontal, &w, 3).unwrap();
    // aperiodic lanes: no period leaves the lane direction
    assert!(vp.contains(&Vec2::E2) && vp.iter().all(|p| p.x == 0));
    assert!(hp.contains(&Vec2::new(2, 0)) && hp.iter().all(|p| p.y == 0 && p.x % 2 == 0));
    // the split parts round-trip through the text format
    let back = Configuration::parse(&s.vertical.to_text()).unwrap();
    assert_eq!(Window::sample(&back, &w), Window::sample(&s.vertical, &w));
}

#[test]
fn sturmian_order_bound_from_annihilator() {
    let f = &(&LaurentPoly2::unit_difference(Vec2::E1) * &LaurentPoly2::unit_difference(Vec2::E2))
        * &LaurentPoly2::unit_difference(Vec2::new(1, -1));
    let c = sturmian_config(QuadIrrational::sqrt2());
    assert!(!certify_annihilation(&f, &c, &Rect::centered(20)).is_fail());
    // the support {0, e1, e2, e1+e2, ...} has three line directions
    let d = annihilator_directions(std::slice::from_ref(&f)).unwrap();
    assert_eq!(d.len(), 3);
    assert_eq!(d, dir(&f.support_cluster().unwrap()));
}
