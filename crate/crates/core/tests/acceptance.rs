//! Acceptance criteria, one line per criterion.
//!
//! Every check is exact; the only tolerances are the wall-clock budgets
//! below. Runs without the libtest harness so the summary always prints.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use latcfg::config::{
    apply_poly, certify_annihilation, find_periods, order2_annihilator, random_product_config, split_order2,
    sturmian_config, AnnihilationCertificate, LaneGenerator, OnePeriodic, QuadIrrational, STREAM_PHI,
};
use latcfg::dirset::{dir, fixtures};
use latcfg::kernel::{grouped_vanishing, in_kernel, kernel_parametrization, lift_to_primitive_frame, points_up_to};
use latcfg::lattice::direction_of;
use latcfg::tiling::{
    check_dilation, dilation_guaranteed, enumerate_tilings, line_divisibility, prime_square_report, rectangle_check,
    RectangleOutcome, TilingCheck, ORDER_TWO_CONCLUSION,
};
use latcfg::{Cluster, Configuration, Direction, Error, LaurentPoly2, Rational, Rect, Vec2};

/// Wall-clock budget per criterion, in seconds.
const BUDGET_SECS: [u64; 11] = [1, 120, 5, 5, 30, 120, 60, 120, 1, 30, 10];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn subsets(cells: &[Vec2], k: usize, f: &mut impl FnMut(&[Vec2])) {
    fn go(cells: &[Vec2], k: usize, start: usize, cur: &mut Vec<Vec2>, f: &mut impl FnMut(&[Vec2])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..cells.len() {
            if cells.len() - i < k - cur.len() {
                break;
            }
            cur.push(cells[i]);
            go(cells, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(cells, k, 0, &mut Vec::new(), f);
}

fn grid(w: i64, h: i64) -> Vec<Vec2> {
    (0..h).flat_map(|y| (0..w).map(move |x| Vec2::new(x, y))).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Directions as primitive `(dx, dy)` with `dy > 0` or `dy = 0, dx > 0`,
/// computed without the library.
fn oracle_direction(v: Vec2) -> (i64, i64) {
    let g = gcd(v.x, v.y);
    let (x, y) = (v.x / g, v.y / g);
    if y < 0 || (y == 0 && x < 0) {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// Lines parallel to `(dx, dy)` through every point meet `s` at least twice.
fn oracle_dir(s: &[Vec2]) -> BTreeSet<(i64, i64)> {
    let mut candidates = BTreeSet::new();
    for (i, &p) in s.iter().enumerate() {
        for &q in &s[i + 1..] {
            candidates.insert(oracle_direction(q - p));
        }
    }
    candidates
        .into_iter()
        .filter(|&(dx, dy)| {
            let mut lines: BTreeMap<i64, usize> = BTreeMap::new();
            for p in s {
                *lines.entry(dx * p.y - dy * p.x).or_default() += 1;
            }
            lines.values().all(|&c| c >= 2)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let l = dir(&fixtures::l_tromino());
    let plus = dir(&fixtures::plus());
    let oct = dir(&fixtures::octagon());
    ensure(l.is_empty(), || format!("L-tromino dir = {l}"))?;
    ensure(plus.is_empty(), || format!("plus dir = {plus}"))?;
    ensure(oct.len() == 4, || format!("octagon dir = {oct}"))?;
    Ok(format!("|dir(L)| = 0, |dir(plus)| = 0, |dir(octagon)| = 4: {oct}"))
}

fn criterion_2() -> Outcome {
    let cells = grid(5, 5);
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    for k in 1..=6 {
        subsets(&cells, k, &mut |s| {
            checked += 1;
            let lib: BTreeSet<(i64, i64)> =
                dir(&Cluster::new(s.iter().copied()).unwrap()).iter().map(|d| (d.dx(), d.dy())).collect();
            if lib != oracle_dir(s) && mismatches.len() < 3 {
                mismatches.push(format!("{s:?}"));
            }
        });
    }
    ensure(mismatches.is_empty(), || format!("mismatches: {}", mismatches.join("; ")))?;
    Ok(format!("{checked} clusters, 0 mismatches"))
}

fn diff(x: i64, y: i64) -> LaurentPoly2 {
    LaurentPoly2::unit_difference(Vec2::new(x, y))
}

fn criterion_3() -> Outcome {
    let factors = [diff(1, 0), diff(0, 1), diff(1, -1)];
    let triple = &(&factors[0] * &factors[1]) * &factors[2];
    let w = Rect::centered(50);
    let mut failing = 0;
    for (name, a) in [("sqrt2", QuadIrrational::sqrt2()), ("golden", QuadIrrational::golden())] {
        let c = sturmian_config(a);
        let out = apply_poly(&triple, &c, &w);
        ensure(out.is_zero(), || format!("{name}: triple product nonzero at {:?}", out.nonzero().next()))?;
        let mut partial: Vec<LaurentPoly2> = factors.to_vec();
        for i in 0..3 {
            for j in i + 1..3 {
                partial.push(&factors[i] * &factors[j]);
            }
        }
        for f in &partial {
            match certify_annihilation(f, &c, &w) {
                AnnihilationCertificate::Fails { witness, value } => {
                    ensure(w.contains(witness) && value != Rational::from(0), || format!("{name}: bad witness"))?;
                    failing += 1;
                }
                other => return Err(format!("{name}: {f} gave {other:?}")),
            }
        }
    }
    Ok(format!("triple product zero on {w} for both α; {failing}/12 proper sub-products fail with witnesses"))
}

fn criterion_4() -> Outcome {
    let f = &diff(1, 0) * &diff(0, 1);
    let w = Rect::new(0, 0, 100, 100).unwrap();
    let allowed = [Rational::from(0), Rational::from(1), Rational::from(2)];
    for seed in 0..10 {
        let c = random_product_config(seed * 7919 - 3);
        ensure(apply_poly(&f, &c, &w).is_zero(), || format!("seed {seed}: annihilator nonzero"))?;
        for p in w.points() {
            let v = c.eval(p);
            ensure(allowed.contains(&v), || format!("seed {seed}: value {v} at {p}"))?;
        }
    }
    Ok(format!("10 seeds, (U^e1-1)(U^e2-1)c = 0 and values in {{0,1,2}} on {w}"))
}

/// Binary lanes: fractional parts of quadratic irrationals.
fn lane_alphas() -> Vec<QuadIrrational> {
    [(-1, 1, 2, 1), (-1, 1, 5, 2), (-1, 1, 3, 1), (-2, 1, 7, 1), (-2, 1, 5, 1), (-3, 1, 11, 1)]
        .into_iter()
        .map(|(p, q, d, r)| QuadIrrational::new(p, q, d, r).unwrap())
        .collect()
}

/// Order-2 binary configuration: aperiodic columns on some cosets of nZ²,
/// aperiodic rows on the others.
fn mixed_config(i: i64) -> (Configuration, i64) {
    let n = 1 + i % 3;
    let alphas = lane_alphas();
    let mut c = Configuration::zero();
    let mut idx = i as usize;
    for k in 0..n {
        for l in 0..n {
            let coset: BTreeSet<Vec2> = [Vec2::new(k, l)].into();
            let vertical = latcfg::config::random_bit(i, STREAM_PHI, k * n + l) == 0;
            let a = alphas[idx % alphas.len()];
            idx += 1;
            let (period, lane) = if vertical { (Vec2::E2, a) } else { (Vec2::E1, a) };
            let part = Configuration::one_periodic(OnePeriodic::simple(period, LaneGenerator::SturmianWord(lane)).unwrap());
            c = c.plus(part.restricted(n, coset));
        }
    }
    (c, n)
}

fn criterion_5() -> Outcome {
    let w = Rect::centered(20);
    let mut horizontal_total = 0;
    for i in 0..20 {
        let (c, n) = mixed_config(i);
        let s = split_order2(&c, n, &w).map_err(|e| format!("config {i}: {e}"))?;
        ensure(s.check_parts(&c, &w), || format!("config {i}: parts not binary/disjoint/summing"))?;
        let vp = find_periods(&s.vertical, &w, n).map_err(|e| e.to_string())?;
        let hp = find_periods(&s.horizontal, &w, n).map_err(|e| e.to_string())?;
        ensure(vp.contains(&Vec2::new(0, n)), || format!("config {i}: vertical part lacks period (0,{n})"))?;
        ensure(hp.contains(&Vec2::new(n, 0)), || format!("config {i}: horizontal part lacks period ({n},0)"))?;
        let d = dir(&order2_annihilator(n).support_cluster().unwrap());
        ensure(d.contains(Direction::VERTICAL) && d.contains(Direction::HORIZONTAL), || {
            format!("config {i}: period directions not in dir of the annihilator support")
        })?;
        horizontal_total += s.horizontal_cosets.len();
    }
    Ok(format!("20 configurations split; {horizontal_total} horizontal cosets in total"))
}

fn fixture_clusters() -> Vec<(&'static str, Cluster)> {
    vec![
        ("domino", fixtures::domino()),
        ("L-tromino", fixtures::l_tromino()),
        ("2x2", fixtures::rectangle(2, 2)),
        ("2x3", fixtures::rectangle(2, 3)),
        ("skew tetromino", fixtures::skew_tetromino()),
    ]
}

fn torii(max_area: i64) -> Vec<(i64, i64)> {
    (1..=max_area).flat_map(|x| (1..=max_area / x).map(move |y| (x, y))).collect()
}

fn criterion_6() -> Outcome {
    let (mut tilings, mut checks) = (0usize, 0usize);
    for (name, f) in fixture_clusters() {
        for (mx, my) in torii(36) {
            let all = match enumerate_tilings(&f, mx, my) {
                Ok(all) => all,
                Err(Error::TorusMismatch { .. }) => continue,
                Err(e) => return Err(e.to_string()),
            };
            tilings += all.len();
            for alpha in 2..=10 {
                if !dilation_guaranteed(&f, alpha) {
                    continue;
                }
                for t in &all {
                    match check_dilation(&f, t, alpha) {
                        Ok(TilingCheck::Ok) => checks += 1,
                        Ok(v) => return Err(format!("{name} on {mx}x{my}, alpha {alpha}: {v:?} for {t}")),
                        Err(Error::NonInjectiveDilation { .. }) => break,
                        Err(e) => return Err(e.to_string()),
                    }
                }
            }
        }
    }
    Ok(format!("{tilings} tilings, {checks} dilation checks, 0 failures"))
}

/// All anchor sets of the right size satisfying the tiling equation.
fn naive_count(f: &Cluster, mx: i64, my: i64) -> usize {
    let cells = grid(mx, my);
    let k = cells.len() / f.len();
    let mut count = 0;
    subsets(&cells, k, &mut |t| {
        let set: BTreeSet<Vec2> = t.iter().copied().collect();
        let ok = cells.iter().all(|&p| {
            f.iter().filter(|&v| set.contains(&Vec2::new((p.x - v.x).rem_euclid(mx), (p.y - v.y).rem_euclid(my)))).count()
                == 1
        });
        count += ok as usize;
    });
    count
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    let mut total = 0;
    let mut clusters = fixture_clusters();
    clusters.push(("monomino", Cluster::from_coords(&[(0, 0)]).unwrap()));
    for (name, f) in clusters {
        for (mx, my) in torii(16) {
            let all = match enumerate_tilings(&f, mx, my) {
                Ok(all) => all,
                Err(Error::TorusMismatch { .. }) => continue,
                Err(e) => return Err(e.to_string()),
            };
            let naive = naive_count(&f, mx, my);
            ensure(all.len() == naive, || format!("{name} on {mx}x{my}: search {} vs oracle {naive}", all.len()))?;
            pairs += 1;
            total += naive;
        }
    }
    Ok(format!("{pairs} (cluster, torus) pairs, {total} tilings, counts agree"))
}

fn criterion_8() -> Outcome {
    let cells = grid(5, 5);
    let (mut with_basis, mut rectangles, mut not_applicable) = (0usize, 0usize, 0usize);
    let mut err = None;
    subsets(&cells, 4, &mut |s| {
        if err.is_some() {
            return;
        }
        let f = Cluster::new(s.iter().copied()).unwrap();
        let divisible: Vec<Direction> = f
            .pair_directions()
            .into_iter()
            .filter(|&d| line_divisibility(&f, d, 2).unwrap().all_divisible)
            .collect();
        let has_basis = divisible.iter().enumerate().any(|(i, a)| {
            divisible[i + 1..].iter().any(|b| a.vector().cross(b.vector()).abs() == 1)
        });
        with_basis += has_basis as usize;
        match rectangle_check(&f, 2).unwrap() {
            RectangleOutcome::IsRectangle { a, b, basis: (d1, d2), frame_index, .. } => {
                rectangles += 1;
                let rebuilt: BTreeSet<Vec2> = a
                    .iter()
                    .flat_map(|&x| b.iter().map(move |&y| (x, y)))
                    .map(|(x, y)| {
                        let v = x * d1.vector() + y * d2.vector();
                        Vec2::new(v.x / frame_index, v.y / frame_index)
                    })
                    .collect();
                if &rebuilt != f.points() {
                    err = Some(format!("{f}: factors do not rebuild the cluster"));
                }
            }
            RectangleOutcome::NotApplicable { .. } if has_basis => err = Some(format!("{f}: basis pair but NotApplicable")),
            RectangleOutcome::NotApplicable { .. } => not_applicable += 1,
            RectangleOutcome::CounterexampleWitness { .. } => err = Some(format!("{f}: counterexample witness")),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    ensure(with_basis > 0, || "no subset had a unimodular divisible pair".into())?;
    Ok(format!(
        "12650 subsets: {with_basis} with a unimodular divisible pair, {rectangles} rectangles in some divisible frame, {not_applicable} not applicable, 0 counterexamples"
    ))
}

fn criterion_9() -> Outcome {
    for k in [2, 3] {
        let r = prime_square_report(&fixtures::rectangle(k, k)).map_err(|e| e.to_string())?;
        ensure(r.p == k, || format!("{k}x{k}: p = {}", r.p))?;
        ensure(r.rectangle.is_rectangle(), || format!("{k}x{k}: {:?}", r.rectangle))?;
        ensure(r.dir.len() == 2 && r.order_bound == 2, || format!("{k}x{k}: dir = {}", r.dir))?;
        ensure(r.conclusion.as_deref() == Some(ORDER_TWO_CONCLUSION), || format!("{k}x{k}: no conclusion"))?;
    }
    Ok(format!("2x2 and 3x3: rectangle, |dir| = 2, \"{ORDER_TWO_CONCLUSION}\""))
}

fn criterion_10() -> Outcome {
    let mut hs = BTreeSet::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            if (a, b) != (0, 0) && a * a + b * b <= 10 && gcd(a, b) == 1 {
                hs.insert(direction_of(Vec2::new(a, b)).unwrap());
            }
        }
    }
    let ts: Vec<Rational> = [(0, 1), (1, 2), (1, 3), (-2, 5), (7, 4), (5, 12)].iter().map(|&(p, q)| Rational::new(p, q)).collect();
    let points = points_up_to(12);
    let (mut generated, mut in_kernel_count, mut kernels) = (0usize, 0usize, 0usize);
    for &h in &hs {
        for n in 1..=3 {
            let k = kernel_parametrization(h, n).map_err(|e| e.to_string())?;
            kernels += 1;
            let g = n * h.vector();
            for i in 0..k.offsets.len() {
                for &t in &ts {
                    generated += 1;
                    let pt = k.point(i, t);
                    ensure(in_kernel(pt, g), || format!("h={h} n={n}: {pt} not in the kernel"))?;
                }
            }
            for &pt in &points {
                let inside = in_kernel(pt, g);
                in_kernel_count += inside as usize;
                let (lambda, _) = lift_to_primitive_frame(pt, h);
                let hit = (lambda * Rational::from(k.offsets.len() as i128)).is_integer();
                ensure(inside == hit && hit == k.covers(pt), || format!("h={h} n={n}: {pt} membership {inside}, lift {hit}"))?;
            }
        }
    }
    Ok(format!(
        "{kernels} kernels ({} directions, n<=3): {generated} parametrized points in the kernel; \
         {in_kernel_count} in-kernel hits among {} grid points per kernel, all on the parametrization",
        hs.len(),
        points.len()
    ))
}

fn criterion_11() -> Outcome {
    let mut clusters: Vec<Cluster> = fixture_clusters().into_iter().map(|(_, c)| c).collect();
    clusters.extend([fixtures::plus(), fixtures::octagon(), fixtures::rectangle(3, 3), fixtures::rectangle(2, 4)]);
    clusters.push(Cluster::from_coords(&[(0, 0), (0, 2), (1, 0), (1, 2)]).unwrap());
    clusters.push(Cluster::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 3)]).unwrap());
    let (mut cases, mut passing) = (0, 0);
    for f in &clusters {
        for h in f.pair_directions() {
            for p in [2, 3, 5, 7] {
                cases += 1;
                let levels = grouped_vanishing(f, h, p).map_err(|e| e.to_string())?;
                if levels.iter().any(|(_, ok)| *ok) {
                    passing += 1;
                    let r = line_divisibility(f, h, p).map_err(|e| e.to_string())?;
                    ensure(r.all_divisible, || format!("{f} along {h}, p={p}: vanishing without divisibility"))?;
                }
            }
        }
    }
    Ok(format!("{cases} (cluster, direction, prime) cases, {passing} with a passing level, 0 violations"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("direction sets of the L, plus and octagon clusters", criterion_1),
        ("dir(S) equals the parallel-line oracle, |S|<=6 in 5x5", criterion_2),
        ("Sturmian triple-product annihilator", criterion_3),
        ("random product configurations", criterion_4),
        ("order-2 splitting into 1-periodic parts", criterion_5),
        ("dilation preserves torus tilings", criterion_6),
        ("enumeration agrees with the subset oracle", criterion_7),
        ("two divisible directions force a rectangle, 4-subsets of 5x5", criterion_8),
        ("prime-square pipeline on 2x2 and 3x3", criterion_9),
        ("character kernels on rational points", criterion_10),
        ("grouped vanishing implies line divisibility", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(BUDGET_SECS[i]);
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", e),
        };
        failed += (status == "FAIL") as usize;
        println!("{status} [{:>2}] {name}: {detail} ({:.2}s / {}s)", i + 1, elapsed.as_secs_f64(), BUDGET_SECS[i]);
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
