use std::path::Path;

use latcfg::config::{
    certify_annihilation, random_product_config, split_order2, sturmian_config, AnnihilationCertificate, CosetClass,
    QuadIrrational,
};
use latcfg::dirset::dir;
use latcfg::tiling::{
    check_dilation, dilation_guaranteed, enumerate_tilings_parallel, prime_square_report, verify_tiling,
    RectangleOutcome, TilingCheck,
};
use latcfg::{Cluster, Configuration, LaurentPoly2, Rect, TorusTiling, Vec2};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{Outcome, RunReport};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> latcfg::Result<T>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Input { path: path.to_path_buf(), source })
}

fn points(ps: impl IntoIterator<Item = Vec2>) -> Value {
    Value::Array(ps.into_iter().map(|p| json!([p.x, p.y])).collect())
}

fn rect_json(r: &Rect) -> Value {
    let (lo, w, h) = (r.min(), r.width(), r.height());
    json!([lo.x, lo.y, lo.x + w - 1, lo.y + h - 1])
}

fn check_json(c: &TilingCheck) -> Value {
    match c {
        TilingCheck::Ok => json!({"verdict": "ok"}),
        TilingCheck::Violation { p, count } => json!({"verdict": "violation", "at": [p.x, p.y], "count": count}),
    }
}

fn check_line(c: &TilingCheck) -> String {
    match c {
        TilingCheck::Ok => "ok".to_string(),
        TilingCheck::Violation { p, count } => format!("violation: {p} covered {count} times"),
    }
}

/// The certificate's level name, its JSON form and a one-line description.
fn certificate(c: &AnnihilationCertificate) -> (&'static str, Value, String) {
    match c {
        AnnihilationCertificate::ExactPeriodic { period_box: (px, py) } => (
            "ExactPeriodic",
            json!({"level": "ExactPeriodic", "period_box": [px, py]}),
            format!("ExactPeriodic (checked on a full {px}x{py} period box)"),
        ),
        AnnihilationCertificate::WindowChecked { window } => (
            "WindowChecked",
            json!({"level": "WindowChecked", "window": rect_json(window)}),
            format!("WindowChecked on {window}, zero violations"),
        ),
        AnnihilationCertificate::Fails { witness, value } => (
            "Fails",
            json!({"level": "Fails", "witness": [witness.x, witness.y], "value": value.to_string()}),
            format!("Fails: value {value} at {witness}"),
        ),
    }
}

pub fn dirset(path: &Path) -> Result<Outcome, CliError> {
    let f = load(path, Cluster::parse)?;
    let d = dir(&f);
    let mut report = RunReport::new("dirset", json!({"cluster_file": path, "cluster": points(f.iter())}));
    report.results = json!({
        "directions": d.iter().map(|d| json!([d.dx(), d.dy()])).collect::<Vec<_>>(),
        "count": d.len(),
    });
    report.certify("exact");
    let mut out = Outcome::new(report);
    out.line(format!("cluster: {f}"));
    out.line(format!("directions: {d}, |dir|={}", d.len()));
    Ok(out)
}

pub fn verify(cluster: &Path, tiling: &Path) -> Result<Outcome, CliError> {
    let f = load(cluster, Cluster::parse)?;
    let t = load(tiling, TorusTiling::parse)?;
    let check = verify_tiling(&f, &t);
    let mut report = RunReport::new(
        "verify",
        json!({
            "cluster_file": cluster, "tiling_file": tiling, "cluster": points(f.iter()),
            "torus": [t.mod_x(), t.mod_y()], "anchors": points(t.anchors().iter().copied()),
        }),
    );
    report.results = check_json(&check);
    report.certify("exact");
    let mut out = Outcome::new(report);
    out.line(format!("{}x{} torus, {} anchors: {}", t.mod_x(), t.mod_y(), t.anchors().len(), check_line(&check)));
    out.verified = check.is_ok();
    Ok(out)
}

pub fn enumerate(cluster: &Path, mx: i64, my: i64, jobs: usize) -> Result<Outcome, CliError> {
    let f = load(cluster, Cluster::parse)?;
    let mut tilings = enumerate_tilings_parallel(&f, mx, my, jobs.max(1))?;
    tilings.sort();
    let mut report = RunReport::new(
        "enumerate",
        json!({"cluster_file": cluster, "cluster": points(f.iter()), "torus": [mx, my], "jobs": jobs}),
    );
    report.results = json!({
        "count": tilings.len(),
        "tilings": tilings.iter().map(|t| points(t.anchors().iter().copied())).collect::<Vec<_>>(),
    });
    report.certify("exhaustive");
    let mut out = Outcome::new(report);
    out.line(format!("{} tilings of the {mx}x{my} torus", tilings.len()));
    for t in &tilings {
        out.line(format!("  {t}"));
    }
    Ok(out)
}

pub fn dilate(cluster: &Path, tiling: &Path, alphas: &[i64]) -> Result<Outcome, CliError> {
    let f = load(cluster, Cluster::parse)?;
    let t = load(tiling, TorusTiling::parse)?;
    let base = verify_tiling(&f, &t);
    let mut report = RunReport::new(
        "dilate",
        json!({
            "cluster_file": cluster, "tiling_file": tiling, "cluster": points(f.iter()),
            "torus": [t.mod_x(), t.mod_y()], "alpha": alphas,
        }),
    );
    report.certify("exact");
    let mut out = Outcome::new(report);
    out.line(format!("base tiling: {}", check_line(&base)));
    let mut rows = Vec::new();
    if !base.is_ok() {
        out.verified = false;
    } else {
        for &alpha in alphas {
            let guaranteed = dilation_guaranteed(&f, alpha);
            if !guaranteed {
                eprintln!("warning: gcd({alpha}, {}) != 1, the verdict for α={alpha} is informational", f.len());
            }
            let (verdict, line) = match check_dilation(&f, &t, alpha) {
                Ok(c) => {
                    if guaranteed && !c.is_ok() {
                        out.verified = false;
                    }
                    (check_json(&c), check_line(&c))
                }
                Err(latcfg::Error::NonInjectiveDilation { a, b, .. }) => (
                    json!({"verdict": "non_injective", "collision": [[a.x, a.y], [b.x, b.y]]}),
                    format!("not injective on the torus ({a} and {b} collide)"),
                ),
                Err(e) => return Err(e.into()),
            };
            let tag = if guaranteed { "" } else { " [informational]" };
            out.line(format!("α={alpha}: {line}{tag}"));
            let mut row = json!({"alpha": alpha, "coprime": guaranteed});
            row.as_object_mut().unwrap().extend(verdict.as_object().unwrap().clone());
            rows.push(row);
        }
    }
    out.report.results = json!({"base": check_json(&base), "dilations": rows});
    Ok(out)
}

pub fn annihilate(config: &Path, poly: &Path, w: &Rect) -> Result<Outcome, CliError> {
    let c = load(config, Configuration::parse)?;
    let f = load(poly, LaurentPoly2::parse)?;
    let cert = certify_annihilation(&f, &c, w);
    let (level, value, line) = certificate(&cert);
    let mut report = RunReport::new(
        "annihilate",
        json!({"config_file": config, "poly_file": poly, "poly": f.to_string(), "window": rect_json(w)}),
    );
    report.results = value;
    report.certify(level);
    let mut out = Outcome::new(report);
    out.line(format!("polynomial: {f}"));
    out.line(format!("certificate: {line}"));
    out.verified = !cert.is_fail();
    Ok(out)
}

pub fn split2(config: &Path, n: i64, w: &Rect, out_dir: &Path) -> Result<Outcome, CliError> {
    let c = load(config, Configuration::parse)?;
    let s = split_order2(&c, n, w)?;
    let (level, split_cert, split_line) = certificate(&s.certificate);
    let vfile = out_dir.join("vertical.cfg");
    let hfile = out_dir.join("horizontal.cfg");
    write(&vfile, &s.vertical.to_text())?;
    write(&hfile, &s.horizontal.to_text())?;

    let parts_ok = s.check_parts(&c, w);
    let vcert = certify_annihilation(&LaurentPoly2::unit_difference(Vec2::new(0, n)), &s.vertical, w);
    let hcert = certify_annihilation(&LaurentPoly2::unit_difference(Vec2::new(n, 0)), &s.horizontal, w);
    let (vlevel, vjson, vline) = certificate(&vcert);
    let (hlevel, hjson, hline) = certificate(&hcert);

    let class_name = |k: &CosetClass| match k {
        CosetClass::Vertical => "vertical",
        CosetClass::Horizontal => "horizontal",
        CosetClass::Ambiguous => "ambiguous",
    };
    let mut report = RunReport::new(
        "split2",
        json!({"config_file": config, "n": n, "window": rect_json(w), "out_dir": out_dir}),
    );
    report.results = json!({
        "annihilation": split_cert,
        "classes": s.classes.iter().map(|(k, v)| json!({"coset": [k.x, k.y], "class": class_name(v)})).collect::<Vec<_>>(),
        "vertical_cosets": points(s.vertical_cosets.iter().copied()),
        "horizontal_cosets": points(s.horizontal_cosets.iter().copied()),
        "ambiguous_cosets": points(s.ambiguous_cosets.iter().copied()),
        "files": {"vertical": vfile, "horizontal": hfile},
        "parts_ok": parts_ok,
        "vertical_period": {"period": [0, n], "certificate": vjson},
        "horizontal_period": {"period": [n, 0], "certificate": hjson},
    });
    for l in [level, vlevel, hlevel] {
        report.certify(l);
    }
    let mut out = Outcome::new(report);
    out.line(format!("annihilation by (U^(0,{n})-1)(U^({n},0)-1): {split_line}"));
    for (k, v) in &s.classes {
        out.line(format!("  coset {k}: {}", class_name(v)));
    }
    if !s.ambiguous_cosets.is_empty() {
        out.line(format!("ambiguous cosets (counted as vertical): {}", s.ambiguous_cosets.len()));
    }
    out.line(format!("wrote {} and {}", vfile.display(), hfile.display()));
    out.line(format!("parts binary, disjoint and summing to c on {w}: {parts_ok}"));
    out.line(format!("vertical part, period (0,{n}): {vline}"));
    out.line(format!("horizontal part, period ({n},0): {hline}"));
    out.verified = parts_ok && !vcert.is_fail() && !hcert.is_fail();
    Ok(out)
}

pub fn prime_square(path: &Path) -> Result<Outcome, CliError> {
    let f = load(path, Cluster::parse)?;
    let r = prime_square_report(&f)?;
    let mut report = RunReport::new("prime-square", json!({"cluster_file": path, "cluster": points(f.iter())}));
    report.results = serde_json::to_value(&r).expect("report serializes");
    report.certify("exact");
    let mut out = Outcome::new(report);
    out.line(format!("|F| = {} = {}^2", r.size, r.p));
    let divisible: Vec<String> =
        r.divisibility.iter().filter(|d| d.all_divisible).map(|d| d.direction.to_string()).collect();
    out.line(format!("directions with all line counts divisible by {}: {}", r.p, divisible.join(" ")));
    let rect_line = match &r.rectangle {
        RectangleOutcome::IsRectangle { a, b, basis, frame_index, .. } => format!(
            "rectangle in basis {} {} (index {frame_index}): {:?} x {:?}",
            basis.0, basis.1, a, b
        ),
        RectangleOutcome::NotApplicable { reason, .. } => format!("rectangle check not applicable: {reason}"),
        RectangleOutcome::CounterexampleWitness { basis, missing } => {
            out.verified = false;
            format!("not a rectangle in basis {} {}: missing {:?}", basis.0, basis.1, missing)
        }
    };
    out.line(rect_line);
    out.line(format!("dir(F): {}, |dir|={}", r.dir, r.order_bound));
    out.line(format!("conclusion: {}", r.conclusion.as_deref().unwrap_or("none")));
    Ok(out)
}

pub fn generate_sturmian(p: i64, q: i64, d: i64, r: i64, out_file: &Path) -> Result<Outcome, CliError> {
    let alpha = QuadIrrational::new(p, q, d, r)?;
    let text = sturmian_config(alpha).to_text();
    write(out_file, &text)?;
    let mut report = RunReport::new("generate", json!({"kind": "sturmian", "alpha": [p, q, d, r], "out": out_file}));
    report.results = json!({"file": out_file, "bytes": text.len()});
    report.certify("exact");
    let mut out = Outcome::new(report);
    out.line(format!("α = ({p} + {q}√{d}) / {r} ≈ {:.6}", alpha.to_f64()));
    out.line(format!("wrote {} ({} bytes)", out_file.display(), text.len()));
    Ok(out)
}

/// The seed comes from `--seed`, else `LATCFG_SEED`, else 0.
pub fn generate_random(seed: Option<i64>, env: Option<&str>, out_file: &Path) -> Result<Outcome, CliError> {
    let (seed, source) = match (seed, env) {
        (Some(s), _) => (s, "flag"),
        (None, Some(e)) => {
            let s = e.trim().parse().map_err(|_| CliError::Usage(format!("LATCFG_SEED `{e}` is not an integer")))?;
            (s, "env")
        }
        (None, None) => (0, "default"),
    };
    let text = random_product_config(seed).to_text();
    write(out_file, &text)?;
    let mut report = RunReport::new(
        "generate",
        json!({"kind": "random", "seed": seed, "seed_source": source, "out": out_file}),
    );
    report.results = json!({"file": out_file, "bytes": text.len()});
    report.certify("exact");
    let mut out = Outcome::new(report);
    out.line(format!("seed {seed} ({source})"));
    out.line(format!("wrote {} ({} bytes)", out_file.display(), text.len()));
    Ok(out)
}
