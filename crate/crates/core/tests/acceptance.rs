//! Acceptance suite A1–A9. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use weighted_blowup::arith::{gcd, gcd_all};
use weighted_blowup::{
    blowup_verdict, classify_extractions, count_discrepancy_one, deg_min, hj_expand,
    is_isolated_action, is_terminal_quotient, make_charts, parse_germ, reid_tai_terminal,
    surface_report, CyclicQuotient, GermModel, Rational, SurfacePointType, WeightVector,
};

type Criterion = (&'static str, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn w(a: i64, b: i64, c: i64, d: i64) -> WeightVector {
    WeightVector::new(a, b, c, d).unwrap()
}

fn family(n: i64) -> Vec<(WeightVector, i64)> {
    (1..n).map(|k| (w(k, n - k, 1, 1), 1)).collect()
}

fn accepted(g: &GermModel) -> Vec<(WeightVector, i64)> {
    classify_extractions(g, 30)
        .unwrap()
        .accepted
        .iter()
        .map(|e| (e.weights, e.discrepancy))
        .collect()
}

fn a1() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 3..=6 {
        let got = accepted(&GermModel::fermat(n));
        if got != family(n) {
            bad.push(format!("n={n}: {got:?}"));
        }
    }
    let elapsed = t.elapsed();
    let fast = elapsed < Duration::from_secs(60);
    check(
        bad.is_empty() && fast,
        format!(
            "xy+z^n+u^n, n=3..6, bound 30: accepted = (k,n-k,1,1) with discrepancy 1{}; {:.1?} (< 60 s)",
            if bad.is_empty() { String::new() } else { format!(", mismatches {bad:?}") },
            elapsed
        ),
    )
}

fn z3u4() -> GermModel {
    parse_germ("xy + z^3 + u^4").unwrap()
}

fn a2() -> Outcome {
    let got = accepted(&z3u4());
    let want = vec![(w(1, 2, 1, 1), 1), (w(2, 1, 1, 1), 1)];
    let shown: Vec<String> = got.iter().map(|(v, d)| format!("{v}[{d}]")).collect();
    check(
        got == want,
        format!("xy+z^3+u^4, bound 30: accepted {}", shown.join(" ")),
    )
}

fn a3() -> Outcome {
    let mut high = Vec::new();
    for g in (3..=6).map(GermModel::fermat).chain([z3u4()]) {
        let mut rep = classify_extractions(&g, 30).unwrap();
        rep.restrict_discrepancy(Some(2), None);
        high.extend(rep.accepted.iter().map(|e| format!("{g}: {}", e.weights)));
    }
    check(
        high.is_empty(),
        format!("accepted vectors with discrepancy >= 2: {}", high.len()),
    )
}

fn read_fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/charts")
        .join(name);
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn a4() -> Outcome {
    let mut cases: Vec<(String, GermModel, WeightVector)> = (3..=5)
        .map(|n| {
            (
                format!("fermat_{n}.txt"),
                GermModel::fermat(n),
                w(1, n - 1, 1, 1),
            )
        })
        .collect();
    cases.push(("z3_u4.txt".into(), z3u4(), w(1, 2, 1, 1)));
    let mut bad = Vec::new();
    for (file, g, wv) in &cases {
        let rendered: String = make_charts(g, wv)
            .iter()
            .map(|c| c.render() + "\n")
            .collect();
        if rendered != read_fixture(file) {
            bad.push(file.clone());
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{} chart fixtures byte-exact; mismatched: {bad:?}",
            cases.len()
        ),
    )
}

fn a5() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=8 {
        let r = surface_report(&GermModel::fermat(n), &w(1, n - 1, 1, 1)).unwrap();
        let c = r.curve_data.clone().unwrap();
        let ok = r.k2 == Rational::new(4 * n, n - 1)
            && r.k2_resolution == Rational::from(9 - n)
            && r.euler_resolution == n + 3
            && r.picard == n
            && c.self_intersection == Rational::new(1, n - 1) - 1
            && c.resolved_self_intersection == Rational::from(-1);
        if !ok {
            bad.push(format!("n={n}"));
        }
    }
    let r = surface_report(&z3u4(), &w(1, 2, 1, 1)).unwrap();
    let mut kinds: Vec<SurfacePointType> =
        r.singular_points.iter().map(|p| p.kind.clone()).collect();
    kinds.sort_by_key(|k| k.label());
    let c = r.curve_data.clone().unwrap();
    let ok = r.k2 == Rational::from(6)
        && kinds == vec![SurfacePointType::DuValA(1), SurfacePointType::DuValA(2)]
        && r.picard == 1
        && c.component_count == 1
        && c.resolved_self_intersection == Rational::from(-1);
    if !ok {
        bad.push("xy+z^3+u^4".into());
    }
    check(
        bad.is_empty(),
        format!("K^2, resolution K^2, euler, picard, x = 0 curves for n=3..8 and xy+z^3+u^4; failing: {bad:?}"),
    )
}

fn a6() -> Outcome {
    let mut points = 0;
    let mut bad = Vec::new();
    for n in 3..=5 {
        for c in 1..=30 {
            for a in 1..=30 {
                let b = n * c - a;
                if !(1..=30).contains(&b) || gcd_all(&[a, b, c]) != 1 {
                    continue;
                }
                points += 1;
                let v = blowup_verdict(&GermModel::fermat(n), &w(a, b, c, c)).unwrap();
                let expected = (c - 1) % a == 0 && (c - 1) % b == 0;
                if v.terminal != expected {
                    bad.push(format!("n={n} ({a},{b},{c},{c})"));
                }
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{points} grid points a+b=nc=nd, terminal <=> c=1 mod a and mod b; disagreements {bad:?}"),
    )
}

fn a7() -> Outcome {
    let t = Instant::now();
    let (checked, mismatches): (u64, u64) = (2..=60i64)
        .into_par_iter()
        .map(|r| {
            let mut checked = 0;
            let mut bad = 0;
            for x in 1..r {
                for y in 1..r {
                    for z in 1..r {
                        let q = CyclicQuotient::new(r, &[x, y, z]).unwrap();
                        if !is_isolated_action(&q) {
                            continue;
                        }
                        checked += 1;
                        if is_terminal_quotient(&q) != reid_tai_terminal(&q) {
                            bad += 1;
                        }
                    }
                }
            }
            (checked, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let elapsed = t.elapsed();
    check(
        mismatches == 0 && elapsed < Duration::from_secs(30),
        format!(
            "{checked} isolated triples, r <= 60: {mismatches} mismatches; {elapsed:.1?} (< 30 s)"
        ),
    )
}

fn a8() -> Outcome {
    let mut germs: Vec<GermModel> = (3..=6).map(GermModel::fermat).collect();
    germs.push(z3u4());
    germs.push(parse_germ("xy + z^2 + u^5").unwrap());
    let mut bad = Vec::new();
    for g in &germs {
        let got = count_discrepancy_one(g, 30).unwrap();
        if got != deg_min(g) - 1 {
            bad.push(format!("{g}: {got}"));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "discrepancy-one count = deg_min - 1 for {} germs; failing {bad:?}",
            germs.len()
        ),
    )
}

fn a9() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in 2..=200 {
        for q in 1..r {
            if gcd(q, r) != 1 {
                continue;
            }
            checked += 1;
            let c = hj_expand(r, q).unwrap();
            let all_two = c.entries.iter().all(|&b| b == 2);
            if c.reconstruct() != Rational::new(r, q) || all_two != (q == r - 1) {
                bad.push((r, q));
            }
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{checked} pairs (r,q), r <= 200: reconstruction and all-2 chains; failing {bad:?}"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("A1", "classification of xy + z^n + u^n", a1),
        ("A2", "classification of xy + z^3 + u^4", a2),
        ("A3", "no accepted discrepancy >= 2", a3),
        ("A4", "chart fixtures", a4),
        ("A5", "surface invariants", a5),
        ("A6", "terminality grid cross-check", a6),
        ("A7", "quotient oracle agreement", a7),
        ("A8", "divisor counting", a8),
        ("A9", "Hirzebruch-Jung reconstruction", a9),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let o = f();
        println!(
            "{id} {} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
