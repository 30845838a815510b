use std::process::Command;

use weighted_blowup::cli::{self, QuotientAnswer};
use weighted_blowup::{BlowupVerdict, Chart, ClassificationReport, SurfaceReport};

fn run(args: &[&str]) -> cli::Output {
    cli::run_from(std::iter::once("wbu").chain(args.iter().copied()))
}

/// Deserialize and serialize again; the bytes must not change.
fn round_trips<T: serde::de::DeserializeOwned + serde::Serialize>(text: &str) {
    let value: T = serde_json::from_str(text).unwrap();
    let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn charts_text() {
    let out = run(&["charts", "--germ", "xy + z^4 + u^4", "--weights", "1,3,1,1"]);
    assert_eq!(out.code, 0);
    assert!(out
        .stdout
        .lines()
        .any(|l| l == "U2 = { x + z^4 + u^4 } / Z_3(-1,1,-1,-1)"));
    assert_eq!(out.stdout.lines().count(), 4);
}

#[test]
fn classify_json() {
    let out = run(&[
        "classify",
        "--germ",
        "xy + z^3 + u^4",
        "--bound",
        "30",
        "--format",
        "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rep: ClassificationReport = serde_json::from_str(&out.stdout).unwrap();
    let got: Vec<[i64; 4]> = rep.accepted.iter().map(|e| e.weights.as_array()).collect();
    assert_eq!(got, vec![[1, 2, 1, 1], [2, 1, 1, 1]]);
    round_trips::<ClassificationReport>(&out.stdout);
}

#[test]
fn quotient_terminal_test() {
    let out = run(&["quotient", "1/3(1,1,1)", "--test", "terminal"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "1/3(1,1,1): terminal: false\n");
    let out = run(&["quotient", "1/3(1,1,1)", "--format", "json"]);
    let ans: QuotientAnswer = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(ans.verdict, Some(false));
    round_trips::<QuotientAnswer>(&out.stdout);
    let out = run(&["quotient", "1/5(1,-2,-2,-1;-1)", "--test", "hyperquotient"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = run(&["quotient", "1/3(1,2)", "--test", "duval"]);
    assert_eq!(out.stdout, "1/3(1,2): type: A_2\n");
}

#[test]
fn json_round_trips_for_every_command() {
    let target = [
        "--germ",
        "xy + z^3 + u^4",
        "--weights",
        "1,2,1,1",
        "--format",
        "json",
    ];
    for cmd in ["charts", "verdict", "surface"] {
        let mut args = vec![cmd];
        args.extend(target);
        let out = run(&args);
        assert_eq!(out.code, 0, "{cmd}: {}", out.stderr);
        match cmd {
            "charts" => round_trips::<Vec<Chart>>(&out.stdout),
            "verdict" => round_trips::<BlowupVerdict>(&out.stdout),
            _ => round_trips::<SurfaceReport>(&out.stdout),
        }
    }
    let out = run(&[
        "quotient-blowup",
        "--order",
        "2",
        "--weights",
        "1,1,3",
        "--format",
        "json",
    ]);
    assert_eq!(out.code, 0);
    round_trips::<Vec<weighted_blowup::blowup::AmbientChart>>(&out.stdout);
}

#[test]
fn text_and_json_verdicts_agree() {
    for w in ["1,2,1,1", "1,5,2,2", "4,1,1,1", "1,1,1,1"] {
        let args = ["verdict", "--germ", "xy + z^3 + u^3", "--weights", w];
        let text = run(&args);
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let json = run(&json_args);
        let v: BlowupVerdict = serde_json::from_str(&json.stdout).unwrap();
        let g = weighted_blowup::parse_germ("xy + z^3 + u^3").unwrap();
        assert_eq!(cli::render_verdict(&g, &v), text.stdout, "{w}");
    }
}

#[test]
fn surface_and_charts_text_and_json_agree() {
    let g = weighted_blowup::parse_germ("xy + z^5 + u^5").unwrap();
    let w = "1,4,1,1".parse().unwrap();
    let json = run(&[
        "surface",
        "--germ",
        "xy + z^5 + u^5",
        "--weights",
        "1,4,1,1",
        "--format",
        "json",
    ]);
    let rep: SurfaceReport = serde_json::from_str(&json.stdout).unwrap();
    let text = run(&[
        "surface",
        "--germ",
        "xy + z^5 + u^5",
        "--weights",
        "1,4,1,1",
    ]);
    assert_eq!(cli::render_surface(&g, &w, &rep), text.stdout);
}

#[test]
fn expect_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.json");
    let out = run(&[
        "classify",
        "--germ",
        "xy + z^4 + u^4",
        "--bound",
        "8",
        "--format",
        "json",
    ]);
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    let ok = run(&[
        "classify",
        "--germ",
        "xy + z^4 + u^4",
        "--bound",
        "8",
        "--expect",
        p,
    ]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);

    let mut rep: ClassificationReport = serde_json::from_str(&out.stdout).unwrap();
    rep.accepted.pop();
    std::fs::write(&path, rep.to_json()).unwrap();
    let bad = run(&[
        "classify",
        "--germ",
        "xy + z^4 + u^4",
        "--bound",
        "8",
        "--expect",
        p,
    ]);
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.contains("mismatch: accepted"));
}

#[test]
fn discrepancy_filter_and_explain() {
    let out = run(&[
        "classify",
        "--germ",
        "xy + z^3 + u^3",
        "--min-discrepancy",
        "2",
        "--format",
        "json",
    ]);
    let rep: ClassificationReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(rep.accepted.is_empty());
    let out = run(&[
        "classify",
        "--germ",
        "xy + z^2 + u^5",
        "--bound",
        "6",
        "--max-discrepancy",
        "1",
    ]);
    assert!(out.stdout.contains("accepted (1):"));
    let out = run(&[
        "classify",
        "--germ",
        "xy + z^3 + u^3",
        "--bound",
        "6",
        "--explain",
        "1,5,2,2",
    ]);
    assert!(out
        .stdout
        .contains("rejected: non-terminal point in chart 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["charts", "--germ", "xy + z^", "--weights", "1,1,1,1"]).code,
        2
    );
    assert_eq!(
        run(&["charts", "--germ", "z^3 + u^3", "--weights", "1,1,1,1"]).code,
        2
    );
    assert_eq!(
        run(&["verdict", "--germ", "xy + z^3", "--weights", "0,1,1,1"]).code,
        2
    );
    assert_eq!(
        run(&["verdict", "--germ", "xy + z^3", "--weights", "2,2,2,2"]).code,
        2
    );
    assert_eq!(run(&["verdict", "--weights", "1,1,1,1"]).code, 2);
    assert_eq!(run(&["quotient", "1/0(1,1)"]).code, 2);
    assert_eq!(
        run(&["classify", "--germ", "xy + z^3", "--bound", "0"]).code,
        2
    );
    let out = run(&[
        "surface",
        "--germ",
        "xy + z^2 + zu + u^2",
        "--weights",
        "1,1,1,2",
    ]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("outside the Du Val catalogue"));
    assert!(out.stdout.is_empty());
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn binary_streams_and_status() {
    let bin = env!("CARGO_BIN_EXE_wbu");
    let out = Command::new(bin)
        .args(["quotient", "1/2(1,1,1)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "1/2(1,1,1): terminal: true\n"
    );
    let out = Command::new(bin)
        .args(["charts", "--germ", "xy + q", "--weights", "1,1,1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}
