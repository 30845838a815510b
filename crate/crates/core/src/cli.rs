//! Command-line front end. Parsing is done by clap; [`run`] turns a parsed
//! [`Cli`] into an [`Output`] (exit status plus the two streams) so the
//! whole interface can be exercised without spawning a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::blowup::{make_charts, quotient_blowup, Chart, WeightVector};
use crate::classify::{classify_extractions, ClassificationReport, DEFAULT_BOUND};
use crate::error::Error;
use crate::germ::{parse_germ, GermModel};
use crate::quotient::{
    duval_of_surface_quotient, is_isolated_action, is_terminal_hyperquotient, is_terminal_quotient,
    reid_tai_terminal, CyclicQuotient,
};
use crate::surface::{surface_report, SurfaceReport};
use crate::terminality::{blowup_verdict, BlowupVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "wbu",
    version,
    about = "Weighted blow-ups of cA threefold germs xy + f(z,u)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Target {
    /// Germ such as "xy + z^3 + u^4".
    #[arg(long)]
    pub germ: String,
    /// Weights a,b,c,d of x,y,z,u.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the four affine charts of the blow-up.
    Charts(Target),
    /// Terminality verdict for one weight vector.
    Verdict(Target),
    /// Invariants of the exceptional surface.
    Surface(Target),
    /// Classify all weighted blow-ups up to a bound.
    Classify {
        #[arg(long)]
        germ: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        /// Keep accepted vectors with discrepancy at least this.
        #[arg(long)]
        min_discrepancy: Option<i64>,
        /// Keep accepted vectors with discrepancy at most this.
        #[arg(long)]
        max_discrepancy: Option<i64>,
        /// JSON report to compare against; mismatch exits with status 1.
        #[arg(long)]
        expect: Option<PathBuf>,
        /// Also print the full verdict for this weight vector.
        #[arg(long)]
        explain: Option<String>,
    },
    /// Test a cyclic quotient literal such as "1/5(1,-2,-2)".
    Quotient {
        #[arg(allow_hyphen_values = true)]
        literal: String,
        #[arg(long, value_enum, default_value_t = QuotientTest::Terminal)]
        test: QuotientTest,
    },
    /// Ambient charts of the weighted blow-up of C^n / Z_m(a).
    QuotientBlowup {
        /// Order m of the base quotient.
        #[arg(long, default_value_t = 1)]
        order: i64,
        /// Blow-up weights a_1,...,a_n.
        #[arg(long)]
        weights: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientTest {
    Terminal,
    Isolated,
    Duval,
    Hyperquotient,
}

/// Result of a `quotient` invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientAnswer {
    pub quotient: CyclicQuotient,
    pub test: QuotientTest,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Output {
        let code = match e {
            Error::Parse { .. } | Error::InvalidInput(_) => EXIT_INVALID,
            Error::UnsupportedShape(_) | Error::Inconsistent(_) => EXIT_UNSUPPORTED,
        };
        Output {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parse `args` (including the program name) and run.
pub fn run_from<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => Output::error(&e),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn target(t: &Target) -> Result<(GermModel, WeightVector), Error> {
    Ok((parse_germ(&t.germ)?, t.weights.parse()?))
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Charts(t) => {
            let (g, w) = target(t)?;
            let charts = make_charts(&g, &w);
            Ok(Output::ok(match fmt {
                Format::Json => json(&charts),
                Format::Text => render_charts(&charts),
            }))
        }
        Command::Verdict(t) => {
            let (g, w) = target(t)?;
            let v = blowup_verdict(&g, &w)?;
            Ok(Output::ok(match fmt {
                Format::Json => json(&v),
                Format::Text => render_verdict(&g, &v),
            }))
        }
        Command::Surface(t) => {
            let (g, w) = target(t)?;
            let rep = surface_report(&g, &w)?;
            Ok(Output::ok(match fmt {
                Format::Json => json(&rep),
                Format::Text => render_surface(&g, &w, &rep),
            }))
        }
        Command::Classify {
            germ,
            bound,
            min_discrepancy,
            max_discrepancy,
            expect,
            explain,
        } => {
            let g = parse_germ(germ)?;
            if *bound < 1 {
                return Err(Error::InvalidInput(format!(
                    "bound must be positive, got {bound}"
                )));
            }
            let explained = match explain {
                Some(w) => Some(blowup_verdict(&g, &w.parse()?)?),
                None => None,
            };
            let mut rep = classify_extractions(&g, *bound)?;
            if min_discrepancy.is_some() || max_discrepancy.is_some() {
                rep.restrict_discrepancy(*min_discrepancy, *max_discrepancy);
            }
            let mut out = Output::ok(match fmt {
                Format::Json => json(&rep),
                Format::Text => render_classification(&rep),
            });
            if let Some(v) = explained {
                match fmt {
                    Format::Text => out
                        .stdout
                        .push_str(&format!("\nexplain:\n{}", render_verdict(&g, &v))),
                    Format::Json => out.stderr.push_str(&render_verdict(&g, &v)),
                }
            }
            if let Some(path) = expect {
                compare_expected(&rep, path, &mut out)?;
            }
            Ok(out)
        }
        Command::Quotient { literal, test } => {
            let q: CyclicQuotient = literal.parse()?;
            let ans = quotient_answer(q, *test)?;
            Ok(Output::ok(match fmt {
                Format::Json => json(&ans),
                Format::Text => render_quotient(&ans),
            }))
        }
        Command::QuotientBlowup { order, weights } => {
            let a = parse_int_list(weights)?;
            let charts = quotient_blowup(*order, &a)?;
            Ok(Output::ok(match fmt {
                Format::Json => json(&charts),
                Format::Text => charts.iter().map(|c| c.render() + "\n").collect(),
            }))
        }
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("not an integer list: {s:?}")))
        })
        .collect()
}

fn compare_expected(
    rep: &ClassificationReport,
    path: &PathBuf,
    out: &mut Output,
) -> Result<(), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let expected: ClassificationReport = serde_json::from_str(&text).map_err(|e| {
        Error::InvalidInput(format!(
            "{} is not a classification report: {e}",
            path.display()
        ))
    })?;
    let mut diffs = Vec::new();
    if expected.germ != rep.germ {
        diffs.push(format!(
            "germ: expected {}, got {}",
            expected.germ, rep.germ
        ));
    }
    if expected.bound != rep.bound {
        diffs.push(format!(
            "bound: expected {}, got {}",
            expected.bound, rep.bound
        ));
    }
    if expected.accepted != rep.accepted {
        let show = |r: &ClassificationReport| {
            r.accepted
                .iter()
                .map(|e| format!("{}:{}", e.weights, e.discrepancy))
                .collect::<Vec<_>>()
                .join(" ")
        };
        diffs.push(format!(
            "accepted: expected [{}], got [{}]",
            show(&expected),
            show(rep)
        ));
    }
    if expected.discrepancy_one_count != rep.discrepancy_one_count {
        diffs.push(format!(
            "discrepancy_one_count: expected {}, got {}",
            expected.discrepancy_one_count, rep.discrepancy_one_count
        ));
    }
    if expected.rejected_summary != rep.rejected_summary {
        diffs.push("rejected_summary differs".into());
    }
    if expected.orbits != rep.orbits {
        diffs.push("orbits differ".into());
    }
    if diffs.is_empty() {
        out.stderr
            .push_str(&format!("matches {}\n", path.display()));
    } else {
        out.code = EXIT_MISMATCH;
        for d in diffs {
            let _ = writeln!(out.stderr, "mismatch: {d}");
        }
    }
    Ok(())
}

pub fn quotient_answer(q: CyclicQuotient, test: QuotientTest) -> Result<QuotientAnswer, Error> {
    let (verdict, label) = match test {
        QuotientTest::Terminal => {
            if q.equation_weight().is_some() {
                return Err(Error::InvalidInput(
                    "terminal test takes a quotient without an equation weight; use --test hyperquotient".into(),
                ));
            }
            let primary = is_isolated_action(&q) && is_terminal_quotient(&q);
            let oracle = is_isolated_action(&q) && reid_tai_terminal(&q);
            if primary != oracle {
                return Err(Error::Inconsistent(format!(
                    "normal-form rule gives {primary}, Reid–Tai sum gives {oracle} for {q}"
                )));
            }
            (Some(primary), None)
        }
        QuotientTest::Isolated => (Some(is_isolated_action(&q)), None),
        QuotientTest::Duval => (None, Some(duval_of_surface_quotient(&q)?.label())),
        QuotientTest::Hyperquotient => {
            if q.equation_weight().is_none() || q.weights().len() != 4 {
                return Err(Error::InvalidInput(
                    "hyperquotient test needs four weights and an equation weight, as in 1/r(a,b,c,d;e)".into(),
                ));
            }
            (Some(is_terminal_hyperquotient(&q)), None)
        }
    };
    Ok(QuotientAnswer {
        quotient: q,
        test,
        verdict,
        label,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_charts(charts: &[Chart]) -> String {
    charts.iter().map(|c| c.render() + "\n").collect()
}

pub fn render_verdict(g: &GermModel, v: &BlowupVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "germ: {g}");
    let _ = writeln!(s, "weights: {}", v.weights);
    let _ = writeln!(s, "discrepancy: {}", v.discrepancy);
    let _ = writeln!(
        s,
        "exceptional: irreducible {}, reduced {}",
        yes_no(v.exceptional.irreducible),
        yes_no(v.exceptional.reduced)
    );
    if !v.singular_points.is_empty() {
        let _ = writeln!(s, "singular points:");
        for p in &v.singular_points {
            let _ = writeln!(s, "  {p}");
        }
    }
    let _ = writeln!(s, "terminal: {}", v.terminal);
    match &v.rejection_reason {
        Some(r) => {
            let _ = writeln!(s, "rejected: {r}");
        }
        None => {
            let _ = writeln!(s, "accepted");
        }
    }
    s
}

pub fn render_surface(g: &GermModel, w: &WeightVector, r: &SurfaceReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "germ: {g}");
    let _ = writeln!(s, "weights: {w}");
    let _ = writeln!(s, "K_E^2: {}", r.k2);
    if r.singular_points.is_empty() {
        let _ = writeln!(s, "singular points: none");
    } else {
        let _ = writeln!(s, "singular points:");
        for p in &r.singular_points {
            let at = if p.location.is_empty() {
                "origin".to_string()
            } else {
                format!("{} != 0", p.location.iter().collect::<String>())
            };
            let _ = writeln!(s, "  U{} {at}: {}", p.chart_index, p.label());
        }
    }
    let _ = writeln!(s, "K^2 of resolution: {}", r.k2_resolution);
    let _ = writeln!(s, "euler number: {}", r.euler_resolution);
    let _ = writeln!(s, "b2: {}", r.b2_resolution);
    let _ = writeln!(s, "picard number: {}", r.picard);
    match &r.curve_data {
        Some(c) => {
            let _ = writeln!(
                s,
                "x = 0 section: {} component(s) of multiplicity {}",
                c.component_count, c.multiplicity
            );
            let _ = writeln!(s, "  (x = 0)^2: {}", c.total);
            let _ = writeln!(s, "  self-intersection: {}", c.self_intersection);
            let _ = writeln!(s, "  pairwise intersection: {}", c.pairwise_intersection);
            let _ = writeln!(s, "  on the resolution: {}", c.resolved_self_intersection);
            if !c.passes_through.is_empty() {
                let _ = writeln!(s, "  through: {}", c.passes_through.join(", "));
            }
        }
        None => {
            let _ = writeln!(s, "x = 0 section: not computed");
        }
    }
    s
}

pub fn render_classification(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "germ: {}", r.germ);
    let _ = writeln!(s, "bound: {}", r.bound);
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = writeln!(s, "accepted ({}):", r.accepted.len());
    for e in &r.accepted {
        let _ = writeln!(s, "  {}  discrepancy {}", e.weights, e.discrepancy);
    }
    let _ = writeln!(s, "discrepancy-one count: {}", r.discrepancy_one_count);
    let _ = writeln!(s, "orbits under coordinate symmetries: {}", r.orbits.len());
    for o in &r.orbits {
        let ws: Vec<String> = o.iter().map(|w| w.to_string()).collect();
        let _ = writeln!(s, "  {}", ws.join(" ~ "));
    }
    let _ = writeln!(s, "rejected:");
    for (reason, n) in &r.rejected_summary {
        let _ = writeln!(s, "  {n:>7}  {reason}");
    }
    s
}

pub fn render_quotient(a: &QuotientAnswer) -> String {
    let test = match a.test {
        QuotientTest::Terminal => "terminal",
        QuotientTest::Isolated => "isolated",
        QuotientTest::Duval => "type",
        QuotientTest::Hyperquotient => "terminal (hyperquotient inequality)",
    };
    match (&a.verdict, &a.label) {
        (Some(v), _) => format!("{}: {test}: {v}\n", a.quotient),
        (None, Some(l)) => format!("{}: {test}: {l}\n", a.quotient),
        (None, None) => format!("{}\n", a.quotient),
    }
}
