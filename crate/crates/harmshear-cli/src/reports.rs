//! Renders a scenario outcome as human-readable text and as a stable
//! line-based key=value report.
//!
//! Both renderings are byte-deterministic: every float goes through `f64`'s
//! shortest-roundtrip `Display` (or `LowerExp` for tolerances and tails), and
//! checks appear in scenario order.

use harmshear::report::Verdict;
use num_complex::Complex64;

use crate::runner::ScenarioOutcome;

pub fn fmt_complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

/// The structured `.rpt` rendering.
pub fn render_rpt(outcome: &ScenarioOutcome) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line("schema=1".into());
    line(format!("scenario={}", outcome.name));
    line("seed=42".into());
    line(format!("order={}", outcome.order));
    line(format!("grid={}", outcome.grid));
    line(format!("maps={}", outcome.map_names.join(",")));
    line(format!("checks={}", outcome.records.len()));
    for (i, r) in outcome.records.iter().enumerate() {
        let mut kv = |key: &str, value: String| line(format!("check.{i}.{key}={value}"));
        kv("kind", r.kind.into());
        kv("subject", r.subject.clone());
        kv("expected", verdict_str(r.expected).into());
        kv("verdict", verdict_str(r.verdict).into());
        kv("extremal", format!("{}", r.extremal));
        kv("tolerance", format!("{:e}", r.tolerance));
        kv("tail", format!("{:e}", r.tail));
        if let Some(w) = r.witness {
            kv("witness", fmt_complex(w));
        }
        for (k, v) in &r.extras {
            kv(k, v.clone());
        }
    }
    line(format!(
        "result={}",
        if outcome.all_matched() { "ok" } else { "mismatch" }
    ));
    out
}

/// The human rendering (also written to `<name>.txt`).
pub fn render_text(outcome: &ScenarioOutcome) -> String {
    let mut out = String::new();
    out.push_str(&format!("scenario {}\n", outcome.name));
    out.push_str(&format!(
        "order {}, grid {}, maps: {}\n",
        outcome.order,
        outcome.grid,
        if outcome.map_names.is_empty() {
            "(none)".to_string()
        } else {
            outcome.map_names.join(", ")
        }
    ));
    let total = outcome.records.len();
    for (i, r) in outcome.records.iter().enumerate() {
        let marker = if r.matched() { "ok  " } else { "MISMATCH" };
        out.push_str(&format!(
            "[{}/{}] {} {}: {} (expected {}) extremal {} tol {:e}",
            i + 1,
            total,
            r.kind,
            r.subject,
            verdict_str(r.verdict),
            verdict_str(r.expected),
            r.extremal,
            r.tolerance,
        ));
        if let Some(w) = r.witness {
            out.push_str(&format!(" witness {}", fmt_complex(w)));
        }
        for (k, v) in &r.extras {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push_str(&format!(" [{}]\n", marker.trim()));
    }
    out.push_str(&format!(
        "result: {} - {}/{} checks as expected\n",
        if outcome.all_matched() { "ok" } else { "mismatch" },
        outcome.matched_count(),
        total
    ));
    out
}
