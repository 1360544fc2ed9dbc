//! Report rendering: plain text, Markdown and JSON (`lie2alg-report/1`).

use lie2alg::report::{Check, Report};
use serde::Serialize;

pub const SCHEMA: &str = "lie2alg-report/1";

/// Everything a command produces.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: String,
    pub input: String,
    pub seed: u64,
    pub max_degree: u32,
    pub chart_dim: Option<usize>,
    pub report: Report,
    /// Named results, as form literals.
    pub outputs: Vec<(String, String)>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    name: &'a str,
    status: &'static str,
    cases: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    name: &'a str,
    value: &'a str,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: &'static str,
    command: &'a str,
    input: &'a str,
    seed: u64,
    max_degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    chart_dim: Option<usize>,
    passed: bool,
    checks: Vec<JsonCheck<'a>>,
    outputs: Vec<JsonOutput<'a>>,
}

fn elapsed_ms(c: &Check) -> f64 {
    (c.elapsed.as_secs_f64() * 1e6).round() / 1e3
}

pub fn json(o: &Outcome, timings: bool) -> String {
    let r = JsonReport {
        schema: SCHEMA,
        command: &o.command,
        input: &o.input,
        seed: o.seed,
        max_degree: o.max_degree,
        chart_dim: o.chart_dim,
        passed: o.passed(),
        checks: o
            .report
            .sorted()
            .into_iter()
            .map(|c| JsonCheck {
                name: &c.name,
                status: c.status.as_str(),
                cases: c.cases,
                failures: c.failures,
                witness: c.witness.as_deref(),
                residual: c.residual.as_deref(),
                elapsed_ms: timings.then(|| elapsed_ms(c)),
            })
            .collect(),
        outputs: o.outputs.iter().map(|(n, v)| JsonOutput { name: n, value: v }).collect(),
    };
    let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
    s.push('\n');
    s
}

fn header(o: &Outcome) -> String {
    let chart = o.chart_dim.map(|n| format!(", chart R^{n}")).unwrap_or_default();
    format!("{} on {} (seed {}, max degree {}{chart})", o.command, o.input, o.seed, o.max_degree)
}

pub fn text(o: &Outcome, timings: bool) -> String {
    let mut s = header(o);
    s.push('\n');
    for c in o.report.sorted() {
        s.push_str(&format!("{:<8} {} [{} case{}]", c.status.as_str().to_uppercase(), c.name, c.cases, if c.cases == 1 { "" } else { "s" }));
        if timings {
            s.push_str(&format!(" {:.3} ms", elapsed_ms(c)));
        }
        s.push('\n');
        if let Some(w) = &c.witness {
            s.push_str(&format!("         at: {w}\n"));
        }
        if let Some(r) = &c.residual {
            s.push_str(&format!("         residual: {r}\n"));
        }
    }
    for (n, v) in &o.outputs {
        s.push_str(&format!("{n} = {v}\n"));
    }
    let fails = o.report.failing().count();
    s.push_str(&format!("{} checks, {} failed: {}\n", o.report.checks.len(), fails, if fails == 0 { "PASS" } else { "FAIL" }));
    s
}

fn md_cell(s: &str) -> String {
    format!("`{}`", s.replace('|', "\\|"))
}

pub fn markdown(o: &Outcome, timings: bool) -> String {
    let mut s = format!("## {}\n\n", header(o));
    s.push_str(if timings { "| check | status | cases | residual | ms |\n|---|---|---|---|---|\n" } else { "| check | status | cases | residual |\n|---|---|---|---|\n" });
    for c in o.report.sorted() {
        let res = c.residual.as_deref().map(md_cell).unwrap_or_default();
        s.push_str(&format!("| {} | {} | {} | {} |", c.name, c.status.as_str(), c.cases, res));
        if timings {
            s.push_str(&format!(" {:.3} |", elapsed_ms(c)));
        }
        s.push('\n');
    }
    if !o.outputs.is_empty() {
        s.push('\n');
        for (n, v) in &o.outputs {
            s.push_str(&format!("- {n}: {}\n", md_cell(v)));
        }
    }
    s.push_str(&format!("\n**{}**\n", if o.passed() { "PASS" } else { "FAIL" }));
    s
}
