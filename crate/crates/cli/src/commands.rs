//! Verification commands over spec files, bundled examples and seeded data.

use crate::bundled;
use crate::document::{parse, Document, SpecError};
use crate::emit::Outcome;
use crate::model::{self, AlgebroidModel, ClwxModel};
use lie2alg::algebroid::Family;
use lie2alg::clwx::{check_clwx_axioms, ClwxExtension, ClwxFamily};
use lie2alg::der3::{check_der_lie3, check_lie3_morphism};
use lie2alg::gla::{GradedLie2, LieAlgebra, QuadraticLie2};
use lie2alg::linalg::RatMatrix;
use lie2alg::pontryagin::{check_cs5, check_gamma_consistency, cs5_primitive, GaugeMap, QuadraticSplitData};
use lie2alg::rat::Rat;
use lie2alg::report::{Checker, Report};
use lie2alg::samples::{self, Sampler};
use std::path::{Path, PathBuf};

pub const DEFAULT_CHART_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VerifyTarget {
    Liealg,
    CrossedModule,
    Lie2,
    Algebroid,
    Der3,
    Clwx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PontryaginTask {
    Compute,
    CheckClosed,
    CheckShifts,
    CheckCs5,
    CheckGauge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Demo {
    So3,
    Abelian,
    Heisenberg,
}

#[derive(Clone, Debug)]
pub enum Command {
    Verify(VerifyTarget, PathBuf),
    /// Without a file, a seeded random so(3) pair `(A, B)` is used.
    Pontryagin(PontryaginTask, Option<PathBuf>),
    Demo(Demo),
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Overrides the `chart` key of the input.
    pub chart_dim: Option<usize>,
    pub seed: u64,
    pub max_degree: u32,
}

impl Default for Options {
    fn default() -> Options {
        Options { chart_dim: None, seed: 0, max_degree: 2 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Spec {
        path: String,
        #[source]
        source: SpecError,
    },
    #[error("{path}: a `{found}` file cannot be used here; expected kind {expected}")]
    Kind { path: String, found: String, expected: String },
    #[error("{0}")]
    Engine(String),
}

struct Input {
    label: String,
    doc: Document,
}

fn load(path: &Path) -> Result<Input, CliError> {
    let label = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: label.clone(), source })?;
    let doc = parse(&src).map_err(|source| CliError::Spec { path: label.clone(), source })?;
    Ok(Input { label, doc })
}

fn bundled_input(name: &str, src: &str) -> Input {
    Input { label: format!("bundled:{name}"), doc: parse(src).expect("bundled specs parse") }
}

impl Input {
    fn expect_kind(&self, kinds: &[&str]) -> Result<(), CliError> {
        if kinds.contains(&self.doc.kind.as_str()) {
            return Ok(());
        }
        Err(CliError::Kind { path: self.label.clone(), found: self.doc.kind.clone(), expected: kinds.join(" | ") })
    }

    fn spec<T>(&self, r: Result<T, SpecError>) -> Result<T, CliError> {
        r.map_err(|source| CliError::Spec { path: self.label.clone(), source })
    }

    fn algebroid(&self, o: &Options) -> Result<AlgebroidModel, CliError> {
        self.expect_kind(&["algebroid", "gamma_connection", "gauge"])?;
        if self.doc.kind == "gauge" {
            return Ok(self.spec(model::gauge_doc(&self.doc, o.chart_dim, DEFAULT_CHART_DIM))?.base);
        }
        self.spec(model::algebroid_doc(&self.doc, o.chart_dim, DEFAULT_CHART_DIM))
    }
}

fn engine(e: impl std::fmt::Display) -> CliError {
    CliError::Engine(e.to_string())
}

/// Symmetry and ad-invariance of a bilinear form on a Lie algebra.
fn check_invariant_form(g: &LieAlgebra, k: &RatMatrix) -> Report {
    let d = g.dim;
    let basis = |i: usize| -> Vec<Rat> { (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect() };
    let kf = |x: &[Rat], y: &[Rat]| -> Rat { x.iter().zip(k.apply_rat(y)).fold(Rat::zero(), |s, (p, q)| s + p * &q) };
    let mut sym = Checker::new("liealg.form-symmetric");
    let mut inv = Checker::new("liealg.form-invariant");
    for i in 0..d {
        for j in 0..d {
            sym.case(|| format!("(e{}, e{})", i + 1, j + 1), &(k.get(i, j) - k.get(j, i)));
            for l in 0..d {
                let (u, v, w) = (basis(i), basis(j), basis(l));
                let r = kf(&g.br(&u, &v), &w) + kf(&v, &g.br(&u, &w));
                inv.case(|| format!("(e{}, e{}, e{})", i + 1, j + 1, l + 1), &r);
            }
        }
    }
    Report { checks: vec![sym.finish(), inv.finish()] }
}

fn verify_lie2(fib: &model::Fiber, pos: crate::document::Pos) -> Result<Report, SpecError> {
    let mut r = fib.lie.check_lie2_axioms();
    if fib.pairing.is_some() {
        r.extend(fib.quadratic(pos)?.check_quadratic());
    }
    Ok(r)
}

fn family(m: &AlgebroidModel) -> Family {
    Family::new(m.n, m.fiber.lie.g, m.fiber.lie.a)
}

fn algebroid_report(m: &AlgebroidModel) -> Report {
    let fam = family(m);
    let mut r = m.algebroid.check_structure_equations(&fam);
    r.extend(m.algebroid.check_axioms_on_sections(&fam));
    r
}

fn verify(target: VerifyTarget, input: &Input, o: &Options) -> Result<(Report, Vec<(String, String)>, Option<usize>), CliError> {
    let doc = &input.doc;
    let mut outputs = Vec::new();
    let (report, n) = match target {
        VerifyTarget::Liealg => {
            input.expect_kind(&["liealg"])?;
            let (g, form) = input.spec(model::liealg_doc(doc))?;
            let mut r = g.check_jacobi();
            if let Some(k) = form {
                r.extend(check_invariant_form(&g, &k));
            }
            (r, None)
        }
        VerifyTarget::CrossedModule => {
            input.expect_kind(&["crossed_module"])?;
            let cm = input.spec(model::crossed_module_doc(doc))?;
            let mut r = cm.check_crossed_module();
            let lie2 = GradedLie2::from_crossed_module(&cm);
            r.extend(lie2.check_lie2_axioms());
            let mut rt = Checker::new("crossed.round-trip");
            match lie2.to_crossed_module() {
                Ok(back) if back == cm => rt.case(String::new, &Rat::zero()),
                Ok(_) => rt.fail("", "to_crossed_module(from_crossed_module(cm)) differs from cm"),
                Err(e) => rt.fail("", e.to_string()),
            }
            r.push(rt.finish());
            (r, None)
        }
        VerifyTarget::Lie2 => {
            input.expect_kind(&["lie2"])?;
            let fib = input.spec(model::lie2_doc(doc))?;
            (input.spec(verify_lie2(&fib, doc.kind_pos))?, None)
        }
        VerifyTarget::Algebroid => {
            let m = input.algebroid(o)?;
            let mut r = input.spec(verify_lie2(&m.fiber, m.pos))?.scoped("fiber");
            r.extend(algebroid_report(&m));
            (r, Some(m.n))
        }
        VerifyTarget::Der3 => {
            input.expect_kind(&["lie2", "algebroid", "gamma_connection", "gauge"])?;
            if doc.kind == "lie2" {
                let fib = input.spec(model::lie2_doc(doc))?;
                let n = o.chart_dim.unwrap_or(DEFAULT_CHART_DIM);
                (check_der_lie3(&fib.lie, n), Some(n))
            } else {
                let m = input.algebroid(o)?;
                let mut r = check_der_lie3(&m.fiber.lie, m.n);
                r.extend(check_lie3_morphism(&m.algebroid, &family(&m)));
                (r, Some(m.n))
            }
        }
        VerifyTarget::Clwx => {
            input.expect_kind(&["clwx"])?;
            match input.spec(model::clwx_doc(doc, o.chart_dim, DEFAULT_CHART_DIM))? {
                ClwxModel::Skeletal(s) => {
                    let n = s.h().nvars();
                    outputs.push(("H".into(), s.h().to_string()));
                    (check_clwx_axioms(&s, &ClwxFamily::new(n, 0, 0)), Some(n))
                }
                ClwxModel::Extension(e) => {
                    let b = e.data().base();
                    let n = b.nvars();
                    outputs.push(("H".into(), e.h().to_string()));
                    (check_clwx_axioms(&e, &ClwxFamily::new(n, b.g(), b.a())), Some(n))
                }
            }
        }
    };
    Ok((report, outputs, n))
}

/// A seeded so(3) pair `(A, B)` with coefficients of degree at most `max_degree`.
pub fn random_so3(o: &Options) -> AlgebroidModel {
    let n = o.chart_dim.unwrap_or(DEFAULT_CHART_DIM);
    let q = samples::quadratic_so3();
    let mut s = Sampler::new(o.seed);
    s.max_degree = o.max_degree;
    let a = s.form(n, 1, 3, 0.6);
    let b = s.form(n, 2, 3, 0.4);
    let algebroid = lie2alg::algebroid::from_gamma_connection(&q.lie, &a, &b).expect("dimensions agree");
    AlgebroidModel {
        n,
        fiber: model::Fiber { lie: q.lie, pairing: Some(q.pairing) },
        algebroid,
        connection: Some((a, b)),
        pos: Default::default(),
    }
}

fn names(prefix: &str, d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("{prefix}{i}")).collect()
}

fn connection_outputs(m: &AlgebroidModel, out: &mut Vec<(String, String)>) {
    if let Some((a, b)) = &m.connection {
        out.push(("A".into(), a.to_text(&names("e", m.fiber.lie.g))));
        out.push(("B".into(), b.to_text(&names("f", m.fiber.lie.a))));
    }
}

fn quadratic_fiber(m: &AlgebroidModel) -> Result<QuadraticLie2, CliError> {
    m.fiber.quadratic(m.pos).map_err(engine)
}

fn pontryagin(task: PontryaginTask, input: Option<&Input>, o: &Options) -> Result<(Report, Vec<(String, String)>, usize), CliError> {
    if task == PontryaginTask::CheckGauge {
        return check_gauge(input, o);
    }
    let m = match input {
        Some(i) => i.algebroid(o)?,
        None => random_so3(o),
    };
    let q = m.quadratic().map_err(engine)?;
    let mut out = Vec::new();
    let mut r = Report::new();
    match task {
        PontryaginTask::Compute => {
            connection_outputs(&m, &mut out);
            out.push(("pontryagin-5form".into(), q.pontryagin_5form().to_string()));
            if let Some((a, b)) = &m.connection {
                let fib = quadratic_fiber(&m)?;
                out.push(("cs5-primitive".into(), cs5_primitive(&fib, a, b).to_string()));
                r.extend(check_cs5(&fib, a, b));
            }
            r.extend(q.check_invariants());
            r.extend(q.check_closed());
        }
        PontryaginTask::CheckClosed => r.extend(q.check_closed()),
        PontryaginTask::CheckShifts => r.extend(shift_checks(&q, &m, o)?),
        PontryaginTask::CheckCs5 => {
            let (a, b) = m.connection().map_err(engine)?;
            let fib = quadratic_fiber(&m)?;
            r.extend(check_cs5(&fib, a, b));
            r.extend(check_gamma_consistency(&fib, a, b).map_err(engine)?);
        }
        PontryaginTask::CheckGauge => unreachable!(),
    }
    Ok((r, out, m.n))
}

/// One seeded `γ'` and one seeded `θ`.
fn shift_checks(q: &QuadraticSplitData, m: &AlgebroidModel, o: &Options) -> Result<Report, CliError> {
    let mut s = Sampler::new(o.seed);
    s.max_degree = o.max_degree;
    let (g, a) = (m.fiber.lie.g, m.fiber.lie.a);
    let gamma2 = s.form(m.n, 2, a, 0.5);
    let theta = s.form(m.n, 1, g, 0.5);
    let mut r = q.gamma_shift_check(&gamma2).map_err(engine)?;
    r.extend(q.sigma_shift_check(&theta).map_err(engine)?);
    Ok(r)
}

fn check_gauge(input: Option<&Input>, o: &Options) -> Result<(Report, Vec<(String, String)>, usize), CliError> {
    let (m, gauge) = match input {
        Some(i) => {
            i.expect_kind(&["gauge"])?;
            let g = i.spec(model::gauge_doc(&i.doc, o.chart_dim, DEFAULT_CHART_DIM))?;
            (g.base, g.gauge)
        }
        None => {
            let m = random_so3(o);
            let mut s = Sampler::new(o.seed.wrapping_add(1));
            s.max_degree = o.max_degree;
            let phi = s.form(m.n, 1, m.fiber.lie.a, 0.5);
            let gauge = GaugeMap::pure(&m.fiber.lie, phi).map_err(engine)?;
            (m, gauge)
        }
    };
    let (a, b) = m.connection().map_err(engine)?;
    let fib = quadratic_fiber(&m)?;
    Ok((gauge.check_gauge(&fib, a, b), Vec::new(), m.n))
}

fn demo(which: Demo, o: &Options) -> Result<(Report, Vec<(String, String)>, usize, String), CliError> {
    let (name, src) = match which {
        Demo::So3 => ("so3", bundled::SO3),
        Demo::Abelian => ("abelian", bundled::ABELIAN),
        Demo::Heisenberg => ("heisenberg", bundled::HEISENBERG),
    };
    let input = bundled_input(name, src);
    let m = input.algebroid(o)?;
    let (a, b) = m.connection().map_err(engine)?.clone();
    let fib = quadratic_fiber(&m)?;
    let q = m.quadratic().map_err(engine)?;
    let mut r = algebroid_report(&m);
    r.extend(check_lie3_morphism(&m.algebroid, &family(&m)));
    r.extend(q.check_closed());
    r.extend(check_cs5(&fib, &a, &b));
    r.extend(check_gamma_consistency(&fib, &a, &b).map_err(engine)?);
    r.extend(shift_checks(&q, &m, o)?);
    let h = cs5_primitive(&fib, &a, &b);
    let e = ClwxExtension::new(q.clone(), h.clone()).map_err(engine)?;
    r.extend(check_clwx_axioms(&e, &ClwxFamily::new(m.n, m.fiber.lie.g, m.fiber.lie.a)));
    if input.doc.kind == "gauge" {
        let g = input.spec(model::gauge_doc(&input.doc, o.chart_dim, DEFAULT_CHART_DIM))?;
        r.extend(g.gauge.check_gauge(&fib, &a, &b));
    }
    let mut out = Vec::new();
    connection_outputs(&m, &mut out);
    out.push(("pontryagin-5form".into(), q.pontryagin_5form().to_string()));
    out.push(("cs5-primitive".into(), h.to_string()));
    Ok((r, out, m.n, input.label))
}

fn command_name(c: &Command) -> String {
    let kebab = |v: &dyn std::fmt::Debug| {
        let s = format!("{v:?}");
        let mut out = String::new();
        for (i, ch) in s.chars().enumerate() {
            if ch.is_ascii_uppercase() && i > 0 {
                out.push('-');
            }
            out.push(ch.to_ascii_lowercase());
        }
        out
    };
    match c {
        Command::Verify(t, _) => format!("verify {}", kebab(t)),
        Command::Pontryagin(t, _) => format!("pontryagin {}", kebab(t)),
        Command::Demo(d) => format!("demo {}", kebab(d)),
    }
}

pub fn run(cmd: &Command, o: &Options) -> Result<Outcome, CliError> {
    let command = command_name(cmd);
    let (report, outputs, n, label) = match cmd {
        Command::Verify(t, path) => {
            let input = load(path)?;
            let (r, out, n) = verify(*t, &input, o)?;
            (r, out, n, input.label)
        }
        Command::Pontryagin(t, path) => {
            let input = path.as_deref().map(load).transpose()?;
            let (r, out, n) = pontryagin(*t, input.as_ref(), o)?;
            let label = input.map_or_else(|| "random so3 pair (A, B)".to_string(), |i| i.label);
            (r, out, Some(n), label)
        }
        Command::Demo(d) => {
            let (r, out, n, label) = demo(*d, o)?;
            (r, out, Some(n), label)
        }
    };
    Ok(Outcome { command, input: label, seed: o.seed, max_degree: o.max_degree, chart_dim: n, report, outputs })
}

