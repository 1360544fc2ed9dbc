//! Acceptance suite: one line per criterion, every identity tested for exact zero.

use lie2alg::algebroid::{from_gamma_connection, trivial, Family, SplitLie2Algebroid};
use lie2alg::clwx::{check_clwx_axioms, ClwxError, ClwxExtension, ClwxFamily, SkeletalClwx};
use lie2alg::der3::{check_der_lie3, check_lie3_morphism};
use lie2alg::exterior::{combinations, pair_forms, Form, VectorField};
use lie2alg::gla::{CrossedModuleLie, GradedLie2, LieAlgebra, QuadraticLie2};
use lie2alg::linalg::{pvec_add_assign, pvec_zero, Bilinear, PVec, RatMatrix};
use lie2alg::pontryagin::{
    check_cs5, check_gamma_consistency, coadjoint_matrix, cs5_primitive, curv, fcurv, GaugeMap, MatrixRep, MaurerCartan,
    QuadraticSplitData,
};
use lie2alg::poly::Poly;
use lie2alg::rat::Rat;
use lie2alg::report::{Report, Status};
use lie2alg::samples::{self, Sampler};
use lie2alg_cli::bundled;
use lie2alg_cli::document::parse;
use lie2alg_cli::model::{self, AlgebroidModel, ClwxModel};
use std::time::{Duration, Instant};

const N: usize = 6;

type Res = Result<String, String>;

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_failure(r: &Report) -> String {
    r.failing()
        .next()
        .map(|c| format!("{} at {} residual {}", c.name, c.witness.as_deref().unwrap_or("-"), c.residual.as_deref().unwrap_or("-")))
        .unwrap_or_default()
}

fn passes(r: &Report, what: &str) -> Result<(), String> {
    need(r.passed(), || format!("{what}: {}", first_failure(r)))
}

/// Every named check is present and passed non-vacuously.
fn passes_named(r: &Report, names: &[&str], what: &str) -> Result<(), String> {
    passes(r, what)?;
    for n in names {
        match r.get(n) {
            Some(c) if c.status == Status::Pass => {}
            Some(c) => return Err(format!("{what}: {n} is {}", c.status.as_str())),
            None => return Err(format!("{what}: {n} missing")),
        }
    }
    Ok(())
}

fn bundled_model(src: &str) -> AlgebroidModel {
    let d = parse(src).unwrap();
    if d.kind == "gauge" {
        return model::gauge_doc(&d, None, N).unwrap().base;
    }
    model::algebroid_doc(&d, None, N).unwrap()
}

fn quadratic_fibers() -> [QuadraticLie2; 3] {
    [samples::quadratic_so3(), samples::quadratic_sl2(), samples::coadjoint_heisenberg()]
}

/// A seeded Γ-connection: fiber `i mod 3`, coefficients of degree at most 2.
struct Instance {
    fiber: QuadraticLie2,
    a: Form,
    b: Form,
}

impl Instance {
    fn random(seed: u64, i: usize, n: usize) -> Instance {
        let fiber = quadratic_fibers()[i % 3].clone();
        let mut s = Sampler::new(seed);
        s.max_degree = 2;
        let (g, a) = (fiber.lie.g, fiber.lie.a);
        let af = s.form(n, 1, g, 0.6);
        let bf = s.form(n, 2, a, 0.4);
        Instance { fiber, a: af, b: bf }
    }

    fn from_model(m: &AlgebroidModel) -> Instance {
        let (a, b) = m.connection.clone().unwrap();
        Instance { fiber: m.fiber.quadratic(m.pos).unwrap(), a, b }
    }

    fn algebroid(&self) -> SplitLie2Algebroid {
        from_gamma_connection(&self.fiber.lie, &self.a, &self.b).unwrap()
    }

    fn quadratic(&self) -> QuadraticSplitData {
        QuadraticSplitData::from_gamma_connection(&self.fiber, &self.a, &self.b).unwrap()
    }

    fn family(&self) -> Family {
        Family::new(self.a.nvars(), self.fiber.lie.g, self.fiber.lie.a)
    }
}

fn bundled_instances() -> Vec<(&'static str, Instance)> {
    [("so3", bundled::SO3), ("abelian", bundled::ABELIAN), ("heisenberg", bundled::HEISENBERG)]
        .into_iter()
        .map(|(n, s)| (n, Instance::from_model(&bundled_model(s))))
        .collect()
}

fn c1_instances() -> Vec<Instance> {
    (0..20).map(|i| Instance::random(100 + i as u64, i, N)).collect()
}

fn c2_instances() -> Vec<Instance> {
    (0..10).map(|i| Instance::random(200 + i as u64, i, N)).collect()
}

fn c4_instances() -> Vec<Instance> {
    (0..10).map(|i| Instance::random(400 + i as u64, 0, N)).collect()
}

/// The semistrict gl(2) fiber with a seeded change of splitting, so that
/// `J`, `K` and `l3` all enter.
fn semistrict_shifted(seed: u64, n: usize) -> QuadraticSplitData {
    let q = samples::semistrict_gl2();
    let mut s = Sampler::new(seed);
    s.max_degree = 1;
    let theta = s.form(n, 1, 4, 0.8);
    let base = trivial(&q.lie, n).shift_splitting(&theta).unwrap();
    QuadraticSplitData::new(base, q.pairing).unwrap()
}

fn criterion_1() -> Res {
    let bundled = Instance::from_model(&bundled_model(bundled::SO3));
    let mut all = vec![bundled];
    all.extend(c1_instances());
    for (i, inst) in all.iter().enumerate() {
        let q = inst.algebroid();
        let fam = inst.family();
        passes(&q.check_structure_equations(&fam), &format!("instance {i} structure equations"))?;
        passes(&q.check_axioms_on_sections(&fam), &format!("instance {i} axioms"))?;
    }
    let inst = &all[0];
    let mut d = inst.algebroid().into_data();
    let mut s = Sampler::new(199);
    let delta = s.form(N, 2, inst.fiber.lie.g, 0.3);
    need(!delta.is_zero(), || "perturbation is zero".into())?;
    d.r = d.r.add(&delta);
    let bad = SplitLie2Algebroid::new(d).unwrap();
    let fam = inst.family();
    let st = bad.check_structure_equations(&fam);
    let ax = bad.check_axioms_on_sections(&fam);
    need(!st.passed() && !ax.passed(), || "perturbed R still passes".into())?;
    Ok(format!(
        "bundled so3 + 20 seeded pass; perturbed R fails {} and {}",
        st.failing().next().unwrap().name,
        ax.failing().next().unwrap().name
    ))
}

const CLOSED: [&str; 4] = ["closed.d-pontryagin", "closed.l1-summand", "closed.jr-summand", "closed.two-step"];

fn criterion_2() -> Res {
    let mut count = 0;
    for (name, inst) in bundled_instances() {
        passes_named(&inst.quadratic().check_closed(), &CLOSED, name)?;
        count += 1;
    }
    passes_named(&semistrict_shifted(290, N).check_closed(), &CLOSED, "semistrict gl2")?;
    for (i, inst) in c2_instances().iter().enumerate() {
        passes_named(&inst.quadratic().check_closed(), &CLOSED, &format!("seeded {i}"))?;
        count += 1;
    }
    Ok(format!("{} bundled + semistrict gl2 + 10 seeded; both summands vanish separately", count - 10))
}

const SHIFT: [&str; 9] = [
    "gamma-shift.identity",
    "gamma-shift.identity-shifted",
    "gamma-shift.difference",
    "sigma-shift.lemma-I",
    "sigma-shift.lemma-J",
    "sigma-shift.lemma-K",
    "sigma-shift.lemma-l3",
    "sigma-shift.lemma-l2l3",
    "sigma-shift.total",
];

fn criterion_3() -> Res {
    for i in 0..10u64 {
        let q = if i % 2 == 0 { Instance::random(300 + i, i as usize / 2, N).quadratic() } else { semistrict_shifted(300 + i, N) };
        let (g, a) = (q.base().g(), q.base().a());
        let mut s = Sampler::new(350 + i);
        s.max_degree = 1;
        let theta = s.form(N, 1, g, 0.5);
        let gamma2 = s.form(N, 2, a, 0.5);
        need(!theta.is_zero() && !gamma2.is_zero(), || format!("perturbation {i} is zero"))?;
        let mut r = q.gamma_shift_check(&gamma2).unwrap();
        r.extend(q.sigma_shift_check(&theta).unwrap());
        passes_named(&r, &SHIFT, &format!("perturbation {i}"))?;
    }
    Ok("10 seeded (θ, γ') on so3/sl2/heisenberg and semistrict gl2; five lemmas checked individually".into())
}

fn criterion_4() -> Res {
    let fib = QuadraticLie2::from_quadratic_liealg(&LieAlgebra::abelian(1), &RatMatrix::identity(1)).unwrap();
    let a = Form::zero(N, 1, 1);
    let b = Form::parse("x1*dx2^dx3 + x4*dx5^dx1", N, 1, &[]).unwrap();
    passes(&check_cs5(&fib, &a, &b), "abelian")?;
    let s = pair_forms(&fcurv(&fib.lie, &a, &b), &curv(&fib.lie, &a, &b), &fib.pairing_map());
    // Here fcurv = -B and curv = dB, so the oracle is -(B ^ dB).
    let oracle = b.wedge(&b.d()).neg();
    need(s == oracle, || format!("S(fcurv, curv) = {s}, oracle {oracle}"))?;
    let expected = Form::parse("x1*dx1^dx2^dx3^dx4^dx5", N, 1, &[]).unwrap();
    need(s == expected.neg(), || format!("S(fcurv, curv) = {s}"))?;
    for (i, inst) in c4_instances().iter().enumerate() {
        passes(&check_cs5(&inst.fiber, &inst.a, &inst.b), &format!("so3 pair {i}"))?;
    }
    Ok(format!("abelian: S(fcurv, curv) = {s} = -(B^dB); 10 seeded so3 pairs"))
}

fn criterion_5() -> Res {
    let mut all: Vec<Instance> = bundled_instances().into_iter().map(|(_, i)| i).collect();
    all.extend(c1_instances());
    all.extend(c2_instances());
    all.extend(c4_instances());
    for (i, inst) in all.iter().enumerate() {
        passes(&check_gamma_consistency(&inst.fiber, &inst.a, &inst.b).unwrap(), &format!("instance {i}"))?;
    }
    Ok(format!("{} instances", all.len()))
}

fn unitriangular(n: usize, s: &mut Sampler) -> PVec {
    let (o, z) = (Poly::one(n), Poly::zero(n));
    vec![o.clone(), s.poly(n), s.poly(n), z.clone(), o.clone(), s.poly(n), z.clone(), z, o]
}

fn criterion_6() -> Res {
    let names = ["gauge.fcurv-covariance", "gauge.curv-law", "gauge.invariance"];
    let so3 = samples::quadratic_so3();
    let rep = MatrixRep::new(&so3.lie, samples::so3_rep()).unwrap();
    for i in 0..5u64 {
        let mut s = Sampler::new(600 + i);
        let (x, y, z) = loop {
            let t = (s.int(-3, 3), s.int(-3, 3), s.int(-3, 3));
            if t != (0, 0, 0) {
                break t;
            }
        };
        let g = samples::cayley_rotation(x, y, z).to_poly(N);
        let rho1 = coadjoint_matrix(&rep, &g, &so3.pairing).unwrap();
        let (a, b, phi) = (s.form(N, 1, 3, 0.5), s.form(N, 2, 3, 0.4), s.form(N, 1, 3, 0.4));
        let gm = GaugeMap::new(&so3.lie, &rep, g, rho1, phi, MaurerCartan::Right).unwrap();
        passes_named(&gm.check_gauge(&so3, &a, &b), &names, &format!("constant g {i}"))?;
    }
    let heis = samples::coadjoint_heisenberg();
    let hrep = MatrixRep::new(&heis.lie, samples::heisenberg_rep()).unwrap();
    for i in 0..5u64 {
        let mut s = Sampler::new(610 + i);
        s.max_degree = 2;
        let g = unitriangular(N, &mut s);
        let rho1 = coadjoint_matrix(&hrep, &g, &heis.pairing).unwrap();
        let (a, b, phi) = (s.form(N, 1, 3, 0.5), s.form(N, 2, 3, 0.4), s.form(N, 1, 3, 0.4));
        let gm = GaugeMap::new(&heis.lie, &hrep, g, rho1, phi, MaurerCartan::Right).unwrap();
        need(!gm.mc.is_zero(), || format!("unipotent g {i} is constant"))?;
        passes_named(&gm.check_gauge(&heis, &a, &b), &names, &format!("unipotent g {i}"))?;
    }
    for i in 0..10u64 {
        let fib = &quadratic_fibers()[i as usize % 3];
        let mut s = Sampler::new(620 + i);
        let (a, b, phi) = (s.form(N, 1, 3, 0.5), s.form(N, 2, 3, 0.4), s.form(N, 1, 3, 0.5));
        let gm = GaugeMap::pure(&fib.lie, phi).unwrap();
        passes_named(&gm.check_gauge(fib, &a, &b), &names, &format!("pure phi {i}"))?;
    }
    Ok("5 constant so3 rotations, 5 unipotent Heisenberg g, 10 pure φ".into())
}

fn criterion_7() -> Res {
    let ClwxModel::Skeletal(sk) = model::clwx_doc(&parse(bundled::SKELETAL).unwrap(), None, N).unwrap() else {
        return Err("skeletal spec did not produce a skeletal structure".into());
    };
    passes(&check_clwx_axioms(&sk, &ClwxFamily::new(N, 0, 0)), "skeletal closed H")?;

    let open = Form::parse("x5*dx1^dx2^dx3^dx4", N, 1, &[]).unwrap();
    need(matches!(SkeletalClwx::new(N, open.clone()), Err(ClwxError::NotClosed(_))), || "non-closed H accepted".into())?;
    let r = check_clwx_axioms(&SkeletalClwx::unchecked(N, open).unwrap(), &ClwxFamily::new(N, 0, 0));
    let failing: Vec<&str> = r.failing().map(|c| c.name.as_str()).collect();
    need(failing == ["leibniz-f.fields"], || format!("non-closed H fails {failing:?}"))?;
    let residual = r.get("leibniz-f.fields").unwrap().residual.clone().unwrap_or_default();

    let inst = Instance::from_model(&bundled_model(bundled::SO3));
    let q = inst.quadratic();
    let cs5 = cs5_primitive(&inst.fiber, &inst.a, &inst.b);
    let ext = ClwxExtension::new(q.clone(), cs5.clone()).map_err(|e| format!("H = cs5 rejected: {e}"))?;
    passes(&check_clwx_axioms(&ext, &ClwxFamily::new(N, 3, 3)), "extension with H = cs5")?;

    // With H = -cs5 the obstruction is S(Rγ, Iγ) - d cs5 = 2 S(Rγ, Iγ), which is nonzero here.
    let p5 = q.pontryagin_5form();
    need(!p5.is_zero(), || "5-form vanishes on the bundled example".into())?;
    match ClwxExtension::new(q.clone(), cs5.neg()) {
        Err(ClwxError::Obstruction(s)) => need(s == p5.scale(&Rat::int(2)).to_string(), || format!("H = -cs5 residual {s}"))?,
        other => return Err(format!("H = -cs5 not rejected: {:?}", other.map(|_| ()))),
    }
    match ClwxExtension::new(q.clone(), Form::zero(N, 4, 1)) {
        Err(ClwxError::Obstruction(s)) => need(s == p5.to_string(), || format!("H = 0 residual {s}"))?,
        other => return Err(format!("H = 0 not rejected: {:?}", other.map(|_| ()))),
    }
    let forced = check_clwx_axioms(&ClwxExtension::unchecked(q, cs5.neg()).unwrap(), &ClwxFamily::new(N, 3, 3));
    let failing: Vec<&str> = forced.failing().map(|c| c.name.as_str()).collect();
    need(failing == ["leibniz-f.fields"], || format!("forced H = -cs5 fails {failing:?}"))?;
    Ok(format!(
        "skeletal and extension (H = +cs5) pass; open H fails only leibniz-f.fields (residual {residual}); \
         H = -cs5 and H = 0 rejected at construction with residuals 2·S(Rγ,Iγ) and S(Rγ,Iγ)"
    ))
}

fn criterion_8() -> Res {
    let abelian = QuadraticLie2::from_quadratic_liealg(&LieAlgebra::abelian(1), &RatMatrix::identity(1)).unwrap();
    passes(&check_der_lie3(&abelian.lie, N), "DER abelian")?;
    passes(&check_der_lie3(&samples::quadratic_so3().lie, N), "DER so3")?;
    let mut all: Vec<Instance> = bundled_instances().into_iter().map(|(_, i)| i).collect();
    all.extend(c1_instances());
    let mut checked = 0;
    for (i, inst) in all.iter().enumerate() {
        let q = inst.algebroid();
        let fam = inst.family();
        if q.check_structure_equations(&fam).passed() {
            passes(&check_lie3_morphism(&q, &fam), &format!("morphism on instance {i}"))?;
            checked += 1;
        }
    }
    need(checked == all.len(), || format!("only {checked} of {} instances pass the structure equations", all.len()))?;
    let inst = &all[0];
    let mut d = inst.algebroid().into_data();
    let mut s = Sampler::new(899);
    let delta = s.form(N, 3, inst.fiber.lie.a, 0.3);
    d.i = d.i.add(&delta);
    let bad = SplitLie2Algebroid::new(d).unwrap();
    let fam = inst.family();
    let st = bad.check_structure_equations(&fam);
    need(!st.get("structure.bianchi-i").unwrap().passed(), || "perturbed I passes bianchi-i".into())?;
    let m = check_lie3_morphism(&bad, &fam);
    need(!m.passed(), || "morphism passes on the Bianchi-I perturbation".into())?;
    Ok(format!("DER passes on abelian and so3; morphism passes on {checked} instances and fails ({}) after perturbing I", m.failing().next().unwrap().name))
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // Inserting the largest element at `pos` adds `len - pos` inversions.
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// `(α ∧_m β)(∂_I)` by the full sum over `S_{k+l}`.
fn full_sum(alpha: &Form, beta: &Form, m: &Bilinear, idx: &[usize]) -> PVec {
    let (k, l) = (alpha.degree(), beta.degree());
    let n = alpha.nvars();
    let fields: Vec<VectorField> = idx.iter().map(|&i| VectorField::coordinate(n, i, Poly::one(n))).collect();
    let mut acc = pvec_zero(n, m.d3);
    for (p, sign) in permutations(k + l) {
        let xs: Vec<&VectorField> = p[..k].iter().map(|&j| &fields[j]).collect();
        let ys: Vec<&VectorField> = p[k..].iter().map(|&j| &fields[j]).collect();
        let v = m.apply(&alpha.eval(&xs), &beta.eval(&ys));
        let c = Rat::int(sign);
        pvec_add_assign(&mut acc, &v.iter().map(|x| x.scale(&c)).collect::<Vec<_>>());
    }
    let norm = Rat::new(1, factorial(k) * factorial(l));
    acc.iter().map(|x| x.scale(&norm)).collect()
}

fn random_bilinear(s: &mut Sampler, d1: usize, d2: usize, d3: usize) -> Bilinear {
    let mut e = Vec::new();
    for i in 0..d1 {
        for j in 0..d2 {
            for k in 0..d3 {
                if s.int(0, 2) == 0 {
                    e.push((i, j, k, s.rat()));
                }
            }
        }
    }
    Bilinear::from_entries(d1, d2, d3, e)
}

fn seeded_crossed_module(s: &mut Sampler) -> CrossedModuleLie {
    let bases = [samples::so3(), samples::sl2(), samples::gl2(), samples::heisenberg()];
    let g = bases[s.int(0, 3) as usize].clone();
    let c = Rat::new(s.int(-2, 2), s.int(1, 3));
    let d = g.dim;
    let psi = RatMatrix::from_rows((0..d).map(|i| (0..d).map(|j| if i == j { c.clone() } else { Rat::zero() }).collect()).collect());
    CrossedModuleLie::new(LieAlgebra::new(g.bracket.scaled(&c)), g.clone(), psi, g.bracket.clone()).unwrap()
}

fn criterion_9() -> Res {
    let n = 5;
    let mut case = 0;
    let mut s = Sampler::new(900);
    s.max_degree = 2;
    while case < 50 {
        let total = 1 + case % 5;
        let k = s.int(0, total as i64) as usize;
        let l = total - k;
        let (d1, d2, d3) = (s.int(1, 3) as usize, s.int(1, 3) as usize, s.int(1, 2) as usize);
        let alpha = s.form(n, k, d1, 0.6);
        let beta = s.form(n, l, d2, 0.6);
        let m = random_bilinear(&mut s, d1, d2, d3);
        let prod = pair_forms(&alpha, &beta, &m);
        for idx in combinations(n, k + l) {
            let fields: Vec<VectorField> = idx.iter().map(|&i| VectorField::coordinate(n, i, Poly::one(n))).collect();
            let refs: Vec<&VectorField> = fields.iter().collect();
            let got = prod.eval(&refs);
            let want = full_sum(&alpha, &beta, &m, &idx);
            need(got == want, || format!("case {case} (k={k}, l={l}) at {idx:?}: {got:?} vs {want:?}"))?;
        }
        case += 1;
    }
    let mut s = Sampler::new(950);
    for i in 0..10 {
        let cm = seeded_crossed_module(&mut s);
        passes(&cm.check_crossed_module(), &format!("crossed module {i}"))?;
        let lie2 = GradedLie2::from_crossed_module(&cm);
        passes(&lie2.check_lie2_axioms(), &format!("strict Lie 2-algebra {i}"))?;
        let back = lie2.to_crossed_module().map_err(|e| format!("crossed module {i}: {e}"))?;
        need(back == cm, || format!("crossed module {i} does not round-trip"))?;
        need(GradedLie2::from_crossed_module(&back) == lie2, || format!("Lie 2-algebra {i} does not round-trip"))?;
    }
    Ok("50 shuffle products equal the normalized S_{k+l} sum; 10 crossed modules round-trip".into())
}

/// `(L_X α)(∂_I) = X(α(∂_I)) + Σ_j α(.., Σ_m ∂_{i_j}X^m ∂_m, ..)`.
fn lie_derivative_oracle(alpha: &Form, x: &VectorField, idx: &[usize]) -> PVec {
    let n = alpha.nvars();
    let coord = |i: usize| VectorField::coordinate(n, i, Poly::one(n));
    let fields: Vec<VectorField> = idx.iter().map(|&i| coord(i)).collect();
    let refs: Vec<&VectorField> = fields.iter().collect();
    let mut out = x.apply_vec(&alpha.eval(&refs));
    for j in 0..idx.len() {
        let moved = VectorField::new((0..n).map(|m| x.component(m).partial(idx[j])).collect());
        let mut args = refs.clone();
        args[j] = &moved;
        pvec_add_assign(&mut out, &alpha.eval(&args));
    }
    out
}

fn criterion_10() -> Res {
    let n = 5;
    let mut s = Sampler::new(1000);
    s.max_degree = 2;
    for case in 0..100 {
        let k = case % 5;
        let f = s.form(n, k, 2, 0.6);
        need(f.d().d().is_zero(), || format!("d² ≠ 0 on case {case}"))?;
    }
    for case in 0..100 {
        let (k, l) = (case % 4, (case / 4) % 3);
        let a = s.form(n, k, 1, 0.6);
        let b = s.form(n, l, 1, 0.6);
        let sign = if (k * l) % 2 == 0 { Rat::one() } else { Rat::int(-1) };
        need(a.wedge(&b) == b.wedge(&a).scale(&sign), || format!("graded commutativity fails on case {case}"))?;
    }
    for case in 0..100 {
        let k = 1 + case % 3;
        let a = s.form(n, k, 1, 0.6);
        let x = VectorField::new((0..n).map(|_| s.poly(n)).collect());
        let lx = a.lie_derivative(&x);
        let cartan = a.interior(&x).d().add(&a.d().interior(&x));
        need(lx == cartan, || format!("Cartan formula fails on case {case}"))?;
        for idx in combinations(n, k) {
            let fields: Vec<VectorField> = idx.iter().map(|&i| VectorField::coordinate(n, i, Poly::one(n))).collect();
            let refs: Vec<&VectorField> = fields.iter().collect();
            need(lx.eval(&refs) == lie_derivative_oracle(&a, &x, &idx), || format!("L_X disagrees with the coordinate oracle on case {case}"))?;
        }
    }
    for case in 0..100 {
        let (k, l) = (case % 3, (case / 3) % 3);
        let a = s.form(n, k, 1, 0.6);
        let b = s.form(n, l, 1, 0.6);
        let sign = if k % 2 == 0 { Rat::one() } else { Rat::int(-1) };
        let rhs = a.d().wedge(&b).add(&a.wedge(&b.d()).scale(&sign));
        need(a.wedge(&b).d() == rhs, || format!("Leibniz rule fails on case {case}"))?;
    }
    // The pairing of a quadratic algebroid is parallel, so d𝒮(Ξ, Π) splits.
    for case in 0..100u64 {
        let inst = Instance::random(1100 + case / 10, case as usize / 10, n);
        let q = inst.quadratic();
        let (k, l) = ((case % 3) as usize, ((case / 3) % 2) as usize);
        let xi = s.form(n, k, q.base().g(), 0.5);
        let pi = s.form(n, l, q.base().a(), 0.5);
        let sign = if k % 2 == 0 { Rat::one() } else { Rat::int(-1) };
        let rhs = q.s(&q.base().d_nabla0(&xi), &pi).add(&q.s(&xi, &q.base().d_nabla1(&pi)).scale(&sign));
        need(q.s(&xi, &pi).d() == rhs, || format!("d𝒮 Leibniz rule fails on case {case}"))?;
    }
    Ok("d² = 0, graded commutativity, Cartan (with coordinate oracle), Leibniz for ∧ and for 𝒮: 100 cases each".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Res); 10] = [
        ("structure-equation equivalence", 30, criterion_1),
        ("Pontryagin closedness", 60, criterion_2),
        ("splitting independence", 60, criterion_3),
        ("Chern-Simons primitive", 60, criterion_4),
        ("curvature consistency", 10, criterion_5),
        ("gauge invariance", 60, criterion_6),
        ("CLWX axioms", 90, criterion_7),
        ("DER and the Lie 3-algebroid morphism", 60, criterion_8),
        ("oracle equivalences", 30, criterion_9),
        ("engine invariants", 30, criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (title, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        let timing = format!("{:.2}s of {budget}s{}", el.as_secs_f64(), if el > Duration::from_secs(*budget) { ", over budget" } else { "" });
        match r {
            Ok(msg) => println!("criterion {:>2} PASS {title} [{timing}]: {msg}", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL {title} [{timing}]: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
