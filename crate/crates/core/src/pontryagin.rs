//! Quadratic split Lie 2-algebroids and the first Pontryagin 5-form.
//!
//! The pairing `𝒮` between `G` and `A-1 = G*` is a constant `g x a` matrix
//! `P` with `⟨u, m⟩ = uᵀ P m`; on forms it acts through the shuffle product.
//! The second half of the module specializes to algebroids coming from a
//! pair `(A, B)` over a strict quadratic fiber: curvatures, the Chern–Simons
//! type primitive, and gauge transformations.

use crate::algebroid::{from_gamma_connection, AlgebroidError, Family, SplitLie2Algebroid};
use crate::exterior::{pair_forms, Form, VectorField};
use crate::gla::{GradedLie2, QuadraticLie2};
use crate::linalg::{pmat_apply, pmat_inverse, pmat_mul, pvec_basis, Bilinear, PVec, RatMatrix};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::report::{check_zero, Check, Checker, Report};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PontryaginError {
    #[error("the pairing must be a nondegenerate {g}x{a} matrix")]
    Pairing { g: usize, a: usize },
    #[error("the data is not quadratic: {0}")]
    NotQuadratic(String),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
}

fn summarize(rep: &Report) -> String {
    rep.failing()
        .map(|c| format!("{} at {} (residual {})", c.name, c.witness.as_deref().unwrap_or("-"), c.residual.as_deref().unwrap_or("-")))
        .collect::<Vec<_>>()
        .join("; ")
}

/// A split Lie 2-algebroid with `A-1 = G*` and an invariant pairing.
#[derive(Clone, Debug)]
pub struct QuadraticSplitData {
    base: SplitLie2Algebroid,
    pairing: RatMatrix,
    pmap: Bilinear,
}

impl QuadraticSplitData {
    /// Validates the fiber's quadratic conditions and the three invariance
    /// conditions for `∇`, `J` and `K`.
    pub fn new(base: SplitLie2Algebroid, pairing: RatMatrix) -> Result<QuadraticSplitData, PontryaginError> {
        let (g, a) = (base.g(), base.a());
        let fib = QuadraticLie2::new(base.fiber().clone(), pairing.clone()).map_err(|_| PontryaginError::Pairing { g, a })?;
        let mut rep = fib.check_quadratic().scoped("fiber");
        let pmap = Bilinear::pairing(&pairing);
        let q = QuadraticSplitData { base, pairing, pmap };
        rep.extend(q.check_invariants());
        if !rep.passed() {
            return Err(PontryaginError::NotQuadratic(summarize(&rep)));
        }
        Ok(q)
    }

    pub fn from_gamma_connection(fiber: &QuadraticLie2, a_form: &Form, b_form: &Form) -> Result<QuadraticSplitData, PontryaginError> {
        let base = from_gamma_connection(&fiber.lie, a_form, b_form)?;
        QuadraticSplitData::new(base, fiber.pairing.clone())
    }

    pub fn base(&self) -> &SplitLie2Algebroid {
        &self.base
    }

    pub fn pairing(&self) -> &RatMatrix {
        &self.pairing
    }

    /// `𝒮` as a bilinear map `G x G* -> R`.
    pub fn pairing_map(&self) -> &Bilinear {
        &self.pmap
    }

    /// `⟨u, m⟩`.
    pub fn pair(&self, u: &[Poly], m: &[Poly]) -> Poly {
        self.pmap.apply(u, m).remove(0)
    }

    /// `𝒮(Ξ, Π)` for a `G`-valued `Ξ` and a `G*`-valued `Π`.
    pub fn s(&self, xi: &Form, pi: &Form) -> Form {
        pair_forms(xi, pi, &self.pmap)
    }

    /// The invariance conditions on coordinate fields and the fiber part of
    /// the generating family.
    pub fn check_invariants(&self) -> Report {
        let q = &self.base;
        let n = q.nvars();
        let (g, a) = (q.g(), q.a());
        let fam = Family::new(n, g, a);
        let coords: Vec<VectorField> = (0..n).map(|i| VectorField::coordinate(n, i, Poly::one(n))).collect();
        let mut c1 = Checker::new("quadratic.nabla");
        for (i, x) in coords.iter().enumerate() {
            for (lu, u) in &fam.g {
                for (lm, m) in &fam.a {
                    let r = &(&self.pair(&q.nabla0(x, u), m) + &self.pair(u, &q.nabla1(x, m))) - &x.apply(&self.pair(u, m));
                    c1.case(|| format!("(d/dx{}, {lu}, {lm})", i + 1), &r);
                }
            }
        }
        let e = |b: usize| pvec_basis(n, g, b);
        let mut c2 = Checker::new("quadratic.j");
        for i in 0..n {
            for j in i + 1..n {
                for b in 0..g {
                    for c in b..g {
                        let r = &self.pair(&e(c), &q.j_at(&coords[i], &coords[j], &e(b))) + &self.pair(&e(b), &q.j_at(&coords[i], &coords[j], &e(c)));
                        c2.case(|| format!("(d/dx{}, d/dx{}, e{}, e{})", i + 1, j + 1, b + 1, c + 1), &r);
                    }
                }
            }
        }
        let mut c3 = Checker::new("quadratic.k");
        for (i, x) in coords.iter().enumerate() {
            for b in 0..g {
                for c in 0..g {
                    for d in c..g {
                        let r = &self.pair(&e(d), &q.k_at(x, &e(b), &e(c))) + &self.pair(&e(c), &q.k_at(x, &e(b), &e(d)));
                        c3.case(|| format!("(d/dx{}, e{}, e{}, e{})", i + 1, b + 1, c + 1, d + 1), &r);
                    }
                }
            }
        }
        Report { checks: vec![c1.finish(), c2.finish(), c3.finish()] }
    }

    /// `𝒮(Rγ, Iγ)`.
    pub fn pontryagin_5form(&self) -> Form {
        self.s(self.base.r_gamma(), self.base.i_gamma())
    }

    /// Closedness of the 5-form, with the two summands of
    /// `d𝒮(Rγ,Iγ) = 𝒮(l1 Iγ, Iγ) - 𝒮(Rγ, J∘Rγ)` reported separately.
    pub fn check_closed(&self) -> Report {
        let n = self.base.nvars();
        let mut rep = Report::new();
        let names = ["closed.d-pontryagin", "closed.l1-summand", "closed.jr-summand", "closed.two-step"];
        if n < 6 {
            for name in names {
                rep.push(Check::vacuous(name, format!("6-forms vanish on a chart of dimension {n}")));
            }
            return rep;
        }
        let q = &self.base;
        let dp = self.pontryagin_5form().d();
        let s1 = self.s(&q.i_gamma().map_values(&q.fiber().l1), q.i_gamma());
        let s2 = self.s(q.r_gamma(), &q.j_circ_r());
        rep.push(check_zero(names[0], &dp));
        rep.push(check_zero(names[1], &s1));
        rep.push(check_zero(names[2], &s2));
        rep.push(check_zero(names[3], &dp.sub(&s1.sub(&s2))));
        rep
    }

    /// `𝒮(R, γ) + ½ 𝒮(l1∘γ, γ)` for `R = Rγ - l1∘γ`.
    fn gamma_primitive(&self, q: &SplitLie2Algebroid) -> Form {
        let gamma = &q.data().gamma;
        let l1g = gamma.map_values(&q.fiber().l1);
        self.s(&q.data().r, gamma).add(&self.s(&l1g, gamma).scale(&Rat::new(1, 2)))
    }

    /// `𝒮(Rγ,Iγ) - 𝒮(R,I) - d(𝒮(R,γ) + ½𝒮(l1∘γ,γ))`.
    fn gamma_identity(&self, q: &SplitLie2Algebroid) -> Form {
        let d = q.data();
        let p5 = self.s(q.r_gamma(), q.i_gamma());
        p5.sub(&self.s(&d.r, &d.i)).sub(&self.gamma_primitive(q).d())
    }

    /// Replace `γ` by `γ'` keeping `R` and `I`, and compare the two 5-forms
    /// through the primitive `𝒮(R,γ) + ½𝒮(l1∘γ,γ)` taken at both values.
    pub fn gamma_shift_check(&self, gamma2: &Form) -> Result<Report, PontryaginError> {
        let mut d2 = self.base.data().clone();
        d2.gamma = gamma2.clone();
        let q2 = SplitLie2Algebroid::new(d2)?;
        let q1 = &self.base;
        let mut rep = Report::new();
        rep.push(check_zero("gamma-shift.identity", &self.gamma_identity(q1)));
        rep.push(check_zero("gamma-shift.identity-shifted", &self.gamma_identity(&q2)));
        let diff = self.s(q2.r_gamma(), q2.i_gamma()).sub(&self.pontryagin_5form());
        let prim = self.gamma_primitive(&q2).sub(&self.gamma_primitive(q1));
        rep.push(check_zero("gamma-shift.difference", &diff.sub(&prim.d())));
        Ok(rep)
    }

    /// The four primitives `C4^I, C4^J, C4^K, C4^l3` for a `G`-valued 1-form.
    pub fn sigma_primitives(&self, theta: &Form) -> [Form; 4] {
        let (jt, kt, lt) = self.base.theta_compositions(theta);
        [
            self.s(theta, self.base.i_gamma()),
            self.s(theta, &jt).scale(&Rat::new(1, 2)),
            self.s(theta, &kt).scale(&Rat::new(1, 3)),
            self.s(theta, &lt).scale(&Rat::new(1, 4)),
        ]
    }

    /// Change of splitting `σ' = σ - θ`: each of the five lemma identities
    /// and the assembled difference `𝒮(R'γ,I'γ) - 𝒮(Rγ,Iγ) = d(C4^I - C4^J - C4^K + C4^l3)`.
    pub fn sigma_shift_check(&self, theta: &Form) -> Result<Report, PontryaginError> {
        let q = &self.base;
        let shifted = q.shift_splitting(theta)?;
        let (jt, kt, lt) = q.theta_compositions(theta);
        let (rg, ig) = (q.r_gamma(), q.i_gamma());
        let dth = q.d_nabla0(theta);
        let l2t = theta.product(theta, &q.fiber().l2_00).scale(&Rat::new(1, 2));
        let [ci, cj, ck, cl] = self.sigma_primitives(theta);
        let s = |x: &Form, y: &Form| self.s(x, y);
        let mut rep = Report::new();
        let lem_i = ci.d().sub(&s(&dth, ig)).add(&s(rg, &jt));
        let lem_j = cj.d().sub(&s(&dth, &jt)).sub(&s(rg, &kt)).sub(&s(&l2t, ig));
        let lem_k = ck.d().sub(&s(&dth, &kt)).add(&s(rg, &lt)).add(&s(&l2t, &jt));
        let lem_l = cl.d().sub(&s(&dth, &lt)).sub(&s(&l2t, &kt));
        let lem_ll = s(&l2t, &lt);
        rep.push(check_zero("sigma-shift.lemma-I", &lem_i));
        rep.push(check_zero("sigma-shift.lemma-J", &lem_j));
        rep.push(check_zero("sigma-shift.lemma-K", &lem_k));
        rep.push(check_zero("sigma-shift.lemma-l3", &lem_l));
        rep.push(check_zero("sigma-shift.lemma-l2l3", &lem_ll));
        let total = s(shifted.r_gamma(), shifted.i_gamma())
            .sub(&self.pontryagin_5form())
            .sub(&ci.sub(&cj).sub(&ck).add(&cl).d());
        rep.push(check_zero("sigma-shift.total", &total));
        Ok(rep)
    }
}

/// `fcurv(A,B) = dA + ½ l2(A,A) - l1(B)`.
pub fn fcurv(fiber: &GradedLie2, a_form: &Form, b_form: &Form) -> Form {
    a_form
        .d()
        .add(&a_form.product(a_form, &fiber.l2_00).scale(&Rat::new(1, 2)))
        .sub(&b_form.map_values(&fiber.l1))
}

/// `curv(A,B) = dB + l2(A,B)`.
pub fn curv(fiber: &GradedLie2, a_form: &Form, b_form: &Form) -> Form {
    b_form.d().add(&a_form.product(b_form, &fiber.l2_01))
}

/// `𝒮(A,dB) + 𝒮(½l2(A,A),B) - ½𝒮(l1 B,B)`.
pub fn cs5_primitive(fiber: &QuadraticLie2, a_form: &Form, b_form: &Form) -> Form {
    let l = &fiber.lie;
    let p = fiber.pairing_map();
    let half = Rat::new(1, 2);
    let aa = a_form.product(a_form, &l.l2_00).scale(&half);
    pair_forms(a_form, &b_form.d(), &p)
        .add(&pair_forms(&aa, b_form, &p))
        .sub(&pair_forms(&b_form.map_values(&l.l1), b_form, &p).scale(&half))
}

/// `𝒮(fcurv, curv) - d(cs5_primitive) = 0`.
pub fn check_cs5(fiber: &QuadraticLie2, a_form: &Form, b_form: &Form) -> Report {
    let s = pair_forms(&fcurv(&fiber.lie, a_form, b_form), &curv(&fiber.lie, a_form, b_form), &fiber.pairing_map());
    let r = s.sub(&cs5_primitive(fiber, a_form, b_form).d());
    Report { checks: vec![check_zero("cs5.primitive", &r)] }
}

/// `Rγ = -fcurv`, `Iγ = curv` and `𝒮(Rγ,Iγ) + 𝒮(fcurv,curv) = 0` for the
/// algebroid of a pair `(A, B)`.
pub fn check_gamma_consistency(fiber: &QuadraticLie2, a_form: &Form, b_form: &Form) -> Result<Report, PontryaginError> {
    let q = QuadraticSplitData::from_gamma_connection(fiber, a_form, b_form)?;
    let fc = fcurv(&fiber.lie, a_form, b_form);
    let cv = curv(&fiber.lie, a_form, b_form);
    let mut rep = Report::new();
    rep.push(check_zero("consistency.r-gamma", &q.base().r_gamma().add(&fc)));
    rep.push(check_zero("consistency.i-gamma", &q.base().i_gamma().sub(&cv)));
    rep.push(check_zero("consistency.5form", &q.pontryagin_5form().add(&q.s(&fc, &cv))));
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaugeError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("g must be constant or unipotent upper triangular")]
    NotAdmissible,
    #[error("g is not invertible")]
    Singular,
    #[error("the representation is not faithful or not a Lie algebra map: {0}")]
    Representation(String),
    #[error("incompatible gauge data: {0}")]
    Incompatible(String),
}

/// Which Maurer–Cartan form pulls back along `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaurerCartan {
    /// `dg · g⁻¹`.
    Right,
    /// `g⁻¹ · dg`.
    Left,
}

fn unit(d: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); d];
    v[i] = Rat::one();
    v
}

/// A matrix representation of `h0` by constant `r x r` matrices.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub r: usize,
    pub gens: Vec<RatMatrix>,
    stacked: RatMatrix,
    left_inv: RatMatrix,
}

impl MatrixRep {
    /// Checks faithfulness and `ρ[e_i,e_j] = [ρe_i, ρe_j]`.
    pub fn new(fiber: &GradedLie2, gens: Vec<RatMatrix>) -> Result<MatrixRep, GaugeError> {
        let dim = fiber.g;
        if gens.len() != dim {
            return Err(GaugeError::Shape(format!("{} generators for a {dim}-dimensional algebra", gens.len())));
        }
        let r = gens.first().map_or(0, |m| m.rows);
        if gens.iter().any(|m| m.rows != r || m.cols != r) {
            return Err(GaugeError::Shape("generators must be square of equal size".into()));
        }
        let mut stacked = RatMatrix::zeros(r * r, dim);
        for (k, m) in gens.iter().enumerate() {
            for i in 0..r {
                for j in 0..r {
                    stacked.set(i * r + j, k, m.get(i, j).clone());
                }
            }
        }
        if stacked.rank() != dim {
            return Err(GaugeError::Representation("generators are linearly dependent".into()));
        }
        let left_inv = stacked.left_inverse().expect("full column rank");
        let rep = MatrixRep { r, gens, stacked, left_inv };
        for i in 0..dim {
            for j in 0..dim {
                let (a, b) = (&rep.gens[i], &rep.gens[j]);
                let comm = a.mul(b).sub(&b.mul(a));
                let br = fiber.l2_00.apply_rat(&unit(dim, i), &unit(dim, j));
                let mut img = RatMatrix::zeros(r, r);
                for (k, c) in br.iter().enumerate() {
                    for x in 0..r {
                        for y in 0..r {
                            let v = img.get(x, y) + &(c * rep.gens[k].get(x, y));
                            img.set(x, y, v);
                        }
                    }
                }
                if img != comm {
                    return Err(GaugeError::Representation(format!("bracket of e{} and e{} is not preserved", i + 1, j + 1)));
                }
            }
        }
        Ok(rep)
    }

    /// Coordinates of a polynomial matrix in the span of the generators;
    /// `None` if it lies outside.
    pub fn coords(&self, m: &[Poly]) -> Option<PVec> {
        let c = self.left_inv.apply(m);
        let back = self.stacked.apply(&c);
        (back == m).then_some(c)
    }
}

/// A gauge transformation `(g, φ)` acting on pairs `(A, B)`.
#[derive(Clone, Debug)]
pub struct GaugeMap {
    /// `Ad_g` as a row-major `g x g` polynomial matrix.
    pub ad: PVec,
    /// Action of `g` on `h1`, row-major `a x a`.
    pub rho1: PVec,
    /// Pullback of the Maurer–Cartan form, an `h0`-valued 1-form.
    pub mc: Form,
    pub phi: Form,
}

/// `Ad_g` for a constant or unipotent `g` in a faithful representation.
pub fn adjoint_matrix(rep: &MatrixRep, g: &[Poly]) -> Result<PVec, GaugeError> {
    let r = rep.r;
    let gi = pmat_inverse(g, r).ok_or(GaugeError::Singular)?;
    let nv = g.first().map_or(0, Poly::nvars);
    let dim = rep.gens.len();
    let mut ad = vec![Poly::zero(nv); dim * dim];
    for (k, t) in rep.gens.iter().enumerate() {
        let conj = pmat_mul(&pmat_mul(g, &t.to_poly(nv), r, r, r), &gi, r, r, r);
        let c = rep
            .coords(&conj)
            .ok_or_else(|| GaugeError::Incompatible(format!("g e{} g^-1 leaves the represented algebra", k + 1)))?;
        for (i, ci) in c.into_iter().enumerate() {
            ad[i * dim + k] = ci;
        }
    }
    Ok(ad)
}

/// The action on `h1 = h0*` dual to `Ad_g` under the pairing:
/// `ρ1 = P⁻¹ (Ad_{g⁻¹})ᵀ P`.
pub fn coadjoint_matrix(rep: &MatrixRep, g: &[Poly], pairing: &RatMatrix) -> Result<PVec, GaugeError> {
    let r = rep.r;
    let gi = pmat_inverse(g, r).ok_or(GaugeError::Singular)?;
    let adi = adjoint_matrix(rep, &gi)?;
    let d = rep.gens.len();
    let nv = g.first().map_or(0, Poly::nvars);
    let mut t = vec![Poly::zero(nv); d * d];
    for i in 0..d {
        for j in 0..d {
            t[i * d + j] = adi[j * d + i].clone();
        }
    }
    let pinv = pairing.inverse().ok_or(GaugeError::Singular)?;
    Ok(pmat_mul(&pmat_mul(&pinv.to_poly(nv), &t, d, d, d), &pairing.to_poly(nv), d, d, d))
}

fn is_admissible(g: &[Poly], r: usize) -> bool {
    if g.iter().all(Poly::is_constant) {
        return true;
    }
    let nv = g.first().map_or(0, Poly::nvars);
    (0..r).all(|i| (0..=i).all(|j| g[i * r + j] == if i == j { Poly::one(nv) } else { Poly::zero(nv) }))
}

impl GaugeMap {
    /// `g = id`: only the 1-form `φ` acts.
    pub fn pure(fiber: &GradedLie2, phi: Form) -> Result<GaugeMap, GaugeError> {
        let n = phi.nvars();
        if phi.degree() != 1 || phi.dim() != fiber.a {
            return Err(GaugeError::Shape("phi must be an h1-valued 1-form".into()));
        }
        Ok(GaugeMap {
            ad: RatMatrix::identity(fiber.g).to_poly(n),
            rho1: RatMatrix::identity(fiber.a).to_poly(n),
            mc: Form::zero(n, 1, fiber.g),
            phi,
        })
    }

    /// A gauge map from a group element `g` in a faithful representation of
    /// `h0`. `rho1` must intertwine `l1` and `l2` with `Ad_g`, and (for
    /// non-constant `g`) differentiate to `l2(mc, ·)`.
    pub fn new(
        fiber: &GradedLie2,
        rep: &MatrixRep,
        g: PVec,
        rho1: PVec,
        phi: Form,
        convention: MaurerCartan,
    ) -> Result<GaugeMap, GaugeError> {
        let (r, dg, da) = (rep.r, fiber.g, fiber.a);
        let n = phi.nvars();
        if g.len() != r * r || rho1.len() != da * da || phi.degree() != 1 || phi.dim() != da {
            return Err(GaugeError::Shape("g, rho1 or phi has the wrong size".into()));
        }
        if !is_admissible(&g, r) {
            return Err(GaugeError::NotAdmissible);
        }
        let gi = pmat_inverse(&g, r).ok_or(GaugeError::Singular)?;
        let ad = adjoint_matrix(rep, &g)?;
        let e = |d: usize, i: usize| pvec_basis(n, d, i);
        let adv = |v: &PVec| pmat_apply(&ad, dg, dg, v);
        let r1 = |v: &PVec| pmat_apply(&rho1, da, da, v);
        let mut fails = Vec::new();
        for i in 0..dg {
            for j in 0..dg {
                let lhs = adv(&fiber.br00_p(&e(dg, i), &e(dg, j)));
                if lhs != fiber.br00_p(&adv(&e(dg, i)), &adv(&e(dg, j))) {
                    fails.push(format!("Ad_g does not preserve [e{}, e{}]", i + 1, j + 1));
                }
            }
            for c in 0..da {
                let lhs = r1(&fiber.br01_p(&e(dg, i), &e(da, c)));
                if lhs != fiber.br01_p(&adv(&e(dg, i)), &r1(&e(da, c))) {
                    fails.push(format!("rho1 does not intertwine l2(e{}, f{})", i + 1, c + 1));
                }
            }
        }
        for c in 0..da {
            if fiber.d_p(&r1(&e(da, c))) != adv(&fiber.d_p(&e(da, c))) {
                fails.push(format!("rho1 does not intertwine l1 on f{}", c + 1));
            }
        }
        let mut comps = Vec::new();
        for i in 0..n {
            let dgi: PVec = g.iter().map(|p| p.partial(i)).collect();
            let m = match convention {
                MaurerCartan::Right => pmat_mul(&dgi, &gi, r, r, r),
                MaurerCartan::Left => pmat_mul(&gi, &dgi, r, r, r),
            };
            let Some(c) = rep.coords(&m) else {
                fails.push(format!("the Maurer-Cartan component along dx{} leaves the represented algebra", i + 1));
                continue;
            };
            // dρ1 must equal l2(mc, ·) composed with ρ1 on the matching side.
            let drho: PVec = rho1.iter().map(|p| p.partial(i)).collect();
            let ad1 = crate::algebroid::ad1_matrix(fiber, &c);
            let want = match convention {
                MaurerCartan::Right => pmat_mul(&ad1, &rho1, da, da, da),
                MaurerCartan::Left => pmat_mul(&rho1, &ad1, da, da, da),
            };
            if drho != want {
                fails.push(format!("rho1 does not differentiate to l2(mc, .) along dx{}", i + 1));
            }
            comps.push((vec![i], c));
        }
        if !fails.is_empty() {
            return Err(GaugeError::Incompatible(fails.join("; ")));
        }
        let mc = Form::from_components(n, 1, dg, comps);
        Ok(GaugeMap { ad, rho1, mc, phi })
    }

    /// `Ad_g` applied to the values of an `h0`-valued form.
    pub fn ad_form(&self, f: &Form) -> Form {
        f.map_values_poly(&self.ad, f.dim())
    }

    /// `(A', B')` with
    /// `A' = Ad_g A - g*θ - l1(φ)` and
    /// `B' = ρ1(g) B - dφ + ½ l2(l1 φ, φ) - l2(Ad_g A, φ) + l2(g*θ, φ)`.
    pub fn gauge_transform(&self, fiber: &GradedLie2, a_form: &Form, b_form: &Form) -> (Form, Form) {
        let ada = self.ad_form(a_form);
        let l1phi = self.phi.map_values(&fiber.l1);
        let a2 = ada.sub(&self.mc).sub(&l1phi);
        let b2 = b_form
            .map_values_poly(&self.rho1, fiber.a)
            .sub(&self.phi.d())
            .add(&l1phi.product(&self.phi, &fiber.l2_01).scale(&Rat::new(1, 2)))
            .sub(&ada.product(&self.phi, &fiber.l2_01))
            .add(&self.mc.product(&self.phi, &fiber.l2_01));
        (a2, b2)
    }

    /// Covariance of `fcurv`, the transformation law of `curv`, and
    /// invariance of `𝒮(fcurv, curv)`.
    pub fn check_gauge(&self, fiber: &QuadraticLie2, a_form: &Form, b_form: &Form) -> Report {
        let l = &fiber.lie;
        let (a2, b2) = self.gauge_transform(l, a_form, b_form);
        let (f1, c1) = (fcurv(l, a_form, b_form), curv(l, a_form, b_form));
        let (f2, c2) = (fcurv(l, &a2, &b2), curv(l, &a2, &b2));
        let adf = self.ad_form(&f1);
        let law = c1.map_values_poly(&self.rho1, l.a).sub(&adf.product(&self.phi, &l.l2_01));
        let p = fiber.pairing_map();
        let inv = pair_forms(&f2, &c2, &p).sub(&pair_forms(&f1, &c1, &p));
        Report {
            checks: vec![
                check_zero("gauge.fcurv-covariance", &f2.sub(&adf)),
                check_zero("gauge.curv-law", &c2.sub(&law)),
                check_zero("gauge.invariance", &inv),
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::trivial;
    use crate::gla::LieAlgebra;
    use crate::samples::{cayley_rotation, coadjoint_heisenberg, heisenberg_rep, quadratic_so3, semistrict_gl2, so3_rep, Sampler};

    fn abelian() -> QuadraticLie2 {
        QuadraticLie2::from_quadratic_liealg(&LieAlgebra::abelian(1), &RatMatrix::identity(1)).unwrap()
    }

    fn form(src: &str, n: usize, dim: usize) -> Form {
        Form::parse(src, n, dim, &[]).unwrap()
    }

    fn assert_pass(r: &Report) {
        assert!(r.passed(), "{:?}", r.failing().collect::<Vec<_>>());
    }

    #[test]
    fn abelian_worked_example() {
        let n = 6;
        let fib = abelian();
        let a = Form::zero(n, 1, 1);
        let b = form("x1*dx2^dx3 + x4*dx5^dx1", n, 1);
        let q = QuadraticSplitData::from_gamma_connection(&fib, &a, &b).unwrap();
        let p = q.pontryagin_5form();
        assert_eq!(p, b.wedge(&b.d()));
        assert_eq!(p, form("x1*dx1^dx2^dx3^dx4^dx5", n, 1));
        assert_pass(&check_cs5(&fib, &a, &b));
        assert_pass(&check_gamma_consistency(&fib, &a, &b).unwrap());
        assert_pass(&q.check_closed());
    }

    #[test]
    fn so3_fake_curvature() {
        let n = 3;
        let fib = quadratic_so3();
        let a = form("x3*dx1*e1 + x1*dx2*e2", n, 3);
        let b = Form::zero(n, 2, 3);
        let f = fcurv(&fib.lie, &a, &b);
        assert_eq!(f.component(&[0, 1]), form("e2 + x1*x3*e3", n, 3).component(&[]));
        assert!(curv(&fib.lie, &a, &b).is_zero());
    }

    #[test]
    fn closedness_and_shifts_on_so3() {
        let n = 6;
        let fib = quadratic_so3();
        let mut s = Sampler::new(11);
        let a = s.form(n, 1, 3, 0.4);
        let b = s.form(n, 2, 3, 0.3);
        let q = QuadraticSplitData::from_gamma_connection(&fib, &a, &b).unwrap();
        assert_pass(&q.check_closed());
        assert_pass(&check_cs5(&fib, &a, &b));
        assert_pass(&q.gamma_shift_check(&s.form(n, 2, 3, 0.3)).unwrap());
        assert_pass(&q.sigma_shift_check(&form("x3*dx1*e2", n, 3)).unwrap());
        assert_pass(&q.sigma_shift_check(&s.form(n, 1, 3, 0.4)).unwrap());
    }

    #[test]
    fn shifts_on_semistrict_data() {
        let n = 6;
        let fib = semistrict_gl2();
        let mut s = Sampler::new(4);
        s.max_degree = 1;
        let base = trivial(&fib.lie, n).shift_splitting(&s.form(n, 1, 4, 0.3)).unwrap();
        let q = QuadraticSplitData::new(base, fib.pairing.clone()).unwrap();
        assert_pass(&q.check_closed());
        let r = q.sigma_shift_check(&s.form(n, 1, 4, 0.3)).unwrap();
        assert_pass(&r);
        assert_pass(&q.gamma_shift_check(&s.form(n, 2, 4, 0.3)).unwrap());
    }

    #[test]
    fn small_chart_is_vacuous() {
        let fib = quadratic_so3();
        let mut s = Sampler::new(2);
        let q = QuadraticSplitData::from_gamma_connection(&fib, &s.form(5, 1, 3, 0.5), &s.form(5, 2, 3, 0.5)).unwrap();
        let r = q.check_closed();
        assert!(r.checks.iter().all(|c| c.status == crate::report::Status::Vacuous));
    }

    #[test]
    fn non_quadratic_j_is_rejected() {
        let fib = quadratic_so3();
        let n = 3;
        let mut d = trivial(&fib.lie, n).into_data();
        // J(d1, d2, e1) = f1 makes ⟨J(X,Y,e1), e1⟩ nonzero.
        let mut j = crate::linalg::pvec_zero(n, 9);
        j[0] = Poly::one(n);
        d.j = Form::from_components(n, 2, 9, [(vec![0, 1], j)]);
        let base = SplitLie2Algebroid::new(d).unwrap();
        assert!(matches!(QuadraticSplitData::new(base, fib.pairing.clone()), Err(PontryaginError::NotQuadratic(_))));
    }

    #[test]
    fn gauge_pure_phi() {
        let n = 5;
        let fib = quadratic_so3();
        let mut s = Sampler::new(8);
        let (a, b) = (s.form(n, 1, 3, 0.5), s.form(n, 2, 3, 0.4));
        let gm = GaugeMap::pure(&fib.lie, s.form(n, 1, 3, 0.5)).unwrap();
        assert_pass(&gm.check_gauge(&fib, &a, &b));
    }

    #[test]
    fn gauge_constant_rotation() {
        let n = 5;
        let fib = quadratic_so3();
        let rep = MatrixRep::new(&fib.lie, so3_rep()).unwrap();
        let g = cayley_rotation(1, 2, -1).to_poly(n);
        let rho1 = coadjoint_matrix(&rep, &g, &fib.pairing).unwrap();
        let mut s = Sampler::new(9);
        let (a, b) = (s.form(n, 1, 3, 0.5), s.form(n, 2, 3, 0.4));
        let gm = GaugeMap::new(&fib.lie, &rep, g, rho1, s.form(n, 1, 3, 0.4), MaurerCartan::Right).unwrap();
        assert_pass(&gm.check_gauge(&fib, &a, &b));
    }

    fn unipotent(n: usize) -> PVec {
        let x = |i| Poly::var(n, i);
        let (o, z) = (Poly::one(n), Poly::zero(n));
        vec![o.clone(), x(0), &x(2) + &(&x(0) * &x(1)), z.clone(), o.clone(), x(1), z.clone(), z, o]
    }

    #[test]
    fn gauge_unipotent_heisenberg() {
        let n = 5;
        let fib = coadjoint_heisenberg();
        let rep = MatrixRep::new(&fib.lie, heisenberg_rep()).unwrap();
        let g = unipotent(n);
        let rho1 = coadjoint_matrix(&rep, &g, &fib.pairing).unwrap();
        let mut s = Sampler::new(10);
        let (a, b) = (s.form(n, 1, 3, 0.5), s.form(n, 2, 3, 0.4));
        let gm = GaugeMap::new(&fib.lie, &rep, g, rho1, s.form(n, 1, 3, 0.4), MaurerCartan::Right).unwrap();
        assert!(!gm.mc.is_zero());
        assert_pass(&gm.check_gauge(&fib, &a, &b));
    }

    #[test]
    fn left_maurer_cartan_breaks_covariance() {
        let n = 5;
        let fib = coadjoint_heisenberg();
        let rep = MatrixRep::new(&fib.lie, heisenberg_rep()).unwrap();
        let g = unipotent(n);
        let rho1 = coadjoint_matrix(&rep, &g, &fib.pairing).unwrap();
        let phi = Form::zero(n, 1, 3);
        let gm = GaugeMap::new(&fib.lie, &rep, g, rho1, phi, MaurerCartan::Left).unwrap();
        let r = gm.check_gauge(&fib, &Form::zero(n, 1, 3), &Form::zero(n, 2, 3));
        assert!(!r.get("gauge.fcurv-covariance").unwrap().passed());
    }

    #[test]
    fn non_unipotent_g_is_rejected() {
        let n = 3;
        let fib = coadjoint_heisenberg();
        let rep = MatrixRep::new(&fib.lie, heisenberg_rep()).unwrap();
        let mut g = unipotent(n);
        g[3] = Poly::var(n, 0);
        let rho1 = RatMatrix::identity(3).to_poly(n);
        let r = GaugeMap::new(&fib.lie, &rep, g, rho1, Form::zero(n, 1, 3), MaurerCartan::Right);
        assert!(matches!(r, Err(GaugeError::NotAdmissible)));
    }
}
