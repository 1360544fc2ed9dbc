//! Split transitive Lie 2-algebroids on a chart.
//!
//! The algebroid is `A-1 ⊕ (G ⊕ TM)` with fiber Lie 2-algebra
//! `(A-1 ⊕ G; l1, l2, l3)`, connections `∇0` on `G` and `∇1` on `A-1`, and
//! forms `R, γ, I, J, K`. Its brackets are
//!
//! ```text
//! l2(X+u, Y+v) = [X,Y] - Rγ(X,Y) + ∇0_X v - ∇0_Y u + l2(u,v)
//! l2(X+u, m)   = ∇1_X m + l2(u,m)
//! l3(X+u, Y+v, Z+w) = -Iγ(X,Y,Z) - J(X,Y,w) - J(X,v,Z) - J(u,Y,Z)
//!                     + K(X,v,w) + K(u,Y,w) + K(u,v,Z) + l3(u,v,w)
//! ```
//!
//! with `Rγ = R + l1∘γ` and `Iγ = I + d_∇1 γ`. `J` and `K` are extended to
//! mixed argument positions by total skew symmetry.

use crate::exterior::{combinations, Form, VectorField};
use crate::gla::GradedLie2;
use crate::linalg::{
    pmat_apply, pvec_add, pvec_add_assign, pvec_add_scaled, pvec_basis, pvec_is_zero, pvec_mul_poly, pvec_neg, pvec_sub, pvec_zero, Bilinear, PVec,
};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::report::{Checker, Report};

/// Errors raised when assembling algebroid data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebroidError {
    #[error("`{field}` has the wrong shape: expected a {degree}-form with {dim} values on {n} variables")]
    Shape { field: &'static str, degree: usize, dim: usize, n: usize },
    #[error("K is not skew-symmetric in its fiber arguments: {0}")]
    NotSkew(String),
    #[error("a strict fiber (l3 = 0) is required here")]
    NotStrict,
    #[error("{0}")]
    Invalid(String),
}

/// Raw data of a split transitive Lie 2-algebroid.
///
/// Matrix-valued forms are row-major: `omega0` has values in `End(G)` (`g*g`),
/// `omega1` in `End(A-1)` (`a*a`), `j` in `Hom(G, A-1)` (`a*g`) and `k` in
/// `Hom(∧²G, A-1)` stored as `a*g*g` with index `(r*g + b)*g + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    pub fiber: GradedLie2,
    pub omega0: Form,
    pub omega1: Form,
    pub r: Form,
    pub gamma: Form,
    pub i: Form,
    pub j: Form,
    pub k: Form,
}

/// A grade-0 section `X + u` of `TM ⊕ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section0 {
    pub x: VectorField,
    pub u: PVec,
}

impl Section0 {
    pub fn field(x: VectorField, g: usize) -> Section0 {
        let n = x.nvars();
        Section0 { x, u: pvec_zero(n, g) }
    }

    pub fn fiber(u: PVec) -> Section0 {
        let n = u.first().map_or(0, Poly::nvars);
        Section0 { x: VectorField::zero(n), u }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && pvec_is_zero(&self.u)
    }

    pub fn add(&self, o: &Section0) -> Section0 {
        Section0 { x: self.x.add(&o.x), u: pvec_add(&self.u, &o.u) }
    }

    pub fn sub(&self, o: &Section0) -> Section0 {
        Section0 { x: self.x.sub(&o.x), u: pvec_sub(&self.u, &o.u) }
    }

    pub fn neg(&self) -> Section0 {
        Section0 { x: self.x.scale(&Rat::int(-1)), u: pvec_neg(&self.u) }
    }

    pub fn mul_poly(&self, f: &Poly) -> Section0 {
        Section0 { x: self.x.mul_poly(f), u: pvec_mul_poly(&self.u, f) }
    }
}

impl crate::gla::JacobiatorValue for Section0 {
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

impl crate::report::Residual for Section0 {
    fn residual(&self) -> Option<String> {
        if self.is_zero() {
            return None;
        }
        Some(format!("{} + {}", self.x, crate::report::Residual::residual(&self.u).unwrap_or_else(|| "0".into())))
    }
}

/// A labelled test section, for witnesses in reports.
pub type Labelled<T> = (String, T);

/// Generating family of test sections on `R^n`: coordinate fields `∂_i` and
/// `x_j ∂_i` (`j < 2`), fiber basis sections `e_a`, `x1 e_a`, `x2 e_a`, and the
/// function `x1`.
#[derive(Clone, Debug)]
pub struct Family {
    pub fields: Vec<Labelled<VectorField>>,
    pub g: Vec<Labelled<PVec>>,
    pub a: Vec<Labelled<PVec>>,
    pub f: Poly,
}

impl Family {
    pub fn new(n: usize, g: usize, a: usize) -> Family {
        let mut fields = Vec::new();
        for i in 0..n {
            fields.push((format!("d/dx{}", i + 1), VectorField::coordinate(n, i, Poly::one(n))));
        }
        for j in 0..n.min(2) {
            for i in 0..n {
                fields.push((format!("x{}*d/dx{}", j + 1, i + 1), VectorField::coordinate(n, i, Poly::var(n, j))));
            }
        }
        let fib = |d: usize, tag: &str| {
            let mut v = Vec::new();
            for b in 0..d {
                v.push((format!("{tag}{}", b + 1), pvec_basis(n, d, b)));
            }
            for j in 0..n.min(2) {
                for b in 0..d {
                    v.push((format!("x{}*{tag}{}", j + 1, b + 1), pvec_mul_poly(&pvec_basis(n, d, b), &Poly::var(n, j))));
                }
            }
            v
        };
        let f = if n > 0 { Poly::var(n, 0) } else { Poly::one(0) };
        Family { fields, g: fib(g, "e"), a: fib(a, "f"), f }
    }

    /// Restrict to the first `k` vector fields.
    pub fn truncate_fields(mut self, k: usize) -> Family {
        self.fields.truncate(k);
        self
    }
}

/// The bilinear map `(M, v) -> M v` for `M` an `rows x cols` matrix value.
fn action(rows: usize, cols: usize) -> Bilinear {
    Bilinear::matrix_action(rows, cols)
}

/// Adjoint matrix (row-major) of `u ↦ l2(v, ·)` on `G`.
pub fn ad0_matrix(fiber: &GradedLie2, v: &[Poly]) -> PVec {
    let g = fiber.g;
    let n = v.first().map_or(0, Poly::nvars);
    let mut m = pvec_zero(n, g * g);
    for (a, c, r, coef) in fiber.l2_00.entries() {
        m[r * g + c].add_scaled(&v[*a], coef);
    }
    m
}

/// Matrix of `m ↦ l2(v, m)` on `A-1`.
pub fn ad1_matrix(fiber: &GradedLie2, v: &[Poly]) -> PVec {
    let a = fiber.a;
    let n = v.first().map_or(0, Poly::nvars);
    let mut m = pvec_zero(n, a * a);
    for (b, c, r, coef) in fiber.l2_01.entries() {
        m[r * a + c].add_scaled(&v[*b], coef);
    }
    m
}

/// Matrix (`a x g`) of `w ↦ l2(w, m)` for fixed `m ∈ A-1`.
pub fn ad1_transpose_matrix(fiber: &GradedLie2, m: &[Poly]) -> PVec {
    let (a, g) = (fiber.a, fiber.g);
    let n = m.first().map_or(0, Poly::nvars);
    let mut out = pvec_zero(n, a * g);
    for (c, b, r, coef) in fiber.l2_01.entries() {
        out[r * g + c].add_scaled(&m[*b], coef);
    }
    out
}

/// Apply a `Hom(∧²G, A-1)` value to `(u, v)`.
pub fn k_apply(kv: &[Poly], a: usize, g: usize, u: &[Poly], v: &[Poly]) -> PVec {
    let n = u.first().or(v.first()).map_or(0, Poly::nvars);
    let mut out = pvec_zero(n, a);
    for r in 0..a {
        for b in 0..g {
            if u[b].is_zero() {
                continue;
            }
            for c in 0..g {
                let coef = &kv[(r * g + b) * g + c];
                if coef.is_zero() || v[c].is_zero() {
                    continue;
                }
                out[r] += &(&(coef * &u[b]) * &v[c]);
            }
        }
    }
    out
}

/// `(d_∇ ω)(X_0..X_k)` from a pointwise evaluator of `ω` and a connection.
pub fn d_nabla_at(
    xs: &[&VectorField],
    omega: &dyn Fn(&[&VectorField]) -> PVec,
    nabla: &dyn Fn(&VectorField, &PVec) -> PVec,
) -> PVec {
    let k = xs.len();
    let mut acc: Option<PVec> = None;
    let mut add = |v: PVec, s: i64| match acc.as_mut() {
        None => acc = Some(if s > 0 { v } else { pvec_neg(&v) }),
        Some(a) => pvec_add_scaled(a, &v, &Rat::int(s)),
    };
    for i in 0..k {
        let rest: Vec<&VectorField> = (0..k).filter(|&t| t != i).map(|t| xs[t]).collect();
        add(nabla(xs[i], &omega(&rest)), if i % 2 == 0 { 1 } else { -1 });
    }
    for i in 0..k {
        for j in i + 1..k {
            let br = xs[i].bracket(xs[j]);
            let mut args: Vec<&VectorField> = vec![&br];
            args.extend((0..k).filter(|&t| t != i && t != j).map(|t| xs[t]));
            add(omega(&args), if (i + j) % 2 == 0 { 1 } else { -1 });
        }
    }
    acc.expect("d_nabla needs at least one argument")
}

/// A split transitive Lie 2-algebroid with its derived curvatures cached.
#[derive(Clone, Debug)]
pub struct SplitLie2Algebroid {
    data: SplitData,
    n: usize,
    r_gamma: Form,
    i_gamma: Form,
}

impl SplitLie2Algebroid {
    pub fn new(data: SplitData) -> Result<SplitLie2Algebroid, AlgebroidError> {
        let n = data.omega0.nvars();
        let (g, a) = (data.fiber.g, data.fiber.a);
        let shape = |f: &Form, field: &'static str, degree: usize, dim: usize| {
            if f.nvars() != n || f.degree() != degree || f.dim() != dim {
                Err(AlgebroidError::Shape { field, degree, dim, n })
            } else {
                Ok(())
            }
        };
        shape(&data.omega0, "omega0", 1, g * g)?;
        shape(&data.omega1, "omega1", 1, a * a)?;
        shape(&data.r, "R", 2, g)?;
        shape(&data.gamma, "gamma", 2, a)?;
        shape(&data.i, "I", 3, a)?;
        shape(&data.j, "J", 2, a * g)?;
        shape(&data.k, "K", 1, a * g * g)?;
        for (blade, v) in data.k.components() {
            for r in 0..a {
                for b in 0..g {
                    for c in 0..g {
                        let s = &v[(r * g + b) * g + c] + &v[(r * g + c) * g + b];
                        if !s.is_zero() {
                            return Err(AlgebroidError::NotSkew(format!(
                                "component {:?}, output f{}, inputs (e{}, e{})",
                                blade.indices().iter().map(|i| i + 1).collect::<Vec<_>>(),
                                r + 1,
                                b + 1,
                                c + 1
                            )));
                        }
                    }
                }
            }
        }
        let r_gamma = data.r.add(&data.gamma.map_values(&data.fiber.l1));
        let d1 = data.gamma.d().add(&data.omega1.product(&data.gamma, &action(a, a)));
        let i_gamma = data.i.add(&d1);
        Ok(SplitLie2Algebroid { data, n, r_gamma, i_gamma })
    }

    pub fn data(&self) -> &SplitData {
        &self.data
    }

    pub fn into_data(self) -> SplitData {
        self.data
    }

    pub fn fiber(&self) -> &GradedLie2 {
        &self.data.fiber
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.data.fiber.g
    }

    pub fn a(&self) -> usize {
        self.data.fiber.a
    }

    /// `Rγ = R + l1∘γ`.
    pub fn r_gamma(&self) -> &Form {
        &self.r_gamma
    }

    /// `Iγ = I + d_∇1 γ`.
    pub fn i_gamma(&self) -> &Form {
        &self.i_gamma
    }

    /// Covariant exterior derivative for `G`-valued forms.
    pub fn d_nabla0(&self, f: &Form) -> Form {
        f.d().add(&self.data.omega0.product(f, &action(self.g(), self.g())))
    }

    /// Covariant exterior derivative for `A-1`-valued forms.
    pub fn d_nabla1(&self, f: &Form) -> Form {
        f.d().add(&self.data.omega1.product(f, &action(self.a(), self.a())))
    }

    /// `J∘Rγ (X1..X4) = 1/4 Σ_{S4} sgn J(Rγ(Xτ1, Xτ2), Xτ3, Xτ4)`, as a shuffle product.
    pub fn j_circ_r(&self) -> Form {
        self.r_gamma.product(&self.data.j, &action(self.a(), self.g()).swapped())
    }

    // Pointwise operators on sections.

    pub fn nabla0(&self, x: &VectorField, u: &PVec) -> PVec {
        let g = self.g();
        let w = self.data.omega0.eval(&[x]);
        pvec_add(&x.apply_vec(u), &pmat_apply(&w, g, g, u))
    }

    pub fn nabla1(&self, x: &VectorField, m: &PVec) -> PVec {
        let a = self.a();
        let w = self.data.omega1.eval(&[x]);
        pvec_add(&x.apply_vec(m), &pmat_apply(&w, a, a, m))
    }

    pub fn r_gamma_at(&self, x: &VectorField, y: &VectorField) -> PVec {
        self.r_gamma.eval(&[x, y])
    }

    pub fn i_gamma_at(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> PVec {
        self.i_gamma.eval(&[x, y, z])
    }

    /// `J(X, Y, u)`.
    pub fn j_at(&self, x: &VectorField, y: &VectorField, u: &PVec) -> PVec {
        if pvec_is_zero(u) {
            return pvec_zero(self.n, self.a());
        }
        pmat_apply(&self.data.j.eval(&[x, y]), self.a(), self.g(), u)
    }

    /// `K(X, u, v)`.
    pub fn k_at(&self, x: &VectorField, u: &PVec, v: &PVec) -> PVec {
        if pvec_is_zero(u) || pvec_is_zero(v) {
            return pvec_zero(self.n, self.a());
        }
        k_apply(&self.data.k.eval(&[x]), self.a(), self.g(), u, v)
    }

    pub fn l1(&self, m: &PVec) -> Section0 {
        Section0::fiber(self.fiber().d_p(m))
    }

    /// `l2` on two grade-0 sections.
    pub fn l2_00(&self, s: &Section0, t: &Section0) -> Section0 {
        let x = s.x.bracket(&t.x);
        let mut u = self.fiber().br00_p(&s.u, &t.u);
        if !s.x.is_zero() && !t.x.is_zero() {
            u = pvec_sub(&u, &self.r_gamma_at(&s.x, &t.x));
        }
        if !s.x.is_zero() {
            pvec_add_assign(&mut u, &self.nabla0(&s.x, &t.u));
        }
        if !t.x.is_zero() {
            u = pvec_sub(&u, &self.nabla0(&t.x, &s.u));
        }
        Section0 { x, u }
    }

    /// `l2(X + u, m)`.
    pub fn l2_01(&self, s: &Section0, m: &PVec) -> PVec {
        let mut out = self.fiber().br01_p(&s.u, m);
        if !s.x.is_zero() {
            pvec_add_assign(&mut out, &self.nabla1(&s.x, m));
        }
        out
    }

    /// `l3` on three grade-0 sections.
    pub fn l3(&self, s: &Section0, t: &Section0, r: &Section0) -> PVec {
        let (x, y, z) = (&s.x, &t.x, &r.x);
        let (u, v, w) = (&s.u, &t.u, &r.u);
        let mut out = self.fiber().br3_p(u, v, w);
        let (hx, hy, hz) = (!x.is_zero(), !y.is_zero(), !z.is_zero());
        if hx && hy && hz {
            out = pvec_sub(&out, &self.i_gamma_at(x, y, z));
        }
        // -J(X,Y,w) - J(X,v,Z) - J(u,Y,Z) with J(X,v,Z) = -J(X,Z,v), J(u,Y,Z) = J(Y,Z,u)
        if hx && hy {
            out = pvec_sub(&out, &self.j_at(x, y, w));
        }
        if hx && hz {
            pvec_add_assign(&mut out, &self.j_at(x, z, v));
        }
        if hy && hz {
            out = pvec_sub(&out, &self.j_at(y, z, u));
        }
        // K(X,v,w) + K(u,Y,w) + K(u,v,Z) with K(u,Y,w) = -K(Y,u,w), K(u,v,Z) = K(Z,u,v)
        if hx {
            pvec_add_assign(&mut out, &self.k_at(x, v, w));
        }
        if hy {
            out = pvec_sub(&out, &self.k_at(y, u, w));
        }
        if hz {
            pvec_add_assign(&mut out, &self.k_at(z, u, v));
        }
        out
    }

    /// The ten structure identities, evaluated with honest connection and
    /// bracket operators on a generating family of sections.
    pub fn check_structure_equations(&self, fam: &Family) -> Report {
        let fb = self.fiber();
        let mut rep = self.fiber().check_lie2_axioms().scoped("fiber");
        let vf = &fam.fields;
        let gs = &fam.g;
        let as_ = &fam.a;
        let mut c = Checker::new("structure.compat-l1");
        for (lx, x) in vf {
            for (lm, m) in as_ {
                let r = pvec_sub(&fb.d_p(&self.nabla1(x, m)), &self.nabla0(x, &fb.d_p(m)));
                c.case(|| format!("({lx}, {lm})"), &r);
            }
        }
        rep.push(c.finish());

        let mut c = Checker::new("structure.der-l2");
        for (lx, x) in vf {
            for p in combinations(gs.len(), 2) {
                let ((lv, v), (lw, w)) = (&gs[p[0]], &gs[p[1]]);
                let lhs = pvec_sub(
                    &pvec_sub(&self.nabla0(x, &fb.br00_p(v, w)), &fb.br00_p(&self.nabla0(x, v), w)),
                    &fb.br00_p(v, &self.nabla0(x, w)),
                );
                let r = pvec_sub(&lhs, &fb.d_p(&self.k_at(x, v, w)));
                c.case(|| format!("({lx}, {lv}, {lw})"), &r);
            }
        }
        rep.push(c.finish());

        let mut c = Checker::new("structure.der-l2-mixed");
        for (lx, x) in vf {
            for (lv, v) in gs {
                for (lm, m) in as_ {
                    let lhs = pvec_sub(
                        &pvec_sub(&self.nabla1(x, &fb.br01_p(v, m)), &fb.br01_p(&self.nabla0(x, v), m)),
                        &fb.br01_p(v, &self.nabla1(x, m)),
                    );
                    let r = pvec_sub(&lhs, &self.k_at(x, v, &fb.d_p(m)));
                    c.case(|| format!("({lx}, {lv}, {lm})"), &r);
                }
            }
        }
        rep.push(c.finish());

        let mut c = Checker::new("structure.der-l3");
        for (lx, x) in vf {
            for p in combinations(gs.len(), 3) {
                let ((lu, u), (lv, v), (lw, w)) = (&gs[p[0]], &gs[p[1]], &gs[p[2]]);
                // K(a, b, X) := K(X, a, b)
                let kk = |s: &PVec, t: &PVec| self.k_at(x, s, t);
                let mut r = fb.br01_p(u, &kk(v, w));
                r = pvec_sub(&r, &fb.br01_p(v, &kk(u, w)));
                pvec_add_assign(&mut r, &fb.br01_p(w, &kk(u, v)));
                r = pvec_sub(&r, &kk(&fb.br00_p(u, v), w));
                r = pvec_sub(&r, &kk(v, &fb.br00_p(u, w)));
                pvec_add_assign(&mut r, &kk(u, &fb.br00_p(v, w)));
                r = pvec_sub(&r, &self.nabla1(x, &fb.br3_p(u, v, w)));
                pvec_add_assign(&mut r, &fb.br3_p(&self.nabla0(x, u), v, w));
                pvec_add_assign(&mut r, &fb.br3_p(u, &self.nabla0(x, v), w));
                pvec_add_assign(&mut r, &fb.br3_p(u, v, &self.nabla0(x, w)));
                c.case(|| format!("({lx}, {lu}, {lv}, {lw})"), &r);
            }
        }
        rep.push(c.finish());

        let pairs = combinations(vf.len(), 2);
        let mut c0 = Checker::new("structure.curvature-0");
        let mut c1 = Checker::new("structure.curvature-1");
        for p in &pairs {
            let ((lx, x), (ly, y)) = (&vf[p[0]], &vf[p[1]]);
            let xy = x.bracket(y);
            let rg = self.r_gamma_at(x, y);
            for (lw, w) in gs {
                let mut r = pvec_sub(&self.nabla0(x, &self.nabla0(y, w)), &self.nabla0(y, &self.nabla0(x, w)));
                r = pvec_sub(&r, &self.nabla0(&xy, w));
                pvec_add_assign(&mut r, &fb.br00_p(&rg, w));
                pvec_add_assign(&mut r, &fb.d_p(&self.j_at(x, y, w)));
                c0.case(|| format!("({lx}, {ly}, {lw})"), &r);
            }
            for (lm, m) in as_ {
                let mut r = pvec_sub(&self.nabla1(x, &self.nabla1(y, m)), &self.nabla1(y, &self.nabla1(x, m)));
                r = pvec_sub(&r, &self.nabla1(&xy, m));
                pvec_add_assign(&mut r, &fb.br01_p(&rg, m));
                pvec_add_assign(&mut r, &self.j_at(x, y, &fb.d_p(m)));
                c1.case(|| format!("({lx}, {ly}, {lm})"), &r);
            }
        }
        rep.push(c0.finish());
        rep.push(c1.finish());

        let triples = combinations(vf.len(), 3);
        let rg_at = |xs: &[&VectorField]| self.r_gamma_at(xs[0], xs[1]);
        let ig_at = |xs: &[&VectorField]| self.i_gamma_at(xs[0], xs[1], xs[2]);
        let nab0 = |x: &VectorField, u: &PVec| self.nabla0(x, u);
        let nab1 = |x: &VectorField, m: &PVec| self.nabla1(x, m);
        let mut c = Checker::new("structure.bianchi-r");
        for t in &triples {
            let xs = [&vf[t[0]].1, &vf[t[1]].1, &vf[t[2]].1];
            let r = pvec_sub(&d_nabla_at(&xs, &rg_at, &nab0), &fb.d_p(&ig_at(&xs)));
            c.case(|| format!("({}, {}, {})", vf[t[0]].0, vf[t[1]].0, vf[t[2]].0), &r);
        }
        rep.push(c.finish());

        // J(u, Y, Z) = J(Y, Z, u), J(X, v, Z) = -J(X, Z, v); K(u, Y, w) = -K(Y, u, w).
        let mut c = Checker::new("structure.bianchi-j");
        for t in &triples {
            let (x, y, z) = (&vf[t[0]].1, &vf[t[1]].1, &vf[t[2]].1);
            let ig = self.i_gamma_at(x, y, z);
            let (rxy, rzx, ryz) = (self.r_gamma_at(x, y), self.r_gamma_at(z, x), self.r_gamma_at(y, z));
            let (bxy, bzx, byz) = (x.bracket(y), z.bracket(x), y.bracket(z));
            for (lu, u) in gs {
                let mut r = fb.br01_p(u, &ig);
                r = pvec_sub(&r, &self.nabla1(x, &self.j_at(y, z, u)));
                pvec_add_assign(&mut r, &self.nabla1(y, &self.j_at(x, z, u)));
                r = pvec_sub(&r, &self.nabla1(z, &self.j_at(x, y, u)));
                pvec_add_assign(&mut r, &self.j_at(y, z, &self.nabla0(x, u)));
                r = pvec_sub(&r, &self.j_at(x, z, &self.nabla0(y, u)));
                pvec_add_assign(&mut r, &self.j_at(x, y, &self.nabla0(z, u)));
                pvec_add_assign(&mut r, &self.j_at(&bxy, z, u));
                pvec_add_assign(&mut r, &self.j_at(&bzx, y, u));
                pvec_add_assign(&mut r, &self.j_at(&byz, x, u));
                pvec_add_assign(&mut r, &self.k_at(z, u, &rxy));
                pvec_add_assign(&mut r, &self.k_at(y, u, &rzx));
                pvec_add_assign(&mut r, &self.k_at(x, u, &ryz));
                c.case(|| format!("({lu}, {}, {}, {})", vf[t[0]].0, vf[t[1]].0, vf[t[2]].0), &r);
            }
        }
        rep.push(c.finish());

        let mut c = Checker::new("structure.bianchi-i");
        for q in combinations(vf.len(), 4) {
            let xs = [&vf[q[0]].1, &vf[q[1]].1, &vf[q[2]].1, &vf[q[3]].1];
            let mut r = d_nabla_at(&xs, &ig_at, &nab1);
            // (2,2)-shuffles: J(X_s3, X_s4, Rγ(X_s1, X_s2))
            for (p, rest, s) in [
                ([0, 1], [2, 3], 1),
                ([0, 2], [1, 3], -1),
                ([0, 3], [1, 2], 1),
                ([1, 2], [0, 3], 1),
                ([1, 3], [0, 2], -1),
                ([2, 3], [0, 1], 1),
            ] {
                let rv = self.r_gamma_at(xs[p[0]], xs[p[1]]);
                pvec_add_scaled(&mut r, &self.j_at(xs[rest[0]], xs[rest[1]], &rv), &Rat::int(s));
            }
            c.case(|| q.iter().map(|&i| vf[i].0.as_str()).collect::<Vec<_>>().join(", "), &r);
        }
        rep.push(c.finish());

        let mut c = Checker::new("structure.bianchi-k");
        for p in &pairs {
            let (y, z) = (&vf[p[0]].1, &vf[p[1]].1);
            let yz = y.bracket(z);
            let ryz = self.r_gamma_at(y, z);
            for uv in combinations(gs.len(), 2) {
                let ((lu, u), (lv, v)) = (&gs[uv[0]], &gs[uv[1]]);
                // J(a, Y, Z) = J(Y, Z, a); K(a, b, Z) = K(Z, a, b); K(a, Y, b) = -K(Y, a, b)
                let mut r = pvec_neg(&fb.br01_p(u, &self.j_at(y, z, v)));
                pvec_add_assign(&mut r, &fb.br01_p(v, &self.j_at(y, z, u)));
                pvec_add_assign(&mut r, &self.j_at(y, z, &fb.br00_p(u, v)));
                pvec_add_assign(&mut r, &self.nabla1(y, &self.k_at(z, u, v)));
                r = pvec_sub(&r, &self.nabla1(z, &self.k_at(y, u, v)));
                r = pvec_sub(&r, &self.k_at(&yz, u, v));
                pvec_add_assign(&mut r, &fb.br3_p(u, v, &ryz));
                pvec_add_assign(&mut r, &self.k_at(z, v, &self.nabla0(y, u)));
                r = pvec_sub(&r, &self.k_at(y, v, &self.nabla0(z, u)));
                r = pvec_sub(&r, &self.k_at(z, u, &self.nabla0(y, v)));
                pvec_add_assign(&mut r, &self.k_at(y, u, &self.nabla0(z, v)));
                c.case(|| format!("({lu}, {lv}, {}, {})", vf[p[0]].0, vf[p[1]].0), &r);
            }
        }
        rep.push(c.finish());
        rep
    }

    /// Lie 2-algebroid axioms checked directly on the assembled brackets over
    /// the generating family: Lie 2-algebra identities, anchor properties and
    /// the Leibniz rule.
    pub fn check_axioms_on_sections(&self, fam: &Family) -> Report {
        let g = self.g();
        let mut e0: Vec<Labelled<Section0>> = Vec::new();
        for (l, x) in &fam.fields {
            e0.push((l.clone(), Section0::field(x.clone(), g)));
        }
        for (l, u) in &fam.g {
            e0.push((l.clone(), Section0::fiber(u.clone())));
        }
        let e1 = &fam.a;
        let f = &fam.f;
        let mut rep = Report::new();

        let mut c = Checker::new("axioms.skew-l2");
        for p in combinations(e0.len(), 2) {
            let ((la, s), (lb, t)) = (&e0[p[0]], &e0[p[1]]);
            let r = self.l2_00(s, t).add(&self.l2_00(t, s));
            c.case(|| format!("({la}, {lb})"), &r);
        }
        rep.push(c.finish());

        let mut c = Checker::new("axioms.l1-equivariant");
        for (ls, s) in &e0 {
            for (lm, m) in e1 {
                let r = self.l1(&self.l2_01(s, m)).sub(&self.l2_00(s, &self.l1(m)));
                c.case(|| format!("({ls}, {lm})"), &r);
            }
        }
        rep.push(c.finish());

        let mut c = Checker::new("axioms.l1-symmetric");
        for (lm, m) in e1 {
            for (ln, nn) in e1 {
                let r = pvec_add(&self.l2_01(&self.l1(m), nn), &self.l2_01(&self.l1(nn), m));
                c.case(|| format!("({lm}, {ln})"), &r);
            }
        }
        rep.push(c.finish());

        let mut c = Checker::new("axioms.l1-of-l3");
        for t in combinations(e0.len(), 3) {
            let (x, y, z) = (&e0[t[0]].1, &e0[t[1]].1, &e0[t[2]].1);
            let rhs = self
                .l2_00(x, &self.l2_00(y, z))
                .sub(&self.l2_00(&self.l2_00(x, y), z))
                .sub(&self.l2_00(y, &self.l2_00(x, z)));
            let r = self.l1(&self.l3(x, y, z)).sub(&rhs);
            c.case(|| format!("({}, {}, {})", e0[t[0]].0, e0[t[1]].0, e0[t[2]].0), &r);
        }
        rep.push(c.finish());

        let mut c = Checker::new("axioms.l3-of-l1");
        for p in combinations(e0.len(), 2) {
            let (x, y) = (&e0[p[0]].1, &e0[p[1]].1);
            let xy = self.l2_00(x, y);
            for (lm, m) in e1 {
                let rhs = pvec_sub(
                    &pvec_sub(&self.l2_01(x, &self.l2_01(y, m)), &self.l2_01(&xy, m)),
                    &self.l2_01(y, &self.l2_01(x, m)),
                );
                let r = pvec_sub(&self.l3(x, y, &self.l1(m)), &rhs);
                c.case(|| format!("({}, {}, {lm})", e0[p[0]].0, e0[p[1]].0), &r);
            }
        }
        rep.push(c.finish());

        // The Jacobiator reuses the brackets of family pairs and triples.
        let m = e0.len();
        let mut l2_tab = std::collections::HashMap::new();
        for p in combinations(m, 2) {
            l2_tab.insert((p[0], p[1]), self.l2_00(&e0[p[0]].1, &e0[p[1]].1));
        }
        let mut l3_tab = std::collections::HashMap::new();
        for t in combinations(m, 3) {
            l3_tab.insert((t[0], t[1], t[2]), self.l3(&e0[t[0]].1, &e0[t[1]].1, &e0[t[2]].1));
        }
        let mut c = Checker::new("axioms.jacobiator");
        for q in combinations(m, 4) {
            let mut r = pvec_zero(self.n, self.a());
            for i in 0..4 {
                let rest: Vec<usize> = (0..4).filter(|&k| k != i).map(|k| q[k]).collect();
                let v = self.l2_01(&e0[q[i]].1, &l3_tab[&(rest[0], rest[1], rest[2])]);
                pvec_add_scaled(&mut r, &v, &Rat::int(if i % 2 == 0 { 1 } else { -1 }));
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).map(|k| q[k]).collect();
                    let v = self.l3(&l2_tab[&(q[i], q[j])], &e0[rest[0]].1, &e0[rest[1]].1);
                    pvec_add_scaled(&mut r, &v, &Rat::int(if (i + j) % 2 == 0 { 1 } else { -1 }));
                }
            }
            c.case(|| q.iter().map(|&i| e0[i].0.as_str()).collect::<Vec<_>>().join(", "), &r);
        }
        rep.push(c.finish());

        let mut c = Checker::new("axioms.anchor-l1");
        for (lm, m) in e1 {
            c.case(|| lm.clone(), &self.l1(m).x);
        }
        rep.push(c.finish());

        let mut c = Checker::new("axioms.anchor-bracket");
        for p in combinations(e0.len(), 2) {
            let ((la, s), (lb, t)) = (&e0[p[0]], &e0[p[1]]);
            let r = self.l2_00(s, t).x.sub(&s.x.bracket(&t.x));
            c.case(|| format!("({la}, {lb})"), &r);
        }
        rep.push(c.finish());

        let mut c = Checker::new("axioms.leibniz");
        for (ls, s) in &e0 {
            let sf = s.x.apply(f);
            for (lt, t) in &e0 {
                let lhs = self.l2_00(s, &t.mul_poly(f));
                let rhs = self.l2_00(s, t).mul_poly(f).add(&t.mul_poly(&sf));
                c.case(|| format!("({ls}, {f}*{lt})"), &lhs.sub(&rhs));
            }
            for (lm, m) in e1 {
                let lhs = self.l2_01(s, &pvec_mul_poly(m, f));
                let rhs = pvec_add(&pvec_mul_poly(&self.l2_01(s, m), f), &pvec_mul_poly(m, &sf));
                c.case(|| format!("({ls}, {f}*{lm})"), &pvec_sub(&lhs, &rhs));
            }
        }
        rep.push(c.finish());

        let mut c = Checker::new("axioms.l3-tensorial");
        for t in combinations(e0.len(), 3) {
            let (x, y, z) = (&e0[t[0]].1, &e0[t[1]].1, &e0[t[2]].1);
            let r = pvec_sub(&self.l3(&x.mul_poly(f), y, z), &pvec_mul_poly(&self.l3(x, y, z), f));
            c.case(|| format!("({f}*{}, {}, {})", e0[t[0]].0, e0[t[1]].0, e0[t[2]].0), &r);
        }
        rep.push(c.finish());
        rep
    }

    /// Change of splitting `σ' = σ - θ` for a `G`-valued 1-form `θ`, keeping `γ`.
    pub fn shift_splitting(&self, theta: &Form) -> Result<SplitLie2Algebroid, AlgebroidError> {
        let d = &self.data;
        let fb = &d.fiber;
        let (n, g, a) = (self.n, self.g(), self.a());
        if theta.nvars() != n || theta.degree() != 1 || theta.dim() != g {
            return Err(AlgebroidError::Shape { field: "theta", degree: 1, dim: g, n });
        }
        let th = |i: usize| theta.component(&[i]);
        let omega0 = d.omega0.sub(&theta.map_components(g * g, |v| ad0_matrix(fb, v)));
        let omega1 = d.omega1.sub(&theta.map_components(a * a, |v| ad1_matrix(fb, v)));
        let r_gamma = self
            .r_gamma
            .add(&self.d_nabla0(theta))
            .sub(&Form::from_fn(n, 2, g, |ix| fb.br00_p(&th(ix[0]), &th(ix[1]))));
        let r = r_gamma.sub(&d.gamma.map_values(&fb.l1));
        let (jt, kt, lt) = self.theta_compositions(theta);
        let i_gamma = self.i_gamma.sub(&jt).sub(&kt).add(&lt);
        // J'(X,Y,w) = J(X,Y,w) + K(X,θY,w) - K(Y,θX,w) - l3(θX,θY,w)
        let kmat = |i: usize, v: &PVec| -> PVec {
            // matrix of w ↦ K(∂_i, v, w)
            let kv = d.k.component(&[i]);
            let mut m = pvec_zero(n, a * g);
            for c in 0..g {
                let col = k_apply(&kv, a, g, v, &pvec_basis(n, g, c));
                for r in 0..a {
                    m[r * g + c] = col[r].clone();
                }
            }
            m
        };
        let l3mat = |u: &PVec, v: &PVec| -> PVec {
            let mut m = pvec_zero(n, a * g);
            for c in 0..g {
                let col = fb.br3_p(u, v, &pvec_basis(n, g, c));
                for r in 0..a {
                    m[r * g + c] = col[r].clone();
                }
            }
            m
        };
        let j = Form::from_fn(n, 2, a * g, |ix| {
            let (i, k) = (ix[0], ix[1]);
            let mut m = d.j.component(&[i, k]);
            pvec_add_assign(&mut m, &kmat(i, &th(k)));
            m = pvec_sub(&m, &kmat(k, &th(i)));
            pvec_sub(&m, &l3mat(&th(i), &th(k)))
        });
        // K'(X,v,w) = K(X,v,w) - l3(θX,v,w)
        let k = Form::from_fn(n, 1, a * g * g, |ix| {
            let mut m = d.k.component(&[ix[0]]);
            let t = th(ix[0]);
            for b in 0..g {
                for c in 0..g {
                    let col = fb.br3_p(&t, &pvec_basis(n, g, b), &pvec_basis(n, g, c));
                    for r in 0..a {
                        m[(r * g + b) * g + c] -= &col[r];
                    }
                }
            }
            m
        });
        let d1_new = d.gamma.d().add(&omega1.product(&d.gamma, &action(a, a)));
        let i = i_gamma.sub(&d1_new);
        SplitLie2Algebroid::new(SplitData {
            fiber: fb.clone(),
            omega0,
            omega1,
            r,
            gamma: d.gamma.clone(),
            i,
            j,
            k,
        })
    }

    /// The 3-forms `J∘θ`, `K∘θ` and `l3∘θ` for a `G`-valued 1-form `θ`:
    /// `J∘θ(X,Y,Z) = J(θX,Y,Z) + J(X,θY,Z) + J(X,Y,θZ)`,
    /// `K∘θ(X,Y,Z) = K(X,θY,θZ) + K(θX,Y,θZ) + K(θX,θY,Z)`,
    /// `l3∘θ(X,Y,Z) = l3(θX,θY,θZ)`.
    pub fn theta_compositions(&self, theta: &Form) -> (Form, Form, Form) {
        let d = &self.data;
        let (n, g, a) = (self.n, self.g(), self.a());
        let th = |i: usize| theta.component(&[i]);
        let jc = |i: usize, k: usize, u: &PVec| pmat_apply(&d.j.component(&[i, k]), a, g, u);
        let kc = |i: usize, u: &PVec, v: &PVec| k_apply(&d.k.component(&[i]), a, g, u, v);
        let jt = Form::from_fn(n, 3, a, |ix| {
            let (x, y, z) = (ix[0], ix[1], ix[2]);
            // J(θX,Y,Z) = J(Y,Z,θX); J(X,θY,Z) = -J(X,Z,θY)
            let mut r = jc(y, z, &th(x));
            r = pvec_sub(&r, &jc(x, z, &th(y)));
            pvec_add(&r, &jc(x, y, &th(z)))
        });
        let kt = Form::from_fn(n, 3, a, |ix| {
            let (x, y, z) = (ix[0], ix[1], ix[2]);
            // K(θX,Y,θZ) = -K(Y,θX,θZ); K(θX,θY,Z) = K(Z,θX,θY)
            let mut r = kc(x, &th(y), &th(z));
            r = pvec_sub(&r, &kc(y, &th(x), &th(z)));
            pvec_add(&r, &kc(z, &th(x), &th(y)))
        });
        let lt = Form::from_fn(n, 3, a, |ix| d.fiber.br3_p(&th(ix[0]), &th(ix[1]), &th(ix[2])));
        (jt, kt, lt)
    }
}

/// Split data of the algebroid determined by a strict fiber and a pair
/// `(A, B)` of a `G`-valued 1-form and an `A-1`-valued 2-form:
/// `∇ = d + l2(A, ·)`, `R = -dA - ½[A∧A]`, `γ = B`, `J(X,Y,w) = l2(w, B(X,Y))`,
/// `I = K = 0`.
pub fn from_gamma_connection(fiber: &GradedLie2, a_form: &Form, b_form: &Form) -> Result<SplitLie2Algebroid, AlgebroidError> {
    if !fiber.is_strict() {
        return Err(AlgebroidError::NotStrict);
    }
    let n = a_form.nvars();
    let (g, a) = (fiber.g, fiber.a);
    if a_form.degree() != 1 || a_form.dim() != g {
        return Err(AlgebroidError::Shape { field: "A", degree: 1, dim: g, n });
    }
    if b_form.nvars() != n || b_form.degree() != 2 || b_form.dim() != a {
        return Err(AlgebroidError::Shape { field: "B", degree: 2, dim: a, n });
    }
    let omega0 = a_form.map_components(g * g, |v| ad0_matrix(fiber, v));
    let omega1 = a_form.map_components(a * a, |v| ad1_matrix(fiber, v));
    let half_aa = a_form.product(a_form, &fiber.l2_00).scale(&Rat::new(1, 2));
    let r = a_form.d().add(&half_aa).neg();
    let j = b_form.map_components(a * g, |m| ad1_transpose_matrix(fiber, m));
    SplitLie2Algebroid::new(SplitData {
        fiber: fiber.clone(),
        omega0,
        omega1,
        r,
        gamma: b_form.clone(),
        i: Form::zero(n, 3, a),
        j,
        k: Form::zero(n, 1, a * g * g),
    })
}

/// Split data with flat connections and all forms zero: the trivial algebroid
/// `A-1 ⊕ (G ⊕ TM)` for a constant fiber.
pub fn trivial(fiber: &GradedLie2, n: usize) -> SplitLie2Algebroid {
    let (g, a) = (fiber.g, fiber.a);
    SplitLie2Algebroid::new(SplitData {
        fiber: fiber.clone(),
        omega0: Form::zero(n, 1, g * g),
        omega1: Form::zero(n, 1, a * a),
        r: Form::zero(n, 2, g),
        gamma: Form::zero(n, 2, a),
        i: Form::zero(n, 3, a),
        j: Form::zero(n, 2, a * g),
        k: Form::zero(n, 1, a * g * g),
    })
    .expect("zero data has the right shape")
}
