//! The strict Lie 3-algebroid `DER(G) = G-1 ⊕ (Der^-1 ⊕ G0) ⊕ Der^0` of a
//! graded bundle of Lie 2-algebras over a chart, and the morphism
//! `(F1, F2, F3)` from `TM` into it given by a split transitive Lie 2-algebroid.
//!
//! Degree conventions: `[x, y] = -(-1)^{|x||y|} [y, x]`,
//! `[x, [y, z]] = [[x, y], z] + (-1)^{|x||y|} [y, [x, z]]` and
//! `d[x, y] = [dx, y] + (-1)^{|x|} [x, dy]`.

use crate::algebroid::{ad0_matrix, ad1_matrix, ad1_transpose_matrix, k_apply, Family, SplitLie2Algebroid};
use crate::exterior::{combinations, VectorField};
use crate::gla::GradedLie2;
use crate::linalg::{
    pmat_apply, pmat_mul, pvec_add, pvec_add_scaled, pvec_basis, pvec_is_zero, pvec_mul_poly, pvec_sub,
    pvec_zero, PVec,
};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::report::{Checker, Report, Residual};

/// A degree-0 derivation `(d0, d1, l)`: `d0 = X + M0` on `G0`,
/// `d1 = X + M1` on `G-1` (shared symbol `X`), and `l ∈ Hom(∧²G0, G-1)`
/// stored as `a*g*g` with index `(r*g + b)*g + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation0 {
    pub x: VectorField,
    pub m0: PVec,
    pub m1: PVec,
    pub l: PVec,
}

/// An element of `DER(G)` of degree 0, -1 or -2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerElement {
    D0(Derivation0),
    /// `φ + u` with `φ ∈ Hom(G0, G-1)` (`a x g`) and `u ∈ G0`.
    D1 { phi: PVec, u: PVec },
    D2(PVec),
}

/// Dimensions of the fiber and chart.
#[derive(Clone, Copy, Debug)]
struct Dims {
    n: usize,
    g: usize,
    a: usize,
}

impl Derivation0 {
    pub fn zero(n: usize, g: usize, a: usize) -> Derivation0 {
        Derivation0 {
            x: VectorField::zero(n),
            m0: pvec_zero(n, g * g),
            m1: pvec_zero(n, a * a),
            l: pvec_zero(n, a * g * g),
        }
    }

    /// `(X, X, 0)` acting componentwise.
    pub fn vector_field(x: VectorField, g: usize, a: usize) -> Derivation0 {
        let n = x.nvars();
        Derivation0 { x, ..Derivation0::zero(n, g, a) }
    }

    /// `(ad0_u, ad1_u, l3(u, ·, ·))`.
    pub fn adjoint(fiber: &GradedLie2, u: &PVec) -> Derivation0 {
        let n = u.first().map_or(0, Poly::nvars);
        let (g, a) = (fiber.g, fiber.a);
        let mut l = pvec_zero(n, a * g * g);
        for b in 0..g {
            for c in 0..g {
                let v = fiber.br3_p(u, &pvec_basis(n, g, b), &pvec_basis(n, g, c));
                for r in 0..a {
                    l[(r * g + b) * g + c] = v[r].clone();
                }
            }
        }
        Derivation0 { x: VectorField::zero(n), m0: ad0_matrix(fiber, u), m1: ad1_matrix(fiber, u), l }
    }

    fn dims(&self, fiber: &GradedLie2) -> Dims {
        Dims { n: self.x.nvars(), g: fiber.g, a: fiber.a }
    }

    pub fn apply0(&self, u: &PVec) -> PVec {
        let g = u.len();
        pvec_add(&self.x.apply_vec(u), &pmat_apply(&self.m0, g, g, u))
    }

    pub fn apply1(&self, m: &PVec) -> PVec {
        let a = m.len();
        pvec_add(&self.x.apply_vec(m), &pmat_apply(&self.m1, a, a, m))
    }

    pub fn l_apply(&self, fiber: &GradedLie2, u: &PVec, v: &PVec) -> PVec {
        k_apply(&self.l, fiber.a, fiber.g, u, v)
    }

    /// Matrix (`a x g`) of `l(u, ·)`.
    fn l_partial(&self, fiber: &GradedLie2, u: &PVec) -> PVec {
        let d = self.dims(fiber);
        columns(d.n, d.a, d.g, |c| self.l_apply(fiber, u, &pvec_basis(d.n, d.g, c)))
    }

    fn add(&self, o: &Derivation0) -> Derivation0 {
        Derivation0 { x: self.x.add(&o.x), m0: pvec_add(&self.m0, &o.m0), m1: pvec_add(&self.m1, &o.m1), l: pvec_add(&self.l, &o.l) }
    }

    fn scale(&self, c: &Rat) -> Derivation0 {
        let s = |v: &PVec| v.iter().map(|p| p.scale(c)).collect::<PVec>();
        Derivation0 { x: self.x.scale(c), m0: s(&self.m0), m1: s(&self.m1), l: s(&self.l) }
    }

    fn mul_poly(&self, f: &Poly) -> Derivation0 {
        Derivation0 {
            x: self.x.mul_poly(f),
            m0: pvec_mul_poly(&self.m0, f),
            m1: pvec_mul_poly(&self.m1, f),
            l: pvec_mul_poly(&self.l, f),
        }
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero() && pvec_is_zero(&self.m0) && pvec_is_zero(&self.m1) && pvec_is_zero(&self.l)
    }
}

/// Matrix whose column `c` is `col(c)`.
fn columns(n: usize, rows: usize, cols: usize, col: impl Fn(usize) -> PVec) -> PVec {
    let mut m = pvec_zero(n, rows * cols);
    for c in 0..cols {
        let v = col(c);
        for r in 0..rows {
            m[r * cols + c] = v[r].clone();
        }
    }
    m
}

/// Array `l(e_b, e_c)` in `a*g*g` layout.
fn l_table(n: usize, g: usize, a: usize, f: impl Fn(&PVec, &PVec) -> PVec) -> PVec {
    let mut l = pvec_zero(n, a * g * g);
    for b in 0..g {
        for c in 0..g {
            let v = f(&pvec_basis(n, g, b), &pvec_basis(n, g, c));
            for r in 0..a {
                l[(r * g + b) * g + c] = v[r].clone();
            }
        }
    }
    l
}

impl DerElement {
    pub fn degree(&self) -> i32 {
        match self {
            DerElement::D0(_) => 0,
            DerElement::D1 { .. } => -1,
            DerElement::D2(_) => -2,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            DerElement::D0(d) => d.is_zero(),
            DerElement::D1 { phi, u } => pvec_is_zero(phi) && pvec_is_zero(u),
            DerElement::D2(m) => pvec_is_zero(m),
        }
    }

    /// Sum of elements of equal degree.
    pub fn add(&self, o: &DerElement) -> DerElement {
        match (self, o) {
            (DerElement::D0(a), DerElement::D0(b)) => DerElement::D0(a.add(b)),
            (DerElement::D1 { phi, u }, DerElement::D1 { phi: p2, u: u2 }) => {
                DerElement::D1 { phi: pvec_add(phi, p2), u: pvec_add(u, u2) }
            }
            (DerElement::D2(a), DerElement::D2(b)) => DerElement::D2(pvec_add(a, b)),
            _ => panic!("adding DER elements of different degrees"),
        }
    }

    pub fn scale(&self, c: &Rat) -> DerElement {
        let s = |v: &PVec| v.iter().map(|p| p.scale(c)).collect::<PVec>();
        match self {
            DerElement::D0(d) => DerElement::D0(d.scale(c)),
            DerElement::D1 { phi, u } => DerElement::D1 { phi: s(phi), u: s(u) },
            DerElement::D2(m) => DerElement::D2(s(m)),
        }
    }

    pub fn sub(&self, o: &DerElement) -> DerElement {
        self.add(&o.scale(&Rat::int(-1)))
    }

    pub fn mul_poly(&self, f: &Poly) -> DerElement {
        match self {
            DerElement::D0(d) => DerElement::D0(d.mul_poly(f)),
            DerElement::D1 { phi, u } => DerElement::D1 { phi: pvec_mul_poly(phi, f), u: pvec_mul_poly(u, f) },
            DerElement::D2(m) => DerElement::D2(pvec_mul_poly(m, f)),
        }
    }

    /// The anchor `j`, nonzero only in degree 0.
    pub fn anchor(&self) -> Option<&VectorField> {
        match self {
            DerElement::D0(d) => Some(&d.x),
            _ => None,
        }
    }
}

impl Residual for Derivation0 {
    fn residual(&self) -> Option<String> {
        if self.is_zero() {
            return None;
        }
        let show = |v: &PVec| v.residual().unwrap_or_else(|| "0".into());
        Some(format!("symbol {}, d0 {}, d1 {}, l {}", self.x, show(&self.m0), show(&self.m1), show(&self.l)))
    }
}

impl Residual for DerElement {
    fn residual(&self) -> Option<String> {
        match self {
            DerElement::D0(d) => d.residual(),
            DerElement::D1 { phi, u } => {
                if self.is_zero() {
                    return None;
                }
                let show = |v: &PVec| v.residual().unwrap_or_else(|| "0".into());
                Some(format!("phi {}, u {}", show(phi), show(u)))
            }
            DerElement::D2(m) => m.residual(),
        }
    }
}

/// `δ(φ) = (l1∘φ, φ∘l1, l_δφ)` with
/// `l_δφ(u, v) = φ(l2(u, v)) - l2(φ(u), v) - l2(u, φ(v))`.
pub fn delta(fiber: &GradedLie2, phi: &PVec) -> Derivation0 {
    let n = phi.first().map_or(0, Poly::nvars);
    let (g, a) = (fiber.g, fiber.a);
    let l1 = fiber.l1.to_poly(n);
    let l = l_table(n, g, a, |u, v| {
        let mut r = pmat_apply(phi, a, g, &fiber.br00_p(u, v));
        // l2(φu, v) = -l2(v, φu)
        r = pvec_add(&r, &fiber.br01_p(v, &pmat_apply(phi, a, g, u)));
        pvec_sub(&r, &fiber.br01_p(u, &pmat_apply(phi, a, g, v)))
    });
    Derivation0 { x: VectorField::zero(n), m0: pmat_mul(&l1, phi, g, a, g), m1: pmat_mul(phi, &l1, a, g, a), l }
}

/// Commutator bracket of degree-0 derivations.
pub fn der_commutator(fiber: &GradedLie2, d: &Derivation0, t: &Derivation0) -> Derivation0 {
    let Dims { n, g, a } = d.dims(fiber);
    let comm = |m: &PVec, nn: &PVec, k: usize| {
        let mut r = pvec_sub(&d.x.apply_vec(nn), &t.x.apply_vec(m));
        r = pvec_add(&r, &pmat_mul(m, nn, k, k, k));
        pvec_sub(&r, &pmat_mul(nn, m, k, k, k))
    };
    let m0 = comm(&d.m0, &t.m0, g);
    let m1 = comm(&d.m1, &t.m1, a);
    // l_[d,t](u,v) = d1 l_t(u,v) - l_t(d0 u, v) - l_t(u, d0 v) + l_d(t0 u, v) + l_d(u, t0 v) - t1 l_d(u,v);
    // the expression is tensorial, so constant basis vectors suffice.
    let l = l_table(n, g, a, |u, v| {
        let mut r = d.apply1(&t.l_apply(fiber, u, v));
        r = pvec_sub(&r, &t.l_apply(fiber, &d.apply0(u), v));
        r = pvec_sub(&r, &t.l_apply(fiber, u, &d.apply0(v)));
        r = pvec_add(&r, &d.l_apply(fiber, &t.apply0(u), v));
        r = pvec_add(&r, &d.l_apply(fiber, u, &t.apply0(v)));
        pvec_sub(&r, &t.apply1(&d.l_apply(fiber, u, v)))
    });
    Derivation0 { x: d.x.bracket(&t.x), m0, m1, l }
}

/// `[d, φ] = d1∘φ - φ∘d0`, a bundle map `G0 -> G-1`.
fn der_on_phi(fiber: &GradedLie2, d: &Derivation0, phi: &PVec) -> PVec {
    let Dims { g, a, .. } = d.dims(fiber);
    let mut r = d.x.apply_vec(phi);
    r = pvec_add(&r, &pmat_mul(&d.m1, phi, a, a, g));
    pvec_sub(&r, &pmat_mul(phi, &d.m0, a, g, g))
}

/// The differential of `DER(G)`; `None` for degree-0 input.
pub fn der_d(fiber: &GradedLie2, x: &DerElement) -> Option<DerElement> {
    match x {
        DerElement::D0(_) => None,
        DerElement::D1 { phi, u } => Some(DerElement::D0(delta(fiber, phi).add(&Derivation0::adjoint(fiber, u)))),
        // d(m) = -l2(m, ·) + l1(m), and -l2(m, u) = l2(u, m)
        DerElement::D2(m) => Some(DerElement::D1 { phi: ad1_transpose_matrix(fiber, m), u: fiber.d_p(m) }),
    }
}

/// The bracket of `DER(G)`; `None` when the degree sum is below -2.
pub fn der_bracket(fiber: &GradedLie2, x: &DerElement, y: &DerElement) -> Option<DerElement> {
    use DerElement::*;
    match (x, y) {
        (D0(d), D0(t)) => Some(D0(der_commutator(fiber, d, t))),
        (D0(d), D1 { phi, u }) => {
            let p = pvec_add(&der_on_phi(fiber, d, phi), &d.l_partial(fiber, u));
            Some(D1 { phi: p, u: d.apply0(u) })
        }
        (D0(d), D2(m)) => Some(D2(d.apply1(m))),
        (D1 { .. }, D0(_)) | (D2(_), D0(_)) => der_bracket(fiber, y, x).map(|v| v.scale(&Rat::int(-1))),
        (D1 { phi, u }, D1 { phi: psi, u: v }) => {
            let (g, a) = (fiber.g, fiber.a);
            Some(D2(pvec_add(&pmat_apply(phi, a, g, v), &pmat_apply(psi, a, g, u))))
        }
        _ => None,
    }
}

/// The derivation axioms of `(d0, d1, l)` on fiber sections from `fam`.
pub fn check_derivation(fiber: &GradedLie2, d: &Derivation0, gs: &[(String, PVec)], as_: &[(String, PVec)]) -> Report {
    let mut rep = Report::new();
    let mut c = Checker::new("derivation.l1");
    for (lm, m) in as_ {
        c.case(|| lm.clone(), &pvec_sub(&d.apply0(&fiber.d_p(m)), &fiber.d_p(&d.apply1(m))));
    }
    rep.push(c.finish());

    let mut c = Checker::new("derivation.l2");
    for p in combinations(gs.len(), 2) {
        let ((lu, u), (lv, v)) = (&gs[p[0]], &gs[p[1]]);
        let mut r = d.apply0(&fiber.br00_p(u, v));
        r = pvec_sub(&r, &fiber.br00_p(&d.apply0(u), v));
        r = pvec_sub(&r, &fiber.br00_p(u, &d.apply0(v)));
        r = pvec_sub(&r, &fiber.d_p(&d.l_apply(fiber, u, v)));
        c.case(|| format!("({lu}, {lv})"), &r);
    }
    rep.push(c.finish());

    let mut c = Checker::new("derivation.l2-mixed");
    for (lu, u) in gs {
        for (lm, m) in as_ {
            let mut r = d.apply1(&fiber.br01_p(u, m));
            r = pvec_sub(&r, &fiber.br01_p(&d.apply0(u), m));
            r = pvec_sub(&r, &fiber.br01_p(u, &d.apply1(m)));
            r = pvec_sub(&r, &d.l_apply(fiber, u, &fiber.d_p(m)));
            c.case(|| format!("({lu}, {lm})"), &r);
        }
    }
    rep.push(c.finish());

    let mut c = Checker::new("derivation.l3");
    for t in combinations(gs.len(), 3) {
        let ((lu, u), (lv, v), (lw, w)) = (&gs[t[0]], &gs[t[1]], &gs[t[2]]);
        let l = |x: &PVec, y: &PVec| d.l_apply(fiber, x, y);
        let mut lhs = l(u, &fiber.br00_p(v, w));
        lhs = pvec_add(&lhs, &fiber.br01_p(u, &l(v, w)));
        lhs = pvec_add(&lhs, &fiber.br3_p(&d.apply0(u), v, w));
        lhs = pvec_add(&lhs, &fiber.br3_p(u, &d.apply0(v), w));
        lhs = pvec_add(&lhs, &fiber.br3_p(u, v, &d.apply0(w)));
        let mut rhs = d.apply1(&fiber.br3_p(u, v, w));
        rhs = pvec_add(&rhs, &l(&fiber.br00_p(u, v), w));
        rhs = pvec_add(&rhs, &l(v, &fiber.br00_p(u, w)));
        // l2(l(u,v), w) = -l2(w, l(u,v))
        rhs = pvec_sub(&rhs, &fiber.br01_p(w, &l(u, v)));
        rhs = pvec_add(&rhs, &fiber.br01_p(v, &l(u, w)));
        c.case(|| format!("({lu}, {lv}, {lw})"), &pvec_sub(&lhs, &rhs));
    }
    rep.push(c.finish());
    rep
}

/// Generating family of `DER(G)` on a chart: vector-field and adjoint
/// derivations, elementary and `x1`-scaled maps `φ`, and basis and
/// `x1`-scaled sections.
pub fn der_family(fiber: &GradedLie2, n: usize) -> Vec<(String, DerElement)> {
    let (g, a) = (fiber.g, fiber.a);
    let fam = Family::new(n, g, a);
    let x1 = if n > 0 { Poly::var(n, 0) } else { Poly::one(0) };
    let mut out = Vec::new();
    for (l, x) in &fam.fields {
        out.push((l.clone(), DerElement::D0(Derivation0::vector_field(x.clone(), g, a))));
    }
    for (l, u) in fam.g.iter().filter(|(l, _)| !l.starts_with("x2")) {
        out.push((format!("ad({l})"), DerElement::D0(Derivation0::adjoint(fiber, u))));
    }
    for r in 0..a {
        for c in 0..g {
            let e = pvec_basis(n, a * g, r * g + c);
            out.push((format!("E{}{}", r + 1, c + 1), DerElement::D1 { phi: e.clone(), u: pvec_zero(n, g) }));
            out.push((
                format!("x1*E{}{}", r + 1, c + 1),
                DerElement::D1 { phi: pvec_mul_poly(&e, &x1), u: pvec_zero(n, g) },
            ));
        }
    }
    for (l, u) in fam.g.iter().filter(|(l, _)| !l.starts_with("x2")) {
        out.push((l.clone(), DerElement::D1 { phi: pvec_zero(n, a * g), u: u.clone() }));
    }
    for (l, m) in fam.a.iter().filter(|(l, _)| !l.starts_with("x2")) {
        out.push((l.clone(), DerElement::D2(m.clone())));
    }
    out
}

fn sign(e: i32) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        Rat::int(-1)
    }
}

/// Strict Lie 3-algebroid axioms of `DER(G)` on a generating family over `R^n`.
pub fn check_der_lie3(fiber: &GradedLie2, n: usize) -> Report {
    let fam = der_family(fiber, n);
    let small = Family::new(n, fiber.g, fiber.a);
    let f = if n > 0 { Poly::var(n, 0) } else { Poly::one(0) };
    let br = |x: &DerElement, y: &DerElement| der_bracket(fiber, x, y);
    let mut rep = Report::new();

    let mut c = Checker::new("der.closure");
    for (lx, x) in &fam {
        let derived = match x {
            DerElement::D1 { .. } => der_d(fiber, x),
            _ => None,
        };
        if let Some(DerElement::D0(d)) = derived {
            for ch in check_derivation(fiber, &d, &small.g, &small.a).checks {
                if let (Some(w), Some(r)) = (ch.witness, ch.residual) {
                    c.fail(format!("d({lx}): {} at {w}", ch.name), r);
                } else {
                    c.case(String::new, &Rat::zero());
                }
            }
        }
    }
    for p in combinations(fam.len(), 2) {
        let ((lx, x), (ly, y)) = (&fam[p[0]], &fam[p[1]]);
        if let (DerElement::D0(d), DerElement::D0(t)) = (x, y) {
            let b = der_commutator(fiber, d, t);
            for ch in check_derivation(fiber, &b, &small.g, &small.a).checks {
                if let (Some(w), Some(r)) = (ch.witness, ch.residual) {
                    c.fail(format!("[{lx}, {ly}]: {} at {w}", ch.name), r);
                } else {
                    c.case(String::new, &Rat::zero());
                }
            }
        }
    }
    rep.push(c.finish());

    let mut c = Checker::new("der.d-squared");
    for (lx, x) in &fam {
        if let Some(dx) = der_d(fiber, x) {
            if let Some(ddx) = der_d(fiber, &dx) {
                c.case(|| lx.clone(), &ddx);
            }
        }
    }
    rep.push(c.finish());

    let mut c = Checker::new("der.skew");
    let mut cd = Checker::new("der.d-derivation");
    for (i, (lx, x)) in fam.iter().enumerate() {
        for (ly, y) in &fam[i..] {
            if let (Some(a), Some(b)) = (br(x, y), br(y, x)) {
                let s = sign(x.degree() * y.degree());
                c.case(|| format!("({lx}, {ly})"), &a.add(&b.scale(&s)));
            }
        }
        for (ly, y) in &fam {
            // d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]
            let Some(xy) = br(x, y) else { continue };
            let lhs = der_d(fiber, &xy);
            let t1 = der_d(fiber, x).and_then(|dx| br(&dx, y));
            let t2 = der_d(fiber, y).and_then(|dy| br(x, &dy)).map(|v| v.scale(&sign(x.degree())));
            let rhs = match (t1, t2) {
                (Some(a), Some(b)) => Some(a.add(&b)),
                (a, b) => a.or(b),
            };
            match (lhs, rhs) {
                (Some(l), Some(r)) => cd.case(|| format!("({lx}, {ly})"), &l.sub(&r)),
                (Some(l), None) => cd.case(|| format!("({lx}, {ly})"), &l),
                (None, Some(r)) => cd.case(|| format!("({lx}, {ly})"), &r),
                (None, None) => {}
            }
        }
    }
    rep.push(c.finish());
    rep.push(cd.finish());

    let mut c = Checker::new("der.jacobi");
    for i in 0..fam.len() {
        for j in i..fam.len() {
            for k in j..fam.len() {
                let (x, y, z) = (&fam[i].1, &fam[j].1, &fam[k].1);
                if x.degree() + y.degree() + z.degree() < -2 {
                    continue;
                }
                for (x, y, z) in [(x, y, z), (y, z, x), (z, x, y)] {
                    // [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]
                    let t1 = br(y, z).and_then(|v| br(x, &v));
                    let t2 = br(x, y).and_then(|v| br(&v, z));
                    let t3 = br(x, z).and_then(|v| br(y, &v)).map(|v| v.scale(&sign(x.degree() * y.degree())));
                    let mut acc: Option<DerElement> = t1;
                    for t in [t2, t3].into_iter().flatten() {
                        let t = t.scale(&Rat::int(-1));
                        acc = Some(match acc {
                            None => t,
                            Some(a) => a.add(&t),
                        });
                    }
                    if let Some(r) = acc {
                        c.case(|| format!("({}, {}, {})", fam[i].0, fam[j].0, fam[k].0), &r);
                    }
                }
            }
        }
    }
    rep.push(c.finish());

    let mut c = Checker::new("der.leibniz");
    for (lx, x) in &fam {
        let xf = x.anchor().map(|v| v.apply(&f));
        for (ly, y) in &fam {
            let Some(lhs) = br(x, &y.mul_poly(&f)) else { continue };
            let mut rhs = br(x, y).expect("same degree sum").mul_poly(&f);
            if let Some(xf) = &xf {
                rhs = rhs.add(&y.mul_poly(xf));
            }
            c.case(|| format!("({lx}, {f}*{ly})"), &lhs.sub(&rhs));
        }
        if let Some(dx) = der_d(fiber, x) {
            let r = der_d(fiber, &x.mul_poly(&f)).unwrap().sub(&dx.mul_poly(&f));
            c.case(|| format!("d({f}*{lx})"), &r);
        }
    }
    rep.push(c.finish());

    let mut c = Checker::new("der.anchor");
    for (i, (lx, x)) in fam.iter().enumerate() {
        if let Some(dx) = der_d(fiber, x) {
            if let Some(v) = dx.anchor() {
                c.case(|| format!("j(d({lx}))"), v);
            }
        }
        for (ly, y) in &fam[i..] {
            if let (Some(a), Some(b)) = (x.anchor(), y.anchor()) {
                let xy = br(x, y).unwrap();
                let r = xy.anchor().unwrap().sub(&a.bracket(b));
                c.case(|| format!("j[{lx}, {ly}]"), &r);
            }
        }
    }
    rep.push(c.finish());
    rep
}

/// `F1(X) = (∇0_X, ∇1_X, K(X, ·, ·))`.
pub fn f1(q: &SplitLie2Algebroid, x: &VectorField) -> Derivation0 {
    let d = q.data();
    Derivation0 { x: x.clone(), m0: d.omega0.eval(&[x]), m1: d.omega1.eval(&[x]), l: d.k.eval(&[x]) }
}

/// `F2(X, Y) = J(X, Y, ·) + Rγ(X, Y)`.
pub fn f2(q: &SplitLie2Algebroid, x: &VectorField, y: &VectorField) -> DerElement {
    DerElement::D1 { phi: q.data().j.eval(&[x, y]), u: q.r_gamma().eval(&[x, y]) }
}

/// `F3(X, Y, Z) = Iγ(X, Y, Z)`.
pub fn f3(q: &SplitLie2Algebroid, x: &VectorField, y: &VectorField, z: &VectorField) -> DerElement {
    DerElement::D2(q.i_gamma().eval(&[x, y, z]))
}

/// The morphism equations for `(F1, F2, F3)` from `TM` to `DER(G)` on the
/// vector fields of `fam`, together with `F1(X)` being a derivation and
/// `j F1(X) = X`.
pub fn check_lie3_morphism(q: &SplitLie2Algebroid, fam: &Family) -> Report {
    let fb = q.fiber();
    let vf = &fam.fields;
    let br = |x: &DerElement, y: &DerElement| der_bracket(fb, x, y).expect("degrees in range");
    let d = |x: &DerElement| der_d(fb, x).expect("negative degree");
    let mut rep = Report::new();

    let f1s: Vec<DerElement> = vf.iter().map(|(_, x)| DerElement::D0(f1(q, x))).collect();
    let mut c = Checker::new("morphism.f1-derivation");
    for ((lx, _), fx) in vf.iter().zip(&f1s) {
        let DerElement::D0(der) = fx else { unreachable!() };
        for ch in check_derivation(fb, der, &fam.g, &fam.a).checks {
            if let (Some(w), Some(r)) = (ch.witness, ch.residual) {
                c.fail(format!("F1({lx}): {} at {w}", ch.name), r);
            } else {
                c.case(String::new, &Rat::zero());
            }
        }
    }
    rep.push(c.finish());

    let mut c = Checker::new("morphism.anchor");
    for ((lx, x), fx) in vf.iter().zip(&f1s) {
        c.case(|| lx.clone(), &fx.anchor().unwrap().sub(x));
    }
    rep.push(c.finish());

    // F1([X,Y]) - [F1 X, F1 Y] = d F2(X,Y)
    let mut c = Checker::new("morphism.degree-2");
    for p in combinations(vf.len(), 2) {
        let (x, y) = (&vf[p[0]].1, &vf[p[1]].1);
        let lhs = DerElement::D0(f1(q, &x.bracket(y))).sub(&br(&f1s[p[0]], &f1s[p[1]]));
        let r = lhs.sub(&d(&f2(q, x, y)));
        c.case(|| format!("({}, {})", vf[p[0]].0, vf[p[1]].0), &r);
    }
    rep.push(c.finish());

    // [F1 X, F2(Y,Z)] - F2([X,Y], Z) + c.p. = d F3(X,Y,Z)
    let mut c = Checker::new("morphism.degree-3");
    for t in combinations(vf.len(), 3) {
        let idx = [t[0], t[1], t[2]];
        let mut acc: Option<DerElement> = None;
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let (x, y, z) = (&vf[idx[i]].1, &vf[idx[j]].1, &vf[idx[k]].1);
            let term = br(&f1s[idx[i]], &f2(q, y, z)).sub(&f2(q, &x.bracket(y), z));
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        let (x, y, z) = (&vf[t[0]].1, &vf[t[1]].1, &vf[t[2]].1);
        let r = acc.unwrap().sub(&d(&f3(q, x, y, z)));
        c.case(|| format!("({}, {}, {})", vf[t[0]].0, vf[t[1]].0, vf[t[2]].0), &r);
    }
    rep.push(c.finish());

    // Σ(-1)^{i+1}[F1 X_i, F3(..)] + Σ_{i<j}(-1)^{i+j}(F3([X_i,X_j],..) - ½[F2(X_i,X_j), F2(X_k,X_l)]) = 0
    let mut c = Checker::new("morphism.degree-4");
    let half = Rat::new(1, 2);
    for qd in combinations(vf.len(), 4) {
        let xs: Vec<&VectorField> = qd.iter().map(|&i| &vf[i].1).collect();
        let mut r = pvec_zero(q.nvars(), q.a());
        let add = |r: &mut PVec, e: DerElement, s: &Rat| {
            let DerElement::D2(m) = e else { unreachable!() };
            pvec_add_scaled(r, &m, s);
        };
        for i in 0..4 {
            let rest: Vec<&VectorField> = (0..4).filter(|&k| k != i).map(|k| xs[k]).collect();
            add(&mut r, br(&f1s[qd[i]], &f3(q, rest[0], rest[1], rest[2])), &sign(i as i32));
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
                let s = sign((i + j) as i32);
                add(&mut r, f3(q, &xs[i].bracket(xs[j]), xs[rest[0]], xs[rest[1]]), &s);
                let ff = br(&f2(q, xs[i], xs[j]), &f2(q, xs[rest[0]], xs[rest[1]]));
                add(&mut r, ff, &(-&(&s * &half)));
            }
        }
        c.case(|| qd.iter().map(|&i| vf[i].0.as_str()).collect::<Vec<_>>().join(", "), &r);
    }
    rep.push(c.finish());
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{from_gamma_connection, trivial, SplitLie2Algebroid};
    use crate::gla::{antisymmetric, LieAlgebra, QuadraticLie2};
    use crate::samples::{quadratic_so3, semistrict_gl2, Sampler};

    #[test]
    fn adjoint_derivation_passes() {
        let fb = semistrict_gl2().lie;
        let fam = Family::new(2, 4, 4);
        let d = Derivation0::adjoint(&fb, &fam.g[1].1);
        assert!(check_derivation(&fb, &d, &fam.g, &fam.a).passed());
    }

    #[test]
    fn bare_adjoint_fails_l1_axiom() {
        let fb = quadratic_so3().lie;
        let fam = Family::new(2, 3, 3);
        let mut d = Derivation0::adjoint(&fb, &pvec_basis(2, 3, 0));
        d.m1 = pvec_zero(2, 9);
        d.l = pvec_zero(2, 27);
        let r = check_derivation(&fb, &d, &fam.g, &fam.a);
        assert!(!r.get("derivation.l1").unwrap().passed());
    }

    #[test]
    fn der_is_lie3_on_standard_fibers() {
        for fb in [quadratic_so3().lie, GradedLie2::zero(2, 2), semistrict_gl2().lie] {
            let r = check_der_lie3(&fb, 2);
            assert!(r.passed(), "{:?}", r.failing().collect::<Vec<_>>());
        }
    }

    #[test]
    fn corrupted_fiber_breaks_jacobi() {
        let one = Rat::one();
        let g = LieAlgebra::new(antisymmetric(3, &[(0, 1, 0, one.clone()), (0, 2, 2, one.clone()), (1, 2, 0, one)]));
        let fb = QuadraticLie2::from_quadratic_liealg(&g, &crate::linalg::RatMatrix::identity(3));
        // the form is not invariant, so build the fiber directly
        assert!(fb.is_err());
        let mut lie = quadratic_so3().lie;
        lie.l2_00 = g.bracket.clone();
        let r = check_der_lie3(&lie, 1);
        // the bracket alone is a semidirect operator bracket; the corruption
        // shows up where d meets the bracket
        assert!(!r.get("der.d-derivation").unwrap().passed());
        assert!(!r.get("der.d-squared").unwrap().passed());
        assert!(!r.get("der.closure").unwrap().passed());
    }

    #[test]
    fn morphism_matches_structure_equations() {
        let fb = quadratic_so3().lie;
        let mut s = Sampler::new(11);
        let a = s.form(4, 1, 3, 0.6);
        let b = s.form(4, 2, 3, 0.5);
        let q = from_gamma_connection(&fb, &a, &b).unwrap();
        let fam = Family::new(4, 3, 3);
        let r = check_lie3_morphism(&q, &fam);
        assert!(r.passed(), "{:?}", r.failing().collect::<Vec<_>>());

        let theta = s.form(4, 1, 4, 0.7);
        let q2 = trivial(&semistrict_gl2().lie, 4).shift_splitting(&theta).unwrap();
        let r = check_lie3_morphism(&q2, &Family::new(4, 4, 4));
        assert!(r.passed(), "{:?}", r.failing().collect::<Vec<_>>());

        let mut d = q.into_data();
        d.i = d.i.add(&crate::exterior::Form::from_components(4, 3, 3, [(vec![0, 1, 2], pvec_mul_poly(&pvec_basis(4, 3, 0), &Poly::var(4, 3)))]));
        let bad = SplitLie2Algebroid::new(d).unwrap();
        let r = check_lie3_morphism(&bad, &fam);
        assert!(!r.get("morphism.degree-4").unwrap().passed());
    }
}
