//! Fiber algebra: Lie algebras, crossed modules and (semistrict) Lie 2-algebras
//! concentrated in degrees 0 and -1, possibly with an invariant pairing.

use crate::linalg::{Bilinear, PVec, RatMatrix, Trilinear};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::report::{Checker, Report};

/// Errors raised while building fiber algebras.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlaError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("bilinear form is not invariant: residual {0}")]
    NotInvariant(String),
    #[error("the trinary bracket is nonzero, so there is no crossed module")]
    NotStrict,
}

fn basis(d: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); d];
    v[i] = Rat::one();
    v
}

fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

/// Structure constants of an antisymmetric bracket, from `(i, j, k, c)`
/// meaning `[e_i, e_j] += c e_k` and `[e_j, e_i] -= c e_k` (0-based).
pub fn antisymmetric(d: usize, entries: &[(usize, usize, usize, Rat)]) -> Bilinear {
    let mut all = Vec::new();
    for (i, j, k, c) in entries {
        all.push((*i, *j, *k, c.clone()));
        all.push((*j, *i, *k, -c));
    }
    Bilinear::from_entries(d, d, d, all)
}

/// A finite-dimensional Lie algebra in a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub dim: usize,
    pub bracket: Bilinear,
}

impl LieAlgebra {
    pub fn new(bracket: Bilinear) -> LieAlgebra {
        assert!(bracket.d1 == bracket.d2 && bracket.d2 == bracket.d3, "bracket must be g x g -> g");
        LieAlgebra { dim: bracket.d1, bracket }
    }

    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra::new(Bilinear::zero(dim, dim, dim))
    }

    pub fn br(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        self.bracket.apply_rat(u, v)
    }

    /// Skew symmetry and the Jacobi identity on all basis triples.
    pub fn check_jacobi(&self) -> Report {
        let d = self.dim;
        let mut skew = Checker::new("liealg.skew");
        let mut jac = Checker::new("liealg.jacobi");
        for i in 0..d {
            for j in 0..d {
                let (ei, ej) = (basis(d, i), basis(d, j));
                skew.case(|| format!("(e{}, e{})", i + 1, j + 1), &add(&self.br(&ei, &ej), &self.br(&ej, &ei)));
                for k in 0..d {
                    let ek = basis(d, k);
                    let a = self.br(&ei, &self.br(&ej, &ek));
                    let b = self.br(&ej, &self.br(&ek, &ei));
                    let c = self.br(&ek, &self.br(&ei, &ej));
                    jac.case(|| format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1), &add(&add(&a, &b), &c));
                }
            }
        }
        Report { checks: vec![skew.finish(), jac.finish()] }
    }
}

/// A crossed module of Lie algebras `ψ: h1 -> h0` with action `φ` of `h0` on `h1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModuleLie {
    pub h1: LieAlgebra,
    pub h0: LieAlgebra,
    /// `h0.dim x h1.dim`.
    pub psi: RatMatrix,
    /// `φ_u(m)`, a bilinear map `h0 x h1 -> h1`.
    pub action: Bilinear,
}

impl CrossedModuleLie {
    pub fn new(h1: LieAlgebra, h0: LieAlgebra, psi: RatMatrix, action: Bilinear) -> Result<CrossedModuleLie, GlaError> {
        if psi.rows != h0.dim || psi.cols != h1.dim {
            return Err(GlaError::DimensionMismatch(format!(
                "psi is {}x{}, expected {}x{}",
                psi.rows, psi.cols, h0.dim, h1.dim
            )));
        }
        if action.d1 != h0.dim || action.d2 != h1.dim || action.d3 != h1.dim {
            return Err(GlaError::DimensionMismatch("action must be h0 x h1 -> h1".into()));
        }
        Ok(CrossedModuleLie { h1, h0, psi, action })
    }

    /// The identity crossed module `g -> g` with the adjoint action.
    pub fn identity(g: &LieAlgebra) -> CrossedModuleLie {
        CrossedModuleLie {
            h1: g.clone(),
            h0: g.clone(),
            psi: RatMatrix::identity(g.dim),
            action: g.bracket.clone(),
        }
    }

    pub fn check_crossed_module(&self) -> Report {
        let (a, g) = (self.h1.dim, self.h0.dim);
        let mut r = Report::new();
        r.extend(self.h1.check_jacobi().scoped("h1"));
        r.extend(self.h0.check_jacobi().scoped("h0"));
        let act = |u: &[Rat], m: &[Rat]| self.action.apply_rat(u, m);
        let mut hom = Checker::new("crossed.psi-homomorphism");
        let mut peiffer = Checker::new("crossed.peiffer");
        for i in 0..a {
            for j in 0..a {
                let (m, n) = (basis(a, i), basis(a, j));
                let lhs = self.psi.apply_rat(&self.h1.br(&m, &n));
                let rhs = self.h0.br(&self.psi.apply_rat(&m), &self.psi.apply_rat(&n));
                hom.case(|| format!("(f{}, f{})", i + 1, j + 1), &sub(&lhs, &rhs));
                let p = sub(&act(&self.psi.apply_rat(&m), &n), &self.h1.br(&m, &n));
                peiffer.case(|| format!("(f{}, f{})", i + 1, j + 1), &p);
            }
        }
        let mut rep = Checker::new("crossed.action-representation");
        let mut der = Checker::new("crossed.action-derivation");
        let mut equiv = Checker::new("crossed.equivariance");
        for i in 0..g {
            let u = basis(g, i);
            for k in 0..a {
                let m = basis(a, k);
                let e = sub(&self.psi.apply_rat(&act(&u, &m)), &self.h0.br(&u, &self.psi.apply_rat(&m)));
                equiv.case(|| format!("(e{}, f{})", i + 1, k + 1), &e);
                for j in 0..g {
                    let v = basis(g, j);
                    let lhs = act(&self.h0.br(&u, &v), &m);
                    let rhs = sub(&act(&u, &act(&v, &m)), &act(&v, &act(&u, &m)));
                    rep.case(|| format!("(e{}, e{}, f{})", i + 1, j + 1, k + 1), &sub(&lhs, &rhs));
                }
                for l in 0..a {
                    let n = basis(a, l);
                    let lhs = act(&u, &self.h1.br(&m, &n));
                    let rhs = add(&self.h1.br(&act(&u, &m), &n), &self.h1.br(&m, &act(&u, &n)));
                    der.case(|| format!("(e{}, f{}, f{})", i + 1, k + 1, l + 1), &sub(&lhs, &rhs));
                }
            }
        }
        for c in [hom, peiffer, rep, der, equiv] {
            r.push(c.finish());
        }
        r
    }
}

/// A Lie 2-algebra on `V0 ⊕ V-1` (dims `g`, `a`) with brackets `l1`, `l2`, `l3`.
/// `l2(m, u) = -l2(u, m)` and `l2` vanishes on `V-1 x V-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLie2 {
    pub g: usize,
    pub a: usize,
    /// `g x a` matrix of `l1: V-1 -> V0`.
    pub l1: RatMatrix,
    /// `l2: V0 x V0 -> V0`.
    pub l2_00: Bilinear,
    /// `l2: V0 x V-1 -> V-1`.
    pub l2_01: Bilinear,
    /// `l3: V0 x V0 x V0 -> V-1`.
    pub l3: Trilinear,
}

impl GradedLie2 {
    pub fn new(l1: RatMatrix, l2_00: Bilinear, l2_01: Bilinear, l3: Trilinear) -> Result<GradedLie2, GlaError> {
        let (g, a) = (l1.rows, l1.cols);
        let dm = |s: &str| Err(GlaError::DimensionMismatch(s.into()));
        if (l2_00.d1, l2_00.d2, l2_00.d3) != (g, g, g) {
            return dm("l2 on V0 x V0 must land in V0");
        }
        if (l2_01.d1, l2_01.d2, l2_01.d3) != (g, a, a) {
            return dm("l2 on V0 x V-1 must land in V-1");
        }
        if (l3.d1, l3.d2, l3.d3, l3.d4) != (g, g, g, a) {
            return dm("l3 must map V0^3 to V-1");
        }
        Ok(GradedLie2 { g, a, l1, l2_00, l2_01, l3 })
    }

    pub fn zero(g: usize, a: usize) -> GradedLie2 {
        GradedLie2 {
            g,
            a,
            l1: RatMatrix::zeros(g, a),
            l2_00: Bilinear::zero(g, g, g),
            l2_01: Bilinear::zero(g, a, a),
            l3: Trilinear::zero(g, g, g, a),
        }
    }

    pub fn from_crossed_module(cm: &CrossedModuleLie) -> GradedLie2 {
        GradedLie2 {
            g: cm.h0.dim,
            a: cm.h1.dim,
            l1: cm.psi.clone(),
            l2_00: cm.h0.bracket.clone(),
            l2_01: cm.action.clone(),
            l3: Trilinear::zero(cm.h0.dim, cm.h0.dim, cm.h0.dim, cm.h1.dim),
        }
    }

    pub fn is_strict(&self) -> bool {
        self.l3.is_zero()
    }

    /// The crossed module of a strict Lie 2-algebra: `[m, n] = l2(l1 m, n)`.
    pub fn to_crossed_module(&self) -> Result<CrossedModuleLie, GlaError> {
        if !self.is_strict() {
            return Err(GlaError::NotStrict);
        }
        let mut e = Vec::new();
        for i in 0..self.a {
            for j in 0..self.a {
                let w = self.l2_01.apply_rat(&self.l1.apply_rat(&basis(self.a, i)), &basis(self.a, j));
                for (k, c) in w.into_iter().enumerate() {
                    if !c.is_zero() {
                        e.push((i, j, k, c));
                    }
                }
            }
        }
        let h1 = LieAlgebra::new(Bilinear::from_entries(self.a, self.a, self.a, e));
        let h0 = LieAlgebra::new(self.l2_00.clone());
        CrossedModuleLie::new(h1, h0, self.l1.clone(), self.l2_01.clone())
    }

    // Rational evaluation of the brackets.
    pub fn d(&self, m: &[Rat]) -> Vec<Rat> {
        self.l1.apply_rat(m)
    }
    pub fn br00(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        self.l2_00.apply_rat(u, v)
    }
    pub fn br01(&self, u: &[Rat], m: &[Rat]) -> Vec<Rat> {
        self.l2_01.apply_rat(u, m)
    }
    pub fn br3(&self, u: &[Rat], v: &[Rat], w: &[Rat]) -> Vec<Rat> {
        self.l3.apply_rat(u, v, w)
    }

    // Polynomial (pointwise) evaluation of the brackets.
    pub fn d_p(&self, m: &[Poly]) -> PVec {
        self.l1.apply(m)
    }
    pub fn br00_p(&self, u: &[Poly], v: &[Poly]) -> PVec {
        self.l2_00.apply(u, v)
    }
    pub fn br01_p(&self, u: &[Poly], m: &[Poly]) -> PVec {
        self.l2_01.apply(u, m)
    }
    pub fn br3_p(&self, u: &[Poly], v: &[Poly], w: &[Poly]) -> PVec {
        self.l3.apply(u, v, w)
    }

    /// Lie 2-algebra axioms in the skew-symmetric form, on all basis tuples.
    pub fn check_lie2_axioms(&self) -> Report {
        let (g, a) = (self.g, self.a);
        let e = |i| basis(g, i);
        let f = |i| basis(a, i);
        let mut skew2 = Checker::new("lie2.skew-l2");
        let mut skew3 = Checker::new("lie2.skew-l3");
        let mut ax_a = Checker::new("lie2.l1-equivariant");
        let mut ax_c = Checker::new("lie2.l1-symmetric");
        let mut ax_d = Checker::new("lie2.l1-of-l3");
        let mut ax_e = Checker::new("lie2.l3-of-l1");
        let mut ax_f = Checker::new("lie2.jacobiator");
        for i in 0..g {
            for j in 0..g {
                skew2.case(|| format!("(e{}, e{})", i + 1, j + 1), &add(&self.br00(&e(i), &e(j)), &self.br00(&e(j), &e(i))));
            }
        }
        for i in 0..g {
            for j in 0..g {
                for k in 0..g {
                    let base = self.br3(&e(i), &e(j), &e(k));
                    let at = || format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1);
                    skew3.case(at, &add(&base, &self.br3(&e(j), &e(i), &e(k))));
                    skew3.case(at, &add(&base, &self.br3(&e(i), &e(k), &e(j))));
                }
            }
        }
        for i in 0..g {
            for m in 0..a {
                let lhs = self.d(&self.br01(&e(i), &f(m)));
                let rhs = self.br00(&e(i), &self.d(&f(m)));
                ax_a.case(|| format!("(e{}, f{})", i + 1, m + 1), &sub(&lhs, &rhs));
            }
        }
        for m in 0..a {
            for n in 0..a {
                let s = add(&self.br01(&self.d(&f(m)), &f(n)), &self.br01(&self.d(&f(n)), &f(m)));
                ax_c.case(|| format!("(f{}, f{})", m + 1, n + 1), &s);
            }
        }
        for i in 0..g {
            for j in 0..g {
                for k in 0..g {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let rhs = sub(
                        &sub(&self.br00(&x, &self.br00(&y, &z)), &self.br00(&self.br00(&x, &y), &z)),
                        &self.br00(&y, &self.br00(&x, &z)),
                    );
                    let lhs = self.d(&self.br3(&x, &y, &z));
                    ax_d.case(|| format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1), &sub(&lhs, &rhs));
                }
                for m in 0..a {
                    let (x, y, mm) = (e(i), e(j), f(m));
                    let rhs = sub(
                        &sub(&self.br01(&x, &self.br01(&y, &mm)), &self.br01(&self.br00(&x, &y), &mm)),
                        &self.br01(&y, &self.br01(&x, &mm)),
                    );
                    let lhs = self.br3(&x, &y, &self.d(&mm));
                    ax_e.case(|| format!("(e{}, e{}, f{})", i + 1, j + 1, m + 1), &sub(&lhs, &rhs));
                }
            }
        }
        for i in 0..g {
            for j in 0..g {
                for k in 0..g {
                    for l in 0..g {
                        let xs = [e(i), e(j), e(k), e(l)];
                        let r = jacobiator(&xs, |x, y| self.br00(x, y), |x, m| self.br01(x, m), |x, y, z| self.br3(x, y, z));
                        ax_f.case(|| format!("(e{}, e{}, e{}, e{})", i + 1, j + 1, k + 1, l + 1), &r);
                    }
                }
            }
        }
        let mut r = Report::new();
        for c in [skew2, skew3, ax_a, ax_c, ax_d, ax_e, ax_f] {
            r.push(c.finish());
        }
        r
    }
}

/// `Σ_i (-1)^{i+1} l2(x_i, l3(x̂_i)) + Σ_{i<j} (-1)^{i+j} l3(l2(x_i, x_j), x̂_{ij})`
/// for four degree-0 arguments (1-based signs).
pub fn jacobiator<T: Clone>(
    xs: &[T; 4],
    br00: impl Fn(&T, &T) -> T,
    br01: impl Fn(&T, &T) -> T,
    br3: impl Fn(&T, &T, &T) -> T,
) -> T
where
    T: JacobiatorValue,
{
    let mut acc: Option<T> = None;
    let mut push = |v: T, sign: i32| {
        let v = if sign < 0 { v.negate() } else { v };
        acc = Some(match acc.take() {
            None => v,
            Some(a) => a.plus(&v),
        });
    };
    for i in 0..4 {
        let rest: Vec<&T> = (0..4).filter(|&k| k != i).map(|k| &xs[k]).collect();
        let inner = br3(rest[0], rest[1], rest[2]);
        push(br01(&xs[i], &inner), if i % 2 == 0 { 1 } else { -1 });
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<&T> = (0..4).filter(|&k| k != i && k != j).map(|k| &xs[k]).collect();
            let v = br3(&br00(&xs[i], &xs[j]), rest[0], rest[1]);
            push(v, if (i + j) % 2 == 0 { 1 } else { -1 });
        }
    }
    acc.unwrap()
}

/// Minimal vector-space operations used by [`jacobiator`].
pub trait JacobiatorValue: Sized {
    fn plus(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
}

impl JacobiatorValue for Vec<Rat> {
    fn plus(&self, o: &Self) -> Self {
        add(self, o)
    }
    fn negate(&self) -> Self {
        neg(self)
    }
}

impl JacobiatorValue for PVec {
    fn plus(&self, o: &Self) -> Self {
        crate::linalg::pvec_add(self, o)
    }
    fn negate(&self) -> Self {
        crate::linalg::pvec_neg(self)
    }
}

/// A Lie 2-algebra with a nondegenerate pairing `⟨V0, V-1⟩` given by a `g x a`
/// matrix, invariant in the sense checked by [`QuadraticLie2::check_quadratic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticLie2 {
    pub lie: GradedLie2,
    pub pairing: RatMatrix,
}

impl QuadraticLie2 {
    pub fn new(lie: GradedLie2, pairing: RatMatrix) -> Result<QuadraticLie2, GlaError> {
        if pairing.rows != lie.g || pairing.cols != lie.a {
            return Err(GlaError::DimensionMismatch("pairing must be dim V0 x dim V-1".into()));
        }
        if lie.g != lie.a || pairing.rank() != lie.g {
            return Err(GlaError::Degenerate);
        }
        Ok(QuadraticLie2 { lie, pairing })
    }

    /// `⟨u, m⟩` for constant vectors.
    pub fn pair(&self, u: &[Rat], m: &[Rat]) -> Rat {
        let pm = self.pairing.apply_rat(m);
        u.iter().zip(&pm).fold(Rat::zero(), |s, (x, y)| s + x * y)
    }

    /// `⟨u, m⟩` for polynomial vectors.
    pub fn pair_p(&self, u: &[Poly], m: &[Poly]) -> Poly {
        let pm = self.pairing.apply(m);
        let n = u.first().map_or(0, Poly::nvars);
        let mut s = Poly::zero(n);
        for (x, y) in u.iter().zip(&pm) {
            s.add_product(x, y);
        }
        s
    }

    /// The pairing as a bilinear map `V0 x V-1 -> R`.
    pub fn pairing_map(&self) -> Bilinear {
        Bilinear::pairing(&self.pairing)
    }

    /// The symmetric pairing on the whole of `V0 ⊕ V-1` restricted to `V-1 x V0`.
    pub fn pairing_map_swapped(&self) -> Bilinear {
        Bilinear::pairing(&self.pairing.transpose())
    }

    /// Invariance conditions: `l1` symmetric, `l2` and `l3` skew-adjoint.
    pub fn check_quadratic(&self) -> Report {
        let (g, a) = (self.lie.g, self.lie.a);
        let l = &self.lie;
        let e = |i| basis(g, i);
        let f = |i| basis(a, i);
        let mut c1 = Checker::new("quadratic.l1-symmetric");
        let mut c2 = Checker::new("quadratic.l2-invariant");
        let mut c3 = Checker::new("quadratic.l3-invariant");
        for m in 0..a {
            for n in 0..a {
                let v = self.pair(&l.d(&f(m)), &f(n)) - self.pair(&l.d(&f(n)), &f(m));
                c1.case(|| format!("(f{}, f{})", m + 1, n + 1), &v);
            }
        }
        for i in 0..g {
            for j in 0..g {
                for m in 0..a {
                    let v = self.pair(&l.br00(&e(i), &e(j)), &f(m)) + self.pair(&e(j), &l.br01(&e(i), &f(m)));
                    c2.case(|| format!("(e{}, e{}, f{})", i + 1, j + 1, m + 1), &v);
                }
                for k in 0..g {
                    for x in 0..g {
                        let p = |w: usize, y: usize| -> Rat {
                            let t = l.br3(&e(i), &e(j), &e(w));
                            let m = self.pairing.transpose().apply_rat(&e(y));
                            t.iter().zip(&m).fold(Rat::zero(), |s, (a, b)| s + a * b)
                        };
                        let v = p(k, x) + p(x, k);
                        c3.case(|| format!("(e{}, e{}, e{}, e{})", i + 1, j + 1, k + 1, x + 1), &v);
                    }
                }
            }
        }
        Report { checks: vec![c1.finish(), c2.finish(), c3.finish()] }
    }

    /// `V-1 = g*`, `l1 = (K♯)^{-1}`, `l2(u, η) = ad*_u η` with pairing the
    /// canonical duality, for a Lie algebra with an invariant nondegenerate
    /// symmetric form `K`.
    pub fn from_quadratic_liealg(g: &LieAlgebra, k: &RatMatrix) -> Result<QuadraticLie2, GlaError> {
        let d = g.dim;
        if k.rows != d || k.cols != d {
            return Err(GlaError::DimensionMismatch("K must be dim x dim".into()));
        }
        if k.transpose() != *k {
            return Err(GlaError::NotSymmetric);
        }
        let kinv = k.inverse().ok_or(GlaError::Degenerate)?;
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let (u, v, w) = (basis(d, i), basis(d, j), basis(d, l));
                    let kf = |x: &[Rat], y: &[Rat]| -> Rat {
                        let ky = k.apply_rat(y);
                        x.iter().zip(&ky).fold(Rat::zero(), |s, (p, q)| s + p * q)
                    };
                    let r = kf(&g.br(&u, &v), &w) + kf(&v, &g.br(&u, &w));
                    if !r.is_zero() {
                        return Err(GlaError::NotInvariant(format!(
                            "K([e{a}, e{b}], e{c}) + K(e{b}, [e{a}, e{c}]) = {r}",
                            a = i + 1,
                            b = j + 1,
                            c = l + 1
                        )));
                    }
                }
            }
        }
        // ad*_{e_i} e^j = -Σ_k c_{ik}^j e^k
        let mut co = Vec::new();
        for (i, kk, j, c) in g.bracket.entries() {
            co.push((*i, *j, *kk, -c));
        }
        let l2_01 = Bilinear::from_entries(d, d, d, co);
        let lie = GradedLie2::new(kinv, g.bracket.clone(), l2_01, Trilinear::zero(d, d, d, d))?;
        QuadraticLie2::new(lie, RatMatrix::identity(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3() -> LieAlgebra {
        let one = Rat::one();
        LieAlgebra::new(antisymmetric(3, &[(0, 1, 2, one.clone()), (1, 2, 0, one.clone()), (2, 0, 1, one)]))
    }

    #[test]
    fn so3_is_lie() {
        assert!(so3().check_jacobi().passed());
    }

    #[test]
    fn non_lie_bracket_fails_jacobi() {
        // [e1,e2] = e1, [e1,e3] = e3, [e2,e3] = e1
        let one = Rat::one();
        let g = LieAlgebra::new(antisymmetric(3, &[(0, 1, 0, one.clone()), (0, 2, 2, one.clone()), (1, 2, 0, one)]));
        let r = g.check_jacobi();
        assert!(!r.get("liealg.jacobi").unwrap().passed());
    }

    #[test]
    fn crossed_module_roundtrip() {
        let cm = CrossedModuleLie::identity(&so3());
        assert!(cm.check_crossed_module().passed());
        let l = GradedLie2::from_crossed_module(&cm);
        assert!(l.check_lie2_axioms().passed());
        assert_eq!(l.to_crossed_module().unwrap(), cm);
    }

    #[test]
    fn quadratic_from_killing_like_form() {
        let q = QuadraticLie2::from_quadratic_liealg(&so3(), &RatMatrix::identity(3)).unwrap();
        assert!(q.lie.check_lie2_axioms().passed());
        assert!(q.check_quadratic().passed());
    }

    #[test]
    fn non_invariant_form_rejected() {
        let k = RatMatrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert!(matches!(
            QuadraticLie2::from_quadratic_liealg(&so3(), &k),
            Err(GlaError::NotInvariant(_))
        ));
    }
}
