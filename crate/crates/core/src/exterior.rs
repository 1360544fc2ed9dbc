//! Vector-valued differential forms with polynomial coefficients on a chart.
//!
//! Conventions: `dx^I(∂_I) = 1` (no `1/k!`), wedge products are shuffle sums,
//! `d` is the alternating-sum differential and `ι_X ω = ω(X, ...)`.

use crate::linalg::{pmat_apply, pvec_add_assign, pvec_is_zero, pvec_zero, Bilinear, PVec, RatMatrix};
use crate::poly::{write_term, Poly};
use crate::rat::Rat;
use crate::text::{self, ParseError, TagResolver};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A strictly increasing index set, stored as a bitmask over 0-based indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Blade(pub u32);

impl Blade {
    pub fn from_sorted(idx: &[usize]) -> Blade {
        Blade(idx.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.degree());
        let mut m = self.0;
        while m != 0 {
            v.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        v
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }
}

// Lexicographic order on the sorted index tuples (for blades of equal degree).
impl Ord for Blade {
    fn cmp(&self, o: &Blade) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| o.0.reverse_bits().cmp(&self.0.reverse_bits()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, o: &Blade) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sorts an index list, returning the permutation sign, or `None` on repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(i32, Blade)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, Blade::from_sorted(&v)))
}

/// All strictly increasing `k`-tuples from `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A polynomial vector field `Σ X^i ∂_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    comps: PVec,
}

impl VectorField {
    pub fn new(comps: PVec) -> VectorField {
        if let Some(p) = comps.first() {
            assert_eq!(p.nvars(), comps.len(), "vector field needs one component per variable");
        }
        VectorField { comps }
    }

    pub fn zero(n: usize) -> VectorField {
        VectorField { comps: pvec_zero(n, n) }
    }

    /// `f ∂_i`.
    pub fn coordinate(n: usize, i: usize, f: Poly) -> VectorField {
        let mut v = VectorField::zero(n);
        v.comps[i] = f;
        v
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        pvec_is_zero(&self.comps)
    }

    /// `X(f) = Σ X^i ∂_i f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(f.nvars());
        for (i, x) in self.comps.iter().enumerate() {
            if !x.is_zero() {
                out.add_product(x, &f.partial(i));
            }
        }
        out
    }

    /// Componentwise derivative of a vector of functions.
    pub fn apply_vec(&self, v: &[Poly]) -> PVec {
        v.iter().map(|f| self.apply(f)).collect()
    }

    /// `[X, Y]^i = Σ_j X^j ∂_j Y^i - Y^j ∂_j X^i`.
    pub fn bracket(&self, o: &VectorField) -> VectorField {
        let comps = (0..self.nvars())
            .map(|i| &self.apply(&o.comps[i]) - &o.apply(&self.comps[i]))
            .collect();
        VectorField { comps }
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        VectorField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &VectorField) -> VectorField {
        VectorField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rat) -> VectorField {
        VectorField { comps: self.comps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_poly(&self, f: &Poly) -> VectorField {
        VectorField { comps: self.comps.iter().map(|a| a * f).collect() }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars();
        let mut first = true;
        for (i, p) in self.comps.iter().enumerate() {
            for (m, c) in p.terms().rev() {
                write_term(f, first, *m, c, n, &format!("d/dx{}", i + 1))?;
                first = false;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Errors from form construction and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("degree mismatch: expected a {expected}-form, found a {found}-form")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("value dimension mismatch: {left} vs {right}")]
    ValueDimMismatch { left: usize, right: usize },
    #[error("parse error at {0}")]
    Parse(ParseError),
}

/// A `dim`-vector-valued differential `degree`-form on a chart with `nvars`
/// coordinates. Zero components are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    nvars: usize,
    degree: usize,
    dim: usize,
    comps: BTreeMap<Blade, PVec>,
}

impl Form {
    pub fn zero(nvars: usize, degree: usize, dim: usize) -> Form {
        assert!(nvars <= crate::poly::MAX_VARS);
        Form { nvars, degree, dim, comps: BTreeMap::new() }
    }

    /// A 0-form from a vector of functions.
    pub fn function(v: PVec) -> Form {
        let nvars = v.first().map_or(0, Poly::nvars);
        let mut f = Form::zero(nvars, 0, v.len());
        f.insert(Blade(0), v);
        f
    }

    /// Scalar 0-form.
    pub fn scalar_function(p: Poly) -> Form {
        Form::function(vec![p])
    }

    /// `dx^{i}` for a 0-based index.
    pub fn dx(nvars: usize, i: usize) -> Form {
        let mut f = Form::zero(nvars, 1, 1);
        f.insert(Blade(1 << i), vec![Poly::one(nvars)]);
        f
    }

    /// Form whose component on each increasing index tuple is `f(tuple)`.
    pub fn from_fn(nvars: usize, degree: usize, dim: usize, mut f: impl FnMut(&[usize]) -> PVec) -> Form {
        let mut out = Form::zero(nvars, degree, dim);
        if degree > nvars {
            return out;
        }
        for idx in combinations(nvars, degree) {
            let v = f(&idx);
            assert_eq!(v.len(), dim, "value dimension mismatch");
            out.insert(Blade::from_sorted(&idx), v);
        }
        out
    }

    /// Build from `(index list, value)` pairs; unsorted lists contribute with
    /// their permutation sign, lists with repeats vanish.
    pub fn from_components(
        nvars: usize,
        degree: usize,
        dim: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, PVec)>,
    ) -> Form {
        let mut out = Form::zero(nvars, degree, dim);
        for (idx, v) in comps {
            assert_eq!(idx.len(), degree, "index list length must equal the degree");
            assert!(idx.iter().all(|&i| i < nvars), "index out of range");
            if let Some((s, b)) = sort_with_sign(&idx) {
                let v = if s < 0 { v.iter().map(|p| -p).collect() } else { v };
                out.accumulate(b, &v);
            }
        }
        out
    }

    fn insert(&mut self, b: Blade, v: PVec) {
        if !pvec_is_zero(&v) {
            self.comps.insert(b, v);
        } else {
            self.comps.remove(&b);
        }
    }

    fn accumulate(&mut self, b: Blade, v: &[Poly]) {
        if pvec_is_zero(v) {
            return;
        }
        match self.comps.get_mut(&b) {
            Some(cur) => {
                pvec_add_assign(cur, v);
                if pvec_is_zero(cur) {
                    self.comps.remove(&b);
                }
            }
            None => {
                self.comps.insert(b, v.to_vec());
            }
        }
    }

    fn accumulate_scaled(&mut self, b: Blade, v: PVec, sign: i32) {
        let v = if sign < 0 { v.iter().map(|p| -p).collect::<PVec>() } else { v };
        self.accumulate(b, &v);
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components in lexicographic index order.
    pub fn components(&self) -> impl Iterator<Item = (Blade, &PVec)> {
        self.comps.iter().map(|(b, v)| (*b, v))
    }

    /// Value `ω(∂_{i1}, ..., ∂_{ik})` for any index list.
    pub fn component(&self, idx: &[usize]) -> PVec {
        assert_eq!(idx.len(), self.degree);
        match sort_with_sign(idx) {
            None => pvec_zero(self.nvars, self.dim),
            Some((s, b)) => match self.comps.get(&b) {
                None => pvec_zero(self.nvars, self.dim),
                Some(v) if s > 0 => v.clone(),
                Some(v) => v.iter().map(|p| -p).collect(),
            },
        }
    }

    /// Largest polynomial degree of any coefficient.
    pub fn max_coeff_degree(&self) -> u32 {
        self.comps
            .values()
            .flat_map(|v| v.iter().filter_map(Poly::degree))
            .max()
            .unwrap_or(0)
    }

    fn check_compat(&self, o: &Form) -> Result<(), FormError> {
        if self.degree != o.degree {
            return Err(FormError::DegreeMismatch { expected: self.degree, found: o.degree });
        }
        if self.dim != o.dim {
            return Err(FormError::ValueDimMismatch { left: self.dim, right: o.dim });
        }
        assert_eq!(self.nvars, o.nvars, "chart dimension mismatch");
        Ok(())
    }

    pub fn try_add(&self, o: &Form) -> Result<Form, FormError> {
        self.check_compat(o)?;
        let mut r = self.clone();
        for (b, v) in &o.comps {
            r.accumulate(*b, v);
        }
        Ok(r)
    }

    pub fn add(&self, o: &Form) -> Form {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn add_assign(&mut self, o: &Form) {
        self.check_compat(o).unwrap_or_else(|e| panic!("{e}"));
        for (b, v) in &o.comps {
            self.accumulate(*b, v);
        }
    }

    pub fn neg(&self) -> Form {
        self.scale(&Rat::int(-1))
    }

    pub fn scale(&self, c: &Rat) -> Form {
        if c.is_zero() {
            return Form::zero(self.nvars, self.degree, self.dim);
        }
        Form {
            comps: self.comps.iter().map(|(b, v)| (*b, v.iter().map(|p| p.scale(c)).collect())).collect(),
            ..self.clone()
        }
    }

    pub fn mul_poly(&self, f: &Poly) -> Form {
        let mut out = Form::zero(self.nvars, self.degree, self.dim);
        for (b, v) in &self.comps {
            out.insert(*b, v.iter().map(|p| p * f).collect());
        }
        out
    }

    /// Apply a constant linear map to the values.
    pub fn map_values(&self, m: &RatMatrix) -> Form {
        assert_eq!(m.cols, self.dim, "value dimension mismatch");
        let mut out = Form::zero(self.nvars, self.degree, m.rows);
        for (b, v) in &self.comps {
            out.insert(*b, m.apply(v));
        }
        out
    }

    /// Apply a row-major polynomial matrix to the values.
    pub fn map_values_poly(&self, m: &[Poly], rows: usize) -> Form {
        let mut out = Form::zero(self.nvars, self.degree, rows);
        for (b, v) in &self.comps {
            out.insert(*b, pmat_apply(m, rows, self.dim, v));
        }
        out
    }

    /// Apply an arbitrary per-component value map.
    pub fn map_components(&self, dim: usize, mut f: impl FnMut(&[Poly]) -> PVec) -> Form {
        let mut out = Form::zero(self.nvars, self.degree, dim);
        for (b, v) in &self.comps {
            out.insert(*b, f(v));
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.nvars, self.degree + 1, self.dim);
        if self.degree >= self.nvars {
            return out;
        }
        for (b, v) in &self.comps {
            for j in 0..self.nvars {
                if b.contains(j) {
                    continue;
                }
                let dv: PVec = v.iter().map(|p| p.partial(j)).collect();
                if pvec_is_zero(&dv) {
                    continue;
                }
                let s = text::wedge_sign(1 << j, b.0).unwrap();
                out.accumulate_scaled(Blade(b.0 | (1 << j)), dv, s);
            }
        }
        out
    }

    /// Shuffle product through a bilinear map on values:
    /// `[α ∧ β]_m(X_1..X_{k+l}) = Σ_{(k,l)-shuffles} sgn m(α(..), β(..))`.
    pub fn product(&self, o: &Form, m: &Bilinear) -> Form {
        assert_eq!(m.d1, self.dim, "left value dimension mismatch");
        assert_eq!(m.d2, o.dim, "right value dimension mismatch");
        assert_eq!(self.nvars, o.nvars, "chart dimension mismatch");
        let mut out = Form::zero(self.nvars, self.degree + o.degree, m.d3);
        if self.degree + o.degree > self.nvars {
            return out;
        }
        for (a, va) in &self.comps {
            for (b, vb) in &o.comps {
                if let Some(s) = text::wedge_sign(a.0, b.0) {
                    out.accumulate_scaled(Blade(a.0 | b.0), m.apply(va, vb), s);
                }
            }
        }
        out
    }

    /// Wedge product of scalar forms.
    pub fn wedge(&self, o: &Form) -> Form {
        assert!(self.dim == 1 && o.dim == 1, "wedge is for scalar forms; use `product`");
        self.product(o, &Bilinear::from_entries(1, 1, 1, [(0, 0, 0, Rat::one())]))
    }

    /// Interior product `ι_X ω = ω(X, ...)`.
    pub fn interior(&self, x: &VectorField) -> Form {
        assert!(self.degree > 0, "interior product of a 0-form");
        let mut out = Form::zero(self.nvars, self.degree - 1, self.dim);
        for (b, v) in &self.comps {
            for (p, i) in b.indices().into_iter().enumerate() {
                let xi = x.component(i);
                if xi.is_zero() {
                    continue;
                }
                let w: PVec = v.iter().map(|q| q * xi).collect();
                out.accumulate_scaled(Blade(b.0 & !(1 << i)), w, if p % 2 == 0 { 1 } else { -1 });
            }
        }
        out
    }

    /// Lie derivative by Cartan's formula.
    pub fn lie_derivative(&self, x: &VectorField) -> Form {
        let a = if self.degree < self.nvars { self.d().interior(x) } else { Form::zero(self.nvars, self.degree, self.dim) };
        if self.degree == 0 {
            return a;
        }
        a.add(&self.interior(x).d())
    }

    /// `ω(X_1, ..., X_k)` as a vector of functions, expanded over the
    /// supports of the arguments.
    pub fn eval(&self, xs: &[&VectorField]) -> PVec {
        assert_eq!(xs.len(), self.degree, "wrong number of arguments");
        let mut out = pvec_zero(self.nvars, self.dim);
        if self.comps.is_empty() {
            return out;
        }
        let supports: Vec<Vec<usize>> = xs
            .iter()
            .map(|x| (0..self.nvars).filter(|&i| !x.component(i).is_zero()).collect())
            .collect();
        let mut chosen = Vec::with_capacity(xs.len());
        self.eval_rec(xs, &supports, &mut chosen, 0, &Poly::one(self.nvars), &mut out);
        out
    }

    fn eval_rec(
        &self,
        xs: &[&VectorField],
        supports: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        used: u32,
        coef: &Poly,
        out: &mut PVec,
    ) {
        let a = chosen.len();
        if a == xs.len() {
            let (s, b) = sort_with_sign(chosen).expect("indices are distinct");
            if let Some(v) = self.comps.get(&b) {
                let c = if s < 0 { -coef } else { coef.clone() };
                for (o, p) in out.iter_mut().zip(v) {
                    o.add_product(p, &c);
                }
            }
            return;
        }
        for &i in &supports[a] {
            if used & (1 << i) != 0 {
                continue;
            }
            chosen.push(i);
            let c = coef * xs[a].component(i);
            self.eval_rec(xs, supports, chosen, used | (1 << i), &c, out);
            chosen.pop();
        }
    }

    /// `ω(X_1, ..., X_k)` computed as iterated interior products.
    pub fn eval_iterated(&self, xs: &[&VectorField]) -> PVec {
        assert_eq!(xs.len(), self.degree, "wrong number of arguments");
        let mut cur = self.clone();
        for x in xs {
            if cur.is_zero() {
                break;
            }
            cur = cur.interior(x);
        }
        cur.comps.get(&Blade(0)).cloned().unwrap_or_else(|| pvec_zero(self.nvars, self.dim))
    }

    /// Parse a literal such as `x3*dx1*e1 + x1*dx2*e2` using a tag resolver.
    pub fn parse_with(
        src: &str,
        nvars: usize,
        degree: Option<usize>,
        dim: usize,
        tags: &TagResolver<'_>,
    ) -> Result<Form, ParseError> {
        let (found, pieces) = text::parse_pieces(src, nvars, tags)?;
        let degree = match (degree, found) {
            (Some(d), Some(f)) if d != f => {
                return Err(ParseError::new(0, format!("expected a {d}-form, found a {f}-form")))
            }
            (Some(d), _) => d,
            (None, Some(f)) => f,
            (None, None) => 0,
        };
        let mut out = Form::zero(nvars, degree, dim);
        for p in pieces {
            if p.poly.is_zero() {
                continue;
            }
            let k = match (p.tag, dim) {
                (Some(k), _) => k,
                (None, 1) => 0,
                (None, _) => return Err(ParseError::new(0, "term without a value tag in a vector-valued form")),
            };
            let mut v = pvec_zero(nvars, dim);
            v[k] = p.poly;
            out.accumulate(Blade(p.blade), &v);
        }
        Ok(out)
    }

    /// Parse with named basis tags (`e1, e2, ...` when `names` is empty).
    pub fn parse(src: &str, nvars: usize, dim: usize, names: &[&str]) -> Result<Form, ParseError> {
        let default: Vec<String> = (1..=dim).map(|i| format!("e{i}")).collect();
        let resolve = |name: &str, args: &[usize]| -> Option<Result<usize, String>> {
            let pos = if names.is_empty() {
                default.iter().position(|n| n == name)
            } else {
                names.iter().position(|n| *n == name)
            }?;
            if !args.is_empty() {
                return Some(Err(format!("basis tag `{name}` takes no arguments")));
            }
            Some(Ok(pos))
        };
        Form::parse_with(src, nvars, None, dim, &resolve)
    }

    /// Render with the given value basis names.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut s = String::new();
        let mut first = true;
        for (b, v) in &self.comps {
            let dx = b.indices().iter().map(|i| format!("dx{}", i + 1)).collect::<Vec<_>>().join("^");
            for (k, p) in v.iter().enumerate() {
                let mut suffix = dx.clone();
                if self.dim > 1 || !names.is_empty() {
                    let tag = names.get(k).cloned().unwrap_or_else(|| format!("e{}", k + 1));
                    if !suffix.is_empty() {
                        suffix.push('*');
                    }
                    suffix.push_str(&tag);
                }
                for (m, c) in p.terms().rev() {
                    write_term(&mut s, first, *m, c, self.nvars, &suffix).unwrap();
                    first = false;
                }
            }
        }
        if first {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&[]))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[n={}, k={}, dim={}]({})", self.nvars, self.degree, self.dim, self)
    }
}

/// `𝒮`-style pairing of two forms through a bilinear map: an alias for the
/// shuffle product, named for readability at call sites.
pub fn pair_forms(a: &Form, b: &Form, pairing: &Bilinear) -> Form {
    a.product(b, pairing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn bracket_of_linear_fields() {
        let n = 2;
        let a = VectorField::coordinate(n, 1, x(n, 0));
        let b = VectorField::coordinate(n, 0, x(n, 1));
        let c = a.bracket(&b);
        let want = VectorField::new(vec![x(n, 0), -x(n, 1)]);
        assert_eq!(c, want);
    }

    #[test]
    fn wedge_reorders_with_sign() {
        let n = 5;
        let a = Form::parse("dx2^dx3", n, 1, &[]).unwrap();
        let b = Form::parse("dx4^dx5^dx1", n, 1, &[]).unwrap();
        let w = a.wedge(&b);
        assert_eq!(w.to_string(), "dx1^dx2^dx3^dx4^dx5");
    }

    #[test]
    fn interior_of_coordinate_field() {
        let n = 2;
        let w = Form::parse("dx1^dx2", n, 1, &[]).unwrap();
        let r = w.interior(&VectorField::coordinate(n, 1, Poly::one(n)));
        assert_eq!(r, Form::parse("-dx1", n, 1, &[]).unwrap());
    }

    #[test]
    fn d_of_function_and_closedness() {
        let n = 3;
        let f = Form::scalar_function(Poly::parse("x1^2*x2 + x3", n).unwrap());
        let df = f.d();
        assert_eq!(df, Form::parse("2*x1*x2*dx1 + x1^2*dx2 + dx3", n, 1, &[]).unwrap());
        assert!(df.d().is_zero());
    }

    #[test]
    fn eval_matches_determinant() {
        let n = 3;
        let w = Form::parse("dx1^dx2", n, 1, &[]).unwrap();
        let a = VectorField::new(vec![Poly::one(n), x(n, 2), Poly::zero(n)]);
        let b = VectorField::new(vec![x(n, 0), Poly::one(n), Poly::one(n)]);
        // det [[1, x1], [x3, 1]] = 1 - x1*x3
        assert_eq!(w.eval(&[&a, &b]), vec![Poly::parse("1 - x1*x3", n).unwrap()]);
    }

    #[test]
    fn print_parse_roundtrip() {
        let n = 3;
        let w = Form::parse("x3*dx1*e1 + (x1 - 1)*dx2*e2 - 3/2*dx3*e1", n, 2, &[]).unwrap();
        let s = w.to_string();
        assert_eq!(Form::parse(&s, n, 2, &[]).unwrap(), w);
    }

    #[test]
    fn parse_errors() {
        assert!(Form::parse("dx1^dx1", 2, 1, &[]).is_err());
        assert!(Form::parse("dx1 + dx1^dx2", 2, 1, &[]).is_err());
        assert!(Form::parse("dx1*e3", 2, 2, &[]).is_err());
        assert!(Form::parse("dx1", 2, 2, &[]).is_err());
    }
}
