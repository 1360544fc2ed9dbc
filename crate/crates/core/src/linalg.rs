//! Finite-dimensional linear algebra over rationals and polynomials.

use crate::poly::Poly;
use crate::rat::Rat;

/// A vector of polynomials: a section of a trivial bundle in a fixed basis.
pub type PVec = Vec<Poly>;

pub fn pvec_zero(nvars: usize, dim: usize) -> PVec {
    vec![Poly::zero(nvars); dim]
}

pub fn pvec_basis(nvars: usize, dim: usize, i: usize) -> PVec {
    let mut v = pvec_zero(nvars, dim);
    v[i] = Poly::one(nvars);
    v
}

pub fn pvec_is_zero(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

pub fn pvec_add(a: &[Poly], b: &[Poly]) -> PVec {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn pvec_sub(a: &[Poly], b: &[Poly]) -> PVec {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn pvec_add_assign(a: &mut [Poly], b: &[Poly]) {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

pub fn pvec_add_scaled(a: &mut [Poly], b: &[Poly], c: &Rat) {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    for (x, y) in a.iter_mut().zip(b) {
        x.add_scaled(y, c);
    }
}

pub fn pvec_scale(a: &[Poly], c: &Rat) -> PVec {
    a.iter().map(|x| x.scale(c)).collect()
}

pub fn pvec_mul_poly(a: &[Poly], f: &Poly) -> PVec {
    a.iter().map(|x| x * f).collect()
}

pub fn pvec_neg(a: &[Poly]) -> PVec {
    a.iter().map(|x| -x).collect()
}

/// Row-major polynomial matrix (`rows x cols`) applied to a vector.
pub fn pmat_apply(m: &[Poly], rows: usize, cols: usize, v: &[Poly]) -> PVec {
    assert_eq!(m.len(), rows * cols);
    assert_eq!(v.len(), cols);
    let n = v.first().or(m.first()).map_or(0, Poly::nvars);
    let mut out = pvec_zero(n, rows);
    for (r, o) in out.iter_mut().enumerate() {
        for c in 0..cols {
            o.add_product(&m[r * cols + c], &v[c]);
        }
    }
    out
}

/// Product of row-major polynomial matrices.
pub fn pmat_mul(a: &[Poly], b: &[Poly], n: usize, k: usize, m: usize) -> PVec {
    assert_eq!(a.len(), n * k);
    assert_eq!(b.len(), k * m);
    let nv = a.first().or(b.first()).map_or(0, Poly::nvars);
    let mut out = pvec_zero(nv, n * m);
    for i in 0..n {
        for j in 0..m {
            let o = &mut out[i * m + j];
            for l in 0..k {
                o.add_product(&a[i * k + l], &b[l * m + j]);
            }
        }
    }
    out
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect())
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        m.data[i * o.cols + j] += &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn sub(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn apply_rat(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut s = Rat::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        s += &(a * x);
                    }
                }
                s
            })
            .collect()
    }

    pub fn apply(&self, v: &[Poly]) -> PVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let n = v.first().map_or(0, Poly::nvars);
        let mut out = pvec_zero(n, self.rows);
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                o.add_scaled(x, self.get(r, c));
            }
        }
        out
    }

    /// Constant matrix as a row-major polynomial matrix.
    pub fn to_poly(&self, nvars: usize) -> PVec {
        self.data.iter().map(|c| Poly::constant(nvars, c.clone())).collect()
    }

    /// Reduced row echelon form; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(p * self.cols + c, row * self.cols + c);
            }
            let inv = self.get(row, col).recip().unwrap();
            for c in 0..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.get(r, c) - &(&f * self.get(row, c));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rat::one());
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// A left inverse `L` with `L * self = I`, for full column rank.
    pub fn left_inverse(&self) -> Option<RatMatrix> {
        let t = self.transpose();
        let gram = t.mul(self);
        Some(gram.inverse()?.mul(&t))
    }
}

/// A bilinear map `R^d1 x R^d2 -> R^d3` stored as its nonzero structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
    entries: Vec<(usize, usize, usize, Rat)>,
}

impl Bilinear {
    pub fn zero(d1: usize, d2: usize, d3: usize) -> Bilinear {
        Bilinear { d1, d2, d3, entries: Vec::new() }
    }

    /// From `(i, j, k, c)`: `m(e_i, f_j) = c g_k`; repeated keys accumulate.
    pub fn from_entries(
        d1: usize,
        d2: usize,
        d3: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rat)>,
    ) -> Bilinear {
        let mut dense = vec![Rat::zero(); d1 * d2 * d3];
        for (i, j, k, c) in entries {
            assert!(i < d1 && j < d2 && k < d3, "structure constant index out of range");
            dense[(i * d2 + j) * d3 + k] += &c;
        }
        Bilinear::from_dense(d1, d2, d3, &dense)
    }

    /// Dense layout `c[(i*d2 + j)*d3 + k]`.
    pub fn from_dense(d1: usize, d2: usize, d3: usize, dense: &[Rat]) -> Bilinear {
        assert_eq!(dense.len(), d1 * d2 * d3);
        let mut entries = Vec::new();
        for i in 0..d1 {
            for j in 0..d2 {
                for k in 0..d3 {
                    let c = &dense[(i * d2 + j) * d3 + k];
                    if !c.is_zero() {
                        entries.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        Bilinear { d1, d2, d3, entries }
    }

    pub fn entries(&self) -> &[(usize, usize, usize, Rat)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rat {
        self.entries
            .iter()
            .find(|e| e.0 == i && e.1 == j && e.2 == k)
            .map_or_else(Rat::zero, |e| e.3.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, u: &[Poly], v: &[Poly]) -> PVec {
        assert_eq!(u.len(), self.d1, "dimension mismatch");
        assert_eq!(v.len(), self.d2, "dimension mismatch");
        let n = u.first().or(v.first()).map_or(0, Poly::nvars);
        let mut out = pvec_zero(n, self.d3);
        let mut cache: Vec<Option<Poly>> = vec![None; self.d1 * self.d2];
        for (i, j, k, c) in &self.entries {
            if u[*i].is_zero() || v[*j].is_zero() {
                continue;
            }
            let prod = cache[i * self.d2 + j].get_or_insert_with(|| &u[*i] * &v[*j]);
            out[*k].add_scaled(prod, c);
        }
        out
    }

    pub fn apply_rat(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.d3];
        for (i, j, k, c) in &self.entries {
            if !u[*i].is_zero() && !v[*j].is_zero() {
                out[*k] += &(&(&u[*i] * &v[*j]) * c);
            }
        }
        out
    }

    /// `(u, v) -> m(v, u)`.
    pub fn swapped(&self) -> Bilinear {
        Bilinear {
            d1: self.d2,
            d2: self.d1,
            d3: self.d3,
            entries: self.entries.iter().map(|(i, j, k, c)| (*j, *i, *k, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, s: &Rat) -> Bilinear {
        Bilinear::from_entries(
            self.d1,
            self.d2,
            self.d3,
            self.entries.iter().map(|(i, j, k, c)| (*i, *j, *k, c * s)),
        )
    }

    /// Compose the output with a linear map `R^d3 -> R^m`.
    pub fn then(&self, m: &RatMatrix) -> Bilinear {
        assert_eq!(m.cols, self.d3);
        let mut e = Vec::new();
        for (i, j, k, c) in &self.entries {
            for r in 0..m.rows {
                let a = m.get(r, *k);
                if !a.is_zero() {
                    e.push((*i, *j, r, c * a));
                }
            }
        }
        Bilinear::from_entries(self.d1, self.d2, m.rows, e)
    }

    /// The action `End(R^d) x R^d -> R^d`, `(M, v) -> M v`, with `M` row-major.
    pub fn matrix_action(rows: usize, cols: usize) -> Bilinear {
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                e.push((r * cols + c, c, r, Rat::one()));
            }
        }
        Bilinear::from_entries(rows * cols, cols, rows, e)
    }

    /// Composition `Hom(V,W) x Hom(U,V) -> Hom(U,W)` of row-major matrices.
    pub fn matrix_product(w: usize, v: usize, u: usize) -> Bilinear {
        let mut e = Vec::new();
        for i in 0..w {
            for l in 0..v {
                for j in 0..u {
                    e.push((i * v + l, l * u + j, i * u + j, Rat::one()));
                }
            }
        }
        Bilinear::from_entries(w * v, v * u, w * u, e)
    }

    /// Scalar pairing `R^d1 x R^d2 -> R` given by a matrix.
    pub fn pairing(m: &RatMatrix) -> Bilinear {
        let mut e = Vec::new();
        for i in 0..m.rows {
            for j in 0..m.cols {
                let c = m.get(i, j);
                if !c.is_zero() {
                    e.push((i, j, 0, c.clone()));
                }
            }
        }
        Bilinear::from_entries(m.rows, m.cols, 1, e)
    }
}

/// A trilinear map `R^d1 x R^d2 x R^d3 -> R^d4` by its nonzero constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trilinear {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
    pub d4: usize,
    entries: Vec<(usize, usize, usize, usize, Rat)>,
}

impl Trilinear {
    pub fn zero(d1: usize, d2: usize, d3: usize, d4: usize) -> Trilinear {
        Trilinear { d1, d2, d3, d4, entries: Vec::new() }
    }

    pub fn from_entries(
        d1: usize,
        d2: usize,
        d3: usize,
        d4: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, usize, Rat)>,
    ) -> Trilinear {
        let mut dense = vec![Rat::zero(); d1 * d2 * d3 * d4];
        for (i, j, k, l, c) in entries {
            assert!(i < d1 && j < d2 && k < d3 && l < d4, "structure constant index out of range");
            dense[((i * d2 + j) * d3 + k) * d4 + l] += &c;
        }
        let mut entries = Vec::new();
        for i in 0..d1 {
            for j in 0..d2 {
                for k in 0..d3 {
                    for l in 0..d4 {
                        let c = &dense[((i * d2 + j) * d3 + k) * d4 + l];
                        if !c.is_zero() {
                            entries.push((i, j, k, l, c.clone()));
                        }
                    }
                }
            }
        }
        Trilinear { d1, d2, d3, d4, entries }
    }

    /// Totally skew extension of constants given on index triples.
    pub fn skew_from(
        d: usize,
        d4: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, usize, Rat)>,
    ) -> Trilinear {
        let mut all = Vec::new();
        for (i, j, k, l, c) in entries {
            let n = -&c;
            all.push((i, j, k, l, c.clone()));
            all.push((j, k, i, l, c.clone()));
            all.push((k, i, j, l, c.clone()));
            all.push((j, i, k, l, n.clone()));
            all.push((i, k, j, l, n.clone()));
            all.push((k, j, i, l, n));
        }
        Trilinear::from_entries(d, d, d, d4, all)
    }

    pub fn entries(&self) -> &[(usize, usize, usize, usize, Rat)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, u: &[Poly], v: &[Poly], w: &[Poly]) -> PVec {
        assert_eq!((u.len(), v.len(), w.len()), (self.d1, self.d2, self.d3), "dimension mismatch");
        let n = u.first().or(v.first()).or(w.first()).map_or(0, Poly::nvars);
        let mut out = pvec_zero(n, self.d4);
        for (i, j, k, l, c) in &self.entries {
            if u[*i].is_zero() || v[*j].is_zero() || w[*k].is_zero() {
                continue;
            }
            let p = &(&u[*i] * &v[*j]) * &w[*k];
            out[*l].add_scaled(&p, c);
        }
        out
    }

    pub fn apply_rat(&self, u: &[Rat], v: &[Rat], w: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.d4];
        for (i, j, k, l, c) in &self.entries {
            if !u[*i].is_zero() && !v[*j].is_zero() && !w[*k].is_zero() {
                out[*l] += &(&(&(&u[*i] * &v[*j]) * &w[*k]) * c);
            }
        }
        out
    }
}

/// Inverse of a polynomial matrix that is constant-invertible or unipotent
/// upper triangular (identity plus strictly upper triangular part).
pub fn pmat_inverse(m: &[Poly], n: usize) -> Option<PVec> {
    assert_eq!(m.len(), n * n);
    let nv = m.first().map_or(0, Poly::nvars);
    if m.iter().all(Poly::is_constant) {
        let r = RatMatrix { rows: n, cols: n, data: m.iter().map(Poly::constant_term).collect() };
        return Some(r.inverse()?.to_poly(nv));
    }
    for i in 0..n {
        for j in 0..=i {
            let want = if i == j { Poly::one(nv) } else { Poly::zero(nv) };
            if m[i * n + j] != want {
                return None;
            }
        }
    }
    // g = 1 + N with N nilpotent: g^{-1} = sum_k (-N)^k.
    let id = RatMatrix::identity(n).to_poly(nv);
    let neg_nil: PVec = m.iter().zip(&id).map(|(a, b)| b - a).collect();
    let mut term = id.clone();
    let mut acc = id;
    for _ in 1..n {
        term = pmat_mul(&term, &neg_nil, n, n, n);
        pvec_add_assign(&mut acc, &term);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_ints(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn left_inverse_of_tall_matrix() {
        let m = RatMatrix::from_ints(&[&[1, 0], &[1, 1], &[0, 2]]);
        let l = m.left_inverse().unwrap();
        assert_eq!(l.mul(&m), RatMatrix::identity(2));
    }

    #[test]
    fn unipotent_inverse() {
        let t = Poly::var(1, 0);
        let z = Poly::zero(1);
        let o = Poly::one(1);
        let g = vec![o.clone(), t.clone(), &t * &t, z.clone(), o.clone(), t.clone(), z.clone(), z, o];
        let gi = pmat_inverse(&g, 3).unwrap();
        assert_eq!(pmat_mul(&g, &gi, 3, 3, 3), RatMatrix::identity(3).to_poly(1));
    }
}
