//! Sparse multivariate polynomials over the rationals.
//!
//! A monomial packs its exponent vector into a `u128`: the top byte holds the
//! total degree and the following bytes hold the exponents of `x1, x2, ...`.
//! Integer order on the packed word is therefore graded-lexicographic order,
//! and multiplying monomials is adding words.

use crate::rat::Rat;
use crate::text::{self, ParseError};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Largest number of variables a polynomial ring may have.
pub const MAX_VARS: usize = 15;
/// Largest total degree of a single monomial.
pub const MAX_DEGREE: u32 = 255;

const DEG_SHIFT: u32 = 120;

#[inline]
fn shift(i: usize) -> u32 {
    8 * (14 - i as u32)
}

/// A monomial `x1^a1 * ... * xn^an`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(i: usize) -> Mono {
        assert!(i < MAX_VARS, "variable index {i} exceeds {MAX_VARS}");
        Mono((1u128 << DEG_SHIFT) | (1u128 << shift(i)))
    }

    pub fn from_exponents(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let deg: u32 = exps.iter().sum();
        assert!(deg <= MAX_DEGREE, "monomial degree {deg} exceeds {MAX_DEGREE}");
        let mut w = (deg as u128) << DEG_SHIFT;
        for (i, &e) in exps.iter().enumerate() {
            w |= (e as u128) << shift(i);
        }
        Mono(w)
    }

    pub fn degree(self) -> u32 {
        (self.0 >> DEG_SHIFT) as u32
    }

    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    /// Highest variable index (0-based) with a nonzero exponent.
    pub fn max_var(self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&i| self.exponent(i) > 0)
    }

    pub fn mul(self, o: Mono) -> Mono {
        assert!(
            self.degree() + o.degree() <= MAX_DEGREE,
            "monomial degree exceeds {MAX_DEGREE}"
        );
        Mono(self.0 + o.0)
    }

    /// Divide by `x_{i+1}`; the exponent must be positive.
    fn lower(self, i: usize) -> Mono {
        Mono(self.0 - (1u128 << DEG_SHIFT) - (1u128 << shift(i)))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono({:?})", self.exponents(MAX_VARS))
    }
}

/// Errors from polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable-count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("{0} variables exceed the supported maximum of {MAX_VARS}")]
    TooManyVariables(usize),
}

/// A polynomial in `nvars` variables; terms sorted by ascending monomial,
/// no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Mono, Rat)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        assert!(nvars <= MAX_VARS, "{nvars} variables exceed {MAX_VARS}");
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Mono::ONE, c));
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rat::one())
    }

    /// The coordinate function `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Poly {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Poly { nvars, terms: vec![(Mono::var(i), Rat::one())] }
    }

    pub fn monomial(nvars: usize, m: Mono, c: Rat) -> Poly {
        if let Some(v) = m.max_var() {
            assert!(v < nvars, "monomial uses x{} in a ring of {nvars} variables", v + 1);
        }
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Build from arbitrary (monomial, coefficient) pairs, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Poly {
        let mut v: Vec<(Mono, Rat)> = terms.into_iter().collect();
        for (m, _) in &v {
            if let Some(i) = m.max_var() {
                assert!(i < nvars, "monomial uses x{} in a ring of {nvars} variables", i + 1);
            }
        }
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly { nvars, terms: combine_sorted(v) }
    }

    /// Parse the text form, e.g. `3/2*x1^2*x3 - x2 + 1`.
    pub fn parse(src: &str, nvars: usize) -> Result<Poly, ParseError> {
        text::parse_poly(src, nvars)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Mono::ONE)
    }

    pub fn constant_term(&self) -> Rat {
        match self.terms.first() {
            Some((m, c)) if *m == Mono::ONE => c.clone(),
            _ => Rat::zero(),
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn check_same_ring(&self, o: &Poly) -> Result<(), PolyError> {
        if self.nvars == o.nvars {
            Ok(())
        } else {
            Err(PolyError::VariableCountMismatch { left: self.nvars, right: o.nvars })
        }
    }

    pub fn try_add(&self, o: &Poly) -> Result<Poly, PolyError> {
        self.check_same_ring(o)?;
        Ok(self + o)
    }

    pub fn try_mul(&self, o: &Poly) -> Result<Poly, PolyError> {
        self.check_same_ring(o)?;
        Ok(self * o)
    }

    fn assert_ring(&self, o: &Poly) {
        if let Err(e) = self.check_same_ring(o) {
            panic!("{e}");
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, o: &Poly, c: &Rat) {
        self.assert_ring(o);
        if c.is_zero() || o.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = o.scale(c);
            return;
        }
        let a = std::mem::take(&mut self.terms);
        self.terms = merge(a, &o.terms, c);
    }

    /// `self += p * q`.
    pub fn add_product(&mut self, p: &Poly, q: &Poly) {
        if p.is_zero() || q.is_zero() {
            return;
        }
        if p.is_constant() {
            self.add_scaled(q, &p.constant_term());
        } else if q.is_constant() {
            self.add_scaled(p, &q.constant_term());
        } else {
            *self += &(p * q);
        }
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "variable index {i} out of range");
        // Dividing every surviving monomial by x_i preserves their order.
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(i);
                (e > 0).then(|| (m.lower(i), c * &Rat::int(e as i64)))
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }
}

fn combine_sorted(v: Vec<(Mono, Rat)>) -> Vec<(Mono, Rat)> {
    let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += &c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

fn merge(a: Vec<(Mono, Rat)>, b: &[(Mono, Rat)], c: &Rat) -> Vec<(Mono, Rat)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.iter().peekable();
    let scale = |x: &Rat| if c.is_one() { x.clone() } else { x * c };
    loop {
        match (ia.peek(), ib.peek()) {
            (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                Ordering::Less => out.push(ia.next().unwrap()),
                Ordering::Greater => {
                    let (m, x) = ib.next().unwrap();
                    out.push((*m, scale(x)));
                }
                Ordering::Equal => {
                    let (m, x) = ia.next().unwrap();
                    let (_, y) = ib.next().unwrap();
                    let s = &x + &scale(y);
                    if !s.is_zero() {
                        out.push((m, s));
                    }
                }
            },
            (Some(_), None) => out.push(ia.next().unwrap()),
            (None, Some(_)) => {
                let (m, x) = ib.next().unwrap();
                out.push((*m, scale(x)));
            }
            (None, None) => break,
        }
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_scaled(o, &Rat::one());
        r
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_scaled(o, &Rat::int(-1));
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rat::int(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.assert_ring(o);
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.nvars);
        }
        if self.is_constant() {
            return o.scale(&self.constant_term());
        }
        if o.is_constant() {
            return self.scale(&o.constant_term());
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                v.push((ma.mul(*mb), ca * cb));
            }
        }
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly { nvars: self.nvars, terms: combine_sorted(v) }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        self.add_scaled(o, &Rat::one());
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        self.add_scaled(o, &Rat::int(-1));
    }
}

macro_rules! owned_poly_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
    };
}
owned_poly_binop!(Add, add);
owned_poly_binop!(Sub, sub);
owned_poly_binop!(Mul, mul);

/// Writes `x1^2*x3`; empty for the unit monomial.
pub(crate) fn write_mono(f: &mut impl fmt::Write, m: Mono, nvars: usize) -> fmt::Result {
    let mut first = true;
    for i in 0..nvars {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Writes a single signed term `c*mono` followed by `suffix` factors, with the
/// sign rendered separately so callers can join terms with ` + ` / ` - `.
pub(crate) fn write_term(
    f: &mut impl fmt::Write,
    first: bool,
    m: Mono,
    c: &Rat,
    nvars: usize,
    suffix: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let mut body = String::new();
    if !a.is_one() || (m == Mono::ONE && suffix.is_empty()) {
        write!(body, "{a}")?;
    }
    if m != Mono::ONE {
        if !body.is_empty() {
            body.push('*');
        }
        write_mono(&mut body, m, nvars)?;
    }
    if !suffix.is_empty() {
        if !body.is_empty() {
            body.push('*');
        }
        body.push_str(suffix);
    }
    f.write_str(&body)
}

use std::fmt::Write as _;

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, k == 0, *m, c, self.nvars, "")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let a = Mono::from_exponents(&[2, 0, 0]);
        let b = Mono::from_exponents(&[1, 1, 0]);
        let c = Mono::from_exponents(&[0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Mono::var(0) > Mono::var(1));
    }

    #[test]
    fn print_descending() {
        let q = p("1 - x2 + 3/2*x3*x1^2");
        assert_eq!(q.to_string(), "3/2*x1^2*x3 - x2 + 1");
        assert_eq!(p("-x1").to_string(), "-x1");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn product_and_partial() {
        let q = &p("x1 + x2") * &p("x1 - x2");
        assert_eq!(q, p("x1^2 - x2^2"));
        assert_eq!(q.partial(0), p("2*x1"));
        assert_eq!(p("x1^2*x2").partial(2), Poly::zero(3));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert_eq!(
            a.try_add(&b),
            Err(PolyError::VariableCountMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = &p("x1 + x2") - &p("x1");
        assert_eq!(q.len(), 1);
        assert!((&q - &q).is_zero());
    }
}
