//! Standard fibers and seeded random test data.

use crate::exterior::{combinations, Form};
use crate::gla::{antisymmetric, GradedLie2, LieAlgebra, QuadraticLie2};
use crate::linalg::{Bilinear, PVec, RatMatrix, Trilinear};
use crate::poly::{Mono, Poly};
use crate::rat::Rat;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lie(d: usize, brackets: &[(usize, usize, usize, i64)]) -> LieAlgebra {
    let e: Vec<_> = brackets.iter().map(|&(i, j, k, c)| (i, j, k, Rat::int(c))).collect();
    LieAlgebra::new(antisymmetric(d, &e))
}

/// `so(3)`: `[e1, e2] = e3` and cyclic.
pub fn so3() -> LieAlgebra {
    lie(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)])
}

/// `sl(2)` in the basis `(E, H, F)`.
pub fn sl2() -> LieAlgebra {
    lie(3, &[(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)])
}

/// Trace form of `sl(2)` in the basis `(E, H, F)`.
pub fn sl2_trace_form() -> RatMatrix {
    RatMatrix::from_ints(&[&[0, 0, 1], &[0, 2, 0], &[1, 0, 0]])
}

/// `gl(2)` in the basis `(E, H, F, 1)`.
pub fn gl2() -> LieAlgebra {
    lie(4, &[(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)])
}

/// Heisenberg algebra: `[e1, e2] = e3`.
pub fn heisenberg() -> LieAlgebra {
    lie(3, &[(0, 1, 2, 1)])
}

/// `so(3)` with the identity form, as a strict quadratic Lie 2-algebra.
pub fn quadratic_so3() -> QuadraticLie2 {
    QuadraticLie2::from_quadratic_liealg(&so3(), &RatMatrix::identity(3)).expect("identity form is invariant on so(3)")
}

/// `sl(2)` with the trace form, as a strict quadratic Lie 2-algebra.
pub fn quadratic_sl2() -> QuadraticLie2 {
    QuadraticLie2::from_quadratic_liealg(&sl2(), &sl2_trace_form()).expect("trace form is invariant on sl(2)")
}

/// `V-1 = g*` with the coadjoint action, the canonical pairing and a given `l1`.
fn coadjoint_fiber(g: &LieAlgebra, l1: RatMatrix) -> GradedLie2 {
    let d = g.dim;
    let co: Vec<_> = g.bracket.entries().iter().map(|(i, k, j, c)| (*i, *j, *k, -c)).collect();
    GradedLie2::new(l1, g.bracket.clone(), Bilinear::from_entries(d, d, d, co), Trilinear::zero(d, d, d, d)).expect("dimensions agree")
}

/// Heisenberg algebra with its coadjoint module and `l1 = 0`; quadratic for
/// the canonical pairing although the algebra itself carries no invariant form.
pub fn coadjoint_heisenberg() -> QuadraticLie2 {
    QuadraticLie2::new(coadjoint_fiber(&heisenberg(), RatMatrix::zeros(3, 3)), RatMatrix::identity(3)).expect("identity pairing is nondegenerate")
}

/// Defining representation of `so(3)`: `(L_i)_{jk} = -ε_{ijk}`.
pub fn so3_rep() -> Vec<RatMatrix> {
    let eps = |i: usize, j: usize, k: usize| -> i64 {
        if i == j || j == k || i == k {
            0
        } else {
            perm_sign(&[i, j, k])
        }
    };
    (0..3)
        .map(|i| RatMatrix::from_rows((0..3).map(|j| (0..3).map(|k| Rat::int(-eps(i, j, k))).collect()).collect()))
        .collect()
}

/// Heisenberg algebra as strictly upper triangular 3x3 matrices:
/// `e1 = E12`, `e2 = E23`, `e3 = E13`.
pub fn heisenberg_rep() -> Vec<RatMatrix> {
    let unit = |r: usize, c: usize| {
        let mut m = RatMatrix::zeros(3, 3);
        m.set(r, c, Rat::one());
        m
    };
    vec![unit(0, 1), unit(1, 2), unit(0, 2)]
}

/// Rational rotation `(I - S)(I + S)^{-1}` for the skew matrix of `(a, b, c)`.
pub fn cayley_rotation(a: i64, b: i64, c: i64) -> RatMatrix {
    let s = RatMatrix::from_ints(&[&[0, -c, b], &[c, 0, -a], &[-b, a, 0]]);
    let id = RatMatrix::identity(3);
    let plus = RatMatrix::from_rows((0..3).map(|i| (0..3).map(|j| id.get(i, j) + s.get(i, j)).collect()).collect());
    id.sub(&s).mul(&plus.inverse().expect("I + S is invertible for skew S"))
}

/// Sign of the permutation sending `0..k` to `p`.
fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// A semistrict quadratic Lie 2-algebra with nonzero `l3`: `V0 = gl(2)`,
/// `V-1 = gl(2)*`, `l1 = 0`, `l2` the bracket and coadjoint action, and
/// `⟨l3(u, v, w), x⟩ = vol(u, v, w, x)`.
pub fn semistrict_gl2() -> QuadraticLie2 {
    let g = gl2();
    let mut co = Vec::new();
    for (i, k, j, c) in g.bracket.entries() {
        co.push((*i, *j, *k, -c));
    }
    let l2_01 = Bilinear::from_entries(4, 4, 4, co);
    let mut vol = Vec::new();
    for t in combinations(4, 3) {
        let l = (0..4).find(|x| !t.contains(x)).unwrap();
        vol.push((t[0], t[1], t[2], l, Rat::int(perm_sign(&[t[0], t[1], t[2], l]))));
    }
    let l3 = Trilinear::skew_from(4, 4, vol);
    let lie2 = GradedLie2::new(RatMatrix::zeros(4, 4), g.bracket.clone(), l2_01, l3).expect("dimensions agree");
    QuadraticLie2::new(lie2, RatMatrix::identity(4)).expect("identity pairing is nondegenerate")
}

/// Seeded generator of small random polynomial data.
pub struct Sampler {
    rng: ChaCha8Rng,
    /// Maximal total degree of random coefficients.
    pub max_degree: u32,
    /// Number of monomials tried per random polynomial.
    pub terms: usize,
    /// Coefficients are drawn from `-coeff..=coeff`.
    pub coeff: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), max_degree: 2, terms: 2, coeff: 3 }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn rat(&mut self) -> Rat {
        Rat::int(self.rng.gen_range(-self.coeff..=self.coeff))
    }

    pub fn poly(&mut self, n: usize) -> Poly {
        let mut terms = Vec::new();
        for _ in 0..self.terms {
            let deg = self.rng.gen_range(0..=self.max_degree);
            let mut e = vec![0u32; n];
            for _ in 0..deg {
                if n > 0 {
                    e[self.rng.gen_range(0..n)] += 1;
                }
            }
            terms.push((Mono::from_exponents(&e), self.rat()));
        }
        Poly::from_terms(n, terms)
    }

    pub fn pvec(&mut self, n: usize, dim: usize) -> PVec {
        (0..dim).map(|_| self.poly(n)).collect()
    }

    /// A random form in which each component is nonzero with probability `density`.
    pub fn form(&mut self, n: usize, degree: usize, dim: usize, density: f64) -> Form {
        let mut comps = Vec::new();
        for idx in combinations(n, degree) {
            if self.rng.gen_bool(density) {
                comps.push((idx, self.pvec(n, dim)));
            }
        }
        Form::from_components(n, degree, dim, comps)
    }

    pub fn rat_matrix(&mut self, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix::from_rows((0..rows).map(|_| (0..cols).map(|_| self.rat()).collect()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_are_lie() {
        for g in [so3(), sl2(), gl2(), heisenberg()] {
            assert!(g.check_jacobi().passed());
        }
    }

    #[test]
    fn semistrict_fiber_is_quadratic() {
        let q = semistrict_gl2();
        assert!(!q.lie.is_strict());
        let r = q.lie.check_lie2_axioms();
        assert!(r.passed(), "{:?}", r.failing().collect::<Vec<_>>());
        assert!(q.check_quadratic().passed());
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = Sampler::new(7).form(4, 2, 3, 0.5);
        let b = Sampler::new(7).form(4, 2, 3, 0.5);
        assert_eq!(a, b);
    }
}
