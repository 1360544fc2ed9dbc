use lie2alg::exterior::{combinations, pair_forms, Form, VectorField};
use lie2alg::gla::{CrossedModuleLie, GradedLie2, LieAlgebra};
use lie2alg::linalg::{Bilinear, RatMatrix};
use lie2alg::poly::Poly;
use lie2alg::rat::Rat;
use lie2alg::samples::{self, Sampler};
use num::{BigInt, BigRational};
use proptest::prelude::*;

const N: usize = 4;

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn sampler(seed: u64) -> Sampler {
    let mut s = Sampler::new(seed);
    s.max_degree = 2;
    s.terms = 3;
    s
}

fn sign(k: usize) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        Rat::int(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rat_matches_bigrational(a in any::<i64>(), b in 1..i64::MAX, c in any::<i64>(), d in 1..i64::MAX) {
        let (x, y) = (Rat::new(a, b), Rat::new(c, d));
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert_eq!((&x + &y).to_big(), &bx + &by);
        prop_assert_eq!((&x - &y).to_big(), &bx - &by);
        prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        prop_assert_eq!((-&x).to_big(), -bx);
    }

    #[test]
    fn polynomial_ring_axioms(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let (p, q, r) = (s.poly(N), s.poly(N), s.poly(N));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Poly::one(N), p.clone());
    }

    #[test]
    fn polynomial_text_round_trip(seed in any::<u64>()) {
        let p = sampler(seed).poly(N);
        prop_assert_eq!(Poly::parse(&p.to_string(), N).unwrap(), p);
    }

    #[test]
    fn partial_derivatives_commute_and_obey_leibniz(seed in any::<u64>(), i in 0..N, j in 0..N) {
        let mut s = sampler(seed);
        let (p, q) = (s.poly(N), s.poly(N));
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
        prop_assert_eq!((&p * &q).partial(i), &(&p.partial(i) * &q) + &(&p * &q.partial(i)));
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), k in 0..=N, dim in 1..3usize) {
        let f = sampler(seed).form(N, k, dim, 0.6);
        prop_assert!(f.d().d().is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>(), k in 0..=N, l in 0..=N) {
        let mut s = sampler(seed);
        let (a, b) = (s.form(N, k, 1, 0.6), s.form(N, l, 1, 0.6));
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign(k * l)));
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>(), k in 0..3usize, l in 0..2usize, m in 0..2usize) {
        let mut s = sampler(seed);
        let (a, b, c) = (s.form(N, k, 1, 0.6), s.form(N, l, 1, 0.6), s.form(N, m, 1, 0.6));
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>(), k in 0..=N, l in 0..=N) {
        let mut s = sampler(seed);
        let (a, b) = (s.form(N, k, 1, 0.6), s.form(N, l, 1, 0.6));
        prop_assert_eq!(a.wedge(&b).d(), a.d().wedge(&b).add(&a.wedge(&b.d()).scale(&sign(k))));
    }

    #[test]
    fn cartan_formula(seed in any::<u64>(), k in 0..=N) {
        let mut s = sampler(seed);
        let a = s.form(N, k, 2, 0.6);
        let x = VectorField::new(s.pvec(N, N));
        let cartan = if k == 0 { a.d().interior(&x) } else { a.interior(&x).d().add(&a.d().interior(&x)) };
        prop_assert_eq!(a.lie_derivative(&x), cartan);
    }

    #[test]
    fn eval_agrees_with_iterated_interior(seed in any::<u64>(), k in 1..=N) {
        let mut s = sampler(seed);
        let a = s.form(N, k, 2, 0.6);
        let xs: Vec<VectorField> = (0..k).map(|_| VectorField::new(s.pvec(N, N))).collect();
        let refs: Vec<&VectorField> = xs.iter().collect();
        prop_assert_eq!(a.eval(&refs), a.eval_iterated(&refs));
    }

    #[test]
    fn form_text_round_trip(seed in any::<u64>(), k in 0..=N) {
        let f = sampler(seed).form(N, k, 3, 0.5);
        let back = Form::parse_with(&f.to_string(), N, Some(k), 3, &|name: &str, args: &[usize]| {
            let i: usize = name.strip_prefix('e')?.parse().ok()?;
            Some(if args.is_empty() && (1..=3).contains(&i) { Ok(i - 1) } else { Err(format!("bad tag {name}")) })
        });
        prop_assert_eq!(back.unwrap(), f);
    }

    #[test]
    fn vector_field_bracket_jacobi(seed in any::<u64>()) {
        let mut s = sampler(seed);
        let (x, y, z) = (VectorField::new(s.pvec(N, N)), VectorField::new(s.pvec(N, N)), VectorField::new(s.pvec(N, N)));
        let j = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(j.is_zero());
        prop_assert_eq!(x.bracket(&y), y.bracket(&x).scale(&Rat::int(-1)));
    }

    #[test]
    fn shuffle_product_matches_coordinate_formula(seed in any::<u64>(), k in 0..3usize, l in 0..3usize) {
        // On coordinate fields only splittings of I into increasing halves contribute.
        let mut s = sampler(seed);
        let (a, b) = (s.form(N, k, 2, 0.6), s.form(N, l, 2, 0.6));
        let m = Bilinear::from_entries(2, 2, 1, vec![(0, 1, 0, Rat::one()), (1, 0, 0, Rat::int(2)), (1, 1, 0, Rat::new(-1, 3))]);
        let prod = pair_forms(&a, &b, &m);
        for idx in combinations(N, k + l) {
            let mut want = Poly::zero(N);
            for left in combinations(k + l, k) {
                let right: Vec<usize> = (0..k + l).filter(|i| !left.contains(i)).collect();
                let inversions = left.iter().map(|&i| right.iter().filter(|&&j| j < i).count()).sum::<usize>();
                let li: Vec<usize> = left.iter().map(|&i| idx[i]).collect();
                let ri: Vec<usize> = right.iter().map(|&i| idx[i]).collect();
                let v = m.apply(&a.component(&li), &b.component(&ri));
                want.add_scaled(&v[0], &sign(inversions));
            }
            prop_assert_eq!(&prod.component(&idx)[0], &want);
        }
    }

    #[test]
    fn crossed_module_round_trip(base in 0..4usize, num in -3..=3i64, den in 1..4i64) {
        let g = [samples::so3(), samples::sl2(), samples::gl2(), samples::heisenberg()][base].clone();
        let c = Rat::new(num, den);
        let d = g.dim;
        let psi = RatMatrix::from_rows((0..d).map(|i| (0..d).map(|j| if i == j { c.clone() } else { Rat::zero() }).collect()).collect());
        let cm = CrossedModuleLie::new(LieAlgebra::new(g.bracket.scaled(&c)), g.clone(), psi, g.bracket.clone()).unwrap();
        prop_assert!(cm.check_crossed_module().passed());
        let lie2 = GradedLie2::from_crossed_module(&cm);
        prop_assert!(lie2.is_strict());
        prop_assert!(lie2.check_lie2_axioms().passed());
        prop_assert_eq!(lie2.to_crossed_module().unwrap(), cm);
    }
}

#[test]
fn coordinate_pairing_of_sample_fields() {
    let n = 3;
    let a = Form::parse("x1*dx1 + dx2", n, 1, &[]).unwrap();
    let x = VectorField::new(vec![Poly::var(n, 1), Poly::one(n), Poly::zero(n)]);
    // α(X) = x1·x2 + 1.
    assert_eq!(a.eval(&[&x])[0], Poly::parse("x1*x2 + 1", n).unwrap());
    assert_eq!(a.interior(&x).component(&[])[0], Poly::parse("x1*x2 + 1", n).unwrap());
}
