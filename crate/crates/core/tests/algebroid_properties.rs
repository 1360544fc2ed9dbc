use lie2alg::algebroid::{trivial, Family};
use lie2alg::gla::QuadraticLie2;
use lie2alg::pontryagin::{check_cs5, check_gamma_consistency, GaugeMap, QuadraticSplitData};
use lie2alg::rat::Rat;
use lie2alg::report::Report;
use lie2alg::samples::{self, Sampler};
use proptest::prelude::*;

fn fiber(i: usize) -> QuadraticLie2 {
    [samples::quadratic_so3(), samples::quadratic_sl2(), samples::coadjoint_heisenberg()][i].clone()
}

fn failing(r: &Report) -> Vec<String> {
    r.failing().map(|c| format!("{}: {:?}", c.name, c.residual)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn gamma_connections_satisfy_the_structure_equations(seed in any::<u64>(), f in 0..3usize) {
        let n = 4;
        let fib = fiber(f);
        let mut s = Sampler::new(seed);
        let (a, b) = (s.form(n, 1, 3, 0.6), s.form(n, 2, 3, 0.4));
        let q = QuadraticSplitData::from_gamma_connection(&fib, &a, &b).unwrap();
        let fam = Family::new(n, 3, 3).truncate_fields(2 * n);
        let st = q.base().check_structure_equations(&fam);
        prop_assert!(st.passed(), "{:?}", failing(&st));
        let ax = q.base().check_axioms_on_sections(&fam);
        prop_assert!(ax.passed(), "{:?}", failing(&ax));
        prop_assert!(q.check_invariants().passed());
    }

    #[test]
    fn pontryagin_form_is_closed_and_primitive(seed in any::<u64>(), f in 0..3usize) {
        let n = 6;
        let fib = fiber(f);
        let mut s = Sampler::new(seed);
        let (a, b) = (s.form(n, 1, 3, 0.6), s.form(n, 2, 3, 0.4));
        let q = QuadraticSplitData::from_gamma_connection(&fib, &a, &b).unwrap();
        prop_assert!(q.check_closed().passed());
        prop_assert!(check_cs5(&fib, &a, &b).passed());
        prop_assert!(check_gamma_consistency(&fib, &a, &b).unwrap().passed());
    }

    #[test]
    fn pure_gauges_preserve_the_pairing(seed in any::<u64>(), f in 0..3usize) {
        let n = 5;
        let fib = fiber(f);
        let mut s = Sampler::new(seed);
        let (a, b, phi) = (s.form(n, 1, 3, 0.6), s.form(n, 2, 3, 0.4), s.form(n, 1, 3, 0.5));
        let r = GaugeMap::pure(&fib.lie, phi).unwrap().check_gauge(&fib, &a, &b);
        prop_assert!(r.passed(), "{:?}", failing(&r));
    }

    #[test]
    fn pairing_derivative_splits(seed in any::<u64>(), k in 0..3usize, l in 0..3usize) {
        let n = 5;
        let fib = samples::semistrict_gl2();
        let mut s = Sampler::new(seed);
        s.max_degree = 1;
        let theta = s.form(n, 1, 4, 0.5);
        let q = QuadraticSplitData::new(trivial(&fib.lie, n).shift_splitting(&theta).unwrap(), fib.pairing).unwrap();
        let (xi, pi) = (s.form(n, k, 4, 0.5), s.form(n, l, 4, 0.5));
        let sign = if k % 2 == 0 { Rat::one() } else { Rat::int(-1) };
        let rhs = q.s(&q.base().d_nabla0(&xi), &pi).add(&q.s(&xi, &q.base().d_nabla1(&pi)).scale(&sign));
        prop_assert_eq!(q.s(&xi, &pi).d(), rhs);
    }

    #[test]
    fn sigma_shifts_change_the_form_by_an_exact_term(seed in any::<u64>()) {
        let n = 6;
        let fib = samples::semistrict_gl2();
        let mut s = Sampler::new(seed);
        s.max_degree = 1;
        let theta = s.form(n, 1, 4, 0.6);
        let q = QuadraticSplitData::new(trivial(&fib.lie, n).shift_splitting(&theta).unwrap(), fib.pairing).unwrap();
        let r = q.sigma_shift_check(&s.form(n, 1, 4, 0.4)).unwrap();
        prop_assert!(r.passed(), "{:?}", failing(&r));
    }
}
