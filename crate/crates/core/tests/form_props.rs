mod common;

use proptest::collection::vec;
use proptest::prelude::*;

use charp::field::{FieldConfig, RationalFunction};
use charp::forms::{
    as_reduce, cartier_decompose, dlog, exact_primitive, is_exact, monomial_decompose, DifferentialForm, LogTermSum,
};

use common::*;

fn cfg_and_degree() -> impl Strategy<Value = (FieldConfig, usize)> {
    (prop_oneof![Just(2u32), Just(3)], 1usize..=3)
        .prop_flat_map(|(p, n)| (Just(config(p, n)), 0..=n))
}

fn log_sum(cfg: &FieldConfig, degree: usize, raw: &[(RawRat, Vec<([i64; 3], u32)>)]) -> LogTermSum {
    let mut s = LogTermSum::new(cfg, degree);
    for (a, bs) in raw {
        let args = bs[..degree].iter().map(|(e, c)| monomial(cfg, e, *c)).collect();
        s.push(rat(cfg, a), args).unwrap();
    }
    s
}

fn raw_log_sum() -> impl Strategy<Value = Vec<(RawRat, Vec<([i64; 3], u32)>)>> {
    vec((raw_rat(2, 2), vec(raw_monomial(), 3)), 1..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn d_squares_to_zero((cfg, k) in cfg_and_degree(), w in raw_form()) {
        let w = form(&cfg, k, &w);
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation((cfg, k) in cfg_and_degree(), w in raw_form(), v in raw_form(), l in 0usize..=3) {
        let w = form(&cfg, k, &w);
        let v = form(&cfg, l % (cfg.nvars() + 1), &v);
        let lhs = w.wedge(&v).d();
        let second = w.wedge(&v.d());
        let rhs = w.d().wedge(&v).add(&if k % 2 == 0 { second } else { second.neg() });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative((cfg, k) in cfg_and_degree(), w in raw_form(), v in raw_form(), l in 0usize..=3) {
        let l = l % (cfg.nvars() + 1);
        let w = form(&cfg, k, &w);
        let v = form(&cfg, l, &v);
        let swapped = v.wedge(&w);
        let swapped = if (k * l) % 2 == 0 { swapped } else { swapped.neg() };
        prop_assert_eq!(w.wedge(&v), swapped);
    }

    #[test]
    fn dlog_is_a_homomorphism(p in prop_oneof![Just(2u32), Just(3)], f in raw_rat(2, 2), g in raw_rat(2, 2)) {
        let cfg = config(p, 2);
        let (f, g) = (nonzero_rat(&cfg, &f), nonzero_rat(&cfg, &g));
        let lhs = dlog(&f.mul(&g)).unwrap();
        prop_assert_eq!(lhs, dlog(&f).unwrap().add(&dlog(&g).unwrap()));
        prop_assert!(dlog(&f.frobenius()).unwrap().is_zero());
        let df = DifferentialForm::scalar(f.clone()).d().scale(&f.inv().unwrap());
        prop_assert_eq!(dlog(&f).unwrap(), df);
    }

    #[test]
    fn phi_scales_coefficients_by_frobenius((cfg, k) in cfg_and_degree(), raw in raw_log_sum()) {
        let s = log_sum(&cfg, k, &raw);
        let phi = s.phi();
        prop_assert!(phi.to_form().d().is_zero());
        let mut expected = DifferentialForm::zero(&cfg, k);
        for t in s.terms() {
            let mut w = DifferentialForm::scalar(t.coeff.frobenius());
            for b in &t.args {
                w = w.wedge(&dlog(b).unwrap());
            }
            expected = expected.add(&w);
        }
        prop_assert_eq!(phi.to_form(), expected);
    }

    #[test]
    fn monomial_decomposition_reassembles((cfg, k) in cfg_and_degree(), w in raw_form()) {
        let w = form(&cfg, k, &w);
        let dec = monomial_decompose(&w);
        prop_assert_eq!(dec.reassemble(), w);
        for t in dec.terms() {
            prop_assert_eq!(t.is_closed(), t.to_form().d().is_zero());
        }
    }

    #[test]
    fn cartier_decomposition_reassembles((cfg, k) in cfg_and_degree(), raw in raw_log_sum(), xi in raw_form()) {
        let eps = log_sum(&cfg, k, &raw);
        let mu = if k == 0 {
            eps.phi().to_form()
        } else {
            eps.phi().to_form().add(&form(&cfg, k - 1, &xi).d())
        };
        let dec = cartier_decompose(&mu).unwrap();
        prop_assert_eq!(dec.reassemble(), mu.clone());
        prop_assert!(is_exact(&mu.sub(&dec.epsilon.phi().to_form())));
    }

    #[test]
    fn exact_forms_have_primitives((cfg, k) in cfg_and_degree(), xi in raw_form()) {
        prop_assume!(k > 0);
        let w = form(&cfg, k - 1, &xi).d();
        let prim = exact_primitive(&w);
        prop_assert!(prim.is_some());
        prop_assert_eq!(prim.unwrap().d(), w);
    }

    #[test]
    fn artin_schreier_reduction_is_a_class_invariant(
        p in prop_oneof![Just(2u32), Just(3)],
        f in raw_rat(2, 2),
        g in raw_rat(2, 2),
    ) {
        let cfg = FieldConfig::prime(p, &["t"]).unwrap();
        let f = rat(&cfg, &f);
        let g = rat(&cfg, &g);
        let wp = g.frobenius().sub(&g);
        let a = as_reduce(&f).unwrap();
        let b = as_reduce(&f.add(&wp)).unwrap();
        prop_assert!(a.verify(&f));
        prop_assert_eq!(a.trivial, a.representative.is_zero());
        prop_assert_eq!(a.trivial, b.trivial);
        prop_assert!(as_reduce(&wp).unwrap().trivial);
        for (_, order) in &a.pole_data {
            prop_assert!(order % p != 0);
        }
    }
}

#[test]
fn harmonic_monomials_are_not_exact() {
    for p in [2u32, 3] {
        let cfg = config(p, 2);
        let x = RationalFunction::var(&cfg, 0);
        let y = RationalFunction::var(&cfg, 1);
        let top = DifferentialForm::dx(&cfg, 0).wedge(&DifferentialForm::dx(&cfg, 1));
        let w = top.scale(&x.mul(&y).pow(p as i64 - 1).unwrap());
        assert!(w.d().is_zero());
        assert!(!is_exact(&w));
        assert!(is_exact(&top.scale(&x)));
    }
}
