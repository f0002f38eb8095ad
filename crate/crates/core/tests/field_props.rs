mod common;

use proptest::prelude::*;

use charp::field::{kp_expand_standard, FieldConfig, MultiIndex, RationalFunction};

use common::*;

fn any_config() -> impl Strategy<Value = FieldConfig> {
    (prop_oneof![Just((2u32, 1u32)), Just((3, 1)), Just((5, 1)), Just((2, 2))], 1usize..=3)
        .prop_map(|((p, e), n)| FieldConfig::new(p, e, &NAMES[..n]).unwrap())
}

fn monomial_power(cfg: &FieldConfig, e: &MultiIndex) -> RationalFunction {
    let mut out = RationalFunction::one(cfg);
    for (i, &k) in e.entries().iter().enumerate() {
        out = out.mul(&RationalFunction::var(cfg, i).pow(k as i64).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pth_root_inverts_frobenius(cfg in any_config(), f in raw_rat(4, 3)) {
        let f = rat(&cfg, &f);
        let fp = f.frobenius();
        prop_assert!(fp.is_pth_power());
        prop_assert_eq!(fp.pth_root().unwrap(), f);
    }

    #[test]
    fn kp_expansion_reassembles(cfg in any_config(), f in raw_rat(4, 3)) {
        let f = rat(&cfg, &f);
        let coords = kp_expand_standard(&f);
        let mut acc = RationalFunction::zero(&cfg);
        for (e, c) in &coords {
            prop_assert!(!c.is_zero());
            acc = acc.add(&c.frobenius().mul(&monomial_power(&cfg, e)));
        }
        prop_assert_eq!(acc, f);
    }

    #[test]
    fn pth_powers_are_exactly_the_constants_of_d(cfg in any_config(), f in raw_rat(4, 3), power in any::<bool>()) {
        let f = rat(&cfg, &f);
        let f = if power { f.frobenius() } else { f };
        let flat = (0..cfg.nvars()).all(|i| f.partial(i).is_zero());
        let coords = kp_expand_standard(&f);
        let only_zero = coords.keys().all(MultiIndex::is_zero);
        prop_assert_eq!(f.is_pth_power(), flat);
        prop_assert_eq!(flat, only_zero);
    }

    #[test]
    fn partials_obey_leibniz(cfg in any_config(), f in raw_rat(3, 3), g in raw_rat(3, 3), i in 0usize..3) {
        let i = i % cfg.nvars();
        let (f, g) = (rat(&cfg, &f), rat(&cfg, &g));
        let lhs = f.mul(&g).partial(i);
        let rhs = f.mul(&g.partial(i)).add(&g.mul(&f.partial(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn equal_functions_have_equal_representations(cfg in any_config(), f in raw_rat(3, 3), h in raw_rat(2, 2)) {
        let f = rat(&cfg, &f);
        let h = nonzero_rat(&cfg, &h);
        let g = f.mul(&h).div(&h).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(
            f.numerator().mul(g.denominator()),
            g.numerator().mul(f.denominator())
        );
        prop_assert!(f.denominator().leading_coefficient() == 1);
    }

    #[test]
    fn field_axioms(cfg in any_config(), f in raw_rat(3, 2), g in raw_rat(3, 2), h in raw_rat(3, 2)) {
        let (f, g, h) = (rat(&cfg, &f), rat(&cfg, &g), rat(&cfg, &h));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.add(&g).frobenius(), f.frobenius().add(&g.frobenius()));
        if !f.is_zero() {
            prop_assert!(f.mul(&f.inv().unwrap()).is_one());
        }
    }
}
