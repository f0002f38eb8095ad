use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use charp::field::{FieldConfig, RationalFunction};
use charp::laurent::{LaurentClass, LaurentField};
use charp::symbols::MilnorSymbol;
use charp_cli::parse::{parse_form, parse_scalar, parse_symbol};
use charp_cli::suites::random;

fn fields() -> Vec<FieldConfig> {
    vec![
        random::config(2, 3),
        random::config(3, 2),
        random::config(5, 2),
        FieldConfig::new(2, 2, &["x", "y"]).unwrap(),
        FieldConfig::new(3, 2, &["x", "y", "z"]).unwrap(),
    ]
}

#[test]
fn scalars_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for cfg in fields() {
        for _ in 0..200 {
            let f = random::rational(&cfg, 3, 3, &mut rng);
            let text = f.to_string();
            let back = parse_scalar(&text, &cfg).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(back, f, "{text}");
            assert_eq!(back.to_string(), text);
        }
    }
}

#[test]
fn forms_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for cfg in fields() {
        for _ in 0..200 {
            let deg = rng.gen_range(0..=cfg.nvars());
            let w = random::form(&cfg, deg, &mut rng);
            let text = w.to_string();
            let back = parse_form(&text, &cfg).unwrap_or_else(|e| panic!("{text}: {e}"));
            if w.is_zero() {
                assert!(back.is_zero());
                continue;
            }
            assert_eq!(back, w, "{text}");
            assert_eq!(back.to_string(), text);
        }
    }
}

#[test]
fn log_sums_parse_to_their_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for cfg in fields() {
        for _ in 0..100 {
            let deg = rng.gen_range(0..=2);
            let s = random::log_sum(&cfg, deg, &mut rng);
            let text = s.to_string();
            let back = parse_form(&text, &cfg).unwrap_or_else(|e| panic!("{text}: {e}"));
            let want = s.to_form();
            if want.is_zero() {
                assert!(back.is_zero(), "{text}");
            } else {
                assert_eq!(back, want, "{text}");
            }
        }
    }
}

#[test]
fn classes_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [2, 3] {
        let base = random::config(p, 2);
        let field = LaurentField::new(&base, "pi").unwrap();
        for _ in 0..100 {
            let n = rng.gen_range(0..=2);
            let mut f = LaurentClass::zero(&field, n);
            for k in 0..4u64 {
                if rng.gen_bool(0.5) {
                    let omega = random::form(&base, n, &mut rng);
                    let nu = if n > 0 { random::form(&base, n - 1, &mut rng) } else { f.zero_nu() };
                    f.add_component(k, &omega, &nu).unwrap();
                }
            }
            let text = f.to_string();
            let w = parse_form(&text, field.ext()).unwrap_or_else(|e| panic!("{text}: {e}"));
            if f.is_zero() {
                assert!(w.is_zero());
                continue;
            }
            let back = LaurentClass::from_form(&field, &w).unwrap();
            assert_eq!(back, f, "{text}");
            assert_eq!(back.to_string(), text);
        }
    }
}

#[test]
fn symbols_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = FieldConfig::prime(3, &["x1", "y11", "y12", "t"]).unwrap();
    for _ in 0..200 {
        let len = rng.gen_range(1..=3);
        let mut s = MilnorSymbol::zero(&cfg, len);
        for _ in 0..rng.gen_range(1..=3) {
            let entries: Vec<RationalFunction> = (0..len).map(|_| random::laurent_monomial(&cfg, 2, &mut rng)).collect();
            s.push(rng.gen_range(-3..=3), entries).unwrap();
        }
        if s.is_zero() {
            continue;
        }
        let text = s.to_string();
        let back = parse_symbol(&text, &cfg).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert!(back.same_sum(&s), "{text} reparsed as {back}");
        assert_eq!(back.to_string(), text);
    }
}
