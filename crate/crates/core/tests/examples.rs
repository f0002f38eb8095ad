use charp::field::{FieldConfig, RationalFunction};
use charp::forms::{cartier_decompose, dlog, DifferentialForm, LogTermSum};
use charp::laurent::{
    canonicalize, extend_scalars, filtration_level, graded_image, residues, GradedImage, LaurentClass, LaurentField,
    ValuedExtension,
};

fn field(p: u32, vars: &[&str]) -> LaurentField {
    LaurentField::new(&FieldConfig::prime(p, vars).unwrap(), "pi").unwrap()
}

fn var(cfg: &FieldConfig, name: &str) -> RationalFunction {
    RationalFunction::var_named(cfg, name).unwrap()
}

/// `a · dlog b_1 ∧ ...` over the extended configuration, read as a class.
fn class(k: &LaurentField, terms: &[(RationalFunction, Vec<RationalFunction>)]) -> LaurentClass {
    let n = terms[0].1.len();
    let mut s = LogTermSum::new(k.ext(), n);
    for (a, bs) in terms {
        s.push(a.clone(), bs.clone()).unwrap();
    }
    LaurentClass::from_log_terms(k, &s).unwrap()
}

#[test]
fn cartier_of_x_squared_dx() {
    let cfg = FieldConfig::prime(3, &["x"]).unwrap();
    let x = RationalFunction::var(&cfg, 0);
    let mu = DifferentialForm::dx(&cfg, 0).scale(&x.pow(2).unwrap());
    let dec = cartier_decompose(&mu).unwrap();
    assert_eq!(dec.epsilon.to_string(), "x*dlog(x)");
    assert!(dec.xi.is_zero());
    assert_eq!(dec.reassemble(), mu);
}

#[test]
fn pole_two_descends_to_pole_one_in_char_two() {
    let k = field(2, &["x", "y"]);
    let e = k.ext();
    let (x, y) = (var(e, "x"), var(e, "y"));
    let f = class(&k, &[(x.pow(2).unwrap().mul(&k.pi_pow(-2)), vec![y.clone()])]);
    let (dec, cert) = canonicalize(&f);
    assert!(dec.h0_omega.is_zero() && dec.h0_nu.is_zero());
    assert_eq!(dec.higher.keys().copied().collect::<Vec<_>>(), vec![1]);
    let alpha = dec.higher[&1].clone().into_alpha().unwrap();
    assert_eq!(alpha.terms().len(), 1);
    let t = &alpha.terms()[0];
    assert_eq!(t.exps.entries(), &[1, 1]);
    assert_eq!(t.coeff, var(k.base(), "y").inv().unwrap());
    assert_eq!(cert.wp.len(), 1);
    assert_eq!(cert.wp[0].to_string(), "x/pi*dlog(y)");
    assert!(cert.verify(&f, &dec.reassemble()));
    assert_eq!(filtration_level(&f), 1);
}

#[test]
fn artin_schreier_images_vanish() {
    let k = field(2, &["x", "y"]);
    let e = k.ext();
    let (x, y) = (var(e, "x"), var(e, "y"));
    let f = class(
        &k,
        &[
            (x.clone(), vec![y.clone()]),
            (x.pow(2).unwrap().mul(&k.pi_pow(-2)), vec![y.clone()]),
            (x.mul(&k.pi_pow(-1)).neg(), vec![y.clone()]),
        ],
    );
    let (dec, _) = canonicalize(&f);
    assert!(dec.in_u0());
    assert_eq!(dec.h0_omega.to_string(), "x*dlog(y)");
    assert!(dec.h0_nu.is_zero());
    assert_eq!(filtration_level(&f), 0);
}

#[test]
fn residues_read_off_both_slots() {
    let k = field(2, &["x", "y", "z"]);
    let e = k.ext();
    let (x, y, z, pi) = (var(e, "x"), var(e, "y"), var(e, "z"), var(e, "pi"));
    let f = class(&k, &[(x.clone(), vec![y.clone()]), (z.clone(), vec![pi.clone()])]);
    let (d1, d2) = residues(&f).unwrap();
    assert_eq!(d1.to_string(), "x*dlog(y)");
    assert_eq!(d2.to_string(), "z");

    let g = class(&k, &[(x.clone(), vec![y.clone(), pi.clone()])]);
    let (d1, d2) = residues(&g).unwrap();
    assert!(d1.is_zero());
    assert_eq!(d2.to_string(), "x*dlog(y)");

    let h = class(&k, &[(x.mul(&k.pi_pow(-1)), vec![y])]);
    assert!(residues(&h).is_err());
}

#[test]
fn graded_images() {
    let k = field(2, &["x", "y"]);
    let e = k.ext();
    let (x, y) = (var(e, "x"), var(e, "y"));
    let f = class(&k, &[(x.mul(&k.pi_pow(-1)), vec![y.clone()])]);
    let GradedImage::Omega(w) = graded_image(&f, 1).unwrap() else {
        panic!("level 1 is prime to p");
    };
    assert_eq!(w.to_string(), "x*dlog(y)");
    assert!(graded_image(&f, 0).is_err());

    let g = class(&k, &[(x.clone(), vec![y.clone()])]);
    let GradedImage::Residues(a, b) = graded_image(&g, 0).unwrap() else {
        panic!("level 0");
    };
    assert_eq!(a.to_string(), "x*dlog(y)");
    assert!(b.is_zero());
    assert!(graded_image(&g, 5).unwrap().is_zero());
    assert!(graded_image(&g, 4).unwrap().is_zero());
}

#[test]
fn pullbacks() {
    let src = LaurentField::new(&FieldConfig::prime(2, &["x", "y", "z"]).unwrap(), "tau").unwrap();
    let tgt = field(2, &["x", "y", "z"]);
    let e = src.ext();
    let (x, z, tau) = (var(e, "x"), var(e, "z"), var(e, "tau"));
    let f = class(&src, &[(x.mul(&src.pi_pow(-1)), vec![z.clone()]), (x.clone(), vec![tau.clone()])]);

    let one = RationalFunction::one(tgt.base());
    let id = ValuedExtension::new(&src, &tgt, 1, one).unwrap();
    let g = extend_scalars(&f, &id).unwrap();
    assert_eq!(g.to_string(), f.to_string().replace("tau", "pi"));

    let y = var(tgt.base(), "y");
    let ext = ValuedExtension::new(&src, &tgt, 1, y.clone()).unwrap();
    let g = extend_scalars(&f, &ext).unwrap();
    let GradedImage::Omega(w) = graded_image(&g, 1).unwrap() else {
        panic!("level 1 is prime to p");
    };
    assert_eq!(w.to_string(), "x/y*dlog(z)");

    let u = var(tgt.base(), "y").add(&RationalFunction::one(tgt.base()));
    let ext = ValuedExtension::new(&src, &tgt, 3, u.clone()).unwrap();
    let h = class(&src, &[(x.clone(), vec![tau])]);
    let (a, b) = residues(&extend_scalars(&h, &ext).unwrap()).unwrap();
    let xb = DifferentialForm::scalar(var(tgt.base(), "x"));
    assert_eq!(a, xb.wedge(&dlog(&u).unwrap()));
    assert_eq!(b, xb.scale(&RationalFunction::from_int(tgt.base(), 3)));
}
