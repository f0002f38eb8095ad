//! Fixed inputs shared by the benchmarks.

use charp::field::{FieldConfig, RationalFunction};
use charp::forms::{DifferentialForm, LogTermSum};
use charp::laurent::{LaurentClass, LaurentField};

pub fn var(cfg: &FieldConfig, i: usize) -> RationalFunction {
    RationalFunction::var(cfg, i)
}

/// A pair of trivariate rational functions of moderate degree.
pub fn rational_pair(p: u32) -> (RationalFunction, RationalFunction) {
    let cfg = FieldConfig::prime(p, &["x", "y", "z"]).unwrap();
    let (x, y, z) = (var(&cfg, 0), var(&cfg, 1), var(&cfg, 2));
    let one = RationalFunction::one(&cfg);
    let f = x.pow(3).unwrap().mul(&y).add(&z.pow(2).unwrap()).add(&one);
    let g = x.mul(&y).add(&z).pow(2).unwrap().add(&x);
    let h = y.pow(2).unwrap().add(&x.mul(&z)).add(&one);
    (f.div(&h).unwrap(), g.div(&h.add(&y)).unwrap())
}

/// `Φ(ε) + dξ` with a two-term ε and a dense ξ, in degree 2 over F_p(x, y, z).
pub fn closed_form(p: u32) -> DifferentialForm {
    let cfg = FieldConfig::prime(p, &["x", "y", "z"]).unwrap();
    let (x, y, z) = (var(&cfg, 0), var(&cfg, 1), var(&cfg, 2));
    let mut eps = LogTermSum::new(&cfg, 2);
    eps.push(x.add(&y.mul(&z)), vec![x.clone(), y.clone()]).unwrap();
    eps.push(z.div(&x.add(&RationalFunction::one(&cfg))).unwrap(), vec![y.clone(), z.clone()])
        .unwrap();
    let dx = |i| DifferentialForm::dx(&cfg, i);
    let xi = dx(0)
        .scale(&y.pow(2).unwrap().mul(&z))
        .add(&dx(1).scale(&x.mul(&z).div(&y.add(&z)).unwrap()))
        .add(&dx(2).scale(&x.pow(3).unwrap()));
    eps.phi().to_form().add(&xi.d())
}

/// A degree-1 class over F_p(x, y)((π)) with poles up to `p^2`, padded with
/// ℘-images and exact forms.
pub fn laurent_class(p: u32) -> LaurentClass {
    let base = FieldConfig::prime(p, &["x", "y"]).unwrap();
    let field = LaurentField::new(&base, "pi").unwrap();
    let ext = field.ext().clone();
    let (x, y) = (var(&ext, 0), var(&ext, 1));
    let mut w = DifferentialForm::zero(&ext, 1);
    for k in 0..=(p * p) as i64 {
        let a = x.pow(k % 3 + 1).unwrap().add(&y).mul(&field.pi_pow(-k));
        let s = LogTermSum::single(a, vec![y.clone()]).unwrap();
        w = w.add(&s.artin_schreier()).add(&s.to_form());
        let xi = DifferentialForm::scalar(x.mul(&y).mul(&field.pi_pow(-k)));
        w = w.add(&xi.d());
    }
    LaurentClass::from_form(&field, &w).unwrap()
}
