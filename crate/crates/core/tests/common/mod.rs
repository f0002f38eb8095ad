#![allow(dead_code)]

use proptest::array::uniform3;
use proptest::collection::vec;
use proptest::prelude::*;

use charp::field::{FieldConfig, Monomial, Polynomial, RationalFunction};
use charp::forms::{DifferentialForm, LogTermSum, Wedge};
use charp::laurent::{LaurentClass, LaurentField};

pub type RawPoly = Vec<([u32; 3], u32)>;
pub type RawRat = (RawPoly, RawPoly);

pub const NAMES: [&str; 3] = ["x", "y", "z"];

pub fn config(p: u32, nvars: usize) -> FieldConfig {
    FieldConfig::prime(p, &NAMES[..nvars]).unwrap()
}

pub fn raw_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    vec((uniform3(0..=max_deg), 1u32..64), 0..=max_terms)
}

pub fn raw_rat(max_deg: u32, max_terms: usize) -> impl Strategy<Value = RawRat> {
    (raw_poly(max_deg, max_terms), raw_poly(max_deg, max_terms))
}

pub fn poly(cfg: &FieldConfig, raw: &RawPoly) -> Polynomial {
    let n = cfg.nvars();
    let q = cfg.order();
    Polynomial::from_terms(cfg, raw.iter().map(|(e, c)| (Monomial::new(e[..n].to_vec()), c % q)))
}

/// Zero denominators are replaced by 1.
pub fn rat(cfg: &FieldConfig, (num, den): &RawRat) -> RationalFunction {
    let d = poly(cfg, den);
    let d = if d.is_zero() { Polynomial::one(cfg) } else { d };
    RationalFunction::new(poly(cfg, num), d).unwrap()
}

pub fn nonzero_rat(cfg: &FieldConfig, raw: &RawRat) -> RationalFunction {
    let f = rat(cfg, raw);
    if f.is_zero() {
        RationalFunction::one(cfg)
    } else {
        f
    }
}

pub fn wedges(nvars: usize, degree: usize) -> Vec<Wedge> {
    (0u64..1 << nvars)
        .map(Wedge::from_bits)
        .filter(|w| w.degree() == degree)
        .collect()
}

/// A degree-`degree` form whose coefficients are taken from `raws` in turn.
pub fn form(cfg: &FieldConfig, degree: usize, raws: &[RawRat]) -> DifferentialForm {
    let terms = wedges(cfg.nvars(), degree)
        .into_iter()
        .zip(raws.iter().cycle())
        .map(|(w, r)| (w, rat(cfg, r)));
    DifferentialForm::from_terms(cfg, degree, terms)
}

pub fn raw_form() -> impl Strategy<Value = Vec<RawRat>> {
    vec(raw_rat(2, 2), 1..=3)
}

/// Laurent monomial `c·x^a` with exponents in `-2..=2`.
pub fn monomial(cfg: &FieldConfig, exps: &[i64; 3], c: u32) -> RationalFunction {
    let q = cfg.order();
    RationalFunction::laurent_monomial(cfg, &exps[..cfg.nvars()], 1 + c % (q - 1))
}

pub fn raw_monomial() -> impl Strategy<Value = ([i64; 3], u32)> {
    (uniform3(-2i64..=2), 0u32..64)
}

pub fn laurent_field(p: u32) -> LaurentField {
    LaurentField::new(&config(p, 2), "pi").unwrap()
}

/// Raw data for one component `ω/π^k + ν/π^k ∧ dπ/π`.
pub type RawComponent = (u64, Vec<RawRat>, Vec<RawRat>);

pub fn raw_component(max_pole: u64) -> impl Strategy<Value = RawComponent> {
    (0..=max_pole, vec(raw_rat(2, 2), 1..=2), vec(raw_rat(2, 2), 1..=2))
}

pub fn class(field: &LaurentField, n: usize, comps: &[RawComponent]) -> LaurentClass {
    let base = field.base();
    let mut f = LaurentClass::zero(field, n);
    for (k, w, v) in comps {
        let omega = form(base, n, w);
        let nu = if n > 0 { form(base, n - 1, v) } else { f.zero_nu() };
        f.add_component(*k, &omega, &nu).unwrap();
    }
    f
}

/// Raw data for a cohomologically trivial presentation at pole `k ≥ 1`.
pub type RawJunk = (u64, bool, Vec<RawRat>, RawRat, Vec<([i64; 3], u32)>);

pub fn raw_junk() -> impl Strategy<Value = RawJunk> {
    (1u64..=6, any::<bool>(), vec(raw_rat(2, 2), 1..=2), raw_rat(2, 2), vec(raw_monomial(), 3))
}

/// Either `d(ξ/π^k)` or `℘(a/π^k · dlog b_1 ∧ ... ∧ dlog b_n)`, as a form over
/// the extended configuration.
pub fn junk(field: &LaurentField, n: usize, (k, exact, xi, a, bs): &RawJunk) -> DifferentialForm {
    let base = field.base();
    let ext = field.ext();
    let pole = field.pi_pow(-(*k as i64));
    if *exact && n > 0 {
        let xi = form(base, n - 1, xi).transfer(ext).unwrap().scale(&pole);
        return xi.d();
    }
    let a = rat(base, a).transfer(ext).unwrap().mul(&pole);
    let args: Vec<RationalFunction> = bs[..n]
        .iter()
        .map(|(e, c)| monomial(base, e, *c).transfer(ext).unwrap())
        .collect();
    LogTermSum::single(a, args).unwrap().artin_schreier()
}
