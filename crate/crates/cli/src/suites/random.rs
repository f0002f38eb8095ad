use rand::seq::SliceRandom;
use rand::Rng;

use charp::field::{Elem, FieldConfig, Polynomial, RationalFunction};
use charp::forms::{DifferentialForm, LogTermSum, Wedge};

pub fn nonzero_elem<R: Rng>(cfg: &FieldConfig, rng: &mut R) -> Elem {
    rng.gen_range(1..cfg.order()) as Elem
}

pub fn monomial_exps<R: Rng>(nvars: usize, max_deg: u32, rng: &mut R) -> Vec<u32> {
    let mut left = rng.gen_range(0..=max_deg);
    let mut order: Vec<usize> = (0..nvars).collect();
    order.shuffle(rng);
    let mut exps = vec![0; nvars];
    for i in order {
        let e = rng.gen_range(0..=left);
        exps[i] = e;
        left -= e;
    }
    exps
}

/// A polynomial with at most `max_terms` terms of total degree ≤ `max_deg`.
pub fn poly<R: Rng>(cfg: &FieldConfig, max_deg: u32, max_terms: usize, rng: &mut R) -> Polynomial {
    let mut acc = Polynomial::zero(cfg);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let exps = monomial_exps(cfg.nvars(), max_deg, rng);
        acc = acc.add(&Polynomial::monomial(cfg, exps, nonzero_elem(cfg, rng)));
    }
    acc
}

pub fn nonzero_poly<R: Rng>(cfg: &FieldConfig, max_deg: u32, max_terms: usize, rng: &mut R) -> Polynomial {
    loop {
        let p = poly(cfg, max_deg, max_terms, rng);
        if !p.is_zero() {
            return p;
        }
    }
}

/// `num/den` with both degrees ≤ `max_deg`.
pub fn rational<R: Rng>(cfg: &FieldConfig, max_deg: u32, max_terms: usize, rng: &mut R) -> RationalFunction {
    let num = poly(cfg, max_deg, max_terms, rng);
    let den = nonzero_poly(cfg, max_deg, max_terms, rng);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

pub fn nonzero_rational<R: Rng>(cfg: &FieldConfig, max_deg: u32, max_terms: usize, rng: &mut R) -> RationalFunction {
    loop {
        let f = rational(cfg, max_deg, max_terms, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A small coefficient: polynomial numerator over a monomial denominator.
pub fn small_coeff<R: Rng>(cfg: &FieldConfig, rng: &mut R) -> RationalFunction {
    let num = nonzero_poly(cfg, 3, 2, rng);
    let den = if rng.gen_bool(0.5) {
        Polynomial::monomial(cfg, monomial_exps(cfg.nvars(), 2, rng), 1)
    } else {
        Polynomial::one(cfg)
    };
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// A nonzero Laurent monomial `c·x^e` with exponents in `-max..=max`.
pub fn laurent_monomial<R: Rng>(cfg: &FieldConfig, max: i64, rng: &mut R) -> RationalFunction {
    let exps: Vec<i64> = (0..cfg.nvars()).map(|_| rng.gen_range(-max..=max)).collect();
    RationalFunction::laurent_monomial(cfg, &exps, nonzero_elem(cfg, rng))
}

pub fn wedge<R: Rng>(nvars: usize, degree: usize, rng: &mut R) -> Wedge {
    let mut idx: Vec<usize> = (0..nvars).collect();
    idx.shuffle(rng);
    idx.truncate(degree);
    idx.sort_unstable();
    Wedge::from_indices(&idx)
}

/// A sum of one to three terms `c dx_I` with small coefficients.
pub fn form<R: Rng>(cfg: &FieldConfig, degree: usize, rng: &mut R) -> DifferentialForm {
    let mut acc = DifferentialForm::zero(cfg, degree);
    if degree > cfg.nvars() {
        return acc;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let w = wedge(cfg.nvars(), degree, rng);
        acc = acc.add(&DifferentialForm::monomial(small_coeff(cfg, rng), w));
    }
    acc
}

/// `Σ a dlog b_1 ∧ ... ∧ dlog b_n` with monomial arguments.
pub fn log_sum<R: Rng>(cfg: &FieldConfig, degree: usize, rng: &mut R) -> LogTermSum {
    let mut s = LogTermSum::new(cfg, degree);
    for _ in 0..rng.gen_range(1..=2) {
        let args = (0..degree).map(|_| laurent_monomial(cfg, 2, rng)).collect();
        s.push(small_coeff(cfg, rng), args).expect("arguments are nonzero");
    }
    s
}

pub fn config(p: u32, nvars: usize) -> FieldConfig {
    let names: Vec<String> = ["x", "y", "z", "w"].iter().take(nvars).map(|s| s.to_string()).collect();
    FieldConfig::prime(p, &names).expect("valid configuration")
}
