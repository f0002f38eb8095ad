use rand::Rng;
use rand_chacha::ChaCha8Rng;

use charp::field::{FieldConfig, RationalFunction};
use charp::forms::{is_exact, DifferentialForm, LogTermSum};
use charp::laurent::{
    coexact_projection, extend_scalars, graded_image, psi_residues, psi_split, psi_split_literal, psi_unramified,
    residues, GradedImage, LaurentClass, LaurentField, ValuedExtension,
};

use super::random;
use super::{run_cases, CaseOutcome, SuiteOptions, SuiteOutcome};

/// N^{-1} mod p as an integer in 1..p.
fn inv_mod(n: i64, p: i64) -> i64 {
    let r = n.rem_euclid(p);
    (1..p).find(|k| k * r % p == 1).expect("p ∤ N")
}

pub fn eq_rewrite(opts: &SuiteOptions) -> SuiteOutcome {
    let cases = run_cases(opts.trials_or(100), opts.seed, |i, rng| {
        let p = [2u32, 3][i % 2];
        let base = random::config(p, rng.gen_range(2..=3));
        let field = LaurentField::new(&base, "pi").expect("field");
        let ext = field.ext();
        let deg = rng.gen_range(0..base.nvars());
        let omega = random::form(&base, deg, rng);
        let big_n = loop {
            let k = rng.gen_range(1..=12i64);
            if k % p as i64 != 0 {
                break k;
            }
        };
        let c = RationalFunction::from_int(ext, inv_mod(big_n, p as i64));
        let w = omega.transfer(ext).expect("embeds");
        let pole = field.pi_pow(-big_n);
        let lhs = w.scale(&pole).wedge(&field.dlog_pi());
        let sign = if deg % 2 == 1 { c.neg() } else { c.clone() };
        let ok = is_exact(&lhs.sub(&w.d().scale(&pole.mul(&sign))));
        let unsigned_ok = is_exact(&lhs.sub(&w.d().scale(&pole.mul(&c))));
        CaseOutcome::new(
            i,
            format!("p={p} N={big_n} deg ω={deg} ω={omega}"),
            ok,
            format!("signed difference exact: {ok}; unsigned difference exact: {unsigned_ok}"),
        )
    });
    let unsigned_fail = cases.iter().filter(|c| c.detail.ends_with("unsigned difference exact: false")).count();
    let n = cases.len();
    SuiteOutcome {
        name: "eq-rewrite",
        cases,
        notes: vec![format!(
            "without the (−1)^deg ω sign, {unsigned_fail} of {n} differences are not exact"
        )],
    }
}

fn base_form(cfg: &FieldConfig, degree: usize, rng: &mut ChaCha8Rng) -> DifferentialForm {
    if degree > cfg.nvars() {
        DifferentialForm::zero(cfg, degree)
    } else {
        random::form(cfg, degree, rng)
    }
}

/// A class with random components at the given poles.
fn random_class(field: &LaurentField, n: usize, poles: &[u64], rng: &mut ChaCha8Rng) -> LaurentClass {
    let mut f = LaurentClass::zero(field, n);
    for &k in poles {
        let omega = base_form(field.base(), n, rng);
        let nu = if n > 0 { base_form(field.base(), n - 1, rng) } else { f.zero_nu() };
        f.add_component(k, &omega, &nu).expect("degrees match");
    }
    f
}

/// A trivial class: exact forms d(ξ π^{-k}) and ℘-images ℘(a π^{-k} dlog b)
/// at poles 1..=6.
fn junk(field: &LaurentField, n: usize, rng: &mut ChaCha8Rng) -> LaurentClass {
    let base = field.base();
    let ext = field.ext();
    let mut acc = DifferentialForm::zero(ext, n);
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(1..=6i64);
        let pole = field.pi_pow(-k);
        if n > 0 && rng.gen_bool(0.5) {
            let mut xi = base_form(base, n - 1, rng).transfer(ext).expect("embeds");
            if n >= 2 && rng.gen_bool(0.5) {
                let xi2 = base_form(base, n - 2, rng).transfer(ext).expect("embeds");
                xi = xi.add(&xi2.wedge(&field.dlog_pi()));
            }
            acc = acc.add(&xi.scale(&pole).d());
        } else {
            let mut s = LogTermSum::new(ext, n);
            let a = random::small_coeff(base, rng).transfer(ext).expect("embeds").mul(&pole);
            let mut args: Vec<RationalFunction> = (0..n)
                .map(|_| random::laurent_monomial(base, 2, rng).transfer(ext).expect("embeds"))
                .collect();
            if n > 0 && rng.gen_bool(0.5) {
                let slot = rng.gen_range(0..n);
                args[slot] = RationalFunction::var(ext, field.pi_index());
            }
            s.push(a, args).expect("nonzero arguments");
            acc = acc.add(&s.artin_schreier());
        }
    }
    LaurentClass::from_form(field, &acc).expect("Laurent polynomial in π")
}

pub fn canonical_h0(opts: &SuiteOptions) -> SuiteOutcome {
    let cases = run_cases(opts.trials_or(200), opts.seed, |i, rng| {
        let p = [2u32, 3][i % 2];
        let base = random::config(p, 2);
        let field = LaurentField::new(&base, "pi").expect("field");
        let n = rng.gen_range(0..=2);
        let g = random_class(&field, n, &[0], rng);
        let total = g.add(&junk(&field, n, rng)).expect("same field");
        let label = format!("p={p} n={n} f={total}");
        let (w0, v0) = match g.component(0) {
            Some(c) => (c.omega.clone(), c.nu.clone()),
            None => (g.zero_omega(), g.zero_nu()),
        };
        match residues(&total) {
            Ok((d1, d2)) => {
                let ok = d1 == w0 && d2 == v0;
                CaseOutcome::new(i, label, ok, format!("∂₁ = {d1}, ∂₂ = {d2}; expected {w0}, {v0}"))
            }
            Err(e) => CaseOutcome::new(i, label, false, e.to_string()),
        }
    });
    SuiteOutcome {
        name: "canonical-h0",
        cases,
        notes: vec![],
    }
}

fn ramification(p: u32, coprime: bool, rng: &mut ChaCha8Rng) -> u32 {
    loop {
        let e = rng.gen_range(1..=4);
        if !coprime || e % p != 0 {
            return e;
        }
    }
}

/// Source field over (x, y), target field over (x, y) or (x, y, z), and a
/// random extension between them.
fn random_extension(p: u32, e: u32, rng: &mut ChaCha8Rng) -> ValuedExtension {
    let src = random::config(p, 2);
    let tgt = if rng.gen_bool(0.5) { src.clone() } else { random::config(p, 3) };
    let source = LaurentField::new(&src, "pi").expect("field");
    let target = LaurentField::new(&tgt, "rho").expect("field");
    let u = if rng.gen_bool(0.5) {
        random::laurent_monomial(&tgt, 2, rng)
    } else {
        random::nonzero_rational(&tgt, 1, 2, rng)
    };
    ValuedExtension::new(&source, &target, e, u).expect("valid extension")
}

fn proj_eq(a: &DifferentialForm, b: &DifferentialForm) -> bool {
    coexact_projection(a) == coexact_projection(b)
}

fn psi_case(i: usize, rng: &mut ChaCha8Rng) -> CaseOutcome {
    let p = [2u32, 3][i % 2];
    let kind = i % 3;
    let n = rng.gen_range(0..=2);
    let (m, e) = match kind {
        0 => {
            let e = ramification(p, true, rng);
            let m = loop {
                let m = rng.gen_range(1..=6u64);
                if m % p as u64 != 0 {
                    break m;
                }
            };
            (m, e)
        }
        1 => (p as u64 * rng.gen_range(1..=2), ramification(p, false, rng)),
        _ => (0, ramification(p, false, rng)),
    };
    let ext = random_extension(p, e, rng);
    let field = ext.source.clone();
    let lower: Vec<u64> = (0..m).filter(|_| rng.gen_bool(0.4)).collect();
    let mut poles = lower;
    poles.push(m);
    let f = random_class(&field, n, &poles, rng)
        .add(&junk(&field, n, rng))
        .expect("same field");
    let label = format!("p={p} n={n} m={m} e={e} u={} f={f}", ext.u);
    let run = || -> charp::Result<(bool, String)> {
        let img = graded_image(&f, m)?;
        let out = graded_image(&extend_scalars(&f, &ext)?, e as u64 * m)?;
        Ok(match (img, out) {
            (GradedImage::Omega(a), GradedImage::Omega(b)) => {
                let want = psi_unramified(&ext, m, &a)?;
                (b == want, format!("got {b}, ψ gives {want}"))
            }
            (GradedImage::Pair(a, b), GradedImage::Pair(a2, b2)) => {
                let (wa, wb) = psi_split(&ext, m, &a, &b)?;
                let ok = proj_eq(&a2, &wa) && proj_eq(&b2, &wb);
                let (la, lb) = psi_split_literal(&ext, m, &a, &b)?;
                let lit = proj_eq(&a2, &la) && proj_eq(&b2, &lb);
                (ok, format!("got ({a2}, {b2}), ψ gives ({wa}, {wb}); variant without ū^-m agrees: {lit}"))
            }
            (GradedImage::Residues(a, b), GradedImage::Residues(a2, b2)) => {
                let (wa, wb) = psi_residues(&ext, &a, &b)?;
                (a2 == wa && b2 == wb, format!("got ({a2}, {b2}), ψ gives ({wa}, {wb})"))
            }
            (x, y) => (false, format!("graded images of different kinds: {x:?} vs {y:?}")),
        })
    };
    match run() {
        Ok((ok, detail)) => CaseOutcome::new(i, label, ok, detail),
        Err(err) => CaseOutcome::new(i, label, false, err.to_string()),
    }
}

fn identity_case(i: usize, rng: &mut ChaCha8Rng) -> CaseOutcome {
    let p = [2u32, 3][i % 2];
    let base = random::config(p, 2);
    let source = LaurentField::new(&base, "pi").expect("field");
    let target = LaurentField::new(&base, "rho").expect("field");
    let one = RationalFunction::one(&base);
    let ext = ValuedExtension::new(&source, &target, 1, one).expect("valid extension");
    let n = rng.gen_range(0..=2);
    let poles: Vec<u64> = (0..5).filter(|_| rng.gen_bool(0.5)).collect();
    let f = random_class(&source, n, &poles, rng);
    let label = format!("p={p} n={n} f={f}");
    match extend_scalars(&f, &ext) {
        Ok(g) => {
            let ok = g.components() == f.components();
            CaseOutcome::new(i, label, ok, format!("image {g}"))
        }
        Err(e) => CaseOutcome::new(i, label, false, e.to_string()),
    }
}

pub fn psi_diagrams(opts: &SuiteOptions) -> SuiteOutcome {
    let n = opts.trials_or(300);
    let mut cases = run_cases(n, opts.seed, psi_case);
    let n_id = n.div_ceil(12).max(1);
    let ids = run_cases(n_id, opts.seed ^ 0x1d, identity_case);
    cases.extend(ids.into_iter().map(|mut c| {
        c.index += n;
        c
    }));
    let literal_disagrees = cases.iter().filter(|c| c.detail.ends_with("agrees: false")).count();
    let split_total = cases.iter().filter(|c| c.detail.contains("agrees:")).count();
    SuiteOutcome {
        name: "psi-diagrams",
        cases,
        notes: vec![format!(
            "p | m: the variant without ū^-m on the middle term disagrees in {literal_disagrees} of {split_total} cases"
        )],
    }
}
