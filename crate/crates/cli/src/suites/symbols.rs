use rand::Rng;
use rand_chacha::ChaCha8Rng;

use charp::field::{FieldConfig, RationalFunction};
use charp::forms::DifferentialForm;
use charp::symbols::{
    generic_residues, omega_injectivity, p_independence_test, residue_chain_certificate, restriction_zero_check,
    tame_chain as run_tame_chain, x_name, y_name, GenericSymbolSpec, MilnorSymbol,
};

use super::random;
use super::{run_cases, CaseOutcome, SuiteOptions, SuiteOutcome};

fn var(cfg: &FieldConfig, name: &str) -> RationalFunction {
    RationalFunction::var_named(cfg, name).expect("configured variable")
}

/// `x_i dy_{i,1}/y_{i,1} ∧ ... ∧ dy_{i,k}/y_{i,k}`, written with dx's.
fn expected_term(cfg: &FieldConfig, i: usize, k: usize) -> DifferentialForm {
    let mut w = DifferentialForm::scalar(var(cfg, &x_name(i)));
    for j in 1..=k {
        let y = y_name(i, j);
        let inv = var(cfg, &y).inv().expect("nonzero");
        let dy = DifferentialForm::dx(cfg, cfg.index_of(&y).expect("configured"));
        w = w.wedge(&dy.scale(&inv));
    }
    w
}

fn all_shapes() -> Vec<(usize, usize, u32)> {
    let mut v = Vec::new();
    for p in [2, 3] {
        for n in 1..=3 {
            for l in 1..=3 {
                v.push((n, l, p));
            }
        }
    }
    v
}

pub fn generic_residues_suite(_opts: &SuiteOptions) -> SuiteOutcome {
    let cases = all_shapes()
        .into_iter()
        .enumerate()
        .map(|(i, (n, l, p))| {
            let label = format!("n={n} l={l} p={p}");
            let spec = GenericSymbolSpec::new(n, l, p, 1).expect("valid shape");
            let val = spec.last_valuation();
            match generic_residues(&spec, &val) {
                Ok(r) => {
                    let k1 = spec.cfg().without(&y_name(l, n)).expect("configured");
                    let mut d1 = DifferentialForm::zero(&k1, n);
                    for j in 1..l {
                        d1 = d1.add(&expected_term(&k1, j, n));
                    }
                    let d2 = expected_term(&k1, l, n - 1);
                    let ok = r.d1 == d1 && r.d2 == d2 && r.matches();
                    CaseOutcome::new(i, label, ok, format!("∂₁ = {}, ∂₂ = {}", r.d1, r.d2))
                }
                Err(e) => CaseOutcome::new(i, label, false, e.to_string()),
            }
        })
        .collect();
    SuiteOutcome {
        name: "generic-residues",
        cases,
        notes: vec![],
    }
}

pub fn residue_chain(_opts: &SuiteOptions) -> SuiteOutcome {
    let cases = all_shapes()
        .into_iter()
        .enumerate()
        .map(|(i, (n, l, p))| {
            let label = format!("n={n} l={l} p={p}");
            let spec = GenericSymbolSpec::new(n, l, p, 1).expect("valid shape");
            match residue_chain_certificate(&spec) {
                Ok(cert) => {
                    let mut ok = cert.steps.len() == n && cert.is_nontrivial();
                    for (s, j) in cert.steps.iter().zip((1..=n).rev()) {
                        ok &= s.variable == y_name(l, j);
                        ok &= s.result == expected_term(s.result.cfg(), l, j - 1);
                    }
                    let xl = x_name(l);
                    ok &= cert.terminal_input.cfg().vars() == [xl.clone()];
                    ok &= cert.terminal_input == var(cert.terminal_input.cfg(), &xl);
                    CaseOutcome::new(
                        i,
                        label,
                        ok,
                        format!(
                            "{} steps, terminal {} with representative {}",
                            cert.steps.len(),
                            cert.terminal_input,
                            cert.terminal.representative
                        ),
                    )
                }
                Err(e) => CaseOutcome::new(i, label, false, e.to_string()),
            }
        })
        .collect();
    SuiteOutcome {
        name: "residue-chain",
        cases,
        notes: vec![],
    }
}

/// `s` random p-independent monomials over a configuration with `nvars`
/// variables.
fn independent_monomials(cfg: &FieldConfig, s: usize, rng: &mut ChaCha8Rng) -> Vec<RationalFunction> {
    loop {
        let gens: Vec<RationalFunction> = (0..s).map(|_| random::laurent_monomial(cfg, 2, rng)).collect();
        if p_independence_test(&gens, cfg).expect("monomials") {
            return gens;
        }
    }
}

pub fn zero_restriction(opts: &SuiteOptions) -> SuiteOutcome {
    let mut shapes = Vec::new();
    for s in 0..=2usize {
        for n in s + 1..=3 {
            for p in [2u32, 3] {
                shapes.push((s, n, p));
            }
        }
    }
    let forms = opts.trials_or(50);
    let cases = run_cases(shapes.len(), opts.seed, |i, rng| {
        let (s, n, p) = shapes[i];
        let cfg = random::config(p, 4);
        let gens = independent_monomials(&cfg, s, rng);
        let label = format!(
            "s={s} n={n} p={p} a=[{}]",
            gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
        );
        match restriction_zero_check(&gens, n, &cfg, forms, rng) {
            Ok(r) => CaseOutcome::new(
                i,
                label,
                r.counterexamples.is_empty() && r.trials == forms,
                format!("{} forms, {} nonzero", r.trials, r.counterexamples.len()),
            ),
            Err(e) => CaseOutcome::new(i, label, false, e.to_string()),
        }
    });
    SuiteOutcome {
        name: "zero-restriction",
        cases,
        notes: vec![],
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn omega_injectivity_suite(opts: &SuiteOptions) -> SuiteOutcome {
    let cases = run_cases(opts.trials_or(24), opts.seed, |i, rng| {
        let p = [2u32, 3][i % 2];
        let cfg = random::config(p, 3);
        let big = independent_monomials(&cfg, 3, rng);
        let small = rng.gen_range(1..=3);
        let n = rng.gen_range(0..=small);
        let label = format!(
            "p={p} r={small} n={n} basis=[{}]",
            big.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
        );
        match omega_injectivity(small, &big, n) {
            Ok(r) => {
                let want = binomial(small, n) * (p as usize).pow(small as u32);
                CaseOutcome::new(
                    i,
                    label,
                    r.passed() && r.basis_size == want,
                    format!("{} basis forms (expected {want}), nonzero: {}, distinct: {}", r.basis_size, r.all_nonzero, r.all_distinct),
                )
            }
            Err(e) => CaseOutcome::new(i, label, false, e.to_string()),
        }
    });
    SuiteOutcome {
        name: "omega-injectivity",
        cases,
        notes: vec![],
    }
}

pub fn tame_chain(opts: &SuiteOptions) -> SuiteOutcome {
    let mut shapes = Vec::new();
    for p in [2u32, 3] {
        for n in 1..=3usize {
            for e in 1..=3u32 {
                if e % p != 0 {
                    shapes.push((n, e, p));
                }
            }
        }
    }
    let cases = run_cases(shapes.len(), opts.seed, |i, rng| {
        let (n, e, p) = shapes[i];
        let names: Vec<String> = std::iter::once(x_name(1)).chain((1..=n).map(|j| y_name(1, j))).collect();
        let cfg = FieldConfig::prime(p, &names).expect("valid names");
        let entries: Vec<RationalFunction> = names.iter().map(|v| var(&cfg, v)).collect();
        let xi = MilnorSymbol::single(&cfg, entries).expect("monomial entries");
        // y_{1,j} = u_j π^e with u_j a monomial in x_1.
        let steps: Vec<(String, u32, RationalFunction)> = (1..=n)
            .rev()
            .map(|j| {
                let mut exps = vec![0i64; cfg.nvars()];
                exps[0] = rng.gen_range(-2..=2);
                (y_name(1, j), e, RationalFunction::laurent_monomial(&cfg, &exps, 1))
            })
            .collect();
        let label = format!("n={n} e={e} p={p}");
        match run_tame_chain(&xi, &steps, "pi") {
            Ok(out) => {
                let mut ok = out.len() == n && out.iter().all(|s| s.matches());
                // Slot j carries y_{1,j}; dropping it costs (−1)^j e.
                let mut coeff = 1i64;
                let mut detail = Vec::new();
                for (s, j) in out.iter().zip((1..=n).rev()) {
                    coeff *= if j % 2 == 1 { -(e as i64) } else { e as i64 };
                    let mut want = MilnorSymbol::zero(s.result.cfg(), j);
                    let rest: Vec<RationalFunction> =
                        s.result.cfg().vars().iter().map(|v| var(s.result.cfg(), v)).collect();
                    want.push(coeff, rest).expect("monomials");
                    ok &= s.result.same_sum(&want);
                    detail.push(format!("{} → {}", s.variable, s.result));
                }
                CaseOutcome::new(i, label, ok, detail.join("; "))
            }
            Err(err) => CaseOutcome::new(i, label, false, err.to_string()),
        }
    });
    SuiteOutcome {
        name: "tame-chain",
        cases,
        notes: vec![],
    }
}
