use std::collections::{BTreeMap, HashSet};

use rand::Rng;

use charp::field::{kp_expand_standard, FieldConfig, Polynomial, RationalFunction};
use charp::forms::{as_reduce, cartier_decompose, is_exact, DifferentialForm, Wedge};

use super::random;
use super::{run_cases, CaseOutcome, SuiteOptions, SuiteOutcome};

pub fn kp_roundtrip(opts: &SuiteOptions) -> SuiteOutcome {
    let cases = run_cases(opts.trials_or(500), opts.seed, |i, rng| {
        let p = [2, 3][i % 2];
        let cfg = random::config(p, rng.gen_range(1..=3));
        let f = random::rational(&cfg, 4, 3, rng);
        let label = format!("p={p} f={f}");
        let fp = f.pow(p as i64).expect("f^p");
        let root_ok = fp.pth_root().map(|r| r == f).unwrap_or(false);
        // Σ f_e^p x^e, assembled by plain multiplication.
        let mut sum = RationalFunction::zero(&cfg);
        for (e, c) in kp_expand_standard(&f) {
            let exps: Vec<i64> = e.entries().iter().map(|&k| k as i64).collect();
            let mono = RationalFunction::laurent_monomial(&cfg, &exps, 1);
            sum = sum.add(&c.pow(p as i64).expect("c^p").mul(&mono));
        }
        let sum_ok = sum == f;
        CaseOutcome::new(
            i,
            label,
            root_ok && sum_ok,
            format!("pth_root(f^p) = f: {root_ok}; Σ f_e^p x^e = f: {sum_ok}"),
        )
    });
    SuiteOutcome {
        name: "kp-roundtrip",
        cases,
        notes: vec![],
    }
}

/// Coordinates of a form with polynomial coefficients, keyed by
/// `(wedge, exponent vector)`.
fn poly_coords(w: &DifferentialForm) -> Option<BTreeMap<(u64, Vec<u32>), u32>> {
    let mut out = BTreeMap::new();
    for (wedge, f) in w.terms() {
        if !f.is_polynomial() {
            return None;
        }
        for (m, c) in f.numerator().terms() {
            out.insert((wedge.bits(), m.exps().to_vec()), *c);
        }
    }
    Some(out)
}

/// Whether `A c = b` has a solution mod p, by row reduction of the augmented
/// matrix.
fn solvable_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> bool {
    let ncols = rows.first().map_or(0, |r| r.len());
    let unknowns = ncols.saturating_sub(1);
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = (1..p).find(|k| rows[rank][col] * k % p == 1).expect("p is prime");
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    rows[r][c] = (rows[r][c] + p * p - f * rows[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|r| r[unknowns] == 0)
}

/// Exhaustive bounded search: is there a polynomial (n−1)-form ξ with
/// coefficients of degree ≤ `bound` and dξ = ω?
fn brute_force_exact(w: &DifferentialForm, bound: u32) -> bool {
    let cfg = w.cfg();
    let p = cfg.characteristic() as u64;
    let n = w.degree();
    let target = poly_coords(w).expect("polynomial form");
    let nv = cfg.nvars();
    let mut monos: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..nv {
        monos = monos
            .into_iter()
            .flat_map(|m| (0..=bound).map(move |e| [m.clone(), vec![e]].concat()))
            .collect();
    }
    monos.retain(|m| m.iter().sum::<u32>() <= bound);
    let wedges: Vec<Wedge> = (0u64..1 << nv)
        .filter(|b| b.count_ones() as usize + 1 == n)
        .map(Wedge::from_bits)
        .collect();
    let mut columns: Vec<BTreeMap<(u64, Vec<u32>), u32>> = Vec::new();
    for wd in &wedges {
        for m in &monos {
            let c = RationalFunction::from_poly(Polynomial::monomial(cfg, m.clone(), 1));
            let basis = DifferentialForm::monomial(c, *wd);
            columns.push(poly_coords(&basis.d()).expect("polynomial"));
        }
    }
    let mut keys: Vec<(u64, Vec<u32>)> = target.keys().cloned().collect();
    for col in &columns {
        keys.extend(col.keys().cloned());
    }
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<u64>> = keys
        .iter()
        .map(|k| {
            let mut row: Vec<u64> = columns.iter().map(|c| *c.get(k).unwrap_or(&0) as u64).collect();
            row.push(*target.get(k).unwrap_or(&0) as u64);
            row
        })
        .collect();
    if rows.is_empty() {
        return true;
    }
    solvable_mod_p(rows, p)
}

fn poly_form<R: Rng>(cfg: &FieldConfig, degree: usize, max_deg: u32, rng: &mut R) -> DifferentialForm {
    let mut acc = DifferentialForm::zero(cfg, degree);
    for _ in 0..rng.gen_range(1..=2) {
        let w = random::wedge(cfg.nvars(), degree, rng);
        let c = RationalFunction::from_poly(random::poly(cfg, max_deg, 2, rng));
        acc = acc.add(&DifferentialForm::monomial(c, w));
    }
    acc
}

pub fn cartier(opts: &SuiteOptions) -> SuiteOutcome {
    let n_closed = opts.trials_or(200);
    let mut cases = run_cases(n_closed, opts.seed, |i, rng| {
        let p = [2, 3][i % 2];
        let cfg = random::config(p, rng.gen_range(2..=3));
        let n = rng.gen_range(1..=2);
        let eps = random::log_sum(&cfg, n, rng);
        let xi = random::form(&cfg, n - 1, rng);
        let mu = eps.phi().to_form().add(&xi.d());
        let label = format!("p={p} n={n} mu={mu}");
        match cartier_decompose(&mu) {
            Ok(dec) => {
                let back = dec.reassemble() == mu;
                let rest_exact = is_exact(&mu.sub(&dec.epsilon.phi().to_form()));
                CaseOutcome::new(
                    i,
                    label,
                    back && rest_exact,
                    format!("reassembles: {back}; μ − Φ(ε) exact: {rest_exact}"),
                )
            }
            Err(e) => CaseOutcome::new(i, label, false, e.to_string()),
        }
    });
    // Exactness against an exhaustive search over polynomial primitives.
    let n_small = opts.trials.map_or(50, |t| t.min(50));
    let small = run_cases(n_small, opts.seed ^ 0x5eed, |i, rng| {
        let p = [2, 3][i % 2];
        let cfg = random::config(p, rng.gen_range(2..=3));
        let n = rng.gen_range(1..=2);
        let prim = poly_form(&cfg, n - 1, 2, rng);
        let mut w = prim.d();
        match rng.gen_range(0..3) {
            0 => w = w.add(&poly_form(&cfg, n, 2, rng)),
            // c^p x^{(p-1)1_I} dx_I: closed, not exact.
            1 => {
                let wd = random::wedge(cfg.nvars(), n, rng);
                let mut exps: Vec<u32> = (0..cfg.nvars()).map(|_| p * rng.gen_range(0..=1)).collect();
                for i in wd.indices() {
                    exps[i] += p - 1;
                }
                let c = RationalFunction::from_poly(Polynomial::monomial(&cfg, exps, 1));
                w = w.add(&DifferentialForm::monomial(c, wd));
            }
            _ => {}
        }
        let bound = w
            .terms()
            .values()
            .map(|f| f.numerator().total_degree() as u32)
            .max()
            .unwrap_or(0)
            + 1;
        let fast = is_exact(&w);
        let slow = brute_force_exact(&w, bound);
        CaseOutcome::new(
            n_closed + i,
            format!("p={p} n={n} w={w}"),
            fast == slow,
            format!("is_exact = {fast}, search = {slow}"),
        )
    });
    let exact_count = small.iter().filter(|c| c.detail.ends_with("search = true")).count();
    cases.extend(small);
    SuiteOutcome {
        name: "cartier",
        cases,
        notes: vec![format!("{exact_count} of {n_small} search instances were exact")],
    }
}

fn uni_poly(cfg: &FieldConfig, bits: u32) -> Polynomial {
    let mut acc = Polynomial::zero(cfg);
    for k in 0..32 {
        if bits >> k & 1 == 1 {
            acc = acc.add(&Polynomial::monomial(cfg, vec![k], 1));
        }
    }
    acc
}

pub fn as_h1(opts: &SuiteOptions) -> SuiteOutcome {
    let cfg = FieldConfig::prime(2, &["t"]).expect("F_2(t)");
    // Every ℘(g) with num(g), den(g) of degree ≤ 6.
    let mut images: HashSet<String> = HashSet::new();
    for den_bits in 1u32..(1 << 7) {
        let den = uni_poly(&cfg, den_bits);
        for num_bits in 0u32..(1 << 7) {
            let g = RationalFunction::new(uni_poly(&cfg, num_bits), den.clone()).expect("nonzero");
            let img = g.mul(&g).add(&g);
            if img.numerator().total_degree() <= 2 && img.denominator().total_degree() <= 2 {
                images.insert(img.to_string());
            }
        }
    }
    let mut targets: Vec<RationalFunction> = Vec::new();
    let mut seen = HashSet::new();
    for den_bits in 1u32..(1 << 3) {
        for num_bits in 0u32..(1 << 3) {
            let f = RationalFunction::new(uni_poly(&cfg, num_bits), uni_poly(&cfg, den_bits)).expect("nonzero");
            if seen.insert(f.to_string()) {
                targets.push(f);
            }
        }
    }
    let _ = opts;
    let cases: Vec<CaseOutcome> = targets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let brute = images.contains(&f.to_string());
            match as_reduce(f) {
                Ok(r) => {
                    let ok = r.trivial == brute && r.verify(f);
                    CaseOutcome::new(
                        i,
                        format!("f={f}"),
                        ok,
                        format!("as_reduce trivial = {}, search = {brute}, rep = {}", r.trivial, r.representative),
                    )
                }
                Err(e) => CaseOutcome::new(i, format!("f={f}"), false, e.to_string()),
            }
        })
        .collect();
    let trivial = cases.iter().filter(|c| c.detail.contains("search = true")).count();
    SuiteOutcome {
        name: "as-h1",
        notes: vec![format!("{} distinct f, {trivial} in ℘(F_2(t))", cases.len())],
        cases,
    }
}
