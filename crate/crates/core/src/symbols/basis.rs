use rand::Rng;

use crate::error::{Error, Result};
use crate::field::linalg::rank_mod_p;
use crate::field::{FieldConfig, RationalFunction};
use crate::forms::{dlog, DifferentialForm};
use crate::symbols::generic::ValuationSpec;

fn exponent_vectors(cands: &[RationalFunction], cfg: &FieldConfig) -> Result<Vec<Vec<i64>>> {
    cands
        .iter()
        .map(|a| {
            cfg.ensure_same(a.cfg())?;
            a.as_laurent_monomial()
                .map(|(_, e)| e)
                .ok_or_else(|| Error::Unsupported(format!("`{a}` is not a monomial")))
        })
        .collect()
}

/// Monomials are p-independent iff their exponent vectors are linearly
/// independent mod p.
pub fn p_independence_test(cands: &[RationalFunction], cfg: &FieldConfig) -> Result<bool> {
    let vecs = exponent_vectors(cands, cfg)?;
    Ok(rank_mod_p(&vecs, cfg.characteristic()) == vecs.len())
}

/// A p-basis with one element of valuation 1 at `i0` and unit elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialBasis {
    pub basis: Vec<RationalFunction>,
    /// 0-based position of the uniformizer.
    pub i0: usize,
}

impl DifferentialBasis {
    pub fn valuations(&self, val: &ValuationSpec) -> Vec<i64> {
        let t = val.index();
        self.basis
            .iter()
            .map(|a| a.as_laurent_monomial().expect("basis elements are monomials").1[t])
            .collect()
    }

    /// Exactly one element has valuation 1 and the residues of the others
    /// form a p-basis of the residue field.
    pub fn comes_from_residue_field(&self, val: &ValuationSpec) -> Result<bool> {
        let vals = self.valuations(val);
        if vals.iter().filter(|&&v| v == 1).count() != 1 || vals[self.i0] != 1 {
            return Ok(false);
        }
        if vals.iter().enumerate().any(|(i, &v)| i != self.i0 && v != 0) {
            return Ok(false);
        }
        let residue = val.cfg.without(&val.var)?;
        let units = self
            .basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.i0)
            .map(|(_, a)| a.transfer(&residue))
            .collect::<Result<Vec<_>>>()?;
        Ok(units.len() == residue.nvars() && p_independence_test(&units, &residue)?)
    }
}

/// Extends p-independent monomials `a` to a p-basis adapted to `val`.
///
/// Missing directions are filled with configured variables in order. The
/// uniformizer slot `i0` is the first element γ with `p ∤ v(γ)`, replaced by
/// `π^{pα} γ^β` with `αp + βv(γ) = 1`; the other elements are made units by
/// `π^{-v}` (before `i0`, where `p | v`) or by powers of the new uniformizer.
pub fn complete_differential_basis(a: &[RationalFunction], val: &ValuationSpec) -> Result<DifferentialBasis> {
    let cfg = &val.cfg;
    let p = cfg.characteristic() as i64;
    if !p_independence_test(a, cfg)? {
        return Err(Error::Precondition("input monomials are not p-independent".into()));
    }
    let mut basis: Vec<RationalFunction> = a.to_vec();
    for j in 0..cfg.nvars() {
        if basis.len() == cfg.nvars() {
            break;
        }
        let mut trial = basis.clone();
        trial.push(RationalFunction::var(cfg, j));
        if p_independence_test(&trial, cfg)? {
            basis = trial;
        }
    }
    let t = val.index();
    let v = |f: &RationalFunction| f.as_laurent_monomial().expect("monomial").1[t];
    let i0 = basis
        .iter()
        .position(|f| v(f).rem_euclid(p) != 0)
        .expect("a full p-basis has an element of valuation prime to p");
    let pi = RationalFunction::var(cfg, t);
    let gamma = basis[i0].clone();
    let v0 = v(&gamma);
    let beta = (1..p).find(|b| (b * v0).rem_euclid(p) == 1).expect("v0 is invertible mod p");
    let alpha = (1 - beta * v0) / p;
    let uniformizer = pi.pow(p * alpha)?.mul(&gamma.pow(beta)?);
    debug_assert_eq!(v(&uniformizer), 1);
    basis[i0] = uniformizer.clone();
    for (i, b) in basis.iter_mut().enumerate() {
        let vi = v(b);
        if i == i0 || vi == 0 {
            continue;
        }
        *b = if i < i0 {
            b.mul(&pi.pow(-vi)?)
        } else {
            b.mul(&uniformizer.pow(-vi)?)
        };
    }
    Ok(DifferentialBasis { basis, i0 })
}

fn random_kp_element<R: Rng>(gens: &[RationalFunction], rng: &mut R) -> RationalFunction {
    let cfg = gens.first().map(|g| g.cfg().clone()).expect("at least one generator");
    let p = cfg.characteristic();
    let field = cfg.field();
    let mut acc = RationalFunction::zero(&cfg);
    for _ in 0..rng.gen_range(1..=3) {
        // c^p · Π a_i^{e_i} with c a random small monomial of K.
        let exps: Vec<i64> = (0..cfg.nvars()).map(|_| rng.gen_range(0..=1)).collect();
        let c = RationalFunction::laurent_monomial(&cfg, &exps, field.from_int(rng.gen_range(1..p as i64)));
        let mut term = c.frobenius();
        for g in gens {
            term = term.mul(&g.pow(rng.gen_range(0..p as i64)).expect("generators are nonzero"));
        }
        acc = acc.add(&term);
    }
    if acc.is_zero() {
        RationalFunction::one(&cfg)
    } else {
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub trials: usize,
    pub counterexamples: Vec<DifferentialForm>,
}

/// Draws forms `b dc_1 ∧ ... ∧ dc_n` with `b, c_i ∈ K^p(a_1..a_s)` and checks
/// that each is zero in Ω^n_K. Requires `s < n`.
pub fn restriction_zero_check<R: Rng>(
    gens: &[RationalFunction],
    n: usize,
    cfg: &FieldConfig,
    trials: usize,
    rng: &mut R,
) -> Result<RestrictionReport> {
    if gens.len() >= n {
        return Err(Error::Precondition(format!(
            "restriction vanishes only for s < n, got s = {}, n = {n}",
            gens.len()
        )));
    }
    for g in gens {
        cfg.ensure_same(g.cfg())?;
    }
    let gens: Vec<RationalFunction> = if gens.is_empty() {
        vec![RationalFunction::one(cfg)]
    } else {
        gens.to_vec()
    };
    let mut counterexamples = Vec::new();
    for _ in 0..trials {
        let mut w = DifferentialForm::scalar(random_kp_element(&gens, rng));
        for _ in 0..n {
            w = w.wedge(&DifferentialForm::scalar(random_kp_element(&gens, rng)).d());
        }
        if !w.is_zero() {
            counterexamples.push(w);
        }
    }
    Ok(RestrictionReport {
        trials,
        counterexamples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub basis_size: usize,
    pub all_nonzero: bool,
    pub all_distinct: bool,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.all_nonzero && self.all_distinct
    }
}

/// Maps the monomial basis `a^e da_I` (|I| = n, `0 ≤ e_i < p`) of Ω^n over
/// K^p(a_1..a_r) into Ω^n_K, where `a_1..a_r` extend to the p-basis `big`.
pub fn omega_injectivity(small: usize, big: &[RationalFunction], n: usize) -> Result<InjectivityReport> {
    let cfg = big.first().map(|g| g.cfg().clone()).ok_or_else(|| Error::Precondition("empty basis".into()))?;
    if small > big.len() {
        return Err(Error::Precondition("the small basis must be a prefix of the big one".into()));
    }
    if !p_independence_test(big, &cfg)? {
        return Err(Error::Precondition("basis is not p-independent".into()));
    }
    let p = cfg.characteristic() as usize;
    let gens = &big[..small];
    let dlogs = gens.iter().map(dlog).collect::<Result<Vec<_>>>()?;
    let mut images = Vec::new();
    for mask in 0u64..(1u64 << small) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let mut wedge = DifferentialForm::scalar(RationalFunction::one(&cfg));
        let mut mono = RationalFunction::one(&cfg);
        for (i, dl) in dlogs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                wedge = wedge.wedge(dl);
                mono = mono.mul(&gens[i]);
            }
        }
        // da_I = a_I · dlog a_I; the loop below multiplies by a^e.
        let base = wedge.scale(&mono);
        let total = p.pow(small as u32);
        for code in 0..total {
            let mut f = RationalFunction::one(&cfg);
            let mut c = code;
            for g in gens {
                f = f.mul(&g.pow((c % p) as i64)?);
                c /= p;
            }
            images.push(base.scale(&f));
        }
    }
    let all_nonzero = images.iter().all(|w| !w.is_zero());
    let mut all_distinct = true;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] == images[j] {
                all_distinct = false;
            }
        }
    }
    Ok(InjectivityReport {
        basis_size: images.len(),
        all_nonzero,
        all_distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(c: &FieldConfig, i: usize) -> RationalFunction {
        RationalFunction::var(c, i)
    }

    #[test]
    fn independence_examples() {
        for p in [2, 3, 5] {
            let c = FieldConfig::prime(p, &["x", "y"]).unwrap();
            let (x, y) = (v(&c, 0), v(&c, 1));
            assert!(p_independence_test(&[x.clone(), y.clone()], &c).unwrap());
            let xyp = x.mul(&y.pow(p as i64).unwrap());
            assert!(!p_independence_test(&[x.clone(), xyp], &c).unwrap());
        }
        let c = FieldConfig::prime(2, &["x", "y"]).unwrap();
        assert!(p_independence_test(&[v(&c, 0).mul(&v(&c, 1)), v(&c, 1)], &c).unwrap());
    }

    #[test]
    fn completion_examples() {
        let c = FieldConfig::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (v(&c, 0), v(&c, 1));
        let val = ValuationSpec::new(&c, "y").unwrap();

        let b = complete_differential_basis(&[x.clone()], &val).unwrap();
        assert_eq!((b.basis.clone(), b.i0), (vec![x.clone(), y.clone()], 1));
        assert!(b.comes_from_residue_field(&val).unwrap());

        let b = complete_differential_basis(&[x.mul(&y.pow(2).unwrap())], &val).unwrap();
        assert_eq!((b.basis.clone(), b.i0), (vec![x.clone(), y.clone()], 1));

        let b = complete_differential_basis(&[y.clone()], &val).unwrap();
        assert_eq!((b.basis.clone(), b.i0), (vec![y.clone(), x.clone()], 0));

        let c3 = FieldConfig::prime(3, &["x", "y"]).unwrap();
        let val3 = ValuationSpec::new(&c3, "y").unwrap();
        let (x3, y3) = (v(&c3, 0), v(&c3, 1));
        let b = complete_differential_basis(&[x3.mul(&y3.pow(2).unwrap())], &val3).unwrap();
        assert!(b.comes_from_residue_field(&val3).unwrap());
        assert!(complete_differential_basis(&[x3.clone(), x3.pow(4).unwrap()], &val3).is_err());
    }

    #[test]
    fn restriction_vanishes() {
        let c = FieldConfig::prime(2, &["x", "y", "z"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = restriction_zero_check(&[v(&c, 0)], 2, &c, 20, &mut rng).unwrap();
        assert!(r.counterexamples.is_empty());
        let r = restriction_zero_check(&[], 1, &c, 10, &mut rng).unwrap();
        assert!(r.counterexamples.is_empty());
        assert!(restriction_zero_check(&[v(&c, 0), v(&c, 1)], 2, &c, 1, &mut rng).is_err());

        let (x, y) = (v(&c, 0), v(&c, 1));
        let w = DifferentialForm::scalar(x.clone()).d().wedge(&DifferentialForm::scalar(y.pow(2).unwrap()).d());
        assert!(w.is_zero());
    }

    #[test]
    fn injectivity() {
        let c = FieldConfig::prime(3, &["x", "y"]).unwrap();
        let big = vec![v(&c, 0).mul(&v(&c, 1)), v(&c, 1)];
        for n in 0..=2 {
            let r = omega_injectivity(2, &big, n).unwrap();
            assert!(r.passed());
        }
        assert_eq!(omega_injectivity(1, &big, 1).unwrap().basis_size, 3);
    }
}
