//! Coordinates of a function over K^p with respect to a p-independent set of
//! monomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::config::FieldConfig;
use crate::field::gf::Elem;
use crate::field::linalg::{rank_mod_p, solve_mod_p};
use crate::field::poly::{Monomial, Polynomial};
use crate::field::rational::RationalFunction;

/// An element of {0, ..., p-1}^s.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>, p: u32) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|&&e| e >= p) {
            return Err(Error::Precondition(format!("multi-index entry {bad} is not below p = {p}")));
        }
        Ok(Self(entries))
    }

    pub(crate) fn new_unchecked(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `f = Σ_e f_e^p · a^e` over a fixed ordered basis `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpCoordinates {
    basis: Vec<RationalFunction>,
    coords: BTreeMap<MultiIndex, RationalFunction>,
}

impl KpCoordinates {
    pub fn basis(&self) -> &[RationalFunction] {
        &self.basis
    }

    pub fn coords(&self) -> &BTreeMap<MultiIndex, RationalFunction> {
        &self.coords
    }

    pub fn get(&self, e: &MultiIndex) -> Option<&RationalFunction> {
        self.coords.get(e)
    }

    /// Whether the only coordinate is at e = 0.
    pub fn is_constant_part_only(&self) -> bool {
        self.coords.keys().all(MultiIndex::is_zero)
    }

    pub fn reassemble(&self, cfg: &FieldConfig) -> RationalFunction {
        let mut acc = RationalFunction::zero(cfg);
        for (e, c) in &self.coords {
            let mut term = c.frobenius();
            for (a, &k) in self.basis.iter().zip(e.entries()) {
                if k > 0 {
                    term = term.mul(&a.pow(k as i64).expect("basis elements are nonzero"));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// Expansion over the standard basis (x_1, ..., x_m).
pub fn kp_expand_standard(f: &RationalFunction) -> BTreeMap<MultiIndex, RationalFunction> {
    let cfg = f.cfg();
    let p = cfg.characteristic();
    let m = cfg.nvars();
    let cols: Vec<(Vec<i64>, Elem)> = (0..m)
        .map(|i| {
            let mut v = vec![0i64; m];
            v[i] = 1;
            (v, 1)
        })
        .collect();
    expand_with(f, &cols, |exps| Some(exps.iter().map(|&e| e % p).collect())).expect("standard basis spans K")
}

/// Expansion over an arbitrary p-independent list of monomials.
pub fn kp_expand(f: &RationalFunction, basis: &[RationalFunction]) -> Result<KpCoordinates> {
    let cfg = f.cfg();
    let p = cfg.characteristic();
    let mut cols = Vec::with_capacity(basis.len());
    for a in basis {
        cfg.ensure_same(a.cfg())?;
        let (c, exps) = a
            .as_laurent_monomial()
            .ok_or_else(|| Error::Precondition(format!("basis element `{a}` is not a monomial")))?;
        cols.push((exps, c));
    }
    let vectors: Vec<Vec<i64>> = cols.iter().map(|(v, _)| v.clone()).collect();
    if rank_mod_p(&vectors, p) < vectors.len() {
        return Err(Error::Precondition("basis is not p-independent".into()));
    }
    let mut cache: HashMap<Vec<u32>, Option<Vec<u32>>> = HashMap::new();
    let solve = |exps: &[u32]| -> Option<Vec<u32>> {
        let key: Vec<u32> = exps.iter().map(|&e| e % p).collect();
        cache
            .entry(key.clone())
            .or_insert_with(|| {
                let target: Vec<i64> = key.iter().map(|&e| e as i64).collect();
                solve_mod_p(&vectors, &target, p)
            })
            .clone()
    };
    let coords = expand_with(f, &cols, solve)?;
    Ok(KpCoordinates {
        basis: basis.to_vec(),
        coords,
    })
}

fn expand_with<F>(
    f: &RationalFunction,
    cols: &[(Vec<i64>, Elem)],
    mut solve: F,
) -> Result<BTreeMap<MultiIndex, RationalFunction>>
where
    F: FnMut(&[u32]) -> Option<Vec<u32>>,
{
    let cfg = f.cfg();
    let field = cfg.field();
    let p = cfg.characteristic();
    let m = cfg.nvars();
    if f.is_zero() {
        return Ok(BTreeMap::new());
    }
    let v = f.denominator();
    let num = if v.is_one() {
        f.numerator().clone()
    } else {
        f.numerator().mul(&v.pow(p - 1))
    };
    let mut groups: BTreeMap<Vec<u32>, Vec<(Vec<i64>, Elem)>> = BTreeMap::new();
    for (mono, c) in num.terms() {
        let e = solve(mono.exps()).ok_or_else(|| Error::NotInSubfield {
            residue: mono.exps().iter().map(|&x| x % p).collect(),
        })?;
        let mut shifted: Vec<i64> = mono.exps().iter().map(|&x| x as i64).collect();
        let mut coeff = *c;
        for (k, (col, bc)) in e.iter().zip(cols) {
            if *k == 0 {
                continue;
            }
            for (s, a) in shifted.iter_mut().zip(col) {
                *s -= *k as i64 * a;
            }
            let inv = field.inv(field.pow(*bc, *k as u64)).expect("basis coefficients are nonzero");
            coeff = field.mul(coeff, inv);
        }
        debug_assert!(shifted.iter().all(|s| s.rem_euclid(p as i64) == 0));
        let root: Vec<i64> = shifted.iter().map(|s| s.div_euclid(p as i64)).collect();
        groups.entry(e).or_default().push((root, field.pth_root(coeff)));
    }
    // f = num / v^p, so each coordinate carries a factor 1/v.
    let v_inv = RationalFunction::from_poly(v.clone()).inv().expect("nonzero denominator");
    let mut out = BTreeMap::new();
    for (e, terms) in groups {
        let mut offset = vec![0i64; m];
        for (exps, _) in &terms {
            for (o, &x) in offset.iter_mut().zip(exps) {
                *o = (*o).min(x);
            }
        }
        let poly = Polynomial::from_terms(
            cfg,
            terms
                .iter()
                .map(|(exps, c)| {
                    let shifted = exps.iter().zip(&offset).map(|(x, o)| (x - o) as u32).collect();
                    (Monomial::new(shifted), *c)
                })
                .collect::<Vec<_>>(),
        );
        if poly.is_zero() {
            continue;
        }
        let shift = RationalFunction::laurent_monomial(cfg, &offset, 1);
        let mut coord = RationalFunction::from_poly(poly).mul(&shift);
        if !v.is_one() {
            coord = coord.mul(&v_inv);
        }
        out.insert(MultiIndex::new_unchecked(e), coord);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u32, vars: &[&str]) -> FieldConfig {
        FieldConfig::prime(p, vars).unwrap()
    }

    #[test]
    fn expand_variable() {
        for p in [2, 3, 5] {
            let c = setup(p, &["x"]);
            let x = RationalFunction::var(&c, 0);
            let k = kp_expand(&x, &[x.clone()]).unwrap();
            assert_eq!(k.coords().len(), 1);
            assert!(k.get(&MultiIndex::new(vec![1], p).unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn expand_mixed_and_inverse() {
        let c = setup(2, &["x"]);
        let x = RationalFunction::var(&c, 0);
        let f = x.add(&x.pow(2).unwrap());
        let k = kp_expand(&f, &[x.clone()]).unwrap();
        assert_eq!(k.get(&MultiIndex::new(vec![0], 2).unwrap()), Some(&x));
        assert!(k.get(&MultiIndex::new(vec![1], 2).unwrap()).unwrap().is_one());

        let g = x.inv().unwrap();
        let k = kp_expand(&g, &[x.clone()]).unwrap();
        assert_eq!(k.coords().len(), 1);
        assert_eq!(k.get(&MultiIndex::new(vec![1], 2).unwrap()), Some(&g));
        assert_eq!(k.reassemble(&c), g);
    }

    #[test]
    fn nonstandard_basis_and_membership() {
        let c = setup(3, &["x", "y"]);
        let (x, y) = (RationalFunction::var(&c, 0), RationalFunction::var(&c, 1));
        let xy = x.mul(&y);
        let f = x.add(&y.pow(2).unwrap()).div(&x.add(&y)).unwrap();
        let k = kp_expand(&f, &[xy.clone(), y.clone()]).unwrap();
        assert_eq!(k.reassemble(&c), f);

        let err = kp_expand(&x, &[y.clone()]).unwrap_err();
        assert!(matches!(err, Error::NotInSubfield { .. }));
        assert!(kp_expand(&x, &[x.clone(), x.pow(4).unwrap()]).is_err());
    }

    #[test]
    fn standard_expansion_reassembles() {
        let c = setup(3, &["x", "y"]);
        let (x, y) = (RationalFunction::var(&c, 0), RationalFunction::var(&c, 1));
        let f = x.mul(&y).add(&RationalFunction::from_int(&c, 2)).div(&x.pow(2).unwrap().add(&y)).unwrap();
        let coords = kp_expand_standard(&f);
        let k = KpCoordinates {
            basis: vec![x, y],
            coords,
        };
        assert_eq!(k.reassemble(&c), f);
    }
}
