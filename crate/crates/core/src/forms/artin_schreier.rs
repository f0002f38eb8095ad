//! H^1_p of a rational function field in one variable: F_q(t) / ℘(F_q(t)).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldConfig, GaloisField, Monomial, Polynomial, RationalFunction, UniPoly};

/// A place of F_q(t) carrying a pole. Finite places are reported by the
/// squarefree factor collecting all roots with the same pole order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(Polynomial),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASReducedClass {
    /// `f − ℘(witness)`, with every pole order prime to p.
    pub representative: RationalFunction,
    pub trivial: bool,
    pub pole_data: Vec<(Place, u32)>,
    /// The accumulated ℘-preimage that was subtracted.
    pub witness: RationalFunction,
}

impl ASReducedClass {
    /// Checks `f = representative + ℘(witness)`.
    pub fn verify(&self, f: &RationalFunction) -> bool {
        let wp = self.witness.frobenius().sub(&self.witness);
        self.representative.add(&wp) == *f
    }
}

fn to_uni(p: &Polynomial) -> UniPoly {
    let deg = p.degree_in(0) as usize;
    let mut v = vec![0; deg + 1];
    for (m, c) in p.terms() {
        v[m.exps()[0] as usize] = *c;
    }
    UniPoly::new(v)
}

fn from_uni(cfg: &FieldConfig, u: &UniPoly) -> Polynomial {
    Polynomial::from_terms(
        cfg,
        u.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| (Monomial::new(vec![k as u32]), *c))
            .collect::<Vec<_>>(),
    )
}

fn rf(cfg: &FieldConfig, num: &UniPoly, den: &UniPoly) -> RationalFunction {
    RationalFunction::new(from_uni(cfg, num), from_uni(cfg, den)).expect("nonzero denominator")
}

fn wp(h: &RationalFunction) -> RationalFunction {
    h.frobenius().sub(h)
}

/// Canonical representative of `c + ℘(F_q)` and the element `a` with
/// `c − ℘(a)` equal to it.
fn reduce_constant(field: &GaloisField, c: Elem) -> (Elem, Elem) {
    if field.degree() == 1 {
        // ℘ vanishes on F_p.
        return (c, 0);
    }
    field
        .elements()
        .map(|a| {
            let img = field.sub(field.frobenius(a), a);
            (field.sub(c, img), a)
        })
        .min()
        .expect("field is nonempty")
}

/// Reduces `f ∈ F_q(t)` modulo ℘(F_q(t)). The result is zero exactly when `f`
/// is an Artin–Schreier image.
pub fn as_reduce(f: &RationalFunction) -> Result<ASReducedClass> {
    let cfg = f.cfg();
    if cfg.nvars() != 1 {
        return Err(Error::Precondition(format!(
            "as_reduce needs a one-variable field, got {cfg}"
        )));
    }
    let field = cfg.field();
    let p = cfg.characteristic();
    let mut cur = f.clone();
    let mut witness = RationalFunction::zero(cfg);

    // Finite poles: each pass lowers the degree of the denominator.
    loop {
        let den = to_uni(cur.denominator());
        if den.degree().unwrap_or(0) == 0 {
            break;
        }
        let blocks = den.squarefree_decomposition(field);
        let Some((s, i)) = blocks.iter().rev().find(|(_, i)| i % p == 0).cloned() else {
            break;
        };
        let num = to_uni(cur.numerator());
        let si = s.pow(i as u64, field);
        let cofactor = den.divrem(&si, field).0;
        let inv = UniPoly::inv_mod(&cofactor, &si, field).expect("squarefree blocks are coprime");
        let a = num.mul(&inv, field).rem(&si, field);
        let h_num = UniPoly::pth_root_mod(&a.rem(&s, field), &s, field);
        let h = rf(cfg, &h_num, &s.pow((i / p) as u64, field));
        cur = cur.sub(&wp(&h));
        witness = witness.add(&h);
    }

    // Pole at infinity: the polynomial part.
    let num = to_uni(cur.numerator());
    let den = to_uni(cur.denominator());
    let (mut poly, rem) = num.divrem(&den, field);
    let mut coeffs = poly.coeffs().to_vec();
    let mut wit_poly = vec![0; coeffs.len()];
    while let Some(j) = (1..coeffs.len()).rev().find(|&j| j % p as usize == 0 && coeffs[j] != 0) {
        let r = field.pth_root(coeffs[j]);
        coeffs[j] = 0;
        coeffs[j / p as usize] = field.add(coeffs[j / p as usize], r);
        wit_poly[j / p as usize] = field.add(wit_poly[j / p as usize], r);
    }
    if let Some(c0) = coeffs.first_mut() {
        let (rep, a) = reduce_constant(field, *c0);
        *c0 = rep;
        wit_poly[0] = field.add(wit_poly[0], a);
    }
    poly = UniPoly::new(coeffs);
    witness = witness.add(&rf(cfg, &UniPoly::new(wit_poly), &UniPoly::one()));
    let representative = rf(cfg, &poly.mul(&den, field).add(&rem, field), &den);

    let mut pole_data: Vec<(Place, u32)> = to_uni(representative.denominator())
        .squarefree_decomposition(field)
        .into_iter()
        .map(|(s, i)| (Place::Finite(from_uni(cfg, &s)), i))
        .collect();
    let inf = representative.numerator().degree_in(0) as i64 - representative.denominator().degree_in(0) as i64;
    if inf > 0 {
        pole_data.push((Place::Infinity, inf as u32));
    }
    Ok(ASReducedClass {
        trivial: representative.is_zero(),
        representative,
        pole_data,
        witness,
    })
}
