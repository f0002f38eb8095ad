//! The K^p-monomial basis `x^e dx_I` (0 ≤ e_j < p) of Ω^n and the operators
//! that are diagonal in it.
//!
//! Per variable x_j a basis element is in one of the states `(e_j, no dx_j)` or
//! `(e_j, dx_j)`. The states `(0, no dx)` and `(p-1, dx)` are *harmonic*; a
//! basis element is harmonic when all its states are. With H the contracting
//! homotopy below and P the projection onto harmonic elements,
//! `dH + Hd = id − P`, `Pd = dP = 0` and `HH = 0`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{kp_expand_standard, FieldConfig, MultiIndex, RationalFunction};
use crate::forms::form::{DifferentialForm, Wedge};
use crate::forms::log::LogTermSum;

/// `c^p · x^e · dx_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialTerm {
    pub coeff: RationalFunction,
    pub exps: MultiIndex,
    pub wedge: Wedge,
}

impl MonomialTerm {
    pub fn to_form(&self) -> DifferentialForm {
        let cfg = self.coeff.cfg();
        let exps: Vec<i64> = self.exps.entries().iter().map(|&e| e as i64).collect();
        let c = self.coeff.frobenius().mul(&RationalFunction::laurent_monomial(cfg, &exps, 1));
        DifferentialForm::monomial(c, self.wedge)
    }

    /// `d(x^e dx_I) = 0` exactly when `e_j = 0` for every `j ∉ I`.
    pub fn is_closed(&self) -> bool {
        self.exps
            .entries()
            .iter()
            .enumerate()
            .all(|(j, &e)| e == 0 || self.wedge.contains(j))
    }

    fn state_is_harmonic(&self, j: usize, p: u32) -> bool {
        let e = self.exps.entries()[j];
        if self.wedge.contains(j) {
            e == p - 1
        } else {
            e == 0
        }
    }

    /// First variable whose state is not harmonic.
    pub fn first_nonharmonic(&self) -> Option<usize> {
        let p = self.coeff.cfg().characteristic();
        (0..self.exps.len()).find(|&j| !self.state_is_harmonic(j, p))
    }

    pub fn is_harmonic(&self) -> bool {
        self.first_nonharmonic().is_none()
    }

    /// Whether the basis element lies in the image of H, i.e. spans the fixed
    /// complement of the closed forms.
    pub fn is_coexact_basis(&self) -> bool {
        match self.first_nonharmonic() {
            Some(j) => !self.wedge.contains(j),
            None => false,
        }
    }
}

/// `Σ c^p x^e dx_I`, sorted by `(I, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialTermDecomposition {
    cfg: FieldConfig,
    degree: usize,
    terms: Vec<MonomialTerm>,
}

impl MonomialTermDecomposition {
    pub fn from_terms(cfg: &FieldConfig, degree: usize, mut terms: Vec<MonomialTerm>) -> Self {
        terms.sort_by(|a, b| a.wedge.cmp(&b.wedge).then_with(|| a.exps.cmp(&b.exps)));
        Self {
            cfg: cfg.clone(),
            degree,
            terms,
        }
    }

    pub fn cfg(&self) -> &FieldConfig {
        &self.cfg
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[MonomialTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reassemble(&self) -> DifferentialForm {
        let mut acc = DifferentialForm::zero(&self.cfg, self.degree);
        for t in &self.terms {
            acc = acc.add(&t.to_form());
        }
        acc
    }

    pub fn filter<F: Fn(&MonomialTerm) -> bool>(&self, keep: F) -> Self {
        Self {
            cfg: self.cfg.clone(),
            degree: self.degree,
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }
}

pub fn monomial_decompose(w: &DifferentialForm) -> MonomialTermDecomposition {
    let mut terms = Vec::new();
    for (wedge, f) in w.terms() {
        for (exps, coeff) in kp_expand_standard(f) {
            terms.push(MonomialTerm {
                coeff,
                exps,
                wedge: *wedge,
            });
        }
    }
    MonomialTermDecomposition::from_terms(w.cfg(), w.degree(), terms)
}

/// Sums `c^p · x^e · sign · dx_I` over terms, grouping coefficients by wedge.
fn assemble(cfg: &FieldConfig, degree: usize, parts: Vec<(Wedge, RationalFunction)>) -> DifferentialForm {
    let mut by_wedge: BTreeMap<Wedge, Vec<RationalFunction>> = BTreeMap::new();
    for (w, c) in parts {
        by_wedge.entry(w).or_default().push(c);
    }
    DifferentialForm::from_terms(
        cfg,
        degree,
        by_wedge.into_iter().map(|(w, cs)| {
            (w, RationalFunction::sum(cfg, &cs))
        }),
    )
}

/// The contracting homotopy H: Ω^n → Ω^{n-1}. For n = 0 the result is the
/// zero 0-form.
pub fn homotopy(w: &DifferentialForm) -> DifferentialForm {
    let cfg = w.cfg();
    let field = cfg.field();
    let n = w.degree();
    if n == 0 {
        return DifferentialForm::zero(cfg, 0);
    }
    let mut parts = Vec::new();
    for t in monomial_decompose(w).terms {
        let Some(j) = t.first_nonharmonic() else {
            continue;
        };
        if !t.wedge.contains(j) {
            continue;
        }
        let b = t.exps.entries()[j];
        let inv = field.inv(field.from_int(b as i64 + 1)).expect("b + 1 < p is a unit");
        let inv = if t.wedge.count_below(j) % 2 == 1 { field.neg(inv) } else { inv };
        let mut exps: Vec<i64> = t.exps.entries().iter().map(|&e| e as i64).collect();
        exps[j] += 1;
        let c = t
            .coeff
            .frobenius()
            .mul(&RationalFunction::laurent_monomial(cfg, &exps, inv));
        parts.push((t.wedge.without(j), c));
    }
    assemble(cfg, n - 1, parts)
}

/// The projection P onto harmonic basis elements.
pub fn harmonic_part(w: &DifferentialForm) -> DifferentialForm {
    monomial_decompose(w).filter(MonomialTerm::is_harmonic).reassemble()
}

/// A primitive ξ with dξ = ω, or `None` when ω is not exact.
pub fn exact_primitive(w: &DifferentialForm) -> Option<DifferentialForm> {
    if w.degree() == 0 {
        return w.is_zero().then(|| DifferentialForm::zero(w.cfg(), 0));
    }
    if !w.d().is_zero() {
        return None;
    }
    if !harmonic_part(w).is_zero() {
        return None;
    }
    Some(homotopy(w))
}

pub fn is_exact(w: &DifferentialForm) -> bool {
    exact_primitive(w).is_some()
}

/// `μ = Φ(ε) + dξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierDecomposition {
    pub epsilon: LogTermSum,
    pub xi: DifferentialForm,
}

impl CartierDecomposition {
    pub fn reassemble(&self) -> DifferentialForm {
        let phi = self.epsilon.phi().to_form();
        if self.epsilon.degree() == 0 {
            phi
        } else {
            phi.add(&self.xi.d())
        }
    }
}

pub fn cartier_decompose(mu: &DifferentialForm) -> Result<CartierDecomposition> {
    let dmu = mu.d();
    if !dmu.is_zero() {
        return Err(Error::NotClosed {
            differential: Box::new(dmu),
        });
    }
    let cfg = mu.cfg();
    let mut epsilon = LogTermSum::new(cfg, mu.degree());
    for t in monomial_decompose(mu).terms {
        if !t.is_harmonic() {
            continue;
        }
        // c^p x^{(p-1)1_I} dx_I = Φ((c·x_I) dlog x_{i_1} ∧ ...)
        let mut a = t.coeff.clone();
        let mut args = Vec::new();
        for i in t.wedge.indices() {
            let x = RationalFunction::var(cfg, i);
            a = a.mul(&x);
            args.push(x);
        }
        epsilon.push(a, args)?;
    }
    Ok(CartierDecomposition {
        epsilon,
        xi: homotopy(mu),
    })
}

/// Splits `g = b + μ` with `b = H(dg)` supported on the complement basis and
/// `μ` closed.
pub fn coexact_split(g: &DifferentialForm) -> (DifferentialForm, DifferentialForm) {
    let b = homotopy(&g.d());
    let mu = g.sub(&b);
    (b, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::log::dlog;

    fn setup(p: u32, vars: &[&str]) -> FieldConfig {
        FieldConfig::prime(p, vars).unwrap()
    }

    fn x(c: &FieldConfig, i: usize) -> RationalFunction {
        RationalFunction::var(c, i)
    }

    #[test]
    fn decompose_examples() {
        let c = setup(2, &["x", "y"]);
        let w = DifferentialForm::dx(&c, 1).scale(&x(&c, 0));
        let dec = monomial_decompose(&w);
        assert_eq!(dec.terms().len(), 1);
        let t = &dec.terms()[0];
        assert!(t.coeff.is_one());
        assert_eq!(t.exps.entries(), &[1, 0]);
        assert_eq!(t.wedge, Wedge::single(1));

        let w = dlog(&x(&c, 1)).unwrap();
        let dec = monomial_decompose(&w);
        assert_eq!(dec.terms().len(), 1);
        assert_eq!(dec.terms()[0].coeff, x(&c, 1).inv().unwrap());
        assert_eq!(dec.terms()[0].exps.entries(), &[0, 1]);
        assert_eq!(dec.reassemble(), w);

        let c3 = setup(3, &["x"]);
        let w = DifferentialForm::dx(&c3, 0).scale(&x(&c3, 0));
        let dec = monomial_decompose(&w);
        let t = &dec.terms()[0];
        assert!(t.coeff.is_one());
        assert_eq!(t.exps.entries(), &[1]);
    }

    #[test]
    fn exactness_examples() {
        let c = setup(3, &["x"]);
        let xx = x(&c, 0);
        let w = DifferentialForm::dx(&c, 0).scale(&xx);
        let xi = exact_primitive(&w).unwrap();
        assert_eq!(xi, DifferentialForm::scalar(xx.pow(2).unwrap().scale(2)));

        let w2 = DifferentialForm::dx(&c, 0).scale(&xx.pow(2).unwrap());
        assert!(!is_exact(&w2));

        let c2 = setup(2, &["x", "y"]);
        let dxdy = DifferentialForm::dx(&c2, 0).wedge(&DifferentialForm::dx(&c2, 1));
        let xi = exact_primitive(&dxdy).unwrap();
        assert_eq!(xi, DifferentialForm::dx(&c2, 1).scale(&x(&c2, 0)));
    }

    #[test]
    fn cartier_examples() {
        let c = setup(3, &["x"]);
        let xx = x(&c, 0);
        let mu = DifferentialForm::dx(&c, 0).scale(&xx.pow(2).unwrap());
        let dec = cartier_decompose(&mu).unwrap();
        assert_eq!(dec.epsilon, LogTermSum::single(xx.clone(), vec![xx.clone()]).unwrap());
        assert!(dec.xi.is_zero());

        let mu = dlog(&xx).unwrap();
        let dec = cartier_decompose(&mu).unwrap();
        assert_eq!(dec.epsilon, LogTermSum::single(RationalFunction::one(&c), vec![xx.clone()]).unwrap());
        assert!(dec.xi.is_zero());

        let mu = DifferentialForm::dx(&c, 0).scale(&xx);
        let dec = cartier_decompose(&mu).unwrap();
        assert!(dec.epsilon.is_empty());
        assert_eq!(dec.xi, DifferentialForm::scalar(xx.pow(2).unwrap().scale(2)));
        assert_eq!(dec.reassemble(), mu);
    }

    #[test]
    fn cartier_rejects_non_closed() {
        let c = setup(2, &["x", "y"]);
        let w = DifferentialForm::dx(&c, 1).scale(&x(&c, 0));
        assert!(matches!(cartier_decompose(&w), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn homotopy_identity_on_basis() {
        // dH + Hd + P = id on every basis element, m = 2, p = 3.
        let c = setup(3, &["x", "y"]);
        for bits in 0..4u64 {
            let w = Wedge::from_bits(bits);
            for e0 in 0..3 {
                for e1 in 0..3 {
                    let t = MonomialTerm {
                        coeff: RationalFunction::one(&c),
                        exps: MultiIndex::new(vec![e0, e1], 3).unwrap(),
                        wedge: w,
                    };
                    let f = t.to_form();
                    let mut lhs = homotopy(&f.d()).add(&harmonic_part(&f));
                    if f.degree() > 0 {
                        lhs = lhs.add(&homotopy(&f).d());
                    }
                    assert_eq!(lhs, f, "basis element {:?}", t);
                }
            }
        }
    }

    #[test]
    fn coexact_split_is_closed_plus_complement() {
        let c = setup(3, &["x", "y"]);
        let (a, b) = (x(&c, 0), x(&c, 1));
        let g = DifferentialForm::dx(&c, 0).scale(&a.mul(&b).add(&b.pow(2).unwrap()));
        let (comp, mu) = coexact_split(&g);
        assert!(mu.d().is_zero());
        assert!(monomial_decompose(&comp).terms().iter().all(MonomialTerm::is_coexact_basis));
        assert_eq!(comp.add(&mu), g);
    }
}
