use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{
    cartier_decompose, homotopy, monomial_decompose, DifferentialForm, LogTermSum, MonomialTerm,
    MonomialTermDecomposition,
};
use crate::laurent::class::{Component, LaurentClass, LaurentField};

/// The monomial table of one pole order `k ≥ 1` of a canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HigherTable {
    /// `p ∤ k`: `h_k = Σ α^p x^e dx_I / π^k`.
    Alpha(MonomialTermDecomposition),
    /// `p | k`: `h_k = Σ β^p x^e dx_I / π^k + Σ γ^p x^e dx_J / π^k ∧ dπ/π`,
    /// both tables on coexact basis elements.
    BetaGamma {
        beta: MonomialTermDecomposition,
        gamma: MonomialTermDecomposition,
    },
}

impl HigherTable {
    pub fn is_empty(&self) -> bool {
        match self {
            HigherTable::Alpha(a) => a.is_empty(),
            HigherTable::BetaGamma { beta, gamma } => beta.is_empty() && gamma.is_empty(),
        }
    }

    pub fn into_alpha(self) -> Option<MonomialTermDecomposition> {
        match self {
            HigherTable::Alpha(a) => Some(a),
            HigherTable::BetaGamma { .. } => None,
        }
    }

    fn reassemble(&self, zero_nu: &DifferentialForm) -> Component {
        match self {
            HigherTable::Alpha(a) => Component {
                omega: a.reassemble(),
                nu: zero_nu.clone(),
            },
            HigherTable::BetaGamma { beta, gamma } => Component {
                omega: beta.reassemble(),
                nu: if gamma.degree() == zero_nu.degree() {
                    gamma.reassemble()
                } else {
                    zero_nu.clone()
                },
            },
        }
    }
}

/// `f ≡ h_0 + Σ_{k≥1} h_k` with `h_0 = ω_0 + ν_0 ∧ dπ/π` and every higher
/// table in the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    field: LaurentField,
    degree: usize,
    pub h0_omega: DifferentialForm,
    pub h0_nu: DifferentialForm,
    pub higher: BTreeMap<u64, HigherTable>,
}

impl CanonicalDecomposition {
    pub fn field(&self) -> &LaurentField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Whether the class lies in U_0.
    pub fn in_u0(&self) -> bool {
        self.higher.is_empty()
    }

    /// The canonical representative as a Laurent presentation.
    pub fn reassemble(&self) -> LaurentClass {
        let mut out = LaurentClass::zero(&self.field, self.degree);
        let zero_nu = out.zero_nu();
        out.add_component(0, &self.h0_omega, &self.h0_nu).expect("h_0 matches the class degree");
        for (k, t) in &self.higher {
            let c = t.reassemble(&zero_nu);
            out.add_component(*k, &c.omega, &c.nu).expect("tables match the class degree");
        }
        out
    }
}

/// The moves used by [`canonicalize`]: the input minus the output equals
/// `Σ d(exact) + Σ ℘(wp)` over the extended configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCertificate {
    pub exact: Vec<DifferentialForm>,
    pub wp: Vec<LogTermSum>,
}

impl CanonicalCertificate {
    pub fn correction(&self, field: &LaurentField, degree: usize) -> DifferentialForm {
        let mut acc = DifferentialForm::zero(field.ext(), degree);
        for e in &self.exact {
            acc = acc.add(&e.d());
        }
        for s in &self.wp {
            acc = acc.add(&s.artin_schreier());
        }
        acc
    }

    pub fn verify(&self, input: &LaurentClass, output: &LaurentClass) -> bool {
        let diff = input.to_form().sub(&output.to_form());
        diff == self.correction(input.field(), input.degree())
    }
}

fn coexact_table(w: &DifferentialForm) -> MonomialTermDecomposition {
    let dec = monomial_decompose(w);
    debug_assert!(dec.terms().iter().all(MonomialTerm::is_coexact_basis));
    dec
}

fn pi_scaled(field: &LaurentField, s: &LogTermSum, k: i64) -> LogTermSum {
    let ext = field.ext();
    let scale = field.pi_pow(k);
    s.transfer(ext)
        .expect("K₁ embeds in the extension")
        .map_coeffs(|a| a.mul(&scale))
}

/// Reduces a presentation to the canonical form, working down from the
/// highest pole. Pole order 0 is left untouched.
pub fn canonicalize(f: &LaurentClass) -> (CanonicalDecomposition, CanonicalCertificate) {
    let field = f.field().clone();
    let n = f.degree();
    let p = field.characteristic() as u64;
    let gf = field.base().field();
    let ext = field.ext().clone();
    let base = field.base().clone();
    let zero_nu = f.zero_nu();
    let mut cur = f.clone();
    let mut higher = BTreeMap::new();
    let mut cert = CanonicalCertificate {
        exact: Vec::new(),
        wp: Vec::new(),
    };

    while let Some(big_n) = cur.max_pole().filter(|&k| k > 0) {
        let Component { omega: g, nu: g1 } = cur.take_component(big_n).expect("max pole exists");
        let pole = field.pi_pow(-(big_n as i64));
        if big_n % p != 0 {
            if n == 0 {
                higher.insert(big_n, HigherTable::Alpha(monomial_decompose(&g)));
                continue;
            }
            // g'/π^N ∧ dπ/π ≡ s N^{-1} dg'/π^N with s = (−1)^{n−1}.
            let ninv = gf.inv(gf.from_int(big_n as i64)).expect("p ∤ N");
            let c = if (n - 1) % 2 == 1 { gf.neg(ninv) } else { ninv };
            let merged = g.add(&g1.d().scale_elem(c));
            if !g1.is_zero() {
                let prim = g1.transfer(&ext).expect("K₁ embeds").scale(&pole).scale_elem(gf.neg(c));
                cert.exact.push(prim);
            }
            let table = monomial_decompose(&merged);
            if !table.is_empty() {
                higher.insert(big_n, HigherTable::Alpha(table));
            }
        } else {
            let low = big_n / p;
            let low_scale = -(low as i64);
            let b = homotopy(&g.d());
            let mu = g.sub(&b);
            let cart = cartier_decompose(&mu).expect("μ is closed");
            if n > 0 && !cart.xi.is_zero() {
                cert.exact.push(cart.xi.transfer(&ext).expect("K₁ embeds").scale(&pole));
            }
            if !cart.epsilon.is_empty() {
                cert.wp.push(pi_scaled(&field, &cart.epsilon, low_scale));
            }
            let push_omega = cart.epsilon.to_form();
            let mut push_nu = zero_nu.clone();
            let gamma = if n > 0 {
                let c = homotopy(&g1.d());
                let mu1 = g1.sub(&c);
                let cart1 = cartier_decompose(&mu1).expect("μ' is closed");
                if n > 1 && !cart1.xi.is_zero() {
                    let x = cart1.xi.transfer(&ext).expect("K₁ embeds").scale(&pole);
                    cert.exact.push(x.wedge(&field.dlog_pi()));
                }
                if !cart1.epsilon.is_empty() {
                    let s = pi_scaled(&field, &cart1.epsilon, low_scale)
                        .wedge_dlog(&field.pi_pow(1))
                        .expect("π is nonzero");
                    cert.wp.push(s);
                }
                push_nu = cart1.epsilon.to_form();
                coexact_table(&c)
            } else {
                MonomialTermDecomposition::from_terms(&base, 0, Vec::new())
            };
            let table = HigherTable::BetaGamma {
                beta: coexact_table(&b),
                gamma,
            };
            if !table.is_empty() {
                higher.insert(big_n, table);
            }
            if !push_omega.is_zero() || !push_nu.is_zero() {
                cur.add_component(low, &push_omega, &push_nu).expect("degrees match");
            }
        }
    }

    let h0 = cur.take_component(0).unwrap_or(Component {
        omega: f.zero_omega(),
        nu: zero_nu,
    });
    (
        CanonicalDecomposition {
            field,
            degree: n,
            h0_omega: h0.omega,
            h0_nu: h0.nu,
            higher,
        },
        cert,
    )
}

/// The smallest `m ≥ 0` with the canonical form in U_m, or −1 when the
/// canonical form vanishes.
pub fn filtration_level(f: &LaurentClass) -> i64 {
    let (dec, _) = canonicalize(f);
    match dec.higher.keys().next_back() {
        Some(k) => *k as i64,
        None if dec.h0_omega.is_zero() && dec.h0_nu.is_zero() => -1,
        None => 0,
    }
}

/// `(∂₁ f, ∂₂ f) = (ω_0, ν_0)` for a class in U_0.
pub fn residues(f: &LaurentClass) -> Result<(DifferentialForm, DifferentialForm)> {
    let (dec, _) = canonicalize(f);
    if let Some(k) = dec.higher.keys().next_back() {
        return Err(Error::Filtration {
            level: *k as i64,
            required: 0,
        });
    }
    Ok((dec.h0_omega, dec.h0_nu))
}

/// The image of a class of U_m in gr_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedImage {
    /// `p ∤ m`: the α-form in Ω^n_{K₁}.
    Omega(DifferentialForm),
    /// `p | m`, `m > 0`: the (β, γ) pair in (Ω^n/Z^n) ⊕ (Ω^{n−1}/Z^{n−1}).
    Pair(DifferentialForm, DifferentialForm),
    /// `m = 0`: the residues.
    Residues(DifferentialForm, DifferentialForm),
}

impl GradedImage {
    pub fn is_zero(&self) -> bool {
        match self {
            GradedImage::Omega(w) => w.is_zero(),
            GradedImage::Pair(a, b) | GradedImage::Residues(a, b) => a.is_zero() && b.is_zero(),
        }
    }
}

/// The graded image of `f` at level `m`. Fails unless `f ∈ U_m`.
pub fn graded_image(f: &LaurentClass, m: u64) -> Result<GradedImage> {
    let (dec, _) = canonicalize(f);
    let level = dec.higher.keys().next_back().copied().unwrap_or(0);
    if level > m {
        return Err(Error::Filtration {
            level: level as i64,
            required: m as i64,
        });
    }
    let base = f.field().base();
    let n = f.degree();
    if m == 0 {
        return Ok(GradedImage::Residues(dec.h0_omega, dec.h0_nu));
    }
    let zero_nu = DifferentialForm::zero(base, n.saturating_sub(1));
    let p = f.field().characteristic() as u64;
    let table = dec.higher.get(&m);
    if m % p != 0 {
        let w = match table {
            Some(HigherTable::Alpha(a)) => a.reassemble(),
            _ => DifferentialForm::zero(base, n),
        };
        Ok(GradedImage::Omega(w))
    } else {
        let c = match table {
            Some(t) => t.reassemble(&zero_nu),
            None => Component {
                omega: DifferentialForm::zero(base, n),
                nu: zero_nu,
            },
        };
        Ok(GradedImage::Pair(c.omega, c.nu))
    }
}

/// `H ∘ d`: the projection of Ω^n onto the coexact complement, which
/// identifies Ω^n / Z^n with a space of forms.
pub fn coexact_projection(w: &DifferentialForm) -> DifferentialForm {
    homotopy(&w.d())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldConfig, RationalFunction};
    use crate::forms::dlog;

    fn setup(p: u32) -> LaurentField {
        let base = FieldConfig::prime(p, &["x", "y"]).unwrap();
        LaurentField::new(&base, "pi").unwrap()
    }

    fn var(lf: &LaurentField, i: usize) -> RationalFunction {
        RationalFunction::var(lf.ext(), i)
    }

    fn check(f: &LaurentClass) -> CanonicalDecomposition {
        let (dec, cert) = canonicalize(f);
        let out = dec.reassemble();
        assert!(cert.verify(f, &out), "certificate fails for {f}");
        let (again, cert2) = canonicalize(&out);
        assert_eq!(again, dec);
        assert!(cert2.exact.is_empty() && cert2.wp.is_empty());
        dec
    }

    #[test]
    fn scalar_poles_in_char_two() {
        let lf = setup(2);
        let one = |k| LaurentClass::from_form(&lf, &DifferentialForm::scalar(lf.pi_pow(k))).unwrap();
        assert_eq!(filtration_level(&one(-2)), 1);
        assert_eq!(filtration_level(&one(-3)), 3);
        let wp = one(-2).add(&one(-1)).unwrap();
        check(&wp);
        assert_eq!(filtration_level(&wp), -1);
        let f = one(-4).add(&LaurentClass::from_form(&lf, &DifferentialForm::scalar(var(&lf, 0).mul(&lf.pi_pow(-2)))).unwrap()).unwrap();
        check(&f);
    }

    #[test]
    fn frobenius_pole_descends() {
        let lf = setup(2);
        let (x, y) = (var(&lf, 0), var(&lf, 1));
        let w = dlog(&y).unwrap().scale(&x.pow(2).unwrap().mul(&lf.pi_pow(-2)));
        let f = LaurentClass::from_form(&lf, &w).unwrap();
        let dec = check(&f);
        assert_eq!(dec.higher.keys().copied().collect::<Vec<_>>(), vec![1]);
        let expected = DifferentialForm::dx(lf.base(), 1)
            .scale(&RationalFunction::var(lf.base(), 0).div(&RationalFunction::var(lf.base(), 1)).unwrap());
        assert_eq!(dec.higher[&1].clone().into_alpha().unwrap().reassemble(), expected);
    }

    #[test]
    fn nu_merges_into_alpha_with_sign() {
        for p in [3, 5] {
            let lf = setup(p);
            let (x, y) = (var(&lf, 0), var(&lf, 1));
            // y/π dx ∧ dlog π, degree 2; x/π dx ∧ dlog π would be exact.
            let w = DifferentialForm::dx(lf.ext(), 0)
                .scale(&y.mul(&lf.pi_pow(-1)))
                .wedge(&lf.dlog_pi());
            let f = LaurentClass::from_form(&lf, &w).unwrap();
            let dec = check(&f);
            assert!(dec.higher.contains_key(&1));
            let w = dlog(&y).unwrap().scale(&x.mul(&lf.pi_pow(-2))).wedge(&lf.dlog_pi());
            check(&LaurentClass::from_form(&lf, &w).unwrap());
        }
    }

    #[test]
    fn residues_and_filtration_errors() {
        let lf = setup(3);
        let (x, y) = (var(&lf, 0), var(&lf, 1));
        let w = dlog(&y).unwrap().scale(&x).add(&lf.dlog_pi().scale(&y));
        let f = LaurentClass::from_form(&lf, &w).unwrap();
        let (a, b) = residues(&f).unwrap();
        assert_eq!(a.to_string(), "x*dlog(y)");
        assert_eq!(b.to_string(), "y");
        let g = LaurentClass::from_form(&lf, &w.scale(&lf.pi_pow(-1))).unwrap();
        assert!(matches!(residues(&g), Err(Error::Filtration { level: 1, required: 0 })));
        assert!(matches!(graded_image(&g, 1), Ok(GradedImage::Omega(_))));
    }

    #[test]
    fn frobenius_pole_with_nu_part() {
        let lf = setup(3);
        let (x, y) = (var(&lf, 0), var(&lf, 1));
        let w = dlog(&y)
            .unwrap()
            .scale(&x.pow(3).unwrap().mul(&lf.pi_pow(-3)))
            .add(&dlog(&x).unwrap().scale(&x.mul(&y).mul(&lf.pi_pow(-3))))
            .add(&DifferentialForm::dx(lf.ext(), 1).scale(&x.pow(2).unwrap().mul(&lf.pi_pow(-3))));
        let w2 = w.wedge(&lf.dlog_pi());
        for form in [w, w2.clone(), w2.add(&DifferentialForm::dx(lf.ext(), 0).wedge(&lf.dlog_pi()).scale(&lf.pi_pow(-9)))] {
            check(&LaurentClass::from_form(&lf, &form).unwrap());
        }
    }
}
