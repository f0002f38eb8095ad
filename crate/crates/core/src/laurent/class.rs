use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::config::is_valid_variable_name;
use crate::field::{FieldConfig, RationalFunction};
use crate::forms::form::format_log_term;
use crate::forms::{dlog, DifferentialForm, LogTermSum};

/// K₁((π)): a coefficient field K₁ = F_q(x_1, ..., x_m) and a uniformizer name.
///
/// Forms over the Laurent field are handled through the *extended*
/// configuration, which lists K₁'s variables followed by π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentField {
    base: FieldConfig,
    pi: String,
    ext: FieldConfig,
}

impl LaurentField {
    pub fn new(base: &FieldConfig, pi: &str) -> Result<Self> {
        if !is_valid_variable_name(pi) {
            return Err(Error::Config(format!("invalid uniformizer name `{pi}`")));
        }
        if base.has_var(pi) {
            return Err(Error::Config(format!(
                "uniformizer `{pi}` clashes with a coefficient-field variable"
            )));
        }
        Ok(Self {
            base: base.clone(),
            pi: pi.to_string(),
            ext: base.extended(pi)?,
        })
    }

    pub fn base(&self) -> &FieldConfig {
        &self.base
    }

    pub fn ext(&self) -> &FieldConfig {
        &self.ext
    }

    pub fn pi_name(&self) -> &str {
        &self.pi
    }

    pub fn pi_index(&self) -> usize {
        self.base.nvars()
    }

    pub fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    /// π^k as an element of the extended configuration.
    pub fn pi_pow(&self, k: i64) -> RationalFunction {
        let mut exps = vec![0; self.ext.nvars()];
        exps[self.pi_index()] = k;
        RationalFunction::laurent_monomial(&self.ext, &exps, 1)
    }

    pub fn dlog_pi(&self) -> DifferentialForm {
        dlog(&self.pi_pow(1)).expect("π is nonzero")
    }

    /// Writes `g = u · π^v` with `u` over K₁.
    pub fn pole_log_split(&self, g: &RationalFunction) -> Result<(RationalFunction, i64)> {
        self.ext.ensure_same(g.cfg())?;
        if g.is_zero() {
            return Err(Error::Precondition("cannot split zero".into()));
        }
        match g.laurent_expansion(self.pi_index()).as_deref() {
            Some([(v, u)]) => Ok((u.transfer(&self.base)?, *v)),
            _ => Err(Error::Unsupported(format!(
                "`{g}` is not a K₁-multiple of a power of {}",
                self.pi
            ))),
        }
    }
}

/// `ω_i / π^i + ν_i / π^i ∧ dπ/π` at one pole order `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub omega: DifferentialForm,
    pub nu: DifferentialForm,
}

impl Component {
    pub fn is_zero(&self) -> bool {
        self.omega.is_zero() && self.nu.is_zero()
    }
}

/// A presentation `Σ_i (ω_i/π^i + ν_i/π^i ∧ dπ/π)` over K₁((π)) with i ≥ 0.
///
/// For n = 0 the ν slots are zero 0-forms. Terms of positive π-valuation are
/// never stored: they lie in U_{-1} = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentClass {
    field: LaurentField,
    degree: usize,
    comps: BTreeMap<u64, Component>,
}

impl LaurentClass {
    pub fn zero(field: &LaurentField, degree: usize) -> Self {
        Self {
            field: field.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &LaurentField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nu_degree(&self) -> usize {
        self.degree.saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Components keyed by pole order, ascending.
    pub fn components(&self) -> &BTreeMap<u64, Component> {
        &self.comps
    }

    pub fn component(&self, pole: u64) -> Option<&Component> {
        self.comps.get(&pole)
    }

    pub fn max_pole(&self) -> Option<u64> {
        self.comps.keys().next_back().copied()
    }

    pub fn zero_omega(&self) -> DifferentialForm {
        DifferentialForm::zero(self.field.base(), self.degree)
    }

    pub fn zero_nu(&self) -> DifferentialForm {
        DifferentialForm::zero(self.field.base(), self.nu_degree())
    }

    /// Adds `ω/π^pole + ν/π^pole ∧ dπ/π`.
    pub fn add_component(&mut self, pole: u64, omega: &DifferentialForm, nu: &DifferentialForm) -> Result<()> {
        let base = self.field.base().clone();
        base.ensure_same(omega.cfg())?;
        base.ensure_same(nu.cfg())?;
        if omega.degree() != self.degree {
            return Err(Error::Precondition(format!(
                "ω has degree {} in a class of degree {}",
                omega.degree(),
                self.degree
            )));
        }
        if self.degree == 0 {
            if !nu.is_zero() {
                return Err(Error::Precondition("a class of degree 0 has no dπ/π part".into()));
            }
        } else if nu.degree() != self.degree - 1 {
            return Err(Error::Precondition(format!(
                "ν has degree {} in a class of degree {}",
                nu.degree(),
                self.degree
            )));
        }
        let zero_nu = self.zero_nu();
        let entry = self.comps.entry(pole).or_insert_with(|| Component {
            omega: DifferentialForm::zero(&base, omega.degree()),
            nu: zero_nu,
        });
        entry.omega = entry.omega.add(omega);
        if !nu.is_zero() {
            entry.nu = entry.nu.add(nu);
        }
        if entry.is_zero() {
            self.comps.remove(&pole);
        }
        Ok(())
    }

    pub fn take_component(&mut self, pole: u64) -> Option<Component> {
        self.comps.remove(&pole)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field || self.degree != other.degree {
            return Err(Error::ConfigMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.comps {
            out.add_component(*k, &c.omega, &c.nu)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(k, c)| {
                    (
                        *k,
                        Component {
                            omega: c.omega.neg(),
                            nu: c.nu.neg(),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Reads a form over the extended configuration whose coefficients are
    /// Laurent polynomials in π over K₁.
    pub fn from_form(field: &LaurentField, w: &DifferentialForm) -> Result<Self> {
        field.ext().ensure_same(w.cfg())?;
        let n = w.degree();
        let pi = field.pi_index();
        let base = field.base();
        let mut out = Self::zero(field, n);
        for (wedge, f) in w.terms() {
            let expansion = f.laurent_expansion(pi).ok_or_else(|| {
                Error::Unsupported(format!("coefficient `{f}` is not a Laurent polynomial in {}", field.pi_name()))
            })?;
            let has_pi = wedge.contains(pi);
            let rest = DifferentialForm::monomial(RationalFunction::one(field.ext()), wedge.without(pi)).transfer(base)?;
            for (k, c) in expansion {
                let c = c.transfer(base)?;
                if has_pi {
                    // c π^k dx_J ∧ dπ = c π^{k+1} dx_J ∧ dπ/π; π is the last variable.
                    let pole = -(k + 1);
                    if pole >= 0 {
                        out.add_component(pole as u64, &out.zero_omega(), &rest.scale(&c))?;
                    }
                } else if k <= 0 {
                    out.add_component((-k) as u64, &rest.scale(&c), &out.zero_nu())?;
                }
            }
        }
        Ok(out)
    }

    /// Reads a logarithmic presentation over the extended configuration by
    /// splitting each dlog argument as `u·π^v` and moving dπ/π to the last slot.
    pub fn from_log_terms(field: &LaurentField, s: &LogTermSum) -> Result<Self> {
        field.ext().ensure_same(s.cfg())?;
        let n = s.degree();
        let base = field.base();
        let mut out = Self::zero(field, n);
        for t in s.terms() {
            let expansion = t.coeff.laurent_expansion(field.pi_index()).ok_or_else(|| {
                Error::Unsupported(format!("coefficient `{}` is not a Laurent polynomial in {}", t.coeff, field.pi_name()))
            })?;
            let mut units = Vec::with_capacity(n);
            let mut vals = Vec::with_capacity(n);
            for b in &t.args {
                let (u, v) = field.pole_log_split(b)?;
                units.push(dlog(&u)?);
                vals.push(v);
            }
            let wedge_all = |skip: Option<usize>| {
                let mut acc = DifferentialForm::scalar(RationalFunction::one(base));
                for (i, du) in units.iter().enumerate() {
                    if Some(i) != skip {
                        acc = acc.wedge(du);
                    }
                }
                acc
            };
            for (k, c) in expansion {
                if k > 0 {
                    continue;
                }
                let pole = (-k) as u64;
                let c = c.transfer(base)?;
                out.add_component(pole, &wedge_all(None).scale(&c), &out.zero_nu())?;
                for i in 0..n {
                    if vals[i] == 0 {
                        continue;
                    }
                    // dlog π sits in slot i+1 of n; moving it last costs (−1)^{n−i−1}.
                    let sign = if (n - i - 1) % 2 == 1 { -vals[i] } else { vals[i] };
                    let scale = c.mul(&RationalFunction::from_int(base, sign));
                    out.add_component(pole, &out.zero_omega(), &wedge_all(Some(i)).scale(&scale))?;
                }
            }
        }
        Ok(out)
    }

    /// The presented form over the extended configuration.
    pub fn to_form(&self) -> DifferentialForm {
        let ext = self.field.ext();
        let dlog_pi = self.field.dlog_pi();
        let mut acc = DifferentialForm::zero(ext, self.degree);
        for (k, c) in &self.comps {
            let scale = self.field.pi_pow(-(*k as i64));
            let omega = c.omega.transfer(ext).expect("K₁ embeds in the extension");
            acc = acc.add(&omega.scale(&scale));
            if self.degree > 0 && !c.nu.is_zero() {
                let nu = c.nu.transfer(ext).expect("K₁ embeds in the extension");
                acc = acc.add(&nu.scale(&scale).wedge(&dlog_pi));
            }
        }
        acc
    }
}

impl fmt::Display for LaurentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let pi = self.field.pi_name();
        let mut parts = Vec::new();
        for (k, c) in self.comps.iter().rev() {
            let mut inner: Vec<String> = Vec::new();
            if !c.omega.is_zero() {
                inner.push(c.omega.to_string());
            }
            for (coeff, mut names) in c.nu.dlog_terms() {
                names.push(pi.to_string());
                inner.push(format_log_term(&coeff.to_string(), &names));
            }
            let body = inner.join(" + ");
            if *k == 0 {
                parts.push(body);
            } else {
                parts.push(format!("{pi}^-{k}*({body})"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> LaurentField {
        let base = FieldConfig::prime(2, &["x", "y", "z"]).unwrap();
        LaurentField::new(&base, "pi").unwrap()
    }

    #[test]
    fn pole_log_split_examples() {
        let lf = setup();
        let ext = lf.ext().clone();
        let y = RationalFunction::var(&ext, 1);
        let x = RationalFunction::var(&ext, 0);
        let (u, v) = lf.pole_log_split(&y.mul(&lf.pi_pow(3))).unwrap();
        assert_eq!((u, v), (RationalFunction::var(lf.base(), 1), 3));
        let (u, v) = lf.pole_log_split(&lf.pi_pow(1)).unwrap();
        assert!(u.is_one() && v == 1);
        let (u, v) = lf.pole_log_split(&x.mul(&lf.pi_pow(-2))).unwrap();
        assert_eq!((u, v), (RationalFunction::var(lf.base(), 0), -2));
        assert!(lf.pole_log_split(&x.add(&lf.pi_pow(1))).is_err());
    }

    #[test]
    fn form_and_log_readings_agree() {
        let lf = setup();
        let ext = lf.ext().clone();
        let v = |i| RationalFunction::var(&ext, i);
        let mut s = LogTermSum::new(&ext, 1);
        s.push(v(0), vec![v(1)]).unwrap();
        s.push(v(2), vec![lf.pi_pow(1)]).unwrap();
        s.push(v(0).mul(&lf.pi_pow(-2)), vec![v(1).mul(&lf.pi_pow(1))]).unwrap();
        let a = LaurentClass::from_log_terms(&lf, &s).unwrap();
        let b = LaurentClass::from_form(&lf, &s.to_form()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_form(), s.to_form());
        assert_eq!(a.max_pole(), Some(2));
    }

    #[test]
    fn positive_valuation_is_dropped() {
        let lf = setup();
        let ext = lf.ext().clone();
        let w = dlog(&RationalFunction::var(&ext, 1)).unwrap().scale(&lf.pi_pow(2));
        assert!(LaurentClass::from_form(&lf, &w).unwrap().is_zero());
    }

    #[test]
    fn display() {
        let lf = setup();
        let ext = lf.ext().clone();
        let v = |i| RationalFunction::var(&ext, i);
        let mut s = LogTermSum::new(&ext, 1);
        s.push(v(0), vec![v(1)]).unwrap();
        s.push(v(2), vec![lf.pi_pow(1)]).unwrap();
        let c = LaurentClass::from_log_terms(&lf, &s).unwrap();
        assert_eq!(c.to_string(), "x*dlog(y) + z*dlog(pi)");
    }
}
