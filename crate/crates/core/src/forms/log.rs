use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, RationalFunction};
use crate::forms::form::{format_log_term, DifferentialForm};

/// `df / f`. Constants give the zero form.
pub fn dlog(f: &RationalFunction) -> Result<DifferentialForm> {
    if f.is_zero() {
        return Err(Error::Precondition("dlog of zero".into()));
    }
    let df = DifferentialForm::scalar(f.clone()).d();
    Ok(df.scale(&f.inv()?))
}

/// `a · dlog(b_1) ∧ ... ∧ dlog(b_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTerm {
    pub coeff: RationalFunction,
    pub args: Vec<RationalFunction>,
}

impl LogTerm {
    pub fn to_form(&self) -> DifferentialForm {
        let mut acc = DifferentialForm::scalar(self.coeff.clone());
        for b in &self.args {
            acc = acc.wedge(&dlog(b).expect("arguments are nonzero"));
        }
        acc
    }
}

/// A formal sum of logarithmic terms of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTermSum {
    cfg: FieldConfig,
    degree: usize,
    terms: Vec<LogTerm>,
}

impl LogTermSum {
    pub fn new(cfg: &FieldConfig, degree: usize) -> Self {
        Self {
            cfg: cfg.clone(),
            degree,
            terms: Vec::new(),
        }
    }

    pub fn single(coeff: RationalFunction, args: Vec<RationalFunction>) -> Result<Self> {
        let mut s = Self::new(coeff.cfg(), args.len());
        s.push(coeff, args)?;
        Ok(s)
    }

    pub fn push(&mut self, coeff: RationalFunction, args: Vec<RationalFunction>) -> Result<()> {
        self.cfg.ensure_same(coeff.cfg())?;
        if args.len() != self.degree {
            return Err(Error::Precondition(format!(
                "logarithmic term of degree {} in a sum of degree {}",
                args.len(),
                self.degree
            )));
        }
        for b in &args {
            self.cfg.ensure_same(b.cfg())?;
            if b.is_zero() {
                return Err(Error::Precondition("dlog of zero".into()));
            }
        }
        if !coeff.is_zero() {
            self.terms.push(LogTerm { coeff, args });
        }
        Ok(())
    }

    pub fn cfg(&self) -> &FieldConfig {
        &self.cfg
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[LogTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn extend(&mut self, other: &LogTermSum) -> Result<()> {
        for t in &other.terms {
            self.push(t.coeff.clone(), t.args.clone())?;
        }
        Ok(())
    }

    /// Expansion as an honest differential form.
    pub fn to_form(&self) -> DifferentialForm {
        let mut acc = DifferentialForm::zero(&self.cfg, self.degree);
        for t in &self.terms {
            acc = acc.add(&t.to_form());
        }
        acc
    }

    /// Φ: `a ↦ a^p` termwise.
    pub fn phi(&self) -> Self {
        self.map_coeffs(RationalFunction::frobenius)
    }

    /// ℘ as a form: `Σ (a^p − a) dlog b_1 ∧ ... ∧ dlog b_n`.
    pub fn artin_schreier(&self) -> DifferentialForm {
        self.map_coeffs(|a| a.frobenius().sub(a)).to_form()
    }

    pub fn map_coeffs<F>(&self, f: F) -> Self
    where
        F: Fn(&RationalFunction) -> RationalFunction,
    {
        Self {
            cfg: self.cfg.clone(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|t| LogTerm {
                    coeff: f(&t.coeff),
                    args: t.args.clone(),
                })
                .filter(|t| !t.coeff.is_zero())
                .collect(),
        }
    }

    /// Appends `dlog(b)` as a new last factor of every term.
    pub fn wedge_dlog(&self, b: &RationalFunction) -> Result<Self> {
        let mut out = Self::new(&self.cfg, self.degree + 1);
        for t in &self.terms {
            let mut args = t.args.clone();
            args.push(b.clone());
            out.push(t.coeff.clone(), args)?;
        }
        Ok(out)
    }

    pub fn transfer(&self, target: &FieldConfig) -> Result<Self> {
        let mut out = Self::new(target, self.degree);
        for t in &self.terms {
            let args = t.args.iter().map(|b| b.transfer(target)).collect::<Result<Vec<_>>>()?;
            out.push(t.coeff.transfer(target)?, args)?;
        }
        Ok(out)
    }

    /// Merges terms with identical argument lists and sorts them; two sums are
    /// presentation-equal when their normalizations coincide.
    pub fn normalized(&self) -> Self {
        let mut merged: Vec<LogTerm> = Vec::new();
        for t in &self.terms {
            match merged.iter_mut().find(|m| m.args == t.args) {
                Some(m) => m.coeff = m.coeff.add(&t.coeff),
                None => merged.push(t.clone()),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        merged.sort_by(|a, b| {
            let ka: Vec<_> = a.args.iter().map(RationalFunction::sort_key).collect();
            let kb: Vec<_> = b.args.iter().map(RationalFunction::sort_key).collect();
            ka.cmp(&kb).then_with(|| a.coeff.sort_key().cmp(&b.coeff.sort_key()))
        });
        Self {
            cfg: self.cfg.clone(),
            degree: self.degree,
            terms: merged,
        }
    }
}

impl fmt::Display for LogTermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let args: Vec<String> = t.args.iter().map(|b| b.to_string()).collect();
                format_log_term(&t.coeff.to_string(), &args)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(cfg: &FieldConfig, i: usize) -> RationalFunction {
        RationalFunction::var(cfg, i)
    }

    #[test]
    fn dlog_examples() {
        let c = FieldConfig::prime(5, &["x", "y"]).unwrap();
        let (x, y) = (v(&c, 0), v(&c, 1));
        let lhs = dlog(&x.mul(&y)).unwrap();
        let rhs = DifferentialForm::dx(&c, 0)
            .scale(&x.inv().unwrap())
            .add(&DifferentialForm::dx(&c, 1).scale(&y.inv().unwrap()));
        assert_eq!(lhs, rhs);

        let f = x.pow(2).unwrap().mul(&y.pow(3).unwrap());
        let expected = dlog(&x).unwrap().scale_elem(2).add(&dlog(&y).unwrap().scale_elem(3));
        assert_eq!(dlog(&f).unwrap(), expected);
        assert!(dlog(&x.pow(5).unwrap()).unwrap().is_zero());
        assert!(dlog(&RationalFunction::zero(&c)).is_err());
        assert!(dlog(&RationalFunction::from_int(&c, 3)).unwrap().is_zero());
    }

    #[test]
    fn phi_examples() {
        let c = FieldConfig::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (v(&c, 0), v(&c, 1));
        let t = LogTermSum::single(x.clone(), vec![y.clone()]).unwrap();
        assert_eq!(t.phi(), LogTermSum::single(x.pow(2).unwrap(), vec![y.clone()]).unwrap());

        let one = LogTermSum::single(RationalFunction::one(&c), vec![y.clone()]).unwrap();
        assert_eq!(one.phi(), one);

        let s = LogTermSum::single(x.add(&y), vec![x.clone(), y.clone()]).unwrap();
        let expected = LogTermSum::single(x.add(&y).frobenius(), vec![x.clone(), y.clone()]).unwrap();
        assert_eq!(s.phi(), expected);
    }

    #[test]
    fn artin_schreier_examples() {
        let c = FieldConfig::prime(2, &["t"]).unwrap();
        let t = v(&c, 0);
        let s = LogTermSum::single(t.clone(), vec![]).unwrap();
        assert_eq!(
            s.artin_schreier(),
            DifferentialForm::scalar(t.pow(2).unwrap().add(&t))
        );
        assert!(LogTermSum::new(&c, 0).artin_schreier().is_zero());

        let c = FieldConfig::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (v(&c, 0), v(&c, 1));
        let s = LogTermSum::single(x.clone(), vec![y.clone()]).unwrap();
        let expected = dlog(&y).unwrap().scale(&x.pow(3).unwrap().sub(&x));
        assert_eq!(s.artin_schreier(), expected);
    }

    #[test]
    fn normalization_merges_terms() {
        let c = FieldConfig::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (v(&c, 0), v(&c, 1));
        let mut s = LogTermSum::new(&c, 1);
        s.push(x.clone(), vec![y.clone()]).unwrap();
        s.push(x.scale(2), vec![y.clone()]).unwrap();
        assert!(s.normalized().is_empty());
        assert!(s.to_form().is_zero());
    }
}
