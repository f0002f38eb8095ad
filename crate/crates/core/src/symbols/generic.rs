use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, RationalFunction};
use crate::forms::{as_reduce, ASReducedClass, DifferentialForm, LogTermSum};
use crate::laurent::{residues, LaurentClass, LaurentField};

/// Variables `x_1..x_ℓ, y_{1,1}..y_{ℓ,n}` of k_{ℓ,n} = F_q(x_i, y_{i,j}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSymbolSpec {
    pub n: usize,
    pub l: usize,
    cfg: FieldConfig,
}

pub fn x_name(i: usize) -> String {
    format!("x{i}")
}

/// `y{i}{j}`, or `y{i}_{j}` once an index reaches two digits.
pub fn y_name(i: usize, j: usize) -> String {
    if i >= 10 || j >= 10 {
        format!("y{i}_{j}")
    } else {
        format!("y{i}{j}")
    }
}

impl GenericSymbolSpec {
    pub fn new(n: usize, l: usize, p: u32, field_degree: u32) -> Result<Self> {
        if n == 0 || l == 0 {
            return Err(Error::Precondition("generic symbols need n ≥ 1 and ℓ ≥ 1".into()));
        }
        let mut vars: Vec<String> = (1..=l).map(x_name).collect();
        for i in 1..=l {
            for j in 1..=n {
                vars.push(y_name(i, j));
            }
        }
        Ok(Self {
            n,
            l,
            cfg: FieldConfig::new(p, field_degree, &vars)?,
        })
    }

    pub fn cfg(&self) -> &FieldConfig {
        &self.cfg
    }

    /// The y_{ℓ,n}-adic valuation.
    pub fn last_valuation(&self) -> ValuationSpec {
        ValuationSpec {
            cfg: self.cfg.clone(),
            var: y_name(self.l, self.n),
        }
    }
}

/// The `var`-adic valuation on a rational function field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationSpec {
    pub cfg: FieldConfig,
    pub var: String,
}

impl ValuationSpec {
    pub fn new(cfg: &FieldConfig, var: &str) -> Result<Self> {
        cfg.index_of(var)?;
        Ok(Self {
            cfg: cfg.clone(),
            var: var.to_string(),
        })
    }

    pub fn index(&self) -> usize {
        self.cfg.index_of(&self.var).expect("checked on construction")
    }

    /// K₁((var)) with K₁ the remaining variables.
    pub fn laurent_field(&self) -> Result<LaurentField> {
        LaurentField::new(&self.cfg.without(&self.var)?, &self.var)
    }
}

fn symbol_term(cfg: &FieldConfig, i: usize, degree: usize) -> Result<(RationalFunction, Vec<RationalFunction>)> {
    let coeff = RationalFunction::var_named(cfg, &x_name(i))?;
    let args = (1..=degree)
        .map(|j| RationalFunction::var_named(cfg, &y_name(i, j)))
        .collect::<Result<Vec<_>>>()?;
    Ok((coeff, args))
}

/// `Σ_{i ≤ ℓ} x_i dlog y_{i,1} ∧ ... ∧ dlog y_{i,n}`.
pub fn make_generic_symbol(spec: &GenericSymbolSpec) -> LogTermSum {
    generic_over(&spec.cfg, spec.l, spec.n).expect("all variables are configured")
}

/// The generic symbol of length `l` and degree `n` written over any
/// configuration containing its variables.
fn generic_over(cfg: &FieldConfig, l: usize, n: usize) -> Result<LogTermSum> {
    let mut s = LogTermSum::new(cfg, n);
    for i in 1..=l {
        let (c, args) = symbol_term(cfg, i, n)?;
        s.push(c, args)?;
    }
    Ok(s)
}

/// Computed residues of gen(n+1, ℓ) at y_{ℓ,n} next to the predicted ones:
/// `∂₁ = gen(n+1, ℓ−1)` and `∂₂ = x_ℓ dlog y_{ℓ,1} ∧ ... ∧ dlog y_{ℓ,n−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericResidues {
    pub d1: DifferentialForm,
    pub d2: DifferentialForm,
    pub expected_d1: DifferentialForm,
    pub expected_d2: DifferentialForm,
}

impl GenericResidues {
    pub fn matches(&self) -> bool {
        self.d1 == self.expected_d1 && self.d2 == self.expected_d2
    }
}

/// Residues of a logarithmic presentation at a variable-adic valuation.
pub fn residues_at(s: &LogTermSum, val: &ValuationSpec) -> Result<(DifferentialForm, DifferentialForm)> {
    val.cfg.ensure_same(s.cfg())?;
    let field = val.laurent_field()?;
    let class = LaurentClass::from_log_terms(&field, &s.transfer(field.ext())?)?;
    residues(&class)
}

pub fn generic_residues(spec: &GenericSymbolSpec, val: &ValuationSpec) -> Result<GenericResidues> {
    let last = y_name(spec.l, spec.n);
    if val.var != last || val.cfg != spec.cfg {
        return Err(Error::Precondition(format!(
            "generic residues are taken at the {last}-adic valuation"
        )));
    }
    let (d1, d2) = residues_at(&make_generic_symbol(spec), val)?;
    let k1 = spec.cfg.without(&last)?;
    let expected_d1 = generic_over(&k1, spec.l - 1, spec.n)?.to_form();
    let (c, args) = symbol_term(&k1, spec.l, spec.n - 1)?;
    let expected_d2 = LogTermSum::single(c, args)?.to_form();
    Ok(GenericResidues {
        d1,
        d2,
        expected_d1,
        expected_d2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueMap {
    First,
    Second,
}

impl fmt::Display for ResidueMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueMap::First => write!(f, "d1"),
            ResidueMap::Second => write!(f, "d2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub variable: String,
    pub map: ResidueMap,
    pub result: DifferentialForm,
}

/// Iterated second residues of gen(n+1, ℓ) at y_{ℓ,n}, ..., y_{ℓ,1}, ending in
/// the class of x_ℓ in F_q(x_ℓ)/℘.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueChainCertificate {
    pub steps: Vec<ChainStep>,
    pub terminal: ASReducedClass,
    pub terminal_input: RationalFunction,
}

impl ResidueChainCertificate {
    /// The terminal class is nonzero and its reduction certificate checks.
    pub fn is_nontrivial(&self) -> bool {
        !self.terminal.trivial && self.terminal.verify(&self.terminal_input)
    }
}

pub fn residue_chain_certificate(spec: &GenericSymbolSpec) -> Result<ResidueChainCertificate> {
    let mut current = make_generic_symbol(spec).to_form();
    let mut steps = Vec::with_capacity(spec.n);
    for j in (1..=spec.n).rev() {
        let var = y_name(spec.l, j);
        let val = ValuationSpec::new(current.cfg(), &var)?;
        let field = val.laurent_field()?;
        let class = LaurentClass::from_form(&field, &current.transfer(field.ext())?)?;
        let (_, d2) = residues(&class)?;
        steps.push(ChainStep {
            variable: var,
            map: ResidueMap::Second,
            result: d2.clone(),
        });
        current = d2;
    }
    let scalar = current
        .as_scalar()
        .ok_or_else(|| Error::Precondition("chain did not end in degree 0".into()))?;
    let xl = x_name(spec.l);
    let one_var = FieldConfig::new(spec.cfg.characteristic(), spec.cfg.degree(), &[xl.as_str()])?;
    let terminal_input = scalar.transfer(&one_var)?;
    let terminal = as_reduce(&terminal_input)?;
    Ok(ResidueChainCertificate {
        steps,
        terminal,
        terminal_input,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_symbol_display() {
        let s = GenericSymbolSpec::new(1, 2, 2, 1).unwrap();
        assert_eq!(make_generic_symbol(&s).to_string(), "x1*dlog(y11) + x2*dlog(y21)");
        let s = GenericSymbolSpec::new(2, 1, 3, 1).unwrap();
        assert_eq!(make_generic_symbol(&s).to_form().to_string(), "x1*dlog(y11)^dlog(y12)");
        assert_eq!(y_name(10, 2), "y10_2");
    }

    #[test]
    fn residue_examples() {
        for (n, l, d1, d2) in [
            (1, 1, "0", "x1"),
            (1, 2, "x1*dlog(y11)", "x2"),
            (2, 1, "0", "x1*dlog(y11)"),
        ] {
            let s = GenericSymbolSpec::new(n, l, 2, 1).unwrap();
            let r = generic_residues(&s, &s.last_valuation()).unwrap();
            assert!(r.matches());
            assert_eq!(r.d1.to_string(), d1);
            assert_eq!(r.d2.to_string(), d2);
        }
        let s = GenericSymbolSpec::new(1, 2, 2, 1).unwrap();
        let wrong = ValuationSpec::new(s.cfg(), "y11").unwrap();
        assert!(generic_residues(&s, &wrong).is_err());
    }

    #[test]
    fn chains_are_nontrivial() {
        for p in [2, 3] {
            for n in 1..=3 {
                let s = GenericSymbolSpec::new(n, 2, p, 1).unwrap();
                let c = residue_chain_certificate(&s).unwrap();
                assert_eq!(c.steps.len(), n);
                assert!(c.is_nontrivial());
                assert_eq!(c.terminal_input.to_string(), "x2");
            }
        }
    }
}
