use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, RationalFunction};
use crate::symbols::generic::ValuationSpec;

/// A formal integer combination of symbols `{a_1, ..., a_n}` with monomial
/// entries `c·x^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorSymbol {
    cfg: FieldConfig,
    length: usize,
    terms: Vec<(i64, Vec<RationalFunction>)>,
}

fn check_monomial(a: &RationalFunction) -> Result<()> {
    if a.is_zero() {
        return Err(Error::Precondition("symbol entries must be nonzero".into()));
    }
    if a.as_laurent_monomial().is_none() {
        return Err(Error::Unsupported(format!("symbol entry `{a}` is not a monomial")));
    }
    Ok(())
}

impl MilnorSymbol {
    pub fn zero(cfg: &FieldConfig, length: usize) -> Self {
        Self {
            cfg: cfg.clone(),
            length,
            terms: Vec::new(),
        }
    }

    pub fn single(cfg: &FieldConfig, entries: Vec<RationalFunction>) -> Result<Self> {
        let mut s = Self::zero(cfg, entries.len());
        s.push(1, entries)?;
        Ok(s)
    }

    pub fn push(&mut self, coeff: i64, entries: Vec<RationalFunction>) -> Result<()> {
        if entries.len() != self.length {
            return Err(Error::Precondition(format!(
                "symbol of length {} in a sum of length {}",
                entries.len(),
                self.length
            )));
        }
        for a in &entries {
            self.cfg.ensure_same(a.cfg())?;
            check_monomial(a)?;
        }
        if coeff == 0 || entries.iter().any(RationalFunction::is_one) {
            return Ok(());
        }
        match self.terms.iter_mut().find(|(_, e)| *e == entries) {
            Some(t) => t.0 += coeff,
            None => self.terms.push((coeff, entries)),
        }
        self.terms.retain(|(c, _)| *c != 0);
        Ok(())
    }

    pub fn cfg(&self) -> &FieldConfig {
        &self.cfg
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn terms(&self) -> &[(i64, Vec<RationalFunction>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.cfg.ensure_same(&other.cfg)?;
        let mut out = self.clone();
        for (c, e) in &other.terms {
            out.push(*c, e.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(&self.cfg, self.length);
        for (c, e) in &self.terms {
            out.push(c * k, e.clone()).expect("entries already checked");
        }
        out
    }

    /// Equality of formal sums up to term order.
    pub fn same_sum(&self, other: &Self) -> bool {
        self.cfg == other.cfg
            && self.length == other.length
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|t| other.terms.contains(t))
    }

    /// Replaces the variable `var` by `value` in every entry; the result lives
    /// over `target`, which must contain the remaining variables.
    pub fn substitute(&self, var: &str, value: &RationalFunction, target: &FieldConfig) -> Result<Self> {
        target.ensure_same(value.cfg())?;
        let idx = self.cfg.index_of(var)?;
        let mut out = Self::zero(target, self.length);
        for (c, entries) in &self.terms {
            let mut new_entries = Vec::with_capacity(entries.len());
            for a in entries {
                let (coef, mut exps) = a.as_laurent_monomial().expect("entries are monomials");
                let k = exps[idx];
                exps[idx] = 0;
                let rest = RationalFunction::laurent_monomial(&self.cfg, &exps, coef).transfer(target)?;
                new_entries.push(rest.mul(&value.pow(k)?));
            }
            out.push(*c, new_entries)?;
        }
        Ok(out)
    }
}

impl fmt::Display for MilnorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, entries)) in self.terms.iter().enumerate() {
            let body: Vec<String> = entries.iter().map(|a| a.to_string()).collect();
            let body = format!("{{{}}}", body.join(", "));
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if mag == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

/// ∂^M at the valuation `val`, into symbols over the residue field.
///
/// Each entry `u·t^a` contributes `{u} + a{t}`; products with no `t` are units
/// and vanish, a single `t` in slot `i` is moved to the front with sign
/// `(−1)^{i−1}`, and repeated `t`s collapse through `{t, t} = {t, −1}`.
pub fn tame_symbol(s: &MilnorSymbol, val: &ValuationSpec) -> Result<MilnorSymbol> {
    s.cfg.ensure_same(&val.cfg)?;
    if s.length == 0 {
        return Err(Error::Precondition("tame symbol of a length-0 symbol".into()));
    }
    let t = val.index();
    let residue_cfg = s.cfg.without(&val.var)?;
    let minus_one = RationalFunction::from_int(&residue_cfg, -1);
    let mut out = MilnorSymbol::zero(&residue_cfg, s.length - 1);
    for (c, entries) in &s.terms {
        let mut units = Vec::with_capacity(entries.len());
        let mut vals = Vec::with_capacity(entries.len());
        for a in entries {
            let (coef, mut exps) = a.as_laurent_monomial().expect("entries are monomials");
            vals.push(exps[t]);
            exps[t] = 0;
            units.push(RationalFunction::laurent_monomial(&s.cfg, &exps, coef).transfer(&residue_cfg)?);
        }
        let n = entries.len();
        for mask in 1u64..(1u64 << n) {
            let slots: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let weight: i64 = slots.iter().map(|&i| vals[i]).product();
            if weight == 0 {
                continue;
            }
            let rest: Vec<RationalFunction> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| units[i].clone()).collect();
            if slots.len() == 1 {
                let sign = if slots[0] % 2 == 1 { -1 } else { 1 };
                out.push(c * weight * sign, rest)?;
            } else {
                // {t, ..., t, rest} = {t, −1, ..., −1, rest}, which is 2-torsion,
                // so the reordering sign does not matter.
                let mut e = vec![minus_one.clone(); slots.len() - 1];
                e.extend(rest);
                out.push(c * weight, e)?;
            }
        }
    }
    Ok(out)
}

/// One step of the chain: `y = u·π^e`, then ∂^M at π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameStep {
    pub variable: String,
    pub e: u32,
    pub unit: RationalFunction,
    pub result: MilnorSymbol,
    pub expected: MilnorSymbol,
}

impl TameStep {
    pub fn matches(&self) -> bool {
        self.result.same_sum(&self.expected)
    }
}

/// Walks `s` down through its last-variable chain: for each `(var, e, u)`, the
/// variable is replaced by `u·π^e` with `π` a fresh uniformizer and the tame
/// symbol at π is taken. When `var` sits in slot `k` (0-based) of a single
/// symbol, the expected result drops that slot and multiplies by `(−1)^k e`.
pub fn tame_chain(s: &MilnorSymbol, steps: &[(String, u32, RationalFunction)], pi: &str) -> Result<Vec<TameStep>> {
    let mut current = s.clone();
    let mut out = Vec::with_capacity(steps.len());
    for (var, e, u) in steps {
        let residue_cfg = current.cfg.without(var)?;
        let ext = residue_cfg.extended(pi)?;
        let unit = u.transfer(&residue_cfg)?;
        let pi_e = RationalFunction::var_named(&ext, pi)?.pow(*e as i64)?;
        let value = unit.transfer(&ext)?.mul(&pi_e);
        let substituted = current.substitute(var, &value, &ext)?;
        let result = tame_symbol(&substituted, &ValuationSpec::new(&ext, pi)?)?;

        let idx = current.cfg.index_of(var)?;
        let mut expected = MilnorSymbol::zero(&residue_cfg, current.length - 1);
        for (c, entries) in &current.terms {
            let Some(k) = entries.iter().position(|a| a.as_laurent_monomial().map(|(_, x)| x[idx]) == Some(1)) else {
                continue;
            };
            let sign = if k % 2 == 1 { -1 } else { 1 };
            let rest = entries
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, a)| a.transfer(&residue_cfg))
                .collect::<Result<Vec<_>>>()?;
            expected.push(c * sign * *e as i64, rest)?;
        }
        out.push(TameStep {
            variable: var.clone(),
            e: *e,
            unit,
            result: result.clone(),
            expected,
        });
        current = result;
    }
    Ok(out)
}
