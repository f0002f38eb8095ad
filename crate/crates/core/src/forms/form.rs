use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldConfig, RationalFunction};

/// A set of variable indices `I`, standing for `dx_{i_1} ∧ ... ∧ dx_{i_n}` with
/// `i_1 < ... < i_n`.
///
/// Ordered lexicographically on the increasing index tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Wedge(u64);

impl Wedge {
    pub const EMPTY: Wedge = Wedge(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn single(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Self(indices.iter().fold(0, |acc, &i| acc | (1 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Number of indices of `self` strictly below `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    pub fn is_disjoint(self, other: Wedge) -> bool {
        self.0 & other.0 == 0
    }

    /// Sign of `dx_I ∧ dx_J` relative to `dx_{I ∪ J}`, for disjoint `I`, `J`.
    pub fn merge_sign(self, other: Wedge) -> bool {
        let mut inversions = 0;
        for j in other.indices() {
            inversions += self.0.checked_shr(j as u32 + 1).unwrap_or(0).count_ones();
        }
        inversions % 2 == 1
    }
}

impl PartialOrd for Wedge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Wedge {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a, b) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {}
            }
            let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
            if ia != ib {
                return ia.cmp(&ib);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

/// A differential n-form `Σ_I f_I dx_I` over F_q(x_1, ..., x_m).
#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    cfg: FieldConfig,
    degree: usize,
    terms: BTreeMap<Wedge, RationalFunction>,
}

impl DifferentialForm {
    pub fn zero(cfg: &FieldConfig, degree: usize) -> Self {
        Self {
            cfg: cfg.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(f: RationalFunction) -> Self {
        let mut out = Self::zero(f.cfg(), 0);
        if !f.is_zero() {
            out.terms.insert(Wedge::EMPTY, f);
        }
        out
    }

    pub fn dx(cfg: &FieldConfig, i: usize) -> Self {
        Self::monomial(RationalFunction::one(cfg), Wedge::single(i))
    }

    pub fn monomial(coeff: RationalFunction, wedge: Wedge) -> Self {
        let mut out = Self::zero(coeff.cfg(), wedge.degree());
        assert!(
            wedge.bits().checked_shr(coeff.cfg().nvars() as u32).unwrap_or(0) == 0,
            "wedge index out of range"
        );
        if !coeff.is_zero() {
            out.terms.insert(wedge, coeff);
        }
        out
    }

    /// Sums the given terms; all wedges must have the given degree.
    pub fn from_terms<I>(cfg: &FieldConfig, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Wedge, RationalFunction)>,
    {
        let mut out = Self::zero(cfg, degree);
        for (w, f) in terms {
            assert_eq!(w.degree(), degree, "wedge degree mismatch");
            out.add_term(w, f);
        }
        out
    }

    fn add_term(&mut self, w: Wedge, f: RationalFunction) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(c) => {
                *c = c.add(&f);
                if c.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, f);
            }
        }
    }

    pub fn cfg(&self) -> &FieldConfig {
        &self.cfg
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Wedge, RationalFunction> {
        &self.terms
    }

    pub fn coefficient(&self, w: Wedge) -> RationalFunction {
        self.terms.get(&w).cloned().unwrap_or_else(|| RationalFunction::zero(&self.cfg))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of a 0-form.
    pub fn as_scalar(&self) -> Option<RationalFunction> {
        (self.degree == 0).then(|| self.coefficient(Wedge::EMPTY))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.cfg.ensure_same(&other.cfg)?;
        if self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, f) in &other.terms {
            out.add_term(*w, f.clone());
        }
        Ok(out)
    }

    /// Sum of two forms of the same degree and configuration.
    ///
    /// # Panics
    /// On mismatched degree or configuration; see [`checked_add`](Self::checked_add).
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("incompatible forms")
    }

    pub fn neg(&self) -> Self {
        Self {
            cfg: self.cfg.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(w, f)| (*w, f.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        if f.is_zero() {
            return Self::zero(&self.cfg, self.degree);
        }
        Self {
            cfg: self.cfg.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(w, c)| (*w, c.mul(f))).collect(),
        }
    }

    pub fn scale_elem(&self, c: Elem) -> Self {
        if c == 0 {
            return Self::zero(&self.cfg, self.degree);
        }
        Self {
            cfg: self.cfg.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(w, f)| (*w, f.scale(c))).collect(),
        }
    }

    pub fn checked_wedge(&self, other: &Self) -> Result<Self> {
        self.cfg.ensure_same(&other.cfg)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(&self.cfg, degree);
        if degree > self.cfg.nvars() {
            return Ok(out);
        }
        for (wa, fa) in &self.terms {
            for (wb, fb) in &other.terms {
                if !wa.is_disjoint(*wb) {
                    continue;
                }
                let c = fa.mul(fb);
                let c = if wa.merge_sign(*wb) { c.neg() } else { c };
                out.add_term(Wedge(wa.0 | wb.0), c);
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.checked_wedge(other).expect("forms from different field configurations")
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let m = self.cfg.nvars();
        let mut out = Self::zero(&self.cfg, self.degree + 1);
        for (w, f) in &self.terms {
            for k in 0..m {
                if w.contains(k) {
                    continue;
                }
                let df = f.partial(k);
                if df.is_zero() {
                    continue;
                }
                let df = if w.count_below(k) % 2 == 1 { df.neg() } else { df };
                out.add_term(w.with(k), df);
            }
        }
        out
    }

    /// Moves the form into `target`, matching variables by name.
    pub fn transfer(&self, target: &FieldConfig) -> Result<Self> {
        if &self.cfg == target {
            return Ok(self.clone());
        }
        let mut out = Self::zero(target, self.degree);
        for (w, f) in &self.terms {
            let mut idx = Vec::with_capacity(w.degree());
            for i in w.indices() {
                idx.push(target.index_of(self.cfg.var_name(i))?);
            }
            let mut inversions = 0;
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    if idx[a] > idx[b] {
                        inversions += 1;
                    }
                }
            }
            let c = f.transfer(target)?;
            let c = if inversions % 2 == 1 { c.neg() } else { c };
            out.add_term(Wedge::from_indices(&idx), c);
        }
        Ok(out)
    }

    /// Applies `f ↦ f^p` to every coefficient.
    pub fn frobenius_coefficients(&self) -> Self {
        Self {
            cfg: self.cfg.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(w, f)| (*w, f.frobenius())).collect(),
        }
    }

    /// Terms as `(logarithmic coefficient f_I·x_I, variable names of I)`, in
    /// wedge order. This is the printed presentation.
    pub fn dlog_terms(&self) -> Vec<(RationalFunction, Vec<String>)> {
        self.terms
            .iter()
            .map(|(w, f)| {
                let mut c = f.clone();
                let mut names = Vec::new();
                for i in w.indices() {
                    c = c.mul(&RationalFunction::var(&self.cfg, i));
                    names.push(self.cfg.var_name(i).to_string());
                }
                (c, names)
            })
            .collect()
    }
}

/// Whether `s` has a `+` outside parentheses.
pub(crate) fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

pub(crate) fn format_log_term(coeff: &str, args: &[String]) -> String {
    if args.is_empty() {
        return coeff.to_string();
    }
    let wedge: Vec<String> = args.iter().map(|a| format!("dlog({a})")).collect();
    let wedge = wedge.join("^");
    if coeff == "1" {
        wedge
    } else if has_top_level_sum(coeff) {
        format!("({coeff})*{wedge}")
    } else {
        format!("{coeff}*{wedge}")
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .dlog_terms()
            .into_iter()
            .map(|(c, names)| format_log_term(&c.to_string(), &names))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}
