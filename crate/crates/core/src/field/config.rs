use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::gf::GaloisField;

/// The ambient field F_q(x_1, ..., x_m): a finite base field together with an
/// ordered list of variable names.
///
/// Cloning is cheap. Two configurations are equal when they have the same
/// characteristic, base field degree and variable list.
#[derive(Clone)]
pub struct FieldConfig {
    inner: Arc<Inner>,
}

struct Inner {
    field: Arc<GaloisField>,
    vars: Vec<String>,
}

pub fn is_valid_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl FieldConfig {
    pub fn new<S: AsRef<str>>(p: u32, degree: u32, vars: &[S]) -> Result<Self> {
        let field = Arc::new(GaloisField::new(p, degree)?);
        Self::with_field(field, vars.iter().map(|v| v.as_ref().to_string()).collect())
    }

    /// Prime field F_p with the given variables.
    pub fn prime<S: AsRef<str>>(p: u32, vars: &[S]) -> Result<Self> {
        Self::new(p, 1, vars)
    }

    fn with_field(field: Arc<GaloisField>, vars: Vec<String>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !is_valid_variable_name(v) {
                return Err(Error::Config(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Config(format!("variable `{v}` declared twice")));
            }
        }
        if vars.len() > 64 {
            return Err(Error::Config("at most 64 variables are supported".into()));
        }
        Ok(Self {
            inner: Arc::new(Inner { field, vars }),
        })
    }

    /// Same base field, different variables.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        Self::with_field(
            self.inner.field.clone(),
            vars.iter().map(|v| v.as_ref().to_string()).collect(),
        )
    }

    /// Same base field, with `var` appended after the existing variables.
    pub fn extended(&self, var: &str) -> Result<Self> {
        let mut vars = self.inner.vars.clone();
        vars.push(var.to_string());
        Self::with_field(self.inner.field.clone(), vars)
    }

    /// Same base field, with `var` removed.
    pub fn without(&self, var: &str) -> Result<Self> {
        self.index_of(var)?;
        let vars: Vec<String> = self.inner.vars.iter().filter(|v| *v != var).cloned().collect();
        Self::with_field(self.inner.field.clone(), vars)
    }

    pub fn field(&self) -> &GaloisField {
        &self.inner.field
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.field.characteristic()
    }

    pub fn degree(&self) -> u32 {
        self.inner.field.degree()
    }

    pub fn order(&self) -> u32 {
        self.inner.field.order()
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn var_name(&self, idx: usize) -> &str {
        &self.inner.vars[idx]
    }

    pub fn index_of(&self, var: &str) -> Result<usize> {
        self.inner
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    pub fn has_var(&self, var: &str) -> bool {
        self.inner.vars.iter().any(|v| v == var)
    }

    pub fn ensure_same(&self, other: &FieldConfig) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ConfigMismatch)
        }
    }

    /// For each variable of `self`, its index in `target`. Fails if a variable
    /// is missing or the base fields differ.
    pub fn embedding_into(&self, target: &FieldConfig) -> Result<Vec<usize>> {
        if !self.field().same_field(target.field()) {
            return Err(Error::ConfigMismatch);
        }
        self.inner.vars.iter().map(|v| target.index_of(v)).collect()
    }
}

impl PartialEq for FieldConfig {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field.same_field(&other.inner.field) && self.inner.vars == other.inner.vars)
    }
}

impl Eq for FieldConfig {}

impl fmt::Debug for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field();
        if field.degree() == 1 {
            write!(f, "F_{}", field.characteristic())?;
        } else {
            write!(f, "F_{}^{}", field.characteristic(), field.degree())?;
        }
        write!(f, "({})", self.inner.vars.join(","))
    }
}
