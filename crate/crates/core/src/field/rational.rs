//! Elements of F_q(x_1, ..., x_m) as reduced fractions.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::config::FieldConfig;
use crate::field::gf::Elem;
use crate::field::poly::{Monomial, Polynomial};

/// A reduced fraction `num / den` with `den` monic in graded-lex order.
///
/// The representation is canonical, so `==` decides equality of functions.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        num.cfg().ensure_same(den.cfg())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero(num.cfg());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Polynomial::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let (den, lc) = den.monic();
        let num = if lc == 1 {
            num
        } else {
            num.scale(num.cfg().field().inv(lc).expect("nonzero"))
        };
        Self { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.cfg());
        Self { num: p, den }
    }

    pub fn zero(cfg: &FieldConfig) -> Self {
        Self::from_poly(Polynomial::zero(cfg))
    }

    pub fn one(cfg: &FieldConfig) -> Self {
        Self::from_poly(Polynomial::one(cfg))
    }

    pub fn constant(cfg: &FieldConfig, c: Elem) -> Self {
        Self::from_poly(Polynomial::constant(cfg, c))
    }

    pub fn from_int(cfg: &FieldConfig, n: i64) -> Self {
        Self::constant(cfg, cfg.field().from_int(n))
    }

    pub fn var(cfg: &FieldConfig, idx: usize) -> Self {
        Self::from_poly(Polynomial::var(cfg, idx))
    }

    pub fn var_named(cfg: &FieldConfig, name: &str) -> Result<Self> {
        Ok(Self::var(cfg, cfg.index_of(name)?))
    }

    /// `c * x^exps` where exponents may be negative.
    pub fn laurent_monomial(cfg: &FieldConfig, exps: &[i64], c: Elem) -> Self {
        assert_eq!(exps.len(), cfg.nvars(), "exponent vector length mismatch");
        let to_u32 = |e: i64| u32::try_from(e).expect("exponent out of range");
        let pos: Vec<u32> = exps.iter().map(|&e| to_u32(e.max(0))).collect();
        let neg: Vec<u32> = exps.iter().map(|&e| to_u32((-e).max(0))).collect();
        Self {
            num: Polynomial::monomial(cfg, pos, c),
            den: if c == 0 {
                Polynomial::one(cfg)
            } else {
                Polynomial::monomial(cfg, neg, 1)
            },
        }
    }

    pub fn cfg(&self) -> &FieldConfig {
        self.num.cfg()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<Elem> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// For `c * x^a` (exponents in Z) returns `(c, a)`.
    pub fn as_laurent_monomial(&self) -> Option<(Elem, Vec<i64>)> {
        if !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let (nm, c) = self.num.leading()?;
        let (dm, _) = self.den.leading()?;
        let exps = nm
            .exps()
            .iter()
            .zip(dm.exps())
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect();
        Some((c, exps))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: Elem) -> Self {
        if c == 0 {
            return Self::zero(self.cfg());
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.cfg().ensure_same(other.cfg()).expect("operands from different field configurations");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let g = Polynomial::gcd(&self.den, &other.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        Self::reduce(num, a.mul(&other.den))
    }

    /// Sums `items`, adding numerators over equal denominators before
    /// reducing.
    pub fn sum<'a, I>(cfg: &FieldConfig, items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut groups: Vec<(Polynomial, Polynomial)> = Vec::new();
        for f in items {
            cfg.ensure_same(f.cfg()).expect("operands from different field configurations");
            if f.is_zero() {
                continue;
            }
            match groups.iter_mut().find(|(d, _)| *d == f.den) {
                Some((_, n)) => *n = n.add(&f.num),
                None => groups.push((f.den.clone(), f.num.clone())),
            }
        }
        groups
            .into_iter()
            .map(|(d, n)| Self::reduce(n, d))
            .fold(Self::zero(cfg), |acc, f| acc.add(&f))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.cfg().ensure_same(other.cfg()).expect("operands from different field configurations");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.cfg());
        }
        // Cross-cancel first so the products stay small.
        let g1 = Polynomial::gcd(&self.num, &other.den);
        let g2 = Polynomial::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let (den, lc) = d1.mul(&d2).monic();
        let num = if lc == 1 {
            num
        } else {
            num.scale(self.cfg().field().inv(lc).expect("nonzero"))
        };
        Self { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(n.unsigned_abs()).map_err(|_| Error::Precondition("exponent too large".into()))?;
        Ok(Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// f^p.
    pub fn frobenius(&self) -> Self {
        Self {
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }

    pub fn partial(&self, idx: usize) -> Self {
        let du = self.num.derivative(idx);
        if self.den.is_one() {
            return Self::from_poly(du);
        }
        let dv = self.den.derivative(idx);
        let num = du.mul(&self.den).sub(&self.num.mul(&dv));
        Self::reduce(num, self.den.mul(&self.den))
    }

    pub fn partial_named(&self, var: &str) -> Result<Self> {
        Ok(self.partial(self.cfg().index_of(var)?))
    }

    pub fn is_pth_power(&self) -> bool {
        self.num.is_pth_power() && self.den.is_pth_power()
    }

    /// The unique g with g^p = self.
    pub fn pth_root(&self) -> Result<Self> {
        match (self.num.pth_root(), self.den.pth_root()) {
            (Some(num), Some(den)) => Ok(Self { num, den }),
            _ => {
                let witness = (0..self.cfg().nvars())
                    .find(|&i| !self.partial(i).is_zero())
                    .map(|i| self.cfg().var_name(i).to_string())
                    .expect("a non-p-th power has a nonzero partial derivative");
                Err(Error::NotPthPower { witness })
            }
        }
    }

    /// Bitmask of variables occurring in numerator or denominator.
    pub fn support(&self) -> u64 {
        self.num.support() | self.den.support()
    }

    /// Moves the element into `target`, matching variables by name. Fails if a
    /// variable that actually occurs is missing from `target`.
    pub fn transfer(&self, target: &FieldConfig) -> Result<Self> {
        if self.cfg() == target {
            return Ok(self.clone());
        }
        if !self.cfg().field().same_field(target.field()) {
            return Err(Error::ConfigMismatch);
        }
        let support = self.support();
        let mut mapping = vec![usize::MAX; self.cfg().nvars()];
        for (i, slot) in mapping.iter_mut().enumerate() {
            match target.index_of(self.cfg().var_name(i)) {
                Ok(j) => *slot = j,
                Err(e) if support & (1 << i) != 0 => return Err(e),
                Err(_) => {}
            }
        }
        Ok(Self {
            num: self.num.embed(target, &mapping),
            den: self.den.embed(target, &mapping),
        })
    }

    /// Writes `self = u * x_idx^v` where `u` has neither a zero nor a pole along
    /// `x_idx = 0`. Returns `(u, v)`.
    pub fn split_variable(&self, idx: usize) -> Option<(Self, i64)> {
        if self.is_zero() {
            return None;
        }
        let low = |p: &Polynomial| p.terms().iter().map(|(m, _)| m.exps()[idx]).min().unwrap_or(0);
        let v = low(&self.num) as i64 - low(&self.den) as i64;
        if v == 0 {
            return Some((self.clone(), 0));
        }
        let mut exps = vec![0i64; self.cfg().nvars()];
        exps[idx] = -v;
        let shift = Self::laurent_monomial(self.cfg(), &exps, 1);
        Some((self.mul(&shift), v))
    }

    /// Expansion in powers of `x_idx` when the denominator is `x_idx^a` times a
    /// polynomial free of `x_idx`: returns `(k, c_k)` with `self = Σ c_k x_idx^k`
    /// and each `c_k` free of `x_idx`, or `None` otherwise.
    pub fn laurent_expansion(&self, idx: usize) -> Option<Vec<(i64, Self)>> {
        let (den_unit, a) = {
            let low = self.den.terms().iter().map(|(m, _)| m.exps()[idx]).min().unwrap_or(0);
            let mut exps = vec![0u32; self.cfg().nvars()];
            exps[idx] = low;
            let shift = Polynomial::monomial(self.cfg(), exps, 1);
            (self.den.div_exact(&shift)?, low as i64)
        };
        if den_unit.degree_in(idx) != 0 {
            return None;
        }
        let coeffs = self.num.to_univariate(idx);
        let den = Self::from_poly(den_unit);
        let mut out = Vec::new();
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.push((k as i64 - a, Self::from_poly(c).div(&den).expect("nonzero denominator")));
        }
        Some(out)
    }

    /// Sort key for presentations; not a mathematical order.
    pub fn sort_key(&self) -> (Vec<(Monomial, Elem)>, Vec<(Monomial, Elem)>) {
        (self.num.terms().to_vec(), self.den.terms().to_vec())
    }
}

fn needs_parens(p: &Polynomial, rendered: &str) -> bool {
    p.nterms() > 1 || rendered.contains(' ')
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        if needs_parens(&self.num, &num) {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        let den = self.den.to_string();
        let (m, _) = self.den.leading().expect("nonzero");
        let single_power = self.den.nterms() == 1 && m.exps().iter().filter(|&&e| e > 0).count() == 1;
        if single_power {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(cfg: &FieldConfig, i: usize) -> RationalFunction {
        RationalFunction::var(cfg, i)
    }

    #[test]
    fn partial_examples() {
        let c3 = FieldConfig::prime(3, &["x"]).unwrap();
        assert!(rf(&c3, 0).pow(3).unwrap().partial(0).is_zero());

        let c2 = FieldConfig::prime(2, &["x", "y"]).unwrap();
        assert_eq!(rf(&c2, 0).mul(&rf(&c2, 1)).partial(0), rf(&c2, 1));

        let c5 = FieldConfig::prime(5, &["x"]).unwrap();
        let inv = rf(&c5, 0).inv().unwrap();
        let expected = rf(&c5, 0).pow(-2).unwrap().scale(4);
        assert_eq!(inv.partial(0), expected);
    }

    #[test]
    fn pth_root_examples() {
        let c2 = FieldConfig::prime(2, &["x", "y"]).unwrap();
        let (x, y) = (rf(&c2, 0), rf(&c2, 1));
        let f = x.pow(2).unwrap().mul(&y.pow(4).unwrap());
        assert_eq!(f.pth_root().unwrap(), x.mul(&y.pow(2).unwrap()));

        let g = x.pow(2).unwrap().add(&y.pow(2).unwrap()).div(&y.pow(2).unwrap()).unwrap();
        assert_eq!(g.pth_root().unwrap(), x.add(&y).div(&y).unwrap());

        let c3 = FieldConfig::prime(3, &["x"]).unwrap();
        let err = rf(&c3, 0).pth_root().unwrap_err();
        assert!(matches!(err, Error::NotPthPower { ref witness } if witness == "x"));
    }

    #[test]
    fn frobenius_examples() {
        let c2 = FieldConfig::prime(2, &["x", "y"]).unwrap();
        let s = rf(&c2, 0).add(&rf(&c2, 1));
        assert_eq!(s.frobenius(), rf(&c2, 0).pow(2).unwrap().add(&rf(&c2, 1).pow(2).unwrap()));
        assert!(RationalFunction::one(&c2).frobenius().is_one());

        let c3 = FieldConfig::prime(3, &["x"]).unwrap();
        let f = RationalFunction::from_int(&c3, 2).div(&rf(&c3, 0)).unwrap();
        let expected = RationalFunction::from_int(&c3, 2).div(&rf(&c3, 0).pow(3).unwrap()).unwrap();
        assert_eq!(f.frobenius(), expected);
    }

    #[test]
    fn canonical_representation() {
        let c = FieldConfig::prime(3, &["x", "y"]).unwrap();
        let (x, y) = (rf(&c, 0), rf(&c, 1));
        let a = x.add(&y).mul(&x).div(&x.scale(2).mul(&y)).unwrap();
        let b = x.add(&y).div(&y.scale(2)).unwrap();
        assert_eq!(a, b);
        assert!(a.denominator().leading_coefficient() == 1);
    }

    #[test]
    fn split_and_expand_along_variable() {
        let c = FieldConfig::prime(2, &["y", "t"]).unwrap();
        let (y, t) = (rf(&c, 0), rf(&c, 1));
        let g = y.mul(&t.pow(3).unwrap());
        assert_eq!(g.split_variable(1).unwrap(), (y.clone(), 3));
        let h = y.div(&t.pow(2).unwrap()).unwrap();
        assert_eq!(h.split_variable(1).unwrap(), (y.clone(), -2));

        let f = y.add(&t).div(&t.mul(&y.add(&RationalFunction::one(&c)))).unwrap();
        let exp = f.laurent_expansion(1).unwrap();
        assert_eq!(exp.len(), 2);
        assert_eq!(exp[0].0, -1);
        assert_eq!(exp[1].0, 0);
        assert!(y.add(&t).inv().unwrap().laurent_expansion(1).is_none());
    }

    #[test]
    fn display_forms() {
        let c = FieldConfig::prime(5, &["x", "y"]).unwrap();
        let (x, y) = (rf(&c, 0), rf(&c, 1));
        assert_eq!(x.inv().unwrap().partial(0).to_string(), "4/x^2");
        assert_eq!(x.add(&y).div(&x.mul(&y)).unwrap().to_string(), "(x + y)/(x*y)");
    }
}
