//! Sparse multivariate polynomials over F_q.
//!
//! Terms are kept sorted in descending graded-lexicographic order (leading
//! term first) with no zero coefficients, so structural equality is equality
//! of polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::config::FieldConfig;
use crate::field::gf::Elem;
use crate::field::univariate::UniPoly;

/// An exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u64,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().map(|&e| e as u64).sum();
        Self { deg, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            deg: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u64 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow in monomial product"))
            .collect();
        Monomial::new(exps)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial::new(other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect())
    }

    pub fn scaled(&self, k: u32) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .map(|e| e.checked_mul(k).expect("exponent overflow in monomial power"))
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| self.exps.cmp(&other.exps))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    cfg: FieldConfig,
    terms: Vec<(Monomial, Elem)>,
}

impl Polynomial {
    pub fn zero(cfg: &FieldConfig) -> Self {
        Self {
            cfg: cfg.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(cfg: &FieldConfig) -> Self {
        Self::constant(cfg, 1)
    }

    pub fn constant(cfg: &FieldConfig, c: Elem) -> Self {
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(cfg.nvars()), c)]
        };
        Self {
            cfg: cfg.clone(),
            terms,
        }
    }

    pub fn var(cfg: &FieldConfig, idx: usize) -> Self {
        let mut exps = vec![0; cfg.nvars()];
        exps[idx] = 1;
        Self::monomial(cfg, exps, 1)
    }

    pub fn monomial(cfg: &FieldConfig, exps: Vec<u32>, c: Elem) -> Self {
        assert_eq!(exps.len(), cfg.nvars(), "exponent vector length mismatch");
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::new(exps), c)]
        };
        Self {
            cfg: cfg.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms.
    pub fn from_terms<I>(cfg: &FieldConfig, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Elem)>,
    {
        let mut v: Vec<(Monomial, Elem)> = terms.into_iter().collect();
        for (m, _) in &v {
            assert_eq!(m.exps.len(), cfg.nvars(), "exponent vector length mismatch");
        }
        Self::normalize(cfg, &mut v);
        Self {
            cfg: cfg.clone(),
            terms: v,
        }
    }

    fn normalize(cfg: &FieldConfig, v: &mut Vec<(Monomial, Elem)>) {
        let f = cfg.field();
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Elem)> = Vec::with_capacity(v.len());
        for (m, c) in v.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        *v = out;
    }

    pub fn cfg(&self) -> &FieldConfig {
        &self.cfg
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Elem> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<(&Monomial, Elem)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn leading_coefficient(&self) -> Elem {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exps[idx]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.first().map_or(0, |(m, _)| m.deg)
    }

    /// Bitmask of the variables that occur.
    pub fn support(&self) -> u64 {
        let mut mask = 0u64;
        for (m, _) in &self.terms {
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn neg(&self) -> Self {
        let f = self.cfg.field();
        Self {
            cfg: self.cfg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Self {
        if c == 0 {
            return Self::zero(&self.cfg);
        }
        let f = self.cfg.field();
        Self {
            cfg: self.cfg.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: Elem) -> Self {
        if c == 0 {
            return Self::zero(&self.cfg);
        }
        let f = self.cfg.field();
        Self {
            cfg: self.cfg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), f.mul(*a, c)))
                .collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        debug_assert_eq!(self.cfg, other.cfg);
        let f = self.cfg.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let adj = |c: Elem| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), adj(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, adj(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), adj(*c))));
        Self {
            cfg: self.cfg.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.cfg, other.cfg, "polynomials from different field configurations");
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.cfg, other.cfg, "polynomials from different field configurations");
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cfg, other.cfg, "polynomials from different field configurations");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.cfg);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        let f = self.cfg.field();
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                v.push((ma.mul(mb), f.mul(*ca, *cb)));
            }
        }
        Self::normalize(&self.cfg, &mut v);
        Self {
            cfg: self.cfg.clone(),
            terms: v,
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.cfg);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// f^p, computed termwise since Frobenius is additive.
    pub fn frobenius(&self) -> Self {
        let f = self.cfg.field();
        let p = self.cfg.characteristic();
        Self {
            cfg: self.cfg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scaled(p), f.frobenius(*c)))
                .collect(),
        }
    }

    /// Whether every exponent is divisible by p.
    pub fn is_pth_power(&self) -> bool {
        let p = self.cfg.characteristic();
        self.terms.iter().all(|(m, _)| m.exps.iter().all(|e| e % p == 0))
    }

    /// The p-th root of a polynomial all of whose exponents are divisible by p.
    pub fn pth_root(&self) -> Option<Self> {
        if !self.is_pth_power() {
            return None;
        }
        let f = self.cfg.field();
        let p = self.cfg.characteristic();
        Some(Self {
            cfg: self.cfg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.exps.iter().map(|e| e / p).collect()), f.pth_root(*c)))
                .collect(),
        })
    }

    pub fn derivative(&self, idx: usize) -> Self {
        let f = self.cfg.field();
        let v = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps[idx] > 0)
            .filter_map(|(m, c)| {
                let k = f.from_int(m.exps[idx] as i64);
                let c = f.mul(*c, k);
                (c != 0).then(|| {
                    let mut exps = m.exps.clone();
                    exps[idx] -= 1;
                    (Monomial::new(exps), c)
                })
            });
        Self::from_terms(&self.cfg, v.collect::<Vec<_>>())
    }

    /// Divides by the leading coefficient. Returns the normalized polynomial and
    /// the coefficient that was removed.
    pub fn monic(&self) -> (Self, Elem) {
        let lc = self.leading_coefficient();
        if lc == 0 || lc == 1 {
            return (self.clone(), if lc == 0 { 1 } else { lc });
        }
        let inv = self.cfg.field().inv(lc).expect("nonzero");
        (self.scale(inv), lc)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.cfg, d.cfg, "polynomials from different field configurations");
        let (dm, dc) = d.leading()?;
        if self.is_zero() {
            return Some(Self::zero(&self.cfg));
        }
        if d.is_constant() {
            let inv = self.cfg.field().inv(dc)?;
            return Some(self.scale(inv));
        }
        let f = self.cfg.field();
        let inv = f.inv(dc)?;
        let dm = dm.clone();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = f.mul(c, inv);
            rem = rem.sub(&d.mul_term(&qm, qc));
            quotient.push((qm, qc));
        }
        Some(Self::from_terms(&self.cfg, quotient))
    }

    /// Re-expresses the polynomial in another configuration; `mapping[i]` is
    /// the target index of variable `i` (ignored for variables that do not occur).
    pub fn embed(&self, target: &FieldConfig, mapping: &[usize]) -> Self {
        let n = target.nvars();
        Self::from_terms(
            target,
            self.terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = vec![0; n];
                    for (i, &e) in m.exps.iter().enumerate() {
                        if e > 0 {
                            exps[mapping[i]] += e;
                        }
                    }
                    (Monomial::new(exps), *c)
                })
                .collect::<Vec<_>>(),
        )
    }

    /// Coefficients with respect to variable `idx`, lowest degree first. The
    /// coefficients live in the same configuration with exponent 0 at `idx`.
    pub fn to_univariate(&self, idx: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(idx) as usize;
        let mut buckets: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exps[idx] as usize;
            let mut exps = m.exps.clone();
            exps[idx] = 0;
            buckets[k].push((Monomial::new(exps), *c));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(&self.cfg, b))
            .collect()
    }

    /// Coefficients of `self` as a polynomial in the variables outside
    /// `mask`; each coefficient only involves variables in `mask`.
    fn coefficients_outside(&self, mask: u64) -> Vec<Polynomial> {
        let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, Elem)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut inside = m.exps.clone();
            let mut outside = m.exps.clone();
            for (i, (a, b)) in inside.iter_mut().zip(outside.iter_mut()).enumerate() {
                if mask >> i & 1 == 1 {
                    *b = 0;
                } else {
                    *a = 0;
                }
            }
            groups.entry(outside).or_default().push((Monomial::new(inside), *c));
        }
        groups.into_values().map(|t| Polynomial::from_terms(&self.cfg, t)).collect()
    }

    pub fn from_univariate(cfg: &FieldConfig, coeffs: &[Polynomial], idx: usize) -> Self {
        let mut v = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut exps = m.exps.clone();
                exps[idx] = exps[idx].checked_add(k as u32).expect("exponent overflow");
                v.push((Monomial::new(exps), *a));
            }
        }
        Self::from_terms(cfg, v)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        assert_eq!(a.cfg, b.cfg, "polynomials from different field configurations");
        if a.is_zero() {
            return b.monic().0;
        }
        if b.is_zero() {
            return a.monic().0;
        }
        if a.is_constant() || b.is_constant() {
            return Self::one(&a.cfg);
        }
        if a.is_monomial() {
            return monomial_gcd(&a.terms[0].0, b);
        }
        if b.is_monomial() {
            return monomial_gcd(&b.terms[0].0, a);
        }
        let (am, _) = a.monic();
        let (bm, _) = b.monic();
        if am == bm {
            return am;
        }
        let (sa, sb) = (a.support(), b.support());
        let common = sa & sb;
        if common == 0 {
            // A common factor would have to involve only shared variables.
            return Self::one(&a.cfg);
        }
        if sa != common || sb != common {
            // Any common factor lies in F[common], so it divides every
            // coefficient with respect to the remaining variables.
            let mut parts = a.coefficients_outside(common);
            parts.extend(b.coefficients_outside(common));
            parts.sort_by_key(|c| (c.total_degree(), c.nterms()));
            let mut g = parts[0].monic().0;
            for c in &parts[1..] {
                if g.is_constant() {
                    break;
                }
                g = Self::gcd(&g, c);
            }
            return g;
        }
        let mut live = 0u64;
        for i in (0..a.cfg.nvars()).filter(|i| common >> i & 1 == 1) {
            if specialized_gcd_degree(a, b, i, common) != Some(0) {
                live |= 1 << i;
            }
        }
        if live == 0 {
            return Self::one(&a.cfg);
        }
        if live != common {
            let mut parts = a.coefficients_outside(live);
            parts.extend(b.coefficients_outside(live));
            parts.sort_by_key(|c| (c.total_degree(), c.nterms()));
            let mut g = parts[0].monic().0;
            for c in &parts[1..] {
                if g.is_constant() {
                    break;
                }
                g = Self::gcd(&g, c);
            }
            return g;
        }
        // Pick the shared variable of least degree to keep pseudo-remainders small.
        let v = (0..a.cfg.nvars())
            .filter(|i| common & (1 << i) != 0)
            .min_by_key(|&i| a.degree_in(i).max(b.degree_in(i)))
            .expect("nonempty");
        let ua = a.to_univariate(v);
        let ub = b.to_univariate(v);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = Self::gcd(&ca, &cb);
        let mut pa = primitive_part(&ua, &ca);
        let mut pb = primitive_part(&ub, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        loop {
            let r = pseudo_remainder(&pa, &pb);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                pb = vec![Self::one(&a.cfg)];
                break;
            }
            let cr = content(&r);
            pa = pb;
            pb = primitive_part(&r, &cr);
        }
        let g = Self::from_univariate(&a.cfg, &pb, v).mul(&c);
        g.monic().0
    }
}

/// `f` as a univariate polynomial in `v` after substituting `point` for the
/// other variables.
fn specialize(f: &Polynomial, v: usize, point: &[Elem]) -> UniPoly {
    let field = f.cfg.field();
    let mut coeffs = vec![0; f.degree_in(v) as usize + 1];
    for (m, c) in &f.terms {
        let mut t = *c;
        for (j, &e) in m.exps.iter().enumerate() {
            if j != v && e > 0 {
                t = field.mul(t, field.pow(point[j], e as u64));
            }
        }
        let k = m.exps[v] as usize;
        coeffs[k] = field.add(coeffs[k], t);
    }
    UniPoly::new(coeffs)
}

const SPECIALIZATIONS: usize = 24;

/// An upper bound for `deg_v gcd(a, b)`, from specializations of the other
/// variables in `mask` that keep both degrees in `v`.
fn specialized_gcd_degree(a: &Polynomial, b: &Polynomial, v: usize, mask: u64) -> Option<usize> {
    let field = a.cfg.field();
    let q = field.order() as u64;
    let others: Vec<usize> = (0..a.cfg.nvars()).filter(|&j| j != v && mask >> j & 1 == 1).collect();
    let total = q.checked_pow(others.len() as u32).unwrap_or(u64::MAX);
    let (da, db) = (a.degree_in(v) as usize, b.degree_in(v) as usize);
    let mut best: Option<usize> = None;
    let mut point = vec![0; a.cfg.nvars()];
    for k in 0..total.min(SPECIALIZATIONS as u64) {
        let mut code = k;
        for &j in &others {
            point[j] = ((code % q + 1) % q) as Elem;
            code /= q;
        }
        let (ua, ub) = (specialize(a, v, &point), specialize(b, v, &point));
        if ua.degree() != Some(da) || ub.degree() != Some(db) {
            continue;
        }
        let d = UniPoly::gcd(&ua, &ub, field).degree().unwrap_or(0);
        best = Some(best.map_or(d, |b| b.min(d)));
        if d == 0 {
            break;
        }
    }
    best
}

fn monomial_gcd(m: &Monomial, f: &Polynomial) -> Polynomial {
    let mut exps = m.exps.clone();
    for (t, _) in &f.terms {
        for (e, te) in exps.iter_mut().zip(&t.exps) {
            *e = (*e).min(*te);
        }
    }
    Polynomial::monomial(&f.cfg, exps, 1)
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(coeffs: &[Polynomial]) -> Polynomial {
    let mut g: Option<Polynomial> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.monic().0,
            Some(g) => Polynomial::gcd(&g, c),
        });
        if g.as_ref().is_some_and(|g| g.is_constant()) {
            break;
        }
    }
    g.expect("content of the zero polynomial")
}

fn primitive_part(coeffs: &[Polynomial], content: &Polynomial) -> Vec<Polynomial> {
    let mut v: Vec<Polynomial> = coeffs
        .iter()
        .map(|c| c.div_exact(content).expect("content divides every coefficient"))
        .collect();
    trim(&mut v);
    v
}

/// Pseudo-remainder of `a` by `b` (as polynomials in the chosen variable),
/// omitting the final power of the leading coefficient since callers only use
/// it up to content.
fn pseudo_remainder(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let k = i + dr - db;
            r[k] = r[k].sub(&lr.mul(bc));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_term(&self.cfg, m, *c))?;
        }
        Ok(())
    }
}

pub(crate) fn format_monomial(cfg: &FieldConfig, exps: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(cfg.var_name(i).to_string()),
            _ => parts.push(format!("{}^{}", cfg.var_name(i), e)),
        }
    }
    parts.join("*")
}

pub(crate) fn format_elem(cfg: &FieldConfig, c: Elem, standalone: bool) -> String {
    let field = cfg.field();
    if field.degree() == 1 {
        return c.to_string();
    }
    let digits = field.digits(c);
    let mut parts = Vec::new();
    for (k, &d) in digits.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        let base = match k {
            0 => String::new(),
            1 => "@".to_string(),
            _ => format!("@^{k}"),
        };
        parts.push(match (d, base.is_empty()) {
            (_, true) => d.to_string(),
            (1, false) => base,
            (_, false) => format!("{d}*{base}"),
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    let s = parts.join(" + ");
    if parts.len() > 1 && !standalone {
        format!("({s})")
    } else {
        s
    }
}

fn format_term(cfg: &FieldConfig, m: &Monomial, c: Elem) -> String {
    let exps: Vec<i64> = m.exps.iter().map(|&e| e as i64).collect();
    let mono = format_monomial(cfg, &exps);
    if mono.is_empty() {
        format_elem(cfg, c, true)
    } else if c == 1 {
        mono
    } else {
        format!("{}*{}", format_elem(cfg, c, false), mono)
    }
}
