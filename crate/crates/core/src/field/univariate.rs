//! Dense univariate polynomials over F_q, used by the one-variable
//! Artin–Schreier reduction.

use crate::field::gf::{Elem, GaloisField};

/// Coefficients from the constant term upwards, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly(Vec<Elem>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self(vec![1])
    }

    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, f: &GaloisField) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new(
            (0..n)
                .map(|i| f.add(*self.0.get(i).unwrap_or(&0), *other.0.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self, f: &GaloisField) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new(
            (0..n)
                .map(|i| f.sub(*self.0.get(i).unwrap_or(&0), *other.0.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn scale(&self, c: Elem, f: &GaloisField) -> Self {
        Self::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, f: &GaloisField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut k: u64, f: &GaloisField) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn divrem(&self, d: &Self, f: &GaloisField) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.lead()).expect("nonzero");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![0; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], inv);
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for (i, &b) in d.0.iter().enumerate() {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, b));
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self, f: &GaloisField) -> Self {
        self.divrem(d, f).1
    }

    pub fn monic(&self, f: &GaloisField) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(f.inv(self.lead()).expect("nonzero"), f)
    }

    pub fn gcd(a: &Self, b: &Self, f: &GaloisField) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Inverse of `a` modulo `m`, if they are coprime.
    pub fn inv_mod(a: &Self, m: &Self, f: &GaloisField) -> Option<Self> {
        // Extended Euclid tracking the coefficient of `a`.
        let (mut r0, mut r1) = (m.clone(), a.rem(m, f));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f);
            let s = s0.sub(&q.mul(&s1, f), f);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = f.inv(r0.lead())?;
        Some(s0.scale(c, f).rem(m, f))
    }

    pub fn derivative(&self, f: &GaloisField) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| f.mul(c, f.from_int(k as i64)))
                .collect(),
        )
    }

    /// Root of a polynomial whose derivative vanishes.
    pub fn pth_root(&self, f: &GaloisField) -> Option<Self> {
        let p = f.characteristic() as usize;
        if self.0.iter().enumerate().any(|(k, &c)| c != 0 && k % p != 0) {
            return None;
        }
        Some(Self::new(self.0.iter().step_by(p).map(|&c| f.pth_root(c)).collect()))
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(s_i, i)` with the
    /// `s_i` squarefree, pairwise coprime, and `Π s_i^i = self`.
    pub fn squarefree_decomposition(&self, f: &GaloisField) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = f.characteristic();
        let d = self.derivative(f);
        if d.is_zero() {
            let root = self.pth_root(f).expect("vanishing derivative");
            for (s, i) in root.squarefree_decomposition(f) {
                out.push((s, i * p));
            }
            return out;
        }
        let mut c = Self::gcd(self, &d, f);
        let mut w = self.divrem(&c, f).0;
        let mut i = 1;
        while !w.is_one() {
            let y = Self::gcd(&w, &c, f);
            let z = w.divrem(&y, f).0;
            if !z.is_one() {
                out.push((z.monic(f), i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w, f).0;
        }
        if !c.is_one() {
            let root = c.pth_root(f).expect("remaining cofactor is a p-th power");
            for (s, j) in root.squarefree_decomposition(f) {
                out.push((s, j * p));
            }
        }
        out.sort_by_key(|(_, i)| *i);
        out
    }

    /// Applies Frobenius coefficientwise and in the variable: g(t)^p.
    pub fn frobenius(&self, f: &GaloisField) -> Self {
        let p = f.characteristic() as usize;
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0; (self.0.len() - 1) * p + 1];
        for (k, &c) in self.0.iter().enumerate() {
            v[k * p] = f.frobenius(c);
        }
        Self::new(v)
    }

    /// The unique h with h^p ≡ a (mod s), for squarefree s. Frobenius is a
    /// bijection on F_q[t]/(s), so iterating it on `a` eventually returns to
    /// `a`; the element just before is the root.
    pub fn pth_root_mod(a: &Self, s: &Self, f: &GaloisField) -> Self {
        let a = a.rem(s, f);
        let mut prev = a.clone();
        loop {
            let next = prev.frobenius(f).rem(s, f);
            if next == a {
                return prev;
            }
            prev = next;
        }
    }
}
