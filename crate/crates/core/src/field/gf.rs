//! Finite fields F_q with q = p^e.
//!
//! Prime fields use direct modular arithmetic. Extension fields (q <= 64) are
//! built from a fixed Conway polynomial and use precomputed tables, so an
//! element code is the base-p digit string of its polynomial representative
//! (least significant digit = constant term).

use crate::error::{Error, Result};

/// An element of F_q, stored by its code in `0..q`.
pub type Elem = u32;

/// Conway polynomials for the extension fields we ship, coefficients listed
/// from the constant term upwards (monic, leading 1 omitted).
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (5, 2, &[2, 4]),
    (7, 2, &[3, 6]),
];

const MAX_EXTENSION_ORDER: u32 = 64;
const MAX_PRIME: u32 = 1 << 30;

#[derive(Debug)]
pub struct GaloisField {
    p: u32,
    degree: u32,
    order: u32,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisField {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Config(format!("characteristic {p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::Config(format!("characteristic {p} is too large")));
        }
        if degree == 0 {
            return Err(Error::Config("field degree must be positive".into()));
        }
        if degree == 1 {
            return Ok(Self {
                p,
                degree,
                order: p,
                tables: None,
            });
        }
        let order = p
            .checked_pow(degree)
            .filter(|&q| q <= MAX_EXTENSION_ORDER)
            .ok_or_else(|| {
                Error::Config(format!(
                    "F_{{{p}^{degree}}} exceeds the supported extension size (q <= {MAX_EXTENSION_ORDER})"
                ))
            })?;
        let modulus = CONWAY
            .iter()
            .find(|(cp, ce, _)| *cp == p && *ce == degree)
            .map(|(_, _, m)| *m)
            .ok_or_else(|| Error::Config(format!("no Conway polynomial shipped for ({p}, {degree})")))?;
        let tables = Tables::build(p, degree, order, modulus);
        Ok(Self {
            p,
            degree,
            order,
            tables: Some(tables),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            None => {
                let s = a as u64 + b as u64;
                (s % self.p as u64) as Elem
            }
            Some(t) => t.add[(a * self.order + b) as usize] as Elem,
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            None => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            Some(t) => t.neg[a as usize] as Elem,
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            None => ((a as u64 * b as u64) % self.p as u64) as Elem,
            Some(t) => t.mul[(a * self.order + b) as usize] as Elem,
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            None => Some(self.pow(a, (self.p - 2) as u64)),
            Some(t) => Some(t.inv[a as usize] as Elem),
        }
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        if self.degree == 1 {
            a
        } else {
            self.pow(a, self.p as u64)
        }
    }

    /// The unique b with b^p = a (Frobenius is bijective on a finite field).
    pub fn pth_root(&self, a: Elem) -> Elem {
        if self.degree == 1 {
            a
        } else {
            self.pow(a, (self.order / self.p) as u64)
        }
    }

    /// Absolute trace F_q -> F_p, returned as an element of the prime field.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.degree {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// The generator of F_q over F_p (the class of the indeterminate).
    pub fn generator(&self) -> Option<Elem> {
        (self.degree > 1).then_some(self.p)
    }

    /// Base-p digits of an element, constant term first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        let mut x = a;
        for _ in 0..self.degree {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    pub fn same_field(&self, other: &GaloisField) -> bool {
        self.p == other.p && self.degree == other.degree
    }
}

impl Tables {
    fn build(p: u32, degree: u32, order: u32, modulus: &[u32]) -> Self {
        let d = degree as usize;
        let digits = |mut x: u32| {
            let mut v = vec![0u32; d];
            for slot in v.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let n = order as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..order {
            let da = digits(a);
            for b in 0..order {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * order + b) as usize] = encode(&sum) as u8;

                let mut prod = vec![0u32; 2 * d - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce with x^d = -(m_0 + m_1 x + ... + m_{d-1} x^{d-1})
                for k in (d..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let idx = k - d + i;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
                mul[(a * order + b) as usize] = encode(&prod[..d]) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..order {
            for b in 0..order {
                if add[(a * order + b) as usize] == 0 {
                    neg[a as usize] = b as u8;
                }
                if a != 0 && mul[(a * order + b) as usize] == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        Self { add, mul, neg, inv }
    }
}
