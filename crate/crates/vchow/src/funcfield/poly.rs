//! Dense univariate polynomials over a context ring, in canonical form
//! (ascending coefficients, no trailing zeros; the zero polynomial is the
//! empty vector).

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Polynomial<K: Ring> {
    ring: K,
    coeffs: Vec<K::Elem>,
}

impl<K: Ring> Polynomial<K> {
    pub fn new(ring: &K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().map(|c| ring.is_zero(c)).unwrap_or(false) {
            coeffs.pop();
        }
        Polynomial {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &K) -> Self {
        Polynomial {
            ring: ring.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(ring: &K) -> Self {
        Polynomial {
            ring: ring.clone(),
            coeffs: vec![ring.one()],
        }
    }

    pub fn constant(ring: &K, c: K::Elem) -> Self {
        Polynomial::new(ring, vec![c])
    }

    /// The monomial c * x^k.
    pub fn monomial(ring: &K, c: K::Elem, k: usize) -> Self {
        if ring.is_zero(&c) {
            return Self::zero(ring);
        }
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = c;
        Polynomial {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// x
    pub fn gen(ring: &K) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    pub fn from_ints(ring: &K, ints: &[i64]) -> Self {
        Polynomial::new(ring, ints.iter().map(|&n| ring.from_int(n)).collect())
    }

    pub fn ring(&self) -> &K {
        &self.ring
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.ring.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> K::Elem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading(&self) -> Option<&K::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| self.ring.is_one(c)).unwrap_or(false)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ring.add(&self.coeff(i), &other.coeff(i)));
        }
        Polynomial::new(&self.ring, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ring.sub(&self.coeff(i), &other.coeff(i)));
        }
        Polynomial::new(&self.ring, out)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(a, b));
            }
        }
        Polynomial::new(&self.ring, out)
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        Polynomial::new(
            &self.ring,
            self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &K::Elem) -> K::Elem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, x), c);
        }
        acc
    }

    /// Evaluate with coefficients mapped into another ring first.
    pub fn eval_map<R: Ring>(
        &self,
        target: &R,
        map: impl Fn(&K::Elem) -> R::Elem,
        x: &R::Elem,
    ) -> R::Elem {
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            acc = target.add(&target.mul(&acc, x), &map(c));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(&self.ring);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.ring.mul(&self.ring.from_int(i as i64), c))
            .collect();
        Polynomial::new(&self.ring, out)
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(&self.ring, c.clone()));
        }
        acc
    }

    /// Coefficients reversed: x^deg * f(1/x). Zero maps to zero.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Polynomial::new(&self.ring, coeffs)
    }

    /// Truncation mod x^k.
    pub fn truncated(&self, k: usize) -> Self {
        if self.coeffs.len() <= k {
            return self.clone();
        }
        Polynomial::new(&self.ring, self.coeffs[..k].to_vec())
    }
}

impl<K: Field> Polynomial<K> {
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        if self.ring.is_one(lead) {
            return Ok(self.clone());
        }
        let inv = self.ring.inv(lead)?;
        Ok(self.scale(&inv))
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = self.ring.inv(d.leading().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.ring), self.clone()));
        }
        let mut q = vec![self.ring.zero(); r.len() - dd];
        while r.len() > dd {
            let lead = r.last().unwrap().clone();
            if self.ring.is_zero(&lead) {
                r.pop();
                continue;
            }
            let k = r.len() - 1 - dd;
            let c = self.ring.mul(&lead, &lead_inv);
            q[k] = c.clone();
            for i in 0..=dd {
                let sub = self.ring.mul(&c, &d.coeffs[i]);
                r[k + i] = self.ring.sub(&r[k + i], &sub);
            }
            // the leading term cancels exactly
            r.pop();
        }
        Ok((
            Polynomial::new(&self.ring, q),
            Polynomial::new(&self.ring, r),
        ))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divmod(d)?.1)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Exact quotient; errors if the division is not exact.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divmod(d)?;
        if !r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns (g, s, t) with g = s*self + t*other, g monic.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let ring = &self.ring;
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Self::one(ring);
        let mut s1 = Self::zero(ring);
        let mut t0 = Self::zero(ring);
        let mut t1 = Self::one(ring);
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let lead_inv = ring.inv(r0.leading().unwrap())?;
        let scale = |p: &Self| p.scale(&lead_inv);
        Ok((scale(&r0), scale(&s0), scale(&t0)))
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u128, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.ring).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }
}

impl<K: Ring> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl<K: Ring> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl<K: Ring> Polynomial<K> {
    /// Grammar-compatible rendering with an explicit variable name.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let (negative, s) = self.ring.fmt_elem_signed(c, i > 0);
            let body = match i {
                0 => s,
                1 if s == "1" => var.to_string(),
                1 => format!("{s}*{var}"),
                _ if s == "1" => format!("{var}^{i}"),
                _ => format!("{s}*{var}^{i}"),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}
