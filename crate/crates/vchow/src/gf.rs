//! Exact arithmetic in finite fields F_{p^n} at desk scale.
//!
//! A field is described by its characteristic p and a monic irreducible
//! modulus over F_p; elements are reduced coefficient vectors. Extension
//! fields built from `(p, n)` alone use the first irreducible modulus in
//! index order, so any two runs agree byte for byte.

use crate::config;
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
struct FieldRepr {
    p: u64,
    n: usize,
    /// Monic modulus over F_p, length n + 1 (ascending). For n = 1 this is
    /// conventionally `x - c`, and arithmetic never consults it.
    modulus: Vec<u64>,
    order: u64,
}

/// Descriptor of F_{p^n}; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct FiniteField(Arc<FieldRepr>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for FiniteField {}

/// An element of a `FiniteField`, in canonical reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: FiniteField,
    coeffs: Vec<u64>,
}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Arithmetic on raw coefficient vectors over F_p (ascending, not
// necessarily trimmed). Only what modulus handling needs.
mod fp {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        // m monic of degree d >= 1
        let d = m.len() - 1;
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        while r.len() > d {
            let lead = *r.last().unwrap();
            let k = r.len() - 1 - d;
            for i in 0..=d {
                let sub = lead * m[i] % p;
                r[k + i] = (r[k + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Irreducibility by trial division against all monic polynomials of
    /// degree at most deg(f)/2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        for deg in 1..=d / 2 {
            let count = p.pow(deg as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(deg + 1);
                let mut k = idx;
                for _ in 0..deg {
                    g.push(k % p);
                    k /= p;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FiniteField {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FiniteField(Arc::new(FieldRepr {
            p,
            n: 1,
            modulus: vec![0, 1],
            order: p,
        })))
    }

    /// F_{p^n} with the first monic irreducible modulus in index order.
    pub fn extension(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::OrderOverflow);
        }
        if n == 1 {
            return Self::prime(p);
        }
        let order = (p as u128)
            .checked_pow(n as u32)
            .ok_or(Error::OrderOverflow)?;
        let order = u64::try_from(order).map_err(|_| Error::OrderOverflow)?;
        let count = order; // p^n candidate lower parts
        for idx in 0..count {
            let mut m = Vec::with_capacity(n + 1);
            let mut k = idx;
            for _ in 0..n {
                m.push(k % p);
                k /= p;
            }
            m.push(1);
            if fp::is_irreducible(&m, p) {
                return Ok(FiniteField(Arc::new(FieldRepr {
                    p,
                    n,
                    modulus: m,
                    order,
                })));
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    /// F_p[x]/(modulus) for a caller-supplied monic irreducible modulus
    /// (ascending coefficients, length n + 1).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::NotIrreducible);
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        if !fp::is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible);
        }
        let n = modulus.len() - 1;
        let order = (p as u128)
            .checked_pow(n as u32)
            .ok_or(Error::OrderOverflow)?;
        let order = u64::try_from(order).map_err(|_| Error::OrderOverflow)?;
        Ok(FiniteField(Arc::new(FieldRepr {
            p,
            n,
            modulus,
            order,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over F_p.
    pub fn degree(&self) -> usize {
        self.0.n
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero_elem(&self) -> FieldElem {
        FieldElem {
            field: self.clone(),
            coeffs: vec![0; self.0.n],
        }
    }

    pub fn one_elem(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        let p = self.0.p as i64;
        let r = v.rem_euclid(p) as u64;
        let mut coeffs = vec![0; self.0.n];
        coeffs[0] = r;
        FieldElem {
            field: self.clone(),
            coeffs,
        }
    }

    /// The class of x in F_p[x]/(modulus); errors for prime fields, where no
    /// generator symbol is admitted.
    pub fn generator(&self) -> Result<FieldElem> {
        if self.0.n == 1 {
            return Err(Error::ZeroElement);
        }
        let mut coeffs = vec![0; self.0.n];
        coeffs[1] = 1;
        Ok(FieldElem {
            field: self.clone(),
            coeffs,
        })
    }

    pub fn elem_from_coeffs(&self, mut coeffs: Vec<u64>) -> FieldElem {
        let p = self.0.p;
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let reduced = fp::rem(&coeffs, &self.0.modulus, p);
        let mut out = vec![0; self.0.n];
        out[..reduced.len()].copy_from_slice(&reduced);
        FieldElem {
            field: self.clone(),
            coeffs: out,
        }
    }

    /// Element number `idx` in enumeration order (base-p digits, 0 first).
    pub fn elem_from_index(&self, idx: u64) -> FieldElem {
        debug_assert!(idx < self.0.order);
        let p = self.0.p;
        let mut coeffs = vec![0; self.0.n];
        let mut k = idx;
        for c in coeffs.iter_mut() {
            *c = k % p;
            k /= p;
        }
        FieldElem {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn index_of(&self, a: &FieldElem) -> u64 {
        let p = self.0.p;
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * p + c;
        }
        idx
    }

    /// All q elements, zero first; errors past the enumeration bound.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = FieldElem> + '_> {
        let bound = config::enum_bound();
        if self.0.order > bound {
            return Err(Error::EnumBoundExceeded {
                needed: self.0.order,
                bound,
            });
        }
        Ok((0..self.0.order).map(move |i| self.elem_from_index(i)))
    }

    /// Whether nonzero x is an l-th power, via x^((q-1)/gcd(l, q-1)) = 1.
    pub fn is_lth_power(&self, x: &FieldElem, l: u64) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if l == self.0.p {
            return Err(Error::LEqualsCharacteristic { l });
        }
        let g = gcd(l, self.0.order - 1);
        if g == 1 {
            return Ok(true);
        }
        let e = (self.0.order - 1) / g;
        Ok(self.pow(x, e).is_one())
    }

    pub fn is_square(&self, x: &FieldElem) -> Result<bool> {
        self.is_lth_power(x, 2)
    }

    /// Quadratic character: 1 for a nonzero square, -1 for a non-square,
    /// 0 for zero. Odd characteristic only.
    pub fn chi(&self, x: &FieldElem) -> Result<i8> {
        if self.0.p == 2 {
            return Err(Error::UnsupportedCharacteristic { p: 2 });
        }
        if x.is_zero() {
            return Ok(0);
        }
        let e = (self.0.order - 1) / 2;
        Ok(if self.pow(x, e).is_one() { 1 } else { -1 })
    }

    /// First square root of x in enumeration order, if any.
    pub fn sqrt(&self, x: &FieldElem) -> Result<Option<FieldElem>> {
        if x.is_zero() {
            return Ok(Some(self.zero_elem()));
        }
        for y in self.enumerate()? {
            if self.mul(&y, &y) == *x {
                return Ok(Some(y));
            }
        }
        Ok(None)
    }

    fn same_field(&self, a: &FieldElem, b: &FieldElem) {
        assert!(a.field == *self && b.field == *self, "mixed field parents");
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FieldElem {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn frobenius(&self) -> FieldElem {
        self.field.pow(self, self.field.p())
    }

    /// Unique y with y^p = self (Frobenius is bijective).
    pub fn pth_root(&self) -> FieldElem {
        let q = self.field.order();
        let p = self.field.p();
        self.field.pow(self, q / p)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        self.field.inv_elem(self)
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.field.pow(self, e)
    }
}

impl FiniteField {
    fn add_elem(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.same_field(a, b);
        let p = self.0.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % p)
            .collect();
        FieldElem {
            field: self.clone(),
            coeffs,
        }
    }

    fn neg_elem(&self, a: &FieldElem) -> FieldElem {
        let p = self.0.p;
        let coeffs = a.coeffs.iter().map(|&x| (p - x) % p).collect();
        FieldElem {
            field: self.clone(),
            coeffs,
        }
    }

    fn mul_elem(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.same_field(a, b);
        let p = self.0.p;
        if self.0.n == 1 {
            return FieldElem {
                field: self.clone(),
                coeffs: vec![a.coeffs[0] * b.coeffs[0] % p],
            };
        }
        let prod = fp::mul(&a.coeffs, &b.coeffs, p);
        let red = fp::rem(&prod, &self.0.modulus, p);
        let mut out = vec![0; self.0.n];
        out[..red.len()].copy_from_slice(&red);
        FieldElem {
            field: self.clone(),
            coeffs: out,
        }
    }

    fn inv_elem(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2) is the inverse in F_q^x.
        Ok(self.pow(a, self.0.order - 2))
    }
}

impl Ring for FiniteField {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        self.zero_elem()
    }
    fn one(&self) -> FieldElem {
        self.one_elem()
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &FieldElem) -> bool {
        a.is_one()
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add_elem(a, b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        self.neg_elem(a)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.mul_elem(a, b)
    }
    fn from_int(&self, n: i64) -> FieldElem {
        self.from_i64(n)
    }
    fn characteristic(&self) -> u64 {
        self.0.p
    }
    fn fmt_elem(&self, a: &FieldElem, embedded: bool) -> String {
        let s = format!("{a}");
        if embedded && (s.contains('+') || s.contains('-')) {
            format!("({s})")
        } else {
            s
        }
    }
    fn fmt_elem_signed(&self, a: &FieldElem, embedded: bool) -> (bool, String) {
        // symmetric representatives read better for prime-field constants
        if self.0.n == 1 && a.coeffs[0] > self.0.p / 2 {
            (true, (self.0.p - a.coeffs[0]).to_string())
        } else {
            (false, self.fmt_elem(a, embedded))
        }
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.inv_elem(a)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut terms: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "g".to_string(),
                (1, _) => format!("{c}*g"),
                (_, 1) => format!("g^{i}"),
                (_, _) => format!("{c}*g^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in GF({})", self.field.order())
    }
}

/// A fixed embedding of one finite field into another, determined by the
/// first root of the subfield modulus in enumeration order.
#[derive(Clone, Debug)]
pub struct Embedding {
    from: FiniteField,
    to: FiniteField,
    gen_image: FieldElem,
}

impl Embedding {
    /// The identity map of a field into itself.
    pub fn identity(field: &FiniteField) -> Self {
        let gen_image = if field.degree() == 1 {
            field.zero_elem()
        } else {
            field.generator().expect("extension field has a generator")
        };
        Embedding {
            from: field.clone(),
            to: field.clone(),
            gen_image,
        }
    }

    pub fn new(from: &FiniteField, to: &FiniteField) -> Result<Self> {
        if from.p() != to.p() || to.degree() % from.degree() != 0 {
            return Err(Error::NotIrreducible);
        }
        if from.degree() == 1 {
            return Ok(Embedding {
                from: from.clone(),
                to: to.clone(),
                gen_image: to.zero_elem(),
            });
        }
        // First root of the subfield modulus in the big field.
        let modulus = from.modulus().to_vec();
        for z in to.enumerate()? {
            let mut acc = to.zero_elem();
            for &c in modulus.iter().rev() {
                acc = to.add(&to.mul(&acc, &z), &to.from_i64(c as i64));
            }
            if acc.is_zero() {
                return Ok(Embedding {
                    from: from.clone(),
                    to: to.clone(),
                    gen_image: z,
                });
            }
        }
        Err(Error::SearchExhausted(
            "no root of subfield modulus found".into(),
        ))
    }

    pub fn from_field(&self) -> &FiniteField {
        &self.from
    }

    pub fn to_field(&self) -> &FiniteField {
        &self.to
    }

    pub fn apply(&self, a: &FieldElem) -> FieldElem {
        let mut acc = self.to.zero_elem();
        for &c in a.coeffs().iter().rev() {
            acc = self.to.add(
                &self.to.mul(&acc, &self.gen_image),
                &self.to.from_i64(c as i64),
            );
        }
        acc
    }

    /// Preimage under the embedding, if the element lies in the subfield.
    pub fn descend(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.from.degree() == 1 {
            // Prime subfield: scalars are exactly the Frobenius-fixed elements.
            let mut out = None;
            for i in 0..self.from.p() {
                let cand = self.from.elem_from_index(i);
                if self.apply(&cand) == *a {
                    out = Some(cand);
                    break;
                }
            }
            return out;
        }
        for i in 0..self.from.order() {
            let cand = self.from.elem_from_index(i);
            if self.apply(&cand) == *a {
                return Some(cand);
            }
        }
        None
    }
}

macro_rules! elem_binop {
    ($trait:ident, $method:ident, $ring_method:ident) => {
        impl std::ops::$trait for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.field.$ring_method(self, rhs)
            }
        }
    };
}
elem_binop!(Add, add, add);
elem_binop!(Sub, sub, sub);
elem_binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.field.neg_elem(self)
    }
}
