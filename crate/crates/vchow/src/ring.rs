//! Context-style ring and field traits. Element types are plain data; the
//! descriptor (the "ring") owns the arithmetic. Generic polynomial and curve
//! code is written once against these traits and instantiated both with
//! finite fields and with the rational function field.

use crate::error::Result;
use std::fmt;

pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an integer under the canonical map Z -> R.
    fn from_int(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;

    /// Render an element; `embedded` asks for a form safe to splice into a
    /// product or a power (parenthesized when the element is a sum).
    fn fmt_elem(&self, a: &Self::Elem, embedded: bool) -> String;

    /// Signed rendering used by polynomial printers: `(true, s)` means the
    /// element is -s. The default never peels a sign.
    fn fmt_elem_signed(&self, a: &Self::Elem, embedded: bool) -> (bool, String) {
        (false, self.fmt_elem(a, embedded))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; errors on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}
