//! The rational function field F_q(t): reduced fractions of polynomials
//! with a monic denominator.

use super::factor::{factor, FPoly};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FiniteField};
use crate::ring::{Field, Ring};
use std::fmt;

/// An element of F_q(t) in canonical form: gcd(num, den) = 1, den monic.
#[derive(Clone, PartialEq)]
pub struct RatFn {
    num: FPoly,
    den: FPoly,
}

impl RatFn {
    pub fn new(num: FPoly, den: FPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: FPoly, den: FPoly) -> Self {
        if num.is_zero() {
            return RatFn {
                den: Polynomial::one(num.ring()),
                num,
            };
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den).expect("gcd of nonzero polynomials");
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        // make the denominator monic
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            RatFn { num, den }
        } else {
            let inv = lead.inv().unwrap();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: FPoly) -> Self {
        RatFn {
            den: Polynomial::one(p.ring()),
            num: p,
        }
    }

    pub fn from_int(field: &FiniteField, n: i64) -> Self {
        Self::from_poly(Polynomial::constant(field, field.from_i64(n)))
    }

    pub fn var(field: &FiniteField) -> Self {
        Self::from_poly(Polynomial::gen(field))
    }

    pub fn base(&self) -> &FiniteField {
        self.num.ring()
    }

    pub fn num(&self) -> &FPoly {
        &self.num
    }

    pub fn den(&self) -> &FPoly {
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

    /// Constant rational functions are exactly the elements of F_q.
    pub fn as_constant(&self) -> Option<FieldElem> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?).pipe_ok()
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(RatFn {
                num: self.num.pow(e as u64),
                den: self.den.pow(e as u64),
            })
        } else {
            self.inv()?.pow(-e)
        }
    }

    fn pipe_ok(self) -> Result<Self> {
        Ok(self)
    }

    /// Substitute t -> 1/t; realizes the degree valuation as the finite
    /// place (t) of the substituted function.
    pub fn invert_variable(&self) -> Self {
        let dn = self.num.deg_or_zero();
        let dd = self.den.deg_or_zero();
        let t = Polynomial::gen(self.base());
        // num(1/t)/den(1/t) = rev(num) * t^(dd) / (rev(den) * t^(dn))
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        if dd > dn {
            num = num.mul(&t.pow((dd - dn) as u64));
        } else {
            den = den.mul(&t.pow((dn - dd) as u64));
        }
        Self::reduced(num, den)
    }

    /// Evaluate at a point of the base field (or an extension through `map`),
    /// when the denominator does not vanish there.
    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        let field = x.field().clone();
        let emb = |c: &FieldElem| {
            debug_assert!(c.field() == &field);
            c.clone()
        };
        let d = self.den.eval_map(&field, emb, x);
        if d.is_zero() {
            return Err(Error::NotIntegral);
        }
        let n = self.num.eval_map(&field, emb, x);
        Ok(field.mul(&n, &d.inv()?))
    }

    /// Square root within F_q(t), if one exists: all factor multiplicities
    /// of num and den even, and the leading constant a square in F_q.
    pub fn sqrt(&self) -> Result<Option<RatFn>> {
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let (lead_n, fac_n) = factor(&self.num)?;
        let (_, fac_d) = factor(&self.den)?;
        let field = self.base();
        let Some(root_c) = field.sqrt(&lead_n)? else {
            return Ok(None);
        };
        let mut num = Polynomial::constant(field, root_c);
        for (f, m) in &fac_n {
            if m % 2 != 0 {
                return Ok(None);
            }
            num = num.mul(&f.pow((m / 2) as u64));
        }
        let mut den = Polynomial::one(field);
        for (f, m) in &fac_d {
            if m % 2 != 0 {
                return Ok(None);
            }
            den = den.mul(&f.pow((m / 2) as u64));
        }
        Ok(Some(RatFn { num, den }))
    }
}

/// Field descriptor for F_q(t), usable wherever generic ring code expects a
/// coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFnField(pub FiniteField);

impl RatFnField {
    pub fn base(&self) -> &FiniteField {
        &self.0
    }

    pub fn var(&self) -> RatFn {
        RatFn::var(&self.0)
    }

    pub fn from_poly(&self, p: FPoly) -> RatFn {
        RatFn::from_poly(p)
    }
}

impl Ring for RatFnField {
    type Elem = RatFn;

    fn zero(&self) -> RatFn {
        RatFn::from_int(&self.0, 0)
    }
    fn one(&self) -> RatFn {
        RatFn::from_int(&self.0, 1)
    }
    fn is_zero(&self, a: &RatFn) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &RatFn) -> bool {
        a.is_one()
    }
    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.add(b)
    }
    fn neg(&self, a: &RatFn) -> RatFn {
        a.neg()
    }
    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.mul(b)
    }
    fn from_int(&self, n: i64) -> RatFn {
        RatFn::from_int(&self.0, n)
    }
    fn characteristic(&self) -> u64 {
        self.0.p()
    }
    fn fmt_elem(&self, a: &RatFn, embedded: bool) -> String {
        let s = format!("{a}");
        if embedded && (s.contains(" + ") || s.contains(" - ") || s.starts_with('-')) {
            format!("({s})")
        } else {
            s
        }
    }
    fn fmt_elem_signed(&self, a: &RatFn, embedded: bool) -> (bool, String) {
        // peel the sign when the numerator's leading prime-field
        // coefficient sits in the negative half
        let base = self.base();
        if base.degree() == 1 && !a.is_zero() {
            let lead = a.num().leading().unwrap();
            if lead.coeffs()[0] > base.p() / 2 {
                return (true, self.fmt_elem(&a.neg(), embedded));
            }
        }
        (false, self.fmt_elem(a, embedded))
    }
}

impl Field for RatFnField {
    fn inv(&self, a: &RatFn) -> Result<RatFn> {
        a.inv()
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl RatFn {
    pub fn display(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.display(var);
        }
        let num = self.num.display(var);
        let den = self.den.display(var);
        let num = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({num})")
        } else {
            num
        };
        format!("{num}/({den})")
    }
}
