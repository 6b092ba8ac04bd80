//! Places of F_q(t): monic irreducible polynomials and the degree
//! valuation at infinity. Each place carries a concrete residue field and
//! the reduction map onto it.

use super::factor::{is_irreducible, poly_order_key, FPoly};
use super::ratfn::RatFn;
use crate::error::{Error, Result};
use crate::gf::{Embedding, FieldElem, FiniteField};
use crate::ring::{Field, Ring};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq)]
pub enum PlaceKind {
    Finite(FPoly),
    Infinity,
}

/// Residue field representation.
///
/// Degree-one places and infinity reuse the base field. Places of higher
/// degree over a prime base field use F_p[t]/(pi) itself, so the residue
/// generator is the class of t. Over extension base fields the quotient is
/// flattened into F_{p^{nd}} through fixed first-root embeddings.
#[derive(Clone)]
enum Residue {
    Base,
    Quotient {
        field: FiniteField,
    },
    Embedded {
        field: FiniteField,
        theta: FieldElem,
        coeff_embed: Embedding,
    },
}

#[derive(Clone)]
pub struct Place {
    kind: PlaceKind,
    base: FiniteField,
    degree: usize,
    residue_order: u64,
    residue: Residue,
}

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.kind == other.kind
    }
}
impl Eq for Place {}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.kind, &other.kind) {
            (PlaceKind::Infinity, PlaceKind::Infinity) => Ordering::Equal,
            (PlaceKind::Infinity, _) => Ordering::Greater,
            (_, PlaceKind::Infinity) => Ordering::Less,
            (PlaceKind::Finite(a), PlaceKind::Finite(b)) => {
                poly_order_key(a).cmp(&poly_order_key(b))
            }
        }
    }
}

impl Place {
    /// The finite place (pi) for a monic irreducible pi.
    pub fn finite(pi: FPoly) -> Result<Self> {
        if !pi.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_irreducible(&pi)? {
            return Err(Error::NotIrreducible);
        }
        let base = pi.ring().clone();
        let d = pi.degree().unwrap();
        let residue_order = (base.order() as u128)
            .checked_pow(d as u32)
            .and_then(|o| u64::try_from(o).ok())
            .ok_or(Error::OrderOverflow)?;
        let residue = if d == 1 {
            Residue::Base
        } else if base.degree() == 1 {
            let coeffs: Vec<u64> = pi.coeffs().iter().map(|c| base.index_of(c)).collect();
            Residue::Quotient {
                field: FiniteField::with_modulus(base.p(), coeffs)?,
            }
        } else {
            let big = FiniteField::extension(base.p(), base.degree() * d)?;
            let coeff_embed = Embedding::new(&base, &big)?;
            let theta = first_root(&pi, &coeff_embed, &big)?;
            Residue::Embedded {
                field: big,
                theta,
                coeff_embed,
            }
        };
        Ok(Place {
            kind: PlaceKind::Finite(pi),
            base,
            degree: d,
            residue_order,
            residue,
        })
    }

    /// The place at infinity (uniformizer 1/t).
    pub fn infinity(base: &FiniteField) -> Self {
        Place {
            kind: PlaceKind::Infinity,
            base: base.clone(),
            degree: 1,
            residue_order: base.order(),
            residue: Residue::Base,
        }
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.kind, PlaceKind::Infinity)
    }

    pub fn uniformizer(&self) -> Option<&FPoly> {
        match &self.kind {
            PlaceKind::Finite(pi) => Some(pi),
            PlaceKind::Infinity => None,
        }
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn residue_order(&self) -> u64 {
        self.residue_order
    }

    pub fn residue_field(&self) -> &FiniteField {
        match &self.residue {
            Residue::Base => &self.base,
            Residue::Quotient { field } => field,
            Residue::Embedded { field, .. } => field,
        }
    }

    /// v-adic valuation of a nonzero rational function.
    pub fn valuation(&self, x: &RatFn) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::ZeroValuation);
        }
        match &self.kind {
            PlaceKind::Infinity => Ok(x.den().deg_or_zero() as i64 - x.num().deg_or_zero() as i64),
            PlaceKind::Finite(pi) => {
                Ok(multiplicity(x.num(), pi)? as i64 - multiplicity(x.den(), pi)? as i64)
            }
        }
    }

    /// Valuation and leading coefficient of the local expansion of x != 0.
    pub fn leading_at(&self, x: &RatFn) -> Result<LocalLeading> {
        if x.is_zero() {
            return Err(Error::ZeroValuation);
        }
        match &self.kind {
            PlaceKind::Infinity => {
                let v = x.den().deg_or_zero() as i64 - x.num().deg_or_zero() as i64;
                let ln = x.num().leading().unwrap().clone();
                let ld = x.den().leading().unwrap();
                let leading = self.base.mul(&ln, &ld.inv()?);
                Ok(LocalLeading {
                    place: self.clone(),
                    valuation: v,
                    leading,
                })
            }
            PlaceKind::Finite(pi) => {
                let (mut num, a) = strip(x.num(), pi)?;
                let (mut den, b) = strip(x.den(), pi)?;
                num = num.rem(pi)?;
                den = den.rem(pi)?;
                let field = self.residue_field().clone();
                let n = self.residue_elem(&num);
                let d = self.residue_elem(&den);
                let leading = field.mul(&n, &field.inv(&d)?);
                debug_assert!(!leading.is_zero());
                Ok(LocalLeading {
                    place: self.clone(),
                    valuation: a as i64 - b as i64,
                    leading,
                })
            }
        }
    }

    /// Image of a v-integral x in the residue field (zero allowed).
    pub fn reduce(&self, x: &RatFn) -> Result<FieldElem> {
        if x.is_zero() {
            return Ok(self.residue_field().zero_elem());
        }
        match &self.kind {
            PlaceKind::Infinity => {
                let v = x.den().deg_or_zero() as i64 - x.num().deg_or_zero() as i64;
                if v < 0 {
                    return Err(Error::NotIntegral);
                }
                if v > 0 {
                    return Ok(self.base.zero_elem());
                }
                let ln = x.num().leading().unwrap().clone();
                let ld = x.den().leading().unwrap();
                Ok(self.base.mul(&ln, &ld.inv()?))
            }
            PlaceKind::Finite(pi) => {
                let vden = multiplicity(x.den(), pi)?;
                if vden > 0 {
                    // reduced form: pi | den means negative valuation
                    return Err(Error::NotIntegral);
                }
                let num = x.num().rem(pi)?;
                let den = x.den().rem(pi)?;
                let field = self.residue_field().clone();
                let n = self.residue_elem(&num);
                let d = self.residue_elem(&den);
                Ok(field.mul(&n, &field.inv(&d)?))
            }
        }
    }

    /// Image in the residue field of a polynomial already reduced mod pi.
    fn residue_elem(&self, rem: &FPoly) -> FieldElem {
        match &self.residue {
            Residue::Base => match &self.kind {
                PlaceKind::Infinity => rem.coeff(0),
                PlaceKind::Finite(pi) => {
                    debug_assert!(rem.deg_or_zero() < pi.deg_or_zero().max(1));
                    rem.coeff(0)
                }
            },
            Residue::Quotient { field } => {
                let coeffs: Vec<u64> = rem.coeffs().iter().map(|c| self.base.index_of(c)).collect();
                field.elem_from_coeffs(coeffs)
            }
            Residue::Embedded {
                field,
                theta,
                coeff_embed,
            } => {
                let mut acc = field.zero_elem();
                for c in rem.coeffs().iter().rev() {
                    acc = field.add(&field.mul(&acc, theta), &coeff_embed.apply(c));
                }
                acc
            }
        }
    }
}

/// Valuation and leading coefficient of a local expansion.
#[derive(Clone, Debug)]
pub struct LocalLeading {
    pub place: Place,
    pub valuation: i64,
    pub leading: FieldElem,
}

/// Largest power of pi dividing f (f nonzero), plus the cofactor.
fn strip(f: &FPoly, pi: &FPoly) -> Result<(FPoly, usize)> {
    let mut g = f.clone();
    let mut m = 0;
    loop {
        let (q, r) = g.divmod(pi)?;
        if !r.is_zero() {
            return Ok((g, m));
        }
        g = q;
        m += 1;
    }
}

fn multiplicity(f: &FPoly, pi: &FPoly) -> Result<usize> {
    Ok(strip(f, pi)?.1)
}

fn first_root(pi: &FPoly, emb: &Embedding, big: &FiniteField) -> Result<FieldElem> {
    for z in big.enumerate()? {
        let mut acc = big.zero_elem();
        for c in pi.coeffs().iter().rev() {
            acc = big.add(&big.mul(&acc, &z), &emb.apply(c));
        }
        if acc.is_zero() {
            return Ok(z);
        }
    }
    Err(Error::SearchExhausted(
        "irreducible polynomial has no root in its splitting field".into(),
    ))
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Infinity => write!(f, "inf"),
            PlaceKind::Finite(pi) => write!(f, "{}", pi.display("t")),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "place({self})")
    }
}
