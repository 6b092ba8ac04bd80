//! Factorization of univariate polynomials over a finite field:
//! squarefree reduction via gcd with the derivative (taking p-th roots in
//! the inseparable case), distinct-degree splitting, then equal-degree
//! splitting driven by a deterministic sequence of trial elements.

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::gf::FiniteField;

pub type FPoly = Polynomial<FiniteField>;

/// p-th root of f = g(t^p): pulls exponents down and takes coefficient
/// roots. Caller guarantees f' = 0.
fn pth_root(f: &FPoly) -> FPoly {
    let p = f.ring().p() as usize;
    let mut out = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p == 0 {
            out.push(c.pth_root());
        } else {
            debug_assert!(c.is_zero());
        }
    }
    Polynomial::new(f.ring(), out)
}

/// Product of the distinct monic irreducible factors of f.
pub fn radical(f: &FPoly) -> Result<FPoly> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let f = f.monic()?;
    if f.is_constant() {
        return Ok(Polynomial::one(f.ring()));
    }
    let d = f.derivative();
    if d.is_zero() {
        return radical(&pth_root(&f));
    }
    let g = f.gcd(&d)?;
    let u = f.div_exact(&g)?; // squarefree, the factors of multiplicity prime to p
    if g.is_constant() {
        return Ok(u);
    }
    let rest = radical(&g)?;
    // merge: factors of g not already in u
    let extra = rest.div_exact(&rest.gcd(&u)?)?;
    Ok(u.mul(&extra))
}

/// x^(q^k) mod f, iterating the q-power Frobenius.
fn frobenius_power(f: &FPoly, k: usize) -> Result<FPoly> {
    let q = f.ring().order();
    let mut w = Polynomial::gen(f.ring()).rem(f)?;
    for _ in 0..k {
        w = w.powmod(q as u128, f)?;
    }
    Ok(w)
}

/// Irreducibility over F_q by the Frobenius criterion.
pub fn is_irreducible(f: &FPoly) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::DivisionByZero),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic()?;
    let x = Polynomial::gen(f.ring());
    // x^(q^n) = x mod f
    if frobenius_power(&f, n)?.sub(&x.rem(&f)?) != Polynomial::zero(f.ring()) {
        return Ok(false);
    }
    let mut prime_divs = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            prime_divs.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for r in prime_divs {
        let w = frobenius_power(&f, n / r)?.sub(&x.rem(&f)?);
        if !f.gcd(&w)?.is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Distinct-degree split of a squarefree monic polynomial: pairs
/// (product of irreducible factors of degree d, d).
fn distinct_degree(f: &FPoly) -> Result<Vec<(FPoly, usize)>> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let q = f.ring().order() as u128;
    let mut w = Polynomial::gen(f.ring()).rem(&f)?;
    let mut d = 0;
    while f.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > f.degree().unwrap() {
            // what is left is irreducible
            out.push((f.clone(), f.degree().unwrap()));
            break;
        }
        w = w.powmod(q, &f)?;
        let x = Polynomial::gen(f.ring());
        let g = f.gcd(&w.sub(&x))?;
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            f = f.div_exact(&g)?;
            w = w.rem(&f)?;
        }
    }
    Ok(out)
}

/// Deterministic equal-degree splitting: f monic squarefree, every
/// irreducible factor of degree d. Trial elements are enumerated by index.
fn equal_degree(f: &FPoly, d: usize) -> Result<Vec<FPoly>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.ring().clone();
    let q = field.order();
    // enumerate polynomials of degree < n by index, skipping constants
    let mut idx: u64 = q;
    let max_tries: u64 = edf_trial_cap(q, n);
    let mut tries = 0;
    loop {
        tries += 1;
        if tries > max_tries {
            return Err(Error::SearchExhausted(
                "equal-degree splitting exhausted its trial sequence".into(),
            ));
        }
        let h = poly_from_index(&field, idx);
        idx += 1;
        let g = if field.p() == 2 {
            // trace map splitting in characteristic 2
            let mut tr = Polynomial::zero(&field);
            let mut pw = h.rem(f)?;
            let bits = field.degree() * d;
            for _ in 0..bits {
                tr = tr.add(&pw);
                pw = pw.mul(&pw).rem(f)?;
            }
            f.gcd(&tr)?
        } else {
            // h^((q^d - 1)/2) = N(h)^((q-1)/2) with N the degree-d norm
            let mut norm = Polynomial::one(&field);
            let mut pw = h.rem(f)?;
            for i in 0..d {
                norm = norm.mul(&pw).rem(f)?;
                if i + 1 < d {
                    pw = pw.powmod(q as u128, f)?;
                }
            }
            let e = norm.powmod(((q - 1) / 2) as u128, f)?;
            f.gcd(&e.sub(&Polynomial::one(&field)))?
        };
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let rest = f.div_exact(&g)?;
            let mut out = equal_degree(&g, d)?;
            out.extend(equal_degree(&rest, d)?);
            return Ok(out);
        }
    }
}

fn edf_trial_cap(q: u64, n: usize) -> u64 {
    (4 * q * (n as u64 + 1)).max(4096)
}

/// Polynomial over F_q whose coefficient indices are the base-q digits of `idx`.
fn poly_from_index(field: &FiniteField, mut idx: u64) -> FPoly {
    let q = field.order();
    let mut coeffs = Vec::new();
    while idx > 0 {
        coeffs.push(field.elem_from_index(idx % q));
        idx /= q;
    }
    Polynomial::new(field, coeffs)
}

/// Full factorization: leading coefficient and the sorted list of
/// (monic irreducible, multiplicity), ordered by degree then by
/// coefficients from the leading term down.
pub fn factor(f: &FPoly) -> Result<(crate::gf::FieldElem, Vec<(FPoly, usize)>)> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let lead = f.leading().unwrap().clone();
    let monic = f.monic()?;
    let mut factors: Vec<(FPoly, usize)> = Vec::new();
    let rad = radical(&monic)?;
    for (prod, d) in distinct_degree(&rad)? {
        for irr in equal_degree(&prod, d)? {
            // multiplicity by trial division of the original
            let mut m = 0;
            let mut rest = monic.clone();
            loop {
                let (quo, rem) = rest.divmod(&irr)?;
                if !rem.is_zero() {
                    break;
                }
                m += 1;
                rest = quo;
            }
            debug_assert!(m >= 1);
            factors.push((irr, m));
        }
    }
    factors.sort_by(|a, b| poly_order_key(&a.0).cmp(&poly_order_key(&b.0)));
    Ok((lead, factors))
}

/// Deterministic ordering key: degree, then coefficient indices from the
/// leading coefficient down.
pub fn poly_order_key(f: &FPoly) -> (usize, Vec<u64>) {
    let field = f.ring();
    let key = f.coeffs().iter().rev().map(|c| field.index_of(c)).collect();
    (f.deg_or_zero(), key)
}

/// All monic divisors of a factored polynomial, sorted.
pub fn monic_divisors(
    field: &FiniteField,
    factors: &[(FPoly, usize)],
    cap: u64,
) -> Result<Vec<FPoly>> {
    let mut count: u64 = 1;
    for (_, m) in factors {
        count = count.saturating_mul(*m as u64 + 1);
        if count > cap {
            return Err(Error::CandidateCapExceeded { needed: count, cap });
        }
    }
    let mut out = vec![Polynomial::one(field)];
    for (irr, m) in factors {
        let mut next = Vec::with_capacity(out.len() * (m + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*m {
                acc = acc.mul(irr);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort_by(|a, b| poly_order_key(a).cmp(&poly_order_key(b)));
    Ok(out)
}

/// Monic irreducible polynomials of exact degree d, in index order.
pub fn monic_irreducibles(field: &FiniteField, d: usize) -> Result<Vec<FPoly>> {
    let q = field.order();
    let count = (q as u128)
        .checked_pow(d as u32)
        .ok_or(Error::OrderOverflow)?;
    let bound = crate::config::enum_bound() as u128;
    if count > bound {
        return Err(Error::EnumBoundExceeded {
            needed: u64::MAX,
            bound: bound as u64,
        });
    }
    let mut out = Vec::new();
    for idx in 0..count as u64 {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut k = idx;
        for _ in 0..d {
            coeffs.push(field.elem_from_index(k % q));
            k /= q;
        }
        coeffs.push(field.one_elem());
        let f = Polynomial::new(field, coeffs);
        if is_irreducible(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}
