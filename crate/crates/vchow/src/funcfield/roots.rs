//! Roots in F_q(t) of polynomials in one variable x with rational-function
//! coefficients, by the rational-root theorem over the UFD F_q[t]:
//! in lowest terms a root has numerator dividing the trailing coefficient
//! and denominator dividing the leading one, up to F_q^x scalars.

use super::factor::{factor, monic_divisors, poly_order_key, FPoly};
use super::poly::Polynomial;
use super::ratfn::{RatFn, RatFnField};
use crate::config;
use crate::error::{Error, Result};
use crate::ring::Ring;

pub type XPoly = Polynomial<RatFnField>;

/// Scale a nonzero polynomial over F_q(t) to integral primitive
/// coefficients: clears denominators and removes the polynomial content.
pub fn primitive_integral_coeffs(f: &XPoly) -> Result<Vec<FPoly>> {
    let kf = f.ring();
    let base = kf.base();
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut den_lcm = Polynomial::one(base);
    for c in f.coeffs() {
        let d = c.den();
        let g = den_lcm.gcd(d)?;
        den_lcm = den_lcm.mul(&d.div_exact(&g)?);
    }
    let mut ints: Vec<FPoly> = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let scale = den_lcm.div_exact(c.den())?;
        ints.push(c.num().mul(&scale));
    }
    let mut content = Polynomial::zero(base);
    for c in &ints {
        if !c.is_zero() {
            content = if content.is_zero() {
                c.monic()?
            } else {
                content.gcd(c)?
            };
        }
    }
    if !content.is_one() {
        for c in ints.iter_mut() {
            *c = c.div_exact(&content)?;
        }
    }
    Ok(ints)
}

fn ratfn_order_key(r: &RatFn) -> (usize, Vec<u64>, usize, Vec<u64>) {
    let (dd, kd) = poly_order_key(r.den());
    let (dn, kn) = poly_order_key(r.num());
    (dd, kd, dn, kn)
}

/// All roots of f in F_q(t), exactly. Errors when the divisor-candidate set
/// exceeds the candidate cap.
pub fn rational_roots(f: &XPoly) -> Result<Vec<RatFn>> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let kf = f.ring().clone();
    let base = kf.base().clone();
    let mut roots: Vec<RatFn> = Vec::new();

    // strip powers of x; zero is a root iff the trailing coefficient vanishes
    let mut coeffs = f.coeffs().to_vec();
    let mut stripped = 0usize;
    while coeffs.first().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.remove(0);
        stripped += 1;
    }
    if stripped > 0 {
        roots.push(kf.zero());
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    let g = Polynomial::new(&kf, coeffs);
    let ints = primitive_integral_coeffs(&g)?;
    let c0 = ints.first().unwrap().clone();
    let cn = ints.last().unwrap().clone();
    debug_assert!(!c0.is_zero() && !cn.is_zero());

    let cap = config::candidate_cap();
    let (_, fac0) = factor(&c0)?;
    let (_, facn) = factor(&cn)?;
    let nums = monic_divisors(&base, &fac0, cap)?;
    let dens = monic_divisors(&base, &facn, cap)?;
    let q = base.order();
    let total = (q - 1)
        .saturating_mul(nums.len() as u64)
        .saturating_mul(dens.len() as u64);
    if total > cap {
        return Err(Error::CandidateCapExceeded { needed: total, cap });
    }

    // cheap necessary-condition filter: evaluate at a few sample points
    let samples: Vec<_> = (0..q.min(3)).map(|i| base.elem_from_index(i)).collect();
    let ints_at: Vec<Vec<_>> = samples
        .iter()
        .map(|tau| ints.iter().map(|c| c.eval(tau)).collect())
        .collect();

    let scalars: Vec<_> = (1..q).map(|i| base.elem_from_index(i)).collect();
    for den in &dens {
        for num in &nums {
            if !num.gcd(den)?.is_one() {
                continue; // not in lowest terms; the reduced form is tried separately
            }
            'scalar: for c in &scalars {
                let cand_num = num.scale(c);
                for (tau, ci) in samples.iter().zip(&ints_at) {
                    let dv = den.eval(tau);
                    if dv.is_zero() {
                        continue;
                    }
                    let rv = base.mul(&cand_num.eval(tau), &dv.inv()?);
                    let mut acc = base.zero_elem();
                    for coeff in ci.iter().rev() {
                        acc = base.add(&base.mul(&acc, &rv), coeff);
                    }
                    if !acc.is_zero() {
                        continue 'scalar;
                    }
                }
                let cand = RatFn::new(cand_num.clone(), den.clone())?;
                if g.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort_by(|a, b| ratfn_order_key(a).cmp(&ratfn_order_key(b)));
    roots.dedup();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;

    fn f5t() -> RatFnField {
        RatFnField(FiniteField::prime(5).unwrap())
    }

    #[test]
    fn roots_of_factored_cubic() {
        // f = x (x - 1) (x - t^2) over F_5(t)
        let kf = f5t();
        let x = Polynomial::gen(&kf);
        let one = Polynomial::constant(&kf, kf.one());
        let t2 = Polynomial::constant(&kf, kf.var().pow(2).unwrap());
        let f = x.mul(&x.sub(&one)).mul(&x.sub(&t2));
        let roots = rational_roots(&f).unwrap();
        let shown: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, vec!["0", "1", "t^2"]);
    }

    #[test]
    fn x_squared_minus_t_has_no_rational_root() {
        let kf = f5t();
        let x = Polynomial::gen(&kf);
        let f = x.mul(&x).sub(&Polynomial::constant(&kf, kf.var()));
        assert!(rational_roots(&f).unwrap().is_empty());
    }

    #[test]
    fn roots_with_denominators_are_found() {
        // (x - 1/t)(x - (t+1)/ (t-1)) * (t x - 2)
        let kf = f5t();
        let t = kf.var();
        let x = Polynomial::gen(&kf);
        let r1 = t.inv().unwrap();
        let r2 = t.add(&kf.one()).div(&t.sub(&kf.one())).unwrap();
        let r3 = kf.from_int(2).div(&t).unwrap();
        let f = x
            .sub(&Polynomial::constant(&kf, r1.clone()))
            .mul(&x.sub(&Polynomial::constant(&kf, r2.clone())))
            .mul(&x.sub(&Polynomial::constant(&kf, r3.clone())));
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        for r in [r1, r2, r3] {
            assert!(roots.contains(&r));
        }
    }

    #[test]
    fn agrees_with_bounded_brute_force() {
        // all rational functions of height <= 1 over F_3(t) as a brute oracle
        let kf = RatFnField(FiniteField::prime(3).unwrap());
        let base = kf.base().clone();
        let mut small: Vec<RatFn> = Vec::new();
        let polys: Vec<FPoly> = (0..9)
            .map(|i| {
                Polynomial::new(
                    &base,
                    vec![base.elem_from_index(i % 3), base.elem_from_index(i / 3)],
                )
            })
            .collect();
        for n in &polys {
            for d in &polys {
                if !d.is_zero() {
                    small.push(RatFn::new(n.clone(), d.clone()).unwrap());
                }
            }
        }
        small.sort_by(|a, b| ratfn_order_key(a).cmp(&ratfn_order_key(b)));
        small.dedup();

        // f = (x - t)(x - 2)(x - 1/(t+1))
        let x = Polynomial::gen(&kf);
        let f = x
            .sub(&Polynomial::constant(&kf, kf.var()))
            .mul(&x.sub(&Polynomial::constant(&kf, kf.from_int(2))))
            .mul(&x.sub(&Polynomial::constant(
                &kf,
                kf.one().div(&kf.var().add(&kf.one())).unwrap(),
            )));
        let expected: Vec<RatFn> = small.into_iter().filter(|r| f.eval(r).is_zero()).collect();
        let got = rational_roots(&f).unwrap();
        for e in &expected {
            assert!(got.contains(e));
        }
        assert_eq!(got.len(), 3);
    }
}
