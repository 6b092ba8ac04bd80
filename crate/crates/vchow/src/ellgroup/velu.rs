//! Quotients by a finite cyclic subgroup given through its kernel
//! polynomial: codomain coefficients from the power sums of the kernel
//! roots, with the kernel checked for divisibility into psi_l and for
//! closure under the doubling map.

use super::divpoly::{division_poly, doubling_x_map};
use crate::curve::{Curve, GlobalCurve};
use crate::error::{Error, Result};
use crate::funcfield::{Polynomial, XPoly};
use crate::ring::Field;

/// A verified degree-l isogeny, recorded by its kernel polynomial and
/// codomain.
#[derive(Clone, Debug)]
pub struct IsogenyData {
    pub l: u64,
    pub kernel_poly: XPoly,
    pub codomain: GlobalCurve,
}

/// Codomain of the quotient by the subgroup cut out by the monic kernel
/// polynomial h: for odd l, h has degree (l-1)/2; for l = 2 it is linear.
pub fn velu_codomain<K: Field>(c: &Curve<K>, kernel: &Polynomial<K>, l: u64) -> Result<Curve<K>> {
    if l < 2 {
        return Err(Error::InvalidKernel {
            reason: "isogeny degree must be a prime".into(),
        });
    }
    let k = c.field();
    let inv = c.invariants();
    let n = |v: i64| k.from_int(v);
    let (v, w) = if l == 2 {
        if kernel.degree() != Some(1) {
            return Err(Error::InvalidKernel {
                reason: "2-isogeny kernel must be linear".into(),
            });
        }
        let x0 = k.neg(&kernel.coeff(0));
        let half = k.inv(&n(2))?;
        let y0 = k.neg(&k.mul(&half, &k.add(&k.mul(c.a1(), &x0), c.a3())));
        // v = 3 x0^2 + 2 a2 x0 + a4 - a1 y0, w = x0 v (the gradient terms
        // vanish at a 2-torsion point)
        let mut v = k.mul(&n(3), &k.mul(&x0, &x0));
        v = k.add(&v, &k.mul(&n(2), &k.mul(c.a2(), &x0)));
        v = k.add(&v, c.a4());
        v = k.sub(&v, &k.mul(c.a1(), &y0));
        let w = k.mul(&x0, &v);
        (v, w)
    } else {
        let m = ((l - 1) / 2) as usize;
        if kernel.degree() != Some(m) {
            return Err(Error::InvalidKernel {
                reason: format!("kernel degree must be (l-1)/2 = {m}"),
            });
        }
        // power sums of the kernel roots from the symmetric functions
        let s1 = k.neg(&kernel.coeff(m - 1));
        let s2 = if m >= 2 {
            kernel.coeff(m - 2)
        } else {
            k.zero()
        };
        let s3 = if m >= 3 {
            k.neg(&kernel.coeff(m - 3))
        } else {
            k.zero()
        };
        let p2 = k.sub(&k.mul(&s1, &s1), &k.mul(&n(2), &s2)); // sum of squares
        let p3 = {
            let c3 = k.mul(&s1, &k.mul(&s1, &s1));
            let mid = k.mul(&n(3), &k.mul(&s1, &s2));
            k.add(&k.sub(&c3, &mid), &k.mul(&n(3), &s3))
        };
        // v = sum(6 x^2 + b2 x + b4), w = sum(10 x^3 + 2 b2 x^2 + 3 b4 x + b6)
        let mut v = k.mul(&n(6), &p2);
        v = k.add(&v, &k.mul(&inv.b2, &s1));
        v = k.add(&v, &k.mul(&n(m as i64), &inv.b4));
        let mut w = k.mul(&n(10), &p3);
        w = k.add(&w, &k.mul(&n(2), &k.mul(&inv.b2, &p2)));
        w = k.add(&w, &k.mul(&n(3), &k.mul(&inv.b4, &s1)));
        w = k.add(&w, &k.mul(&n(m as i64), &inv.b6));
        (v, w)
    };
    let a4 = k.sub(c.a4(), &k.mul(&n(5), &v));
    let a6 = {
        let mut e = k.sub(c.a6(), &k.mul(&inv.b2, &v));
        e = k.sub(&e, &k.mul(&n(7), &w));
        e
    };
    Curve::new(k, [c.a1().clone(), c.a2().clone(), c.a3().clone(), a4, a6]).map_err(|_| {
        Error::InvalidKernel {
            reason: "quotient curve is singular".into(),
        }
    })
}

/// Check that a monic candidate really is the kernel polynomial of a cyclic
/// subgroup of order l: correct degree, divides psi_l, and (for odd l) its
/// root set is closed under the x-coordinate doubling map.
pub fn verify_kernel<K: Field>(c: &Curve<K>, l: u64, kernel: &Polynomial<K>) -> Result<()> {
    let k = c.field();
    if !kernel.is_monic() {
        return Err(Error::InvalidKernel {
            reason: "kernel polynomial must be monic".into(),
        });
    }
    let expected = if l == 2 { 1 } else { ((l - 1) / 2) as usize };
    if kernel.degree() != Some(expected) {
        return Err(Error::InvalidKernel {
            reason: format!("kernel degree {} != {expected}", kernel.deg_or_zero()),
        });
    }
    let psi = division_poly(c, l)?.psi;
    if !kernel.divides(&psi)? {
        return Err(Error::InvalidKernel {
            reason: "kernel polynomial does not divide the division polynomial".into(),
        });
    }
    if l > 2 {
        // closure under doubling: kernel | den^m * kernel(num/den)
        let (num, den) = doubling_x_map(c);
        let m = expected;
        let mut comp = Polynomial::zero(k);
        for (i, coeff) in kernel.coeffs().iter().enumerate() {
            let term = num.pow(i as u64).mul(&den.pow((m - i) as u64));
            comp = comp.add(&term.scale(coeff));
        }
        if !kernel.divides(&comp)? {
            return Err(Error::InvalidKernel {
                reason: "root set is not stable under doubling".into(),
            });
        }
    }
    Ok(())
}

/// Verify a kernel and build the full isogeny record for a curve over F_q(t).
pub fn isogeny_from_kernel(c: &GlobalCurve, l: u64, kernel: &XPoly) -> Result<IsogenyData> {
    verify_kernel(c, l, kernel)?;
    let codomain = velu_codomain(c, kernel, l)?;
    Ok(IsogenyData {
        l,
        kernel_poly: kernel.clone(),
        codomain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellgroup::count::{count_points, enumerate_points};
    use crate::ellgroup::point::Point;
    use crate::gf::FiniteField;
    use crate::ring::Ring;

    fn curve(field: &FiniteField, a: [i64; 5]) -> Curve<FiniteField> {
        Curve::new(
            field,
            [
                field.from_i64(a[0]),
                field.from_i64(a[1]),
                field.from_i64(a[2]),
                field.from_i64(a[3]),
                field.from_i64(a[4]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_isogeny_of_y2_x3_plus_x() {
        // quotient by <(0,0)> is y^2 = x^3 - 4x
        let f13 = FiniteField::prime(13).unwrap();
        let c = curve(&f13, [0, 0, 0, 1, 0]);
        let kernel = Polynomial::gen(&f13); // x - 0
        verify_kernel(&c, 2, &kernel).unwrap();
        let cod = velu_codomain(&c, &kernel, 2).unwrap();
        assert_eq!(cod.a4(), &f13.from_i64(-4));
        assert!(cod.a6().is_zero());
        assert_eq!(count_points(&c).unwrap(), count_points(&cod).unwrap());
    }

    /// Classical point-sum form of the quotient formulas, as an independent
    /// oracle: sums of g^x, g^y over a set of representatives of the kernel.
    fn velu_point_sums(
        c: &Curve<FiniteField>,
        kernel_pts: &[Point<FiniteField>],
    ) -> Curve<FiniteField> {
        let k = c.field().clone();
        let n = |v: i64| k.from_i64(v);
        let inv = c.invariants();
        let mut seen_x: Vec<crate::gf::FieldElem> = Vec::new();
        let mut v = k.zero_elem();
        let mut w = k.zero_elem();
        for pt in kernel_pts {
            let Point::Affine(x, y) = pt else { continue };
            if seen_x.contains(x) {
                continue; // one representative of {Q, -Q}
            }
            seen_x.push(x.clone());
            let gx = {
                let mut g = k.mul(&n(3), &k.mul(x, x));
                g = k.add(&g, &k.mul(&n(2), &k.mul(c.a2(), x)));
                g = k.add(&g, c.a4());
                k.sub(&g, &k.mul(c.a1(), y))
            };
            let gy = {
                let mut g = k.mul(&n(-2), y);
                g = k.sub(&g, &k.mul(c.a1(), x));
                k.sub(&g, c.a3())
            };
            let is_two_torsion = c.scalar_mul(2, pt).is_identity();
            let vq = if is_two_torsion {
                gx.clone()
            } else {
                k.sub(&k.mul(&n(2), &gx), &k.mul(c.a1(), &gy))
            };
            let uq = k.mul(&gy, &gy);
            v = k.add(&v, &vq);
            w = k.add(&w, &k.add(&uq, &k.mul(x, &vq)));
        }
        let a4 = k.sub(c.a4(), &k.mul(&n(5), &v));
        let a6 = {
            let mut e = k.sub(c.a6(), &k.mul(&inv.b2, &v));
            e = k.sub(&e, &k.mul(&n(7), &w));
            e
        };
        Curve::new(&k, [c.a1().clone(), c.a2().clone(), c.a3().clone(), a4, a6]).unwrap()
    }

    #[test]
    fn kohel_codomain_matches_point_sum_oracle_for_odd_kernels() {
        // find curves over small fields with a rational point of odd prime
        // order l, build the kernel polynomial from its multiples, and
        // compare both quotient constructions
        let mut checked = 0;
        for (p, l) in [(11u64, 3u64), (11, 5), (13, 5), (13, 7), (31, 5)] {
            let fp = FiniteField::prime(p).unwrap();
            'search: for a4 in 0..p {
                for a6 in 1..p {
                    let Ok(c) = Curve::new(
                        &fp,
                        [
                            fp.zero_elem(),
                            fp.zero_elem(),
                            fp.zero_elem(),
                            fp.from_i64(a4 as i64),
                            fp.from_i64(a6 as i64),
                        ],
                    ) else {
                        continue;
                    };
                    let pts = enumerate_points(&c).unwrap();
                    let gen = pts
                        .iter()
                        .find(|pt| !pt.is_identity() && c.scalar_mul(l as i64, pt).is_identity());
                    let Some(gen) = gen else { continue };
                    // kernel polynomial from x-coordinates of multiples
                    let mut kernel = Polynomial::one(&fp);
                    let mut kernel_pts = Vec::new();
                    for j in 1..=(l - 1) / 2 {
                        let pj = c.scalar_mul(j as i64, gen);
                        let Point::Affine(x, _) = &pj else { panic!() };
                        kernel = kernel.mul(&Polynomial::new(&fp, vec![fp.neg(x), fp.one_elem()]));
                        kernel_pts.push(pj.clone());
                        kernel_pts.push(c.neg_point(&pj));
                    }
                    verify_kernel(&c, l, &kernel).unwrap();
                    let cod = velu_codomain(&c, &kernel, l).unwrap();
                    let oracle = velu_point_sums(&c, &kernel_pts);
                    assert_eq!(cod, oracle, "p={p} l={l} a4={a4} a6={a6}");
                    assert_eq!(
                        count_points(&c).unwrap(),
                        count_points(&cod).unwrap(),
                        "isogenous curves have equal counts"
                    );
                    checked += 1;
                    break 'search;
                }
            }
        }
        assert!(checked >= 4, "expected to exercise several (p, l) pairs");
    }

    #[test]
    fn invalid_kernels_are_rejected() {
        let f13 = FiniteField::prime(13).unwrap();
        let c = curve(&f13, [0, 0, 0, 1, 0]);
        // x - 1 is not a root of the 2-division cubic
        let bad = Polynomial::new(&f13, vec![f13.from_i64(-1), f13.one_elem()]);
        assert!(matches!(
            verify_kernel(&c, 2, &bad),
            Err(Error::InvalidKernel { .. })
        ));
        // non-monic
        let nonmonic = Polynomial::new(&f13, vec![f13.zero_elem(), f13.from_i64(2)]);
        assert!(matches!(
            verify_kernel(&c, 2, &nonmonic),
            Err(Error::InvalidKernel { .. })
        ));
    }

    #[test]
    fn mixed_subgroup_factor_fails_stability() {
        // over F_31 with full 5-torsion rational, a quadratic factor of
        // psi_5 mixing two subgroups is not doubling-stable
        let f31 = FiniteField::prime(31).unwrap();
        let mut found = false;
        'outer: for a4 in 0..31 {
            for a6 in 1..31 {
                let Ok(c) = Curve::new(
                    &f31,
                    [
                        f31.zero_elem(),
                        f31.zero_elem(),
                        f31.zero_elem(),
                        f31.from_i64(a4),
                        f31.from_i64(a6),
                    ],
                ) else {
                    continue;
                };
                let pts = enumerate_points(&c).unwrap();
                let five: Vec<_> = pts
                    .iter()
                    .filter(|pt| !pt.is_identity() && c.scalar_mul(5, pt).is_identity())
                    .collect();
                if five.len() != 24 {
                    continue;
                }
                // two independent subgroups
                let p1 = five[0].clone();
                let p2 = five
                    .iter()
                    .find(|q| {
                        let mut indep = true;
                        for j in 1..5 {
                            if ***q == c.scalar_mul(j, &p1) {
                                indep = false;
                            }
                        }
                        indep
                    })
                    .cloned()
                    .cloned()
                    .unwrap();
                let xcoord = |pt: &Point<FiniteField>| match pt {
                    Point::Affine(x, _) => x.clone(),
                    _ => panic!(),
                };
                let lin = |x: &crate::gf::FieldElem| {
                    Polynomial::new(&f31, vec![f31.neg(x), f31.one_elem()])
                };
                // valid kernel: {x(P1), x(2 P1)}
                let good = lin(&xcoord(&p1)).mul(&lin(&xcoord(&c.scalar_mul(2, &p1))));
                verify_kernel(&c, 5, &good).unwrap();
                // mixed: {x(P1), x(P2)} divides psi_5 but is not stable
                let mixed = lin(&xcoord(&p1)).mul(&lin(&xcoord(&p2)));
                assert!(matches!(
                    verify_kernel(&c, 5, &mixed),
                    Err(Error::InvalidKernel { .. })
                ));
                found = true;
                break 'outer;
            }
        }
        assert!(
            found,
            "expected a curve over F_31 with full rational 5-torsion"
        );
    }
}
