//! Division polynomials on the completed-square model via the b-invariant
//! recursion, plus the x-coordinate doubling map. Roots of psi_l are exactly
//! the x-coordinates of the nonzero l-torsion points.

use crate::config;
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::funcfield::Polynomial;
use crate::ring::Field;

/// psi_l for a prime l, as a polynomial in x.
#[derive(Clone, Debug)]
pub struct DivisionPoly<K: Field> {
    pub l: u64,
    pub psi: Polynomial<K>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// ps i_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6; its roots are the 2-torsion
/// x-coordinates.
pub fn two_torsion_cubic<K: Field>(c: &Curve<K>) -> Polynomial<K> {
    let k = c.field();
    let inv = c.invariants();
    Polynomial::new(
        k,
        vec![
            inv.b6.clone(),
            k.mul(&k.from_int(2), &inv.b4),
            inv.b2.clone(),
            k.from_int(4),
        ],
    )
}

/// Build g_1..g_n where psi_k = g_k for odd k and psi_k = psi_2 * g_k for
/// even k, with psi_2^2 substituted by the 2-torsion cubic.
fn g_table<K: Field>(c: &Curve<K>, n: u64) -> Vec<Polynomial<K>> {
    let k = c.field();
    let inv = c.invariants();
    let b = two_torsion_cubic(c); // psi_2^2
    let b_sq = b.mul(&b);
    let con = |e: &K::Elem| Polynomial::constant(k, e.clone());
    let num = |v: i64| Polynomial::constant(k, k.from_int(v));
    let x = Polynomial::gen(k);

    let mut g: Vec<Polynomial<K>> = Vec::with_capacity(n as usize + 1);
    g.push(Polynomial::zero(k)); // g_0
    g.push(Polynomial::one(k)); // g_1
    g.push(Polynomial::one(k)); // g_2 (psi_2 = psi_2 * 1)
    if n >= 3 {
        // psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
        let mut p = num(3).mul(&x.pow(4));
        p = p.add(&con(&inv.b2).mul(&x.pow(3)));
        p = p.add(&num(3).mul(&con(&inv.b4)).mul(&x.pow(2)));
        p = p.add(&num(3).mul(&con(&inv.b6)).mul(&x));
        p = p.add(&con(&inv.b8));
        g.push(p);
    }
    if n >= 4 {
        // psi_4 / psi_2 = 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2
        //                + (b2 b8 - b4 b6) x + (b4 b8 - b6^2)
        let mut p = num(2).mul(&x.pow(6));
        p = p.add(&con(&inv.b2).mul(&x.pow(5)));
        p = p.add(&num(5).mul(&con(&inv.b4)).mul(&x.pow(4)));
        p = p.add(&num(10).mul(&con(&inv.b6)).mul(&x.pow(3)));
        p = p.add(&num(10).mul(&con(&inv.b8)).mul(&x.pow(2)));
        let c1 = k.sub(&k.mul(&inv.b2, &inv.b8), &k.mul(&inv.b4, &inv.b6));
        p = p.add(&con(&c1).mul(&x));
        let c0 = k.sub(&k.mul(&inv.b4, &inv.b8), &k.mul(&inv.b6, &inv.b6));
        p = p.add(&con(&c0));
        g.push(p);
    }
    for m2 in 5..=n {
        let p = if m2 % 2 == 1 {
            let m = (m2 as usize - 1) / 2;
            let lhs = g[m + 2].mul(&g[m].pow(3));
            let rhs = g[m - 1].mul(&g[m + 1].pow(3));
            if m % 2 == 0 {
                b_sq.mul(&lhs).sub(&rhs)
            } else {
                lhs.sub(&b_sq.mul(&rhs))
            }
        } else {
            let m = m2 as usize / 2;
            let lhs = g[m + 2].mul(&g[m - 1].pow(2));
            let rhs = g[m - 2].mul(&g[m + 1].pow(2));
            g[m].mul(&lhs.sub(&rhs))
        };
        g.push(p);
    }
    g
}

/// Division polynomial for a prime l != p, l <= the configured bound.
/// For l = 2 this is the 2-torsion cubic; for odd l a polynomial of degree
/// (l^2 - 1)/2 with leading coefficient l.
pub fn division_poly<K: Field>(c: &Curve<K>, l: u64) -> Result<DivisionPoly<K>> {
    let k = c.field();
    let p = k.characteristic();
    if p <= 3 {
        return Err(Error::UnsupportedCharacteristic { p });
    }
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if l == p {
        return Err(Error::LEqualsCharacteristic { l });
    }
    if l > config::L_BOUND {
        return Err(Error::LBoundExceeded {
            l,
            bound: config::L_BOUND,
        });
    }
    if l == 2 {
        return Ok(DivisionPoly {
            l,
            psi: two_torsion_cubic(c),
        });
    }
    let g = g_table(c, l);
    let psi = g[l as usize].clone();
    debug_assert_eq!(psi.degree(), Some(((l * l - 1) / 2) as usize));
    Ok(DivisionPoly { l, psi })
}

/// Numerator and denominator of the x-coordinate doubling map:
/// x(2P) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6).
pub fn doubling_x_map<K: Field>(c: &Curve<K>) -> (Polynomial<K>, Polynomial<K>) {
    let k = c.field();
    let inv = c.invariants();
    let num = Polynomial::new(
        k,
        vec![
            k.neg(&inv.b8),
            k.mul(&k.from_int(-2), &inv.b6),
            k.neg(&inv.b4),
            k.zero(),
            k.one(),
        ],
    );
    (num, two_torsion_cubic(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{RatFn, RatFnField};
    use crate::gf::FiniteField;
    use crate::ring::Ring;

    fn f5t() -> RatFnField {
        RatFnField(FiniteField::prime(5).unwrap())
    }

    fn legendre5(k: &RatFnField) -> Curve<RatFnField> {
        let t2 = k.var().pow(2).unwrap();
        let a2 = k.neg(&k.one().add(&t2));
        Curve::new(k, [k.zero(), a2, k.zero(), t2, k.zero()]).unwrap()
    }

    #[test]
    fn two_torsion_cubic_of_legendre() {
        // 4 x (x - 1)(x - t^2)
        let k = f5t();
        let c = legendre5(&k);
        let psi = division_poly(&c, 2).unwrap().psi;
        let x = Polynomial::gen(&k);
        let expected = x
            .mul(&x.sub(&Polynomial::constant(&k, k.one())))
            .mul(&x.sub(&Polynomial::constant(&k, k.var().pow(2).unwrap())))
            .scale(&k.from_int(4));
        assert_eq!(psi, expected);
    }

    #[test]
    fn psi3_on_short_curve_matches_classical_formula() {
        // y^2 = x^3 + A x + B: psi_3 = 3x^4 + 6A x^2 + 12B x - A^2
        let k = f5t();
        let a = k.var();
        let b = k.from_int(2);
        let c = Curve::new(&k, [k.zero(), k.zero(), k.zero(), a.clone(), b.clone()]).unwrap();
        let psi = division_poly(&c, 3).unwrap().psi;
        let x = Polynomial::gen(&k);
        let con = |v: RatFn| Polynomial::constant(&k, v);
        let expected = con(k.from_int(3))
            .mul(&x.pow(4))
            .add(&con(k.from_int(6).mul(&a)).mul(&x.pow(2)))
            .add(&con(k.from_int(12).mul(&b)).mul(&x))
            .sub(&con(a.mul(&a)));
        assert_eq!(psi, expected);
    }

    #[test]
    fn psi5_has_degree_twelve_and_leading_five() {
        let k = f5t();
        // use F_7 base so l = 5 is prime to p
        let k7 = RatFnField(FiniteField::prime(7).unwrap());
        let t = k7.var();
        let c = Curve::new(&k7, [k7.zero(), k7.zero(), k7.zero(), t.clone(), k7.one()]).unwrap();
        let psi = division_poly(&c, 5).unwrap().psi;
        assert_eq!(psi.degree(), Some(12));
        assert_eq!(psi.leading().unwrap(), &k7.from_int(5));
        let _ = k;
    }

    #[test]
    fn division_poly_rejects_l_equal_p() {
        let k = f5t();
        let c = legendre5(&k);
        assert_eq!(
            division_poly(&c, 5).err(),
            Some(Error::LEqualsCharacteristic { l: 5 })
        );
        assert_eq!(
            division_poly(&c, 17).err(),
            Some(Error::LBoundExceeded {
                l: 17,
                bound: config::L_BOUND
            })
        );
    }

    #[test]
    fn doubling_map_on_constant_curve() {
        // y^2 = x^3 + x over F_13: x(2P) = (x^2 - 1)^2 / (4x(x^2+1))
        let f13 = FiniteField::prime(13).unwrap();
        let c = Curve::new(
            &f13,
            [
                f13.zero_elem(),
                f13.zero_elem(),
                f13.zero_elem(),
                f13.one_elem(),
                f13.zero_elem(),
            ],
        )
        .unwrap();
        let (num, den) = doubling_x_map(&c);
        // check against actual doubling on sample points
        for x in f13.enumerate().unwrap() {
            for y in f13.enumerate().unwrap() {
                if !c.contains(&x, &y) {
                    continue;
                }
                let p = c.point(x.clone(), y.clone());
                let d = c.scalar_mul(2, &p);
                let dv = den.eval(&x);
                if dv.is_zero() {
                    assert!(d.is_identity());
                    continue;
                }
                let expected = f13.mul(&num.eval(&x), &dv.inv().unwrap());
                match d {
                    super::super::point::Point::Affine(x2, _) => assert_eq!(x2, expected),
                    _ => panic!("unexpected identity"),
                }
            }
        }
    }

    #[test]
    fn psi_roots_match_brute_force_torsion_on_constant_curves() {
        // constant curves over small fields; compare psi_l roots in an
        // extension containing E[l] with the brute-force torsion x-set
        use crate::ellgroup::count::enumerate_points;
        let cases: [(u64, [i64; 5], u64); 6] = [
            (5, [0, 0, 0, 0, 1], 2),
            (5, [0, 0, 0, 0, 1], 3),
            (7, [0, 0, 0, 0, 1], 3),
            (11, [0, 0, 0, 0, 1], 3),
            (13, [0, 0, 0, 0, 1], 2),
            (7, [0, 0, 0, 1, 1], 5),
        ];
        for (p, a, l) in cases {
            // find the smallest extension containing all of E[l]
            let mut chosen = None;
            for deg in 1..=4usize {
                if p.pow(deg as u32) > 2500 {
                    break;
                }
                let ext = FiniteField::extension(p, deg).unwrap();
                let ce = Curve::new(
                    &ext,
                    [
                        ext.from_i64(a[0]),
                        ext.from_i64(a[1]),
                        ext.from_i64(a[2]),
                        ext.from_i64(a[3]),
                        ext.from_i64(a[4]),
                    ],
                )
                .unwrap();
                let mut xs = std::collections::BTreeSet::new();
                let mut count = 1u64;
                for pt in enumerate_points(&ce).unwrap() {
                    if pt.is_identity() {
                        continue;
                    }
                    if ce.scalar_mul(l as i64, &pt).is_identity() {
                        let (x, _) = pt.xy().unwrap();
                        xs.insert(ext.index_of(x));
                        count += 1;
                    }
                }
                if count == l * l {
                    chosen = Some((ext, ce, xs));
                    break;
                }
            }
            let (ext, ce, xs) = chosen.expect("full l-torsion must appear in a small extension");
            let psi = division_poly(&ce, l).unwrap().psi;
            let mut psi_roots = std::collections::BTreeSet::new();
            for x in ext.enumerate().unwrap() {
                if psi.eval(&x).is_zero() {
                    psi_roots.insert(ext.index_of(&x));
                }
            }
            assert_eq!(psi_roots, xs, "p={p} a={a:?} l={l}");
        }
    }
}
