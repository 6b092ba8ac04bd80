//! Naive point counting and l-torsion ranks over finite residue fields.

use super::point::Point;
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::ring::{Field, Ring};

/// #E(F_q) including the point at infinity, by an x-sweep with the
/// quadratic character of the completed square. Odd characteristic only.
pub fn count_points(c: &Curve<FiniteField>) -> Result<u64> {
    let k = c.field().clone();
    if k.p() == 2 {
        return Err(Error::UnsupportedCharacteristic { p: 2 });
    }
    let q = k.order();
    let [a1, a2, a3, a4, a6] = c.coefficients();
    let mut n: u64 = 1;
    for x in k.enumerate()? {
        // y^2 + (a1 x + a3) y = x^3 + a2 x^2 + a4 x + a6 has 1 + chi(D)
        // solutions in y, D = (a1 x + a3)^2 + 4 f(x)
        let a = k.add(&k.mul(a1, &x), a3);
        let x2 = k.mul(&x, &x);
        let f = k.add(
            &k.add(&k.mul(&x, &x2), &k.mul(a2, &x2)),
            &k.add(&k.mul(a4, &x), a6),
        );
        let d = k.add(&k.mul(&a, &a), &k.mul(&k.from_int(4), &f));
        let roots = 1 + k.chi(&d)? as i64;
        n += roots as u64;
    }
    // Hasse bound: |N - (q + 1)| <= 2 sqrt(q)
    let diff = (n as i64 - (q as i64 + 1)).abs() as u128;
    assert!(
        diff * diff <= 4 * q as u128,
        "point count violates the Hasse bound"
    );
    Ok(n)
}

/// All points of E(F_q), identity first; x-swept with a square-root table.
pub fn enumerate_points(c: &Curve<FiniteField>) -> Result<Vec<Point<FiniteField>>> {
    let k = c.field().clone();
    if k.p() == 2 {
        return Err(Error::UnsupportedCharacteristic { p: 2 });
    }
    let q = k.order();
    let bound = crate::config::enum_bound();
    if q > bound {
        return Err(Error::EnumBoundExceeded { needed: q, bound });
    }
    // sqrt table: index of z^2 -> z (first preimage wins)
    let mut sqrt = vec![None; q as usize];
    for z in k.enumerate()? {
        let idx = k.index_of(&k.mul(&z, &z)) as usize;
        if sqrt[idx].is_none() {
            sqrt[idx] = Some(z);
        }
    }
    let [a1, a2, a3, a4, a6] = c.coefficients();
    let half = k.inv(&k.from_int(2))?;
    let mut out = vec![Point::Identity];
    for x in k.enumerate()? {
        let a = k.add(&k.mul(a1, &x), a3);
        let x2 = k.mul(&x, &x);
        let f = k.add(
            &k.add(&k.mul(&x, &x2), &k.mul(a2, &x2)),
            &k.add(&k.mul(a4, &x), a6),
        );
        let d = k.add(&k.mul(&a, &a), &k.mul(&k.from_int(4), &f));
        let Some(r) = sqrt[k.index_of(&d) as usize].clone() else {
            continue;
        };
        // y = (-a +- r)/2
        let y1 = k.mul(&k.sub(&r, &a), &half);
        out.push(c.point(x.clone(), y1));
        if !r.is_zero() {
            let y2 = k.mul(&k.sub(&k.neg(&r), &a), &half);
            out.push(c.point(x, y2));
        }
    }
    Ok(out)
}

/// dim over F_l of E(F_q)[l], by counting points killed by l; the count is
/// 1, l or l^2.
pub fn l_torsion_rank(c: &Curve<FiniteField>, l: u64) -> Result<u8> {
    let k = c.field();
    if l == k.p() {
        return Err(Error::LEqualsCharacteristic { l });
    }
    let mut count = 0u64;
    for p in enumerate_points(c)? {
        if c.scalar_mul(l as i64, &p).is_identity() {
            count += 1;
        }
    }
    let rank = if count == 1 {
        0
    } else if count == l {
        1
    } else if count == l * l {
        2
    } else {
        unreachable!("E(F_q)[l] is an F_l-vector space of dimension at most 2")
    };
    // the Weil pairing forces mu_l into F_q when the rank is 2
    debug_assert!(rank < 2 || (k.order() - 1) % l == 0);
    Ok(rank)
}
