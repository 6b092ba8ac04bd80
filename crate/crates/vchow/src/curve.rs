//! Weierstrass equations over a coefficient field: standard invariants,
//! changes of variables, minimal models at places of F_q(t), and the
//! enumeration of bad places.

use crate::error::{Error, Result};
use crate::funcfield::{factor, Place, PlaceKind, Polynomial, RatFn, RatFnField};
use crate::gf::FiniteField;
use crate::ring::{Field, Ring};
use std::fmt;

/// A long Weierstrass equation y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// with nonzero discriminant.
#[derive(Clone, PartialEq)]
pub struct Curve<K: Field> {
    field: K,
    a: [K::Elem; 5],
}

/// The b-, c-, discriminant and j-invariants of a curve.
#[derive(Clone, Debug)]
pub struct Invariants<K: Field> {
    pub b2: K::Elem,
    pub b4: K::Elem,
    pub b6: K::Elem,
    pub b8: K::Elem,
    pub c4: K::Elem,
    pub c6: K::Elem,
    pub disc: K::Elem,
    pub j: K::Elem,
}

/// The standard change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
#[derive(Clone, Debug, PartialEq)]
pub struct Transform<K: Field> {
    pub u: K::Elem,
    pub r: K::Elem,
    pub s: K::Elem,
    pub t: K::Elem,
}

impl<K: Field> Curve<K> {
    pub fn new(field: &K, a: [K::Elem; 5]) -> Result<Self> {
        let c = Curve {
            field: field.clone(),
            a,
        };
        if field.is_zero(&c.disc()) {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn a1(&self) -> &K::Elem {
        &self.a[0]
    }
    pub fn a2(&self) -> &K::Elem {
        &self.a[1]
    }
    pub fn a3(&self) -> &K::Elem {
        &self.a[2]
    }
    pub fn a4(&self) -> &K::Elem {
        &self.a[3]
    }
    pub fn a6(&self) -> &K::Elem {
        &self.a[4]
    }
    pub fn coefficients(&self) -> &[K::Elem; 5] {
        &self.a
    }

    /// b2, b4, b6, b8.
    fn b_invariants(&self) -> (K::Elem, K::Elem, K::Elem, K::Elem) {
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let n = |v: i64| k.from_int(v);
        let b2 = k.add(&k.mul(a1, a1), &k.mul(&n(4), a2));
        let b4 = k.add(&k.mul(&n(2), a4), &k.mul(a1, a3));
        let b6 = k.add(&k.mul(a3, a3), &k.mul(&n(4), a6));
        // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
        let mut b8 = k.mul(&k.mul(a1, a1), a6);
        b8 = k.add(&b8, &k.mul(&k.mul(&n(4), a2), a6));
        b8 = k.sub(&b8, &k.mul(&k.mul(a1, a3), a4));
        b8 = k.add(&b8, &k.mul(a2, &k.mul(a3, a3)));
        b8 = k.sub(&b8, &k.mul(a4, a4));
        (b2, b4, b6, b8)
    }

    fn disc(&self) -> K::Elem {
        let k = &self.field;
        let (b2, b4, b6, b8) = self.b_invariants();
        let n = |v: i64| k.from_int(v);
        // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
        let mut d = k.neg(&k.mul(&k.mul(&b2, &b2), &b8));
        d = k.sub(&d, &k.mul(&n(8), &k.mul(&b4, &k.mul(&b4, &b4))));
        d = k.sub(&d, &k.mul(&n(27), &k.mul(&b6, &b6)));
        d = k.add(&d, &k.mul(&n(9), &k.mul(&b2, &k.mul(&b4, &b6))));
        d
    }

    /// Standard invariants; the defining identities 4 b8 = b2 b6 - b4^2 and
    /// 1728 disc = c4^3 - c6^2 hold exactly.
    pub fn invariants(&self) -> Invariants<K> {
        let k = &self.field;
        let (b2, b4, b6, b8) = self.b_invariants();
        let n = |v: i64| k.from_int(v);
        let c4 = k.sub(&k.mul(&b2, &b2), &k.mul(&n(24), &b4));
        // c6 = -b2^3 + 36 b2 b4 - 216 b6
        let mut c6 = k.neg(&k.mul(&b2, &k.mul(&b2, &b2)));
        c6 = k.add(&c6, &k.mul(&n(36), &k.mul(&b2, &b4)));
        c6 = k.sub(&c6, &k.mul(&n(216), &b6));
        let disc = self.disc();
        let j = k
            .div(&k.mul(&c4, &k.mul(&c4, &c4)), &disc)
            .expect("nonzero discriminant");
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        }
    }

    /// Whether (x, y) satisfies the Weierstrass equation.
    pub fn contains(&self, x: &K::Elem, y: &K::Elem) -> bool {
        self.field.is_zero(&self.equation_value(x, y))
    }

    pub fn equation_value(&self, x: &K::Elem, y: &K::Elem) -> K::Elem {
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = k.add(
            &k.mul(y, y),
            &k.add(&k.mul(a1, &k.mul(x, y)), &k.mul(a3, y)),
        );
        let x2 = k.mul(x, x);
        let rhs = k.add(
            &k.add(&k.mul(x, &x2), &k.mul(a2, &x2)),
            &k.add(&k.mul(a4, x), a6),
        );
        k.sub(&lhs, &rhs)
    }

    /// Apply a change of variables; the new curve has
    /// disc' = u^-12 disc, c4' = u^-4 c4, c6' = u^-6 c6 and the same j.
    pub fn transformed(&self, tr: &Transform<K>) -> Result<Curve<K>> {
        let k = &self.field;
        if k.is_zero(&tr.u) {
            return Err(Error::DivisionByZero);
        }
        let [a1, a2, a3, a4, a6] = &self.a;
        let (u, r, s, t) = (&tr.u, &tr.r, &tr.s, &tr.t);
        let n = |v: i64| k.from_int(v);
        let uinv = k.inv(u)?;
        let ui = |e: u64| k.pow(&uinv, e);

        let na1 = k.mul(&k.add(a1, &k.mul(&n(2), s)), &ui(1));
        let na2 = {
            let mut v = k.sub(a2, &k.mul(s, a1));
            v = k.add(&v, &k.mul(&n(3), r));
            v = k.sub(&v, &k.mul(s, s));
            k.mul(&v, &ui(2))
        };
        let na3 = {
            let mut v = k.add(a3, &k.mul(r, a1));
            v = k.add(&v, &k.mul(&n(2), t));
            k.mul(&v, &ui(3))
        };
        let na4 = {
            let mut v = k.sub(a4, &k.mul(s, a3));
            v = k.add(&v, &k.mul(&n(2), &k.mul(r, a2)));
            v = k.sub(&v, &k.mul(&k.add(t, &k.mul(r, s)), a1));
            v = k.add(&v, &k.mul(&n(3), &k.mul(r, r)));
            v = k.sub(&v, &k.mul(&n(2), &k.mul(s, t)));
            k.mul(&v, &ui(4))
        };
        let na6 = {
            let mut v = k.add(a6, &k.mul(r, a4));
            v = k.add(&v, &k.mul(&k.mul(r, r), a2));
            v = k.add(&v, &k.mul(r, &k.mul(r, r)));
            v = k.sub(&v, &k.mul(t, a3));
            v = k.sub(&v, &k.mul(t, t));
            v = k.sub(&v, &k.mul(r, &k.mul(t, a1)));
            k.mul(&v, &ui(6))
        };
        Curve::new(k, [na1, na2, na3, na4, na6])
    }

    /// Kill a1 and a3 (possible whenever the characteristic is not 2; the
    /// toolkit restricts to p > 3 throughout).
    pub fn completed_square(&self) -> Result<(Curve<K>, Transform<K>)> {
        let k = &self.field;
        let p = k.characteristic();
        if p <= 3 {
            return Err(Error::UnsupportedCharacteristic { p });
        }
        let half = k.inv(&k.from_int(2))?;
        let tr = Transform {
            u: k.one(),
            r: k.zero(),
            s: k.neg(&k.mul(&half, self.a1())),
            t: k.neg(&k.mul(&half, self.a3())),
        };
        let c = self.transformed(&tr)?;
        debug_assert!(k.is_zero(c.a1()) && k.is_zero(c.a3()));
        Ok((c, tr))
    }

    /// Short form y^2 = x^3 + a4 x + a6 (kills a1, a2, a3; needs p > 3).
    pub fn short_form(&self) -> Result<(Curve<K>, Transform<K>)> {
        let k = &self.field;
        let (sq, tr1) = self.completed_square()?;
        let third = k.inv(&k.from_int(3))?;
        let tr2 = Transform {
            u: k.one(),
            r: k.neg(&k.mul(&third, sq.a2())),
            s: k.zero(),
            t: k.zero(),
        };
        let c = sq.transformed(&tr2)?;
        debug_assert!(k.is_zero(c.a1()) && k.is_zero(c.a2()) && k.is_zero(c.a3()));
        Ok((c, tr1.then(&tr2, k)))
    }
}

impl<K: Field> Transform<K> {
    pub fn identity(k: &K) -> Self {
        Transform {
            u: k.one(),
            r: k.zero(),
            s: k.zero(),
            t: k.zero(),
        }
    }

    pub fn scaling(k: &K, u: K::Elem) -> Self {
        Transform {
            u,
            r: k.zero(),
            s: k.zero(),
            t: k.zero(),
        }
    }

    pub fn is_identity(&self, k: &K) -> bool {
        k.is_one(&self.u) && k.is_zero(&self.r) && k.is_zero(&self.s) && k.is_zero(&self.t)
    }

    /// The transform equivalent to applying `self` first, then `next`.
    pub fn then(&self, next: &Self, k: &K) -> Self {
        let u = k.mul(&self.u, &next.u);
        let u1sq = k.mul(&self.u, &self.u);
        let r = k.add(&k.mul(&u1sq, &next.r), &self.r);
        let s = k.add(&k.mul(&self.u, &next.s), &self.s);
        let t = {
            let cube = k.mul(&u1sq, &self.u);
            let mut v = k.mul(&cube, &next.t);
            v = k.add(&v, &k.mul(&self.s, &k.mul(&u1sq, &next.r)));
            k.add(&v, &self.t)
        };
        Transform { u, r, s, t }
    }

    /// Push a point of the source curve to the target curve:
    /// x' = (x - r)/u^2, y' = (y - s(x - r) - t)/u^3.
    pub fn map_xy(&self, k: &K, x: &K::Elem, y: &K::Elem) -> Result<(K::Elem, K::Elem)> {
        let uinv = k.inv(&self.u)?;
        let u2 = k.mul(&uinv, &uinv);
        let u3 = k.mul(&u2, &uinv);
        let dx = k.sub(x, &self.r);
        let nx = k.mul(&dx, &u2);
        let mut dy = k.sub(y, &k.mul(&self.s, &dx));
        dy = k.sub(&dy, &self.t);
        Ok((nx, k.mul(&dy, &u3)))
    }

    /// Pull a point of the target curve back to the source curve.
    pub fn unmap_xy(&self, k: &K, x: &K::Elem, y: &K::Elem) -> (K::Elem, K::Elem) {
        let u2 = k.mul(&self.u, &self.u);
        let u3 = k.mul(&u2, &self.u);
        let nx = k.add(&k.mul(&u2, x), &self.r);
        let ny = k.add(
            &k.add(&k.mul(&u3, y), &k.mul(&self.s, &k.mul(&u2, x))),
            &self.t,
        );
        (nx, ny)
    }
}

/// A curve over the rational function field.
pub type GlobalCurve = Curve<RatFnField>;
/// A curve over a finite field (a reduction or a specialization).
pub type FiniteCurve = Curve<FiniteField>;

/// A v-minimal integral model together with the valuations that drive the
/// reduction-type classification. At infinity the model is written in the
/// local coordinate s = 1/t and all valuations refer to the place (s).
#[derive(Clone)]
pub struct LocalModel {
    pub place: Place,
    pub model: GlobalCurve,
    pub transform: Transform<RatFnField>,
    pub vdisc: i64,
    /// None when c4 = 0 identically.
    pub vc4: Option<i64>,
    /// v(j); None when j = 0.
    pub vj: Option<i64>,
}

impl LocalModel {
    /// Variable name of the coordinate the model is written in.
    pub fn local_var(&self) -> &'static str {
        if self.place.is_infinity() {
            "s"
        } else {
            "t"
        }
    }

    /// The finite place the model is measured at: the place itself, or (s)
    /// after the substitution t = 1/s.
    pub fn measuring_place(&self) -> Result<Place> {
        match self.place.kind() {
            PlaceKind::Finite(_) => Ok(self.place.clone()),
            PlaceKind::Infinity => Place::finite(Polynomial::gen(self.place.base())),
        }
    }
}

/// Relabel t -> 1/s coefficient-wise; places at infinity become the place
/// (s) of the substituted curve.
pub fn substitute_inverse_t(c: &GlobalCurve) -> GlobalCurve {
    let k = c.field().clone();
    let a = c.coefficients();
    let map = |x: &RatFn| x.invert_variable();
    Curve::new(
        &k,
        [map(&a[0]), map(&a[1]), map(&a[2]), map(&a[3]), map(&a[4])],
    )
    .expect("substitution preserves nonsingularity")
}

fn ceil_div_pos(num: i64, den: i64) -> i64 {
    debug_assert!(num >= 0 && den > 0);
    (num + den - 1) / den
}

/// Minimal model at a finite place for residue characteristic > 3, on the
/// short form: clear denominators with u = pi^-k, then reduce by u = pi
/// while v(disc) >= 12 and v(c4) >= 4.
fn minimal_model_finite(c: &GlobalCurve, place: &Place) -> Result<LocalModel> {
    let k = c.field().clone();
    let p = k.characteristic();
    if p <= 3 {
        return Err(Error::UnsupportedCharacteristic { p });
    }
    let pi = place
        .uniformizer()
        .ok_or_else(|| Error::InvalidPlace("expected a finite place".into()))?;
    let pi_rf = RatFn::from_poly(pi.clone());

    let (mut model, mut tr) = c.short_form()?;
    // clearing exponent: v(a4) + 4k >= 0 and v(a6) + 6k >= 0
    let mut need = 0i64;
    for (coeff, w) in [(model.a4(), 4i64), (model.a6(), 6i64)] {
        if !k.is_zero(coeff) {
            let v = place.valuation(coeff)?;
            if v < 0 {
                need = need.max(ceil_div_pos(-v, w));
            }
        }
    }
    if need > 0 {
        let u = pi_rf.pow(-need)?;
        let step = Transform::scaling(&k, u);
        model = model.transformed(&step)?;
        tr = tr.then(&step, &k);
    }
    // reduce while the p > 3 minimality criterion fails
    loop {
        let reducible = {
            let v4 = if k.is_zero(model.a4()) {
                None
            } else {
                Some(place.valuation(model.a4())?)
            };
            let v6 = if k.is_zero(model.a6()) {
                None
            } else {
                Some(place.valuation(model.a6())?)
            };
            v4.map(|v| v >= 4).unwrap_or(true) && v6.map(|v| v >= 6).unwrap_or(true)
        };
        if !reducible {
            break;
        }
        let step = Transform::scaling(&k, pi_rf.clone());
        model = model.transformed(&step)?;
        tr = tr.then(&step, &k);
    }
    let inv = model.invariants();
    let vdisc = place.valuation(&inv.disc)?;
    debug_assert!(vdisc >= 0);
    let vc4 = if k.is_zero(&inv.c4) {
        None
    } else {
        Some(place.valuation(&inv.c4)?)
    };
    let vj = if k.is_zero(&inv.j) {
        None
    } else {
        Some(place.valuation(&inv.j)?)
    };
    if let (Some(vc4), Some(vj)) = (vc4, vj) {
        debug_assert_eq!(vj, 3 * vc4 - vdisc);
    }
    Ok(LocalModel {
        place: place.clone(),
        model,
        transform: tr,
        vdisc,
        vc4,
        vj,
    })
}

/// Minimal model of c at any place. At infinity the curve is rewritten in
/// s = 1/t and minimized at the place (s).
pub fn minimal_model_at(c: &GlobalCurve, place: &Place) -> Result<LocalModel> {
    match place.kind() {
        PlaceKind::Finite(_) => minimal_model_finite(c, place),
        PlaceKind::Infinity => {
            let cs = substitute_inverse_t(c);
            let s_place = Place::finite(Polynomial::gen(place.base()))?;
            let lm = minimal_model_finite(&cs, &s_place)?;
            Ok(LocalModel {
                place: place.clone(),
                ..lm
            })
        }
    }
}

/// All places with positive minimal discriminant valuation, sorted; the
/// place at infinity is always examined and listed last when bad.
pub fn bad_places(c: &GlobalCurve) -> Result<Vec<Place>> {
    let inv = c.invariants();
    let base = c.field().base().clone();
    let mut candidate_polys: Vec<crate::funcfield::FPoly> = Vec::new();
    let mut push_factors = |f: &crate::funcfield::FPoly| -> Result<()> {
        if f.is_constant() {
            return Ok(());
        }
        for (pi, _) in factor(f)?.1 {
            if !candidate_polys.contains(&pi) {
                candidate_polys.push(pi);
            }
        }
        Ok(())
    };
    push_factors(inv.disc.num())?;
    push_factors(inv.disc.den())?;
    for a in c.coefficients() {
        push_factors(a.den())?;
    }
    let _ = base;
    let mut out = Vec::new();
    for pi in candidate_polys {
        let place = Place::finite(pi)?;
        if minimal_model_finite(c, &place)?.vdisc > 0 {
            out.push(place);
        }
    }
    let inf = Place::infinity(c.field().base());
    if minimal_model_at(c, &inf)?.vdisc > 0 {
        out.push(inf);
    }
    out.sort();
    Ok(out)
}

/// Reduce a v-integral model at the place, i.e. the special fiber. Errors
/// if a coefficient is non-integral or the reduction is singular.
pub fn specialize(c: &GlobalCurve, place: &Place) -> Result<FiniteCurve> {
    let rf = place.residue_field().clone();
    let a = c.coefficients();
    let red = |x: &RatFn| place.reduce(x);
    Curve::new(
        &rf,
        [
            red(&a[0])?,
            red(&a[1])?,
            red(&a[2])?,
            red(&a[3])?,
            red(&a[4])?,
        ],
    )
}

impl<K: Field> Curve<K> {
    /// Equation rendered with explicit variable names.
    pub fn display_equation(&self, x: &str, y: &str) -> String {
        let k = &self.field;
        let mut lhs = format!("{y}^2");
        let push = |buf: &mut String, coeff: &K::Elem, mono: &str| {
            if k.is_zero(coeff) {
                return;
            }
            let (neg, s) = k.fmt_elem_signed(coeff, true);
            let body = if s == "1" && !mono.is_empty() {
                mono.to_string()
            } else if mono.is_empty() {
                s
            } else {
                format!("{s}*{mono}")
            };
            buf.push_str(if neg { " - " } else { " + " });
            buf.push_str(&body);
        };
        push(&mut lhs, self.a1(), &format!("{x}*{y}"));
        push(&mut lhs, self.a3(), y);
        let mut rhs = format!("{x}^3");
        push(&mut rhs, self.a2(), &format!("{x}^2"));
        push(&mut rhs, self.a4(), x);
        push(&mut rhs, self.a6(), "");
        format!("{lhs} = {rhs}")
    }
}

impl<K: Field> fmt::Debug for Curve<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_equation("x", "y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Polynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5t() -> RatFnField {
        RatFnField(FiniteField::prime(5).unwrap())
    }

    fn f11t() -> RatFnField {
        RatFnField(FiniteField::prime(11).unwrap())
    }

    /// y^2 = x (x - 1) (x - t^2) over F_5(t)
    pub(crate) fn legendre5(k: &RatFnField) -> GlobalCurve {
        let t2 = k.var().pow(2).unwrap();
        let a2 = k.neg(&k.one().add(&t2));
        Curve::new(k, [k.zero(), a2, k.zero(), t2, k.zero()]).unwrap()
    }

    /// y^2 + (1 - t) xy - t y = x^3 - t x^2 over F_11(t)
    pub(crate) fn curve11(k: &RatFnField) -> GlobalCurve {
        let t = k.var();
        Curve::new(k, [k.one().sub(&t), t.neg(), t.neg(), k.zero(), k.zero()]).unwrap()
    }

    fn poly(k: &RatFnField, ints: &[i64]) -> RatFn {
        RatFn::from_poly(Polynomial::from_ints(k.base(), ints))
    }

    #[test]
    fn legendre_invariants_match_known_values() {
        let k = f5t();
        let c = legendre5(&k);
        let inv = c.invariants();
        // disc = t^4 (t+1)^2 (t-1)^2 = t^8 - 2 t^6 + t^4
        let disc = poly(&k, &[0, 0, 0, 0, 1, 0, -2, 0, 1]);
        assert_eq!(inv.disc, disc);
        // c4 = t^4 - t^2 + 1
        assert_eq!(inv.c4, poly(&k, &[1, 0, -1, 0, 1]));
        // j = (t^4 - t^2 + 1)^3 / (t^4 (t-1)^2 (t+1)^2)
        let j = inv.c4.pow(3).unwrap().div(&disc).unwrap();
        assert_eq!(inv.j, j);
        // identity 1728 disc = c4^3 - c6^2 (characteristic 5)
        let lhs = k.from_int(1728).mul(&inv.disc);
        let rhs = inv.c4.pow(3).unwrap().sub(&inv.c6.pow(2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn curve11_invariants_match_known_values() {
        let k = f11t();
        let c = curve11(&k);
        let inv = c.invariants();
        // disc = t^5 (t+1)(t-1) = t^7 - t^5
        assert_eq!(inv.disc, poly(&k, &[0, 0, 0, 0, 0, -1, 0, 1]));
        // c4 = (t^2 + 2t - 1)(t^2 - 3t - 1)
        let c4 = poly(&k, &[-1, 2, 1]).mul(&poly(&k, &[-1, -3, 1]));
        assert_eq!(inv.c4, c4);
        let lhs = k.from_int(1728).mul(&inv.disc);
        let rhs = inv.c4.pow(3).unwrap().sub(&inv.c6.pow(2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn constant_curve_invariants() {
        // y^2 = x^3 - x over F_5: disc = 64 = 4, j = 1728 = 3
        let k = f5t();
        let c = Curve::new(&k, [k.zero(), k.zero(), k.zero(), k.from_int(-1), k.zero()]).unwrap();
        let inv = c.invariants();
        assert_eq!(inv.disc, k.from_int(4));
        assert_eq!(inv.j, k.from_int(3));
    }

    #[test]
    fn singular_curve_is_rejected() {
        let k = f5t();
        let res = Curve::new(&k, [k.zero(), k.zero(), k.zero(), k.zero(), k.zero()]);
        assert_eq!(res.err(), Some(Error::SingularCurve));
    }

    fn random_ratfn(k: &RatFnField, rng: &mut ChaCha8Rng) -> RatFn {
        let q = k.base().order();
        let deg = rng.gen_range(0..3usize);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..q as i64)).collect();
        RatFn::from_poly(Polynomial::from_ints(k.base(), &coeffs))
    }

    #[test]
    fn transformation_laws_on_random_transforms() {
        let k = f5t();
        let c = legendre5(&k);
        let inv = c.invariants();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 100 {
            let u = random_ratfn(&k, &mut rng);
            if u.is_zero() {
                continue;
            }
            let tr = Transform {
                u: u.clone(),
                r: random_ratfn(&k, &mut rng),
                s: random_ratfn(&k, &mut rng),
                t: random_ratfn(&k, &mut rng),
            };
            let c2 = c.transformed(&tr).unwrap();
            let inv2 = c2.invariants();
            assert_eq!(inv2.j, inv.j, "j must be invariant");
            let u12 = u.pow(12).unwrap();
            assert_eq!(inv2.disc.mul(&u12), inv.disc, "disc scales by u^-12");
            assert_eq!(inv2.c4.mul(&u.pow(4).unwrap()), inv.c4);
            assert_eq!(inv2.c6.mul(&u.pow(6).unwrap()), inv.c6);
            done += 1;
        }
    }

    #[test]
    fn transform_composition_agrees_with_sequential_application() {
        let k = f5t();
        let c = curve_for_compose(&k);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mk = |rng: &mut ChaCha8Rng| {
                let mut u = random_ratfn(&k, rng);
                if u.is_zero() {
                    u = k.one();
                }
                Transform {
                    u,
                    r: random_ratfn(&k, rng),
                    s: random_ratfn(&k, rng),
                    t: random_ratfn(&k, rng),
                }
            };
            let t1 = mk(&mut rng);
            let t2 = mk(&mut rng);
            let seq = c.transformed(&t1).unwrap().transformed(&t2).unwrap();
            let comp = c.transformed(&t1.then(&t2, &k)).unwrap();
            assert_eq!(seq, comp);
        }
    }

    fn curve_for_compose(k: &RatFnField) -> GlobalCurve {
        legendre5(k)
    }

    #[test]
    fn identity_transform_is_identity() {
        let k = f5t();
        let c = legendre5(&k);
        assert_eq!(c.transformed(&Transform::identity(&k)).unwrap(), c);
    }

    #[test]
    fn legendre_at_infinity_has_same_shape_in_s() {
        // substituting t = 1/s and scaling by u = 1/s recovers the Legendre
        // form with parameter s
        let k = f5t();
        let c = legendre5(&k);
        let cs = substitute_inverse_t(&c);
        let u = k.var().inv().unwrap();
        let c2 = cs.transformed(&Transform::scaling(&k, u)).unwrap();
        assert_eq!(c2, legendre5(&k));
    }

    #[test]
    fn scaling_by_two_scales_disc() {
        let k = f5t();
        let c = legendre5(&k);
        let tr = Transform::scaling(&k, k.from_int(2));
        let c2 = c.transformed(&tr).unwrap();
        let ratio = c.invariants().disc.div(&c2.invariants().disc).unwrap();
        assert_eq!(ratio, k.from_int(2).pow(12).unwrap());
    }

    #[test]
    fn completed_square_preserves_invariants() {
        let k = f11t();
        let c = curve11(&k);
        let (sq, tr) = c.completed_square().unwrap();
        assert!(sq.a1().is_zero() && sq.a3().is_zero());
        assert_eq!(c.transformed(&tr).unwrap(), sq);
        assert_eq!(sq.invariants().disc, c.invariants().disc);
        assert_eq!(sq.invariants().j, c.invariants().j);

        // y^2 + xy = x^3 over F_5 becomes y^2 = x^3 + (1/4) x^2
        let k5 = f5t();
        let c = Curve::new(&k5, [k5.one(), k5.zero(), k5.zero(), k5.zero(), k5.one()]).unwrap();
        let (sq, _) = c.completed_square().unwrap();
        let quarter = k5.from_int(4).inv().unwrap();
        assert_eq!(sq.a2(), &quarter);
    }

    #[test]
    fn minimal_models_at_paper_places() {
        let k = f5t();
        let c = legendre5(&k);
        let pt = Place::finite(Polynomial::gen(k.base())).unwrap();
        let lm = minimal_model_finite(&c, &pt).unwrap();
        assert_eq!(lm.vdisc, 4);
        assert_eq!(lm.vc4, Some(0));
        assert_eq!(lm.vj, Some(-4));

        // at infinity v(disc) = -8, clearing adds 12
        let inf = Place::infinity(k.base());
        let lm = minimal_model_at(&c, &inf).unwrap();
        assert_eq!(lm.vdisc, 4);
        assert_eq!(lm.vc4, Some(0));

        let k11 = f11t();
        let c11 = curve11(&k11);
        let inf11 = Place::infinity(k11.base());
        let lm = minimal_model_at(&c11, &inf11).unwrap();
        assert_eq!(lm.vdisc, 5, "v(disc) = v_inf(disc) + 12 = -7 + 12");
        assert_eq!(lm.vc4, Some(0));
        assert_eq!(lm.vj, Some(-5));
        // two routes to v(j) agree at infinity as well
        assert_eq!(lm.vj, Some(inf11.valuation(&c11.invariants().j).unwrap()));
    }

    #[test]
    fn minimal_model_is_idempotent_at_finite_places() {
        let k = f5t();
        let c = legendre5(&k);
        for coeffs in [vec![0i64, 1], vec![-1, 1], vec![1, 1], vec![2, 0, 1]] {
            let place = Place::finite(Polynomial::from_ints(k.base(), &coeffs)).unwrap();
            let lm = minimal_model_finite(&c, &place).unwrap();
            assert!(lm.vdisc >= 0);
            assert!(lm.vdisc < 12 || lm.vc4.map(|v| v < 4).unwrap_or(false));
            let again = minimal_model_finite(&lm.model, &place).unwrap();
            assert!(again.transform.is_identity(&k));
            assert_eq!(again.vdisc, lm.vdisc);
        }
    }

    #[test]
    fn vj_from_model_matches_direct_valuation() {
        let k = f11t();
        let c = curve11(&k);
        let j = c.invariants().j;
        for coeffs in [vec![0i64, 1], vec![-1, 1], vec![1, 1], vec![3, 1]] {
            let place = Place::finite(Polynomial::from_ints(k.base(), &coeffs)).unwrap();
            let lm = minimal_model_finite(&c, &place).unwrap();
            assert_eq!(lm.vj, Some(place.valuation(&j).unwrap()));
        }
    }

    #[test]
    fn bad_places_of_the_example_curves() {
        let k = f5t();
        let c = legendre5(&k);
        let places = bad_places(&c).unwrap();
        let shown: Vec<String> = places.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["t", "t + 1", "t - 1", "inf"]);

        let k11 = f11t();
        let c11 = curve11(&k11);
        let places = bad_places(&c11).unwrap();
        let shown: Vec<String> = places.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["t", "t + 1", "t - 1", "inf"]);
    }

    #[test]
    fn constant_curve_has_no_bad_places() {
        let k = f5t();
        let c = Curve::new(&k, [k.zero(), k.zero(), k.zero(), k.from_int(-1), k.zero()]).unwrap();
        assert!(bad_places(&c).unwrap().is_empty());
    }

    #[test]
    fn bad_places_stable_under_constant_rescaling() {
        let k = f5t();
        let c = legendre5(&k);
        let tr = Transform::scaling(&k, k.from_int(3));
        let c2 = c.transformed(&tr).unwrap();
        assert_eq!(bad_places(&c).unwrap(), bad_places(&c2).unwrap());
    }

    #[test]
    fn specialization_at_good_place_is_nonsingular() {
        let k = f5t();
        let c = legendre5(&k);
        // t - 2 is a good place
        let place = Place::finite(Polynomial::from_ints(k.base(), &[-2, 1])).unwrap();
        let red = specialize(&c, &place).unwrap();
        assert_eq!(red.field().order(), 5);
        // bad place: reduction is singular
        let bad = Place::finite(Polynomial::gen(k.base())).unwrap();
        assert_eq!(specialize(&c, &bad).err(), Some(Error::SingularCurve));
    }
}
