//! Chord–tangent group law on a long Weierstrass curve, generic over the
//! coefficient field.

use crate::curve::Curve;
use crate::ring::Field;
use std::fmt;

#[derive(Clone, PartialEq)]
pub enum Point<K: Field> {
    Identity,
    Affine(K::Elem, K::Elem),
}

impl<K: Field> Point<K> {
    pub fn is_identity(&self) -> bool {
        matches!(self, Point::Identity)
    }

    pub fn xy(&self) -> Option<(&K::Elem, &K::Elem)> {
        match self {
            Point::Identity => None,
            Point::Affine(x, y) => Some((x, y)),
        }
    }
}

impl<K: Field> fmt::Debug for Point<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Identity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x:?}, {y:?})"),
        }
    }
}

impl<K: Field> Curve<K> {
    pub fn identity(&self) -> Point<K> {
        Point::Identity
    }

    pub fn point(&self, x: K::Elem, y: K::Elem) -> Point<K> {
        debug_assert!(self.contains(&x, &y), "point not on curve");
        Point::Affine(x, y)
    }

    pub fn neg_point(&self, p: &Point<K>) -> Point<K> {
        let k = self.field();
        match p {
            Point::Identity => Point::Identity,
            Point::Affine(x, y) => {
                // -(x, y) = (x, -y - a1 x - a3)
                let ny = k.neg(&k.add(y, &k.add(&k.mul(self.a1(), x), self.a3())));
                Point::Affine(x.clone(), ny)
            }
        }
    }

    pub fn add_points(&self, p: &Point<K>, q: &Point<K>) -> Point<K> {
        let k = self.field();
        let (x1, y1) = match p {
            Point::Identity => return q.clone(),
            Point::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            Point::Identity => return p.clone(),
            Point::Affine(x, y) => (x, y),
        };
        let [a1, a2, a3, a4, _] = self.coefficients();

        let lambda = if x1 == x2 {
            let neg_y2 = k.neg(&k.add(y2, &k.add(&k.mul(a1, x2), a3)));
            if *y1 == neg_y2 {
                return Point::Identity;
            }
            // tangent: (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3)
            let num = {
                let mut v = k.mul(&k.from_int(3), &k.mul(x1, x1));
                v = k.add(&v, &k.mul(&k.from_int(2), &k.mul(a2, x1)));
                v = k.add(&v, a4);
                k.sub(&v, &k.mul(a1, y1))
            };
            let den = k.add(&k.mul(&k.from_int(2), y1), &k.add(&k.mul(a1, x1), a3));
            k.div(&num, &den)
                .expect("tangent denominator vanishes only at 2-torsion")
        } else {
            k.div(&k.sub(y2, y1), &k.sub(x2, x1)).expect("x1 != x2")
        };

        let nu = k.sub(y1, &k.mul(&lambda, x1));
        // x3 = lambda^2 + a1 lambda - a2 - x1 - x2
        let mut x3 = k.mul(&lambda, &lambda);
        x3 = k.add(&x3, &k.mul(a1, &lambda));
        x3 = k.sub(&x3, a2);
        x3 = k.sub(&x3, x1);
        x3 = k.sub(&x3, x2);
        // y3 = -(lambda + a1) x3 - nu - a3
        let mut y3 = k.neg(&k.mul(&k.add(&lambda, a1), &x3));
        y3 = k.sub(&y3, &nu);
        y3 = k.sub(&y3, a3);
        debug_assert!(self.contains(&x3, &y3));
        Point::Affine(x3, y3)
    }

    pub fn sub_points(&self, p: &Point<K>, q: &Point<K>) -> Point<K> {
        self.add_points(p, &self.neg_point(q))
    }

    pub fn scalar_mul(&self, n: i64, p: &Point<K>) -> Point<K> {
        if n == 0 {
            return Point::Identity;
        }
        let (mut n, mut base) = if n < 0 {
            (-(n as i128) as u64, self.neg_point(p))
        } else {
            (n as u64, p.clone())
        };
        let mut acc = Point::Identity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_points(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add_points(&base, &base);
            }
        }
        acc
    }

    /// Additive order of a point known to be torsion; caller bounds the search.
    pub fn point_order(&self, p: &Point<K>, max: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=max {
            if acc.is_identity() {
                return Some(n);
            }
            acc = self.add_points(&acc, p);
        }
        if acc.is_identity() {
            Some(max + 1)
        } else {
            None
        }
    }
}
