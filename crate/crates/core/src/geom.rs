//! Exact rational plane geometry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Point (or vector) in the plane with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(qi(x), qi(y))
    }

    pub fn zero() -> Self {
        Point::new(Q::zero(), Q::zero())
    }

    pub fn scale(&self, t: &Q) -> Point {
        Point::new(&self.x * t, &self.y * t)
    }

    pub fn dot(&self, o: &Point) -> Q {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Q {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    /// Point on the segment `self -> b` at parameter `t`.
    pub fn lerp(&self, b: &Point, t: &Q) -> Point {
        self + &(b - self).scale(t)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        &self + &o
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        &self - &o
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

impl Mul<&Q> for &Point {
    type Output = Point;
    fn mul(self, t: &Q) -> Point {
        self.scale(t)
    }
}

/// Rational serialized as `[num, den]` with arbitrary-precision decimal strings
/// when the values do not fit `i64`.
pub fn rational_to_json(v: &Q) -> serde_json::Value {
    match (v.numer().to_i64(), v.denom().to_i64()) {
        (Some(n), Some(d)) => serde_json::json!([n, d]),
        _ => serde_json::json!([v.numer().to_string(), v.denom().to_string()]),
    }
}

pub fn point_to_json(p: &Point) -> serde_json::Value {
    serde_json::json!([rational_to_json(&p.x), rational_to_json(&p.y)])
}

/// Sign of the orientation of the triangle `a, b, c`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = (b - a).cross(&(c - a));
    sign(&v)
}

pub fn sign(v: &Q) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Parameters `(s, t)` at which the segments `a0 -> a1` and `b0 -> b1` meet,
/// if the supporting lines are not parallel and the crossing lies in both
/// closed segments.
pub fn segment_intersection(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> Option<(Q, Q)> {
    let r = a1 - a0;
    let s = b1 - b0;
    let denom = r.cross(&s);
    if denom.is_zero() {
        return None;
    }
    let d = b0 - a0;
    let t = d.cross(&s) / &denom;
    let u = d.cross(&r) / &denom;
    let zero = Q::zero();
    let one = Q::one();
    if t < zero || t > one || u < zero || u > one {
        return None;
    }
    Some((t, u))
}

/// Parameter where the segment `a -> b` meets the horizontal line `y = level`,
/// strictly inside the segment.
pub fn cross_horizontal(a: &Point, b: &Point, level: &Q) -> Option<Q> {
    if a.y == b.y {
        return None;
    }
    let t = (level - &a.y) / (&b.y - &a.y);
    if t.is_positive() && t < Q::one() {
        Some(t)
    } else {
        None
    }
}

pub fn cross_vertical(a: &Point, b: &Point, level: &Q) -> Option<Q> {
    if a.x == b.x {
        return None;
    }
    let t = (level - &a.x) / (&b.x - &a.x);
    if t.is_positive() && t < Q::one() {
        Some(t)
    } else {
        None
    }
}

pub fn floor(v: &Q) -> BigInt {
    v.floor().to_integer()
}

pub fn ceil(v: &Q) -> BigInt {
    v.ceil().to_integer()
}

pub fn floor_i64(v: &Q) -> i64 {
    floor(v).to_i64().expect("coordinate out of range")
}

pub fn ceil_i64(v: &Q) -> i64 {
    ceil(v).to_i64().expect("coordinate out of range")
}

/// Winding number of the closed polygon `poly` around `p`. `p` must not lie
/// on the polygon.
pub fn winding_number(poly: &[Point], p: &Point) -> i64 {
    let n = poly.len();
    let mut w = 0i64;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

/// Squared distance from `p` to the closed segment `a -> b`.
pub fn dist2_point_segment(p: &Point, a: &Point, b: &Point) -> Q {
    let ab = b - a;
    let len2 = ab.norm2();
    if len2.is_zero() {
        return (p - a).norm2();
    }
    let mut t = (p - a).dot(&ab) / &len2;
    if t.is_negative() {
        t = Q::zero();
    } else if t > Q::one() {
        t = Q::one();
    }
    let foot = a.lerp(b, &t);
    (p - &foot).norm2()
}

/// Turning number of a closed polygon: the number of full counterclockwise
/// turns made by its edge direction. Consecutive edges must not reverse.
pub fn turning_number(poly: &[Point]) -> i64 {
    let n = poly.len();
    let dirs: Vec<Point> = (0..n).map(|i| &poly[(i + 1) % n] - &poly[i]).collect();
    // Reference direction parallel to no edge, so every pass is strict.
    let reference = (1..)
        .map(|k: i64| Point::new(qi(k), qi(1)))
        .find(|e| dirs.iter().all(|d| !d.cross(e).is_zero()))
        .expect("finitely many edge directions");
    let mut count = 0i64;
    for i in 0..n {
        let d1 = &dirs[i];
        let d2 = &dirs[(i + 1) % n];
        let c = d1.cross(d2);
        if c.is_zero() {
            assert!(d1.dot(d2).is_positive(), "polygon reverses direction");
            continue;
        }
        if c.is_positive() {
            if d1.cross(&reference).is_positive() && reference.cross(d2).is_positive() {
                count += 1;
            }
        } else if d2.cross(&reference).is_positive() && reference.cross(d1).is_positive() {
            count -= 1;
        }
    }
    count
}

pub fn min_q<'a>(vals: impl IntoIterator<Item = &'a Q>) -> Option<Q> {
    vals.into_iter().min().cloned()
}

pub fn abs(v: &Q) -> Q {
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
    }

    #[test]
    fn winding_of_square() {
        let sq = pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(winding_number(&sq, &Point::from_ints(1, 1)), 1);
        assert_eq!(winding_number(&sq, &Point::from_ints(3, 1)), 0);
        let rev: Vec<_> = sq.iter().rev().cloned().collect();
        assert_eq!(winding_number(&rev, &Point::from_ints(1, 1)), -1);
    }

    #[test]
    fn turning_numbers() {
        let sq = pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(turning_number(&sq), 1);
        let rev: Vec<_> = sq.iter().rev().cloned().collect();
        assert_eq!(turning_number(&rev), -1);
        // figure eight
        let eight = pts(&[(0, 0), (2, 2), (2, 0), (0, 2)]);
        assert_eq!(turning_number(&eight), 0);
        // start on an axis-parallel edge
        let tri = pts(&[(0, 0), (4, 0), (0, 3)]);
        assert_eq!(turning_number(&tri), 1);
    }

    #[test]
    fn segment_crossing() {
        let a0 = Point::from_ints(0, 0);
        let a1 = Point::from_ints(2, 2);
        let b0 = Point::from_ints(0, 2);
        let b1 = Point::from_ints(2, 0);
        let (s, t) = segment_intersection(&a0, &a1, &b0, &b1).unwrap();
        assert_eq!(s, q(1, 2));
        assert_eq!(t, q(1, 2));
    }
}
