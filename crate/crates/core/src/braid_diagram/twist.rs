//! Piecewise-linear homeomorphisms of the torus, applied to curves through
//! their lifts.

use num_traits::{One, Signed};

use super::curve::TorusCurve;
use crate::geom::{floor, orient, qi, segment_intersection, Point, Q};

pub trait PlMap {
    /// Parameters in `(0, 1)` where the segment `a -> b` crosses a cell
    /// boundary of the map.
    fn breaks(&self, a: &Point, b: &Point) -> Vec<Q>;
    /// Image of a point of the plane (the lift of the map).
    fn image(&self, p: &Point) -> Point;
    /// Action on the deck group, as the image of `(a, b)`.
    fn deck(&self, v: (i64, i64)) -> (i64, i64);

    fn apply(&self, c: &TorusCurve) -> TorusCurve {
        let mut pts = Vec::new();
        for (a, b) in c.segments() {
            let mut ts = self.breaks(&a, &b);
            ts.sort();
            ts.dedup();
            pts.push(self.image(&a));
            for t in ts {
                pts.push(self.image(&a.lerp(&b, &t)));
            }
        }
        let shift = self.deck(c.shift);
        TorusCurve::new(pts, shift).simplified()
    }
}

/// Direction of the curve a Dehn twist is performed along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistAxis {
    /// Along a horizontal curve `y = c`.
    Horizontal,
    /// Along a vertical curve `x = c`.
    Vertical,
}

/// Dehn twist supported in a band of half-width `width` around a straight
/// curve, realized as a shear that is affine inside the band.
#[derive(Clone, Debug)]
pub struct DehnTwist {
    pub axis: TwistAxis,
    pub offset: Q,
    pub width: Q,
    /// +1 or -1.
    pub sign: i64,
}

impl DehnTwist {
    fn ramp(&self, u: &Q) -> Q {
        // cumulative shear as a function of the transverse coordinate
        let lo = u - &(&self.offset - &self.width);
        let n = floor(&lo);
        let frac = &lo - &Q::from_integer(n.clone());
        let w2 = &self.width * qi(2);
        let part = if frac >= w2 { Q::one() } else { frac / w2 };
        (Q::from_integer(n) + part) * qi(self.sign)
    }

    fn transverse<'a>(&self, p: &'a Point) -> &'a Q {
        match self.axis {
            TwistAxis::Horizontal => &p.y,
            TwistAxis::Vertical => &p.x,
        }
    }
}

impl PlMap for DehnTwist {
    fn breaks(&self, a: &Point, b: &Point) -> Vec<Q> {
        let (ua, ub) = (self.transverse(a), self.transverse(b));
        if ua == ub {
            return Vec::new();
        }
        let (lo, hi) = if ua < ub { (ua, ub) } else { (ub, ua) };
        let mut out = Vec::new();
        for edge in [&self.offset - &self.width, &self.offset + &self.width] {
            let mut k = floor(&(lo - &edge));
            loop {
                let level = &edge + Q::from_integer(k.clone());
                if &level >= hi {
                    break;
                }
                if &level > lo {
                    out.push((&level - ua) / (ub - ua));
                }
                k += 1;
            }
        }
        out
    }

    fn image(&self, p: &Point) -> Point {
        let g = self.ramp(self.transverse(p));
        match self.axis {
            TwistAxis::Horizontal => Point::new(&p.x + g, p.y.clone()),
            TwistAxis::Vertical => Point::new(p.x.clone(), &p.y + g),
        }
    }

    fn deck(&self, (a, b): (i64, i64)) -> (i64, i64) {
        match self.axis {
            TwistAxis::Horizontal => (a + self.sign * b, b),
            TwistAxis::Vertical => (a, b + self.sign * a),
        }
    }
}

const RING_POINTS: usize = 8;
const RINGS: usize = 4;

/// Half twist exchanging two marked points: rotation by a half turn on an
/// inner square, interpolated to the identity across a square annulus by a
/// sequence of triangulated rings each rotating one step further.
#[derive(Clone, Debug)]
pub struct HalfTwist {
    pub center: Point,
    pub inner: Q,
    pub outer: Q,
    /// +1 or -1: sense in which the inner square turns.
    pub sign: i64,
    triangles: Vec<([Point; 3], [Point; 3])>,
    edges: Vec<(Point, Point)>,
}

fn unit_square_dirs() -> [(i64, i64); RING_POINTS] {
    [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
}

impl HalfTwist {
    pub fn new(center: Point, inner: Q, outer: Q, sign: i64) -> Self {
        assert!(inner.is_positive() && outer > inner);
        assert!(sign == 1 || sign == -1);
        let dirs = unit_square_dirs();
        let radius = |k: usize| &inner + (&outer - &inner) * Q::new((k as i64).into(), (RINGS as i64).into());
        let ring_pt = |k: usize, i: i64| {
            let (dx, dy) = dirs[i.rem_euclid(RING_POINTS as i64) as usize];
            let r = radius(k);
            Point::new(&center.x + &r * qi(dx), &center.y + &r * qi(dy))
        };
        // ring k turns by `sign * (RINGS - k)` steps of an eighth turn
        let step = |k: usize| sign * (RINGS - k) as i64;
        let mut triangles = Vec::new();
        let mut edges = Vec::new();
        for k in 0..RINGS {
            for i in 0..RING_POINTS as i64 {
                let tris: [[(usize, i64); 3]; 2] = if sign > 0 {
                    [[(k, i), (k, i + 1), (k + 1, i + 1)], [(k, i), (k + 1, i + 1), (k + 1, i)]]
                } else {
                    [[(k, i), (k, i + 1), (k + 1, i)], [(k, i + 1), (k + 1, i + 1), (k + 1, i)]]
                };
                for tri in tris {
                    let src = tri.map(|(r, j)| ring_pt(r, j));
                    let dst = tri.map(|(r, j)| ring_pt(r, j + step(r)));
                    for e in 0..3 {
                        edges.push((src[e].clone(), src[(e + 1) % 3].clone()));
                    }
                    triangles.push((src, dst));
                }
            }
        }
        HalfTwist {
            center,
            inner,
            outer,
            sign,
            triangles,
            edges,
        }
    }

    /// Every triangle keeps its orientation (the map is a homeomorphism of
    /// the annulus).
    pub fn is_orientation_preserving(&self) -> bool {
        self.triangles.iter().all(|(s, d)| {
            let o = orient(&s[0], &s[1], &s[2]);
            o != 0 && o == orient(&d[0], &d[1], &d[2])
        })
    }

    fn translates_touching(&self, a: &Point, b: &Point) -> Vec<Point> {
        let (x0, x1) = if a.x < b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
        let (y0, y1) = if a.y < b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
        let r = &self.outer;
        let mut out = Vec::new();
        let mlo = crate::geom::ceil_i64(&(x0 - &self.center.x - r));
        let mhi = crate::geom::floor_i64(&(x1 - &self.center.x + r));
        let nlo = crate::geom::ceil_i64(&(y0 - &self.center.y - r));
        let nhi = crate::geom::floor_i64(&(y1 - &self.center.y + r));
        for m in mlo..=mhi {
            for n in nlo..=nhi {
                out.push(Point::from_ints(m, n));
            }
        }
        out
    }

    fn local_image(&self, d: &Point) -> Option<Point> {
        // `d` is relative to the square's own lattice translate of the center.
        let c = &self.center;
        let p = c + d;
        let rho = if d.x.abs() > d.y.abs() { d.x.abs() } else { d.y.abs() };
        if rho >= self.outer {
            return None;
        }
        if rho <= self.inner {
            return Some(&(c + c) - &p);
        }
        for (s, t) in &self.triangles {
            let e1 = &s[1] - &s[0];
            let e2 = &s[2] - &s[0];
            let det = e1.cross(&e2);
            let rel = &p - &s[0];
            let l = rel.cross(&e2) / &det;
            let m = e1.cross(&rel) / &det;
            if !l.is_negative() && !m.is_negative() && &l + &m <= Q::one() {
                let f1 = &t[1] - &t[0];
                let f2 = &t[2] - &t[0];
                return Some(&(&t[0] + &f1.scale(&l)) + &f2.scale(&m));
            }
        }
        unreachable!("point of the annulus outside every triangle")
    }
}

impl PlMap for HalfTwist {
    fn breaks(&self, a: &Point, b: &Point) -> Vec<Q> {
        let mut out = Vec::new();
        for off in self.translates_touching(a, b) {
            for (e0, e1) in &self.edges {
                let (p0, p1) = (e0 + &off, e1 + &off);
                if let Some((t, _)) = segment_intersection(a, b, &p0, &p1) {
                    if t.is_positive() && t < Q::one() {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    fn image(&self, p: &Point) -> Point {
        // the support is smaller than a fundamental domain, so at most one
        // translate contains `p`
        let m = floor(&(&p.x - &self.center.x + qi(1) / qi(2)));
        let n = floor(&(&p.y - &self.center.y + qi(1) / qi(2)));
        let off = Point::new(Q::from_integer(m), Q::from_integer(n));
        let d = &(p - &self.center) - &off;
        match self.local_image(&d) {
            Some(img) => &img + &off,
            None => p.clone(),
        }
    }

    fn deck(&self, v: (i64, i64)) -> (i64, i64) {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::q;
    use num_traits::Zero;

    fn twist() -> HalfTwist {
        HalfTwist::new(Point::new(q(1, 2), q(1, 4)), q(1, 8), q(3, 16), 1)
    }

    #[test]
    fn half_twist_is_a_homeomorphism_of_the_annulus() {
        assert!(twist().is_orientation_preserving());
        let neg = HalfTwist::new(Point::new(q(1, 2), q(1, 4)), q(1, 8), q(3, 16), -1);
        assert!(neg.is_orientation_preserving());
    }

    #[test]
    fn half_twist_swaps_marked_points_and_fixes_outside() {
        let h = twist();
        let z = Point::new(q(7, 16), q(1, 4));
        let w = Point::new(q(9, 16), q(1, 4));
        assert_eq!(h.image(&z), w);
        assert_eq!(h.image(&w), z);
        let far = Point::new(q(1, 2), q(3, 4));
        assert_eq!(h.image(&far), far);
        // periodic
        let z2 = &z + &Point::from_ints(3, -2);
        assert_eq!(h.image(&z2), &w + &Point::from_ints(3, -2));
        // continuity across the outer boundary
        let edge = Point::new(&q(1, 2) + &q(3, 16), q(1, 4));
        assert_eq!(h.image(&edge), edge);
    }

    #[test]
    fn dehn_twist_shears_through_band() {
        let t = DehnTwist {
            axis: TwistAxis::Horizontal,
            offset: q(1, 2),
            width: q(1, 8),
            sign: 1,
        };
        let below = Point::new(q(1, 10), q(1, 4));
        assert_eq!(t.image(&below), below);
        let above = Point::new(q(1, 10), q(3, 4));
        assert_eq!(t.image(&above), Point::new(&q(1, 10) + &qi(1), q(3, 4)));
        assert_eq!(t.deck((0, 1)), (1, 1));
        let c = TorusCurve::new(vec![Point::new(Q::zero(), q(1, 4))], (0, 1));
        let img = t.apply(&c);
        assert_eq!(img.shift, (1, 1));
        assert!(img.is_embedded());
    }
}
