use num_traits::{One, Signed, Zero};

use crate::geom::{ceil_i64, cross_horizontal, floor_i64, orient, qi, Point, Q};

/// Closed PL curve on the torus `R^2 / Z^2`, stored as one period of a lift:
/// the segments are `v[i] -> v[i+1]` and finally `v[n-1] -> v[0] + shift`,
/// where `shift` is the homology class of the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCurve {
    pub vertices: Vec<Point>,
    pub shift: (i64, i64),
}

/// Transverse crossing of a curve segment with a lift `y = level` of the
/// horizontal curve.
#[derive(Clone, Debug)]
pub struct LevelCrossing {
    pub seg: usize,
    pub t: Q,
    pub point: Point,
    pub level: i64,
    /// The curve moves upward through the line.
    pub up: bool,
}

impl TorusCurve {
    pub fn new(vertices: Vec<Point>, shift: (i64, i64)) -> Self {
        TorusCurve { vertices, shift }
    }

    pub fn shift_vector(&self) -> Point {
        Point::from_ints(self.shift.0, self.shift.1)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex `i` of the infinite lift, for any integer `i`.
    pub fn lifted_vertex(&self, i: i64) -> Point {
        let n = self.vertices.len() as i64;
        let k = i.div_euclid(n);
        let r = i.rem_euclid(n) as usize;
        let s = self.shift_vector();
        &self.vertices[r] + &s.scale(&qi(k))
    }

    pub fn segment(&self, i: usize) -> (Point, Point) {
        let a = self.vertices[i].clone();
        let b = self.lifted_vertex(i as i64 + 1);
        (a, b)
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.segment(i))
    }

    /// Same curve with the lift restarted at vertex `k`.
    pub fn rotated(&self, k: usize) -> TorusCurve {
        let n = self.len();
        let vertices = (k..k + n).map(|i| self.lifted_vertex(i as i64)).collect();
        TorusCurve::new(vertices, self.shift)
    }

    pub fn reversed(&self) -> TorusCurve {
        let s = self.shift_vector();
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| v - &s).rev().collect();
        // keep the first vertex inside the original period
        vertices.rotate_right(1);
        vertices[0] = &vertices[0] + &s;
        TorusCurve::new(vertices, (-self.shift.0, -self.shift.1))
    }

    /// Translate the whole lift by an integer vector (same torus curve).
    pub fn translated(&self, dx: i64, dy: i64) -> TorusCurve {
        let d = Point::from_ints(dx, dy);
        TorusCurve::new(self.vertices.iter().map(|v| v + &d).collect(), self.shift)
    }

    /// Crossings with the horizontal lines `y = n`, in order along the period.
    pub fn level_crossings(&self) -> Vec<LevelCrossing> {
        let mut out = Vec::new();
        for (i, (a, b)) in self.segments().enumerate() {
            assert!(
                !a.y.is_integer() && !b.y.is_integer(),
                "curve vertex on the horizontal curve"
            );
            if a.y == b.y {
                continue;
            }
            let up = b.y > a.y;
            let (lo, hi) = if up { (&a.y, &b.y) } else { (&b.y, &a.y) };
            let mut levels: Vec<i64> = (ceil_i64(lo)..=floor_i64(hi)).collect();
            if !up {
                levels.reverse();
            }
            for level in levels {
                let t = cross_horizontal(&a, &b, &qi(level)).expect("strict crossing");
                let point = a.lerp(&b, &t);
                out.push(LevelCrossing {
                    seg: i,
                    t,
                    point,
                    level,
                    up,
                });
            }
        }
        out
    }

    /// Algebraic intersection with the horizontal curve oriented along `+x`.
    pub fn algebraic_with_horizontal(&self) -> i64 {
        // A downward crossing of a rightward line counts positively.
        -self.shift.1
    }

    /// Drop vertices where the curve does not turn.
    pub fn simplified(&self) -> TorusCurve {
        let mut cur = self.clone();
        loop {
            let n = cur.len();
            if n <= 1 {
                return cur;
            }
            let mut removed = None;
            for i in 0..n {
                let p = cur.lifted_vertex(i as i64 - 1);
                let v = cur.lifted_vertex(i as i64);
                let nx = cur.lifted_vertex(i as i64 + 1);
                if v == nx || (orient(&p, &v, &nx) == 0 && (&v - &p).dot(&(&nx - &v)).is_positive()) {
                    removed = Some(i);
                    break;
                }
            }
            match removed {
                None => return cur,
                Some(0) => {
                    // move the start so the removed vertex is not the anchor
                    cur = cur.rotated(1);
                    let last = cur.len() - 1;
                    cur.vertices.remove(last);
                }
                Some(i) => {
                    cur.vertices.remove(i);
                }
            }
        }
    }

    /// Check that the curve is embedded in the torus: no two segments of the
    /// lift (up to deck translations) meet except consecutive ones at their
    /// shared vertex.
    pub fn is_embedded(&self) -> bool {
        let n = self.len();
        let segs: Vec<(Point, Point)> = self.segments().collect();
        for i in 0..n {
            for j in 0..n {
                let (a0, a1) = &segs[i];
                let (b0, b1) = &segs[j];
                for (dx, dy) in translates_near(a0, a1, b0, b1) {
                    let d = Point::from_ints(dx, dy);
                    let c0 = b0 + &d;
                    let c1 = b1 + &d;
                    if i == j && dx == 0 && dy == 0 {
                        continue;
                    }
                    if let Some((s, t)) = crate::geom::segment_intersection(a0, a1, &c0, &c1) {
                        let shared_end = (s.is_one() && t.is_zero()) || (s.is_zero() && t.is_one());
                        if !shared_end {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn bbox(&self) -> (Q, Q, Q, Q) {
        bbox(self.segments().flat_map(|(a, b)| [a, b]))
    }
}

pub fn bbox(points: impl IntoIterator<Item = Point>) -> (Q, Q, Q, Q) {
    let mut it = points.into_iter();
    let first = it.next().expect("non-empty");
    let (mut x0, mut x1, mut y0, mut y1) = (first.x.clone(), first.x.clone(), first.y.clone(), first.y);
    for p in it {
        if p.x < x0 {
            x0 = p.x.clone();
        }
        if p.x > x1 {
            x1 = p.x.clone();
        }
        if p.y < y0 {
            y0 = p.y.clone();
        }
        if p.y > y1 {
            y1 = p.y.clone();
        }
    }
    (x0, x1, y0, y1)
}

/// Integer translations `d` for which segment `b + d` can meet segment `a`.
pub fn translates_near(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> Vec<(i64, i64)> {
    let (ax0, ax1, ay0, ay1) = bbox([a0.clone(), a1.clone()]);
    let (bx0, bx1, by0, by1) = bbox([b0.clone(), b1.clone()]);
    let dx_lo = ceil_i64(&(&ax0 - &bx1));
    let dx_hi = floor_i64(&(&ax1 - &bx0));
    let dy_lo = ceil_i64(&(&ay0 - &by1));
    let dy_hi = floor_i64(&(&ay1 - &by0));
    let mut out = Vec::new();
    for dx in dx_lo..=dx_hi {
        for dy in dy_lo..=dy_hi {
            out.push((dx, dy));
        }
    }
    out
}

/// Lattice translates `p + (m, n)` inside the box `[x0, x1] x [y0, y1]`.
pub fn lattice_points_in(p: &Point, x0: &Q, x1: &Q, y0: &Q, y1: &Q) -> Vec<Point> {
    let mut out = Vec::new();
    for m in ceil_i64(&(x0 - &p.x))..=floor_i64(&(x1 - &p.x)) {
        for n in ceil_i64(&(y0 - &p.y))..=floor_i64(&(y1 - &p.y)) {
            out.push(p + &Point::from_ints(m, n));
        }
    }
    out
}

pub fn abs_q(v: &Q) -> Q {
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::q;

    fn meridian() -> TorusCurve {
        TorusCurve::new(vec![Point::new(Q::zero(), q(1, 3)), Point::new(Q::zero(), q(2, 3))], (0, 1))
    }

    #[test]
    fn meridian_meets_horizontal_once() {
        let c = meridian();
        let xs = c.level_crossings();
        assert_eq!(xs.len(), 1);
        assert!(xs[0].up);
        assert_eq!(xs[0].level, 1);
        assert!(c.is_embedded());
        assert_eq!(c.algebraic_with_horizontal(), -1);
    }

    #[test]
    fn rotation_and_reversal_preserve_the_curve() {
        let c = TorusCurve::new(
            vec![
                Point::new(q(1, 10), q(1, 3)),
                Point::new(q(1, 2), q(1, 2)),
                Point::new(q(1, 5), q(2, 3)),
            ],
            (0, 1),
        );
        assert_eq!(c.rotated(1).level_crossings().len(), c.level_crossings().len());
        let r = c.reversed();
        assert_eq!(r.shift, (0, -1));
        assert_eq!(r.reversed().simplified().len(), c.simplified().len());
        assert!(r.is_embedded());
    }

    #[test]
    fn simplify_drops_collinear_vertices() {
        let c = TorusCurve::new(
            vec![
                Point::new(Q::zero(), q(1, 4)),
                Point::new(Q::zero(), q(1, 2)),
                Point::new(Q::zero(), q(3, 4)),
            ],
            (0, 1),
        );
        assert_eq!(c.simplified().len(), 1);
    }
}
