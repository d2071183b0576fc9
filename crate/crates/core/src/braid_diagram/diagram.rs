use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use super::braid::{BraidWord, Generator, KnotSpec};
use super::conventions::Conventions;
use super::curve::{bbox, lattice_points_in, LevelCrossing, TorusCurve};
use super::twist::PlMap;
use crate::geom::{point_to_json, qi, winding_number, Point, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("no meridian multiple gives intersection number {epsilon} (alpha class {class:?})")]
    NormalizationImpossible { epsilon: i64, class: (i64, i64) },
    #[error("alpha meets the horizontal curve algebraically {0} times; expected +1 or -1")]
    NotAKnotInS3(i64),
}

/// Doubly pointed genus one Heegaard diagram on the flat torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardDiagram {
    pub alpha: TorusCurve,
    /// Always the horizontal curve `y = 0` oriented along `+x`.
    pub beta: TorusCurve,
    pub z: Point,
    pub w: Point,
    /// Number of meridian copies added by [`normalize_epsilon`].
    pub k_meridian: i64,
}

fn horizontal_curve() -> TorusCurve {
    TorusCurve::new(vec![Point::zero()], (1, 0))
}

impl HeegaardDiagram {
    pub fn initial(conv: &Conventions) -> Self {
        let (v, shift) = conv.initial_alpha();
        let (z, w) = conv.marked_points();
        HeegaardDiagram {
            alpha: TorusCurve::new(vec![v], shift),
            beta: horizontal_curve(),
            z,
            w,
            k_meridian: 0,
        }
    }

    /// Algebraic intersection number `alpha . beta`.
    pub fn intersection_number(&self) -> i64 {
        self.alpha.algebraic_with_horizontal()
    }

    pub fn geometric_intersections(&self) -> usize {
        self.alpha.level_crossings().len()
    }

    pub fn to_json(&self) -> Value {
        let pts = |c: &TorusCurve| Value::Array(c.vertices.iter().map(point_to_json).collect());
        json!({
            "alpha": pts(&self.alpha),
            "alpha_homology": [self.alpha.shift.0, self.alpha.shift.1],
            "beta": pts(&self.beta),
            "beta_homology": [self.beta.shift.0, self.beta.shift.1],
            "z": point_to_json(&self.z),
            "w": point_to_json(&self.w),
            "k_meridian": self.k_meridian,
        })
    }
}

/// Act on alpha by the braid, leaving beta and the marked points in place.
pub fn apply_braid(conv: &Conventions, sigma: &BraidWord, d: &HeegaardDiagram) -> HeegaardDiagram {
    let mut steps = sigma.action_sequence();
    if conv.left_to_right {
        steps.reverse();
    }
    let mut alpha = d.alpha.clone();
    for (g, s) in steps {
        alpha = match g {
            Generator::Tau2Squared => conv.full_twist(s).apply(&alpha),
            Generator::Tau3 => conv.half_twist(s).apply(&alpha),
        };
    }
    HeegaardDiagram {
        alpha,
        ..d.clone()
    }
}

/// Add `k` parallel copies of the vertical meridian to alpha so that
/// `alpha . beta = epsilon`. The meridian runs where alpha is untouched by
/// the braid action and crosses it once, so the sum is a twist along it.
pub fn normalize_epsilon(d: &HeegaardDiagram, epsilon: i64) -> Result<(HeegaardDiagram, i64), DiagramError> {
    let (a, b) = d.alpha.shift;
    let target_b = -epsilon;
    if b == target_b {
        return Ok((d.clone(), 0));
    }
    if a == 0 || (target_b - b) % a != 0 {
        return Err(DiagramError::NormalizationImpossible {
            epsilon,
            class: (a, b),
        });
    }
    let power = (target_b - b) / a;
    let alpha = Conventions::meridian_twist(power).apply(&d.alpha);
    let k = target_b - b;
    let out = HeegaardDiagram {
        alpha,
        k_meridian: d.k_meridian + k,
        ..d.clone()
    };
    Ok((out, k))
}

/// Distance from an integer level to the nearest vertex or marked point on
/// the chosen side.
fn clearance(curve: &TorusCurve, marks: &[&Point], below: bool) -> Q {
    let mut best = Q::one();
    let mut consider = |y: &Q| {
        let f = y - Q::from_integer(y.floor().to_integer());
        let d = if below { Q::one() - &f } else { f };
        if d.is_zero() {
            return;
        }
        if d < best {
            best = d;
        }
    };
    for v in &curve.vertices {
        consider(&v.y);
    }
    for m in marks {
        consider(&m.y);
    }
    best
}

fn frac(x: &Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

/// Lifted copy of a crossing moved by `k` periods along alpha.
fn shifted(c: &LevelCrossing, curve: &TorusCurve, k: i64) -> LevelCrossing {
    let s = curve.shift_vector().scale(&qi(k));
    LevelCrossing {
        seg: c.seg + (k as usize) * curve.len(),
        t: c.t.clone(),
        point: &c.point + &s,
        level: c.level + k * curve.shift.1,
        up: c.up,
    }
}

fn point_at_height(a: &Point, b: &Point, y: &Q) -> Point {
    let t = (y - &a.y) / (&b.y - &a.y);
    a.lerp(b, &t)
}

/// Remove one empty innermost bigon between alpha and beta, if any.
fn remove_one_bigon(d: &HeegaardDiagram) -> Option<TorusCurve> {
    let curve = &d.alpha;
    let xs = curve.level_crossings();
    let m = xs.len();
    if m < 2 {
        return None;
    }
    let n = curve.len();
    for k in 0..m {
        let c1 = &xs[k];
        let c2 = if k + 1 < m {
            xs[k + 1].clone()
        } else {
            shifted(&xs[0], curve, 1)
        };
        if c1.level != c2.level || c1.up == c2.up {
            continue;
        }
        let (x0, x1) = if c1.point.x < c2.point.x {
            (&c1.point.x, &c2.point.x)
        } else {
            (&c2.point.x, &c1.point.x)
        };
        let width = x1 - x0;
        if width >= Q::one() {
            continue;
        }
        // another strand of alpha crossing beta inside the bigon's side
        let blocked = xs.iter().enumerate().any(|(idx, c)| {
            if idx == k || idx == (k + 1) % m {
                return false;
            }
            let off = frac(&(&c.point.x - x0));
            !off.is_zero() && off < width
        });
        if blocked {
            continue;
        }
        let (i, j) = (c1.seg, c2.seg);
        let mut poly = vec![c1.point.clone()];
        for v in (i + 1)..=j {
            poly.push(curve.lifted_vertex(v as i64));
        }
        poly.push(c2.point.clone());
        let (bx0, bx1, by0, by1) = bbox(poly.iter().cloned());
        let contains_mark = [&d.z, &d.w].iter().any(|p| {
            lattice_points_in(p, &bx0, &bx1, &by0, &by1)
                .iter()
                .any(|lp| winding_number(&poly, lp) != 0)
        });
        if contains_mark {
            continue;
        }
        // reroute just across the line, on the side the arc does not visit
        let below = c1.up;
        let delta = clearance(curve, &[&d.z, &d.w], below) / qi(2);
        let y = if below {
            qi(c1.level) - &delta
        } else {
            qi(c1.level) + &delta
        };
        let (a0, a1) = curve.segment(i);
        let p = point_at_height(&a0, &a1, &y);
        let b0 = curve.lifted_vertex(j as i64);
        let b1 = curve.lifted_vertex(j as i64 + 1);
        let qpt = point_at_height(&b0, &b1, &y);
        let mut verts = vec![p, qpt];
        for v in (j + 1)..=(i + n) {
            verts.push(curve.lifted_vertex(v as i64));
        }
        let out = TorusCurve::new(verts, curve.shift);
        return Some(out.simplified());
    }
    None
}

/// Isotope alpha to minimal position with beta by removing empty bigons that
/// avoid the marked points.
pub fn reduce_curve(d: &HeegaardDiagram) -> HeegaardDiagram {
    let mut cur = d.clone();
    cur.alpha = cur.alpha.simplified();
    while let Some(alpha) = remove_one_bigon(&cur) {
        cur.alpha = alpha;
    }
    cur
}

/// Initial diagram acted on by the braid, normalized and reduced.
pub fn knot_diagram(conv: &Conventions, spec: &KnotSpec) -> Result<HeegaardDiagram, DiagramError> {
    let d0 = HeegaardDiagram::initial(conv);
    let d1 = apply_braid(conv, &spec.sigma, &d0);
    let (d2, _) = normalize_epsilon(&d1, spec.epsilon)?;
    Ok(reduce_curve(&d2))
}

/// Intersection of the lifted alpha arc with the lift `y = 0` of beta,
/// located by lifted segment index and parameter along alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftPoint {
    pub point: Point,
    pub seg: i64,
    pub t: Q,
}

/// Lifts of alpha and beta to the plane through the crossings on `y = 0`.
#[derive(Clone, Debug)]
pub struct LiftedDiagram {
    /// Alpha as a periodic curve; its lift is the polyline through
    /// `alpha.lifted_vertex(i)` for all integers `i`.
    pub alpha: TorusCurve,
    pub z: Point,
    pub w: Point,
    /// Points of the lifted alpha on `y = 0`, in order along alpha.
    pub points: Vec<LiftPoint>,
}

impl LiftedDiagram {
    /// Lifted alpha vertices from just before the first intersection to
    /// just after the last.
    pub fn alpha_window(&self) -> Vec<Point> {
        let lo = self.points.first().map(|p| p.seg).unwrap_or(0);
        let hi = self.points.last().map(|p| p.seg + 1).unwrap_or(1);
        (lo..=hi).map(|i| self.alpha.lifted_vertex(i)).collect()
    }

    /// Polyline along the lifted alpha from `a` to `b`.
    pub fn alpha_path(&self, a: &LiftPoint, b: &LiftPoint) -> Vec<Point> {
        let mut out = vec![a.point.clone()];
        if (a.seg, &a.t) <= (b.seg, &b.t) {
            for v in (a.seg + 1)..=b.seg {
                out.push(self.alpha.lifted_vertex(v));
            }
        } else {
            let mut v = a.seg;
            while v > b.seg {
                out.push(self.alpha.lifted_vertex(v));
                v -= 1;
            }
        }
        out.push(b.point.clone());
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha_window": self.alpha_window().iter().map(point_to_json).collect::<Vec<_>>(),
            "beta": [[[0, 1], [0, 1]], [[1, 1], [0, 1]]],
            "z": point_to_json(&self.z),
            "w": point_to_json(&self.w),
            "intersections": self.points.iter().map(|p| point_to_json(&p.point)).collect::<Vec<_>>(),
        })
    }
}

pub fn lift(d: &HeegaardDiagram) -> Result<LiftedDiagram, DiagramError> {
    let alpha = d.alpha.clone();
    let b = alpha.shift.1;
    if b.abs() != 1 {
        return Err(DiagramError::NotAKnotInS3(-b));
    }
    let n = alpha.len() as i64;
    let shift = alpha.shift_vector();
    let mut points: Vec<LiftPoint> = alpha
        .level_crossings()
        .into_iter()
        .map(|c| {
            let k = -c.level * b;
            LiftPoint {
                point: &c.point + &shift.scale(&qi(k)),
                seg: c.seg as i64 + k * n,
                t: c.t,
            }
        })
        .collect();
    points.sort_by(|p, r| (p.seg, &p.t).cmp(&(r.seg, &r.t)));
    Ok(LiftedDiagram {
        alpha,
        z: d.z.clone(),
        w: d.w.clone(),
        points,
    })
}
