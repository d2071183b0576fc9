//! Domains between intersection points of the lifted diagram.

use num_traits::{One, Signed, Zero};

use super::complex::{Arrow, ComplexError, FilteredComplex, KnotGenerator};
use crate::braid_diagram::curve::{bbox, lattice_points_in};
use crate::braid_diagram::{LiftPoint, LiftedDiagram};
use crate::geom::{dist2_point_segment, turning_number, winding_number, Point, Q};

/// The domain of the loop running along alpha from one intersection point
/// to another and back along beta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub from: usize,
    pub to: usize,
    pub positive: bool,
    pub maslov_index: i64,
    pub nz: i64,
    pub nw: i64,
}

/// Domain counted by the differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigon {
    pub from: usize,
    pub to: usize,
    pub nz: i64,
    pub nw: i64,
}

fn linf(v: &Point) -> Q {
    let (a, b) = (v.x.abs(), v.y.abs());
    if a > b {
        a
    } else {
        b
    }
}

/// A step `eps` with `(eps * scale)^2 < bound / 4`.
fn small_step(scale2: &Q, bound: &Q) -> Q {
    assert!(bound.is_positive(), "sample point on the loop");
    let mut eps = Q::one();
    let four = Q::from_integer(4.into());
    while &(&eps * &eps) * scale2 * &four >= *bound {
        eps /= Q::from_integer(2.into());
    }
    eps
}

fn edges_of(poly: &[Point]) -> Vec<(Point, Point)> {
    let n = poly.len();
    (0..n).map(|i| (poly[i].clone(), poly[(i + 1) % n].clone())).collect()
}

/// Multiplicity of the region just to the right of the midpoint of the
/// piece `a -> b` of edge `e`.
fn right_multiplicity(poly: &[Point], edges: &[(Point, Point)], e: usize, a: &Point, b: &Point) -> i64 {
    let m = a.lerp(b, &Q::new(1.into(), 2.into()));
    let d = b - a;
    let normal = Point::new(d.y.clone(), -&d.x);
    let bound = edges
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != e)
        .map(|(_, (p, q))| dist2_point_segment(&m, p, q))
        .min()
        .expect("loop has several edges");
    let eps = small_step(&normal.norm2(), &bound);
    winding_number(poly, &(&m + &normal.scale(&eps)))
}

/// Multiplicity of the quadrant at corner `c` opposite to the one between
/// the incoming and outgoing edges.
fn opposite_quadrant(poly: &[Point], corner: usize) -> i64 {
    let n = poly.len();
    let c = &poly[corner];
    let prev = &poly[(corner + n - 1) % n];
    let next = &poly[(corner + 1) % n];
    let din = c - prev;
    let dout = next - c;
    let dir = &din.scale(&(Q::one() / linf(&din))) - &dout.scale(&(Q::one() / linf(&dout)));
    let edges = edges_of(poly);
    let bound = edges
        .iter()
        .filter(|(p, q)| p != c && q != c)
        .map(|(p, q)| dist2_point_segment(c, p, q))
        .min()
        .expect("loop has several edges");
    let eps = small_step(&dir.norm2(), &bound);
    winding_number(poly, &(c + &dir.scale(&eps)))
}

fn marked_count(poly: &[Point], p: &Point) -> i64 {
    let (x0, x1, y0, y1) = bbox(poly.iter().cloned());
    lattice_points_in(p, &x0, &x1, &y0, &y1)
        .iter()
        .map(|lp| winding_number(poly, lp))
        .sum()
}

fn on_path<'a>(lifted: &'a LiftedDiagram, x: &LiftPoint, y: &LiftPoint) -> Vec<&'a Point> {
    let lo = std::cmp::min((x.seg, &x.t), (y.seg, &y.t));
    let hi = std::cmp::max((x.seg, &x.t), (y.seg, &y.t));
    lifted
        .points
        .iter()
        .filter(|p| (p.seg, &p.t) > lo && (p.seg, &p.t) < hi)
        .map(|p| &p.point)
        .collect()
}

/// Whether every region of the loop has nonnegative multiplicity. The
/// multiplicity to the right of the loop only changes where the loop meets
/// itself, which happens at intersection points, so one sample per stretch
/// between them suffices.
fn loop_is_positive(poly: &[Point], cuts_at: &[&Point]) -> bool {
    let edges = edges_of(poly);
    let mut need = true;
    for (e, (a, b)) in edges.iter().enumerate() {
        let d = b - a;
        let mut cuts: Vec<Q> = Vec::new();
        for p in cuts_at {
            let rel = *p - a;
            if rel.cross(&d).is_zero() {
                let t = rel.dot(&d) / d.norm2();
                if t.is_positive() && t < Q::one() {
                    cuts.push(t);
                }
            }
        }
        cuts.push(Q::zero());
        cuts.push(Q::one());
        cuts.sort();
        cuts.dedup();
        // the corner at the far end of alpha
        if e + 1 == edges.len() {
            need = true;
        }
        for w in cuts.windows(2) {
            if need {
                let (pa, pb) = (a.lerp(b, &w[0]), a.lerp(b, &w[1]));
                if right_multiplicity(poly, &edges, e, &pa, &pb) < 0 {
                    return false;
                }
                need = false;
            }
            if !w[1].is_one() {
                need = true;
            }
        }
    }
    true
}

fn counts(lifted: &LiftedDiagram, poly: &[Point]) -> (i64, i64, i64) {
    let last = poly.len() - 1;
    let maslov_index = turning_number(poly) + opposite_quadrant(poly, 0) + opposite_quadrant(poly, last);
    (
        maslov_index,
        marked_count(poly, &lifted.z),
        marked_count(poly, &lifted.w),
    )
}

/// Domain from intersection point `i` to intersection point `j`.
pub fn domain(lifted: &LiftedDiagram, i: usize, j: usize) -> Domain {
    let (x, y) = (&lifted.points[i], &lifted.points[j]);
    let poly = lifted.alpha_path(x, y);
    let (maslov_index, nz, nw) = counts(lifted, &poly);
    Domain {
        from: i,
        to: j,
        positive: loop_is_positive(&poly, &on_path(lifted, x, y)),
        maslov_index,
        nz,
        nw,
    }
}

/// All domains of the diagram, indexed `[from][to]`.
pub fn all_domains(lifted: &LiftedDiagram) -> Vec<Vec<Option<Domain>>> {
    let n = lifted.points.len();
    (0..n)
        .map(|i| (0..n).map(|j| (i != j).then(|| domain(lifted, i, j))).collect())
        .collect()
}

/// `(maslov index, n_z, n_w)` of the domains from the first point to every
/// point. Domains in the plane add, so these determine all the others.
fn base_counts(lifted: &LiftedDiagram) -> Vec<(i64, i64, i64)> {
    let n = lifted.points.len();
    let x = &lifted.points[0];
    (0..n)
        .map(|j| {
            if j == 0 {
                (0, 0, 0)
            } else {
                counts(lifted, &lifted.alpha_path(x, &lifted.points[j]))
            }
        })
        .collect()
}

/// Positive Maslov index one domains; each contributes one to the
/// differential.
pub fn find_bigons(lifted: &LiftedDiagram) -> Vec<Bigon> {
    bigons(lifted, &base_counts(lifted)).unwrap_or_default()
}

fn bigons(lifted: &LiftedDiagram, base: &[(i64, i64, i64)]) -> Result<Vec<Bigon>, ComplexError> {
    let n = lifted.points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let predicted = (base[j].0 - base[i].0, base[j].1 - base[i].1, base[j].2 - base[i].2);
            if predicted.0 != 1 || predicted.1 < 0 || predicted.2 < 0 {
                continue;
            }
            let d = domain(lifted, i, j);
            if (d.maslov_index, d.nz, d.nw) != predicted {
                return Err(ComplexError::DisconnectedGradingGraph);
            }
            if d.positive {
                out.push(Bigon {
                    from: i,
                    to: j,
                    nz: d.nz,
                    nw: d.nw,
                });
            }
        }
    }
    Ok(out)
}

/// Complex of the lifted diagram with absolute gradings.
pub fn complex_from_diagram(lifted: &LiftedDiagram) -> Result<FilteredComplex, ComplexError> {
    if lifted.points.is_empty() {
        return Err(ComplexError::DisconnectedGradingGraph);
    }
    let base = base_counts(lifted);
    // M(x) - M(y) = mu - 2 n_w and A(x) - A(y) = n_z - n_w for the domain x -> y
    let generators = base
        .iter()
        .enumerate()
        .map(|(i, &(mu, nz, nw))| KnotGenerator {
            name: format!("x{}", i + 1),
            maslov: 2 * nw - mu,
            alexander: nw - nz,
        })
        .collect();
    let arrows = bigons(lifted, &base)?
        .into_iter()
        .map(|b| Arrow {
            from: b.from,
            to: b.to,
            u_power: b.nw as u32,
        })
        .collect();
    let mut c = FilteredComplex::new(generators, arrows);
    normalize_gradings(&mut c)?;
    c.check()?;
    Ok(c)
}

/// Shift gradings so that the knot homology is symmetric and the homology
/// with only `w` blocked sits in degree zero.
pub fn normalize_gradings(c: &mut FilteredComplex) -> Result<(), ComplexError> {
    let hfk = c.hfk_hat();
    let (amin, amax) = match (hfk.keys().map(|k| k.0).min(), hfk.keys().map(|k| k.0).max()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(ComplexError::NotAComplex),
    };
    if (amin + amax) % 2 != 0 {
        return Err(ComplexError::Malformed("knot homology cannot be made symmetric".into()));
    }
    c.shift_alexander(-(amin + amax) / 2);
    let hat = c.hat_homology(false);
    if hat.len() != 1 || hat.values().next() != Some(&1) {
        return Err(ComplexError::Malformed(format!(
            "hat homology of the diagram is not one copy of F: {hat:?}"
        )));
    }
    let d = hat.keys().next().expect("one entry").1;
    c.shift_maslov(-d);
    Ok(())
}
