use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::flip::{flip_equivalence, reverse_roles, FlipMap};
use super::quotient::{QuotientComplex, QuotientKind};
use super::SurgeryError;
use crate::f2::BitVec;
use crate::graded_modules::{deg, FiniteComplex, GradedFUModule};
use crate::knot_complex::FilteredComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipMode {
    /// The flip as an explicit chain map.
    Chain,
    /// Only its effect on homology: the tower of `C / {j < 0}` onto the
    /// tower of `C / {i < 0}`.
    Homology,
}

impl FlipMode {
    pub fn parse(s: &str) -> Option<FlipMode> {
        match s {
            "chain" => Some(FlipMode::Chain),
            "homology" => Some(FlipMode::Homology),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FlipMode::Chain => "chain",
            FlipMode::Homology => "homology",
        }
    }
}

/// Degree offset of `A_s` in the cone; `B_s` sits one lower.
pub fn a_offset(s: i64, n: i64) -> i64 {
    let s0 = s.rem_euclid(n.abs());
    (s * s - s0 * s0) / n - (s - s0)
}

/// Indices of the `A` and `B` copies kept by the truncation.
pub fn window(g: i64, n: i64) -> (Vec<i64>, Vec<i64>) {
    let b = g + n.abs();
    if n > 0 {
        ((-b..=b).collect(), (-b + n..=b).collect())
    } else {
        ((-b + 1..b).collect(), (-b + 1 + n..b).collect())
    }
}

/// The mapping cone of `D_n` restricted to one spin^c class `s = class`
/// mod `n`.
#[derive(Clone, Debug)]
pub struct ClassCone {
    pub class: i64,
    pub a: Vec<(i64, QuotientComplex)>,
    pub b: Vec<(i64, QuotientComplex)>,
    /// `C / {i < 0}` of the reversed complex next to each `B_s`, used by the
    /// homology mode.
    pub b_reversed: Vec<(i64, QuotientComplex)>,
    pub top: i64,
    pub complex: FiniteComplex,
}

#[derive(Clone, Debug)]
pub struct ConeComplex {
    pub n: i64,
    pub genus: i64,
    /// Extra copies kept beyond the genus on each side.
    pub pad: i64,
    pub mode: FlipMode,
    pub flip: FlipMap,
    pub classes: Vec<ClassCone>,
}

/// Top Alexander grading among the generators.
pub fn genus_bound(c: &FilteredComplex) -> i64 {
    c.generators.iter().map(|g| g.alexander.abs()).max().unwrap_or(0)
}

fn h_image(
    c: &FilteredComplex,
    flip: &[Vec<(usize, u32)>],
    s: i64,
    cell: (usize, i64),
    target: &QuotientComplex,
) -> Vec<usize> {
    let (x, i) = cell;
    let ip = i + c.generators[x].alexander - s;
    let mut out = Vec::new();
    for &(y, k) in &flip[x] {
        if let Some(&t) = target.index.get(&(y, ip - k as i64)) {
            out.push(t);
        }
    }
    out
}

fn v_image(cell: (usize, i64), target: &QuotientComplex) -> Option<usize> {
    target.index.get(&cell).copied()
}

/// `U^s` followed by projection, into `C / {j < 0}` written as a quotient of
/// the reversed complex.
fn h_projection(c: &FilteredComplex, s: i64, cell: (usize, i64), target: &QuotientComplex) -> Option<usize> {
    let (x, i) = cell;
    target.index.get(&(x, i + c.generators[x].alexander - s)).copied()
}

impl ClassCone {
    fn build(
        c: &FilteredComplex,
        n: i64,
        class: i64,
        a_idx: &[i64],
        b_idx: &[i64],
        flip: &FlipMap,
        mode: FlipMode,
    ) -> Result<Self, SurgeryError> {
        let m = n.abs();
        let a_idx: Vec<i64> = a_idx.iter().copied().filter(|s| s.rem_euclid(m) == class).collect();
        let b_idx: Vec<i64> = b_idx.iter().copied().filter(|s| s.rem_euclid(m) == class).collect();
        let depth = (a_idx.len() + b_idx.len()) as i64 + c.len() as i64 + 2;
        let bottoms = a_idx
            .iter()
            .map(|&s| QuotientComplex::bottom(c, QuotientKind::A(s), a_offset(s, n)))
            .chain(b_idx.iter().map(|&s| QuotientComplex::bottom(c, QuotientKind::B, a_offset(s, n) - 1)));
        let top = bottoms.max().unwrap_or(0) + 2 * depth;
        let a: Vec<(i64, QuotientComplex)> = a_idx
            .iter()
            .map(|&s| (s, QuotientComplex::new(c, QuotientKind::A(s), a_offset(s, n), top)))
            .collect();
        let b: Vec<(i64, QuotientComplex)> = b_idx
            .iter()
            .map(|&s| (s, QuotientComplex::new(c, QuotientKind::B, a_offset(s, n) - 1, top)))
            .collect();
        let rev = reverse_roles(c);
        let b_reversed: Vec<(i64, QuotientComplex)> = b_idx
            .iter()
            .map(|&s| (s, QuotientComplex::new(&rev, QuotientKind::B, a_offset(s, n) - 1, top)))
            .collect();
        let mut cone = ClassCone {
            class,
            a,
            b,
            b_reversed,
            top,
            complex: FiniteComplex::new(vec![]),
        };
        cone.complex = match mode {
            FlipMode::Chain => cone.chain_level(c, n, flip),
            FlipMode::Homology => cone.homology_level(c, n)?,
        };
        Ok(cone)
    }

    fn b_pos(&self, s: i64) -> Option<usize> {
        self.b.iter().position(|(t, _)| *t == s)
    }

    fn chain_level(&self, c: &FilteredComplex, n: i64, flip: &FlipMap) -> FiniteComplex {
        let mut degrees = Vec::new();
        let mut a_base = Vec::new();
        for (_, q) in &self.a {
            a_base.push(degrees.len());
            degrees.extend(q.complex.degrees.iter().copied());
        }
        let mut b_base = Vec::new();
        for (_, q) in &self.b {
            b_base.push(degrees.len());
            degrees.extend(q.complex.degrees.iter().copied());
        }
        let mut out = FiniteComplex::new(degrees);
        let parts = self.a.iter().zip(&a_base).chain(self.b.iter().zip(&b_base));
        for ((_, q), &base) in parts {
            for j in 0..q.len() {
                for i in q.complex.d.cols[j].ones() {
                    out.add_d(base + j, base + i);
                }
                for i in q.complex.u.cols[j].ones() {
                    out.add_u(base + j, base + i);
                }
            }
        }
        let images = flip.images(c.len());
        for ((s, q), &base) in self.a.iter().zip(&a_base) {
            if let Some(p) = self.b_pos(*s) {
                for (k, cell) in q.cells.iter().enumerate() {
                    if let Some(t) = v_image(*cell, &self.b[p].1) {
                        out.add_d(base + k, b_base[p] + t);
                    }
                }
            }
            if let Some(p) = self.b_pos(s + n) {
                for (k, cell) in q.cells.iter().enumerate() {
                    if c.generators[cell.0].alexander + cell.1 < *s {
                        continue;
                    }
                    for t in h_image(c, &images, *s, *cell, &self.b[p].1) {
                        out.add_d(base + k, b_base[p] + t);
                    }
                }
            }
        }
        out
    }

    fn homology_level(&self, c: &FilteredComplex, n: i64) -> Result<FiniteComplex, SurgeryError> {
        let limit = self.top - 1;
        let ha: Vec<_> = self.a.iter().map(|(_, q)| q.complex.homology()).collect();
        let hb: Vec<_> = self.b.iter().map(|(_, q)| q.complex.homology()).collect();
        let hr: Vec<_> = self.b_reversed.iter().map(|(_, q)| q.complex.homology()).collect();
        // basis: homology classes of every piece below the cut off
        let mut degrees = Vec::new();
        let mut where_: Vec<BTreeMap<i64, usize>> = Vec::new();
        for h in ha.iter().chain(hb.iter()) {
            let mut starts = BTreeMap::new();
            for (&k, dh) in &h.degrees {
                if k <= limit && dh.dim() > 0 {
                    starts.insert(k, degrees.len());
                    degrees.extend(std::iter::repeat_n(k, dh.dim()));
                }
            }
            where_.push(starts);
        }
        let na = self.a.len();
        let mut out = FiniteComplex::new(degrees);
        let pieces: Vec<(&QuotientComplex, &crate::graded_modules::Homology)> = self
            .a
            .iter()
            .map(|(_, q)| q)
            .zip(ha.iter())
            .chain(self.b.iter().map(|(_, q)| q).zip(hb.iter()))
            .collect();
        let put = |out: &mut FiniteComplex, piece: usize, from: usize, deg: i64, v: &BitVec, is_d: bool| {
            let h = pieces[piece].1;
            let Some(dh) = h.degrees.get(&deg) else {
                return;
            };
            let Some(&start) = where_[piece].get(&deg) else {
                return;
            };
            for i in dh.coords(v).ones() {
                if is_d {
                    out.add_d(from, start + i);
                } else {
                    out.add_u(from, start + i);
                }
            }
        };
        for (piece, (q, h)) in pieces.iter().enumerate() {
            for (&k, &start) in &where_[piece] {
                for (r, rep) in h.degrees[&k].reps.iter().enumerate() {
                    let from = start + r;
                    put(&mut out, piece, from, k - 2, &q.complex.u.apply(rep), false);
                    if piece >= na {
                        continue;
                    }
                    let s = self.a[piece].0;
                    if let Some(p) = self.b_pos(s) {
                        let target = &self.b[p].1;
                        let v = BitVec::from_indices(target.len(), rep.ones().filter_map(|j| v_image(q.cells[j], target)));
                        put(&mut out, na + p, from, k - 1, &v, true);
                    }
                    if let Some(p) = self.b_pos(s + n) {
                        let rq = &self.b_reversed[p].1;
                        let v = BitVec::from_indices(
                            rq.len(),
                            rep.ones().filter_map(|j| h_projection(c, s, q.cells[j], rq)),
                        );
                        let Some(dr) = hr[p].degrees.get(&(k - 1)) else {
                            continue;
                        };
                        if dr.dim() == 0 {
                            continue;
                        }
                        if dr.dim() != 1 {
                            return Err(SurgeryError::HomologyMode(format!(
                                "C/{{j<0}} has rank {} in degree {}",
                                dr.dim(),
                                k - 1
                            )));
                        }
                        if dr.is_boundary(&v) {
                            continue;
                        }
                        let hbp = &hb[p];
                        let Some(db) = hbp.degrees.get(&(k - 1)) else {
                            return Err(SurgeryError::HomologyMode("tower degrees differ".into()));
                        };
                        if db.dim() != 1 {
                            return Err(SurgeryError::HomologyMode(format!(
                                "C/{{i<0}} has rank {} in degree {}",
                                db.dim(),
                                k - 1
                            )));
                        }
                        out.add_d(from, where_[na + p][&(k - 1)]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Homology of this summand with the cone's own grading.
    pub fn raw_module(&self) -> GradedFUModule {
        self.complex.homology().plus_module(&self.complex, self.top - 2)
    }
}

pub fn build_cone_with(
    c: &FilteredComplex,
    n: i64,
    mode: FlipMode,
    flip: &FlipMap,
) -> Result<ConeComplex, SurgeryError> {
    build_cone_padded(c, n, mode, flip, 0)
}

/// As [`build_cone_with`], with the truncation widened by `pad` on each side.
pub fn build_cone_padded(
    c: &FilteredComplex,
    n: i64,
    mode: FlipMode,
    flip: &FlipMap,
    pad: i64,
) -> Result<ConeComplex, SurgeryError> {
    if n == 0 {
        return Err(SurgeryError::ZeroSurgeryUnsupported);
    }
    let g = genus_bound(c);
    let (a_idx, b_idx) = window(g + pad.max(0), n);
    let classes = (0..n.abs())
        .map(|t| ClassCone::build(c, n, t, &a_idx, &b_idx, flip, mode))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConeComplex {
        n,
        genus: g,
        pad: pad.max(0),
        mode,
        flip: flip.clone(),
        classes,
    })
}

pub fn build_cone(c: &FilteredComplex, n: i64) -> Result<ConeComplex, SurgeryError> {
    build_cone_mode(c, n, FlipMode::Chain)
}

pub fn build_cone_mode(c: &FilteredComplex, n: i64, mode: FlipMode) -> Result<ConeComplex, SurgeryError> {
    let flip = flip_equivalence(c)?;
    build_cone_with(c, n, mode, &flip)
}

impl ConeComplex {
    /// Cornerstone of the tower of each class for the unknot.
    fn unknot_calibration(&self) -> Vec<i64> {
        let u = FilteredComplex::unknot();
        let cone = build_cone_with(&u, self.n, FlipMode::Chain, &FlipMap::identity(1)).expect("unknot cone");
        cone.classes
            .iter()
            .map(|k| {
                let m = k.raw_module();
                m.towers[0].to_integer()
            })
            .collect()
    }

    /// Homology summed over classes, each class shifted so that the unknot
    /// with the same coefficient has its tower in degree zero.
    pub fn homology(&self) -> GradedFUModule {
        let cal = self.unknot_calibration();
        let mut total = GradedFUModule::zero(crate::graded_modules::Flavor::Plus);
        for (k, e) in self.classes.iter().zip(cal) {
            total = total.direct_sum(&k.raw_module().shift(deg(-e)));
        }
        total
    }

    /// Whether the gradings are absolute or only relative to the matching
    /// unknot surgery.
    pub fn absolute(&self) -> bool {
        self.n.abs() == 1
    }

    pub fn is_valid(&self) -> bool {
        self.classes.iter().all(|k| k.complex.is_valid())
    }

    pub fn metadata(&self) -> Value {
        json!({
            "n": self.n,
            "genus_bound": self.genus,
            "window": window(self.genus + self.pad, self.n).0,
            "flip_mode": self.mode.name(),
            "grading": if self.absolute() { "absolute" } else { "relative to the same surgery on the unknot" },
        })
    }
}

pub fn cone_homology(cone: &ConeComplex) -> GradedFUModule {
    cone.homology()
}

/// Homology of the cone of `D_n` on `K`.
pub fn surgery_homology(c: &FilteredComplex, n: i64, mode: FlipMode) -> Result<GradedFUModule, SurgeryError> {
    Ok(build_cone_mode(c, n, mode)?.homology())
}
