//! Chain maps from `C / {j < 0}` to `C / {i < 0}`.

use std::collections::BTreeMap;

use crate::f2::{BitVec, Echelon, Matrix};
use crate::knot_complex::{Arrow, FilteredComplex, KnotGenerator};

use super::SurgeryError;

/// `C` with the roles of the two filtrations exchanged, so that
/// `C / {j < 0}` becomes its `C / {i < 0}`.
pub fn reverse_roles(c: &FilteredComplex) -> FilteredComplex {
    let generators = c
        .generators
        .iter()
        .map(|g| KnotGenerator {
            name: g.name.clone(),
            maslov: g.maslov - 2 * g.alexander,
            alexander: -g.alexander,
        })
        .collect();
    let differential = c
        .differential
        .iter()
        .map(|a| Arrow {
            from: a.from,
            to: a.to,
            u_power: c.j_drop(a) as u32,
        })
        .collect();
    FilteredComplex::new(generators, differential)
}

/// `U`-equivariant map sending generator `x` of the reversed complex to
/// the sum of `U^k y` over its entries `(x, y, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipMap {
    pub entries: Vec<(usize, usize, u32)>,
}

impl FlipMap {
    pub fn identity(n: usize) -> Self {
        FlipMap {
            entries: (0..n).map(|x| (x, x, 0)).collect(),
        }
    }

    pub fn images(&self, n: usize) -> Vec<Vec<(usize, u32)>> {
        let mut out = vec![Vec::new(); n];
        for &(x, y, k) in &self.entries {
            out[x].push((y, k));
        }
        out
    }
}

/// Grading preserving `U`-equivariant maps from the reversed complex to `C`
/// that never raise `i`, one unknown per pair of generators.
fn unknowns(c: &FilteredComplex, r: &FilteredComplex) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for (x, gx) in r.generators.iter().enumerate() {
        for (y, gy) in c.generators.iter().enumerate() {
            let diff = gy.maslov - gx.maslov;
            if diff >= 0 && diff % 2 == 0 {
                out.push((x, y, (diff / 2) as u32));
            }
        }
    }
    out
}

/// Class of `Phi_0(z)` in the hat homology of `C` for the hat cycle `z`
/// of the reversed complex; zero iff the candidate is not an equivalence.
fn hat_degree(c: &FilteredComplex, r: &FilteredComplex, vars: &[(usize, usize, u32)], sol: &BitVec) -> bool {
    let n = c.len();
    let rh = r.hat_matrix(false);
    let ch = c.hat_matrix(false);
    let z = rh.kernel().into_iter().find(|z| !Echelon::of(&rh.cols, r.len()).contains(z));
    let Some(z) = z else {
        return false;
    };
    let mut img = BitVec::zeros(n);
    for v in sol.ones() {
        let (x, y, k) = vars[v];
        if k == 0 && z.get(x) {
            img.flip(y);
        }
    }
    !Echelon::of(&ch.cols, n).contains(&img)
}

fn to_map(vars: &[(usize, usize, u32)], sol: &BitVec) -> FlipMap {
    FlipMap {
        entries: sol.ones().map(|v| vars[v]).collect(),
    }
}

/// Filtered chain homotopy equivalences, up to `limit` of them; the first
/// is the canonical choice.
pub fn flip_equivalences(c: &FilteredComplex, limit: usize) -> Result<Vec<FlipMap>, SurgeryError> {
    let r = reverse_roles(c);
    let vars = unknowns(c, &r);
    // d Phi + Phi d', one equation per (x, z, power)
    let mut eqs: BTreeMap<(usize, usize, u32), Vec<usize>> = BTreeMap::new();
    let cout = c.outgoing();
    let rout = r.outgoing();
    for (v, &(x, y, k)) in vars.iter().enumerate() {
        for a in &cout[y] {
            eqs.entry((x, a.to, k + a.u_power)).or_default().push(v);
        }
    }
    let by_source: BTreeMap<usize, Vec<usize>> = vars.iter().enumerate().fold(BTreeMap::new(), |mut m, (v, t)| {
        m.entry(t.0).or_default().push(v);
        m
    });
    for (x, out) in rout.iter().enumerate().take(r.len()) {
        for a in out {
            for &v in by_source.get(&a.to).into_iter().flatten() {
                let (_, y, k) = vars[v];
                eqs.entry((x, y, a.u_power + k)).or_default().push(v);
            }
        }
    }
    let mut m = Matrix::zeros(eqs.len(), vars.len());
    for (row, vs) in eqs.values().enumerate() {
        for &v in vs {
            m.flip(row, v);
        }
    }
    let kernel = m.kernel();
    let (good, bad): (Vec<BitVec>, Vec<BitVec>) = kernel.into_iter().partition(|s| hat_degree(c, &r, &vars, s));
    let Some(first) = good.first().cloned() else {
        return Err(SurgeryError::FlipNotFound);
    };
    let mut sols = vec![first.clone()];
    for s in good.iter().skip(1).chain(bad.iter()) {
        if sols.len() >= limit {
            break;
        }
        let mut t = first.clone();
        t.xor_assign(s);
        if hat_degree(c, &r, &vars, &t) {
            sols.push(t);
        } else {
            sols.push(s.clone());
        }
    }
    sols.truncate(limit.max(1));
    Ok(sols.iter().map(|s| to_map(&vars, s)).collect())
}

pub fn flip_equivalence(c: &FilteredComplex) -> Result<FlipMap, SurgeryError> {
    Ok(flip_equivalences(c, 1)?.remove(0))
}

/// Whether `map` is a chain map from the reversed complex to `C` that is an
/// isomorphism on hat homology.
pub fn is_flip(c: &FilteredComplex, map: &FlipMap) -> bool {
    let r = reverse_roles(c);
    let mut acc: BTreeMap<(usize, usize, u32), bool> = BTreeMap::new();
    let mut toggle = |key| {
        let e = acc.entry(key).or_insert(false);
        *e = !*e;
    };
    let cout = c.outgoing();
    let img = map.images(r.len());
    for &(x, y, k) in &map.entries {
        if c.generators[y].maslov - 2 * k as i64 != r.generators[x].maslov {
            return false;
        }
        for a in &cout[y] {
            toggle((x, a.to, k + a.u_power));
        }
    }
    for a in &r.differential {
        for &(y, k) in &img[a.to] {
            toggle((a.from, y, a.u_power + k));
        }
    }
    if acc.values().any(|b| *b) {
        return false;
    }
    let vars: Vec<(usize, usize, u32)> = map.entries.clone();
    let all = BitVec::from_indices(vars.len(), 0..vars.len());
    hat_degree(c, &r, &vars, &all)
}
