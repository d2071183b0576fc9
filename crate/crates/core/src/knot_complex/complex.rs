use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2::{BitVec, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("differential does not square to zero")]
    NotAComplex,
    #[error("arrow {from} -> {to} has Maslov drop {drop}, expected 1")]
    BadMaslovDrop { from: String, to: String, drop: i64 },
    #[error("arrow {from} -> {to} raises a filtration level")]
    FiltrationIncreases { from: String, to: String },
    #[error("relative gradings are not determined by the diagram")]
    DisconnectedGradingGraph,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed complex: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotGenerator {
    pub name: String,
    pub maslov: i64,
    pub alexander: i64,
}

/// Component `from -> U^u_power to` of the differential of `CFK^infinity`,
/// read with `[x, i, j] -> [y, i - u_power, j - u_power - A(x) + A(y)]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub u_power: u32,
}

/// Bifiltered complex over `F[U]` given by generators and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    pub generators: Vec<KnotGenerator>,
    pub differential: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
struct JsonArrow {
    from: String,
    to: String,
    u_power: u32,
}

#[derive(Serialize, Deserialize)]
struct JsonComplex {
    generators: Vec<KnotGenerator>,
    differential: Vec<JsonArrow>,
}

impl FilteredComplex {
    pub fn new(generators: Vec<KnotGenerator>, mut differential: Vec<Arrow>) -> Self {
        differential.sort();
        differential.dedup_by(|a, b| a == b);
        FilteredComplex {
            generators,
            differential,
        }
    }

    pub fn unknot() -> Self {
        FilteredComplex::new(
            vec![KnotGenerator {
                name: "x1".into(),
                maslov: 0,
                alexander: 0,
            }],
            vec![],
        )
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Arrows leaving each generator.
    pub fn outgoing(&self) -> Vec<Vec<&Arrow>> {
        let mut out = vec![Vec::new(); self.len()];
        for a in &self.differential {
            out[a.from].push(a);
        }
        out
    }

    /// Change in `j` along an arrow.
    pub fn j_drop(&self, a: &Arrow) -> i64 {
        a.u_power as i64 + self.generators[a.from].alexander - self.generators[a.to].alexander
    }

    pub fn check(&self) -> Result<(), ComplexError> {
        for a in &self.differential {
            let (x, y) = (&self.generators[a.from], &self.generators[a.to]);
            let drop = x.maslov - (y.maslov - 2 * a.u_power as i64);
            if drop != 1 {
                return Err(ComplexError::BadMaslovDrop {
                    from: x.name.clone(),
                    to: y.name.clone(),
                    drop,
                });
            }
            if self.j_drop(a) < 0 {
                return Err(ComplexError::FiltrationIncreases {
                    from: x.name.clone(),
                    to: y.name.clone(),
                });
            }
        }
        if !self.d_squared_is_zero() {
            return Err(ComplexError::NotAComplex);
        }
        Ok(())
    }

    /// `d^2 = 0` over `F[U]`, checked in each power of `U`.
    pub fn d_squared_is_zero(&self) -> bool {
        let out = self.outgoing();
        for x in 0..self.len() {
            let mut acc: BTreeMap<(usize, u32), bool> = BTreeMap::new();
            for a in &out[x] {
                for b in &out[a.to] {
                    let e = acc.entry((b.to, a.u_power + b.u_power)).or_insert(false);
                    *e = !*e;
                }
            }
            if acc.values().any(|v| *v) {
                return false;
            }
        }
        true
    }

    /// Complex with `U = 0` and, if `block_z`, also the arrows crossing `z`
    /// removed: the hat flavours.
    pub fn hat_matrix(&self, block_z: bool) -> Matrix {
        let n = self.len();
        let mut m = Matrix::zeros(n, n);
        for a in &self.differential {
            if a.u_power == 0 && (!block_z || self.j_drop(a) == 0) {
                m.flip(a.to, a.from);
            }
        }
        m
    }

    /// Ranks of the homology of a hat flavour, by `(alexander, maslov)`.
    /// With `block_z = false` the Alexander grading is not preserved and
    /// only the Maslov grading is meaningful (Alexander reported as 0).
    pub fn hat_homology(&self, block_z: bool) -> BTreeMap<(i64, i64), usize> {
        let n = self.len();
        let m = self.hat_matrix(block_z);
        let key = |i: usize| {
            let g = &self.generators[i];
            (if block_z { g.alexander } else { 0 }, g.maslov)
        };
        let mut keys: Vec<(i64, i64)> = (0..n).map(key).collect();
        keys.sort();
        keys.dedup();
        let mut out = BTreeMap::new();
        for k in keys {
            let here: Vec<usize> = (0..n).filter(|&i| key(i) == k).collect();
            let below_key = (k.0, k.1 - 1);
            let above_key = (k.0, k.1 + 1);
            let below: Vec<usize> = (0..n).filter(|&i| key(i) == below_key).collect();
            let above: Vec<usize> = (0..n).filter(|&i| key(i) == above_key).collect();
            let sub = |src: &[usize], dst: &[usize]| {
                let mut s = Matrix::zeros(dst.len(), src.len());
                for (cj, &j) in src.iter().enumerate() {
                    for (ri, &i) in dst.iter().enumerate() {
                        if m.get(i, j) {
                            s.flip(ri, cj);
                        }
                    }
                }
                s
            };
            let out_rank = sub(&here, &below).rank();
            let in_rank = sub(&above, &here).rank();
            let h = here.len() - out_rank - in_rank;
            if h > 0 {
                out.insert(k, h);
            }
        }
        out
    }

    /// `sum_x (-1)^M(x) t^A(x)` as exponent to coefficient.
    pub fn alexander_polynomial(&self) -> BTreeMap<i64, i64> {
        let mut p = BTreeMap::new();
        for g in &self.generators {
            let s = if g.maslov.rem_euclid(2) == 0 { 1 } else { -1 };
            *p.entry(g.alexander).or_insert(0) += s;
        }
        p.retain(|_, c| *c != 0);
        p
    }

    /// Arrows of `d` as a matrix on `F[U]`-generators at fixed `U` power.
    pub fn matrix_at_power(&self, u: u32) -> Matrix {
        let n = self.len();
        let mut m = Matrix::zeros(n, n);
        for a in self.differential.iter().filter(|a| a.u_power == u) {
            m.flip(a.to, a.from);
        }
        m
    }

    pub fn shift_alexander(&mut self, s: i64) {
        for g in &mut self.generators {
            g.alexander += s;
        }
    }

    pub fn shift_maslov(&mut self, s: i64) {
        for g in &mut self.generators {
            g.maslov += s;
        }
    }

    /// Mirror image: the dual complex.
    pub fn dual(&self) -> FilteredComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| KnotGenerator {
                name: g.name.clone(),
                maslov: -g.maslov,
                alexander: -g.alexander,
            })
            .collect();
        let differential = self
            .differential
            .iter()
            .map(|a| Arrow {
                from: a.to,
                to: a.from,
                u_power: a.u_power,
            })
            .collect();
        FilteredComplex::new(generators, differential)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = JsonComplex {
            generators: self.generators.clone(),
            differential: self
                .differential
                .iter()
                .map(|a| JsonArrow {
                    from: self.generators[a.from].name.clone(),
                    to: self.generators[a.to].name.clone(),
                    u_power: a.u_power,
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ComplexError> {
        let j: JsonComplex =
            serde_json::from_value(v.clone()).map_err(|e| ComplexError::Malformed(e.to_string()))?;
        let mut names = BTreeMap::new();
        for (i, g) in j.generators.iter().enumerate() {
            if names.insert(g.name.clone(), i).is_some() {
                return Err(ComplexError::Malformed(format!("duplicate generator `{}`", g.name)));
            }
        }
        let look = |s: &str| names.get(s).copied().ok_or_else(|| ComplexError::UnknownGenerator(s.into()));
        let mut differential = Vec::new();
        let mut seen = BTreeMap::new();
        for a in &j.differential {
            let arrow = Arrow {
                from: look(&a.from)?,
                to: look(&a.to)?,
                u_power: a.u_power,
            };
            // repeated entries cancel over F
            *seen.entry(arrow).or_insert(0usize) += 1;
        }
        for (a, c) in seen {
            if c % 2 == 1 {
                differential.push(a);
            }
        }
        let c = FilteredComplex::new(j.generators, differential);
        c.check()?;
        Ok(c)
    }

    /// Graded ranks of the hat knot homology indexed as `(alexander, maslov)`.
    pub fn hfk_hat(&self) -> BTreeMap<(i64, i64), usize> {
        self.hat_homology(true)
    }

    /// Vector with ones at the named generators.
    pub fn chain(&self, names: &[&str]) -> Result<BitVec, ComplexError> {
        let mut v = BitVec::zeros(self.len());
        for n in names {
            let i = self.index_of(n).ok_or_else(|| ComplexError::UnknownGenerator((*n).into()))?;
            v.flip(i);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> FilteredComplex {
        // left-handed trefoil: a -> b and c -> U b
        let g = |n: &str, m, a| KnotGenerator {
            name: n.into(),
            maslov: m,
            alexander: a,
        };
        FilteredComplex::new(
            vec![g("a", 2, 1), g("b", 1, 0), g("c", 0, -1)],
            vec![
                Arrow { from: 0, to: 1, u_power: 0 },
                Arrow { from: 2, to: 1, u_power: 1 },
            ],
        )
    }

    #[test]
    fn unknot_is_valid() {
        let u = FilteredComplex::unknot();
        u.check().unwrap();
        assert_eq!(u.hfk_hat().len(), 1);
        assert_eq!(u.alexander_polynomial(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn json_round_trip() {
        let t = trefoil();
        t.check().unwrap();
        assert_eq!(t.hfk_hat().len(), 3);
        assert_eq!(t.hat_homology(false), BTreeMap::from([((0, 0), 1)]));
        let v = t.to_json();
        let back = FilteredComplex::from_json(&v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn dual_flips_gradings() {
        let t = trefoil().dual();
        assert_eq!(t.generators[0].maslov, -2);
        assert_eq!(t.alexander_polynomial(), BTreeMap::from([(-1, 1), (0, -1), (1, 1)]));
    }
}
