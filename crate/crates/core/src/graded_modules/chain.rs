//! Finite graded chain complexes over `F` with a nilpotent `U` action.

use std::collections::BTreeMap;

use super::module::{deg, Flavor, GradedFUModule, Torsion};
use crate::f2::{BitVec, Echelon, Matrix};

/// Basis elements with integer degrees, a differential of degree -1 and a
/// `U` map of degree -2 commuting with it.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    pub degrees: Vec<i64>,
    pub d: Matrix,
    pub u: Matrix,
}

impl FiniteComplex {
    pub fn new(degrees: Vec<i64>) -> Self {
        let n = degrees.len();
        FiniteComplex {
            degrees,
            d: Matrix::zeros(n, n),
            u: Matrix::zeros(n, n),
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn add_d(&mut self, from: usize, to: usize) {
        debug_assert_eq!(self.degrees[to], self.degrees[from] - 1);
        self.d.flip(to, from);
    }

    pub fn add_u(&mut self, from: usize, to: usize) {
        debug_assert_eq!(self.degrees[to], self.degrees[from] - 2);
        self.u.flip(to, from);
    }

    /// `d^2 = 0`, `dU = Ud` and both maps homogeneous.
    pub fn is_valid(&self) -> bool {
        let n = self.len();
        for j in 0..n {
            if self.d.cols[j].ones().any(|i| self.degrees[i] != self.degrees[j] - 1) {
                return false;
            }
            if self.u.cols[j].ones().any(|i| self.degrees[i] != self.degrees[j] - 2) {
                return false;
            }
        }
        self.d.mul(&self.d).is_zero() && self.d.mul(&self.u) == self.u.mul(&self.d)
    }

    pub fn by_degree(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, d) in self.degrees.iter().enumerate() {
            m.entry(*d).or_default().push(i);
        }
        m
    }

    pub fn homology(&self) -> Homology {
        Homology::of(self)
    }
}

/// Homology of one degree: a basis of boundaries, cycle representatives of
/// a basis of the homology, and an echelon form to read off coordinates.
#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub boundaries: Vec<BitVec>,
    pub reps: Vec<BitVec>,
    solver: Echelon,
}

impl DegreeHomology {
    /// Coordinates of the class of a cycle `v` in the basis `reps`.
    pub fn coords(&self, v: &BitVec) -> BitVec {
        let comb = self.solver.solve(v).expect("vector is a cycle of this degree");
        let nb = self.boundaries.len();
        BitVec::from_indices(self.reps.len(), comb.ones().filter(|&i| i >= nb).map(|i| i - nb))
    }

    pub fn is_boundary(&self, v: &BitVec) -> bool {
        self.coords(v).is_zero()
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub len: usize,
    pub degrees: BTreeMap<i64, DegreeHomology>,
}

impl Homology {
    pub fn of(c: &FiniteComplex) -> Self {
        let n = c.len();
        let groups = c.by_degree();
        let mut degrees = BTreeMap::new();
        for (&k, idx) in &groups {
            let mut local = Matrix::zeros(n, idx.len());
            for (col, &i) in idx.iter().enumerate() {
                local.cols[col] = c.d.cols[i].clone();
            }
            let cycles: Vec<BitVec> = local
                .kernel()
                .into_iter()
                .map(|comb| BitVec::from_indices(n, comb.ones().map(|t| idx[t])))
                .collect();
            let mut b = Echelon::new(n);
            let mut boundaries = Vec::new();
            if let Some(above) = groups.get(&(k + 1)) {
                for &i in above {
                    let v = c.d.cols[i].clone();
                    if b.insert(v.clone()) {
                        boundaries.push(v);
                    }
                }
            }
            let mut solver = Echelon::of(&boundaries, n);
            let mut reps = Vec::new();
            for z in cycles {
                if !solver.contains(&z) {
                    solver.insert(z.clone());
                    reps.push(z);
                }
            }
            degrees.insert(k, DegreeHomology { boundaries, reps, solver });
        }
        Homology { len: n, degrees }
    }

    pub fn dim(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, |h| h.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(|h| h.dim()).sum()
    }

    /// Rank of `U^m` from degree `k` to degree `k - 2m`.
    pub fn u_rank(&self, c: &FiniteComplex, k: i64, m: u32) -> usize {
        let (Some(src), Some(dst)) = (self.degrees.get(&k), self.degrees.get(&(k - 2 * m as i64))) else {
            return 0;
        };
        let mut e = Echelon::of(&dst.boundaries, self.len);
        let base = e.rank();
        for r in &src.reps {
            let mut v = r.clone();
            for _ in 0..m {
                v = c.u.apply(&v);
            }
            e.insert(v);
        }
        e.rank() - base
    }

    /// Decomposition into cyclic summands of the homology in degrees at
    /// most `top`, as `(generator degree, order)` with multiplicity.
    pub fn cyclic_summands(&self, c: &FiniteComplex, top: i64) -> BTreeMap<(i64, u32), usize> {
        let ks: Vec<i64> = self.degrees.keys().copied().filter(|&k| k <= top && self.dim(k) > 0).collect();
        let mut cache: BTreeMap<(i64, u32), usize> = BTreeMap::new();
        let mut rank = |k: i64, m: u32| -> usize {
            if k > top {
                return 0;
            }
            *cache.entry((k, m)).or_insert_with(|| if m == 0 { self.dim(k) } else { self.u_rank(c, k, m) })
        };
        let mut out = BTreeMap::new();
        for &k in &ks {
            let mut order = 1u32;
            loop {
                let here = rank(k, order - 1) as i64 - rank(k + 2, order) as i64;
                if here <= 0 {
                    break;
                }
                let longer = rank(k, order) as i64 - rank(k + 2, order + 1) as i64;
                if here > longer {
                    out.insert((k, order), (here - longer) as usize);
                }
                order += 1;
            }
        }
        out
    }

    /// The homology as a plus flavoured module, with summands meeting the
    /// two top degrees read as towers.
    pub fn plus_module(&self, c: &FiniteComplex, top: i64) -> GradedFUModule {
        let mut towers = Vec::new();
        let mut torsion = Vec::new();
        for ((k, order), mult) in self.cyclic_summands(c, top) {
            for _ in 0..mult {
                if k >= top - 1 {
                    towers.push(deg(k - 2 * (order as i64 - 1)));
                } else {
                    torsion.push(Torsion { degree: deg(k), order });
                }
            }
        }
        GradedFUModule::new(Flavor::Plus, towers, torsion).expect("orders are positive")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Truncated tower with `k` elements starting at degree 0, plus one
    /// copy of `F` in degree `t`.
    fn sample(k: usize, t: i64) -> FiniteComplex {
        let mut degrees: Vec<i64> = (0..k as i64).map(|i| 2 * i).collect();
        degrees.push(t);
        let mut c = FiniteComplex::new(degrees);
        for i in 1..k {
            c.add_u(i, i - 1);
        }
        c
    }

    #[test]
    fn tower_and_field() {
        let c = sample(6, -1);
        assert!(c.is_valid());
        let h = c.homology();
        let m = h.plus_module(&c, 10);
        assert_eq!(m.to_string(), "T+(0) + F(-1)");
    }

    #[test]
    fn acyclic_pair() {
        let mut c = FiniteComplex::new(vec![1, 0]);
        c.add_d(0, 1);
        assert!(c.is_valid());
        assert_eq!(c.homology().total_dim(), 0);
    }

    #[test]
    fn torsion_of_order_two() {
        // F[U]/U^2 generated in degree 2
        let mut c = FiniteComplex::new(vec![2, 0]);
        c.add_u(0, 1);
        let h = c.homology();
        let s = h.cyclic_summands(&c, 20);
        assert_eq!(s, BTreeMap::from([((2, 2), 1)]));
    }
}
