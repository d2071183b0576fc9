//! Intersection lattices of blow-ups and their isometries.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("class has length {0}, lattice has rank {1}")]
    DimensionMismatch(usize, usize),
    #[error("class has square {0}, expected -1")]
    BadClass(i64),
    #[error("class is not characteristic")]
    NotCharacteristic,
}

pub type LatticeClass = Vec<i64>;

/// Symmetric integer pairing stored by rows of nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    pub rows: Vec<Vec<(usize, i64)>>,
    pub labels: Vec<String>,
}

/// Integer matrix acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub matrix: Vec<Vec<i64>>,
}

impl IntegerLattice {
    pub fn diagonal(entries: &[i64], labels: Vec<String>) -> Self {
        IntegerLattice {
            rows: entries.iter().enumerate().map(|(i, &e)| vec![(i, e)]).collect(),
            labels,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i].iter().find(|(k, _)| *k == j).map_or(0, |e| e.1)
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi != 0 {
                s += xi * self.rows[i].iter().map(|&(j, g)| g * y[j]).sum::<i64>();
            }
        }
        s
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.iter().all(|&(j, _)| j == i))
    }

    pub fn signature(&self) -> i64 {
        assert!(self.is_diagonal(), "signature is only computed for diagonal lattices");
        (0..self.rank()).map(|i| self.entry(i, i).signum()).sum()
    }

    pub fn determinant(&self) -> i64 {
        assert!(self.is_diagonal(), "determinant is only computed for diagonal lattices");
        (0..self.rank()).map(|i| self.entry(i, i)).product()
    }

    fn check(&self, x: &[i64]) -> Result<(), LatticeError> {
        if x.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch(x.len(), self.rank()));
        }
        Ok(())
    }

    pub fn is_characteristic(&self, c: &[i64]) -> bool {
        (0..self.rank()).all(|i| {
            let ci: i64 = self.rows[i].iter().map(|&(j, g)| g * c[j]).sum();
            (ci - self.entry(i, i)).rem_euclid(2) == 0
        })
    }

    pub fn preserves(&self, m: &Isometry) -> bool {
        let n = self.rank();
        let cols: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| m.matrix[i][j]).collect()).collect();
        (0..n).all(|i| (0..n).all(|j| self.pair(&cols[i], &cols[j]) == self.entry(i, j)))
    }
}

/// `<1> + <-1>^((2m+1)^2 + 1)` with basis `H, E1, E2, ...`.
pub fn blowup_lattice(m: u32) -> IntegerLattice {
    let k = (2 * m as usize + 1).pow(2) + 1;
    let mut entries = vec![1];
    entries.extend(std::iter::repeat_n(-1, k));
    let mut labels = vec!["H".to_string()];
    labels.extend((1..=k).map(|i| format!("E{i}")));
    IntegerLattice::diagonal(&entries, labels)
}

/// `(2m+1) H - sum E_i`.
pub fn alpha_class(l: &IntegerLattice, m: u32) -> Result<LatticeClass, LatticeError> {
    let want = (2 * m as usize + 1).pow(2) + 2;
    if l.rank() != want {
        return Err(LatticeError::DimensionMismatch(want, l.rank()));
    }
    let mut a = vec![-1; want];
    a[0] = 2 * m as i64 + 1;
    Ok(a)
}

impl Isometry {
    pub fn identity(n: usize) -> Self {
        Isometry {
            matrix: (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect(),
        }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        let n = self.matrix.len();
        Isometry {
            matrix: (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect())
                .collect(),
        }
    }
}

/// `x -> x + 2 <x, a> a` for a class of square `-1`.
pub fn reflection(l: &IntegerLattice, a: &[i64]) -> Result<Isometry, LatticeError> {
    l.check(a)?;
    let sq = l.pair(a, a);
    if sq != -1 {
        return Err(LatticeError::BadClass(sq));
    }
    let n = l.rank();
    let mut matrix = vec![vec![0i64; n]; n];
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let t = 2 * l.pair(&e, a);
        for i in 0..n {
            matrix[i][j] = e[i] + t * a[i];
        }
    }
    let r = Isometry { matrix };
    debug_assert!(l.preserves(&r));
    debug_assert_eq!(r.compose(&r), Isometry::identity(n));
    Ok(r)
}

/// `(c1^2 - 2 chi - 3 sigma) / 4` with `chi = 2 + rank`.
pub fn formal_dimension(l: &IntegerLattice, c1: &[i64]) -> Result<Rational64, LatticeError> {
    l.check(c1)?;
    if !l.is_characteristic(c1) {
        return Err(LatticeError::NotCharacteristic);
    }
    let chi = 2 + l.rank() as i64;
    Ok(Rational64::new(l.pair(c1, c1) - 2 * chi - 3 * l.signature(), 4))
}

/// `2^k k!`.
pub fn count_signed_permutation_isometries(k: u32) -> BigUint {
    let mut n = BigUint::one() << k as usize;
    for i in 2..=k {
        n *= i;
    }
    n
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Every signed permutation of `k` coordinates, as a matrix.
pub fn signed_permutations(k: usize) -> Vec<Isometry> {
    let mut out = Vec::new();
    for p in permutations(k) {
        for signs in 0..1u32 << k {
            let mut matrix = vec![vec![0i64; k]; k];
            for (j, &i) in p.iter().enumerate() {
                matrix[i][j] = if signs >> j & 1 == 1 { -1 } else { 1 };
            }
            out.push(Isometry { matrix });
        }
    }
    out
}

/// Compose the reflection in `alpha_m` with each signed permutation of the
/// last `k` exceptional classes, keeping the pairwise distinct composites.
pub fn enumerate_distinct_twisted_isometries(l: &IntegerLattice, m: u32, k: usize) -> Result<Vec<Isometry>, LatticeError> {
    let n = l.rank();
    let rho = reflection(l, &alpha_class(l, m)?)?;
    let off = n - k;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in signed_permutations(k) {
        let mut phi = Isometry::identity(n);
        for i in 0..k {
            for j in 0..k {
                phi.matrix[off + i][off + j] = s.matrix[i][j];
            }
        }
        let r = phi.compose(&rho);
        assert!(l.preserves(&r));
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_blowups() {
        let l = blowup_lattice(1);
        assert_eq!(l.rank(), 11);
        assert_eq!(l.signature(), -9);
        assert_eq!(blowup_lattice(2).rank(), 27);
        assert_eq!(l.determinant().abs(), 1);
    }

    #[test]
    fn reflection_examples() {
        let l = blowup_lattice(2);
        let a = alpha_class(&l, 2).unwrap();
        let r = reflection(&l, &a).unwrap();
        assert_eq!(r.apply(&a), a.iter().map(|x| -x).collect::<Vec<_>>());
        let mut e = vec![0; l.rank()];
        e[12] = 1;
        let x: Vec<i64> = a.iter().zip(&e).map(|(p, q)| 2 * p + q).collect();
        assert_eq!(r.apply(&x), e);
        assert!(matches!(reflection(&l, &e.iter().map(|x| 2 * x).collect::<Vec<_>>()), Err(LatticeError::BadClass(-4))));
    }

    #[test]
    fn dimension_and_counts() {
        let l = blowup_lattice(2);
        assert_eq!(formal_dimension(&l, &alpha_class(&l, 2).unwrap()).unwrap(), Rational64::from(4));
        let mut h = vec![0; l.rank()];
        h[0] = 2;
        assert_eq!(formal_dimension(&l, &h), Err(LatticeError::NotCharacteristic));
        assert_eq!(count_signed_permutation_isometries(0), BigUint::one());
        assert_eq!(count_signed_permutation_isometries(3), BigUint::from(48u32));
        assert_eq!(signed_permutations(3).len(), 48);
        let l1 = blowup_lattice(1);
        assert_eq!(enumerate_distinct_twisted_isometries(&l1, 1, 1).unwrap().len(), 2);
    }
}
