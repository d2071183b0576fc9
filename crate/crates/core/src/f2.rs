//! Dense linear algebra over the field with two elements.

use std::fmt;

/// Bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, o: &BitVec) {
        debug_assert_eq!(self.len, o.len);
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn dot(&self, o: &BitVec) -> bool {
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&o.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Matrix stored by columns: column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: Vec<BitVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols: vec![BitVec::zeros(rows); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cols[c].get(r)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.cols[c].flip(r);
    }

    pub fn apply(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows);
        for j in v.ones() {
            out.xor_assign(&self.cols[j]);
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.rows);
        Matrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols(), self.rows);
        for (j, c) in self.cols.iter().enumerate() {
            for i in c.ones() {
                t.cols[i].set(j, true);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        Echelon::of(&self.cols, self.rows).rank()
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> Vec<BitVec> {
        let n = self.ncols();
        // reduce columns while tracking combinations
        let mut work: Vec<(BitVec, BitVec)> = self
            .cols
            .iter()
            .enumerate()
            .map(|(j, c)| (c.clone(), BitVec::unit(n, j)))
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut kernel = Vec::new();
        for j in 0..n {
            for &(p, k) in &pivots {
                if work[j].0.get(p) {
                    let (a, b) = (work[k].0.clone(), work[k].1.clone());
                    work[j].0.xor_assign(&a);
                    work[j].1.xor_assign(&b);
                }
            }
            match work[j].0.first_one() {
                Some(p) => pivots.push((p, j)),
                None => kernel.push(work[j].1.clone()),
            }
        }
        kernel
    }
}

/// Incrementally built reduced basis of a subspace, with each basis vector
/// remembered as a combination of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    inserted: usize,
    basis: Vec<(usize, BitVec, BitVec)>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon {
            len,
            inserted: 0,
            basis: Vec::new(),
        }
    }

    pub fn of(vectors: &[BitVec], len: usize) -> Self {
        let mut e = Echelon::new(len);
        for v in vectors {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn reduce_full(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut v = v.clone();
        let mut comb = BitVec::zeros(self.inserted.max(1));
        for (p, b, c) in &self.basis {
            if v.get(*p) {
                v.xor_assign(b);
                let mut c = c.clone();
                grow(&mut c, comb.len());
                comb.xor_assign(&c);
            }
        }
        (v, comb)
    }

    /// Reduce `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, b, _) in &self.basis {
            if v.get(*p) {
                v.xor_assign(b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len);
        let idx = self.inserted;
        self.inserted += 1;
        let (r, mut comb) = self.reduce_full(&v);
        grow(&mut comb, self.inserted);
        comb.flip(idx);
        match r.first_one() {
            Some(p) => {
                // keep the basis fully reduced at pivot positions
                for (_, b, c) in self.basis.iter_mut() {
                    if b.get(p) {
                        b.xor_assign(&r);
                        grow(c, comb.len());
                        c.xor_assign(&comb);
                    }
                }
                self.basis.push((p, r, comb));
                true
            }
            None => false,
        }
    }

    /// Write `v` as a combination of the inserted vectors, if possible.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        let (r, mut comb) = self.reduce_full(v);
        if r.is_zero() {
            grow(&mut comb, self.inserted);
            comb.len = self.inserted;
            Some(comb)
        } else {
            None
        }
    }
}

fn grow(v: &mut BitVec, len: usize) {
    if v.len < len {
        v.words.resize(len.div_ceil(64), 0);
        v.len = len;
    }
}

/// Dimension of `ker(out) / im(inc)` for composable maps `inc` then `out`.
pub fn homology_dim(inc: &Matrix, out: &Matrix) -> usize {
    let n = out.ncols();
    n - out.rank() - inc.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: &[&[usize]]) -> Matrix {
        Matrix {
            rows,
            cols: cols.iter().map(|c| BitVec::from_indices(rows, c.iter().copied())).collect(),
        }
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_zero());
    }

    #[test]
    fn solve_expresses_combination() {
        let vs = vec![
            BitVec::from_indices(4, [0, 1]),
            BitVec::from_indices(4, [1, 2]),
            BitVec::from_indices(4, [0, 1]),
        ];
        let e = Echelon::of(&vs, 4);
        assert_eq!(e.rank(), 2);
        let target = BitVec::from_indices(4, [0, 2]);
        let c = e.solve(&target).unwrap();
        let mut acc = BitVec::zeros(4);
        for i in c.ones() {
            acc.xor_assign(&vs[i]);
        }
        assert_eq!(acc, target);
        assert!(e.solve(&BitVec::unit(4, 3)).is_none());
    }

    #[test]
    fn wide_vectors() {
        let mut v = BitVec::zeros(200);
        v.set(3, true);
        v.set(130, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 130]);
        assert_eq!(v.count_ones(), 2);
    }
}
