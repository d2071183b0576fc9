//! Involutions acting on a graded piece of a Floer group.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("matrix does not square to the identity")]
    NotInvolution,
    #[error("bad basis: {0}")]
    BadBasis(String),
}

/// `rows[i][j]` is the coefficient of basis vector `i` in the image of
/// basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionAction {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<u8>>,
    #[serde(default)]
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionReport {
    pub dim: usize,
    /// `(tau - id)(e_0)` as basis labels.
    pub twist_difference: Vec<String>,
    /// Rank of `tau - id`.
    pub twist_rank: usize,
}

impl InvolutionAction {
    pub fn new(labels: &[&str], rows: Vec<Vec<u8>>) -> Self {
        InvolutionAction {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            rows,
            degree: None,
        }
    }

    /// The action on the degree `-1` piece with basis `x0, Delta, alpha`.
    pub fn main_example() -> Self {
        InvolutionAction::new(&["x0", "Delta", "alpha"], vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn validate(&self) -> Result<(), InvolutionError> {
        let n = self.dim();
        if self.rows.len() != n || self.rows.iter().any(|r| r.len() != n) {
            return Err(InvolutionError::BadBasis(format!("matrix is not {n} x {n}")));
        }
        if self.rows.iter().flatten().any(|&x| x > 1) {
            return Err(InvolutionError::BadBasis("entries must be 0 or 1".into()));
        }
        let mut seen = self.labels.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != n {
            return Err(InvolutionError::BadBasis("repeated label".into()));
        }
        Ok(())
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(0, |acc, (a, b)| acc ^ (a & b & 1)))
            .collect()
    }

    fn twist(&self, v: &[u8]) -> Vec<u8> {
        self.apply(v).iter().zip(v).map(|(a, b)| a ^ (b & 1)).collect()
    }

    fn names(&self, v: &[u8]) -> Vec<String> {
        v.iter()
            .zip(&self.labels)
            .filter(|(b, _)| **b == 1)
            .map(|(_, l)| l.clone())
            .collect()
    }
}

fn rank(mut rows: Vec<Vec<u8>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, |x| x.len());
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] == 1 {
                let pivot = rows[r].clone();
                rows[i].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        r += 1;
    }
    r
}

/// Check `tau^2 = id` and report `(tau - id)` on the first basis vector.
pub fn involution_check(a: &InvolutionAction) -> Result<InvolutionReport, InvolutionError> {
    a.validate()?;
    let n = a.dim();
    for j in 0..n {
        let mut e = vec![0u8; n];
        e[j] = 1;
        if a.apply(&a.apply(&e)) != e {
            return Err(InvolutionError::NotInvolution);
        }
    }
    let twist_cols: Vec<Vec<u8>> = (0..n)
        .map(|j| {
            let mut e = vec![0u8; n];
            e[j] = 1;
            a.twist(&e)
        })
        .collect();
    let first = twist_cols.first().cloned().unwrap_or_default();
    Ok(InvolutionReport {
        dim: n,
        twist_difference: a.names(&first),
        twist_rank: rank(twist_cols),
    })
}

/// Whether `(tau - id)` is nonzero on the class `a x0 + b Delta + c alpha`.
pub fn cork_obstruction(act: &InvolutionAction, coeffs: [u8; 3]) -> Result<bool, InvolutionError> {
    if act.dim() != 3 {
        return Err(InvolutionError::BadBasis(format!("expected 3 basis vectors, got {}", act.dim())));
    }
    involution_check(act)?;
    Ok(act.twist(&coeffs).contains(&1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_example() {
        let r = involution_check(&InvolutionAction::main_example()).unwrap();
        assert_eq!(r.twist_difference, vec!["Delta".to_string()]);
        assert_eq!(r.twist_rank, 1);
    }

    #[test]
    fn identity_and_failure() {
        let id = InvolutionAction::new(&["a", "b"], vec![vec![1, 0], vec![0, 1]]);
        assert!(involution_check(&id).unwrap().twist_difference.is_empty());
        let bad = InvolutionAction::new(&["a", "b"], vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(involution_check(&bad), Err(InvolutionError::NotInvolution));
        assert!(matches!(cork_obstruction(&id, [1, 0, 0]), Err(InvolutionError::BadBasis(_))));
    }

    #[test]
    fn obstruction_is_first_coefficient() {
        let t = InvolutionAction::main_example();
        for a in 0..2u8 {
            for b in 0..2u8 {
                for c in 0..2u8 {
                    assert_eq!(cork_obstruction(&t, [a, b, c]).unwrap(), a == 1);
                }
            }
        }
    }
}
