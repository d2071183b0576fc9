//! Reduced parts in an exact triangle of modules over `F[[U]]`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::module::{assemble, deg, Deg, Flavor, GradedFUModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("grading assumption violated: {0}")]
    AGViolated(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
}

/// Exact triangle `M1 -f1-> M2 -f2-> M3 -f3-> M1` of tower-plus-torsion
/// modules, the middle one carrying twice as many towers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleData {
    pub slots: [Option<GradedFUModule>; 3],
    pub map_degrees: [Option<Deg>; 3],
    pub b: u32,
    pub ag: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleConclusion {
    /// Reduced parts, when known or forced.
    pub reduced: [Option<GradedFUModule>; 3],
    /// The slot filled in, with its full module.
    pub solved: Option<(usize, GradedFUModule)>,
    /// Set when a solution is only determined up to an overall shift.
    pub up_to_shift: bool,
    /// What exactness says when nothing is forced.
    pub constraints: Vec<String>,
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// Tower degrees of the Floer homology of `#^b S^1 x S^2`, with top `top`.
pub fn tower_pattern(b: u32, top: Deg) -> Vec<Deg> {
    let mut out = Vec::new();
    for k in 0..=b {
        for _ in 0..binomial(b, k) {
            out.push(top - deg(k as i64));
        }
    }
    out.sort();
    out
}

fn max_tower(m: &GradedFUModule) -> Option<Deg> {
    m.towers.iter().max().copied()
}

fn check_pattern(slot: usize, m: &GradedFUModule, b: u32) -> Result<Deg, TriangleError> {
    let Some(top) = max_tower(m) else {
        return Err(TriangleError::AGViolated(format!("slot {} has no towers", slot + 1)));
    };
    if m.towers != tower_pattern(b, top) {
        return Err(TriangleError::AGViolated(format!(
            "towers of slot {} are not those of #^{b} S^1 x S^2",
            slot + 1
        )));
    }
    Ok(top)
}

fn shift_by(m: &GradedFUModule, d: Option<Deg>) -> (GradedFUModule, bool) {
    match d {
        Some(d) => (m.shift(d), false),
        None => (m.clone(), true),
    }
}

/// Conclusion of the algebraic lemma: the reduced parts form an exact
/// triangle with the maps of the given degrees. When one reduced part
/// vanishes the other two are isomorphic, which fills in an unknown slot.
pub fn triangle_deduce(t: &TriangleData) -> Result<TriangleConclusion, TriangleError> {
    if !t.ag {
        return Err(TriangleError::HypothesisUnmet("grading assumption not asserted".into()));
    }
    if t.b > 1 {
        return Err(TriangleError::HypothesisUnmet(format!("b = {} is not 0 or 1", t.b)));
    }
    let pattern_b = [t.b, t.b + 1, t.b];
    let mut tops: [Option<Deg>; 3] = [None; 3];
    for (i, s) in t.slots.iter().enumerate() {
        if let Some(m) = s {
            if m.flavor != Flavor::Minus {
                return Err(TriangleError::HypothesisUnmet("modules must be of the minus flavour".into()));
            }
            tops[i] = Some(check_pattern(i, m, pattern_b[i])?);
        }
    }
    // gr f1 = -1 + max gr slot 2 - max gr slot 1, gr f2 = max gr slot 3 - max gr slot 2
    let mut f = t.map_degrees;
    let rel = [(0usize, 1usize, -1i64), (1, 2, 0)];
    for (k, &(a, b, c)) in rel.iter().enumerate() {
        match (tops[a], tops[b], f[k]) {
            (Some(x), Some(y), Some(d)) if d != deg(c) + y - x => {
                return Err(TriangleError::AGViolated(format!(
                    "map f{} has degree {d}, expected {}",
                    k + 1,
                    deg(c) + y - x
                )))
            }
            (Some(x), Some(y), None) => f[k] = Some(deg(c) + y - x),
            (Some(x), None, Some(d)) => tops[b] = Some(x + d - deg(c)),
            (None, Some(y), Some(d)) => tops[a] = Some(y - d + deg(c)),
            _ => {}
        }
    }
    let reduced: [Option<GradedFUModule>; 3] = [0, 1, 2].map(|i| t.slots[i].as_ref().map(|m| m.reduced_part()));
    if t.b == 1 {
        let zero = |i: usize| reduced[i].as_ref().is_some_and(|m| m.is_zero());
        if !zero(0) && !zero(2) {
            return Err(TriangleError::HypothesisUnmet(
                "b = 1 needs the first or third reduced part to vanish".into(),
            ));
        }
    }
    let mut out = TriangleConclusion {
        reduced: reduced.clone(),
        solved: None,
        up_to_shift: false,
        constraints: Vec::new(),
    };
    // the map leaving slot i goes to slot i + 1
    let unknown: Vec<usize> = (0..3).filter(|&i| reduced[i].is_none()).collect();
    let zero_slot = (0..3).find(|&i| reduced[i].as_ref().is_some_and(|m| m.is_zero()));
    match (unknown.as_slice(), zero_slot) {
        ([], _) => {
            if let Some(z) = zero_slot {
                let (p, q) = ((z + 1) % 3, (z + 2) % 3);
                let (img, _) = shift_by(reduced[p].as_ref().expect("known"), f[p]);
                if f[p].is_some() && &img != reduced[q].as_ref().expect("known") {
                    out.constraints.push(format!(
                        "slots {} and {} should be isomorphic through f{}",
                        p + 1,
                        q + 1,
                        p + 1
                    ));
                }
            }
        }
        ([u], Some(z)) => {
            let u = *u;
            let (p, q) = ((z + 1) % 3, (z + 2) % 3);
            // p -> q is an isomorphism of degree f[p]
            let (red, loose) = if u == q {
                shift_by(reduced[p].as_ref().expect("known"), f[p])
            } else {
                shift_by(reduced[q].as_ref().expect("known"), f[p].map(|d| -d))
            };
            out.up_to_shift = loose;
            let full = match tops[u] {
                Some(top) if !loose => Some(
                    assemble(&tower_pattern(pattern_b[u], top), &red)
                        .expect("reduced part has no towers"),
                ),
                _ => None,
            };
            out.reduced[u] = Some(red.clone());
            out.solved = Some((u, full.unwrap_or(red)));
        }
        _ => {
            out.constraints.push("no reduced part is known to vanish; only exactness holds".into());
            let dims: BTreeMap<usize, Option<usize>> = (0..3)
                .map(|i| (i, reduced[i].as_ref().map(|m| m.torsion.len())))
                .collect();
            out.constraints.push(format!("torsion summands per slot: {dims:?}"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(towers: &[i64], fs: &[(usize, i64)]) -> GradedFUModule {
        let mut r = GradedFUModule::zero(Flavor::Minus);
        for &(k, d) in fs {
            r = r.direct_sum(&GradedFUModule::field_sum(Flavor::Minus, k, deg(d)));
        }
        assemble(&towers.iter().map(|&d| deg(d)).collect::<Vec<_>>(), &r).unwrap()
    }

    #[test]
    fn patterns() {
        assert_eq!(tower_pattern(0, deg(-1)), vec![deg(-1)]);
        assert_eq!(tower_pattern(2, deg(-1)), vec![deg(-3), deg(-2), deg(-2), deg(-1)]);
    }

    #[test]
    fn vanishing_middle_needs_hypothesis() {
        let t = TriangleData {
            slots: [Some(m(&[-1, -2], &[(1, -1)])), None, Some(m(&[-1, -2], &[(1, 0)]))],
            map_degrees: [None, None, None],
            b: 1,
            ag: true,
        };
        assert!(matches!(triangle_deduce(&t), Err(TriangleError::HypothesisUnmet(_))));
    }

    #[test]
    fn zero_triangle() {
        let t = TriangleData {
            slots: [Some(m(&[-1], &[])), Some(m(&[-1, -2], &[])), Some(m(&[-2], &[]))],
            map_degrees: [None, None, None],
            b: 0,
            ag: true,
        };
        let c = triangle_deduce(&t).unwrap();
        assert!(c.reduced.iter().all(|r| r.as_ref().unwrap().is_zero()));
        assert!(c.constraints.is_empty());
    }

    #[test]
    fn one_vanishing_end_solves_the_third_slot() {
        let t = TriangleData {
            slots: [Some(m(&[-1, -2], &[])), Some(m(&[-3, -2, -2, -1], &[(2, -1), (2, -2)])), None],
            map_degrees: [None, Some(deg(0)), None],
            b: 1,
            ag: true,
        };
        let c = triangle_deduce(&t).unwrap();
        let (slot, full) = c.solved.unwrap();
        assert_eq!(slot, 2);
        assert_eq!(full, m(&[-2, -1], &[(2, -1), (2, -2)]));
        assert!(!c.up_to_shift);
    }

    #[test]
    fn ungraded_solution_is_up_to_shift() {
        let red = m(&[-1, -2], &[(1, 0), (1, -3)]);
        let t = TriangleData {
            slots: [None, Some(red.clone()), Some(m(&[-1], &[]))],
            map_degrees: [None, None, None],
            b: 0,
            ag: true,
        };
        let c = triangle_deduce(&t).unwrap();
        assert!(c.up_to_shift);
        assert_eq!(c.reduced[0].as_ref(), Some(&red.reduced_part()));
    }
}
