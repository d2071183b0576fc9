use std::collections::HashMap;

use crate::graded_modules::{FiniteComplex, GradedFUModule};
use crate::knot_complex::FilteredComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    /// `C / {i < 0 and j < s}`.
    A(i64),
    /// `C / {i < 0}`.
    B,
}

impl QuotientKind {
    pub fn keeps(&self, i: i64, alexander: i64) -> bool {
        match *self {
            QuotientKind::A(s) => i >= 0 || i + alexander >= s,
            QuotientKind::B => i >= 0,
        }
    }

    fn lowest_i(&self, alexander: i64) -> i64 {
        match *self {
            QuotientKind::A(s) => (s - alexander).min(0),
            QuotientKind::B => 0,
        }
    }
}

/// Quotient of `CFK^infinity` spanned by the cells `[x, i]` it keeps, cut
/// off above a degree. Cell degrees are `M(x) + 2i + offset`.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub kind: QuotientKind,
    pub offset: i64,
    pub top: i64,
    pub cells: Vec<(usize, i64)>,
    pub index: HashMap<(usize, i64), usize>,
    pub complex: FiniteComplex,
}

impl QuotientComplex {
    pub fn new(c: &FilteredComplex, kind: QuotientKind, offset: i64, top: i64) -> Self {
        let mut cells = Vec::new();
        let mut degrees = Vec::new();
        for (x, g) in c.generators.iter().enumerate() {
            let mut i = kind.lowest_i(g.alexander);
            while g.maslov + 2 * i + offset <= top {
                if kind.keeps(i, g.alexander) {
                    cells.push((x, i));
                    degrees.push(g.maslov + 2 * i + offset);
                }
                i += 1;
            }
        }
        let index: HashMap<(usize, i64), usize> = cells.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut complex = FiniteComplex::new(degrees);
        let out = c.outgoing();
        for (k, &(x, i)) in cells.iter().enumerate() {
            for a in &out[x] {
                if let Some(&t) = index.get(&(a.to, i - a.u_power as i64)) {
                    complex.add_d(k, t);
                }
            }
            if let Some(&t) = index.get(&(x, i - 1)) {
                complex.add_u(k, t);
            }
        }
        QuotientComplex {
            kind,
            offset,
            top,
            cells,
            index,
            complex,
        }
    }

    /// Lowest degree of a cell.
    pub fn bottom(c: &FilteredComplex, kind: QuotientKind, offset: i64) -> i64 {
        c.generators
            .iter()
            .map(|g| g.maslov + 2 * kind.lowest_i(g.alexander) + offset)
            .min()
            .unwrap_or(offset)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn degree_of(&self, k: usize) -> i64 {
        self.complex.degrees[k]
    }

    /// Homology in degrees where the cut off does not interfere.
    pub fn module(&self) -> GradedFUModule {
        self.complex.homology().plus_module(&self.complex, self.top - 1)
    }
}

fn default_top(c: &FilteredComplex, kind: QuotientKind) -> i64 {
    QuotientComplex::bottom(c, kind, 0) + 2 * (c.len() as i64 + 4)
}

/// The quotient complex in the grading of `C`, deep enough for its
/// homology to be read off.
pub fn quotient(c: &FilteredComplex, kind: QuotientKind) -> QuotientComplex {
    QuotientComplex::new(c, kind, 0, default_top(c, kind))
}

pub fn quotient_homology(c: &FilteredComplex, kind: QuotientKind) -> GradedFUModule {
    quotient(c, kind).module()
}
