//! Inputs shared by the benchmarks.

use floer_core::{build_cfk, parse_knot, FilteredComplex};

pub const KNOT_K: &str = "K(1, T2^2 T3^2 T2^2 T3^-2 T2^-2)";
pub const LEFT_TREFOIL: &str = "K(1, T2^-2 T3^1 T2^2)";

pub fn complex(spec: &str) -> FilteredComplex {
    build_cfk(&parse_knot(spec).expect("valid spec")).expect("pipeline succeeds")
}
