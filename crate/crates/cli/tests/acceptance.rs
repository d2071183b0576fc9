use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde_json::Value;

use floer_core::graded_modules::{
    assemble, cork_obstruction, deg, involution_check, random_lemma_trials, triangle_deduce, Flavor, GradedFUModule,
    InvolutionAction, Torsion, TriangleData,
};
use floer_core::lattice::{
    alpha_class, blowup_lattice, count_signed_permutation_isometries, formal_dimension, signed_permutations,
    IntegerLattice,
};
use floer_core::surgery_cone::{quotient_homology, QuotientKind};
use floer_core::{build_cfk, parse_knot, surgery_homology, FilteredComplex, FlipMode};

const K: &str = "K(1, T2^2 T3^2 T2^2 T3^-2 T2^-2)";

fn floer(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_floer")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "floer {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn knot(spec: &str) -> FilteredComplex {
    build_cfk(&parse_knot(spec).unwrap()).unwrap()
}

fn gradings(c: &FilteredComplex) -> Vec<(i64, i64)> {
    let mut v: Vec<_> = c.generators.iter().map(|g| (g.alexander, g.maslov)).collect();
    v.sort();
    v
}

fn plus(towers: &[i64], fields: &[(i64, usize)]) -> GradedFUModule {
    let mut torsion = Vec::new();
    for &(d, k) in fields {
        torsion.extend(std::iter::repeat_n(Torsion { degree: deg(d), order: 1 }, k));
    }
    GradedFUModule::new(Flavor::Plus, towers.iter().map(|&d| deg(d)).collect(), torsion).unwrap()
}

fn hat(towers: &[i64], fields: &[(i64, usize)]) -> GradedFUModule {
    let p = plus(towers, fields);
    GradedFUModule::new(Flavor::Minus, p.towers, p.torsion).unwrap()
}

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn criterion(id: &'static str, limit_s: u64, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (ok, detail) = f();
    let took = t.elapsed();
    let in_time = took <= Duration::from_secs(limit_s);
    let o = Outcome {
        id,
        pass: ok && in_time,
        detail: format!("{detail} [{:.3}s, limit {limit_s}s]", took.as_secs_f64()),
    };
    let _ = writeln!(std::io::stdout(), "{} {} {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    o
}

fn a1() -> (bool, String) {
    let v = floer(&["cfk", "K(1, T2^-2 T3^1 T2^2)"]);
    let c = FilteredComplex::from_json(&v).unwrap();
    let right = knot("K(-1, T2^2 T3^-1 T2^-2)");
    let g = gradings(&c);
    let ok = c.len() == 3
        && g == [(-1, 0), (0, 1), (1, 2)]
        && gradings(&right) != g
        && c.hfk_hat() != right.hfk_hat()
        && c.hfk_hat() != FilteredComplex::unknot().hfk_hat();
    (ok, format!("(A;M) = {g:?}, right trefoil {:?}", gradings(&right)))
}

fn a2() -> (bool, String) {
    let c = FilteredComplex::from_json(&floer(&["cfk", K])).unwrap();
    let d = |x: &str| {
        let i = c.index_of(x).unwrap();
        let mut t: Vec<&str> =
            c.differential.iter().filter(|a| a.from == i).map(|a| c.generators[a.to].name.as_str()).collect();
        t.sort();
        t
    };
    let ok = c.len() == 9 && d("x2") == ["x1", "x3"] && d("x1").contains(&"x4") && c.d_squared_is_zero();
    (ok, format!("{} generators, d x2 -> {:?}, d x1 -> {:?}", c.len(), d("x2"), d("x1")))
}

fn a3() -> (bool, String) {
    let c = knot(K);
    let shape = |m: &GradedFUModule| (m.towers.len(), m.torsion.iter().map(|t| t.order).collect::<Vec<_>>());
    let mut ok = shape(&quotient_homology(&c, QuotientKind::B)) == (1, vec![]);
    let mut seen = Vec::new();
    for s in -4..=4i64 {
        let m = quotient_homology(&c, QuotientKind::A(s));
        let want = if s.abs() == 1 { (1, vec![1]) } else { (1, vec![]) };
        ok &= shape(&m) == want;
        seen.push(format!("A{s} = {m}"));
    }
    (ok, seen.join(", "))
}

fn a4() -> (bool, String) {
    let want = plus(&[0], &[(-1, 2)]);
    let mut ok = true;
    let mut seen = Vec::new();
    for mode in ["chain", "homology"] {
        let v = floer(&["surgery", "--knot", K, "-n", "-1", "--mode", mode]);
        let m = GradedFUModule::from_json(&v).unwrap();
        let red = GradedFUModule::from_json(&v["reduced"]).unwrap();
        ok &= m == want && red == plus(&[], &[(-1, 2)]);
        seen.push(format!("{mode}: {m}"));
    }
    (ok, seen.join("; "))
}

fn a5() -> (bool, String) {
    let m = surgery_homology(&FilteredComplex::unknot(), -1, FlipMode::Chain).unwrap();
    (m == plus(&[0], &[]) && m.reduced_part().is_zero(), m.to_string())
}

fn a6() -> (bool, String) {
    let red = hat(&[], &[(1, 2), (0, 2)]).shift(deg(-2));
    let m = assemble(&[deg(-3), deg(-2), deg(-2), deg(-1)], &red).unwrap();
    (m == hat(&[-3, -2, -2, -1], &[(-1, 2), (-2, 2)]), m.to_string())
}

fn a7() -> (bool, String) {
    let t = TriangleData {
        slots: [Some(hat(&[-1, -2], &[])), Some(hat(&[-3, -2, -2, -1], &[(-1, 2), (-2, 2)])), None],
        map_degrees: [None, Some(deg(0)), None],
        b: 1,
        ag: true,
    };
    let c = triangle_deduce(&t).unwrap();
    match c.solved {
        Some((2, m)) => (m == hat(&[-2, -1], &[(-1, 2), (-2, 2)]) && !c.up_to_shift, m.to_string()),
        other => (false, format!("{other:?}")),
    }
}

fn a8() -> (bool, String) {
    let s = random_lemma_trials(42, 500, 8, 3);
    (
        s.trials == 500 && s.violations == 0 && s.rank_pattern > 0 && s.hypotheses_met > 0,
        format!("{s:?}"),
    )
}

fn a9() -> (bool, String) {
    let t = InvolutionAction::new(&["x0", "Delta", "alpha"], vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
    let r = involution_check(&t).unwrap();
    let mut ok = r.twist_difference == ["Delta"];
    for b in 0..2 {
        for c in 0..2 {
            ok &= cork_obstruction(&t, [1, b, c]).unwrap();
            ok &= !cork_obstruction(&t, [0, b, c]).unwrap();
        }
    }
    (ok, format!("(tau - id)(x0) = {:?}", r.twist_difference))
}

fn a10() -> (bool, String) {
    let mut ok = true;
    for m in 1..=50u32 {
        let l = blowup_lattice(m);
        let a = alpha_class(&l, m).unwrap();
        ok &= l.pair(&a, &a) == -1;
        ok &= formal_dimension(&l, &a).unwrap() == ((m * m + m) as i64 - 2).into();
    }
    let l2 = blowup_lattice(2);
    ok &= formal_dimension(&l2, &alpha_class(&l2, 2).unwrap()).unwrap() == 4.into();
    let cli = floer(&["lattice", "count", "-k", "17"]);
    let want: BigUint = (BigUint::from(1u32) << 17usize) * (1..=17u32).map(BigUint::from).product::<BigUint>();
    ok &= cli["count"].as_str() == Some(want.to_string().as_str());
    for k in 0..=6usize {
        let perms = signed_permutations(k);
        let minus_i = IntegerLattice::diagonal(&vec![-1; k], (0..k).map(|i| i.to_string()).collect());
        ok &= perms.iter().all(|p| minus_i.preserves(p));
        ok &= BigUint::from(perms.len()) == count_signed_permutation_isometries(k as u32);
    }
    (ok, format!("lattice count -k 17 = {}", cli["count"]))
}

#[test]
fn acceptance() {
    let _ = writeln!(std::io::stdout());
    let results = [
        criterion("A1", 1, a1),
        criterion("A2", 5, a2),
        criterion("A3", 5, a3),
        criterion("A4", 10, a4),
        criterion("A5", 1, a5),
        criterion("A6", 1, a6),
        criterion("A7", 1, a7),
        criterion("A8", 60, a8),
        criterion("A9", 1, a9),
        criterion("A10", 5, a10),
    ];
    let failed: Vec<_> = results.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
