//! End-to-end checks over the whole pipeline, one per criterion.

use std::collections::BTreeMap;
use std::io::IsTerminal;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde_json::{json, Value};

use floer_core::graded_modules::{
    cork_obstruction, deg, involution_check, random_lemma_trials, Flavor, GradedFUModule, InvolutionAction, Torsion,
};
use floer_core::lattice::{
    alpha_class, blowup_lattice, count_signed_permutation_isometries, enumerate_distinct_twisted_isometries,
    formal_dimension, signed_permutations, IntegerLattice,
};
use floer_core::FilteredComplex;

use crate::recipes::{self, Fixtures, KNOT_K, LEFT_TREFOIL, RIGHT_TREFOIL};
use crate::Output;

pub struct Check {
    pub id: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub struct Report {
    pub checks: Vec<Check>,
}

/// Colour only on a terminal and when `NO_COLOR` is unset.
pub fn colour() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn output(&self, timings: bool, colour: bool) -> Output {
        let rows: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({"id": c.id, "pass": c.pass, "detail": c.detail});
                if timings {
                    v["seconds"] = json!(c.elapsed.as_secs_f64());
                }
                v
            })
            .collect();
        let mut table = String::new();
        for c in &self.checks {
            let word = match (c.pass, colour) {
                (true, true) => "\x1b[32mPASS\x1b[0m",
                (false, true) => "\x1b[31mFAIL\x1b[0m",
                (true, false) => "PASS",
                (false, false) => "FAIL",
            };
            table += &format!("{:<4} {word}  {}", c.id, c.detail);
            if timings {
                table += &format!("  ({:.3}s)", c.elapsed.as_secs_f64());
            }
            table.push('\n');
        }
        Output {
            json: json!({"pass": self.all_pass(), "criteria": rows}),
            table: table.trim_end().to_string(),
        }
    }
}

fn timed(id: &'static str, limit: Duration, f: impl FnOnce() -> Result<String, String>) -> Check {
    let t = Instant::now();
    let r = f();
    let elapsed = t.elapsed();
    let (mut pass, mut detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if elapsed > limit {
        pass = false;
        detail += &format!("; took {:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs());
    }
    Check { id, pass, detail, elapsed }
}

fn ensure(ok: bool, detail: String) -> Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn knot(spec: &str) -> Result<FilteredComplex, String> {
    let k = floer_core::parse_knot(spec).map_err(|e| e.to_string())?;
    floer_core::build_cfk(&k).map_err(|e| e.to_string())
}

fn fixture_module(fx: &Fixtures, name: &str) -> Result<GradedFUModule, String> {
    let r = fx.get(name).ok_or_else(|| format!("fixture `{name}` missing"))?;
    GradedFUModule::from_json(&r.expected).map_err(|e| format!("fixture `{name}`: {e}"))
}

fn gradings(c: &FilteredComplex) -> Vec<(i64, i64)> {
    let mut v: Vec<_> = c.generators.iter().map(|g| (g.alexander, g.maslov)).collect();
    v.sort();
    v
}

pub fn a1() -> Result<String, String> {
    let c = knot(LEFT_TREFOIL)?;
    let right = knot(RIGHT_TREFOIL)?;
    let got = gradings(&c);
    let ok = got == vec![(-1, 0), (0, 1), (1, 2)]
        && c.hfk_hat() != right.hfk_hat()
        && c.hfk_hat() != FilteredComplex::unknot().hfk_hat()
        && gradings(&right) == vec![(-1, -2), (0, -1), (1, 0)];
    ensure(ok, format!("(A;M) = {got:?}"))
}

pub fn a2() -> Result<String, String> {
    let c = knot(KNOT_K)?;
    let targets = |from: &str| -> Vec<String> {
        let i = c.index_of(from).expect("generator exists");
        let mut t: Vec<String> = c
            .differential
            .iter()
            .filter(|a| a.from == i)
            .map(|a| c.generators[a.to].name.clone())
            .collect();
        t.sort();
        t
    };
    let (d2, d1) = (targets("x2"), targets("x1"));
    ensure(
        c.len() == 9 && d2 == ["x1", "x3"] && d1.iter().any(|t| t == "x4"),
        format!("{} generators, d x2 hits {d2:?}, d x1 hits {d1:?}", c.len()),
    )
}

pub fn a3() -> Result<String, String> {
    let c = knot(KNOT_K)?;
    let shapes = recipes::quotient_shapes(&c);
    let want = |k: &str| if k == "A1" || k == "A-1" { "T+ + F" } else { "T+" };
    let bad: Vec<_> = shapes.iter().filter(|(k, v)| v.as_str() != want(k)).collect();
    ensure(bad.is_empty(), format!("{shapes:?}"))
}

pub fn a4(fx: &Fixtures) -> Result<String, String> {
    let want = fixture_module(fx, "k-minus1")?;
    let c = knot(KNOT_K)?;
    let mut out = Vec::new();
    for mode in [floer_core::FlipMode::Chain, floer_core::FlipMode::Homology] {
        let m = floer_core::surgery_homology(&c, -1, mode).map_err(|e| e.to_string())?;
        let red = GradedFUModule::field_sum(Flavor::Plus, 2, deg(-1));
        if m != want || m.reduced_part() != red {
            return Err(format!("{} mode gave {m}, expected {want}", mode.name()));
        }
        out.push(format!("{}: {m}", mode.name()));
    }
    Ok(out.join("; "))
}

pub fn a5() -> Result<String, String> {
    let m = floer_core::surgery_homology(&FilteredComplex::unknot(), -1, floer_core::FlipMode::Chain)
        .map_err(|e| e.to_string())?;
    ensure(m.towers.len() == 1 && m.reduced_part().is_zero(), m.to_string())
}

pub fn a6(fx: &Fixtures) -> Result<String, String> {
    let got = recipes::main_assembly();
    let want = fixture_module(fx, "main-assembly")?;
    let red = GradedFUModule::new(
        Flavor::Minus,
        vec![],
        vec![
            Torsion { degree: deg(-2), order: 1 },
            Torsion { degree: deg(-2), order: 1 },
            Torsion { degree: deg(-1), order: 1 },
            Torsion { degree: deg(-1), order: 1 },
        ],
    )
    .map_err(|e| e.to_string())?;
    ensure(got == want && got.reduced_part() == red, got.to_string())
}

pub fn a7(fx: &Fixtures) -> Result<String, String> {
    let got = recipes::horizontal_triangle().map_err(|e| e.to_string())?;
    let want = fixture_module(fx, "horizontal-triangle")?;
    ensure(got == want, got.to_string())
}

pub fn a8(seed: u64) -> Result<String, String> {
    let s = random_lemma_trials(seed, 500, 8, 3);
    ensure(
        s.violations == 0 && s.trials == 500,
        format!(
            "{} trials, {} with tower ranks m,2m,m, {} meeting the hypotheses, {} violations",
            s.trials, s.rank_pattern, s.hypotheses_met, s.violations
        ),
    )
}

pub fn a9() -> Result<String, String> {
    let t = InvolutionAction::main_example();
    let r = involution_check(&t).map_err(|e| e.to_string())?;
    let mut obstructed = 0;
    for b in 0..2u8 {
        for c in 0..2u8 {
            obstructed += cork_obstruction(&t, [1, b, c]).map_err(|e| e.to_string())? as usize;
        }
    }
    ensure(
        r.twist_difference == ["Delta"] && obstructed == 4,
        format!("(tau - id)(x0) = {:?}, obstructed in {obstructed} of 4 cases", r.twist_difference),
    )
}

pub fn a10() -> Result<String, String> {
    for m in 1..=50u32 {
        let l = blowup_lattice(m);
        let a = alpha_class(&l, m).map_err(|e| e.to_string())?;
        let d = formal_dimension(&l, &a).map_err(|e| e.to_string())?;
        let want = (m * m + m) as i64 - 2;
        if l.pair(&a, &a) != -1 || d != want.into() {
            return Err(format!("m = {m}: square {}, dimension {d}", l.pair(&a, &a)));
        }
    }
    let fact17: BigUint = (1..=17u32).map(BigUint::from).product();
    let want = (BigUint::from(1u32) << 17usize) * fact17;
    if count_signed_permutation_isometries(17) != want {
        return Err("count for k = 17 is wrong".into());
    }
    let mut sizes = BTreeMap::new();
    let l = blowup_lattice(1);
    for k in 0..=6usize {
        let perms = signed_permutations(k);
        let minus_i = IntegerLattice::diagonal(&vec![-1; k], (1..=k).map(|i| format!("E{i}")).collect());
        if !perms.iter().all(|p| minus_i.preserves(p)) {
            return Err(format!("k = {k}: a signed permutation fails to preserve -I"));
        }
        let n = perms.len();
        let twisted = enumerate_distinct_twisted_isometries(&l, 1, k).map_err(|e| e.to_string())?.len();
        if BigUint::from(n) != count_signed_permutation_isometries(k as u32) || twisted != n {
            return Err(format!("k = {k}: {n} signed permutations, {twisted} distinct composites"));
        }
        sizes.insert(k, n);
    }
    Ok(format!("m = 1..50 agree; 2^17 17! = {want}; enumerations {sizes:?}"))
}

pub fn run(seed: u64, fx: &Fixtures) -> Report {
    let s = Duration::from_secs;
    let checks = vec![
        timed("A1", s(1), a1),
        timed("A2", s(5), a2),
        timed("A3", s(5), a3),
        timed("A4", s(10), || a4(fx)),
        timed("A5", s(1), a5),
        timed("A6", s(1), || a6(fx)),
        timed("A7", s(1), || a7(fx)),
        timed("A8", s(60), || a8(seed)),
        timed("A9", s(1), a9),
        timed("A10", s(5), a10),
    ];
    Report { checks }
}
