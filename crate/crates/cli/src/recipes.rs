//! Named computations with expected results kept in `fixtures/recipes.json`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use floer_core::graded_modules::{
    assemble, deg, triangle_deduce, Flavor, GradedFUModule, TriangleData,
};
use floer_core::knot_complex::build_cfk;
use floer_core::surgery_cone::{genus_bound, quotient_homology, surgery_homology, FlipMode, QuotientKind};
use floer_core::{parse_knot, FilteredComplex};

use crate::{Failure, Output};

pub const KNOT_K: &str = "K(1, T2^2 T3^2 T2^2 T3^-2 T2^-2)";
pub const LEFT_TREFOIL: &str = "K(1, T2^-2 T3^1 T2^2)";
pub const RIGHT_TREFOIL: &str = "K(-1, T2^2 T3^-1 T2^-2)";

const BUILTIN: &str = include_str!("../fixtures/recipes.json");

#[derive(Clone, Debug)]
pub struct Recipe {
    pub name: String,
    pub description: String,
    pub expected: Value,
}

#[derive(Clone, Debug)]
pub struct Fixtures {
    pub recipes: Vec<Recipe>,
}

impl Fixtures {
    pub fn from_json(v: &Value) -> Result<Self, Failure> {
        let bad = |s: String| Failure::new("Malformed", s);
        let list = v
            .get("recipes")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("fixture file has no `recipes` array".into()))?;
        let mut recipes = Vec::new();
        for r in list {
            let name = r.get("name").and_then(Value::as_str).ok_or_else(|| bad("recipe without name".into()))?;
            if !NAMES.contains(&name) {
                return Err(bad(format!("unknown recipe `{name}`")));
            }
            let expected = r.get("expected").cloned().ok_or_else(|| bad(format!("recipe `{name}` has no expected value")))?;
            recipes.push(Recipe {
                name: name.into(),
                description: r.get("description").and_then(Value::as_str).unwrap_or("").into(),
                expected,
            });
        }
        Ok(Fixtures { recipes })
    }

    pub fn get(&self, name: &str) -> Option<&Recipe> {
        self.recipes.iter().find(|r| r.name == name)
    }
}

pub fn builtin() -> Fixtures {
    Fixtures::from_json(&serde_json::from_str(BUILTIN).expect("built-in fixtures parse")).expect("built-in fixtures are valid")
}

pub const NAMES: [&str; 10] = [
    "k-minus1",
    "k-minus1-homology",
    "k-plus1",
    "unknot-minus1",
    "left-trefoil",
    "k-complex",
    "k-quotients",
    "main-assembly",
    "horizontal-triangle",
    "involution",
];

fn knot(spec: &str) -> Result<FilteredComplex, Failure> {
    build_cfk(&parse_knot(spec).map_err(Failure::from_error)?).map_err(Failure::from_error)
}

/// Towers and torsion orders with the gradings forgotten, e.g. `T+ + F`.
pub fn shape(m: &GradedFUModule) -> String {
    let t = match m.flavor {
        Flavor::Plus => "T+",
        Flavor::Minus => "T-hat",
        Flavor::Bar => "T-bar",
    };
    let mut parts: Vec<String> = m.towers.iter().map(|_| t.to_string()).collect();
    for x in &m.torsion {
        parts.push(if x.order == 1 { "F".into() } else { format!("F[U]/U^{}", x.order) });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn quotient_shapes(c: &FilteredComplex) -> BTreeMap<String, String> {
    let g = genus_bound(c);
    let mut out = BTreeMap::new();
    out.insert("B".to_string(), shape(&quotient_homology(c, QuotientKind::B)));
    for s in -(g + 1)..=g + 1 {
        out.insert(format!("A{s}"), shape(&quotient_homology(c, QuotientKind::A(s))));
    }
    out
}

fn surgery(spec: Option<&str>, n: i64, mode: FlipMode) -> Result<Value, Failure> {
    let c = match spec {
        Some(s) => knot(s)?,
        None => FilteredComplex::unknot(),
    };
    Ok(surgery_homology(&c, n, mode).map_err(Failure::from_error)?.to_json())
}

pub fn main_assembly() -> GradedFUModule {
    let red = GradedFUModule::field_sum(Flavor::Minus, 2, deg(1))
        .direct_sum(&GradedFUModule::field_sum(Flavor::Minus, 2, deg(0)))
        .shift(deg(-2));
    assemble(&[deg(-3), deg(-2), deg(-2), deg(-1)], &red).expect("reduced part has no towers")
}

/// `S^1 x S^2 -> Y -> Y' -> S^1 x S^2`, solving for `Y'`.
pub fn horizontal_triangle() -> Result<GradedFUModule, Failure> {
    let s1s2 = assemble(&[deg(-1), deg(-2)], &GradedFUModule::zero(Flavor::Minus)).expect("no towers");
    let t = TriangleData {
        slots: [Some(s1s2), Some(main_assembly()), None],
        map_degrees: [None, Some(deg(0)), None],
        b: 1,
        ag: true,
    };
    let c = triangle_deduce(&t).map_err(Failure::from_error)?;
    match c.solved {
        Some((2, m)) if !c.up_to_shift => Ok(m),
        _ => Err(Failure::new("Unsolved", "third slot not determined")),
    }
}

pub fn compute(name: &str) -> Result<Value, Failure> {
    Ok(match name {
        "k-minus1" => surgery(Some(KNOT_K), -1, FlipMode::Chain)?,
        "k-minus1-homology" => surgery(Some(KNOT_K), -1, FlipMode::Homology)?,
        "k-plus1" => surgery(Some(KNOT_K), 1, FlipMode::Chain)?,
        "unknot-minus1" => surgery(None, -1, FlipMode::Chain)?,
        "left-trefoil" => knot(LEFT_TREFOIL)?.to_json(),
        "k-complex" => knot(KNOT_K)?.to_json(),
        "k-quotients" => json!(quotient_shapes(&knot(KNOT_K)?)),
        "main-assembly" => main_assembly().to_json(),
        "horizontal-triangle" => horizontal_triangle()?.to_json(),
        "involution" => crate::involution_json(),
        _ => return Err(Failure::new("UnknownRecipe", format!("no recipe named `{name}`"))),
    })
}

fn describe(v: &Value) -> String {
    if let Ok(m) = GradedFUModule::from_json(v) {
        return m.to_string();
    }
    if let Ok(c) = FilteredComplex::from_json(v) {
        return crate::complex_table(&c);
    }
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Run a recipe; a mismatch with the fixture is a domain error.
pub fn run_named(name: &str, fx: &Fixtures) -> Result<Output, Failure> {
    let r = fx
        .get(name)
        .ok_or_else(|| Failure::new("UnknownRecipe", format!("no recipe named `{name}`")))?;
    let got = compute(name)?;
    if got != r.expected {
        return Err(Failure::new(
            "FixtureMismatch",
            format!("recipe `{name}` computed {} but the fixture expects {}", describe(&got), describe(&r.expected)),
        ));
    }
    Ok(Output {
        table: describe(&got),
        json: json!({"recipe": name, "result": got, "matches_fixture": true}),
    })
}

pub fn list() -> Output {
    let fx = builtin();
    Output {
        table: fx
            .recipes
            .iter()
            .map(|r| format!("{:<20} {}", r.name, r.description))
            .collect::<Vec<_>>()
            .join("\n"),
        json: json!(fx.recipes.iter().map(|r| json!({"name": r.name, "description": r.description})).collect::<Vec<_>>()),
    }
}
