//! JSON form of exact triangle data.
//!
//! ```json
//! {"slots": [module or null, module or null, module or null],
//!  "map_degrees": [0, null, -1], "b": 1, "ag": true}
//! ```

use serde_json::{json, Value};

use floer_core::graded_modules::module::deg_from_json;
use floer_core::graded_modules::{triangle_deduce, GradedFUModule, TriangleConclusion, TriangleData};

use crate::{Failure, Output};

fn bad(s: &str) -> Failure {
    Failure::new("Malformed", s)
}

pub fn parse(v: &Value) -> Result<TriangleData, Failure> {
    let slots = v.get("slots").and_then(Value::as_array).ok_or_else(|| bad("missing slots"))?;
    if slots.len() != 3 {
        return Err(bad("expected three slots"));
    }
    let mut out: [Option<GradedFUModule>; 3] = [None, None, None];
    for (i, s) in slots.iter().enumerate() {
        if !s.is_null() {
            out[i] = Some(GradedFUModule::from_json(s).map_err(Failure::from_error)?);
        }
    }
    let mut map_degrees = [None; 3];
    if let Some(ds) = v.get("map_degrees").and_then(Value::as_array) {
        if ds.len() != 3 {
            return Err(bad("expected three map degrees"));
        }
        for (i, d) in ds.iter().enumerate() {
            if !d.is_null() {
                map_degrees[i] = Some(deg_from_json(d).ok_or_else(|| bad("bad map degree"))?);
            }
        }
    }
    let b = v.get("b").and_then(Value::as_u64).ok_or_else(|| bad("missing b"))? as u32;
    let ag = v.get("ag").and_then(Value::as_bool).unwrap_or(false);
    Ok(TriangleData {
        slots: out,
        map_degrees,
        b,
        ag,
    })
}

pub fn to_json(c: &TriangleConclusion) -> Value {
    json!({
        "reduced": c.reduced.iter().map(|m| m.as_ref().map_or(Value::Null, |m| m.to_json())).collect::<Vec<_>>(),
        "solved": c.solved.as_ref().map(|(i, m)| json!({"slot": i + 1, "module": m.to_json()})),
        "up_to_shift": c.up_to_shift,
        "constraints": c.constraints,
    })
}

fn table(t: &TriangleData, c: &TriangleConclusion) -> String {
    let mut s = String::new();
    for i in 0..3 {
        let known = t.slots[i].as_ref().map_or("?".to_string(), |m| m.to_string());
        let red = c.reduced[i].as_ref().map_or("?".to_string(), |m| m.to_string());
        s += &format!("M{}: {known}   reduced {red}\n", i + 1);
    }
    if let Some((i, m)) = &c.solved {
        s += &format!("slot {} = {m}{}\n", i + 1, if c.up_to_shift { " (up to shift)" } else { "" });
    }
    for line in &c.constraints {
        s += &format!("{line}\n");
    }
    s.trim_end().to_string()
}

pub fn run(v: &Value) -> Result<Output, Failure> {
    let t = parse(v)?;
    let c = triangle_deduce(&t).map_err(Failure::from_error)?;
    Ok(Output {
        json: to_json(&c),
        table: table(&t, &c),
    })
}
