use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

/// Degrees of graded modules.
pub type Deg = Rational64;

pub fn deg(n: i64) -> Deg {
    Deg::from_integer(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("the reduced part must not contain towers")]
    TowerInReducedPart,
    #[error("bar flavoured modules have no torsion")]
    TorsionInBar,
    #[error("torsion orders must be at least one")]
    ZeroOrder,
    #[error("malformed module: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// Towers `F[U^-1]`, bounded below; degrees name the bottom.
    Plus,
    /// Towers `F[[U]]`, bounded above; degrees name the top.
    Minus,
    /// Towers `F[U, U^-1]`; degrees name a representative of the parity.
    Bar,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Plus => "plus",
            Flavor::Minus => "minus",
            Flavor::Bar => "bar",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "plus" => Some(Flavor::Plus),
            "minus" | "hat" | "from" => Some(Flavor::Minus),
            "bar" => Some(Flavor::Bar),
            _ => None,
        }
    }
}

/// `F[U]/U^order` with its generator in `degree`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Torsion {
    pub degree: Deg,
    pub order: u32,
}

/// Finitely generated graded module over `F[U]` (with `U` of degree -2),
/// a sum of towers and cyclic torsion summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedFUModule {
    pub flavor: Flavor,
    pub towers: Vec<Deg>,
    pub torsion: Vec<Torsion>,
}

impl GradedFUModule {
    pub fn new(flavor: Flavor, towers: Vec<Deg>, torsion: Vec<Torsion>) -> Result<Self, ModuleError> {
        if torsion.iter().any(|t| t.order == 0) {
            return Err(ModuleError::ZeroOrder);
        }
        if flavor == Flavor::Bar && !torsion.is_empty() {
            return Err(ModuleError::TorsionInBar);
        }
        let mut m = GradedFUModule {
            flavor,
            towers,
            torsion,
        };
        m.canonicalize();
        Ok(m)
    }

    pub fn zero(flavor: Flavor) -> Self {
        GradedFUModule {
            flavor,
            towers: vec![],
            torsion: vec![],
        }
    }

    pub fn tower(flavor: Flavor, d: Deg) -> Self {
        GradedFUModule {
            flavor,
            towers: vec![d],
            torsion: vec![],
        }
    }

    /// `F^k` concentrated in degree `d`.
    pub fn field_sum(flavor: Flavor, k: usize, d: Deg) -> Self {
        GradedFUModule {
            flavor,
            towers: vec![],
            torsion: vec![Torsion { degree: d, order: 1 }; k],
        }
    }

    fn canonicalize(&mut self) {
        self.towers.sort();
        self.torsion.sort();
    }

    pub fn is_zero(&self) -> bool {
        self.towers.is_empty() && self.torsion.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.towers.len()
    }

    pub fn shift(&self, d: Deg) -> Self {
        GradedFUModule {
            flavor: self.flavor,
            towers: self.towers.iter().map(|t| t + d).collect(),
            torsion: self
                .torsion
                .iter()
                .map(|t| Torsion {
                    degree: t.degree + d,
                    order: t.order,
                })
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = self.clone();
        m.towers.extend(other.towers.iter().cloned());
        m.torsion.extend(other.torsion.iter().cloned());
        m.canonicalize();
        m
    }

    /// Only the `U`-torsion summands.
    pub fn reduced_part(&self) -> Self {
        GradedFUModule {
            flavor: self.flavor,
            towers: vec![],
            torsion: self.torsion.clone(),
        }
    }

    /// Tower part and reduced part.
    pub fn disassemble(&self) -> (Vec<Deg>, GradedFUModule) {
        (self.towers.clone(), self.reduced_part())
    }

    /// Dimension over `F` in each degree of the torsion part.
    pub fn torsion_dimensions(&self) -> BTreeMap<Deg, usize> {
        let mut out = BTreeMap::new();
        for t in &self.torsion {
            for k in 0..t.order {
                *out.entry(t.degree - deg(2 * k as i64)).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "flavor": self.flavor.name(),
            "towers": self.towers.iter().map(deg_to_json).collect::<Vec<_>>(),
            "torsion": self
                .torsion
                .iter()
                .map(|t| json!({"degree": deg_to_json(&t.degree), "order": t.order}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ModuleError> {
        let bad = |s: &str| ModuleError::Malformed(s.into());
        let flavor = v
            .get("flavor")
            .and_then(Value::as_str)
            .and_then(Flavor::parse)
            .ok_or_else(|| bad("missing flavor"))?;
        let towers = v
            .get("towers")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing towers"))?
            .iter()
            .map(|t| deg_from_json(t).ok_or_else(|| bad("bad tower degree")))
            .collect::<Result<Vec<_>, _>>()?;
        let torsion = v
            .get("torsion")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing torsion"))?
            .iter()
            .map(|t| {
                let degree = t.get("degree").and_then(deg_from_json).ok_or_else(|| bad("bad torsion degree"))?;
                let order = t
                    .get("order")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("bad torsion order"))?;
                Ok(Torsion {
                    degree,
                    order: order as u32,
                })
            })
            .collect::<Result<Vec<_>, ModuleError>>()?;
        GradedFUModule::new(flavor, towers, torsion)
    }
}

/// Towers at the given degrees summed with a reduced part.
pub fn assemble(tower_degrees: &[Deg], reduced: &GradedFUModule) -> Result<GradedFUModule, ModuleError> {
    if !reduced.towers.is_empty() {
        return Err(ModuleError::TowerInReducedPart);
    }
    GradedFUModule::new(reduced.flavor, tower_degrees.to_vec(), reduced.torsion.clone())
}

pub fn deg_to_json(d: &Deg) -> Value {
    if d.is_integer() {
        json!(d.to_integer())
    } else {
        json!(format!("{}/{}", d.numer(), d.denom()))
    }
}

pub fn deg_from_json(v: &Value) -> Option<Deg> {
    if let Some(n) = v.as_i64() {
        return Some(deg(n));
    }
    parse_deg(v.as_str()?)
}

pub fn parse_deg(s: &str) -> Option<Deg> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Deg::new(n.trim().parse().ok()?, d))
        }
        None => s.parse().ok().map(deg),
    }
}

fn fmt_deg(d: &Deg) -> String {
    if d.is_integer() {
        d.to_integer().to_string()
    } else {
        format!("{}/{}", d.numer(), d.denom())
    }
}

fn power(k: usize) -> String {
    if k == 1 {
        String::new()
    } else {
        format!("^{k}")
    }
}

impl fmt::Display for GradedFUModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let t = match self.flavor {
            Flavor::Plus => "T+",
            Flavor::Minus => "T-hat",
            Flavor::Bar => "T-bar",
        };
        let mut parts = Vec::new();
        let mut towers: BTreeMap<&Deg, usize> = BTreeMap::new();
        for d in &self.towers {
            *towers.entry(d).or_insert(0) += 1;
        }
        for (d, k) in towers {
            parts.push(format!("{t}{}({})", power(k), fmt_deg(d)));
        }
        let mut tors: BTreeMap<(u32, &Deg), usize> = BTreeMap::new();
        for x in &self.torsion {
            *tors.entry((x.order, &x.degree)).or_insert(0) += 1;
        }
        let mut tors: Vec<_> = tors.into_iter().collect();
        tors.sort_by(|a, b| b.0 .1.cmp(a.0 .1).then(a.0 .0.cmp(&b.0 .0)));
        for ((order, d), k) in tors {
            if order == 1 {
                parts.push(format!("F{}({})", power(k), fmt_deg(d)));
            } else {
                parts.push(format!("(F[U]/U^{order}){}({})", power(k), fmt_deg(d)));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_json() {
        let m = assemble(&[deg(0)], &GradedFUModule::field_sum(Flavor::Plus, 2, deg(-1))).unwrap();
        assert_eq!(m.to_string(), "T+(0) + F^2(-1)");
        assert_eq!(GradedFUModule::from_json(&m.to_json()).unwrap(), m);
        let q = GradedFUModule::tower(Flavor::Minus, Deg::new(-1, 2));
        assert_eq!(GradedFUModule::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn assemble_rejects_towers() {
        let t = GradedFUModule::tower(Flavor::Minus, deg(0));
        assert_eq!(assemble(&[], &t), Err(ModuleError::TowerInReducedPart));
    }

    #[test]
    fn bar_has_no_torsion() {
        let r = GradedFUModule::new(Flavor::Bar, vec![], vec![Torsion { degree: deg(0), order: 1 }]);
        assert_eq!(r, Err(ModuleError::TorsionInBar));
    }
}
