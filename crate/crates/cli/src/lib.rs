//! The `floer` command line tool.

pub mod recipes;
pub mod selftest;
pub mod triangle_io;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use floer_core::graded_modules::{involution_check, GradedFUModule};
use floer_core::knot_complex::build_cfk;
use floer_core::lattice::{
    alpha_class, blowup_lattice, count_signed_permutation_isometries, formal_dimension,
};
use floer_core::surgery_cone::{build_cone_mode, FlipMode};
use floer_core::{parse_knot, FilteredComplex};

#[derive(Parser, Debug)]
#[command(name = "floer", version, about = "Knot Floer complexes, surgery cones and exact triangles")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Knot Floer complex of `K(epsilon, braid word)`.
    Cfk {
        spec: String,
        /// Print the Heegaard diagram instead of the complex.
        #[arg(long)]
        diagram: bool,
    },
    /// Plus flavoured Floer homology of integer surgery.
    Surgery(SurgeryArgs),
    /// Deduce reduced parts along an exact triangle given as JSON.
    Triangle {
        #[arg(long)]
        input: PathBuf,
    },
    /// Blow-up lattices, their reflections and isometry counts.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Run a named computation and compare it with its fixture.
    Recipe {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory holding `recipes.json`, instead of the built-in copy.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
pub struct SurgeryArgs {
    /// Complex JSON as written by `cfk`.
    #[arg(long, conflicts_with = "knot", required_unless_present = "knot")]
    pub complex: Option<PathBuf>,
    /// Knot spec, as an alternative to `--complex`.
    #[arg(long)]
    pub knot: Option<String>,
    #[arg(short = 'n', allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, value_enum, default_value_t = Mode::Chain)]
    pub mode: Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Chain,
    Homology,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Coordinates and square of `alpha_m`.
    Alpha {
        #[arg(short = 'm')]
        m: u32,
    },
    /// Formal dimension of the class `alpha_m`.
    Dim {
        #[arg(short = 'm')]
        m: u32,
    },
    /// Number of signed permutations of `k` letters.
    Count {
        #[arg(short = 'k')]
        k: u32,
    },
}

/// A domain error, carrying the error variant name.
#[derive(Debug)]
pub struct Failure {
    pub name: String,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.message)
    }
}

impl Failure {
    pub fn new(name: &str, message: impl Into<String>) -> Self {
        Failure {
            name: name.into(),
            message: message.into(),
        }
    }

    pub fn from_error<E: fmt::Debug + fmt::Display>(e: E) -> Self {
        let dbg = format!("{e:?}");
        let mut name: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
        // unwrap one level of wrapping enums
        if let Some(inner) = dbg.strip_prefix(&format!("{name}(")) {
            let n: String = inner.chars().take_while(|c| c.is_alphanumeric()).collect();
            if n.chars().next().is_some_and(|c| c.is_uppercase()) {
                name = n;
            }
        }
        Failure::new(&name, e.to_string())
    }
}

pub struct Output {
    pub json: Value,
    pub table: String,
}

fn module_table(m: &GradedFUModule) -> String {
    format!("{m}\nreduced: {}", m.reduced_part())
}

pub fn complex_table(c: &FilteredComplex) -> String {
    let mut s = String::from("generator  A  M\n");
    for g in &c.generators {
        s += &format!("{:<9} {:>2} {:>2}\n", g.name, g.alexander, g.maslov);
    }
    for a in &c.differential {
        let u = match a.u_power {
            0 => String::new(),
            1 => "U ".into(),
            k => format!("U^{k} "),
        };
        s += &format!("d {} -> {u}{}\n", c.generators[a.from].name, c.generators[a.to].name);
    }
    s.trim_end().to_string()
}

fn load_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new("Io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::new("Malformed", format!("{}: {e}", path.display())))
}

pub fn cfk(spec: &str, diagram: bool) -> Result<Output, Failure> {
    let k = parse_knot(spec).map_err(Failure::from_error)?;
    if diagram {
        let conv = floer_core::braid_diagram::Conventions::default();
        let d = floer_core::braid_diagram::knot_diagram(&conv, &k).map_err(Failure::from_error)?;
        let json = d.to_json();
        return Ok(Output {
            table: serde_json::to_string(&json).expect("serializable"),
            json,
        });
    }
    let c = build_cfk(&k).map_err(Failure::from_error)?;
    Ok(Output {
        json: c.to_json(),
        table: complex_table(&c),
    })
}

pub fn surgery(a: &SurgeryArgs) -> Result<Output, Failure> {
    let c = match (&a.complex, &a.knot) {
        (Some(p), _) => FilteredComplex::from_json(&load_json(p)?).map_err(Failure::from_error)?,
        (None, Some(k)) => build_cfk(&parse_knot(k).map_err(Failure::from_error)?).map_err(Failure::from_error)?,
        (None, None) => return Err(Failure::new("Usage", "one of --complex or --knot is required")),
    };
    let mode = match a.mode {
        Mode::Chain => FlipMode::Chain,
        Mode::Homology => FlipMode::Homology,
    };
    let cone = build_cone_mode(&c, a.n, mode).map_err(Failure::from_error)?;
    let m = cone.homology();
    let mut json = m.to_json();
    json["reduced"] = m.reduced_part().to_json();
    json["cone"] = cone.metadata();
    Ok(Output {
        json,
        table: module_table(&m),
    })
}

pub fn lattice(cmd: &LatticeCmd) -> Result<Output, Failure> {
    let bad_m = |m: u32| {
        if m == 0 {
            Err(Failure::new("DimensionMismatch", "m must be at least 1"))
        } else {
            Ok(())
        }
    };
    Ok(match *cmd {
        LatticeCmd::Alpha { m } => {
            bad_m(m)?;
            let l = blowup_lattice(m);
            let a = alpha_class(&l, m).map_err(Failure::from_error)?;
            let sq = l.pair(&a, &a);
            Output {
                table: format!("alpha_{m} = {}H - sum of {} E_i\nsquare {sq}", 2 * m + 1, l.rank() - 1),
                json: json!({"m": m, "rank": l.rank(), "coords": a, "square": sq}),
            }
        }
        LatticeCmd::Dim { m } => {
            bad_m(m)?;
            let l = blowup_lattice(m);
            let d = formal_dimension(&l, &alpha_class(&l, m).map_err(Failure::from_error)?).map_err(Failure::from_error)?;
            Output {
                table: d.to_string(),
                json: json!({"m": m, "dimension": d.to_string()}),
            }
        }
        LatticeCmd::Count { k } => {
            let n = count_signed_permutation_isometries(k).to_string();
            Output {
                table: n.clone(),
                json: json!({"k": k, "count": n}),
            }
        }
    })
}

fn emit(o: &Output, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&o.json).expect("serializable")),
        Format::Table => println!("{}", o.table),
    }
}

/// Run the tool and return its exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Cfk { spec, diagram } => cfk(spec, *diagram),
        Command::Surgery(a) => surgery(a),
        Command::Triangle { input } => load_json(input).and_then(|v| triangle_io::run(&v)),
        Command::Lattice(l) => lattice(l),
        Command::Recipe { name, list } => match (name, list) {
            (_, true) | (None, false) => Ok(recipes::list()),
            (Some(n), false) => recipes::run_named(n, &recipes::builtin()),
        },
        Command::Selftest { seed, fixtures, timings } => {
            let fx = match fixtures {
                Some(dir) => load_json(&dir.join("recipes.json")).and_then(|v| recipes::Fixtures::from_json(&v)),
                None => Ok(recipes::builtin()),
            };
            match fx {
                Ok(fx) => {
                    let report = selftest::run(*seed, &fx);
                    emit(&report.output(*timings, cli.format == Format::Table && selftest::colour()), cli.format);
                    return if report.all_pass() { 0 } else { 1 };
                }
                Err(e) => Err(e),
            }
        }
    };
    match result {
        Ok(o) => {
            emit(&o, cli.format);
            0
        }
        Err(f) => {
            eprintln!("error: {f}");
            1
        }
    }
}

/// Involution report as printed by the `involution` recipe.
pub fn involution_json() -> Value {
    let r = involution_check(&floer_core::graded_modules::InvolutionAction::main_example()).expect("involution");
    json!({"dim": r.dim, "twist_difference": r.twist_difference, "twist_rank": r.twist_rank})
}
