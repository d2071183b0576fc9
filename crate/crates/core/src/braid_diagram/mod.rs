//! Genus one doubly pointed Heegaard diagrams of (1,1)-knots presented by a
//! sign and a braid word.

pub mod braid;
pub mod conventions;
pub mod curve;
pub mod diagram;
pub mod twist;

pub use braid::{parse_braid, parse_knot, BraidError, BraidWord, Generator, KnotSpec, Letter};
pub use conventions::{Conventions, FROZEN};
pub use curve::{LevelCrossing, TorusCurve};
pub use diagram::{
    apply_braid, knot_diagram, lift, normalize_epsilon, reduce_curve, DiagramError, HeegaardDiagram,
    LiftPoint, LiftedDiagram,
};
pub use twist::{DehnTwist, HalfTwist, PlMap, TwistAxis};
