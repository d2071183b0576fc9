//! Placement of the curves and marked points of the initial diagram and the
//! directions of the twist maps.

use num_traits::{Signed, Zero};

use super::twist::{DehnTwist, HalfTwist, TwistAxis};
use crate::geom::{q, qi, Point, Q};

/// Discrete description of the initial diagram and of the twist maps.
///
/// Coordinates live in the unit square. The horizontal curve is `y = 0`
/// and never moves. The marked points sit next to the centre of the square,
/// side by side or one above the other.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Conventions {
    /// `z` and `w` stacked vertically instead of side by side.
    pub pair_vertical: bool,
    /// `z` at the lower (or left) position.
    pub z_first: bool,
    /// Curve of the full twist.
    pub twist_axis: TwistAxis,
    /// 0: the full-twist curve separates `z` from `w` locally; 1: it runs
    /// away from both points.
    pub twist_slot: u8,
    pub twist_sign: i64,
    pub half_sign: i64,
    /// Horizontal drift of the initial alpha curve per vertical period.
    pub alpha_slope: i64,
    /// 0: alpha passes through the centre; 1: it passes far from it.
    pub alpha_slot: u8,
    /// +1 when alpha is oriented upward.
    pub alpha_orientation: i64,
    /// Letters act in reading order instead of right to left.
    pub left_to_right: bool,
}

const PAIR_OFFSET: (i64, i64) = (1, 16);
const HALF_INNER: (i64, i64) = (1, 8);
const HALF_OUTER: (i64, i64) = (3, 16);
const BAND: (i64, i64) = (1, 64);
const MERIDIAN_X: (i64, i64) = (1, 8);
const AWAY: (i64, i64) = (13, 16);
const ALPHA_AWAY: (i64, i64) = (15, 16);

impl Conventions {
    pub fn center() -> Point {
        Point::new(q(1, 2), q(1, 2))
    }

    pub fn marked_points(&self) -> (Point, Point) {
        let c = Self::center();
        let d = q(PAIR_OFFSET.0, PAIR_OFFSET.1);
        let (lo, hi) = if self.pair_vertical {
            (
                Point::new(c.x.clone(), &c.y - &d),
                Point::new(c.x.clone(), &c.y + &d),
            )
        } else {
            (
                Point::new(&c.x - &d, c.y.clone()),
                Point::new(&c.x + &d, c.y.clone()),
            )
        };
        if self.z_first {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }

    pub fn full_twist(&self, power: i64) -> DehnTwist {
        let offset = if self.twist_slot == 0 {
            q(1, 2)
        } else {
            q(AWAY.0, AWAY.1)
        };
        DehnTwist {
            axis: self.twist_axis,
            offset,
            width: q(BAND.0, BAND.1),
            sign: power * self.twist_sign,
        }
    }

    pub fn half_twist(&self, power: i64) -> HalfTwist {
        HalfTwist::new(
            Self::center(),
            q(HALF_INNER.0, HALF_INNER.1),
            q(HALF_OUTER.0, HALF_OUTER.1),
            power * self.half_sign,
        )
    }

    /// Twist along the vertical meridian used to fix the intersection sign.
    pub fn meridian_twist(power: i64) -> DehnTwist {
        DehnTwist {
            axis: TwistAxis::Vertical,
            offset: q(MERIDIAN_X.0, MERIDIAN_X.1),
            width: q(BAND.0, BAND.1),
            sign: power,
        }
    }

    pub fn meridian_x() -> Q {
        q(MERIDIAN_X.0, MERIDIAN_X.1)
    }

    /// Initial alpha: a straight line through the middle height of the
    /// square, as one vertex and a homology class.
    pub fn initial_alpha(&self) -> (Point, (i64, i64)) {
        let x = if self.alpha_slot == 0 {
            q(1, 2)
        } else {
            q(ALPHA_AWAY.0, ALPHA_AWAY.1)
        };
        let o = self.alpha_orientation;
        (Point::new(x, q(1, 2)), (o * self.alpha_slope, o))
    }

    /// Every choice in the family, in a fixed order.
    pub fn family() -> Vec<Conventions> {
        let mut out = Vec::new();
        for pair_vertical in [false, true] {
            for z_first in [true, false] {
                for twist_axis in [TwistAxis::Vertical, TwistAxis::Horizontal] {
                    for twist_slot in [0, 1] {
                        for twist_sign in [1, -1] {
                            for half_sign in [1, -1] {
                                for alpha_slope in [0, 1, -1] {
                                    for alpha_slot in [0, 1] {
                                        for alpha_orientation in [1, -1] {
                                            for left_to_right in [false, true] {
                                                out.push(Conventions {
                                                    pair_vertical,
                                                    z_first,
                                                    twist_axis,
                                                    twist_slot,
                                                    twist_sign,
                                                    half_sign,
                                                    alpha_slope,
                                                    alpha_slot,
                                                    alpha_orientation,
                                                    left_to_right,
                                                });
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Marked points avoid every curve and band, and the full-twist band
    /// does not meet the half-twist square when it is meant to avoid it.
    pub fn is_admissible(&self) -> bool {
        let (z, w) = self.marked_points();
        let band = q(BAND.0, BAND.1);
        let t = self.full_twist(1);
        let near = |p: &Point, axis: TwistAxis, off: &Q| {
            let u = match axis {
                TwistAxis::Horizontal => &p.y,
                TwistAxis::Vertical => &p.x,
            };
            let d = u - off;
            let d = &d - &Q::from_integer(d.round().to_integer());
            d.abs() <= band
        };
        for p in [&z, &w] {
            if near(p, t.axis, &t.offset) || near(p, TwistAxis::Vertical, &Self::meridian_x()) {
                return false;
            }
            let (v, (dx, dy)) = self.initial_alpha();
            let dir = Point::new(qi(dx), qi(dy));
            for m in -2..=2 {
                for n in -2..=2 {
                    let rel = &(p + &Point::from_ints(m, n)) - &v;
                    if rel.cross(&dir).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Default for Conventions {
    fn default() -> Self {
        FROZEN.clone()
    }
}

/// The conventions reproducing the left-handed trefoil as `K(1, T2^-2 T3 T2^2)`.
pub const FROZEN: Conventions = Conventions {
    pair_vertical: false,
    z_first: true,
    twist_axis: TwistAxis::Vertical,
    twist_slot: 0,
    twist_sign: -1,
    half_sign: 1,
    alpha_slope: 1,
    alpha_slot: 1,
    alpha_orientation: 1,
    left_to_right: false,
};
