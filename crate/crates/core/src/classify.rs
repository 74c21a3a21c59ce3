//! Analytic classification in parameter space.
//!
//! Because `z -> z² + c` acts as `(X, Y) -> (X² + c_X, Y² + c_Y)`, the orbit of
//! zero has bounded `|z·z̄| = |X·Y|` exactly when both coordinates stay bounded
//! (the square `S = [-2, 1/4]²`) or one of them is identically zero (the
//! diagonals). Off the diagonals the filled Julia set is the product of the two
//! one-dimensional bounded sets, which gives the four chambers of
//! [`ChamberClass`].

use std::fmt;

use crate::error::{Error, Result};
use crate::hypnum::{HyperbolicNumber, DIAGONAL_TOLERANCE};
use crate::realdyn::{self, RealBoundednessClass};

const WALL_LOW: f64 = -2.0;
const WALL_HIGH: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `c_X = 0`, i.e. `c ∈ D₊`.
    CxZero,
    /// `c_Y = 0`, i.e. `c ∈ D₋`.
    CyZero,
    BothZero,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::CxZero => "cX_zero",
            Axis::CyZero => "cY_zero",
            Axis::BothZero => "both_zero",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChamberClass {
    ConnectedNonempty,
    Disconnected,
    TotallyDisconnected,
    Empty,
    /// A characteristic coordinate of `c` vanishes; `nonaxis_c` is the other one.
    AxisDegenerate { which_axis: Axis, nonaxis_c: f64 },
}

impl ChamberClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ConnectedNonempty => "ConnectedNonempty",
            Self::Disconnected => "Disconnected",
            Self::TotallyDisconnected => "TotallyDisconnected",
            Self::Empty => "Empty",
            Self::AxisDegenerate { .. } => "AxisDegenerate",
        }
    }
}

impl fmt::Display for ChamberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AxisDegenerate {
                which_axis,
                nonaxis_c,
            } => write!(f, "AxisDegenerate[{which_axis},nonaxis_c={nonaxis_c}]"),
            other => f.write_str(other.name()),
        }
    }
}

fn in_walls(v: f64) -> bool {
    (WALL_LOW..=WALL_HIGH).contains(&v)
}

fn axis_of(c: HyperbolicNumber) -> Option<(Axis, f64)> {
    let cc = c.to_char();
    let x_zero = cc.big_x.abs() <= DIAGONAL_TOLERANCE;
    let y_zero = cc.big_y.abs() <= DIAGONAL_TOLERANCE;
    match (x_zero, y_zero) {
        (true, true) => Some((Axis::BothZero, 0.0)),
        (true, false) => Some((Axis::CxZero, cc.big_y)),
        (false, true) => Some((Axis::CyZero, cc.big_x)),
        (false, false) => None,
    }
}

/// Membership in the hyperbolic Mandelbrot set `S ∪ D₊ ∪ D₋`.
pub fn mandelbrot_member(c: HyperbolicNumber) -> bool {
    let cc = c.to_char();
    (in_walls(cc.big_x) && in_walls(cc.big_y)) || axis_of(c).is_some()
}

/// Chamber of the filled Julia set of `z² + c`.
///
/// A coordinate exactly on a wall (`-2` or `1/4`) counts as inside the square,
/// since the bounded set there is still a full interval.
pub fn quadchotomy(c: HyperbolicNumber) -> ChamberClass {
    if let Some((which_axis, nonaxis_c)) = axis_of(c) {
        return ChamberClass::AxisDegenerate {
            which_axis,
            nonaxis_c,
        };
    }
    let cc = c.to_char();
    chamber_from_factors(
        realdyn::classify_real(cc.big_x),
        realdyn::classify_real(cc.big_y),
    )
}

fn chamber_from_factors(fx: RealBoundednessClass, fy: RealBoundednessClass) -> ChamberClass {
    use RealBoundednessClass::*;
    match (fx, fy) {
        (Empty, _) | (_, Empty) => ChamberClass::Empty,
        (Interval { .. }, Interval { .. }) => ChamberClass::ConnectedNonempty,
        (Cantor { .. }, Cantor { .. }) => ChamberClass::TotallyDisconnected,
        _ => ChamberClass::Disconnected,
    }
}

/// The filled Julia set as `factor_x × factor_y` in characteristic coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JuliaDescription {
    pub factor_x: RealBoundednessClass,
    pub factor_y: RealBoundednessClass,
    pub chamber: ChamberClass,
}

fn reject_axis(c: HyperbolicNumber) -> Result<()> {
    if axis_of(c).is_some() {
        let cc = c.to_char();
        return Err(Error::AxisParameter {
            c_x: cc.big_x,
            c_y: cc.big_y,
        });
    }
    Ok(())
}

pub fn julia_description(c: HyperbolicNumber) -> Result<JuliaDescription> {
    reject_axis(c)?;
    let cc = c.to_char();
    let factor_x = realdyn::classify_real(cc.big_x);
    let factor_y = realdyn::classify_real(cc.big_y);
    Ok(JuliaDescription {
        factor_x,
        factor_y,
        chamber: chamber_from_factors(factor_x, factor_y),
    })
}

/// `z0 ∈ K(f_c)` decided coordinatewise: `X0` bounded under `f_{c_X}` and `Y0`
/// bounded under `f_{c_Y}`.
pub fn julia_membership(z0: HyperbolicNumber, c: HyperbolicNumber, max_iter: u32) -> Result<bool> {
    reject_axis(c)?;
    let (z, cc) = (z0.to_char(), c.to_char());
    Ok(realdyn::bounded_real(z.big_x, cc.big_x, max_iter)
        && realdyn::bounded_real(z.big_y, cc.big_y, max_iter))
}

/// Shape claimed for a filled Julia set whose parameter lies on a diagonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AxisSet {
    Empty,
    /// `𝔠 × [-1, 1]` along the zero coordinate, with `𝔠 ⊂ [-outer, -inner] ∪ [inner, outer]`
    /// along the other one.
    SetTimesUnitInterval { outer: f64, inner: f64 },
    /// `c = 0`: `|X0| ≤ 1` and `|Y0| ≤ 1`.
    UnitSquare,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisJulia {
    pub axis: Axis,
    pub nonaxis_c: f64,
    pub set: AxisSet,
    /// `false` for descriptions taken from the published closing analysis, which
    /// has not been checked against iteration (see the `oracle` module for an
    /// empirical view). Only the `c = 0` squaring-map case is verified.
    pub verified: bool,
}

/// Description of the filled Julia set for `c` on a diagonal.
///
/// Stated for `c_Y = 0`; for `c_X = 0` the roles of the coordinates swap.
pub fn axis_julia(c: HyperbolicNumber) -> Result<AxisJulia> {
    let Some((axis, nonaxis_c)) = axis_of(c) else {
        let cc = c.to_char();
        return Err(Error::NotOnAxis {
            c_x: cc.big_x,
            c_y: cc.big_y,
        });
    };
    if axis == Axis::BothZero {
        return Ok(AxisJulia {
            axis,
            nonaxis_c,
            set: AxisSet::UnitSquare,
            verified: true,
        });
    }
    let set = if nonaxis_c > WALL_HIGH {
        AxisSet::Empty
    } else {
        let outer = realdyn::rho_plus(nonaxis_c)?;
        let inner = if nonaxis_c < WALL_LOW {
            realdyn::gamma(nonaxis_c)?
        } else {
            0.0
        };
        AxisSet::SetTimesUnitInterval { outer, inner }
    };
    Ok(AxisJulia {
        axis,
        nonaxis_c,
        set,
        verified: false,
    })
}
