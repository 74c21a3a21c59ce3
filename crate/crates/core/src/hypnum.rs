//! Hyperbolic numbers `x + τy` with `τ² = 1`, `τ ≠ ±1`.
//!
//! Values are stored in Cartesian form. Characteristic coordinates
//! `X = x - y`, `Y = x + y` are a view obtained with [`HyperbolicNumber::to_char`];
//! in that frame multiplication is componentwise and the quadratic form is `X·Y`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Absolute tolerance for deciding that a floating value lies on a diagonal `D±`.
pub const DIAGONAL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HyperbolicNumber {
    x: f64,
    y: f64,
}

/// Characteristic coordinates `(X, Y) = (x - y, x + y)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CharCoords {
    pub big_x: f64,
    pub big_y: f64,
}

impl CharCoords {
    pub const fn new(big_x: f64, big_y: f64) -> Self {
        Self { big_x, big_y }
    }

    pub fn to_hyperbolic(self) -> HyperbolicNumber {
        HyperbolicNumber::from_char(self)
    }
}

impl HyperbolicNumber {
    pub const ZERO: Self = Self { x: 0.0, y: 0.0 };
    pub const ONE: Self = Self { x: 1.0, y: 0.0 };
    pub const TAU: Self = Self { x: 0.0, y: 1.0 };

    /// Panics if either component is NaN or infinite.
    pub fn new(x: f64, y: f64) -> Self {
        Self::try_new(x, y).expect("hyperbolic number components must be finite")
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::NonFinite { x, y })
        }
    }

    /// Unchecked constructor for arithmetic results, which may overflow.
    pub(crate) const fn raw(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub const fn real(x: f64) -> Self {
        Self { x, y: 0.0 }
    }

    /// Builds the number whose characteristic coordinates are `(X, Y)`.
    pub fn from_char(c: CharCoords) -> Self {
        Self::raw(0.5 * (c.big_x + c.big_y), 0.5 * (c.big_y - c.big_x))
    }

    pub fn from_char_xy(big_x: f64, big_y: f64) -> Self {
        Self::from_char(CharCoords::new(big_x, big_y))
    }

    pub fn x(self) -> f64 {
        self.x
    }

    pub fn y(self) -> f64 {
        self.y
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_char(self) -> CharCoords {
        CharCoords::new(self.x - self.y, self.x + self.y)
    }

    pub fn conj(self) -> Self {
        Self::raw(self.x, -self.y)
    }

    /// `z·z̄ = x² - y² = X·Y`. Indefinite; zero on both diagonals.
    pub fn quad_form(self) -> f64 {
        // factored form keeps precision near the null cone
        (self.x - self.y) * (self.x + self.y)
    }

    /// On `D₊ = {x = y}`, i.e. `X = 0`.
    pub fn on_d_plus(self) -> bool {
        (self.x - self.y).abs() <= DIAGONAL_TOLERANCE
    }

    /// On `D₋ = {x = -y}`, i.e. `Y = 0`.
    pub fn on_d_minus(self) -> bool {
        (self.x + self.y).abs() <= DIAGONAL_TOLERANCE
    }

    pub fn on_diagonal(self) -> bool {
        self.on_d_plus() || self.on_d_minus()
    }

    pub fn square(self) -> Self {
        self * self
    }
}

impl Add for HyperbolicNumber {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::raw(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for HyperbolicNumber {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::raw(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for HyperbolicNumber {
    type Output = Self;

    fn neg(self) -> Self {
        Self::raw(-self.x, -self.y)
    }
}

impl Mul for HyperbolicNumber {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::raw(
            self.x * rhs.x + self.y * rhs.y,
            self.x * rhs.y + rhs.x * self.y,
        )
    }
}

impl Mul<f64> for HyperbolicNumber {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        Self::raw(self.x * rhs, self.y * rhs)
    }
}

impl fmt::Display for HyperbolicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_sign_negative() {
            write!(f, "{}-{}τ", self.x, -self.y)
        } else {
            write!(f, "{}+{}τ", self.x, self.y)
        }
    }
}
