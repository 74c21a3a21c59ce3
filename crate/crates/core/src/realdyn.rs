//! The real quadratic map `f_c(x) = x² + c`.
//!
//! For `c ≤ 1/4` the affine change of variables `ξ = (1 - x/ρ₊)/2` conjugates
//! `f_c` to the logistic map `g_r(ξ) = r(1-ξ)ξ` with `r = 2ρ₊(c)`. The set of
//! points with bounded orbits is
//!
//! * a Cantor set inside `[-ρ₊, -γ] ∪ [γ, ρ₊]` for `c < -2`,
//! * the interval `[-ρ₊, ρ₊]` for `-2 ≤ c ≤ 1/4`,
//! * empty for `c > 1/4`.

use crate::error::{Error, Result};

/// Orbits whose magnitude passes this value are replaced by `+∞`.
pub const OVERFLOW_GUARD: f64 = 1e150;

/// Recursion limit for [`meets_bounded_set`] and [`resolving_depth`].
const MAX_REFINE_DEPTH: u32 = 128;

pub fn real_step(x: f64, c: f64) -> f64 {
    x * x + c
}

/// `[x0, f(x0), ..., fⁿ(x0)]`, padded with `+∞` once `|x|` passes [`OVERFLOW_GUARD`].
pub fn real_orbit(x0: f64, c: f64, n: usize) -> Vec<f64> {
    let mut orbit = Vec::with_capacity(n + 1);
    let mut x = x0;
    orbit.push(x);
    for _ in 0..n {
        if x.abs() > OVERFLOW_GUARD {
            orbit.push(f64::INFINITY);
            continue;
        }
        x = real_step(x, c);
        orbit.push(if x.abs() > OVERFLOW_GUARD { f64::INFINITY } else { x });
    }
    orbit
}

fn require_discriminant(op: &'static str, c: f64) -> Result<f64> {
    if c <= 0.25 {
        Ok((1.0 - 4.0 * c).sqrt())
    } else {
        Err(Error::Domain {
            op,
            value: c,
            requirement: "c <= 1/4",
        })
    }
}

/// Largest fixed point `(1 + √(1-4c))/2`.
pub fn rho_plus(c: f64) -> Result<f64> {
    let disc = require_discriminant("rho_plus", c)?;
    Ok(0.5 * (1.0 + disc))
}

/// Fixed points `(ρ₊, ρ₋)` of `f_c`.
pub fn fixed_points(c: f64) -> Result<(f64, f64)> {
    let disc = require_discriminant("fixed_points", c)?;
    Ok((0.5 * (1.0 + disc), 0.5 * (1.0 - disc)))
}

/// Parameters of the logistic map conjugate to `f_c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogisticParams {
    pub r: f64,
    pub rho_plus: f64,
}

pub fn logistic_params(c: f64) -> Result<LogisticParams> {
    let disc = require_discriminant("logistic_params", c)?;
    let rho_plus = 0.5 * (1.0 + disc);
    Ok(LogisticParams {
        r: 2.0 * rho_plus,
        rho_plus,
    })
}

/// `ξ = (1 - x/ρ₊(c))/2`.
pub fn to_logistic(x: f64, c: f64) -> Result<f64> {
    let rho = rho_plus(c).map_err(|_| Error::Domain {
        op: "to_logistic",
        value: c,
        requirement: "c <= 1/4",
    })?;
    Ok(0.5 * (1.0 - x / rho))
}

/// Inverse of [`to_logistic`]: `x = ρ₊(c)(1 - 2ξ)`.
pub fn from_logistic(xi: f64, c: f64) -> Result<f64> {
    let rho = rho_plus(c).map_err(|_| Error::Domain {
        op: "from_logistic",
        value: c,
        requirement: "c <= 1/4",
    })?;
    Ok(rho * (1.0 - 2.0 * xi))
}

pub fn logistic_step(xi: f64, r: f64) -> f64 {
    r * (1.0 - xi) * xi
}

/// Inner radius of the Cantor regime: the nonnegative root of
/// `4γ² = -4c - 2 - 2√(1-4c)`.
pub fn gamma(c: f64) -> Result<f64> {
    let disc = require_discriminant("gamma", c)?;
    let four_gamma_sq = -4.0 * c - 2.0 - 2.0 * disc;
    if four_gamma_sq < 0.0 {
        return Err(Error::Domain {
            op: "gamma",
            value: c,
            requirement: "c <= -2",
        });
    }
    Ok((0.25 * four_gamma_sq).sqrt())
}

/// `(η₋, η₊)` with `η± = (r ± √(r² - 4r)) / 2r`; the logistic Cantor set lies in
/// `[0, η₋] ∪ [η₊, 1]`.
pub fn eta_pm(r: f64) -> Result<(f64, f64)> {
    if !(r >= 4.0) {
        return Err(Error::Domain {
            op: "eta_pm",
            value: r,
            requirement: "r >= 4",
        });
    }
    let root = (r * r - 4.0 * r).sqrt();
    Ok(((r - root) / (2.0 * r), (r + root) / (2.0 * r)))
}

/// The set of real seeds with bounded orbit under `f_c`, with its defining radii.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RealBoundednessClass {
    /// `c < -2`: a Cantor set inside `[-ρ₊, -γ] ∪ [γ, ρ₊]`.
    Cantor { rho_plus: f64, gamma: f64 },
    /// `-2 ≤ c ≤ 1/4`: exactly `[-ρ₊, ρ₊]`.
    Interval { rho_plus: f64 },
    /// `c > 1/4`.
    Empty,
}

impl RealBoundednessClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Cantor { .. } => "Cantor",
            Self::Interval { .. } => "Interval",
            Self::Empty => "Empty",
        }
    }

    pub fn rho_plus(&self) -> Option<f64> {
        match *self {
            Self::Cantor { rho_plus, .. } | Self::Interval { rho_plus } => Some(rho_plus),
            Self::Empty => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }
}

impl std::fmt::Display for RealBoundednessClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Cantor { rho_plus, gamma } => {
                write!(f, "Cantor[rho_plus={rho_plus},gamma={gamma}]")
            }
            Self::Interval { rho_plus } => write!(f, "Interval[rho_plus={rho_plus}]"),
            Self::Empty => f.write_str("Empty"),
        }
    }
}

/// Boundedness trichotomy. The walls `c = -2` and `c = 1/4` belong to `Interval`.
pub fn classify_real(c: f64) -> RealBoundednessClass {
    if c > 0.25 || c.is_nan() {
        return RealBoundednessClass::Empty;
    }
    let disc = (1.0 - 4.0 * c).sqrt();
    let rho_plus = 0.5 * (1.0 + disc);
    if c < -2.0 {
        let gamma = (0.25 * (-4.0 * c - 2.0 - 2.0 * disc)).max(0.0).sqrt();
        RealBoundednessClass::Cantor { rho_plus, gamma }
    } else {
        RealBoundednessClass::Interval { rho_plus }
    }
}

/// Whether the orbit of `x0` under `f_c` stays bounded.
///
/// Exact for the interval and empty regimes. In the Cantor regime the orbit is
/// followed for at most `max_iter` steps; leaving `[-ρ₊, ρ₊]` proves divergence.
pub fn bounded_real(x0: f64, c: f64, max_iter: u32) -> bool {
    match classify_real(c) {
        RealBoundednessClass::Empty => false,
        RealBoundednessClass::Interval { rho_plus } => x0.abs() <= rho_plus,
        RealBoundednessClass::Cantor { rho_plus, .. } => {
            let mut x = x0;
            if !(x.abs() <= rho_plus) {
                return false;
            }
            for _ in 0..max_iter {
                x = real_step(x, c);
                if !(x.abs() <= rho_plus) {
                    return false;
                }
            }
            true
        }
    }
}

/// Whether `[lo, hi]` contains a point with bounded orbit.
///
/// In the Cantor regime the interval is pushed forward through the two monotone
/// branches of `f_c` on `[-ρ₊, -γ]` and `[γ, ρ₊]`; it meets the set iff some
/// branch image keeps meeting `[-ρ₊, ρ₊]`. Images that contain `±ρ₊` (both in the
/// set) end the search.
pub fn meets_bounded_set(lo: f64, hi: f64, c: f64) -> bool {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    match classify_real(c) {
        RealBoundednessClass::Empty => false,
        RealBoundednessClass::Interval { rho_plus } => lo <= rho_plus && hi >= -rho_plus,
        RealBoundednessClass::Cantor { rho_plus, gamma } => {
            meets_cantor(lo, hi, c, rho_plus, gamma, MAX_REFINE_DEPTH)
        }
    }
}

fn meets_cantor(lo: f64, hi: f64, c: f64, rho: f64, gamma: f64, depth: u32) -> bool {
    let a = lo.max(-rho);
    let b = hi.min(rho);
    if a > b {
        return false;
    }
    if lo <= -rho || hi >= rho || depth == 0 {
        return true;
    }
    if a <= -gamma {
        let q = b.min(-gamma);
        if meets_cantor(real_step(q, c), real_step(a, c), c, rho, gamma, depth - 1) {
            return true;
        }
    }
    if b >= gamma {
        let p = a.max(gamma);
        if meets_cantor(real_step(p, c), real_step(b, c), c, rho, gamma, depth - 1) {
            return true;
        }
    }
    false
}

/// Smallest `n` such that every component of `{x : |fᵏ(x)| ≤ ρ₊, k ≤ n}` is at
/// most `width` wide. Sampling [`bounded_real`] on a grid of that spacing with
/// `max_iter = n` resolves the Cantor set at grid scale. Returns 1 outside the
/// Cantor regime, where membership does not depend on depth.
pub fn resolving_depth(c: f64, width: f64) -> u32 {
    let RealBoundednessClass::Cantor { rho_plus, .. } = classify_real(c) else {
        return 1;
    };
    // pieces of level n+1 are the images of level-n pieces under the two inverse branches
    let mut wide = vec![(-rho_plus, rho_plus)];
    let mut depth = 0;
    while !wide.is_empty() && depth < MAX_REFINE_DEPTH {
        depth += 1;
        let mut next = Vec::with_capacity(2 * wide.len());
        for &(a, b) in &wide {
            let p = (a - c).max(0.0).sqrt();
            let q = (b - c).max(0.0).sqrt();
            if q - p > width {
                next.push((p, q));
                next.push((-q, -p));
            }
        }
        wide = next;
    }
    depth.max(1)
}
