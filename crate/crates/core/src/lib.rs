//! Quadratic dynamics over the hyperbolic (split-complex) numbers.
//!
//! In characteristic coordinates `X = x - y`, `Y = x + y` the map
//! `z -> z^2 + c` splits into two independent real quadratic maps, so the
//! hyperbolic Mandelbrot set and the filled Julia sets can be described
//! exactly from one-dimensional dynamics. This crate provides:
//!
//! * [`hypnum`]: hyperbolic-number arithmetic and characteristic coordinates,
//! * [`realdyn`]: the real quadratic map, its logistic conjugacy and the
//!   boundedness trichotomy,
//! * [`classify`]: Mandelbrot membership and the four-chamber classification
//!   of filled Julia sets,
//! * [`escape`]: a brute-force escape-time engine,
//! * [`render`]: deterministic parallel rasterization and PPM/CSV output,
//! * [`oracle`]: masks, flood-fill connectivity and cross-checks between the
//!   analytic and brute-force routes.

pub mod classify;
pub mod error;
pub mod escape;
pub mod hypnum;
pub mod oracle;
pub mod realdyn;
pub mod render;

pub use classify::{
    axis_julia, julia_description, julia_membership, mandelbrot_member, quadchotomy, Axis,
    AxisJulia, AxisSet, ChamberClass, JuliaDescription,
};
pub use error::{Error, Result};
pub use escape::{
    escape_time, hyper_orbit, hyper_step, mandelbrot_escape, EscapeConfig, EscapeResult,
};
pub use hypnum::{CharCoords, HyperbolicNumber, DIAGONAL_TOLERANCE};
pub use realdyn::{LogisticParams, RealBoundednessClass};
pub use render::{Frame, GridSpec, Image, IterationGrid};
