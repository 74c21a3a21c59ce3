//! Brute-force escape-time iteration of `z -> z² + c` over ℍ.
//!
//! An orbit escapes at the first step `n ≥ 1` with `|fⁿ(z0)·conj(fⁿ(z0))| > bound`.
//! The quadratic form vanishes on the null cone, so surviving `max_iter` steps is
//! evidence of boundedness, not a proof; the analytic modules decide membership.

use crate::error::{Error, Result};
use crate::hypnum::HyperbolicNumber;
use crate::realdyn::OVERFLOW_GUARD;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeConfig {
    pub max_iter: u32,
    pub bound: f64,
}

impl Default for EscapeConfig {
    fn default() -> Self {
        Self {
            max_iter: 200,
            bound: 4.0,
        }
    }
}

impl EscapeConfig {
    pub fn new(max_iter: u32, bound: f64) -> Result<Self> {
        let cfg = Self { max_iter, bound };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iter < 1 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if !(self.bound > 0.0) || !self.bound.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "bound must be positive and finite, got {}",
                self.bound
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeResult {
    /// First step at which the bound was exceeded; `None` if the orbit survived.
    pub escaped_at: Option<u32>,
    pub steps_run: u32,
    /// `|z·z̄|` at the last step run.
    pub final_norm_abs: f64,
}

impl EscapeResult {
    pub fn survived(&self) -> bool {
        self.escaped_at.is_none()
    }
}

/// `(x² + y² + c₁, 2xy + c₂)`.
pub fn hyper_step(z: HyperbolicNumber, c: HyperbolicNumber) -> HyperbolicNumber {
    let (x, y) = (z.x(), z.y());
    HyperbolicNumber::raw(x * x + y * y + c.x(), 2.0 * x * y + c.y())
}

fn past_guard(z: HyperbolicNumber) -> bool {
    !(z.x().abs() <= OVERFLOW_GUARD && z.y().abs() <= OVERFLOW_GUARD)
}

pub fn escape_time(z0: HyperbolicNumber, c: HyperbolicNumber, cfg: &EscapeConfig) -> EscapeResult {
    let mut z = z0;
    let mut norm = z.quad_form().abs();
    for n in 1..=cfg.max_iter {
        z = hyper_step(z, c);
        norm = z.quad_form().abs();
        if norm > cfg.bound {
            return EscapeResult {
                escaped_at: Some(n),
                steps_run: n,
                final_norm_abs: norm,
            };
        }
        if past_guard(z) {
            // Only reachable with a vanishing characteristic coordinate: the orbit
            // is pinned to the null cone, where the norm stays put.
            break;
        }
    }
    EscapeResult {
        escaped_at: None,
        steps_run: cfg.max_iter,
        final_norm_abs: norm,
    }
}

/// Escape time of the critical orbit (`z0 = 0`).
pub fn mandelbrot_escape(c: HyperbolicNumber, cfg: &EscapeConfig) -> EscapeResult {
    escape_time(HyperbolicNumber::ZERO, c, cfg)
}

/// `[z0, f(z0), ..., fⁿ(z0)]`; entries past the overflow guard are `None`.
pub fn hyper_orbit(z0: HyperbolicNumber, c: HyperbolicNumber, n: usize) -> Vec<Option<HyperbolicNumber>> {
    let mut orbit = Vec::with_capacity(n + 1);
    let mut z = Some(z0);
    orbit.push(z);
    for _ in 0..n {
        z = z
            .map(|w| hyper_step(w, c))
            .filter(|w| !past_guard(*w));
        orbit.push(z);
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realdyn::real_orbit;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ch(x: f64, y: f64) -> HyperbolicNumber {
        HyperbolicNumber::from_char_xy(x, y)
    }

    #[test]
    fn step_examples() {
        let z = hyper_step(HyperbolicNumber::ZERO, HyperbolicNumber::real(0.2));
        assert_eq!(z, HyperbolicNumber::real(0.2));
        let z = hyper_step(HyperbolicNumber::new(1.0, 1.0), HyperbolicNumber::ZERO);
        assert_eq!(z, HyperbolicNumber::new(2.0, 2.0));
        assert_eq!(z.to_char(), crate::CharCoords::new(0.0, 4.0));
        let z = hyper_step(HyperbolicNumber::ONE, HyperbolicNumber::real(-1.0));
        assert_eq!(z, HyperbolicNumber::ZERO);
    }

    #[test]
    fn config_validation() {
        assert!(EscapeConfig::new(0, 4.0).is_err());
        assert!(EscapeConfig::new(10, 0.0).is_err());
        assert!(EscapeConfig::new(10, f64::NAN).is_err());
        assert_eq!(EscapeConfig::new(200, 4.0).unwrap(), EscapeConfig::default());
    }

    #[test]
    fn escape_examples() {
        let cfg = EscapeConfig::default();
        let r = escape_time(HyperbolicNumber::ZERO, HyperbolicNumber::real(3.0), &cfg);
        assert_eq!(r.escaped_at, Some(1));
        assert_eq!(r.final_norm_abs, 9.0);

        let r = escape_time(HyperbolicNumber::ZERO, HyperbolicNumber::real(0.2), &cfg);
        assert!(r.survived());
        assert_eq!(r.steps_run, 200);

        let r = escape_time(HyperbolicNumber::ZERO, HyperbolicNumber::new(5.0, 5.0), &cfg);
        assert!(r.survived());
        assert_eq!(r.steps_run, 200);
        assert_eq!(r.final_norm_abs, 0.0);

        let r = escape_time(HyperbolicNumber::ZERO, HyperbolicNumber::new(5.0, -5.0), &cfg);
        assert!(r.survived());
    }

    #[test]
    fn mandelbrot_examples() {
        let cfg = EscapeConfig::default();
        assert!(mandelbrot_escape(HyperbolicNumber::ZERO, &cfg).survived());
        let r = mandelbrot_escape(HyperbolicNumber::ONE, &cfg);
        assert_eq!(r.escaped_at, Some(3));
        assert_eq!(r.final_norm_abs, 25.0);
        assert!(mandelbrot_escape(ch(-1.9, -1.9), &cfg).survived());
    }

    #[test]
    fn orbit_examples() {
        let o = hyper_orbit(HyperbolicNumber::ZERO, HyperbolicNumber::ZERO, 5);
        assert_eq!(o, vec![Some(HyperbolicNumber::ZERO); 6]);

        let o = hyper_orbit(HyperbolicNumber::ZERO, HyperbolicNumber::real(-1.0), 4);
        let xs: Vec<f64> = o.iter().map(|z| z.unwrap().x()).collect();
        assert_eq!(xs, vec![0.0, -1.0, 0.0, -1.0, 0.0]);
        assert!(o.iter().all(|z| z.unwrap().y() == 0.0));

        let o = hyper_orbit(ch(1.0, 2.0), HyperbolicNumber::ZERO, 2);
        let cs: Vec<(f64, f64)> = o
            .iter()
            .map(|z| {
                let c = z.unwrap().to_char();
                (c.big_x, c.big_y)
            })
            .collect();
        assert_eq!(cs, vec![(1.0, 2.0), (1.0, 4.0), (1.0, 16.0)]);
    }

    #[test]
    fn orbit_overflow_sentinel() {
        let o = hyper_orbit(HyperbolicNumber::new(3.0, 0.0), HyperbolicNumber::ZERO, 20);
        assert_eq!(o.len(), 21);
        let first = o.iter().position(Option::is_none).unwrap();
        assert!(first > 1);
        assert!(o[first..].iter().all(Option::is_none));
    }

    /// Iterates in the characteristic frame, one real map per coordinate.
    fn char_orbit(z0: HyperbolicNumber, c: HyperbolicNumber, n: usize) -> Vec<(f64, f64)> {
        let (z, cc) = (z0.to_char(), c.to_char());
        real_orbit(z.big_x, cc.big_x, n)
            .into_iter()
            .zip(real_orbit(z.big_y, cc.big_y, n))
            .collect()
    }

    #[test]
    fn decoupling_and_norm_factorization() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut checked = 0;
        while checked < 1_000 {
            let mut r = || rng.gen_range(-1.2..0.2);
            let (z0, c) = (ch(r(), r()), ch(r(), r()));
            let (zc, cc) = (z0.to_char(), c.to_char());
            if !(crate::realdyn::bounded_real(zc.big_x, cc.big_x, 1)
                && crate::realdyn::bounded_real(zc.big_y, cc.big_y, 1))
            {
                continue;
            }
            checked += 1;
            let cart = hyper_orbit(z0, c, 50);
            let chars = char_orbit(z0, c, 50);
            for (z, (bx, by)) in cart.iter().zip(chars) {
                let z = z.expect("bounded seed");
                let back = ch(bx, by);
                let scale = back.x().abs().max(back.y().abs()).max(1.0);
                assert!((z.x() - back.x()).abs() <= 1e-6 * scale);
                assert!((z.y() - back.y()).abs() <= 1e-6 * scale);
                let norm = z.quad_form().abs();
                let product = bx.abs() * by.abs();
                assert!((norm - product).abs() <= 1e-6 * product.max(1.0));
            }
        }
    }

    #[test]
    fn escape_time_is_reproducible() {
        let cfg = EscapeConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..1_000 {
            let z0 = HyperbolicNumber::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let c = HyperbolicNumber::new(rng.gen_range(-2.0..1.0), rng.gen_range(-2.0..2.0));
            let (a, b) = (escape_time(z0, c, &cfg), escape_time(z0, c, &cfg));
            assert_eq!(a.escaped_at, b.escaped_at);
            assert_eq!(a.final_norm_abs.to_bits(), b.final_norm_abs.to_bits());
            if let Some(n) = a.escaped_at {
                assert!(n <= a.steps_run);
            } else {
                assert_eq!(a.steps_run, cfg.max_iter);
            }
        }
    }
}
