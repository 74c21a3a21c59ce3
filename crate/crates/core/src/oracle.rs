//! Empirical cross-checks of the analytic classification.
//!
//! Filled Julia sets are rasterized as binary masks, either from the analytic
//! product description or from brute-force escape time, and their connectivity
//! is measured by 4-connected flood fill. A raster cannot certify total
//! disconnection, so [`empirical_chamber`] uses a size proxy: every component
//! spans at most `resolution / 64` pixels.

use std::fmt;

use crate::classify::{quadchotomy, ChamberClass};
use crate::error::{Error, Result};
use crate::escape::{escape_time, mandelbrot_escape, EscapeConfig};
use crate::hypnum::{HyperbolicNumber, DIAGONAL_TOLERANCE};
use crate::realdyn::{self, bounded_real, resolving_depth};
use crate::render::{rasterize, Frame, GridSpec};

/// Parameters `(c_X, c_Y)` used by the default chamber verification: two per
/// nonempty chamber where the chamber has two orientations, plus four empty ones.
pub const REFERENCE_CHAMBER_PARAMETERS: [(f64, f64); 9] = [
    (-1.0, -1.0),
    (-1.5, 0.1),
    (-2.5, -1.0),
    (-1.0, -2.5),
    (-2.5, -2.5),
    (0.5, 0.5),
    (0.5, -1.0),
    (-1.0, 0.5),
    (-2.5, 0.5),
];

/// Viewport of the Mandelbrot square check, in characteristic coordinates.
pub const SQUARE_VIEWPORT: (f64, f64) = (-3.0, 1.25);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMask {
    pub width: usize,
    pub height: usize,
    pub bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), width * height, "mask length does not match dimensions");
        Self {
            width,
            height,
            bits,
        }
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let bits = (0..height)
            .flat_map(|j| (0..width).map(move |i| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::new(width, height, bits)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[j * self.width + i]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Set pixels with a 4-neighbor that is unset or off the raster.
    pub fn boundary_pixels(&self) -> usize {
        let (w, h) = (self.width, self.height);
        let mut n = 0;
        for j in 0..h {
            for i in 0..w {
                if !self.get(i, j) {
                    continue;
                }
                let interior = i > 0
                    && j > 0
                    && i + 1 < w
                    && j + 1 < h
                    && self.get(i - 1, j)
                    && self.get(i + 1, j)
                    && self.get(i, j - 1)
                    && self.get(i, j + 1);
                if !interior {
                    n += 1;
                }
            }
        }
        n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaskSource {
    /// Product of the one-dimensional bounded sets; characteristic grids only.
    Analytic,
    /// Survivors of [`escape_time`] at each pixel center.
    Escape,
}

/// Rasterizes the filled Julia set of `z² + c`.
///
/// The analytic source tests each pixel center coordinatewise with
/// [`bounded_real`]. For a Cantor factor the iteration depth is the one that
/// resolves the set at the pixel size of that axis (see
/// [`realdyn::resolving_depth`]), capped at `cfg.max_iter`; deeper iteration
/// would leave no pixel center inside a measure-zero set.
pub fn rasterize_julia_mask(
    c: HyperbolicNumber,
    spec: &GridSpec,
    cfg: &EscapeConfig,
    source: MaskSource,
    workers: usize,
) -> Result<BinaryMask> {
    spec.validate()?;
    cfg.validate()?;
    let bits = match source {
        MaskSource::Escape => rasterize(spec, workers, |z0| escape_time(z0, c, cfg).survived()),
        MaskSource::Analytic => {
            if spec.frame != Frame::Characteristic {
                return Err(Error::AnalyticNeedsCharacteristicFrame);
            }
            let cc = c.to_char();
            if cc.big_x.abs() <= DIAGONAL_TOLERANCE || cc.big_y.abs() <= DIAGONAL_TOLERANCE {
                return Err(Error::AxisParameter {
                    c_x: cc.big_x,
                    c_y: cc.big_y,
                });
            }
            let depth_x = resolving_depth(cc.big_x, spec.pixel_width()).min(cfg.max_iter);
            let depth_y = resolving_depth(cc.big_y, spec.pixel_height()).min(cfg.max_iter);
            rasterize(spec, workers, |z0| {
                let z = z0.to_char();
                bounded_real(z.big_x, cc.big_x, depth_x) && bounded_real(z.big_y, cc.big_y, depth_y)
            })
        }
    };
    Ok(BinaryMask::new(spec.width, spec.height, bits))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectivityReport {
    pub component_count: usize,
    /// Pixel counts, largest first.
    pub component_sizes: Vec<usize>,
    /// Share of set pixels in the largest component; 0 for an empty mask.
    pub largest_fraction: f64,
    /// Largest Chebyshev extent (bounding-box side minus one) over all components.
    pub max_component_diameter_px: usize,
}

/// Order in which [`flood_components_in_order`] seeds and expands components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    RowMajor,
    ColumnMajor,
}

/// 4-connected components of `mask`.
pub fn flood_components(mask: &BinaryMask) -> ConnectivityReport {
    flood_components_in_order(mask, ScanOrder::RowMajor)
}

pub fn flood_components_in_order(mask: &BinaryMask, order: ScanOrder) -> ConnectivityReport {
    let (w, h) = (mask.width, mask.height);
    let mut seen = vec![false; w * h];
    let mut sizes = Vec::new();
    let mut max_diameter = 0;
    let mut stack = Vec::new();

    let seeds: Box<dyn Iterator<Item = (usize, usize)>> = match order {
        ScanOrder::RowMajor => Box::new((0..h).flat_map(move |j| (0..w).map(move |i| (i, j)))),
        ScanOrder::ColumnMajor => Box::new((0..w).flat_map(move |i| (0..h).map(move |j| (i, j)))),
    };

    for (si, sj) in seeds {
        let k = sj * w + si;
        if !mask.bits[k] || seen[k] {
            continue;
        }
        seen[k] = true;
        stack.push((si, sj));
        let (mut size, mut lo_i, mut hi_i, mut lo_j, mut hi_j) = (0, si, si, sj, sj);
        while let Some((i, j)) = stack.pop() {
            size += 1;
            lo_i = lo_i.min(i);
            hi_i = hi_i.max(i);
            lo_j = lo_j.min(j);
            hi_j = hi_j.max(j);
            let mut neighbors = [
                (i.wrapping_sub(1), j),
                (i + 1, j),
                (i, j.wrapping_sub(1)),
                (i, j + 1),
            ];
            if order == ScanOrder::ColumnMajor {
                neighbors.reverse();
            }
            for (ni, nj) in neighbors {
                if ni >= w || nj >= h {
                    continue;
                }
                let nk = nj * w + ni;
                if mask.bits[nk] && !seen[nk] {
                    seen[nk] = true;
                    stack.push((ni, nj));
                }
            }
        }
        sizes.push(size);
        max_diameter = max_diameter.max((hi_i - lo_i).max(hi_j - lo_j));
    }

    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let total: usize = sizes.iter().sum();
    ConnectivityReport {
        component_count: sizes.len(),
        largest_fraction: if total == 0 {
            0.0
        } else {
            sizes[0] as f64 / total as f64
        },
        component_sizes: sizes,
        max_component_diameter_px: max_diameter,
    }
}

/// Largest component diameter, in pixels, still read as "totally disconnected".
pub fn dust_threshold(resolution: usize) -> usize {
    resolution / 64
}

/// Chamber read off a raster: no components is empty, one is connected, and
/// several components count as dust when none is wider than
/// [`dust_threshold`].
pub fn empirical_chamber(report: &ConnectivityReport, resolution: usize) -> ChamberClass {
    match report.component_count {
        0 => ChamberClass::Empty,
        1 => ChamberClass::ConnectedNonempty,
        _ if report.max_component_diameter_px <= dust_threshold(resolution) => {
            ChamberClass::TotallyDisconnected
        }
        _ => ChamberClass::Disconnected,
    }
}

/// Characteristic-frame square used to rasterize the Julia set of `c`: centered
/// on the origin, half-width `max(2.5, 1.1 ρ₊)` over the nonempty factors.
pub fn julia_viewport(c: HyperbolicNumber, resolution: usize) -> Result<GridSpec> {
    let cc = c.to_char();
    let reach = [cc.big_x, cc.big_y]
        .into_iter()
        .filter_map(|v| realdyn::classify_real(v).rho_plus())
        .fold(0.0, f64::max);
    let half = (1.1 * reach).max(2.5);
    GridSpec::square(Frame::Characteristic, -half, half, resolution)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChamberCheck {
    pub c_x: f64,
    pub c_y: f64,
    pub expected: ChamberClass,
    /// `None` when the parameter could not be rasterized (axis parameters).
    pub observed: Option<ChamberClass>,
    pub report: Option<ConnectivityReport>,
}

impl ChamberCheck {
    pub fn passed(&self) -> bool {
        self.observed == Some(self.expected)
    }
}

impl fmt::Display for ChamberCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} expected={} observed={} components={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.c_x,
            self.c_y,
            self.expected.name(),
            self.observed.map_or("none", |o| o.name()),
            self.report.as_ref().map_or(0, |r| r.component_count),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadchotomyReport {
    pub resolution: usize,
    pub checks: Vec<ChamberCheck>,
}

impl QuadchotomyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(ChamberCheck::passed)
    }
}

impl fmt::Display for QuadchotomyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

/// Compares the predicted chamber of each parameter with the chamber read off
/// its analytic mask at `resolution²`. Failures are reported, not raised.
pub fn verify_quadchotomy(
    parameters: &[HyperbolicNumber],
    resolution: usize,
    cfg: &EscapeConfig,
    workers: usize,
) -> Result<QuadchotomyReport> {
    cfg.validate()?;
    let mut checks = Vec::with_capacity(parameters.len());
    for &c in parameters {
        let cc = c.to_char();
        let expected = quadchotomy(c);
        let spec = julia_viewport(c, resolution)?;
        let (observed, report) =
            match rasterize_julia_mask(c, &spec, cfg, MaskSource::Analytic, workers) {
                Ok(mask) => {
                    let report = flood_components(&mask);
                    (Some(empirical_chamber(&report, resolution)), Some(report))
                }
                Err(Error::AxisParameter { .. }) => (None, None),
                Err(e) => return Err(e),
            };
        checks.push(ChamberCheck {
            c_x: cc.big_x,
            c_y: cc.big_y,
            expected,
            observed,
            report,
        });
    }
    Ok(QuadchotomyReport { resolution, checks })
}

pub fn reference_parameters() -> Vec<HyperbolicNumber> {
    REFERENCE_CHAMBER_PARAMETERS
        .iter()
        .map(|&(x, y)| HyperbolicNumber::from_char_xy(x, y))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareViolation {
    pub c_x: f64,
    pub c_y: f64,
    pub expected_survive: bool,
    pub escaped_at: Option<u32>,
}

impl fmt::Display for SquareViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let observed = match self.escaped_at {
            Some(n) => format!("escape@{n}"),
            None => "survive".to_string(),
        };
        write!(
            f,
            "FAIL {} {} expected={} observed={}",
            self.c_x,
            self.c_y,
            if self.expected_survive { "survive" } else { "escape" },
            observed
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquareReport {
    pub resolution: usize,
    pub margin: f64,
    pub inside_checked: usize,
    pub outside_checked: usize,
    pub violations: Vec<SquareViolation>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SquareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        writeln!(
            f,
            "{} mandelbrot-square resolution={} margin={} inside={} outside={} violations={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.resolution,
            self.margin,
            self.inside_checked,
            self.outside_checked,
            self.violations.len()
        )
    }
}

/// Where a characteristic-frame parameter sits relative to `S ∪ D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareRegion {
    /// At least `margin` inside `S` along both axes.
    Inside,
    /// At least `margin` away from `S` and from both diagonals.
    Outside,
    /// Within `margin` of a wall or a diagonal; not asserted.
    Band,
}

pub fn square_region(c_x: f64, c_y: f64, margin: f64) -> SquareRegion {
    let inside = |v: f64| v >= -2.0 + margin && v <= 0.25 - margin;
    if inside(c_x) && inside(c_y) {
        return SquareRegion::Inside;
    }
    let gap = |v: f64| (-2.0 - v).max(v - 0.25).max(0.0);
    let to_square = gap(c_x).hypot(gap(c_y));
    if to_square >= margin && c_x.abs() >= margin && c_y.abs() >= margin {
        SquareRegion::Outside
    } else {
        SquareRegion::Band
    }
}

/// Samples a characteristic grid over [`SQUARE_VIEWPORT`]² and checks that points
/// well inside `S` survive and points well outside `S ∪ D` escape.
pub fn verify_mandelbrot_square(
    resolution: usize,
    margin: f64,
    cfg: &EscapeConfig,
    workers: usize,
) -> Result<SquareReport> {
    cfg.validate()?;
    if !(margin > 0.0) {
        return Err(Error::InvalidConfig(format!("margin must be positive, got {margin}")));
    }
    let (lo, hi) = SQUARE_VIEWPORT;
    let spec = GridSpec::square(Frame::Characteristic, lo, hi, resolution)?;
    let escapes = rasterize(&spec, workers, |c| mandelbrot_escape(c, cfg).escaped_at);

    let mut report = SquareReport {
        resolution,
        margin,
        inside_checked: 0,
        outside_checked: 0,
        violations: Vec::new(),
    };
    for j in 0..spec.height {
        let c_y = spec.v_center(j);
        for i in 0..spec.width {
            let c_x = spec.u_center(i);
            let escaped_at = escapes[j * spec.width + i];
            let expected_survive = match square_region(c_x, c_y, margin) {
                SquareRegion::Inside => {
                    report.inside_checked += 1;
                    true
                }
                SquareRegion::Outside => {
                    report.outside_checked += 1;
                    false
                }
                SquareRegion::Band => continue,
            };
            if escaped_at.is_none() != expected_survive {
                report.violations.push(SquareViolation {
                    c_x,
                    c_y,
                    expected_survive,
                    escaped_at,
                });
            }
        }
    }
    Ok(report)
}

/// Pixels on which two masks of equal size disagree.
pub fn mask_disagreement(a: &BinaryMask, b: &BinaryMask) -> usize {
    assert_eq!((a.width, a.height), (b.width, b.height));
    a.bits.iter().zip(&b.bits).filter(|(p, q)| p != q).count()
}
