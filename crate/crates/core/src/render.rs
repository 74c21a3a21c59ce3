//! Rasterization of parameter space and dynamical space.
//!
//! Every pixel is an independent pure evaluation at its cell center, written to a
//! fixed index of a preallocated row-major buffer. Rows are distributed over a
//! worker pool of the requested size, so the output does not depend on the
//! number of workers.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::escape::{escape_time, mandelbrot_escape, EscapeConfig, EscapeResult};
use crate::hypnum::{CharCoords, HyperbolicNumber};

/// Count stored for pixels whose orbit survived `max_iter` steps.
pub const SURVIVED: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    /// `u = x`, `v = y`.
    Cartesian,
    /// `u = X = x - y`, `v = Y = x + y`.
    Characteristic,
}

impl std::str::FromStr for Frame {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cartesian" => Ok(Frame::Cartesian),
            "characteristic" => Ok(Frame::Characteristic),
            other => Err(format!("unknown frame `{other}` (expected cartesian or characteristic)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub frame: Frame,
    pub min_u: f64,
    pub max_u: f64,
    pub min_v: f64,
    pub max_v: f64,
    pub width: usize,
    pub height: usize,
}

impl GridSpec {
    pub fn new(
        frame: Frame,
        (min_u, max_u): (f64, f64),
        (min_v, max_v): (f64, f64),
        width: usize,
        height: usize,
    ) -> Result<Self> {
        let spec = Self {
            frame,
            min_u,
            max_u,
            min_v,
            max_v,
            width,
            height,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// A `resolution × resolution` grid over `[min, max]²`.
    pub fn square(frame: Frame, min: f64, max: f64, resolution: usize) -> Result<Self> {
        Self::new(frame, (min, max), (min, max), resolution, resolution)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.min_u, self.max_u, self.min_v, self.max_v]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidGrid("viewport bounds must be finite".into()));
        }
        if !(self.max_u > self.min_u) || !(self.max_v > self.min_v) {
            return Err(Error::InvalidGrid(format!(
                "empty viewport [{}, {}] x [{}, {}]",
                self.min_u, self.max_u, self.min_v, self.max_v
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidGrid(format!(
                "grid must be at least 1x1, got {}x{}",
                self.width, self.height
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pixel_width(&self) -> f64 {
        (self.max_u - self.min_u) / self.width as f64
    }

    pub fn pixel_height(&self) -> f64 {
        (self.max_v - self.min_v) / self.height as f64
    }

    /// Center of column `i` in frame coordinates.
    pub fn u_center(&self, i: usize) -> f64 {
        self.min_u + (i as f64 + 0.5) * self.pixel_width()
    }

    /// Center of row `j` in frame coordinates; row 0 is at the top.
    pub fn v_center(&self, j: usize) -> f64 {
        self.max_v - (j as f64 + 0.5) * self.pixel_height()
    }

    fn point(&self, u: f64, v: f64) -> HyperbolicNumber {
        match self.frame {
            Frame::Cartesian => HyperbolicNumber::raw(u, v),
            Frame::Characteristic => HyperbolicNumber::from_char(CharCoords::new(u, v)),
        }
    }

    fn center_unchecked(&self, i: usize, j: usize) -> HyperbolicNumber {
        self.point(self.u_center(i), self.v_center(j))
    }
}

pub fn pixel_center(spec: &GridSpec, i: usize, j: usize) -> Result<HyperbolicNumber> {
    if i >= spec.width || j >= spec.height {
        return Err(Error::PixelOutOfRange {
            i,
            j,
            width: spec.width,
            height: spec.height,
        });
    }
    Ok(spec.center_unchecked(i, j))
}

/// Evaluates `eval` at every pixel center with `workers` threads.
///
/// `workers == 0` is treated as 1.
pub fn rasterize<T, F>(spec: &GridSpec, workers: usize, eval: F) -> Vec<T>
where
    T: Send + Copy + Default,
    F: Fn(HyperbolicNumber) -> T + Sync,
{
    let mut out = vec![T::default(); spec.len()];
    let fill_row = |(j, row): (usize, &mut [T])| {
        for (i, px) in row.iter_mut().enumerate() {
            *px = eval(spec.center_unchecked(i, j));
        }
    };
    let workers = workers.max(1);
    if workers == 1 {
        out.chunks_mut(spec.width).enumerate().for_each(fill_row);
        return out;
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| {
            out.par_chunks_mut(spec.width)
                .enumerate()
                .for_each(fill_row)
        }),
        // no threads available: same result, serially
        Err(_) => out.chunks_mut(spec.width).enumerate().for_each(fill_row),
    }
    out
}

/// Per-pixel escape steps, row-major; [`SURVIVED`] marks surviving orbits.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationGrid {
    pub spec: GridSpec,
    pub counts: Vec<u32>,
    pub cfg: EscapeConfig,
}

impl IterationGrid {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.counts[j * self.spec.width + i]
    }

    pub fn survived_count(&self) -> usize {
        self.counts.iter().filter(|&&n| n == SURVIVED).count()
    }
}

fn count_of(r: EscapeResult) -> u32 {
    r.escaped_at.unwrap_or(SURVIVED)
}

pub fn render_mandelbrot(spec: &GridSpec, cfg: &EscapeConfig, workers: usize) -> Result<IterationGrid> {
    spec.validate()?;
    cfg.validate()?;
    let counts = rasterize(spec, workers, |c| count_of(mandelbrot_escape(c, cfg)));
    Ok(IterationGrid {
        spec: *spec,
        counts,
        cfg: *cfg,
    })
}

pub fn render_julia(
    c: HyperbolicNumber,
    spec: &GridSpec,
    cfg: &EscapeConfig,
    workers: usize,
) -> Result<IterationGrid> {
    spec.validate()?;
    cfg.validate()?;
    let counts = rasterize(spec, workers, |z0| count_of(escape_time(z0, c, cfg)));
    Ok(IterationGrid {
        spec: *spec,
        counts,
        cfg: *cfg,
    })
}

/// 8-bit RGB raster, row-major, top row first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl Image {
    pub fn from_pixels(width: usize, height: usize, rgb: &[[u8; 3]]) -> Self {
        assert_eq!(rgb.len(), width * height, "pixel count does not match dimensions");
        Self {
            width,
            height,
            pixels: rgb.iter().flatten().copied().collect(),
        }
    }

    pub fn pixel(&self, i: usize, j: usize) -> [u8; 3] {
        let k = 3 * (j * self.width + i);
        [self.pixels[k], self.pixels[k + 1], self.pixels[k + 2]]
    }
}

/// Linear red→blue ramp: escape at step 1 is pure red, survivors pure blue.
pub fn color_of(count: u32, max_iter: u32) -> [u8; 3] {
    if count == SURVIVED {
        return [0, 0, 255];
    }
    let t = f64::from(count - 1) / f64::from(max_iter);
    // f64::round rounds half away from zero
    let r = (255.0 * (1.0 - t)).round().clamp(0.0, 255.0) as u8;
    let b = (255.0 * t).round().clamp(0.0, 255.0) as u8;
    [r, 0, b]
}

pub fn colorize(grid: &IterationGrid) -> Image {
    let max_iter = grid.cfg.max_iter;
    Image {
        width: grid.spec.width,
        height: grid.spec.height,
        pixels: grid
            .counts
            .iter()
            .flat_map(|&n| color_of(n, max_iter))
            .collect(),
    }
}

/// Binary PPM (P6, maxval 255).
pub fn write_ppm<W: Write>(img: &Image, mut sink: W) -> io::Result<()> {
    write!(sink, "P6\n{} {}\n255\n", img.width, img.height)?;
    sink.write_all(&img.pixels)?;
    sink.flush()
}

/// CSV `i,j,count` in row-major order; `count = 0` marks survivors.
pub fn write_counts<W: Write>(grid: &IterationGrid, sink: W) -> io::Result<()> {
    let mut out = io::BufWriter::new(sink);
    out.write_all(b"i,j,count\n")?;
    let w = grid.spec.width;
    for (k, n) in grid.counts.iter().enumerate() {
        writeln!(out, "{},{},{}", k % w, k / w, n)?;
    }
    out.flush()
}
