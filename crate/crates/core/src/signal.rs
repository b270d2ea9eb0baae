//! Uniform sample grids and complex signals sampled on them.

use num_complex::Complex64;

use crate::error::{FrftError, Result};

/// Fraction of a grid step within which a requested point counts as lying on
/// a source sample (or inside the sampled range).
const ON_GRID_TOL: f64 = 1e-9;

/// Uniform grid `x0 + i*dx`, `i = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationGrid {
    x0: f64,
    dx: f64,
    count: usize,
}

impl EvaluationGrid {
    pub fn new(x0: f64, dx: f64, count: usize) -> Result<Self> {
        if !x0.is_finite() {
            return Err(FrftError::InvalidGrid(format!("start {x0} is not finite")));
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(FrftError::InvalidGrid(format!("step {dx} must be finite and > 0")));
        }
        if count == 0 {
            return Err(FrftError::InvalidGrid("count must be >= 1".into()));
        }
        Ok(Self { x0, dx, count })
    }

    /// Grid of `count` points with step `dx`, symmetric about the origin.
    pub fn centered(count: usize, dx: f64) -> Result<Self> {
        let half = (count as f64 - 1.0) / 2.0;
        Self::new(-half * dx, dx, count)
    }

    /// Reciprocal grid of `grid` for a transform whose frequency scale is
    /// `|csc|`: same count, `dx = 1 / (N * dt * |csc|)`, nodes at
    /// half-integer multiples of `dx` so the origin is never sampled.
    ///
    /// Forward and inverse kernel sums between a grid and its reciprocal are
    /// exact inverses of each other (a discrete Fourier pair up to chirps).
    pub fn reciprocal(grid: &EvaluationGrid, csc_abs: f64) -> Result<Self> {
        if !(csc_abs.is_finite() && csc_abs > 0.0) {
            return Err(FrftError::InvalidArgument(format!(
                "reciprocal grid needs a finite positive frequency scale, got {csc_abs}"
            )));
        }
        let n = grid.count;
        let dx = 1.0 / (n as f64 * grid.dx * csc_abs);
        let x0 = (0.5 - (n / 2) as f64) * dx;
        Self::new(x0, dx, n)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn last(&self) -> f64 {
        self.point(self.count - 1)
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.points().collect()
    }
}

/// Complex samples on the uniform grid `t0 + i*dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    t0: f64,
    dt: f64,
    samples: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(t0: f64, dt: f64, samples: Vec<Complex64>) -> Result<Self> {
        EvaluationGrid::new(t0, dt, samples.len().max(1))?;
        if samples.is_empty() {
            return Err(FrftError::InvalidSignal("no samples".into()));
        }
        if let Some(i) = samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(FrftError::InvalidSignal(format!(
                "sample {i} is not finite ({})",
                samples[i]
            )));
        }
        Ok(Self { t0, dt, samples })
    }

    pub fn on_grid(grid: &EvaluationGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.count() {
            return Err(FrftError::InvalidSignal(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                grid.count()
            )));
        }
        Self::new(grid.x0(), grid.dx(), samples)
    }

    pub fn from_fn(grid: &EvaluationGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::on_grid(grid, grid.points().map(f).collect())
    }

    pub fn from_real_fn(grid: &EvaluationGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid, |t| Complex64::new(f(t), 0.0))
    }

    pub fn zeros(grid: &EvaluationGrid) -> Self {
        Self {
            t0: grid.x0(),
            dt: grid.dx(),
            samples: vec![Complex64::new(0.0, 0.0); grid.count()],
        }
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    pub fn grid(&self) -> EvaluationGrid {
        EvaluationGrid {
            x0: self.t0,
            dx: self.dt,
            count: self.samples.len(),
        }
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Same grid, samples replaced. Fails if the new samples are not finite.
    pub fn with_samples(&self, samples: Vec<Complex64>) -> Result<Self> {
        Self::on_grid(&self.grid(), samples)
    }

    pub fn max_modulus(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Riemann-sum L2 norm, `sqrt(dt * sum |u_i|^2)`.
    pub fn l2_norm(&self) -> f64 {
        (self.dt * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn same_grid(&self, other: &SampledSignal) -> bool {
        self.len() == other.len()
            && (self.t0 - other.t0).abs() <= ON_GRID_TOL * self.dt
            && (self.dt - other.dt).abs() <= ON_GRID_TOL * self.dt
    }

    /// Linear interpolation at an arbitrary point; `None` outside the sampled range.
    pub fn interpolate(&self, t: f64) -> Option<Complex64> {
        let pos = (t - self.t0) / self.dt;
        let last = (self.len() - 1) as f64;
        if pos < -ON_GRID_TOL || pos > last + ON_GRID_TOL {
            return None;
        }
        let nearest = pos.round();
        if (pos - nearest).abs() <= ON_GRID_TOL {
            return Some(self.samples[nearest.clamp(0.0, last) as usize]);
        }
        let lo = pos.floor() as usize;
        let frac = pos - lo as f64;
        Some(self.samples[lo] * (1.0 - frac) + self.samples[lo + 1] * frac)
    }

    /// Linear resampling onto `grid`, with `t -> src(map(t))`.
    pub fn resample_mapped(&self, grid: &EvaluationGrid, map: impl Fn(f64) -> f64) -> Result<Self> {
        let mut out = Vec::with_capacity(grid.count());
        for x in grid.points() {
            match self.interpolate(map(x)) {
                Some(z) => out.push(z),
                None => {
                    let (a, b) = (map(grid.x0()), map(grid.last()));
                    return Err(FrftError::GridMismatch {
                        lo: a.min(b),
                        hi: a.max(b),
                        src_lo: self.t0,
                        src_hi: self.time(self.len() - 1),
                    });
                }
            }
        }
        Self::on_grid(grid, out)
    }

    pub fn resample(&self, grid: &EvaluationGrid) -> Result<Self> {
        if self.same_grid(&SampledSignal::zeros(grid)) {
            return Ok(self.clone());
        }
        self.resample_mapped(grid, |t| t)
    }

    /// Linear resampling that treats the signal as zero outside its range.
    pub fn resample_or_zero(&self, grid: &EvaluationGrid) -> Self {
        let samples = grid
            .points()
            .map(|x| self.interpolate(x).unwrap_or_default())
            .collect();
        Self {
            t0: grid.x0(),
            dt: grid.dx(),
            samples,
        }
    }
}
