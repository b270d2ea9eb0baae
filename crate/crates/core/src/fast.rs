//! Chirp-convolution fast discrete fractional transform (Ozaktas et al.).
//!
//! Works on the dimensionless grid `x_k = (k - N/2) / sqrt(N)`, `k = 0..N`,
//! i.e. a span of `sqrt(N)` with step `1/sqrt(N)`. With `a = 2 alpha / pi`
//! reduced mod 4, whole-order stages (reversal, centered DFT, inverse DFT)
//! bring the remainder into `[0.5, 1.5]`, where the transform is computed by
//! sinc interpolation to `2N` points, chirp multiplication, chirp convolution
//! (by FFT) and a final chirp multiplication, keeping every other output.
//!
//! Signals on other grids are moved to the plan grid by linear interpolation
//! (zero outside their range).

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::crypto::{sample_cells, CipherSignal, EncryptionKey, Unlift};
use crate::error::{FrftError, Result};
use crate::order::FrftOrder;
use crate::quadrature::QuadratureSpec;
use crate::signal::{EvaluationGrid, SampledSignal};
use crate::transform::cis_cycles;

/// Tolerance on the reduced order for treating a stage as a whole order.
const WHOLE_ORDER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stage {
    /// Order 2: `f(x) -> f(-x)`.
    Reverse,
    /// Order 1: centered unitary DFT.
    Dft,
    /// Order -1.
    InverseDft,
    /// Fractional order in `[0.5, 1.5]`.
    Chirp(f64),
}

impl Stage {
    pub fn order(&self) -> f64 {
        match self {
            Stage::Reverse => 2.0,
            Stage::Dft => 1.0,
            Stage::InverseDft => -1.0,
            Stage::Chirp(a) => *a,
        }
    }
}

struct ChirpCore {
    /// `A_phi / (2 sqrt N)`.
    scale: Complex64,
    /// `-tan(phi/2) / 2` in cycles per `n^2 / (4N)`.
    pre_post_cycles: f64,
    kernel_spectrum: Vec<Complex64>,
}

pub struct FastDfrftPlan {
    n: usize,
    delta_x: f64,
    order_a: f64,
    stages: Vec<Stage>,
    fft_n: Arc<dyn Fft<f64>>,
    ifft_n: Arc<dyn Fft<f64>>,
    fft_interp: Arc<dyn Fft<f64>>,
    ifft_interp: Arc<dyn Fft<f64>>,
    fft_conv: Arc<dyn Fft<f64>>,
    ifft_conv: Arc<dyn Fft<f64>>,
    sinc_spectrum: Vec<Complex64>,
    core: Option<ChirpCore>,
}

impl std::fmt::Debug for FastDfrftPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FastDfrftPlan")
            .field("n", &self.n)
            .field("delta_x", &self.delta_x)
            .field("order_a", &self.order_a)
            .field("stages", &self.stages)
            .finish()
    }
}

/// Split `a` (mod 4) into whole-order stages and at most one chirp stage.
fn decompose(a: f64) -> Vec<Stage> {
    let mut r = a.rem_euclid(4.0);
    if r < WHOLE_ORDER_TOL || 4.0 - r < WHOLE_ORDER_TOL {
        return Vec::new();
    }
    let mut stages = Vec::new();
    if r > 2.0 - WHOLE_ORDER_TOL {
        stages.push(Stage::Reverse);
        r -= 2.0;
    }
    if r.abs() < WHOLE_ORDER_TOL {
        return stages;
    }
    if r > 1.5 {
        stages.push(Stage::Dft);
        r -= 1.0;
    } else if r < 0.5 {
        stages.push(Stage::InverseDft);
        r += 1.0;
    }
    if (r - 1.0).abs() < WHOLE_ORDER_TOL {
        stages.push(Stage::Dft);
    } else {
        stages.push(Stage::Chirp(r));
    }
    stages
}

impl FastDfrftPlan {
    /// Plan for `n` samples (a power of two, at least 4) and order `alpha`.
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(FrftError::BadPlan(format!("n = {n} must be a power of two >= 4")));
        }
        if !alpha.is_finite() {
            return Err(FrftError::BadPlan(format!("order {alpha} is not finite")));
        }
        let order_a = 2.0 * alpha / PI;
        let stages = decompose(order_a);
        let mut planner = FftPlanner::new();
        let nf = n as f64;

        // sinc(d + 1/2) for d = -(n-1)..=(n-1), zero padded to 4n
        let mut sinc = vec![Complex64::default(); 4 * n];
        for (i, s) in sinc.iter_mut().take(2 * n - 1).enumerate() {
            let x = i as f64 - (nf - 1.0) + 0.5;
            *s = Complex64::new((PI * x).sin() / (PI * x), 0.0);
        }
        let fft_interp = planner.plan_fft_forward(4 * n);
        fft_interp.process(&mut sinc);

        let fft_conv = planner.plan_fft_forward(8 * n);
        let core = stages.iter().find_map(|s| match s {
            Stage::Chirp(a) => Some(*a),
            _ => None,
        });
        let core = match core {
            Some(a) => {
                let phi = a * PI / 2.0;
                let order = FrftOrder::with_default_tol(phi)?;
                let csc = 1.0 / phi.sin();
                // exp(i pi csc d^2 / (4n)) for d = -(2n-1)..=(2n-1), zero padded to 8n
                let mut kernel = vec![Complex64::default(); 8 * n];
                for (i, k) in kernel.iter_mut().take(4 * n - 1).enumerate() {
                    let d = i as f64 - (2.0 * nf - 1.0);
                    *k = cis_cycles(0.5 * csc * d * d / (4.0 * nf));
                }
                fft_conv.process(&mut kernel);
                Some(ChirpCore {
                    scale: order.amplitude() / (2.0 * nf.sqrt()),
                    pre_post_cycles: -0.5 * (phi / 2.0).tan(),
                    kernel_spectrum: kernel,
                })
            }
            None => None,
        };

        Ok(Self {
            n,
            delta_x: nf.sqrt(),
            order_a,
            stages,
            fft_n: planner.plan_fft_forward(n),
            ifft_n: planner.plan_fft_inverse(n),
            fft_interp,
            ifft_interp: planner.plan_fft_inverse(4 * n),
            fft_conv,
            ifft_conv: planner.plan_fft_inverse(8 * n),
            sinc_spectrum: sinc,
            core,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Span of the plan grid, `sqrt(n)`.
    pub fn delta_x(&self) -> f64 {
        self.delta_x
    }

    /// `a = 2 alpha / pi`, unreduced.
    pub fn order_a(&self) -> f64 {
        self.order_a
    }

    pub fn alpha(&self) -> f64 {
        self.order_a * PI / 2.0
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// The grid `(k - n/2) / sqrt(n)`.
    pub fn grid(&self) -> EvaluationGrid {
        let h = 1.0 / self.delta_x;
        EvaluationGrid::new(-(self.n as f64) / 2.0 * h, h, self.n).expect("plan grid is valid")
    }

    fn centered_dft(&self, f: &mut [Complex64], inverse: bool) {
        let flip = |v: &mut [Complex64]| {
            for z in v.iter_mut().skip(1).step_by(2) {
                *z = -*z;
            }
        };
        flip(f);
        if inverse {
            self.ifft_n.process(f);
        } else {
            self.fft_n.process(f);
        }
        flip(f);
        let s = 1.0 / (self.n as f64).sqrt();
        for z in f.iter_mut() {
            *z *= s;
        }
    }

    fn reverse(&self, f: &mut [Complex64]) {
        let src = f.to_vec();
        for (k, z) in f.iter_mut().enumerate() {
            *z = src[(self.n - k) % self.n];
        }
    }

    /// Samples at the half-integer positions `k + 1/2` by sinc interpolation.
    fn half_samples(&self, f: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut buf = vec![Complex64::default(); 4 * n];
        buf[..n].copy_from_slice(f);
        self.fft_interp.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.sinc_spectrum) {
            *b *= s;
        }
        self.ifft_interp.process(&mut buf);
        let norm = 1.0 / (4 * n) as f64;
        buf[n - 1..2 * n - 1].iter().map(|z| z * norm).collect()
    }

    fn chirp_stage(&self, core: &ChirpCore, f: &mut [Complex64]) {
        let n = self.n;
        let nf = n as f64;
        let half = self.half_samples(f);
        let mut buf = vec![Complex64::default(); 8 * n];
        for k in 0..n {
            buf[2 * k] = f[k];
            buf[2 * k + 1] = half[k];
        }
        let chirp = |i: usize| {
            let m = i as f64 - nf;
            cis_cycles(core.pre_post_cycles * m * m / (4.0 * nf))
        };
        for (i, z) in buf.iter_mut().take(2 * n).enumerate() {
            *z *= chirp(i);
        }
        self.fft_conv.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&core.kernel_spectrum) {
            *b *= s;
        }
        self.ifft_conv.process(&mut buf);
        let norm = 1.0 / (8 * n) as f64;
        for (k, out) in f.iter_mut().enumerate() {
            let i = 2 * k;
            *out = core.scale * chirp(i) * buf[i + 2 * n - 1] * norm;
        }
    }

    /// Apply the planned transform to samples on the plan grid.
    pub fn execute(&self, samples: &mut [Complex64]) -> Result<()> {
        if samples.len() != self.n {
            return Err(FrftError::BadPlan(format!(
                "{} samples for a plan of {}",
                samples.len(),
                self.n
            )));
        }
        for stage in &self.stages {
            match stage {
                Stage::Reverse => self.reverse(samples),
                Stage::Dft => self.centered_dft(samples, false),
                Stage::InverseDft => self.centered_dft(samples, true),
                Stage::Chirp(_) => {
                    let core = self.core.as_ref().expect("chirp stage has a core");
                    self.chirp_stage(core, samples);
                }
            }
        }
        Ok(())
    }
}

/// Fast transform of `u`, moved to the plan grid first if needed. The result
/// lives on the plan grid.
pub fn fast_frft(plan: &FastDfrftPlan, u: &SampledSignal) -> Result<SampledSignal> {
    let grid = plan.grid();
    let on_plan = if u.same_grid(&SampledSignal::zeros(&grid)) {
        u.clone()
    } else {
        u.resample_or_zero(&grid)
    };
    let mut samples = on_plan.into_samples();
    plan.execute(&mut samples)?;
    SampledSignal::on_grid(&grid, samples)
}

/// Decrypt with the fast transform in place of the summability mean: the
/// cipher is interpolated onto the plan grid, transformed with the plan
/// (which must have order `-alpha`), interpolated onto `grid` and unlifted.
pub fn fast_decrypt_attempt(
    c: &CipherSignal,
    key: &EncryptionKey,
    plan: &FastDfrftPlan,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> Result<SampledSignal> {
    let expected = -2.0 * key.order().alpha() / PI;
    let diff = (plan.order_a() - expected).rem_euclid(4.0);
    if diff.min(4.0 - diff) > 1e-9 {
        return Err(FrftError::BadPlan(format!(
            "plan order a = {} does not invert key order a = {}",
            plan.order_a(),
            -expected
        )));
    }
    let v = fast_frft(plan, &c.signal)?.resample_or_zero(grid);
    let weights = sample_cells(key.weight(), grid, quad)?;
    crate::crypto::unlift(&v, &weights, key.offset_m(), Unlift::Modulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(FastDfrftPlan::new(100, 1.0), Err(FrftError::BadPlan(_))));
        assert!(matches!(FastDfrftPlan::new(2, 1.0), Err(FrftError::BadPlan(_))));
        assert!(FastDfrftPlan::new(64, f64::NAN).is_err());
    }

    #[test]
    fn stage_orders_add_back_to_the_requested_order() {
        for a in [0.0, 0.3, 0.5, 0.99, 1.0, 1.2, 1.7, 2.0, 2.4, 3.0, 3.6, -0.5, -1.0, 5.3] {
            let stages = decompose(a);
            let total: f64 = stages.iter().map(Stage::order).sum();
            let d = (total - a).rem_euclid(4.0);
            assert!(d.min(4.0 - d) < 1e-12, "a = {a}: {stages:?}");
            for s in &stages {
                if let Stage::Chirp(r) = s {
                    assert!((0.5..=1.5).contains(r));
                }
            }
        }
    }

    #[test]
    fn dft_stage_is_inverted_by_inverse_stage() {
        let plan = FastDfrftPlan::new(16, PI / 2.0).unwrap();
        let back = FastDfrftPlan::new(16, -PI / 2.0).unwrap();
        let mut f: Vec<Complex64> = (0..16).map(|k| Complex64::new(k as f64, (k * k) as f64 * 0.1)).collect();
        let orig = f.clone();
        plan.execute(&mut f).unwrap();
        back.execute(&mut f).unwrap();
        for (a, b) in f.iter().zip(&orig) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn half_turn_reverses_about_the_origin() {
        let plan = FastDfrftPlan::new(8, PI).unwrap();
        let mut f: Vec<Complex64> = (0..8).map(|k| Complex64::new(k as f64, 0.0)).collect();
        plan.execute(&mut f).unwrap();
        let re: Vec<f64> = f.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![0.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0]);
    }
}
