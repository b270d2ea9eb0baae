//! Double encryption: lift a bounded signal with a singular weight, then
//! transform with a secret order. Decryption takes a summability mean of the
//! inverse transform and divides the weight back out.
//!
//! The pipeline samples the weight as graded-mesh cell averages on the
//! plaintext grid, identically on both sides, so dividing it out is exact per
//! sample. With the cipher on the reciprocal grid of the plaintext grid the
//! forward and inverse sums are exact discrete inverses and the decryption
//! error is governed by the summability parameter alone.

pub mod key;
pub mod weight;

pub use key::{generate_taus, key_from_text, key_to_text, EncryptionKey, KEY_HEADER};
pub use weight::{lift_norms, omega2_partial_sums, omega_eval, sample_cells, sample_pointwise, WeightSpec};

use num_complex::Complex64;

use crate::error::{FrftError, Result};
use crate::order::FrftOrder;
use crate::quadrature::QuadratureSpec;
use crate::signal::{EvaluationGrid, SampledSignal};
use crate::summability::{phi_mean, SummabilitySpec};
use crate::transform::frft;

/// Default refinement of the graded mesh used for the weight cell averages.
pub const DEFAULT_WEIGHT_REFINEMENT: u32 = 12;

/// Points closer than this many plaintext steps to a singular point are left
/// out of the error metric.
pub const EXCLUSION_STEPS: f64 = 5.0;

/// Transform-domain samples produced by [`encrypt`].
#[derive(Debug, Clone, PartialEq)]
pub struct CipherSignal {
    pub signal: SampledSignal,
}

impl CipherSignal {
    pub fn new(signal: SampledSignal) -> Self {
        Self { signal }
    }

    /// The centered time grid whose reciprocal grid (for `order`) has this
    /// cipher's step and count. This is the natural decryption grid.
    pub fn plaintext_grid(&self, order: &FrftOrder) -> Result<EvaluationGrid> {
        order.require_generic()?;
        let n = self.signal.len();
        let dt = 1.0 / (n as f64 * self.signal.dt() * order.csc().abs());
        EvaluationGrid::centered(n, dt)
    }
}

/// How the weight is divided back out after the inverse transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Unlift {
    /// `|v / w| - M`: recovers a real plaintext from a complex mean.
    #[default]
    Modulus,
    /// `v / w - M`: keeps the phase, for complex plaintexts.
    Complex,
}

/// `1 + max |u|`.
pub fn compute_offset(u: &SampledSignal) -> f64 {
    1.0 + u.max_modulus()
}

fn check_offset(u: &SampledSignal, m: f64) -> Result<()> {
    let required = compute_offset(u);
    if !(m >= required) {
        return Err(FrftError::OffsetTooSmall { given: m, required });
    }
    Ok(())
}

/// `(u + m) w` with a given sampled weight.
pub fn lift(u: &SampledSignal, weights: &[f64], m: f64) -> Result<SampledSignal> {
    check_offset(u, m)?;
    if weights.len() != u.len() {
        return Err(FrftError::InvalidArgument(format!(
            "{} weight samples for {} signal samples",
            weights.len(),
            u.len()
        )));
    }
    u.with_samples(u.samples().iter().zip(weights).map(|(z, w)| (z + m) * w).collect())
}

/// Inverse of [`lift`]: `|v / w| - m` or `v / w - m`.
pub fn unlift(v: &SampledSignal, weights: &[f64], m: f64, mode: Unlift) -> Result<SampledSignal> {
    if weights.len() != v.len() {
        return Err(FrftError::InvalidArgument(format!(
            "{} weight samples for {} signal samples",
            weights.len(),
            v.len()
        )));
    }
    let mut out = Vec::with_capacity(v.len());
    for (i, (z, &w)) in v.samples().iter().zip(weights).enumerate() {
        if w == 0.0 {
            return Err(FrftError::ZeroWeight(v.time(i)));
        }
        let q = z / w;
        out.push(match mode {
            Unlift::Modulus => Complex64::new(q.norm() - m, 0.0),
            Unlift::Complex => q - m,
        });
    }
    v.with_samples(out)
}

/// Pointwise lift `(u(t) + m) w(t)`.
pub fn p_omega(u: &SampledSignal, w: &WeightSpec, m: f64) -> Result<SampledSignal> {
    lift(u, &sample_pointwise(w, &u.grid())?, m)
}

/// Pointwise unlift `|v(t) / w(t)| - m`.
pub fn q_omega(v: &SampledSignal, w: &WeightSpec, m: f64) -> Result<SampledSignal> {
    unlift(v, &sample_pointwise(w, &v.grid())?, m, Unlift::Modulus)
}

/// Weight cell averages for the pipeline, graded with the refinement of `quad`.
fn pipeline_weights(key: &EncryptionKey, grid: &EvaluationGrid, quad: &QuadratureSpec) -> Result<Vec<f64>> {
    sample_cells(key.weight(), grid, quad)
}

/// Reciprocal grid of `plaintext` for the key's order, the default cipher grid.
pub fn cipher_grid(plaintext: &EvaluationGrid, key: &EncryptionKey) -> Result<EvaluationGrid> {
    EvaluationGrid::reciprocal(plaintext, key.order().csc().abs())
}

/// Lift `u` with the key's weight and offset, then transform with the key's
/// order onto `grid`.
pub fn encrypt(u: &SampledSignal, key: &EncryptionKey, grid: &EvaluationGrid, quad: &QuadratureSpec) -> Result<CipherSignal> {
    quad.validate()?;
    let weights = pipeline_weights(key, &u.grid(), quad)?;
    let lifted = lift(u, &weights, key.offset_m())?;
    Ok(CipherSignal::new(frft(key.order(), &lifted, grid, quad)?))
}

/// Summability mean of the inverse transform on `grid`, then unlift.
pub fn decrypt_with(
    c: &CipherSignal,
    key: &EncryptionKey,
    spec: &SummabilitySpec,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
    mode: Unlift,
) -> Result<SampledSignal> {
    quad.validate()?;
    let weights = pipeline_weights(key, grid, quad)?;
    let v = phi_mean(key.order(), &c.signal, spec, grid, quad)?;
    unlift(&v, &weights, key.offset_m(), mode)
}

/// [`decrypt_with`] using the modulus unlift.
pub fn decrypt(
    c: &CipherSignal,
    key: &EncryptionKey,
    spec: &SummabilitySpec,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> Result<SampledSignal> {
    decrypt_with(c, key, spec, grid, quad, Unlift::Modulus)
}

/// Reconstruction error away from singular points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// Max of `|decrypted - truth|` over the kept points.
    pub max_error: f64,
    /// `dt * sum |decrypted - truth|` over the kept points.
    pub l1_error: f64,
    pub points_used: usize,
}

/// Compare two signals on the same grid, skipping points within
/// `EXCLUSION_STEPS * dt` of any of `singular`.
pub fn error_report(decrypted: &SampledSignal, truth: &SampledSignal, singular: &[f64]) -> Result<ErrorReport> {
    if !decrypted.same_grid(truth) {
        return Err(FrftError::InvalidArgument(
            "decrypted and reference signals are on different grids".into(),
        ));
    }
    let radius = EXCLUSION_STEPS * truth.dt();
    let mut report = ErrorReport {
        max_error: 0.0,
        l1_error: 0.0,
        points_used: 0,
    };
    for (i, (a, b)) in decrypted.samples().iter().zip(truth.samples()).enumerate() {
        let t = truth.time(i);
        if singular.iter().any(|s| (t - s).abs() < radius) {
            continue;
        }
        let e = (a - b).norm();
        report.max_error = report.max_error.max(e);
        report.l1_error += e * truth.dt();
        report.points_used += 1;
    }
    if report.points_used == 0 {
        return Err(FrftError::InvalidArgument("every grid point is excluded".into()));
    }
    Ok(report)
}
