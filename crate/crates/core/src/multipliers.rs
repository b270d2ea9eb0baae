//! Fractional Fourier multipliers and triple encryption.
//!
//! `T u = F_{-beta}[m_beta * F_beta u]` with the fractional Hilbert multiplier
//! `m_beta(w) = -i sgn((pi - beta) w)`. The forward transform lands on the
//! reciprocal grid of `u`, which never contains `w = 0`, and the pair of sums
//! is an exact discrete inverse, so `T^{-1} T = I` holds to rounding.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::crypto::{self, CipherSignal, EncryptionKey, Unlift};
use crate::error::{FrftError, Result};
use crate::order::FrftOrder;
use crate::quadrature::QuadratureSpec;
use crate::signal::{EvaluationGrid, SampledSignal};
use crate::summability::SummabilitySpec;
use crate::transform::{frft, inverse_frft};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MultiplierKind {
    #[default]
    FractionalHilbert,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierSpec {
    pub kind: MultiplierKind,
    beta: f64,
}

impl MultiplierSpec {
    pub fn hilbert(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < PI) {
            return Err(FrftError::InvalidArgument(format!("beta must lie in (0, pi), got {beta}")));
        }
        Ok(Self {
            kind: MultiplierKind::FractionalHilbert,
            beta,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn order(&self) -> Result<FrftOrder> {
        FrftOrder::with_default_tol(self.beta)
    }
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `-i sgn((pi - beta) w)`, zero at `w = 0`.
pub fn multiplier_eval(spec: &MultiplierSpec, omega_prime: f64) -> Complex64 {
    Complex64::new(0.0, -sgn((PI - spec.beta) * omega_prime))
}

/// Pointwise inverse: conjugate where the multiplier is nonzero, zero elsewhere.
pub fn inverse_multiplier_eval(spec: &MultiplierSpec, omega_prime: f64) -> Complex64 {
    multiplier_eval(spec, omega_prime).conj()
}

fn apply_pointwise(
    spec: &MultiplierSpec,
    u: &SampledSignal,
    freq: &EvaluationGrid,
    quad: &QuadratureSpec,
    m: impl Fn(&MultiplierSpec, f64) -> Complex64,
) -> Result<SampledSignal> {
    let order = spec.order()?;
    let spectrum = frft(&order, u, freq, quad)?;
    let scaled: Vec<Complex64> = spectrum
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &z)| z * m(spec, spectrum.time(i)))
        .collect();
    inverse_frft(&order, &spectrum.with_samples(scaled)?, &u.grid(), quad)
}

/// Transform grid used by [`apply_multiplier`]: the reciprocal grid of `u`.
pub fn multiplier_grid(spec: &MultiplierSpec, u: &EvaluationGrid) -> Result<EvaluationGrid> {
    EvaluationGrid::reciprocal(u, spec.order()?.csc().abs())
}

/// `T u` on the grid of `u`, through the transform grid `freq`.
pub fn apply_multiplier_on(
    spec: &MultiplierSpec,
    u: &SampledSignal,
    freq: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> Result<SampledSignal> {
    apply_pointwise(spec, u, freq, quad, multiplier_eval)
}

/// `T u` through the reciprocal grid of `u`, with the midpoint rule.
pub fn apply_multiplier(spec: &MultiplierSpec, u: &SampledSignal) -> Result<SampledSignal> {
    let freq = multiplier_grid(spec, &u.grid())?;
    apply_multiplier_on(spec, u, &freq, &QuadratureSpec::midpoint())
}

/// `T^{-1} u` through the reciprocal grid of `u`.
pub fn apply_inverse_multiplier(spec: &MultiplierSpec, u: &SampledSignal) -> Result<SampledSignal> {
    let freq = multiplier_grid(spec, &u.grid())?;
    apply_pointwise(spec, u, &freq, &QuadratureSpec::midpoint(), inverse_multiplier_eval)
}

fn key_multiplier(key: &EncryptionKey) -> Result<MultiplierSpec> {
    MultiplierSpec::hilbert(key.multiplier_beta().ok_or(FrftError::MissingBeta)?)
}

/// Offset needed for a triple-encryption key: `1 + max |T u|`.
pub fn triple_offset(u: &SampledSignal, beta: f64) -> Result<f64> {
    Ok(crypto::compute_offset(&apply_multiplier(&MultiplierSpec::hilbert(beta)?, u)?))
}

/// Encrypt `T_beta u` with the key's weight, offset and order.
pub fn triple_encrypt(
    u: &SampledSignal,
    key: &EncryptionKey,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> Result<CipherSignal> {
    let spec = key_multiplier(key)?;
    crypto::encrypt(&apply_multiplier(&spec, u)?, key, grid, quad)
}

/// Decrypt with a complex unlift, then undo the multiplier. The result is
/// complex in general; for a real plaintext its imaginary part is rounding.
pub fn triple_decrypt(
    c: &CipherSignal,
    key: &EncryptionKey,
    spec: &SummabilitySpec,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> Result<SampledSignal> {
    let m = key_multiplier(key)?;
    let v = crypto::decrypt_with(c, key, spec, grid, quad, Unlift::Complex)?;
    apply_inverse_multiplier(&m, &v)
}
