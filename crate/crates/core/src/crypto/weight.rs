//! Singular weights used to lift a bounded signal out of L2.
//!
//! * `Omega1`: `sum_i |t - tau_i|^{-1/2}` on `[-k, k]`, zero outside.
//! * `Omega2`: `sqrt(n)` on `1/(n+1) < |t| <= 1/n` and `1/(n+1)^2` on
//!   `n < |t| <= n+1`, for `n = 1, 2, ...`.
//!
//! Both are integrable but not square integrable.

use crate::error::{FrftError, Result};
use crate::quadrature::QuadratureSpec;
use crate::signal::{EvaluationGrid, SampledSignal};

#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    Omega1 { k: f64, taus: Vec<f64> },
    Omega2,
}

impl WeightSpec {
    /// Checked constructor for the first family.
    pub fn omega1(k: f64, taus: Vec<f64>) -> Result<Self> {
        let w = WeightSpec::Omega1 { k, taus };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let WeightSpec::Omega1 { k, taus } = self else {
            return Ok(());
        };
        if !(k.is_finite() && *k > 0.0) {
            return Err(FrftError::InvalidArgument(format!("k must be finite and > 0, got {k}")));
        }
        if taus.is_empty() {
            return Err(FrftError::InvalidArgument("omega1 needs at least one tau".into()));
        }
        if let Some(t) = taus.iter().find(|t| !(t.is_finite() && t.abs() <= *k)) {
            return Err(FrftError::InvalidArgument(format!("tau {t} is outside [-{k}, {k}]")));
        }
        let mut sorted = taus.clone();
        sorted.sort_by(f64::total_cmp);
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(FrftError::InvalidArgument(format!("tau {} is repeated", w[0])));
        }
        Ok(())
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            WeightSpec::Omega1 { .. } => "omega1",
            WeightSpec::Omega2 => "omega2",
        }
    }

    /// Points where the weight blows up.
    pub fn singularities(&self) -> Vec<f64> {
        match self {
            WeightSpec::Omega1 { taus, .. } => taus.clone(),
            WeightSpec::Omega2 => vec![0.0],
        }
    }

    /// Whether `t` lies where the weight is positive.
    pub fn in_support(&self, t: f64) -> bool {
        match self {
            WeightSpec::Omega1 { k, .. } => t.abs() <= *k,
            WeightSpec::Omega2 => t.is_finite(),
        }
    }

    /// Weight value, `+inf` at singular points.
    pub(crate) fn value(&self, t: f64) -> f64 {
        match self {
            WeightSpec::Omega1 { k, taus } => {
                if t.abs() > *k {
                    return 0.0;
                }
                taus.iter().map(|tau| (t - tau).abs().powf(-0.5)).sum()
            }
            WeightSpec::Omega2 => {
                let a = t.abs();
                if a == 0.0 {
                    f64::INFINITY
                } else if a <= 1.0 {
                    (1.0 / a).floor().sqrt()
                } else {
                    let n = a.ceil() - 1.0;
                    1.0 / ((n + 1.0) * (n + 1.0))
                }
            }
        }
    }
}

/// Pointwise weight value; `SingularPoint` exactly at a singularity.
pub fn omega_eval(w: &WeightSpec, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(FrftError::InvalidArgument(format!("t = {t} is not finite")));
    }
    let v = w.value(t);
    if v.is_infinite() {
        return Err(FrftError::SingularPoint(t));
    }
    Ok(v)
}

/// Weight sampled pointwise on a grid.
pub fn sample_pointwise(w: &WeightSpec, grid: &EvaluationGrid) -> Result<Vec<f64>> {
    grid.points().map(|t| omega_eval(w, t)).collect()
}

/// Quadrature spec with the weight's singular points added.
pub fn weight_quadrature(w: &WeightSpec, quad: &QuadratureSpec) -> QuadratureSpec {
    let mut points = quad.singularities.clone();
    points.extend(w.singularities());
    quad.clone().with_singularities(points)
}

/// Cell averages of the weight on a grid (graded around the singular points).
/// Fails with `ZeroWeight` if a cell lies entirely outside the support.
pub fn sample_cells(w: &WeightSpec, grid: &EvaluationGrid, quad: &QuadratureSpec) -> Result<Vec<f64>> {
    let q = weight_quadrature(w, quad);
    q.validate()?;
    let avg = q.cell_averages(grid, |t| w.value(t));
    if let Some(i) = avg.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(FrftError::ZeroWeight(grid.point(i)));
    }
    Ok(avg)
}

/// Discrete `(int |(u + m) w|, int |(u + m) w|^2)` with the weight (and its
/// square) integrated exactly per cell by the graded quadrature.
pub fn lift_norms(u: &SampledSignal, w: &WeightSpec, m: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    let q = weight_quadrature(w, quad);
    q.validate()?;
    let grid = u.grid();
    let i1 = q.cell_integrals(&grid, |t| w.value(t));
    let i2 = q.cell_integrals(&grid, |t| w.value(t).powi(2));
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    for ((z, a), b) in u.samples().iter().zip(&i1).zip(&i2) {
        let lifted = (z + m).norm();
        l1 += lifted * a;
        l2 += lifted * lifted * b;
    }
    Ok((l1, l2))
}

/// Partial sums over `n = 1..=terms` of the one-sided integrals of the second
/// weight family: `(sum 1/(sqrt(n)(n+1)) + 1/(n+1)^2, sum 1/(n+1) + 1/(n+1)^4)`.
/// The first converges, the second diverges like `ln(terms)`.
pub fn omega2_partial_sums(terms: u64) -> (f64, f64) {
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    for n in 1..=terms {
        let n = n as f64;
        let p = 1.0 / (n + 1.0);
        l1 += 1.0 / (n.sqrt() * (n + 1.0)) + p * p;
        l2 += p + p.powi(4);
    }
    (l1, l2)
}
