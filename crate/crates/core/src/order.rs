//! Transform order (rotation angle) and its classification.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{FrftError, Result};

/// Default snapping tolerance onto `2n*pi` / `(2n+1)*pi`.
pub const DEFAULT_SNAP_TOL: f64 = 1e-9;

/// Orders closer than this to a multiple of pi (and not snapped) are rejected.
pub const NEAR_SINGULAR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Generic,
    /// `alpha = 2n*pi`: the transform is the identity.
    Identity,
    /// `alpha = (2n+1)*pi`: the transform is `u(t) -> u(-t)`.
    Reflection,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Generic => "generic",
            OrderKind::Identity => "identity",
            OrderKind::Reflection => "reflection",
        }
    }
}

/// A transform order `alpha` (radians) with the trigonometric constants of
/// its kernel precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrftOrder {
    alpha: f64,
    kind: OrderKind,
    cot_alpha: f64,
    csc_alpha: f64,
    a_alpha: Complex64,
    snap_tol: f64,
}

/// Distance of `alpha` to the nearest multiple of `period`.
fn distance_to_multiple(alpha: f64, period: f64) -> f64 {
    let r = alpha.rem_euclid(period);
    r.min(period - r)
}

impl FrftOrder {
    /// Classify `alpha` and precompute `cot`, `csc` and the amplitude
    /// `A = sqrt(1 - i cot alpha)` (principal branch).
    pub fn new(alpha: f64, snap_tol: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(FrftError::InvalidArgument(format!("order {alpha} is not finite")));
        }
        if !(snap_tol.is_finite() && snap_tol >= 0.0) {
            return Err(FrftError::InvalidArgument(format!(
                "snap tolerance {snap_tol} must be finite and >= 0"
            )));
        }
        let special = |kind| FrftOrder {
            alpha,
            kind,
            cot_alpha: f64::NAN,
            csc_alpha: f64::NAN,
            a_alpha: Complex64::new(f64::NAN, f64::NAN),
            snap_tol,
        };
        if distance_to_multiple(alpha, TAU) <= snap_tol {
            return Ok(special(OrderKind::Identity));
        }
        if distance_to_multiple(alpha - PI, TAU) <= snap_tol {
            return Ok(special(OrderKind::Reflection));
        }
        let distance = distance_to_multiple(alpha, PI);
        if distance < NEAR_SINGULAR_TOL {
            return Err(FrftError::NearSingularOrder { alpha, distance });
        }
        let (sin, cos) = alpha.sin_cos();
        let cot_alpha = cos / sin;
        Ok(FrftOrder {
            alpha,
            kind: OrderKind::Generic,
            cot_alpha,
            csc_alpha: 1.0 / sin,
            a_alpha: Complex64::new(1.0, -cot_alpha).sqrt(),
            snap_tol,
        })
    }

    pub fn with_default_tol(alpha: f64) -> Result<Self> {
        Self::new(alpha, DEFAULT_SNAP_TOL)
    }

    /// The order `-alpha`, classified with the same tolerance.
    pub fn negated(&self) -> Self {
        // -alpha is exactly as far from every multiple of pi as alpha
        Self::new(-self.alpha, self.snap_tol).expect("negation preserves validity")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_generic(&self) -> bool {
        self.kind == OrderKind::Generic
    }

    pub fn snap_tol(&self) -> f64 {
        self.snap_tol
    }

    /// `cot alpha`; NaN for special kinds.
    pub fn cot(&self) -> f64 {
        self.cot_alpha
    }

    /// `csc alpha`; NaN for special kinds.
    pub fn csc(&self) -> f64 {
        self.csc_alpha
    }

    /// `A_alpha = sqrt(1 - i cot alpha)`; NaN for special kinds.
    pub fn amplitude(&self) -> Complex64 {
        self.a_alpha
    }

    pub(crate) fn require_generic(&self) -> Result<()> {
        match self.kind {
            OrderKind::Generic => Ok(()),
            k => Err(FrftError::SpecialAngle { kind: k.name() }),
        }
    }
}

/// Shorthand for [`FrftOrder::new`].
pub fn make_order(alpha: f64, snap_tol: f64) -> Result<FrftOrder> {
    FrftOrder::new(alpha, snap_tol)
}
