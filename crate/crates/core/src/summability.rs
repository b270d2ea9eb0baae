//! Abel and Gauss means of the inverse fractional transform, and the
//! Poisson / Gauss kernels they correspond to.

use std::f64::consts::PI;

use crate::error::{FrftError, Result};
use crate::order::FrftOrder;
use crate::quadrature::QuadratureSpec;
use crate::signal::{EvaluationGrid, SampledSignal};
use crate::transform::inverse_frft;

/// Smallest accepted epsilon; below this the weights underflow nothing useful.
pub const MIN_EPSILON: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Phi {
    #[default]
    Abel,
    Gauss,
}

impl Phi {
    pub fn name(self) -> &'static str {
        match self {
            Phi::Abel => "abel",
            Phi::Gauss => "gauss",
        }
    }
}

impl std::str::FromStr for Phi {
    type Err = FrftError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "abel" => Ok(Phi::Abel),
            "gauss" => Ok(Phi::Gauss),
            other => Err(FrftError::Parse(format!("unknown summability weight '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummabilitySpec {
    pub phi: Phi,
    pub epsilon: f64,
}

impl SummabilitySpec {
    pub fn new(phi: Phi, epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= MIN_EPSILON) {
            return Err(FrftError::InvalidArgument(format!(
                "epsilon must be finite and >= {MIN_EPSILON:e}, got {epsilon}"
            )));
        }
        Ok(Self { phi, epsilon })
    }

    pub fn abel(epsilon: f64) -> Result<Self> {
        Self::new(Phi::Abel, epsilon)
    }

    pub fn gauss(epsilon: f64) -> Result<Self> {
        Self::new(Phi::Gauss, epsilon)
    }
}

/// The weight `Phi(eps x csc alpha)` on the transform axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiWeight {
    spec: SummabilitySpec,
    csc_abs: f64,
}

impl PhiWeight {
    pub fn new(spec: SummabilitySpec, order: &FrftOrder) -> Result<Self> {
        order.require_generic()?;
        Ok(Self {
            spec,
            csc_abs: order.csc().abs(),
        })
    }

    pub fn spec(&self) -> SummabilitySpec {
        self.spec
    }

    pub fn eval(&self, x: f64) -> f64 {
        let eps = self.spec.epsilon;
        match self.spec.phi {
            Phi::Abel => (-2.0 * PI * eps * self.csc_abs * x.abs()).exp(),
            Phi::Gauss => {
                let s = x * self.csc_abs;
                (-4.0 * PI * PI * eps * s * s).exp()
            }
        }
    }
}

/// Abel: `exp(-2 pi eps |csc| |x|)`; Gauss: `exp(-4 pi^2 eps x^2 csc^2)`.
pub fn weight_eval(w: &PhiWeight, x: f64) -> f64 {
    w.eval(x)
}

/// Summability mean of a transform-domain signal: the inverse transform of
/// `U(x) * weight(x)`, evaluated on `grid`.
pub fn phi_mean(
    order: &FrftOrder,
    u: &SampledSignal,
    spec: &SummabilitySpec,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> Result<SampledSignal> {
    let w = PhiWeight::new(*spec, order)?;
    let damped: Vec<_> = u
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &z)| z * w.eval(u.time(i)))
        .collect();
    inverse_frft(order, &u.with_samples(damped)?, grid, quad)
}

/// `(1/pi) eps / (eps^2 + x^2)`.
pub fn poisson_kernel(epsilon: f64, x: f64) -> f64 {
    epsilon / (PI * (epsilon * epsilon + x * x))
}

/// `(4 pi eps)^{-1/2} exp(-x^2 / (4 eps))`.
pub fn gauss_kernel(epsilon: f64, x: f64) -> f64 {
    (-x * x / (4.0 * epsilon)).exp() / (4.0 * PI * epsilon).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::make_order;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn weight(phi: Phi, eps: f64, alpha: f64) -> PhiWeight {
        PhiWeight::new(SummabilitySpec::new(phi, eps).unwrap(), &make_order(alpha, 1e-9).unwrap()).unwrap()
    }

    #[test]
    fn weights_are_one_at_the_origin() {
        for phi in [Phi::Abel, Phi::Gauss] {
            assert_eq!(weight_eval(&weight(phi, 0.3, 1.0), 0.0), 1.0);
        }
    }

    #[test]
    fn tiny_abel_damping_at_eighth_turn() {
        let w = weight(Phi::Abel, 1e-14, PI / 4.0);
        let expect = (-2.0 * PI * 1e-14 * 2f64.sqrt() * 100.0).exp();
        assert_eq!(weight_eval(&w, 100.0), expect);
        assert_relative_eq!(1.0 - weight_eval(&w, 100.0), 8.886e-12, max_relative = 1e-3);
    }

    #[test]
    fn special_orders_and_bad_epsilons_are_rejected() {
        let spec = SummabilitySpec::abel(1e-3).unwrap();
        assert!(PhiWeight::new(spec, &make_order(0.0, 1e-9).unwrap()).is_err());
        assert!(SummabilitySpec::abel(0.0).is_err());
        assert!(SummabilitySpec::abel(1e-301).is_err());
        assert!(SummabilitySpec::gauss(f64::INFINITY).is_err());
        assert!(SummabilitySpec::abel(MIN_EPSILON).is_ok());
    }

    #[test]
    fn kernel_spot_values() {
        assert_relative_eq!(poisson_kernel(0.25, 0.0), 1.0 / (PI * 0.25), max_relative = 1e-15);
        assert_relative_eq!(poisson_kernel(1.0, 1.0), 1.0 / (2.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(gauss_kernel(2.0, 0.0), (8.0 * PI).powf(-0.5), max_relative = 1e-15);
        for x in [0.0, 0.5, -1.7] {
            assert_relative_eq!(
                gauss_kernel(0.25, x),
                (-x * x).exp() / PI.sqrt(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn phi_parses_case_insensitively() {
        assert_eq!("Abel".parse::<Phi>().unwrap(), Phi::Abel);
        assert_eq!("gauss".parse::<Phi>().unwrap(), Phi::Gauss);
        assert!("poisson".parse::<Phi>().is_err());
    }

    proptest! {
        #[test]
        fn weights_are_even_bounded_and_decreasing(
            eps in 1e-12f64..1e-2,
            alpha in 0.1f64..3.0,
            x in 1e-6f64..50.0,
            dx in 0.0f64..10.0,
        ) {
            for phi in [Phi::Abel, Phi::Gauss] {
                let w = weight(phi, eps, alpha);
                let v = weight_eval(&w, x);
                prop_assert_eq!(v, weight_eval(&w, -x));
                prop_assert!(v > 0.0 || phi == Phi::Gauss);
                prop_assert!(v <= 1.0);
                prop_assert!(weight_eval(&w, x + dx) <= v);
            }
        }
    }
}
