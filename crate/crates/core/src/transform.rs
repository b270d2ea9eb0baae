//! Continuous fractional Fourier transform by direct quadrature.
//!
//! For a generic order the transform is evaluated as
//! `A e^{i pi cot x^2} sum_i w_i u_i e^{i pi cot t_i^2} e^{-2 pi i x csc t_i}`,
//! i.e. chirp, Fourier sum, rescale and chirp again, with `w_i` the rule
//! weights of [`QuadratureSpec::sample_weights`]. Every output point sums its
//! terms left to right over the input grid, so results do not depend on how
//! the output points are distributed over threads.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::order::{FrftOrder, OrderKind};
use crate::quadrature::QuadratureSpec;
use crate::signal::{EvaluationGrid, SampledSignal};

/// `exp(2 pi i cycles)`, with the integer part of `cycles` removed first.
#[inline]
pub(crate) fn cis_cycles(cycles: f64) -> Complex64 {
    let frac = cycles - cycles.round();
    let (s, c) = (std::f64::consts::TAU * frac).sin_cos();
    Complex64::new(c, s)
}

/// The transform kernel `K_alpha(x, t)`.
pub fn kernel(order: &FrftOrder, x: f64, t: f64) -> Result<Complex64> {
    order.require_generic()?;
    let (cot, csc) = (order.cot(), order.csc());
    Ok(order.amplitude() * cis_cycles(0.5 * cot * (t * t + x * x) - x * t * csc))
}

/// Fractional Fourier transform of `u`, evaluated on `grid`.
///
/// Special orders are pass-through: the identity resamples `u` onto `grid`
/// and the reflection resamples `t -> u(-t)` (linear interpolation; fails with
/// `GridMismatch` outside the sampled range).
pub fn frft(
    order: &FrftOrder,
    u: &SampledSignal,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> Result<SampledSignal> {
    quad.validate()?;
    match order.kind() {
        OrderKind::Identity => u.resample(grid),
        OrderKind::Reflection => u.resample_mapped(grid, |x| -x),
        OrderKind::Generic => {
            let weights = quad.sample_weights(&u.grid());
            let samples = weighted_sum(order, u, &weights, grid);
            SampledSignal::on_grid(grid, samples)
        }
    }
}

/// Inverse transform, i.e. the transform of order `-alpha`.
pub fn inverse_frft(
    order: &FrftOrder,
    u: &SampledSignal,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> Result<SampledSignal> {
    frft(&order.negated(), u, grid, quad)
}

/// Convenience: transform onto the reciprocal grid of `u` with the midpoint
/// rule. Forward and inverse between a grid and its reciprocal are exact
/// discrete inverses.
pub fn frft_reciprocal(order: &FrftOrder, u: &SampledSignal) -> Result<SampledSignal> {
    order.require_generic()?;
    let grid = EvaluationGrid::reciprocal(&u.grid(), order.csc().abs())?;
    frft(order, u, &grid, &QuadratureSpec::midpoint())
}

fn weighted_sum(
    order: &FrftOrder,
    u: &SampledSignal,
    weights: &[f64],
    grid: &EvaluationGrid,
) -> Vec<Complex64> {
    let (cot, csc) = (order.cot(), order.csc());
    let amp = order.amplitude();

    // (time, pre-chirped weighted sample), zero-weight samples dropped
    let terms: Vec<(f64, Complex64)> = u
        .samples()
        .iter()
        .zip(weights)
        .enumerate()
        .filter(|(_, (_, &w))| w != 0.0)
        .map(|(i, (&z, &w))| {
            let t = u.time(i);
            (t, z * w * cis_cycles(0.5 * cot * t * t))
        })
        .collect();

    (0..grid.count())
        .into_par_iter()
        .map(|j| {
            let x = grid.point(j);
            let xs = x * csc;
            let mut acc = Complex64::new(0.0, 0.0);
            for &(t, g) in &terms {
                acc += g * cis_cycles(-xs * t);
            }
            amp * cis_cycles(0.5 * cot * x * x) * acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::make_order;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn kernel_at_origin_is_the_amplitude() {
        let o = make_order(PI / 4.0, 1e-9).unwrap();
        let k = kernel(&o, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(k.re, 1.098684, epsilon = 1e-6);
        assert_abs_diff_eq!(k.im, -0.455090, epsilon = 1e-6);
    }

    #[test]
    fn quarter_turn_kernel_is_the_fourier_kernel() {
        let o = make_order(FRAC_PI_2, 1e-9).unwrap();
        for (x, t) in [(0.3, -1.2), (2.5, 0.7), (-4.0, 3.3)] {
            let k = kernel(&o, x, t).unwrap();
            let f = Complex64::from_polar(1.0, -2.0 * PI * x * t);
            assert_abs_diff_eq!((k - f).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn kernel_is_unimodular_up_to_amplitude() {
        let o = make_order(0.9, 1e-9).unwrap();
        let neg = o.negated();
        for (x, t) in [(0.0, 0.0), (1.0, -2.0), (17.0, 5.5)] {
            let k = kernel(&o, x, t).unwrap();
            assert_abs_diff_eq!(k.norm(), o.amplitude().norm(), epsilon = 1e-14);
            let prod = k * kernel(&neg, x, t).unwrap();
            assert_abs_diff_eq!(prod.norm(), o.amplitude().norm_sqr(), epsilon = 1e-13);
        }
    }

    #[test]
    fn kernel_rejects_special_orders() {
        let o = make_order(0.0, 1e-9).unwrap();
        assert!(kernel(&o, 1.0, 1.0).is_err());
    }

    #[test]
    fn fourier_order_of_rect_at_origin_is_its_area() {
        let n = 2000;
        let g = EvaluationGrid::new(-1.0 + 1.0 / n as f64, 2.0 / n as f64, n).unwrap();
        let rect = SampledSignal::from_real_fn(&g, |_| 1.0).unwrap();
        let o = make_order(FRAC_PI_2, 1e-9).unwrap();
        let out = frft(&o, &rect, &EvaluationGrid::new(0.0, 1.0, 1).unwrap(), &QuadratureSpec::midpoint()).unwrap();
        assert_abs_diff_eq!(out.samples()[0].re, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.samples()[0].im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn identity_order_returns_input_on_its_own_grid() {
        let g = EvaluationGrid::new(-1.0, 0.1, 21).unwrap();
        let u = SampledSignal::from_fn(&g, |t| Complex64::new(t.cos(), t * t)).unwrap();
        let o = make_order(2.0 * PI, 1e-9).unwrap();
        let out = frft(&o, &u, &g, &QuadratureSpec::midpoint()).unwrap();
        assert_eq!(out, u);
    }

    #[test]
    fn reflection_order_flips_time() {
        let g = EvaluationGrid::new(-1.0, 0.1, 21).unwrap();
        let u = SampledSignal::from_real_fn(&g, |t| t + 2.0).unwrap();
        let o = make_order(PI, 1e-9).unwrap();
        let out = frft(&o, &u, &g, &QuadratureSpec::midpoint()).unwrap();
        for (i, z) in out.samples().iter().enumerate() {
            assert_abs_diff_eq!(z.re, -g.point(i) + 2.0, epsilon = 1e-12);
        }
        let wide = EvaluationGrid::new(-2.0, 0.1, 41).unwrap();
        assert!(frft(&o, &u, &wide, &QuadratureSpec::midpoint()).is_err());
    }

    #[test]
    fn inverse_is_the_negated_order_bit_for_bit() {
        let g = EvaluationGrid::centered(64, 0.1).unwrap();
        let u = SampledSignal::from_real_fn(&g, |t| (-PI * t * t).exp()).unwrap();
        let q = QuadratureSpec::midpoint();
        let o = make_order(FRAC_PI_2, 1e-9).unwrap();
        let neg = make_order(-FRAC_PI_2, 1e-9).unwrap();
        assert_eq!(inverse_frft(&o, &u, &g, &q).unwrap(), frft(&neg, &u, &g, &q).unwrap());
    }

    #[test]
    fn reciprocal_grid_round_trip_is_exact() {
        let g = EvaluationGrid::centered(257, 0.013).unwrap();
        let u = SampledSignal::from_fn(&g, |t| {
            Complex64::new((5.0 * t).sin() / (1.0 + (t - 0.3).abs()).sqrt(), t.signum())
        })
        .unwrap();
        let o = make_order(0.81, 1e-9).unwrap();
        let fwd = frft_reciprocal(&o, &u).unwrap();
        let back = inverse_frft(&o, &fwd, &g, &QuadratureSpec::midpoint()).unwrap();
        let err = back
            .samples()
            .iter()
            .zip(u.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-11, "{err}");
    }
}
