mod common;

use std::f64::consts::PI;

use frft_core::summability::{gauss_kernel, phi_mean, poisson_kernel, Phi, SummabilitySpec};
use frft_core::{frft_reciprocal, inverse_frft, EvaluationGrid, FrftOrder, QuadratureSpec, SampledSignal};
use num_complex::Complex64;
use proptest::prelude::*;

use common::*;

const SWEEP: [f64; 7] = [1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14];

fn order(alpha: f64) -> FrftOrder {
    FrftOrder::with_default_tol(alpha).unwrap()
}

/// Samples of `e^{-i pi t^2} |t|^{-1/2}` on cells covering `[-1, 1]`, the
/// singular factor taken as exact cell averages.
fn singular_chirp(n: usize) -> SampledSignal {
    let g = cell_grid(n, 1.0);
    let q = QuadratureSpec::midpoint().with_singularities([0.0]).with_refinement(24);
    let root = q.cell_averages(&g, |t| t.abs().powf(-0.5));
    SampledSignal::on_grid(
        &g,
        g.points().zip(&root).map(|(t, r)| Complex64::from_polar(*r, -PI * t * t)).collect(),
    )
    .unwrap()
}

fn masked_error(a: &SampledSignal, b: &SampledSignal) -> f64 {
    a.samples()
        .iter()
        .zip(b.samples())
        .enumerate()
        .filter(|(i, _)| {
            let t = a.time(*i);
            t.abs() > 0.05 && (t.abs() - 1.0).abs() > 0.05
        })
        .map(|(_, (x, y))| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn vanishing_epsilon_is_the_plain_inverse() {
    let g = EvaluationGrid::centered(256, 0.02).unwrap();
    let u = SampledSignal::from_real_fn(&g, gaussian).unwrap();
    let o = order(0.6);
    let big = frft_reciprocal(&o, &u).unwrap();
    for phi in [Phi::Abel, Phi::Gauss] {
        let spec = SummabilitySpec::new(phi, 1e-300).unwrap();
        let m = phi_mean(&o, &big, &spec, &g, &QuadratureSpec::midpoint()).unwrap();
        let plain = inverse_frft(&o, &big, &g, &QuadratureSpec::midpoint()).unwrap();
        assert!(max_abs_diff(m.samples(), plain.samples()) <= 1e-12);
    }
}

#[test]
fn means_of_the_singular_chirp_improve_as_epsilon_shrinks() {
    let u = singular_chirp(2048);
    let o = order(PI / 4.0);
    let transform = frft_reciprocal(&o, &u).unwrap();
    for phi in [Phi::Abel, Phi::Gauss] {
        let errors: Vec<f64> = SWEEP
            .iter()
            .map(|&eps| {
                let spec = SummabilitySpec::new(phi, eps).unwrap();
                let m = phi_mean(&o, &transform, &spec, &u.grid(), &QuadratureSpec::midpoint()).unwrap();
                masked_error(&m, &u)
            })
            .collect();
        assert!(errors.windows(2).all(|w| w[1] <= w[0]), "{phi:?}: {errors:?}");
        assert!(errors[6] < 1e-6, "{phi:?}: {errors:?}");
    }
}

#[test]
fn abel_and_gauss_both_converge_on_a_gaussian() {
    let g = EvaluationGrid::centered(512, 0.02).unwrap();
    let u = SampledSignal::from_fn(&g, |t| Complex64::from_polar(gaussian(t - 0.4), 3.0 * t)).unwrap();
    let o = order(1.2);
    let big = frft_reciprocal(&o, &u).unwrap();
    let err = |phi, eps| {
        let m = phi_mean(&o, &big, &SummabilitySpec::new(phi, eps).unwrap(), &g, &QuadratureSpec::midpoint()).unwrap();
        max_abs_diff(m.samples(), u.samples())
    };
    let coarse = err(Phi::Abel, 1e-2).min(err(Phi::Gauss, 1e-2));
    let fine = err(Phi::Abel, 1e-8).max(err(Phi::Gauss, 1e-8));
    assert!(fine < coarse, "{fine} vs {coarse}");
}

#[test]
fn means_are_linear() {
    let g = EvaluationGrid::centered(200, 0.03).unwrap();
    let a = SampledSignal::from_fn(&g, |t| Complex64::new(t.sin(), t.cos())).unwrap();
    let b = SampledSignal::from_fn(&g, |t| Complex64::new(gaussian(t), t)).unwrap();
    let sum = a.with_samples(a.samples().iter().zip(b.samples()).map(|(x, y)| x + y).collect()).unwrap();
    let o = order(2.2);
    let spec = SummabilitySpec::gauss(1e-3).unwrap();
    let q = QuadratureSpec::midpoint();
    let ma = phi_mean(&o, &a, &spec, &g, &q).unwrap();
    let mb = phi_mean(&o, &b, &spec, &g, &q).unwrap();
    let ms = phi_mean(&o, &sum, &spec, &g, &q).unwrap();
    let added: Vec<Complex64> = ma.samples().iter().zip(mb.samples()).map(|(x, y)| x + y).collect();
    assert!(max_abs_diff(ms.samples(), &added) <= 1e-12);
}

#[test]
fn special_orders_are_rejected() {
    let g = EvaluationGrid::centered(8, 0.1).unwrap();
    let u = SampledSignal::zeros(&g);
    let spec = SummabilitySpec::abel(1e-3).unwrap();
    assert!(phi_mean(&order(PI), &u, &spec, &g, &QuadratureSpec::midpoint()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kernels_are_even_positive_and_peak_at_zero(eps in 1e-6f64..10.0, x in 1e-6f64..100.0) {
        for k in [poisson_kernel, gauss_kernel] {
            prop_assert_eq!(k(eps, x), k(eps, -x));
            prop_assert!(k(eps, x) >= 0.0);
            prop_assert!(k(eps, x) < k(eps, 0.0));
        }
    }

    #[test]
    fn gauss_kernel_has_unit_mass(eps in 1e-6f64..10.0) {
        let reach = 100.0 * eps.sqrt();
        let mass = QuadratureSpec::midpoint().integrate(-reach, reach, 0.1 * eps.sqrt(), |x| gauss_kernel(eps, x));
        prop_assert!((mass - 1.0).abs() <= 1e-10);
    }
}
