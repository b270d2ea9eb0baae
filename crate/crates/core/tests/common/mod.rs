//! Fixtures and independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use frft_core::crypto::{generate_taus, EncryptionKey, WeightSpec};
use frft_core::{EvaluationGrid, FrftOrder, SampledSignal};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const K: f64 = 1.1;
pub const N_PLAIN: usize = 2048;
pub const TAU_SEED: u64 = 7;

/// Centered grid of `n` cells exactly covering `[-half, half]`.
pub fn cell_grid(n: usize, half: f64) -> EvaluationGrid {
    EvaluationGrid::centered(n, 2.0 * half / n as f64).unwrap()
}

pub fn rect(t: f64) -> f64 {
    if t.abs() <= 1.0 {
        1.0
    } else {
        0.0
    }
}

pub fn rect_signal(grid: &EvaluationGrid) -> SampledSignal {
    SampledSignal::from_real_fn(grid, rect).unwrap()
}

pub fn gaussian(t: f64) -> f64 {
    (-PI * t * t).exp()
}

/// The rect plaintext on `[-k, k]` with `N_PLAIN` cells.
pub fn rect_fixture() -> (EvaluationGrid, SampledSignal) {
    let g = cell_grid(N_PLAIN, K);
    let u = rect_signal(&g);
    (g, u)
}

/// Key with order `alpha`, three seeded taus in `[-k, k]` separated by at
/// least two plaintext steps, and offset 2 (for the rect plaintext).
pub fn rect_key(alpha: f64, grid: &EvaluationGrid) -> EncryptionKey {
    let mut rng = ChaCha8Rng::seed_from_u64(TAU_SEED);
    let taus = generate_taus(&mut rng, K, 3, 2.0 * grid.dx()).unwrap();
    EncryptionKey::new(
        FrftOrder::with_default_tol(alpha).unwrap(),
        WeightSpec::omega1(K, taus).unwrap(),
        2.0,
        None,
    )
    .unwrap()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Composite Simpson rule with `panels` (even) panels.
pub fn simpson(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Fresnel cosine integral `C(x) = int_0^x cos(pi s^2 / 2) ds`: Simpson
/// quadrature for `|x| < 5`, the asymptotic expansion beyond.
pub fn fresnel_c(x: f64) -> f64 {
    if x.abs() >= 5.0 {
        return x.signum() * fresnel_c_asymptotic(x.abs());
    }
    let panels = 4000 + (x * x * 400.0) as usize;
    simpson(0.0, x, panels, |s| (PI * s * s / 2.0).cos())
}

/// `C(x) ~ 1/2 + f(x) sin(pi x^2/2) - g(x) cos(pi x^2/2)` for large positive `x`.
pub fn fresnel_c_asymptotic(x: f64) -> f64 {
    let z = PI * x * x;
    let (mut f, mut g) = (0.0, 0.0);
    let mut term = 1.0; // (4k-1)!! / z^{2k}
    for k in 0..8 {
        f += if k % 2 == 0 { term } else { -term };
        let next = term * (4 * k + 1) as f64 / z;
        g += if k % 2 == 0 { next } else { -next };
        term = next * (4 * k + 3) as f64 / z;
    }
    let (f, g) = (f / (PI * x), g / (PI * x));
    let arg = z / 2.0;
    0.5 + f * arg.sin() - g * arg.cos()
}

/// Power series of the Fresnel cosine integral, for moderate `x`.
pub fn fresnel_c_series(x: f64) -> f64 {
    let z = PI / 2.0 * x * x;
    let mut term = x; // n = 0 term without the 1/(4n+1) factor
    let mut sum = x;
    for n in 1..200 {
        let n2 = 2 * n;
        term *= -z * z / ((n2 - 1) as f64 * n2 as f64);
        let add = term / (4 * n + 1) as f64;
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Closed form of the pi/4 transform of `e^{-i pi t^2} |t|^{-1/2} rect(t)`:
/// `2^{3/4} A e^{i pi x^2} C(sqrt(2^{5/2} |x|)) / sqrt(|x|)`.
pub fn singular_chirp_transform(x: f64) -> Complex64 {
    let a = FrftOrder::with_default_tol(PI / 4.0).unwrap().amplitude();
    let phase = Complex64::from_polar(1.0, PI * x * x);
    2f64.powf(0.75) * a * phase * fresnel_c((2f64.powf(2.5) * x.abs()).sqrt()) / x.abs().sqrt()
}

/// Classical Hilbert transform `(1/pi) PV int u(s)/(t-s) ds`, written as
/// `(1/pi) int_0^S (u(t-s) - u(t+s)) / s ds`, by Simpson quadrature.
pub fn pv_hilbert(u: impl Fn(f64) -> f64, t: f64, reach: f64) -> f64 {
    let h = 1e-6;
    let du = (u(t + h) - u(t - h)) / (2.0 * h);
    let g = |s: f64| {
        if s == 0.0 {
            -2.0 * du
        } else {
            (u(t - s) - u(t + s)) / s
        }
    };
    simpson(0.0, reach, 200_000, g) / PI
}
