//! Subcommand implementations. Outputs are written only after every step
//! has succeeded, so a failed run leaves no partial files behind.

use std::fs;
use std::path::Path;
use std::time::Instant;

use frft_core::crypto::{self, cipher_grid, error_report, generate_taus, CipherSignal, EncryptionKey, WeightSpec};
use frft_core::fast::{fast_decrypt_attempt, FastDfrftPlan};
use frft_core::multipliers::{triple_decrypt, triple_encrypt, triple_offset};
use frft_core::{
    frft as transform, key_from_text, key_to_text, read_signal, write_signal, EvaluationGrid, FrftOrder, Phi,
    QuadratureSpec, SampledSignal, SummabilitySpec,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::{BenchArgs, CompareArgs, DecryptArgs, EncryptArgs, FamilyArg, FrftArgs, KeygenArgs, QuadArgs, RuleArg};

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_signal(path: &Path) -> CliResult<SampledSignal> {
    read_signal(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_key(path: &Path) -> CliResult<EncryptionKey> {
    key_from_text(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn quadrature(q: &QuadArgs) -> CliResult<QuadratureSpec> {
    let mut spec = match q.rule {
        RuleArg::Midpoint => QuadratureSpec::midpoint(),
        RuleArg::Trapezoid => QuadratureSpec::trapezoid(),
    }
    .with_refinement(q.refine);
    if let Some(e) = q.extent {
        spec = spec.with_extent(e);
    }
    spec.validate()?;
    Ok(spec)
}

pub fn frft(a: &FrftArgs) -> CliResult<()> {
    let u = load_signal(&a.input)?;
    let order = FrftOrder::with_default_tol(a.alpha)?;
    let grid = a.grid.unwrap_or_else(|| u.grid());
    let out = transform(&order, &u, &grid, &quadrature(&a.quad)?)?;
    write_text(&a.out, &write_signal(&out))
}

/// Key for `u`: taus drawn from a seeded generator at least two plaintext
/// steps apart, offset `1 + max|u|` (or `1 + max|T u|` with a multiplier).
fn make_key(u: &SampledSignal, alpha: f64, family: FamilyArg, k: f64, ntaus: usize, seed: u64, beta: Option<f64>) -> CliResult<EncryptionKey> {
    let order = FrftOrder::with_default_tol(alpha)?;
    let weight = match family {
        FamilyArg::Omega1 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            WeightSpec::omega1(k, generate_taus(&mut rng, k, ntaus, 2.0 * u.dt())?)?
        }
        FamilyArg::Omega2 => WeightSpec::Omega2,
    };
    let offset = match beta {
        Some(b) => triple_offset(u, b)?,
        None => crypto::compute_offset(u),
    };
    Ok(EncryptionKey::new(order, weight, offset, beta)?)
}

pub fn keygen(a: &KeygenArgs) -> CliResult<()> {
    let u = load_signal(&a.plaintext)?;
    let key = make_key(&u, a.alpha, a.family, a.k, a.ntaus, a.seed, a.beta)?;
    write_text(&a.out, &key_to_text(&key))
}

fn encrypt_with(u: &SampledSignal, key: &EncryptionKey, grid: &EvaluationGrid, quad: &QuadratureSpec) -> CliResult<CipherSignal> {
    Ok(match key.multiplier_beta() {
        Some(_) => triple_encrypt(u, key, grid, quad)?,
        None => crypto::encrypt(u, key, grid, quad)?,
    })
}

fn decrypt_with(
    c: &CipherSignal,
    key: &EncryptionKey,
    spec: &SummabilitySpec,
    grid: &EvaluationGrid,
    quad: &QuadratureSpec,
) -> CliResult<SampledSignal> {
    Ok(match key.multiplier_beta() {
        Some(_) => triple_decrypt(c, key, spec, grid, quad)?,
        None => crypto::decrypt(c, key, spec, grid, quad)?,
    })
}

pub fn encrypt(a: &EncryptArgs) -> CliResult<()> {
    let key = load_key(&a.key)?;
    let u = load_signal(&a.input)?;
    let grid = match a.grid {
        Some(g) => g,
        None => cipher_grid(&u.grid(), &key)?,
    };
    let c = encrypt_with(&u, &key, &grid, &quadrature(&a.quad)?)?;
    write_text(&a.out, &write_signal(&c.signal))
}

pub fn decrypt(a: &DecryptArgs) -> CliResult<()> {
    let key = load_key(&a.key)?;
    let c = CipherSignal::new(load_signal(&a.input)?);
    let truth = a.truth.as_deref().map(load_signal).transpose()?;
    let grid = match (a.grid, &truth) {
        (Some(g), _) => g,
        (None, Some(t)) => t.grid(),
        (None, None) => c.plaintext_grid(key.order())?,
    };
    let spec = SummabilitySpec::new(a.phi.into(), a.epsilon)?;
    let d = decrypt_with(&c, &key, &spec, &grid, &quadrature(&a.quad)?)?;
    let report = truth
        .map(|t| error_report(&d, &t, &key.weight().singularities()))
        .transpose()?;
    write_text(&a.out, &write_signal(&d))?;
    if let Some(r) = report {
        println!("max_error={:.6e} l1_error={:.6e} points={}", r.max_error, r.l1_error, r.points_used);
    }
    Ok(())
}

/// One line of the comparison table.
struct Row {
    method: &'static str,
    epsilon: Option<f64>,
    max_error: f64,
    l1_error: f64,
    seconds: f64,
}

/// Errors of Abel and Gauss decryption over `epsilons` and of the fast
/// discrete transform (omitted for triple keys, which it cannot undo).
fn error_rows(
    c: &CipherSignal,
    key: &EncryptionKey,
    truth: &SampledSignal,
    epsilons: &[f64],
    fast_n: usize,
    quad: &QuadratureSpec,
) -> CliResult<Vec<Row>> {
    let grid = truth.grid();
    let singular = key.weight().singularities();
    let mut rows = Vec::new();
    for phi in [Phi::Abel, Phi::Gauss] {
        for &eps in epsilons {
            let spec = SummabilitySpec::new(phi, eps)?;
            let start = Instant::now();
            let d = decrypt_with(c, key, &spec, &grid, quad)?;
            let seconds = start.elapsed().as_secs_f64();
            let r = error_report(&d, truth, &singular)?;
            rows.push(Row {
                method: phi.name(),
                epsilon: Some(eps),
                max_error: r.max_error,
                l1_error: r.l1_error,
                seconds,
            });
        }
    }
    if key.multiplier_beta().is_none() {
        let start = Instant::now();
        let plan = FastDfrftPlan::new(fast_n, -key.order().alpha())?;
        let d = fast_decrypt_attempt(c, key, &plan, &grid, quad)?;
        let seconds = start.elapsed().as_secs_f64();
        let r = error_report(&d, truth, &singular)?;
        rows.push(Row {
            method: "fast",
            epsilon: None,
            max_error: r.max_error,
            l1_error: r.l1_error,
            seconds,
        });
    }
    Ok(rows)
}

fn rows_to_csv(rows: &[Row], timing: bool) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["method", "epsilon", "max_error", "l1_error", "seconds"])?;
    for r in rows {
        w.write_record([
            r.method.to_string(),
            r.epsilon.map(|e| format!("{e:e}")).unwrap_or_default(),
            format!("{:.6e}", r.max_error),
            format!("{:.6e}", r.l1_error),
            format!("{:.3}", if timing { r.seconds } else { 0.0 }),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(format!("csv output: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(format!("csv output: {e}")))
}

pub fn compare(a: &CompareArgs) -> CliResult<()> {
    let key = load_key(&a.key)?;
    let c = CipherSignal::new(load_signal(&a.cipher)?);
    let truth = load_signal(&a.truth)?;
    let rows = error_rows(&c, &key, &truth, &a.epsilons, a.fast_n, &quadrature(&a.quad)?)?;
    write_text(&a.out_csv, &rows_to_csv(&rows, !a.no_timing)?)
}

pub fn bench(a: &BenchArgs) -> CliResult<()> {
    if !(a.k.is_finite() && a.k > 0.0) || a.n < 2 {
        return Err(CliError::Numeric(format!("need k > 0 and n >= 2, got k = {}, n = {}", a.k, a.n)));
    }
    let grid = EvaluationGrid::centered(a.n, 2.0 * a.k / a.n as f64)?;
    let u = SampledSignal::from_real_fn(&grid, |t| if t.abs() <= 1.0 { 1.0 } else { 0.0 })?;
    let key = make_key(&u, a.alpha, FamilyArg::Omega1, a.k, a.ntaus, a.seed, None)?;
    let quad = QuadratureSpec::midpoint().with_refinement(frft_core::crypto::DEFAULT_WEIGHT_REFINEMENT);
    let c = crypto::encrypt(&u, &key, &cipher_grid(&grid, &key)?, &quad)?;
    let spec = SummabilitySpec::abel(1e-14)?;
    let d = crypto::decrypt(&c, &key, &spec, &grid, &quad)?;
    let rows = error_rows(&c, &key, &u, &crate::default_epsilons(), a.fast_n, &quad)?;
    let table = rows_to_csv(&rows, !a.no_timing)?;

    fs::create_dir_all(&a.out_dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", a.out_dir.display())))?;
    write_text(&a.out_dir.join("plaintext.sig"), &write_signal(&u))?;
    write_text(&a.out_dir.join("key.txt"), &key_to_text(&key))?;
    write_text(&a.out_dir.join("cipher.sig"), &write_signal(&c.signal))?;
    write_text(&a.out_dir.join("decrypted.sig"), &write_signal(&d))?;
    write_text(&a.out_dir.join("errors.csv"), &table)?;
    for r in &rows {
        let eps = r.epsilon.map(|e| format!("{e:e}")).unwrap_or_else(|| "-".into());
        println!("{:<6} eps={:<6} max_error={:.3e} l1_error={:.3e}", r.method, eps, r.max_error, r.l1_error);
    }
    Ok(())
}
