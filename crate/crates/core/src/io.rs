//! Text format for sampled signals.
//!
//! ```text
//! frftsig,v1,<t0>,<dt>,<count>
//! <t>,<re>,<im>
//! ...
//! ```
//!
//! Numbers are written with 17 significant digits, so a write/read cycle is
//! exact. The `t` column is redundant and is checked against `t0 + i*dt`.

use num_complex::Complex64;

use crate::error::{FrftError, Result};
use crate::signal::SampledSignal;

pub const SIGNAL_HEADER: &str = "frftsig,v1";

/// Allowed mismatch between the `t` column and `t0 + i*dt`, relative to `max(1, |t|)`.
const TIME_COLUMN_TOL: f64 = 1e-12;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_signal(u: &SampledSignal) -> String {
    let mut out = String::with_capacity(64 * (u.len() + 1));
    out.push_str(&format!("{SIGNAL_HEADER},{},{},{}\n", num(u.t0()), num(u.dt()), u.len()));
    for (i, z) in u.samples().iter().enumerate() {
        out.push_str(&num(u.time(i)));
        out.push(',');
        out.push_str(&num(z.re));
        out.push(',');
        out.push_str(&num(z.im));
        out.push('\n');
    }
    out
}

fn field(s: &str, what: &str, line: usize) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| FrftError::Parse(format!("line {line}: {what} '{s}' is not a number")))
}

pub fn read_signal(text: &str) -> Result<SampledSignal> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| FrftError::Parse("empty signal file".into()))?;
    let parts: Vec<&str> = header.trim().split(',').collect();
    if parts.len() != 5 || parts[0] != "frftsig" || parts[1] != "v1" {
        return Err(FrftError::Parse(format!(
            "line 1: expected '{SIGNAL_HEADER},<t0>,<dt>,<count>', found '{header}'"
        )));
    }
    let t0 = field(parts[2], "t0", 1)?;
    let dt = field(parts[3], "dt", 1)?;
    let count: usize = parts[4]
        .trim()
        .parse()
        .map_err(|_| FrftError::Parse(format!("line 1: count '{}' is not a non-negative integer", parts[4])))?;
    if !(t0.is_finite() && dt.is_finite() && dt > 0.0) || count == 0 {
        return Err(FrftError::Parse(format!(
            "line 1: need finite t0, dt > 0 and count >= 1 (got {t0}, {dt}, {count})"
        )));
    }

    let mut samples = Vec::with_capacity(count);
    for (idx, line) in lines {
        let n = idx + 1;
        let cols: Vec<&str> = line.trim().split(',').collect();
        if cols.len() != 3 {
            return Err(FrftError::Parse(format!("line {n}: expected t,re,im")));
        }
        let t = field(cols[0], "t", n)?;
        let expect = t0 + samples.len() as f64 * dt;
        if !((t - expect).abs() <= TIME_COLUMN_TOL * expect.abs().max(1.0)) {
            return Err(FrftError::Parse(format!("line {n}: t = {t} but the header implies {expect}")));
        }
        samples.push(Complex64::new(field(cols[1], "re", n)?, field(cols[2], "im", n)?));
        if samples.len() > count {
            return Err(FrftError::Parse(format!("more than {count} rows")));
        }
    }
    if samples.len() != count {
        return Err(FrftError::Parse(format!("header promises {count} rows, found {}", samples.len())));
    }
    SampledSignal::new(t0, dt, samples).map_err(|e| FrftError::Parse(e.to_string()))
}
