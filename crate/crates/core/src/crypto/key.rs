//! Encryption keys and their line-oriented text form.
//!
//! ```text
//! frftkey,v1
//! alpha=7.8539816339744828e-1
//! family=omega1
//! k=1.1000000000000001e0
//! taus=2.9999999999999999e-1,-6.9999999999999996e-1
//! offset_m=2.0000000000000000e0
//! beta=1.0000000000000000e0        (optional)
//! ```
//!
//! `family=omega2` keys carry no `k` or `taus` lines. Numbers are written with
//! 17 significant digits so every field round-trips exactly.

use std::f64::consts::PI;

use rand::Rng;

use super::weight::WeightSpec;
use crate::error::{FrftError, Result};
use crate::order::FrftOrder;

pub const KEY_HEADER: &str = "frftkey,v1";

/// Maximum draws per tau before random generation gives up.
const MAX_DRAWS_PER_TAU: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EncryptionKey {
    order: FrftOrder,
    weight: WeightSpec,
    offset_m: f64,
    multiplier_beta: Option<f64>,
}

impl EncryptionKey {
    pub fn new(order: FrftOrder, weight: WeightSpec, offset_m: f64, multiplier_beta: Option<f64>) -> Result<Self> {
        order.require_generic()?;
        weight.validate()?;
        if !(offset_m.is_finite() && offset_m >= 1.0) {
            return Err(FrftError::InvalidArgument(format!(
                "offset_m must be finite and >= 1, got {offset_m}"
            )));
        }
        if let Some(b) = multiplier_beta {
            if !(b > 0.0 && b < PI) {
                return Err(FrftError::InvalidArgument(format!("beta must lie in (0, pi), got {b}")));
            }
        }
        Ok(Self {
            order,
            weight,
            offset_m,
            multiplier_beta,
        })
    }

    pub fn order(&self) -> &FrftOrder {
        &self.order
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.weight
    }

    pub fn offset_m(&self) -> f64 {
        self.offset_m
    }

    pub fn multiplier_beta(&self) -> Option<f64> {
        self.multiplier_beta
    }

    /// Same key with a different transform order.
    pub fn with_order(&self, order: FrftOrder) -> Result<Self> {
        Self::new(order, self.weight.clone(), self.offset_m, self.multiplier_beta)
    }

    pub fn with_weight(&self, weight: WeightSpec) -> Result<Self> {
        Self::new(self.order, weight, self.offset_m, self.multiplier_beta)
    }

    pub fn with_beta(&self, beta: Option<f64>) -> Result<Self> {
        Self::new(self.order, self.weight.clone(), self.offset_m, beta)
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn key_to_text(key: &EncryptionKey) -> String {
    let mut out = format!("{KEY_HEADER}\nalpha={}\nfamily={}\n", num(key.order.alpha()), key.weight.family_name());
    if let WeightSpec::Omega1 { k, taus } = &key.weight {
        let list: Vec<String> = taus.iter().map(|&t| num(t)).collect();
        out.push_str(&format!("k={}\ntaus={}\n", num(*k), list.join(",")));
    }
    out.push_str(&format!("offset_m={}\n", num(key.offset_m)));
    if let Some(b) = key.multiplier_beta {
        out.push_str(&format!("beta={}\n", num(b)));
    }
    out
}

fn parse_num(field: &str, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| FrftError::Parse(format!("{field}: '{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(FrftError::Parse(format!("{field}: '{s}' is not finite")));
    }
    Ok(v)
}

pub fn key_from_text(text: &str) -> Result<EncryptionKey> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some(KEY_HEADER) => {}
        Some(other) => return Err(FrftError::Parse(format!("expected '{KEY_HEADER}', found '{other}'"))),
        None => return Err(FrftError::Parse("empty key".into())),
    }

    let mut fields: Vec<(&str, &str)> = Vec::new();
    for line in lines {
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| FrftError::Parse(format!("expected name=value, found '{line}'")))?;
        let name = name.trim();
        if !matches!(name, "alpha" | "family" | "k" | "taus" | "offset_m" | "beta") {
            return Err(FrftError::Parse(format!("unknown key field '{name}'")));
        }
        if fields.iter().any(|(n, _)| *n == name) {
            return Err(FrftError::Parse(format!("field '{name}' appears twice")));
        }
        fields.push((name, value.trim()));
    }
    let get = |name: &str| fields.iter().find(|(n, _)| *n == name).map(|(_, v)| *v);
    let require = |name: &str| get(name).ok_or_else(|| FrftError::Parse(format!("missing field '{name}'")));

    let alpha = parse_num("alpha", require("alpha")?)?;
    let weight = match require("family")? {
        "omega1" => {
            let k = parse_num("k", require("k")?)?;
            let taus = require("taus")?
                .split(',')
                .map(|s| parse_num("taus", s))
                .collect::<Result<Vec<_>>>()?;
            WeightSpec::omega1(k, taus).map_err(|e| FrftError::Parse(e.to_string()))?
        }
        "omega2" => {
            if get("k").is_some() || get("taus").is_some() {
                return Err(FrftError::Parse("omega2 keys take no k or taus".into()));
            }
            WeightSpec::Omega2
        }
        other => return Err(FrftError::Parse(format!("unknown weight family '{other}'"))),
    };
    let offset_m = parse_num("offset_m", require("offset_m")?)?;
    let beta = get("beta").map(|b| parse_num("beta", b)).transpose()?;

    let order = FrftOrder::with_default_tol(alpha).map_err(|e| FrftError::Parse(e.to_string()))?;
    EncryptionKey::new(order, weight, offset_m, beta).map_err(|e| FrftError::Parse(e.to_string()))
}

/// `count` taus drawn uniformly from `[-k, k]`, redrawing any that land within
/// `min_separation` of an earlier one. Returned in draw order.
pub fn generate_taus<R: Rng + ?Sized>(rng: &mut R, k: f64, count: usize, min_separation: f64) -> Result<Vec<f64>> {
    if !(k.is_finite() && k > 0.0) || count == 0 || !(min_separation >= 0.0) {
        return Err(FrftError::InvalidArgument(format!(
            "cannot draw {count} taus in [-{k}, {k}] with separation {min_separation}"
        )));
    }
    let mut taus: Vec<f64> = Vec::with_capacity(count);
    while taus.len() < count {
        let mut placed = false;
        for _ in 0..MAX_DRAWS_PER_TAU {
            let t = rng.gen_range(-k..=k);
            if taus.iter().all(|s| (s - t).abs() >= min_separation) {
                taus.push(t);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(FrftError::InvalidArgument(format!(
                "could not place {count} taus in [-{k}, {k}] at separation {min_separation}"
            )));
        }
    }
    Ok(taus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample_key() -> EncryptionKey {
        EncryptionKey::new(
            FrftOrder::with_default_tol(PI / 4.0).unwrap(),
            WeightSpec::omega1(1.1, vec![0.3, -0.7]).unwrap(),
            2.0,
            None,
        )
        .unwrap()
    }

    #[test]
    fn text_round_trip_is_exact() {
        let key = sample_key();
        assert_eq!(key_from_text(&key_to_text(&key)).unwrap(), key);
        let odd = EncryptionKey::new(
            FrftOrder::with_default_tol(0.1 + 0.2).unwrap(),
            WeightSpec::omega1(1.0 / 3.0, vec![1.0 / 7.0, -2.0 / 9.0, 1e-17]).unwrap(),
            1.0 + f64::EPSILON,
            Some(PI / 3.0),
        )
        .unwrap();
        assert_eq!(key_from_text(&key_to_text(&odd)).unwrap(), odd);
        let w2 = key.with_weight(WeightSpec::Omega2).unwrap();
        assert_eq!(key_from_text(&key_to_text(&w2)).unwrap(), w2);
    }

    #[test]
    fn malformed_keys_are_parse_errors() {
        let good = key_to_text(&sample_key());
        let cases = [
            good.replace("taus=", "taus=1.5,"),
            good.lines().filter(|l| !l.starts_with("offset_m")).collect::<Vec<_>>().join("\n"),
            good.replace("frftkey,v1", "frftkey,v2"),
            good.replace("family=omega1", "family=omega3"),
            good.replace("alpha=", "alpha=abc"),
            good.replace("alpha=7.8539816339744828e-1", "alpha=0"),
            good.replace("offset_m=2", "offset_m=0.5"),
            format!("{good}beta=4\n"),
            format!("{good}colour=blue\n"),
            format!("{good}k=2\n"),
            String::new(),
        ];
        for text in cases {
            assert!(matches!(key_from_text(&text), Err(FrftError::Parse(_))), "{text}");
        }
    }

    #[test]
    fn generated_taus_are_in_range_and_separated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let taus = generate_taus(&mut rng, 1.1, 5, 0.01).unwrap();
        assert_eq!(taus.len(), 5);
        assert!(taus.iter().all(|t| t.abs() <= 1.1));
        for (i, a) in taus.iter().enumerate() {
            for b in &taus[i + 1..] {
                assert!((a - b).abs() >= 0.01);
            }
        }
        let mut again = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(generate_taus(&mut again, 1.1, 5, 0.01).unwrap(), taus);
        assert!(generate_taus(&mut rng, 1.0, 3, 5.0).is_err());
    }
}
