//! Flat `key = value` curvature documents.
//!
//! Keys: `p` (half the leaf dimension, so `dim F = 2p`), or `leaf_dim` for an
//! arbitrary leaf dimension; `q`; `volume`; `boundary_volume` (its presence
//! selects the Dirichlet formulas); and every field of [`CurvatureData`].
//! Values are integers, fractions `a/b` or decimals such as `-1.25e-3`.
//! `#` starts a comment.

use num_bigint::BigInt;
use num_traits::Zero;

use super::CurvatureData;
use crate::clifford::AlgebraSignature;
use crate::error::{Result, WresError};
use crate::symbolic::{Quantity, Q};

/// A parsed curvature document.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatConfig {
    pub sig: AlgebraSignature,
    pub data: CurvatureData,
    pub volume: Quantity,
    pub boundary_volume: Option<Quantity>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> WresError {
    WresError::Config { line, column, message: message.into() }
}

/// Parses an exact decimal or fraction literal.
pub fn parse_rational(s: &str) -> Option<Q> {
    if let Some((a, b)) = s.split_once('/') {
        let a = parse_rational(a.trim())?;
        let b = parse_rational(b.trim())?;
        return (!b.is_zero()).then(|| a / b);
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int}{frac}");
    let n: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut v = Q::from_integer(n);
    if scale >= 0 {
        v *= Q::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= Q::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -v } else { v })
}

fn parse_count(v: &str, line: usize, column: usize, key: &str) -> Result<usize> {
    v.parse::<usize>().map_err(|_| err(line, column, format!("`{key}` must be a nonnegative integer")))
}

/// Parses a curvature document.
pub fn parse_config(text: &str) -> Result<HeatConfig> {
    let mut data = CurvatureData::default();
    let mut half_leaf: Option<usize> = None;
    let mut leaf: Option<usize> = None;
    let mut q: Option<usize> = None;
    let mut volume = Quantity::one();
    let mut boundary_volume = None;
    let mut seen = std::collections::BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(err(line, col, "expected `key = value`"));
        };
        let key = content[..eq].trim();
        let key_col = content.len() - content.trim_start().len() + 1;
        let value = content[eq + 1..].trim();
        let val_col = eq + 2 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
        if key.is_empty() {
            return Err(err(line, key_col, "missing key"));
        }
        if !seen.insert(key.to_string()) {
            return Err(err(line, key_col, format!("duplicate key `{key}`")));
        }
        match key {
            "p" => half_leaf = Some(parse_count(value, line, val_col, key)?),
            "leaf_dim" => leaf = Some(parse_count(value, line, val_col, key)?),
            "q" => q = Some(parse_count(value, line, val_col, key)?),
            _ => {
                let v = parse_rational(value).ok_or_else(|| err(line, val_col, format!("malformed number `{value}`")))?;
                let v = Quantity::rational(v);
                match key {
                    "volume" => volume = v,
                    "boundary_volume" => boundary_volume = Some(v),
                    _ => match data.field_mut(key) {
                        Some(slot) => *slot = v,
                        None => return Err(err(line, key_col, format!("unknown key `{key}`"))),
                    },
                }
            }
        }
    }
    let leaf_dim = match (half_leaf, leaf) {
        (Some(_), Some(_)) => return Err(err(1, 1, "give either `p` or `leaf_dim`, not both")),
        (Some(p), None) => 2 * p,
        (None, Some(l)) => l,
        (None, None) => return Err(err(1, 1, "missing `p` or `leaf_dim`")),
    };
    let q = q.ok_or_else(|| err(1, 1, "missing `q`"))?;
    if leaf_dim + q == 0 || leaf_dim > 20 || q > 20 {
        return Err(err(1, 1, "dimensions out of range"));
    }
    Ok(HeatConfig { sig: AlgebraSignature::new(leaf_dim, q), data, volume, boundary_volume })
}
