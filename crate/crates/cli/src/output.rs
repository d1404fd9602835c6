//! Number formatting and file emission.

use std::path::Path;

use anyhow::{Context, Result};
use dtvol_core::{Branch, VolumeResult};
use serde::Serialize;
use serde_json::Value;

/// Significant decimal digits of every emitted float.
pub const SIG_DIGITS: usize = 15;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = serde_json::Number::from_f64(round_sig(x)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Compact JSON with floats rounded to [`SIG_DIGITS`].
pub fn json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(serde_json::to_string(&v)?)
}

/// Indented JSON with floats rounded to [`SIG_DIGITS`].
pub fn json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(serde_json::to_string_pretty(&v)?)
}

fn csv_string(header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| round_sig(x).to_string()))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// `alpha, volume, quad_error`, one row per angle.
pub fn curve_csv(curve: &[VolumeResult]) -> Result<String> {
    csv_string(
        &["alpha", "volume", "quad_error"],
        curve.iter().map(|r| vec![r.alpha, r.volume, r.quad_error]),
    )
}

/// `omega, re_z, im_z, re_L, im_L, logabsL`, one row per tracked point.
pub fn branch_csv(branch: &Branch) -> Result<String> {
    csv_string(
        &["omega", "re_z", "im_z", "re_L", "im_L", "logabsL"],
        branch.points.iter().map(|p| {
            vec![
                p.omega,
                p.z.re,
                p.z.im,
                p.longitude.re,
                p.longitude.im,
                p.log_abs_l(),
            ]
        }),
    )
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
