//! Canonical text output: JSON with fixed 17-significant-digit floats and CSV.

use serde::Serialize;
use serde_json::{Number, Value};

use crate::pinchseq::SequenceEnvelope;

/// `x` with 17 significant digits in scientific notation, signed exponent.
pub fn format_f64(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((mant, exp)) if !exp.starts_with('-') => format!("{mant}e+{exp}"),
        _ => s,
    }
}

fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.as_u64().is_none() && n.as_i64().is_none() => match n.as_f64() {
            Some(x) if x.is_finite() => {
                let s = format_f64(x);
                Value::Number(
                    serde_json::from_str::<Number>(&s).expect("formatted float is a JSON number"),
                )
            }
            _ => Value::Null,
        },
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, normalize(v))).collect())
        }
        other => other,
    }
}

/// Pretty JSON document with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let v = serde_json::to_value(doc).expect("documents serialize to JSON");
    let mut s = serde_json::to_string_pretty(&normalize(v)).expect("values serialize");
    s.push('\n');
    s
}

pub const SEQUENCE_CSV_HEADER: &str = "m,i,target_len,len_lo,len_hi,lam_lo,lam_hi";

/// One line per `(m, i)`, sorted by `m` then `i`.
pub fn sequence_csv(env: &SequenceEnvelope) -> String {
    let mut out = String::from(SEQUENCE_CSV_HEADER);
    out.push('\n');
    for col in &env.columns {
        for r in &col.rows {
            let fields = [r.target_len, r.len_lo, r.len_hi, r.lam_lo, r.lam_hi].map(format_f64);
            out.push_str(&format!("{},{},{}\n", col.m, r.i, fields.join(",")));
        }
    }
    out
}
