//! Canonical JSON output: sorted keys, floats rounded to 15 significant digits.

use serde::Serialize;
use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 15;

pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn canonicalize(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_significant(x))) {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(canonicalize),
        Value::Object(map) => map.values_mut().for_each(canonicalize),
        _ => {}
    }
}

pub fn to_canonical_value<T: Serialize>(item: &T) -> Value {
    let mut value = serde_json::to_value(item).expect("output types serialize infallibly");
    canonicalize(&mut value);
    value
}

/// Pretty-printed canonical JSON.
pub fn to_canonical_string<T: Serialize>(item: &T) -> String {
    serde_json::to_string_pretty(&to_canonical_value(item)).expect("values serialize infallibly")
}

/// Single-line canonical JSON, for JSON-lines reports.
pub fn to_canonical_line<T: Serialize>(item: &T) -> String {
    serde_json::to_string(&to_canonical_value(item)).expect("values serialize infallibly")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_fifteen_digits() {
        assert_eq!(round_significant(0.1 + 0.2), 0.3);
        assert_eq!(round_significant(2.0 / 7.0).to_string(), "0.285714285714286");
        let s = to_canonical_line(&serde_json::json!({"b": 1.0 / 3.0, "a": [2]}));
        assert_eq!(s, r#"{"a":[2],"b":0.333333333333333}"#);
    }
}
