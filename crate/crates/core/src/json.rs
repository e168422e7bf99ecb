//! Canonical JSON rendering.
//!
//! Values are routed through `serde_json::Value`, whose object map is a
//! `BTreeMap`, so keys come out sorted regardless of struct field order.

use serde::Serialize;

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable value");
    let mut out = serde_json::to_string_pretty(&value).expect("json value renders");
    out.push('\n');
    out
}
