//! Small JSON helpers for exact integers.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

/// Serializes as a JSON number when it fits in `i64`, otherwise as a decimal string.
pub(crate) struct BigJson<'a>(pub &'a BigInt);

impl Serialize for BigJson<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => ser.serialize_i64(v),
            None => ser.serialize_str(&self.0.to_string()),
        }
    }
}

pub(crate) fn big_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::input(format!("not an integer: {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("not an integer: {s:?}"))),
        other => Err(Error::input(format!("expected integer, got {other}"))),
    }
}
