//! Shared serialization helpers for reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serializer;

/// Integers are written as decimal strings so that large values survive JSON readers.
pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
