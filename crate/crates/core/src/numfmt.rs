//! JSON encodings for exact numbers.
//!
//! Naturals and integers are written as JSON numbers when they fit in 64 bits
//! and as decimal strings otherwise. Rationals are always strings, `"p/q"` or
//! `"p"` when the denominator is 1.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A natural number with the number-or-string JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigNat(pub BigUint);

impl Serialize for BigNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_nat(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for BigNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NatVisitor;

        impl Visitor<'_> for NatVisitor {
            type Value = BigNat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number or a decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigNat, E> {
                Ok(BigNat(BigUint::from(v)))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigNat, E> {
                u64::try_from(v)
                    .map(|v| BigNat(BigUint::from(v)))
                    .map_err(|_| E::custom("negative number"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigNat, E> {
                v.parse().map(BigNat).map_err(E::custom)
            }
        }

        d.deserialize_any(NatVisitor)
    }
}

pub fn ser_nat<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

pub fn ser_nat_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|n| BigNat(n.clone())))
}

pub fn ser_int<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

pub fn ser_rat<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(q))
}

pub fn ser_opt_rat<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser_rat(q, s),
        None => s.serialize_none(),
    }
}

pub fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

pub fn de_rat<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rat(&s).ok_or_else(|| de::Error::custom(format!("not a rational: {s:?}")))
}
