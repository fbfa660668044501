//! Commutative semirings of outcomes.
//!
//! Four carriers are wired in: the natural numbers (exact, unbounded), the
//! two-element semiring with `1 + 1 = 1`, and the two three-element
//! semirings `{0, 1, ω}` used for may and must testing. The latter two share
//! their multiplication and differ only in addition.
//!
//! Values are carrier-agnostic symbols ([`Value`]); a [`SemiringId`] decides
//! which symbols are legal and how they combine.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// One of the four outcome semirings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemiringId {
    Nat,
    Bool01,
    May,
    Must,
}

impl SemiringId {
    pub const ALL: [SemiringId; 4] = [
        SemiringId::Nat,
        SemiringId::Bool01,
        SemiringId::May,
        SemiringId::Must,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringId::Nat => "nat",
            SemiringId::Bool01 => "bool01",
            SemiringId::May => "may",
            SemiringId::Must => "must",
        }
    }

    /// Whether `a + a = a` for every element.
    pub fn is_idempotent(self) -> bool {
        !matches!(self, SemiringId::Nat)
    }

    pub fn zero(self) -> Value {
        Value::zero()
    }

    pub fn one(self) -> Value {
        Value::one()
    }

    pub fn contains(self, v: &Value) -> bool {
        match (self, v) {
            (SemiringId::Nat, Value::Int(_)) => true,
            (SemiringId::Nat, Value::Omega) => false,
            (_, Value::Int(n)) => *n <= BigUint::one(),
            (SemiringId::Bool01, Value::Omega) => false,
            (_, Value::Omega) => true,
        }
    }

    pub fn check(self, v: &Value) -> Result<(), Error> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::Carrier {
                semiring: self,
                value: v.clone(),
            })
        }
    }

    pub fn add(self, a: &Value, b: &Value) -> Result<Value, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn mul(self, a: &Value, b: &Value) -> Result<Value, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    /// Addition on values already known to lie in the carrier.
    pub(crate) fn add_unchecked(self, a: &Value, b: &Value) -> Value {
        use Value::*;
        match self {
            SemiringId::Nat => match (a, b) {
                (Int(x), Int(y)) => Int(x + y),
                _ => unreachable!("omega outside nat"),
            },
            SemiringId::Bool01 => {
                if a.is_zero() && b.is_zero() {
                    Value::zero()
                } else {
                    Value::one()
                }
            }
            SemiringId::May => match (a, b) {
                (Omega, _) | (_, Omega) => Omega,
                _ if a.is_zero() && b.is_zero() => Value::zero(),
                _ => Value::one(),
            },
            SemiringId::Must => {
                if a.is_zero() {
                    b.clone()
                } else if b.is_zero() {
                    a.clone()
                } else if a == b {
                    a.clone()
                } else {
                    // 1 + ω = ω + 1 = 1
                    Value::one()
                }
            }
        }
    }

    pub(crate) fn mul_unchecked(self, a: &Value, b: &Value) -> Value {
        use Value::*;
        match self {
            SemiringId::Nat => match (a, b) {
                (Int(x), Int(y)) => Int(x * y),
                _ => unreachable!("omega outside nat"),
            },
            _ => {
                if a.is_zero() || b.is_zero() {
                    Value::zero()
                } else if matches!(a, Omega) || matches!(b, Omega) {
                    Omega
                } else {
                    Value::one()
                }
            }
        }
    }

    /// `n · v`, the n-fold sum of `v`, by doubling.
    pub(crate) fn scale_unchecked(self, n: &BigUint, v: &Value) -> Value {
        if n.is_zero() || v.is_zero() {
            return Value::zero();
        }
        if self.is_idempotent() {
            return v.clone();
        }
        match v {
            Value::Int(x) => Value::Int(x * n),
            Value::Omega => unreachable!("omega outside nat"),
        }
    }

    pub fn sum<'a, I>(self, values: I) -> Result<Value, Error>
    where
        I: IntoIterator<Item = &'a Value>,
    {
        let mut acc = Value::zero();
        for v in values {
            acc = self.add(&acc, v)?;
        }
        Ok(acc)
    }

    pub fn product<'a, I>(self, values: I) -> Result<Value, Error>
    where
        I: IntoIterator<Item = &'a Value>,
    {
        let mut acc = Value::one();
        for v in values {
            acc = self.mul(&acc, v)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nat" => Ok(SemiringId::Nat),
            "bool01" | "bool" => Ok(SemiringId::Bool01),
            "may" => Ok(SemiringId::May),
            "must" => Ok(SemiringId::Must),
            other => Err(format!(
                "unknown semiring `{other}` (expected nat, bool01, may or must)"
            )),
        }
    }
}

/// An outcome symbol: a natural number or `ω`.
///
/// Outcome literals in terms are stored as values and only checked against a
/// carrier when a semiring is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(BigUint),
    Omega,
}

impl Value {
    pub fn zero() -> Self {
        Value::Int(BigUint::zero())
    }

    pub fn one() -> Self {
        Value::Int(BigUint::one())
    }

    pub fn int(n: u64) -> Self {
        Value::Int(BigUint::from(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Int(n) if n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Value::Int(n) if n.is_one())
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, Value::Omega)
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Value::Int(n) => n.try_into().ok(),
            Value::Omega => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Omega => f.write_str("w"),
        }
    }
}

impl FromStr for Value {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "w" {
            return Ok(Value::Omega);
        }
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            return BigUint::from_str(s)
                .map(Value::Int)
                .map_err(|e| e.to_string());
        }
        Err(format!("`{s}` is not an outcome literal"))
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
