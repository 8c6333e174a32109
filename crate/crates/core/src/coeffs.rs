//! Exact coefficient rings: the integers, the rationals, `Z/n`, and the
//! circle group modeled additively as `Q/Z`.
//!
//! `AngleQ` stands in for `U(1)` through `x ↦ exp(2π√−1 x)`. It is only a
//! group, so multiplication is rejected. Its canonical representatives live
//! in the half-open interval `[0, 1)`, which turns [`angle_lift`] into a
//! function.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Int,
    Rat,
    IntMod(u64),
    AngleQ,
}

impl CoeffRing {
    pub fn int_mod(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRing("Zmod modulus must be at least 1".into()));
        }
        Ok(CoeffRing::IntMod(n))
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(BigInt::zero())
    }

    /// Image of an integer under the unique ring (or group) map from `Z`.
    pub fn from_int(&self, v: BigInt) -> Scalar {
        match self {
            CoeffRing::Int => Scalar::Int(v),
            CoeffRing::Rat => Scalar::Rat(BigRational::from_integer(v)),
            CoeffRing::IntMod(n) => Scalar::Mod { n: *n, v: v.mod_floor(&BigInt::from(*n)) },
            CoeffRing::AngleQ => Scalar::Angle(BigRational::zero()),
        }
    }

    /// Builds a scalar from a rational payload, reducing where the ring demands it.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            CoeffRing::Rat => Ok(Scalar::Rat(q.clone())),
            CoeffRing::AngleQ => Ok(Scalar::Angle(reduce_mod_one(q))),
            _ if q.is_integer() => Ok(self.from_int(q.to_integer())),
            _ => Err(Error::Parse(format!("{q} is not an integer in ring {self}"))),
        }
    }

    /// Whether the ring is one the chain-level dualities are built for.
    pub fn supports_duals(&self) -> bool {
        matches!(self, CoeffRing::Int | CoeffRing::Rat)
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Int => write!(f, "Z"),
            CoeffRing::Rat => write!(f, "Q"),
            CoeffRing::IntMod(n) => write!(f, "Zmod:{n}"),
            CoeffRing::AngleQ => write!(f, "U1"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "Int" => Ok(CoeffRing::Int),
            "Q" | "Rat" => Ok(CoeffRing::Rat),
            "U1" | "AngleQ" | "Q/Z" => Ok(CoeffRing::AngleQ),
            _ => {
                let n = s
                    .strip_prefix("Zmod:")
                    .or_else(|| s.strip_prefix("Z/"))
                    .ok_or_else(|| Error::InvalidRing(s.to_string()))?;
                let n: u64 = n.parse().map_err(|_| Error::InvalidRing(s.to_string()))?;
                CoeffRing::int_mod(n)
            }
        }
    }
}

/// Reduces a rational to its representative in `[0, 1)`.
pub fn reduce_mod_one(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(q.floor().to_integer())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { n: u64, v: BigInt },
    Angle(BigRational),
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Int(BigInt::from(v))
    }

    pub fn rat(p: i64, q: i64) -> Self {
        Scalar::Rat(BigRational::new(p.into(), q.into()))
    }

    pub fn modn(n: u64, v: i64) -> Self {
        CoeffRing::IntMod(n).from_int(BigInt::from(v))
    }

    pub fn angle(p: i64, q: i64) -> Self {
        Scalar::Angle(reduce_mod_one(&BigRational::new(p.into(), q.into())))
    }

    pub fn ring(&self) -> CoeffRing {
        match self {
            Scalar::Int(_) => CoeffRing::Int,
            Scalar::Rat(_) => CoeffRing::Rat,
            Scalar::Mod { n, .. } => CoeffRing::IntMod(*n),
            Scalar::Angle(_) => CoeffRing::AngleQ,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) | Scalar::Mod { v, .. } => v.is_zero(),
            Scalar::Rat(q) | Scalar::Angle(q) => q.is_zero(),
        }
    }

    /// The rational payload: exact for `Int`, `Rat` and `Mod` (its
    /// representative in `[0,n)`), and the canonical lift for `Angle`.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Int(v) | Scalar::Mod { v, .. } => BigRational::from_integer(v.clone()),
            Scalar::Rat(q) | Scalar::Angle(q) => q.clone(),
        }
    }

    fn check_ring(&self, other: &Scalar) -> Result<()> {
        let (a, b) = (self.ring(), other.ring());
        if a != b {
            return Err(Error::RingMismatch(a.to_string(), b.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { n, v: a }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { n: *n, v: (a + b).mod_floor(&BigInt::from(*n)) }
            }
            (Scalar::Angle(a), Scalar::Angle(b)) => Scalar::Angle(reduce_mod_one(&(a + b))),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { n, v } => Scalar::Mod { n: *n, v: (-v).mod_floor(&BigInt::from(*n)) },
            Scalar::Angle(a) => Scalar::Angle(reduce_mod_one(&-a)),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { n, v: a }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { n: *n, v: (a * b).mod_floor(&BigInt::from(*n)) }
            }
            (Scalar::Angle(_), Scalar::Angle(_)) => return Err(Error::MulOnAngleQ),
            _ => unreachable!(),
        })
    }

    /// Integer multiple; defined in every ring, including `Q/Z`.
    pub fn scale(&self, k: &BigInt) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(a * k),
            Scalar::Rat(a) => Scalar::Rat(a * BigRational::from_integer(k.clone())),
            Scalar::Mod { n, v } => Scalar::Mod { n: *n, v: (v * k).mod_floor(&BigInt::from(*n)) },
            Scalar::Angle(a) => {
                Scalar::Angle(reduce_mod_one(&(a * BigRational::from_integer(k.clone()))))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Int(v) => int_to_json(v),
            Scalar::Rat(q) | Scalar::Angle(q) => Value::String(rational_to_string(q)),
            Scalar::Mod { n, v } => {
                let mut m = serde_json::Map::new();
                m.insert("mod".into(), Value::from(*n));
                m.insert("val".into(), int_to_json(v));
                Value::Object(m)
            }
        }
    }

    pub fn from_json(ring: &CoeffRing, v: &Value) -> Result<Scalar> {
        match (ring, v) {
            (CoeffRing::IntMod(n), Value::Object(m)) => {
                let given = m.get("mod").and_then(Value::as_u64);
                if given != Some(*n) {
                    return Err(Error::Parse(format!("modulus mismatch in {v}")));
                }
                let val = m.get("val").ok_or_else(|| Error::Parse(format!("missing val in {v}")))?;
                Ok(ring.from_int(parse_int(val)?))
            }
            _ => ring.from_rational(&parse_rational(v)?),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(q) | Scalar::Angle(q) => write!(f, "{}", rational_to_string(q)),
            Scalar::Mod { n, v } => write!(f, "{v} mod {n}"),
        }
    }
}

/// Canonical section of `exp: Q → Q/Z`: the representative in `[0, 1)`.
pub fn angle_lift(a: &Scalar) -> Result<Scalar> {
    match a {
        Scalar::Angle(q) => Ok(Scalar::Rat(q.clone())),
        other => Err(Error::RingMismatch(other.ring().to_string(), CoeffRing::AngleQ.to_string())),
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integers small enough for `i64` become JSON numbers; larger ones become
/// decimal strings.
pub fn int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

pub fn rational_to_json(q: &BigRational) -> Value {
    if q.is_integer() {
        int_to_json(q.numer())
    } else {
        Value::String(rational_to_string(q))
    }
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s}"))),
        _ => Err(Error::Parse(format!("not an integer: {v}"))),
    }
}

pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(_) => Ok(BigRational::from_integer(parse_int(v)?)),
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s}")))?;
                    let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s}")))?;
                    if q.is_zero() {
                        return Err(Error::Parse(format!("zero denominator in {s}")));
                    }
                    Ok(BigRational::new(p, q))
                }
                None => Ok(BigRational::from_integer(
                    s.parse().map_err(|_| Error::Parse(format!("bad rational {s}")))?,
                )),
            }
        }
        _ => Err(Error::Parse(format!("not a rational: {v}"))),
    }
}

/// `true` when `q` has denominator one.
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}
