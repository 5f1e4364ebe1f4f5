//! Coefficient rings. Every coefficient is stored as a reduced `BigRational`;
//! over `F_p` it is the canonical residue in `[0, p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coeff {
    Z,
    Q,
    Fp(u64),
}

impl Coeff {
    pub fn fp(p: u64) -> Result<Coeff> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Coeff::Fp(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Coeff::Z)
    }

    pub fn normalize(self, v: BigRational) -> BigRational {
        match self {
            Coeff::Z => {
                debug_assert!(v.is_integer(), "non-integer coefficient {v} over Z");
                v
            }
            Coeff::Q => v,
            Coeff::Fp(p) => BigRational::from_integer(reduce_mod(&v, p)),
        }
    }

    pub fn from_int(self, v: i64) -> BigRational {
        self.normalize(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn inverse(self, v: &BigRational) -> Result<BigRational> {
        if v.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        match self {
            Coeff::Z => {
                if v.abs().is_one() {
                    Ok(v.clone())
                } else {
                    Err(Error::Invalid(format!("{v} is not a unit in Z")))
                }
            }
            Coeff::Q => Ok(v.recip()),
            Coeff::Fp(p) => {
                let a = reduce_mod(v, p);
                Ok(BigRational::from_integer(mod_inverse(&a, p)))
            }
        }
    }

    pub fn parse(s: &str) -> Result<Coeff> {
        match s {
            "Z" => Ok(Coeff::Z),
            "Q" => Ok(Coeff::Q),
            _ => match s.strip_prefix("Fp:") {
                Some(p) => Coeff::fp(p.parse().map_err(|_| Error::Parse(format!("bad prime in {s:?}")))?),
                None => Err(Error::Parse(format!("unknown coefficient ring {s:?}"))),
            },
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Z => write!(f, "Z"),
            Coeff::Q => write!(f, "Q"),
            Coeff::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Coeff::parse(&s).map_err(serde::de::Error::custom)
    }
}

fn reduce_mod(v: &BigRational, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let num = v.numer().mod_floor(&pb);
    let den = v.denom().mod_floor(&pb);
    assert!(!den.is_zero(), "denominator divisible by {p}");
    (num * mod_inverse(&den, p)).mod_floor(&pb)
}

fn mod_inverse(a: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    // p is prime: a^(p-2)
    a.modpow(&(&pb - 2u32), &pb)
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn format_scalar(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse_scalar(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn to_i64(v: &BigRational) -> Option<i64> {
    if v.is_integer() {
        v.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_normalization() {
        let f = Coeff::Fp(5);
        assert_eq!(f.from_int(-1), int(4));
        assert_eq!(f.normalize(BigRational::new(BigInt::from(1), BigInt::from(2))), int(3));
        assert_eq!(f.inverse(&int(2)).unwrap(), int(3));
    }

    #[test]
    fn parsing() {
        assert_eq!(Coeff::parse("Fp:7").unwrap(), Coeff::Fp(7));
        assert!(Coeff::parse("Fp:8").is_err());
        assert_eq!(parse_scalar("-3/6").unwrap(), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(format_scalar(&parse_scalar("4/2").unwrap()), "2");
    }
}
