//! Exact scalar arithmetic over the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DgaError, Result};

/// Field elements are stored as big rationals. Over `F_p` they are always
/// integers in `0..p`.
pub type Scalar = BigRational;

/// The ground field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(DgaError::Validation(format!("characteristic {p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Brings an arbitrary rational into canonical form for this field.
    pub fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => x,
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = mod_inverse(&den, &p);
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => a * b,
            FieldSpec::Prime(_) => self.reduce(a * b),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            FieldSpec::Rationals => a.recip(),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(a.numer(), &p))
            }
        }
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// Every element of a finite field, in increasing integer order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => Err(DgaError::Scope(
                "element enumeration requires a finite field".into(),
            )),
            FieldSpec::Prime(p) => Ok((0..*p as i64).map(|v| self.from_i64(v)).collect()),
        }
    }

    /// Parses `"p/q"`, `"-p/q"` or a bare integer.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let parsed = if s.contains('/') {
            BigRational::from_str(s).ok()
        } else {
            BigInt::from_str(s).ok().map(BigRational::from_integer)
        };
        let x = parsed.ok_or_else(|| DgaError::Validation(format!("bad scalar {s:?}")))?;
        if let FieldSpec::Prime(p) = self {
            if x.denom().is_multiple_of(&BigInt::from(*p)) {
                return Err(DgaError::Validation(format!(
                    "scalar {s:?} is undefined in characteristic {p}"
                )));
            }
        }
        Ok(self.reduce(x))
    }

    /// Lossless text form: `"p/q"` with explicit sign over Q, `0..p-1` over F_p.
    pub fn format(&self, x: &Scalar) -> String {
        match self {
            FieldSpec::Rationals => {
                let sign = if x.is_negative() { "-" } else { "" };
                format!("{sign}{}/{}", x.numer().abs(), x.denom())
            }
            FieldSpec::Prime(_) => x.numer().to_string(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.mod_floor(p).extended_gcd(p);
    assert!(e.gcd.is_one(), "element not invertible mod p");
    e.x.mod_floor(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(3).is_ok());
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::Prime(5);
        let a = f.from_i64(3);
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(3));
        assert!(f.parse("1/5").is_err());
    }

    #[test]
    fn rational_format_roundtrip() {
        let q = FieldSpec::Rationals;
        let x = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert_eq!(q.parse(&q.format(&x)).unwrap(), x);
        assert_eq!(q.format(&q.zero()), "0/1");
    }
}
