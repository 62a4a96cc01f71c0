//! Exact rationals and the minimal commutative-ring interface shared by
//! character targets.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` or `p` formatting used by all JSON emitters.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Domain(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn q_abs_le_one(x: &Q) -> bool {
    x.abs() <= Q::one()
}

/// Commutative ring with unit.
pub trait Ring: Clone + PartialEq + Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_ring_zero(&self) -> bool;
    fn from_q(x: &Q) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn scale(&self, x: &Q) -> Self {
        self.mul(&Self::from_q(x))
    }
}

impl Ring for Q {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
}

impl Ring for f64 {
    fn ring_zero() -> Self {
        0.0
    }
    fn ring_one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_ring_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_q(x: &Q) -> Self {
        q_to_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), qf(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert!(parse_q("1/0").is_err());
        assert_eq!(q_to_string(&qf(-2, 4)), "-1/2");
        assert_eq!(q_to_string(&q(7)), "7");
    }
}
