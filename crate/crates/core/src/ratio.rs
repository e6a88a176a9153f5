//! Exact non-negative rationals over 128-bit integers.
//!
//! Densities, overheads and coverage fractions are kept exact until a
//! reporting boundary converts them to `f64`. Comparisons cross-multiply
//! with checked arithmetic; an overflow is an error, never a wrap.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Ratio {
    num: u128,
    den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Result<Ratio> {
        if den == 0 {
            return Err(Error::InvalidParameter("ratio with zero denominator".into()));
        }
        let g = gcd(num, den).max(1);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn from_int(n: u128) -> Ratio {
        Ratio { num: n, den: 1 }
    }

    pub fn zero() -> Ratio {
        Ratio { num: 0, den: 1 }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn checked_cmp(&self, other: &Ratio) -> Result<Ordering> {
        let lhs = self
            .num
            .checked_mul(other.den)
            .ok_or(Error::Overflow("ratio comparison"))?;
        let rhs = other
            .num
            .checked_mul(self.den)
            .ok_or(Error::Overflow("ratio comparison"))?;
        Ok(lhs.cmp(&rhs))
    }

    pub fn checked_mul(&self, other: &Ratio) -> Result<Ratio> {
        // Cross-reduce first to keep products small.
        let g1 = gcd(self.num, other.den).max(1);
        let g2 = gcd(other.num, self.den).max(1);
        let num = (self.num / g1)
            .checked_mul(other.num / g2)
            .ok_or(Error::Overflow("ratio multiply"))?;
        let den = (self.den / g2)
            .checked_mul(other.den / g1)
            .ok_or(Error::Overflow("ratio multiply"))?;
        Ratio::new(num, den)
    }

    pub fn checked_add(&self, other: &Ratio) -> Result<Ratio> {
        let den = self
            .den
            .checked_mul(other.den)
            .ok_or(Error::Overflow("ratio add"))?;
        let a = self
            .num
            .checked_mul(other.den)
            .ok_or(Error::Overflow("ratio add"))?;
        let b = other
            .num
            .checked_mul(self.den)
            .ok_or(Error::Overflow("ratio add"))?;
        Ratio::new(a.checked_add(b).ok_or(Error::Overflow("ratio add"))?, den)
    }

    pub fn div_int(&self, k: u128) -> Result<Ratio> {
        if k == 0 {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        Ratio::new(self.num, self.den.checked_mul(k).ok_or(Error::Overflow("ratio divide"))?)
    }

    pub fn ceil(&self) -> u128 {
        self.num.div_ceil(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
