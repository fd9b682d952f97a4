//! Exact nonnegative rationals for tuning exponents and thresholds.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalError {
    #[error("rational must be written as p/q or an integer, got {0:?}")]
    Malformed(String),
    #[error("rational denominator must be nonzero")]
    ZeroDenominator,
}

/// A reduced nonnegative rational `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        let g = gcd(num, den);
        Ok(Rational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: u64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// True when the value lies strictly between 0 and 1.
    pub fn is_proper_fraction(&self) -> bool {
        self.num > 0 && self.num < self.den
    }

    /// `1 - self`, for proper fractions and values `≤ 1`.
    pub fn one_minus(&self) -> Option<Rational> {
        if self.num > self.den {
            return None;
        }
        Some(Rational::new(self.den - self.num, self.den).unwrap())
    }

    /// `⌊base^(num/den)⌋` computed exactly in integer arithmetic.
    ///
    /// Requires `num ≤ den` (an exponent at most 1). Returns `None` when the
    /// intermediate power `base^num` does not fit in 128 bits.
    pub fn floor_pow(&self, base: usize) -> Option<usize> {
        assert!(self.num <= self.den, "exponent must be at most 1");
        if self.num == 0 {
            return Some(1);
        }
        if base <= 1 {
            return Some(base);
        }
        let power = (base as u128).checked_pow(self.num as u32)?;
        Some(floor_root(power, self.den as u32) as usize)
    }
}

/// `⌊value^(1/k)⌋` by binary search.
fn floor_root(value: u128, k: u32) -> u128 {
    if k == 1 || value <= 1 {
        return value;
    }
    let mut lo = 0u128;
    let mut hi = 1u128 << (128 / k as usize + 1).min(127);
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(k) {
            Some(p) if p <= value => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalError::Malformed(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let num = p.trim().parse().map_err(|_| bad())?;
                let den = q.trim().parse().map_err(|_| bad())?;
                Rational::new(num, den)
            }
            None => {
                let num = s.trim().parse().map_err(|_| bad())?;
                Ok(Rational::integer(num))
            }
        }
    }
}
