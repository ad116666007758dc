//! Nonnegative-or-signed rationals over `i64` extended with `+∞`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse `{0}` as a rational")]
    Parse(String),
}

/// A reduced fraction with positive denominator, or positive infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExtendedRational {
    Finite { num: i64, den: i64 },
    Infinity,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl ExtendedRational {
    pub fn new(num: i64, den: i64) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Ok(ExtendedRational::Finite { num: sign * num / g, den: sign * den / g })
    }

    /// `num / den` for counts; panics only on a zero denominator.
    pub fn ratio(num: usize, den: usize) -> Self {
        Self::new(num as i64, den as i64).expect("nonzero denominator")
    }

    pub fn integer(v: i64) -> Self {
        ExtendedRational::Finite { num: v, den: 1 }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite { .. })
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            ExtendedRational::Finite { num, den } => num as f64 / den as f64,
            ExtendedRational::Infinity => f64::INFINITY,
        }
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (*self, *other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, _) => Ordering::Greater,
            (_, Infinity) => Ordering::Less,
            (Finite { num: a, den: b }, Finite { num: c, den: d }) => {
                (a as i128 * d as i128).cmp(&(c as i128 * b as i128))
            }
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite { num, den } => write!(f, "{num}/{den}"),
            ExtendedRational::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if matches!(s, "inf" | "+inf" | "∞") {
            return Ok(ExtendedRational::Infinity);
        }
        let bad = || RationalError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse().map_err(|_| bad())?;
                let d = d.trim().parse().map_err(|_| bad())?;
                ExtendedRational::new(n, d)
            }
            None => s.parse().map(ExtendedRational::integer).map_err(|_| bad()),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
