use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Rat = BigRational;

/// Builds `num/den` in lowest terms. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `a/b`, or `a` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a/b` or `a` into a rational in lowest terms.
pub fn parse_rat(s: &str) -> Result<Rat, ParseExtRatError> {
    let s = s.trim();
    let err = || ParseExtRatError(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
        None => BigInt::from_str(s).map(Rat::from_integer).map_err(|_| err()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseExtRatError(pub String);

impl fmt::Display for ParseExtRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}

impl core::error::Error for ParseExtRatError {}

/// A rational number or `+∞`, the value set of a valuation.
///
/// The derived order places every finite value below [`ExtRat::Infinity`].
/// Addition is absorbing at infinity, matching `v(0 * x) = ∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    Finite(Rat),
    Infinity,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRat::Finite(rat_int(n))
    }

    pub fn new(num: i64, den: i64) -> Self {
        ExtRat::Finite(rat(num, den))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinity => None,
        }
    }

    pub fn into_finite(self) -> Option<Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinity => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtRat::Finite(r) if r.is_negative())
    }

    /// `self - rhs` for a finite `rhs`; infinity stays infinite.
    pub fn sub_finite(&self, rhs: &Rat) -> ExtRat {
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r - rhs),
            ExtRat::Infinity => ExtRat::Infinity,
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl From<i64> for ExtRat {
    fn from(n: i64) -> Self {
        ExtRat::from_int(n)
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }
}

impl<'a> Add<&'a ExtRat> for &'a ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }
}

impl PartialEq<Rat> for ExtRat {
    fn eq(&self, other: &Rat) -> bool {
        matches!(self, ExtRat::Finite(r) if r == other)
    }
}

impl PartialOrd<Rat> for ExtRat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(match self {
            ExtRat::Finite(r) => r.cmp(other),
            ExtRat::Infinity => Ordering::Greater,
        })
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => f.write_str(&format_rat(r)),
            ExtRat::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRat {
    type Err = ParseExtRatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "inf" {
            Ok(ExtRat::Infinity)
        } else {
            parse_rat(s).map(ExtRat::Finite)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        for s in ["0", "7/3", "-1/2", "12", "inf"] {
            let v: ExtRat = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("4/6".parse::<ExtRat>().unwrap().to_string(), "2/3");
        assert_eq!("3/-6".parse::<ExtRat>().unwrap().to_string(), "-1/2");
        assert!("1/0".parse::<ExtRat>().is_err());
        assert!("x".parse::<ExtRat>().is_err());
        assert!("".parse::<ExtRat>().is_err());
    }

    #[test]
    fn infinity_is_top_and_absorbing() {
        let a = ExtRat::new(5, 2);
        assert!(a < ExtRat::Infinity);
        assert_eq!(a.clone() + ExtRat::Infinity, ExtRat::Infinity);
        assert_eq!(core::cmp::min(a.clone(), ExtRat::Infinity), a);
        assert!(ExtRat::Infinity > rat(1000, 1));
    }
}
