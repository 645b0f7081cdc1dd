use std::fmt;
use std::str::FromStr;

use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};

use super::big;
use crate::error::{Error, Result};

/// A weight `k`: an integer or half an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Rational64);

impl Weight {
    pub fn new(value: Rational64) -> Result<Self> {
        if *value.denom() == 1 || *value.denom() == 2 {
            Ok(Weight(value))
        } else {
            Err(Error::InvalidWeight(value.to_string()))
        }
    }

    pub fn int(k: i64) -> Self {
        Weight(Rational64::from_integer(k))
    }

    /// `n/2`.
    pub fn half(n: i64) -> Self {
        Weight(Rational64::new(n, 2))
    }

    pub fn value(self) -> Rational64 {
        self.0
    }

    pub fn to_big(self) -> BigRational {
        big(self.0)
    }

    pub fn is_integral(self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// The integer value, if integral.
    pub fn as_int(self) -> Option<i64> {
        self.is_integral().then(|| self.0.to_integer())
    }

    /// `k + d`.
    pub fn offset(self, d: i64) -> Weight {
        Weight(self.0 + d)
    }

    /// `2k`, always an integer.
    pub fn twice(self) -> i64 {
        (self.0 * 2).to_integer()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `p` or `p/q` with decimal integers; no floating-point syntax.
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        Weight::new(r)
    }
}

impl From<i64> for Weight {
    fn from(k: i64) -> Self {
        Weight::int(k)
    }
}

/// Parses `p` or `p/q` into a machine rational.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected an integer or p/q, got {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_halves() {
        assert_eq!("4".parse::<Weight>().unwrap(), Weight::int(4));
        assert_eq!("3/2".parse::<Weight>().unwrap(), Weight::half(3));
        assert_eq!("6/4".parse::<Weight>().unwrap(), Weight::half(3));
        assert!("1/3".parse::<Weight>().is_err());
        assert!("1.5".parse::<Weight>().is_err());
        assert!("x".parse::<Weight>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for w in [Weight::half(13), Weight::int(-6), Weight::int(0)] {
            assert_eq!(w.to_string().parse::<Weight>().unwrap(), w);
        }
    }
}
