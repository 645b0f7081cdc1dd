//! Sign scans of Fourier coefficients and the arithmetic facts behind them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{catalog, legendre3, sigma1, FormId};
use crate::qseries::{int, rat, Exponent, QSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PositivityStatus {
    AllPositive,
    /// First negative coefficient.
    Violation { exponent: String, coeff: String },
    /// No negative coefficient, but some vanish; `exponent` is the first zero.
    NonNegativeWithZeros { exponent: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    /// Coefficients strictly below `q^checked_below` were scanned.
    pub checked_below: String,
    pub first_nonpositive: Option<String>,
    pub status: PositivityStatus,
    #[serde(skip)]
    first_nonpositive_exp: Option<Exponent>,
}

impl PositivityReport {
    pub fn is_all_positive(&self) -> bool {
        self.status == PositivityStatus::AllPositive
    }

    pub fn first_nonpositive_exponent(&self) -> Option<Exponent> {
        self.first_nonpositive_exp
    }
}

impl fmt::Display for PositivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            PositivityStatus::AllPositive => write!(f, "AllPositive below q^{}", self.checked_below),
            PositivityStatus::Violation { exponent, coeff } => {
                write!(f, "Violation at q^{exponent}: coefficient {coeff}")
            }
            PositivityStatus::NonNegativeWithZeros { exponent } => {
                write!(f, "NonNegativeWithZeros below q^{}: first zero at q^{exponent}", self.checked_below)
            }
        }
    }
}

/// Scans the coefficients of `f` from its leading term up to (excluding) `q^prec`.
///
/// When every nonzero term of `f` lies on `lead + Z` only that coset is
/// scanned; otherwise every exponent of the grid is.
pub fn check_positivity(f: &QSeries, prec: Exponent) -> Result<PositivityReport> {
    if prec > f.trunc_exponent() {
        return Err(Error::InsufficientPrecision(format!(
            "series is known below q^{}, scan requested below q^{prec}",
            f.trunc_exponent()
        )));
    }
    let f = f.truncated(prec);
    let step = if f.has_off_coset_terms() { 1 } else { f.exp_den() as usize };
    let mut first_zero = None;
    let mut violation = None;
    for i in (0..f.len()).step_by(step) {
        let c = f.coeff_at_index(i);
        let e = Exponent::new(f.lead_exp() + i as i64, f.exp_den() as i64);
        if c.is_negative() {
            violation = Some((e, c));
            break;
        }
        if c.is_zero() && first_zero.is_none() {
            first_zero = Some(e);
        }
    }
    let (status, first) = match (violation, first_zero) {
        (Some((e, c)), z) => (
            PositivityStatus::Violation {
                exponent: e.to_string(),
                coeff: c.to_string(),
            },
            Some(z.map_or(e, |z| z.min(e))),
        ),
        (None, Some(z)) => (PositivityStatus::NonNegativeWithZeros { exponent: z.to_string() }, Some(z)),
        (None, None) => (PositivityStatus::AllPositive, None),
    };
    Ok(PositivityReport {
        checked_below: prec.to_string(),
        first_nonpositive: first.map(|e| e.to_string()),
        status,
        first_nonpositive_exp: first,
    })
}

/// Scans `E2^{(4)} − α·Δ2^{(4)}` below `q^prec`.
pub fn alpha_bound_check(alpha: &BigRational, prec: i64) -> Result<PositivityReport> {
    let f = catalog(FormId::E2_4, prec).sub(&catalog(FormId::Delta2_4, prec).scale(alpha));
    check_positivity(&f, Exponent::from_integer(prec))
}

/// `σ(4n) − 4σ(n)` together with whether it equals `3σ(m)` for the odd part `m` of `n`.
pub fn sigma_gap_identity(n: u64) -> (u64, bool) {
    assert!(n >= 1, "n must be positive");
    let gap = sigma1(4 * n) - 4 * sigma1(n);
    let m = n >> n.trailing_zeros();
    (gap, gap == 3 * sigma1(m))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `(Σ_{d|n} (d/3), Σ_{d|n} (d/3)(n/d)²)` at `n = p^e`, summed over the divisors.
pub fn char3_case_check(p: u64, e: u32) -> Result<(BigInt, BigInt)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut plain = BigInt::zero();
    let mut weighted = BigInt::zero();
    for i in 0..=e {
        let chi = BigInt::from(legendre3(p).pow(i));
        plain += &chi;
        weighted += chi * Pow::pow(&pb, 2 * (e - i));
    }
    Ok((plain, weighted))
}

/// The same pair from the case formulas: by `p = 3`, `(p/3) = 1`, and
/// `(p/3) = −1` with `e` even or odd.
pub fn char3_closed_form(p: u64, e: u32) -> Result<(BigInt, BigInt)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let top: BigInt = Pow::pow(&pb, 2 * e + 2);
    let sq: BigInt = &pb * &pb;
    Ok(if p == 3 {
        (BigInt::one(), Pow::pow(&pb, 2 * e))
    } else if legendre3(p) == 1 {
        (BigInt::from(e + 1), (top - 1) / (sq - 1))
    } else if e.is_even() {
        (BigInt::one(), (top + 1) / (sq + 1))
    } else {
        (BigInt::zero(), (top - 1) / (sq + 1))
    })
}

/// `a_i = (−n)_i (−(2n−1)/4)_i / (((2n+5)/4)_i i!)` for `i = 0..=n`.
pub fn halfint_coefficients(n: u64) -> Vec<BigRational> {
    let n = n as i64;
    let mut out = vec![BigRational::one()];
    for i in 0..n {
        let prev = out.last().expect("non-empty").clone();
        out.push(prev * step_ratio(n, i));
    }
    out
}

/// `a_{i+1}/a_i`.
fn step_ratio(n: i64, i: i64) -> BigRational {
    let i = int(i);
    (int(-n) + &i) * (rat(-(2 * n - 1), 4) + &i) / ((rat(2 * n + 5, 4) + &i) * (i + int(1)))
}

/// True when `a_i > 0` for `i < (2n+3)/4`, the signs of `a_i` alternate
/// beyond that, and `0 ≤ −16·a_{i+1}/a_i < 8` for `(2n+3)/4 < i ≤ n`.
pub fn halfint_sign_window(n: u64) -> bool {
    let a = halfint_coefficients(n);
    let edge = rat(2 * n as i64 + 3, 4);
    let signs = a.iter().enumerate().all(|(i, c)| {
        let i_r = int(i as i64);
        if i_r < edge {
            c.is_positive()
        } else {
            !c.is_zero() && c.is_positive() != a[i - 1].is_positive()
        }
    });
    let window = (0..=n as i64).filter(|&i| int(i) > edge).all(|i| {
        let r = -int(16) * step_ratio(n as i64, i);
        !r.is_negative() && r < int(8)
    });
    signs && window
}
