//! Truncated formal series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] lives on the exponent grid `(1/N)·Z`. It stores every
//! coefficient from its lowest nonzero exponent up to (but excluding) its
//! truncation exponent; coefficients past the truncation are unknown, not zero.
//! Internally all coefficients share one positive denominator so that the
//! Cauchy product runs over integers.

mod arith;
mod json;
mod weight;

use std::borrow::Cow;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

pub use json::WireQSeries;
pub use weight::{parse_rational, Weight};

use crate::error::{Error, Result};

/// Exponent of `q`, always an exact rational.
pub type Exponent = Rational64;

/// Universal grid denominator: every exponent that occurs in the catalog
/// (`1/24` for eta, `1/4`, `1/3`, `1/2`, `(k+1)/6` for half-integral `k`)
/// lies on `(1/24)·Z`.
pub const DEFAULT_EXP_DEN: u32 = 24;

/// Lifts a machine rational to an arbitrary-precision one.
pub fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug)]
pub struct QSeries {
    exp_den: u32,
    lead_exp: i64,
    trunc: i64,
    /// Numerators of the coefficients of `q^{(lead_exp + i)/exp_den}`.
    num: Vec<BigInt>,
    /// Shared positive denominator, coprime to the numerators as a whole.
    den: BigInt,
}

impl QSeries {
    /// The zero series, known to vanish below `q^{trunc/exp_den}`.
    pub fn zero(exp_den: u32, trunc: i64) -> Self {
        assert!(exp_den > 0, "exponent grid denominator must be positive");
        QSeries {
            exp_den,
            lead_exp: trunc,
            trunc,
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    /// The constant `c`, exact below `q^prec`.
    pub fn constant(c: BigRational, prec: i64) -> Self {
        let len = prec.max(0) as usize;
        let mut num = vec![BigInt::zero(); len];
        if len > 0 {
            num[0] = c.numer().clone();
        }
        QSeries {
            exp_den: 1,
            lead_exp: 0,
            trunc: len as i64,
            num,
            den: c.denom().clone(),
        }
        .normalize()
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(BigRational::one(), prec)
    }

    /// `c·q^exp`, exact below `q^prec`.
    pub fn monomial(c: BigRational, exp: Exponent, prec: Exponent) -> Self {
        let exp_den = exp.denom().lcm(prec.denom()) as u32;
        let lead = (exp * exp_den as i64).to_integer();
        let trunc = (prec * exp_den as i64).to_integer();
        if trunc <= lead {
            return QSeries::zero(exp_den, trunc);
        }
        let mut num = vec![BigInt::zero(); (trunc - lead) as usize];
        num[0] = c.numer().clone();
        QSeries {
            exp_den,
            lead_exp: lead,
            trunc,
            num,
            den: c.denom().clone(),
        }
        .normalize()
    }

    /// Builds a series from integer coefficients of `q^{(lead_exp+i)/exp_den}`;
    /// the truncation sits right after the last given coefficient.
    pub fn from_integers(exp_den: u32, lead_exp: i64, coeffs: Vec<BigInt>) -> Self {
        Self::from_parts(exp_den, lead_exp, coeffs, BigInt::one())
    }

    /// Builds a series from rational coefficients of `q^{(lead_exp+i)/exp_den}`.
    pub fn from_coeffs(exp_den: u32, lead_exp: i64, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(exp_den, lead_exp, num, den)
    }

    pub(crate) fn from_parts(exp_den: u32, lead_exp: i64, num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(exp_den > 0, "exponent grid denominator must be positive");
        assert!(!den.is_zero(), "zero denominator");
        let trunc = lead_exp + num.len() as i64;
        QSeries {
            exp_den,
            lead_exp,
            trunc,
            num,
            den,
        }
        .normalize()
    }

    /// Restores the representation invariants: leading stored coefficient
    /// nonzero, positive denominator, numerators and denominator coprime.
    fn normalize(mut self) -> Self {
        match self.num.iter().position(|c| !c.is_zero()) {
            None => {
                self.lead_exp = self.trunc;
                self.num.clear();
                self.den = BigInt::one();
                return self;
            }
            Some(p) if p > 0 => {
                self.num.drain(..p);
                self.lead_exp += p as i64;
            }
            Some(_) => {}
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if !self.den.is_one() {
            let mut g = self.den.clone();
            for c in &self.num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in &mut self.num {
                    if !c.is_zero() {
                        *c = &*c / &g;
                    }
                }
                self.den = &self.den / &g;
            }
        }
        self
    }

    pub fn exp_den(&self) -> u32 {
        self.exp_den
    }

    /// Numerator of the lowest exponent present (equals `trunc` for the zero series).
    pub fn lead_exp(&self) -> i64 {
        self.lead_exp
    }

    /// Numerator of the first exponent whose coefficient is not known.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn lead_exponent(&self) -> Exponent {
        Exponent::new(self.lead_exp, self.exp_den as i64)
    }

    pub fn trunc_exponent(&self) -> Exponent {
        Exponent::new(self.trunc, self.exp_den as i64)
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Number of stored coefficients (`trunc - lead_exp`).
    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn lead_coeff(&self) -> Option<BigRational> {
        self.num
            .first()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
    }

    /// Coefficient of the `i`-th stored slot, i.e. of `q^{(lead_exp+i)/exp_den}`.
    pub fn coeff_at_index(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    /// All stored coefficients in exponent order.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff_at_index(i)).collect()
    }

    /// Coefficient of `q^exp`; `None` when `exp` is at or past the truncation.
    pub fn coeff(&self, exp: Exponent) -> Option<BigRational> {
        if exp >= self.trunc_exponent() {
            return None;
        }
        let scaled = exp * self.exp_den as i64;
        if !scaled.is_integer() || scaled.to_integer() < self.lead_exp {
            return Some(BigRational::zero());
        }
        Some(self.coeff_at_index((scaled.to_integer() - self.lead_exp) as usize))
    }

    /// Coefficient of `q^n` for integral `n`.
    pub fn coeff_int(&self, n: i64) -> Option<BigRational> {
        self.coeff(Exponent::from_integer(n))
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, BigRational)> + '_ {
        self.num.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| {
            (
                Exponent::new(self.lead_exp + i as i64, self.exp_den as i64),
                BigRational::new(c.clone(), self.den.clone()),
            )
        })
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Coefficients of `q^{lead + m}` for `m = 0, 1, …` while known: the
    /// Fourier coefficients along the coset of the leading exponent.
    pub fn coset_coeffs(&self) -> Vec<BigRational> {
        let step = self.exp_den as usize;
        (0..self.num.len()).step_by(step).map(|i| self.coeff_at_index(i)).collect()
    }

    /// True when some nonzero coefficient sits off `lead + Z`.
    pub fn has_off_coset_terms(&self) -> bool {
        let step = self.exp_den as usize;
        self.num.iter().enumerate().any(|(i, c)| i % step != 0 && !c.is_zero())
    }

    /// Re-expresses the series on the finer grid `(1/m)·Z`.
    pub fn on_grid(&self, m: u32) -> Result<QSeries> {
        if m == 0 || m % self.exp_den != 0 {
            return Err(Error::IncompatibleGrid {
                from: self.exp_den,
                to: m,
            });
        }
        Ok(self.refine(m / self.exp_den))
    }

    fn refine(&self, factor: u32) -> QSeries {
        if factor == 1 {
            return self.clone();
        }
        let f = factor as usize;
        let mut num = vec![BigInt::zero(); self.num.len() * f];
        for (i, c) in self.num.iter().enumerate() {
            num[i * f] = c.clone();
        }
        QSeries {
            exp_den: self.exp_den * factor,
            lead_exp: self.lead_exp * factor as i64,
            trunc: self.trunc * factor as i64,
            num,
            den: self.den.clone(),
        }
    }

    /// Drops redundant grid resolution: the coarsest grid that still carries
    /// every stored exponent and the truncation.
    pub fn coarsened(&self) -> QSeries {
        let mut g = (self.exp_den as i64).gcd(&self.lead_exp).gcd(&self.trunc);
        for (i, c) in self.num.iter().enumerate() {
            if g == 1 {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(&(i as i64));
            }
        }
        if g <= 1 {
            return self.clone();
        }
        let step = g as usize;
        QSeries {
            exp_den: self.exp_den / g as u32,
            lead_exp: self.lead_exp / g,
            trunc: self.trunc / g,
            num: self.num.iter().step_by(step).cloned().collect(),
            den: self.den.clone(),
        }
    }

    /// Lowers the truncation to `q^prec` (never raises it).
    pub fn truncated(&self, prec: Exponent) -> QSeries {
        let scaled = prec * self.exp_den as i64;
        let t = scaled.ceil().to_integer().min(self.trunc);
        if t <= self.lead_exp {
            return QSeries::zero(self.exp_den, t);
        }
        let mut out = self.clone();
        out.num.truncate((t - self.lead_exp) as usize);
        out.trunc = t;
        out.normalize()
    }

    /// `f(m·τ)`: every exponent multiplied by `m`.
    pub fn dilate(&self, m: u32) -> QSeries {
        assert!(m > 0, "dilation factor must be positive");
        let f = m as usize;
        let mut num = vec![BigInt::zero(); self.num.len() * f];
        for (i, c) in self.num.iter().enumerate() {
            num[i * f] = c.clone();
        }
        QSeries {
            exp_den: self.exp_den,
            lead_exp: self.lead_exp * m as i64,
            trunc: self.trunc * m as i64,
            num,
            den: self.den.clone(),
        }
    }

    /// Multiplication by the exact monomial `q^e`.
    pub fn shift(&self, e: Exponent) -> QSeries {
        let m = (self.exp_den as i64).lcm(e.denom()) as u32;
        let mut out = self.refine(m / self.exp_den);
        let d = (e * m as i64).to_integer();
        out.lead_exp += d;
        out.trunc += d;
        out
    }

    /// Rescales so the leading coefficient is 1; the zero series is returned as is.
    pub fn monic(&self) -> QSeries {
        match self.lead_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// First exponent below both truncations where the two series differ.
    pub fn first_difference(&self, other: &QSeries) -> Option<Exponent> {
        let (a, b) = align(self, other);
        let lo = a.lead_exp.min(b.lead_exp);
        let hi = a.trunc.min(b.trunc);
        (lo..hi)
            .find(|&e| {
                let x = a.scaled_num(e);
                let y = b.scaled_num(e);
                // compare x/da with y/db
                x * &b.den != y * &a.den
            })
            .map(|e| Exponent::new(e, a.exp_den as i64))
    }

    /// True when the series agree on every exponent known to both.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_difference(other).is_none()
    }

    /// Numerator at grid exponent `e` (zero outside the stored range).
    fn scaled_num(&self, e: i64) -> BigInt {
        if e < self.lead_exp || e >= self.trunc {
            BigInt::zero()
        } else {
            self.num[(e - self.lead_exp) as usize].clone()
        }
    }

    /// Largest absolute numerator; handy for diagnostics.
    pub fn max_bits(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Exponent `exp` lowered to an `i64` grid numerator, if it is on the grid.
    pub fn grid_index(&self, exp: Exponent) -> Option<i64> {
        let s = exp * self.exp_den as i64;
        s.is_integer().then(|| s.to_integer())
    }
}

/// Brings two series onto their common grid, borrowing when already aligned.
pub(crate) fn align<'a>(a: &'a QSeries, b: &'a QSeries) -> (Cow<'a, QSeries>, Cow<'a, QSeries>) {
    if a.exp_den == b.exp_den {
        return (Cow::Borrowed(a), Cow::Borrowed(b));
    }
    let m = a.exp_den.lcm(&b.exp_den);
    (
        Cow::Owned(a.refine(m / a.exp_den)),
        Cow::Owned(b.refine(m / b.exp_den)),
    )
}

impl PartialEq for QSeries {
    /// Equal when both carry the same truncation and the same coefficients,
    /// regardless of the grid each one is stored on.
    fn eq(&self, other: &Self) -> bool {
        self.trunc_exponent() == other.trunc_exponent()
            && self.lead_exponent() == other.lead_exponent()
            && self.agrees_with(other)
    }
}

impl Eq for QSeries {}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !mag.is_one() || e.is_zero();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if !e.is_zero() {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else if e.is_integer() {
                    write!(f, "q^{e}")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        let t = self.trunc_exponent();
        if t.is_integer() {
            write!(f, " + O(q^{t})")
        } else {
            write!(f, " + O(q^({t}))")
        }
    }
}

/// Converts a q-unit precision to a grid numerator, rounding up.
pub fn prec_to_trunc(prec: Exponent, exp_den: u32) -> i64 {
    (prec * exp_den as i64).ceil().to_integer()
}

/// Whole-`q` precision needed so that a factor starting at `q^0` does not
/// limit a product with `f`.
pub(crate) fn companion_prec(f: &QSeries) -> i64 {
    let rel = Exponent::new(f.trunc - f.lead_exp, f.exp_den as i64);
    rel.ceil().to_integer().max(0) + 1
}
