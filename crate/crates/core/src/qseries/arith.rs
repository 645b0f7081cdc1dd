//! Ring operations, inversion, powers and the `q·d/dq` derivative.
//!
//! Every operation reports the tightest truncation its operands justify:
//! sums keep the smaller truncation, a product `a·b` is known below
//! `min(trunc_a + lead_b, trunc_b + lead_a)`, and an inverse keeps the
//! relative precision of its argument.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{align, QSeries};
use crate::error::{Error, Result};

impl QSeries {
    pub fn add(&self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &QSeries, negate: bool) -> QSeries {
        let (a, b) = align(self, rhs);
        let trunc = a.trunc.min(b.trunc);
        let lead = a.lead_exp.min(b.lead_exp).min(trunc);
        let den = a.den.lcm(&b.den);
        let fa = &den / &a.den;
        let fb = &den / &b.den;
        let len = (trunc - lead) as usize;
        let mut num = vec![BigInt::zero(); len];
        for (k, slot) in num.iter_mut().enumerate() {
            let e = lead + k as i64;
            if e >= a.lead_exp {
                let x = &a.num[(e - a.lead_exp) as usize];
                if !x.is_zero() {
                    *slot += x * &fa;
                }
            }
            if e >= b.lead_exp {
                let y = &b.num[(e - b.lead_exp) as usize];
                if !y.is_zero() {
                    if negate {
                        *slot -= y * &fb;
                    } else {
                        *slot += y * &fb;
                    }
                }
            }
        }
        QSeries {
            exp_den: a.exp_den,
            lead_exp: lead,
            trunc,
            num,
            den,
        }
        .normalize()
    }

    pub fn neg(&self) -> QSeries {
        let mut out = self.clone();
        for c in &mut out.num {
            *c = -std::mem::take(c);
        }
        out
    }

    /// `c·a`; scaling by zero gives the zero series with the same truncation.
    pub fn scale(&self, c: &BigRational) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.exp_den, self.trunc);
        }
        let n = c.numer();
        let num = self.num.iter().map(|x| x * n).collect();
        QSeries {
            exp_den: self.exp_den,
            lead_exp: self.lead_exp,
            trunc: self.trunc,
            num,
            den: &self.den * c.denom(),
        }
        .normalize()
    }

    pub fn scale_int(&self, c: i64) -> QSeries {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Cauchy product. Runs over the nonzero entries only, so sparse series
    /// (dilated forms, theta series, coarse series promoted to a fine grid)
    /// multiply at the cost of their support.
    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        let (a, b) = align(self, rhs);
        let lead = a.lead_exp + b.lead_exp;
        let trunc = (a.trunc + b.lead_exp).min(b.trunc + a.lead_exp);
        let len = (trunc - lead) as usize;
        let mut num = vec![BigInt::zero(); len];
        let nz_b: Vec<usize> = (0..b.num.len().min(len)).filter(|&j| !b.num[j].is_zero()).collect();
        for (i, x) in a.num.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for &j in &nz_b {
                if i + j >= len {
                    break;
                }
                num[i + j] += x * &b.num[j];
            }
        }
        QSeries {
            exp_den: a.exp_den,
            lead_exp: lead,
            trunc,
            num,
            den: &a.den * &b.den,
        }
        .normalize()
    }

    pub fn square(&self) -> QSeries {
        self.mul(self)
    }

    /// Multiplicative inverse. The result starts at `q^{-lead}` and keeps the
    /// relative precision `trunc - lead` of the input.
    pub fn inv(&self) -> Result<QSeries> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let n = self.num.len();
        let a = &self.num;
        let a0 = &a[0];
        let nz: Vec<usize> = (1..n).filter(|&i| !a[i].is_zero()).collect();
        let lead = -self.lead_exp;
        if a0.abs().is_one() {
            // 1/a0 = a0 when a0 = ±1, so the recurrence stays integral.
            let mut b: Vec<BigInt> = Vec::with_capacity(n);
            b.push(a0.clone());
            for m in 1..n {
                let mut s = BigInt::zero();
                for &i in &nz {
                    if i > m {
                        break;
                    }
                    s += &a[i] * &b[m - i];
                }
                b.push(-(a0 * s));
            }
            let num = b.into_iter().map(|x| x * &self.den).collect();
            return Ok(QSeries::from_parts(self.exp_den, lead, num, BigInt::one()));
        }
        // b_m = c_m / a0^{m+1} with c_0 = 1, c_m = -Σ a_i c_{m-i} a0^{i-1}.
        let mut pow = Vec::with_capacity(n + 1);
        pow.push(BigInt::one());
        for i in 1..=n {
            let next = &pow[i - 1] * a0;
            pow.push(next);
        }
        let mut c: Vec<BigInt> = Vec::with_capacity(n);
        c.push(BigInt::one());
        for m in 1..n {
            let mut s = BigInt::zero();
            for &i in &nz {
                if i > m {
                    break;
                }
                s += &a[i] * &c[m - i] * &pow[i - 1];
            }
            c.push(-s);
        }
        // common denominator a0^n
        let num = c
            .into_iter()
            .enumerate()
            .map(|(m, cm)| cm * &pow[n - 1 - m] * &self.den)
            .collect();
        Ok(QSeries::from_parts(self.exp_den, lead, num, pow[n].clone()))
    }

    /// `self / rhs`, computed as `self · rhs⁻¹`.
    pub fn div(&self, rhs: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Integer power by binary powering; negative exponents go through [`QSeries::inv`].
    pub fn pow_int(&self, e: i64) -> Result<QSeries> {
        if e == 0 {
            let rel = self.trunc - self.lead_exp;
            return Ok(QSeries {
                exp_den: self.exp_den,
                lead_exp: 0,
                trunc: rel,
                num: {
                    let mut v = vec![BigInt::zero(); rel.max(0) as usize];
                    if let Some(first) = v.first_mut() {
                        *first = BigInt::one();
                    }
                    v
                },
                den: BigInt::one(),
            }
            .normalize());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc: Option<QSeries> = None;
        let mut sq = base;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(x) => x.mul(&sq),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            sq = sq.square();
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// The derivative `q·d/dq`: the coefficient of `q^{m/N}` is multiplied by `m/N`.
    pub fn theta_deriv(&self) -> QSeries {
        let num = self
            .num
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(self.lead_exp + i as i64))
            .collect();
        QSeries {
            exp_den: self.exp_den,
            lead_exp: self.lead_exp,
            trunc: self.trunc,
            num,
            den: &self.den * BigInt::from(self.exp_den),
        }
        .normalize()
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &'a QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &'a QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &'a QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}
