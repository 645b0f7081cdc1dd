//! Eta quotients `∏ η(mτ)^{e_m}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::qseries::{Exponent, QSeries};

/// A formal eta quotient: multiplier `m` ↦ exponent `e_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EtaSpec {
    pub factors: BTreeMap<u32, i64>,
}

impl EtaSpec {
    pub fn new(factors: &[(u32, i64)]) -> Self {
        let mut map = BTreeMap::new();
        for &(m, e) in factors {
            assert!(m > 0, "eta multiplier must be positive");
            *map.entry(m).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        EtaSpec { factors: map }
    }

    /// `(Σ m·e_m)/24`.
    pub fn lead_exponent(&self) -> Exponent {
        let s: i64 = self.factors.iter().map(|(&m, &e)| m as i64 * e).sum();
        Exponent::new(s, 24)
    }

    /// Exponent `c_n` of `(1 - q^n)` in the product part: `Σ_{m|n} e_m`.
    fn product_exponent(&self, n: u64) -> i64 {
        self.factors
            .iter()
            .filter(|(&m, _)| n % m as u64 == 0)
            .map(|(_, &e)| e)
            .sum()
    }
}

/// Exact expansion of an eta quotient, known below `q^prec`.
///
/// The product `∏ (1 - q^n)^{c_n}` is expanded through the logarithmic
/// derivative recurrence `n f_n = -Σ_{k=1}^{n} b_k f_{n-k}` with
/// `b_k = Σ_{d|k} d·c_d`; every `f_n` is an integer.
pub fn eta_expand(spec: &EtaSpec, prec: i64) -> QSeries {
    let lead = spec.lead_exponent();
    let grid = *lead.denom() as u32;
    let lead_num = *lead.numer();
    let trunc = prec * grid as i64;
    if trunc <= lead_num {
        return QSeries::zero(grid, trunc);
    }
    // integer exponents j with lead + j < prec
    let terms = ((trunc - lead_num) as usize).div_ceil(grid as usize);
    let c: Vec<i64> = (0..terms as u64).map(|n| if n == 0 { 0 } else { spec.product_exponent(n) }).collect();
    let mut b = vec![BigInt::zero(); terms];
    for d in 1..terms {
        if c[d] == 0 {
            continue;
        }
        let w = BigInt::from(d as i64 * c[d]);
        let mut k = d;
        while k < terms {
            b[k] += &w;
            k += d;
        }
    }
    let nz: Vec<usize> = (1..terms).filter(|&k| !b[k].is_zero()).collect();
    let mut f: Vec<BigInt> = Vec::with_capacity(terms);
    f.push(BigInt::from(1));
    for n in 1..terms {
        let mut s = BigInt::zero();
        for &k in &nz {
            if k > n {
                break;
            }
            s += &b[k] * &f[n - k];
        }
        let (q, r) = (-s).div_rem(&BigInt::from(n as i64));
        debug_assert!(r.is_zero(), "eta recurrence must stay integral");
        f.push(q);
    }
    let len = (trunc - lead_num) as usize;
    let mut num = vec![BigInt::zero(); len];
    for (j, v) in f.into_iter().enumerate() {
        let idx = j * grid as usize;
        if idx < len {
            num[idx] = v;
        }
    }
    QSeries::from_integers(grid, lead_num, num)
}

/// `η(τ)` via Euler's pentagonal number theorem:
/// `Σ_{k∈Z} (-1)^k q^{(6k-1)^2/24}`. Independent of [`eta_expand`].
pub fn eta_pentagonal(prec: i64) -> QSeries {
    let trunc = 24 * prec;
    if trunc <= 1 {
        return QSeries::zero(24, trunc);
    }
    let mut num = vec![BigInt::zero(); (trunc - 1) as usize];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in [k, -k] {
            let e = (6 * kk - 1) * (6 * kk - 1);
            if e < trunc {
                any = true;
                let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                num[(e - 1) as usize] = BigInt::from(sign);
            }
            if k == 0 {
                break;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    QSeries::from_integers(24, 1, num)
}
