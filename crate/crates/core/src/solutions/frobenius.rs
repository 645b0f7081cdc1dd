//! Power-series solutions straight from the recurrence of the equation, and
//! the `Δ^β` twist between `L_k f + α·E4·f = 0` and `L_{k+12β} g = 0`.
//!
//! Substituting `f = Σ c_m q^{ρ+m}` and `E2 = 1 − 24Σσ(j)q^j` gives
//!
//! `c_m·(ρ+m)(ρ+m − (k+1)/6) = −Σ_{j=1}^{m} c_{m−j}·σ(j)·(4(k+1)(ρ+m−j) − 2k(k+1)j)`
//!
//! with indicial roots `ρ ∈ {0, (k+1)/6}`.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use super::{Family, ResidueClass};
use crate::error::{Error, Result};
use crate::forms::{divisor_table, eta_expand, DivisorKind, EtaSpec};
use crate::operators::kz_alpha_apply;
use crate::qseries::{big, int, Exponent, QSeries, Weight};

/// Which indicial root the solution starts at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `ρ = 0`
    Zero,
    /// `ρ = (k+1)/6`
    Cusp,
}

/// `(0, (k+1)/6)`.
pub fn indicial_roots(k: Weight) -> (Exponent, Exponent) {
    (Exponent::zero(), (k.value() + 1) / 6)
}

/// The solution `q^ρ + …` on the chosen branch, exact below `q^prec`.
pub fn frobenius_solve(k: Weight, branch: Branch, prec: i64) -> Result<QSeries> {
    let (r0, r1) = indicial_roots(k);
    if r0 == r1 {
        return Err(Error::IndicialDegenerate(k.to_string()));
    }
    let (rho, other) = match branch {
        Branch::Zero => (r0, r1),
        Branch::Cusp => (r1, r0),
    };
    let gap = other - rho;
    if gap.is_integer() && gap > Exponent::zero() {
        return Err(Error::Resonant(k.to_string()));
    }
    let grid = *rho.denom();
    let lead = *rho.numer();
    let trunc = prec * grid;
    if trunc <= lead {
        return Ok(QSeries::zero(grid as u32, trunc));
    }
    // number of coset terms c_0 … c_{len-1}
    let len = ((trunc - lead) as usize).div_ceil(grid as usize);
    let sigma = divisor_table(len, DivisorKind::Sigma(1));
    let kk = k.to_big();
    let k1 = &kk + int(1);
    let rho_b = big(rho);
    let cusp = big(r1);
    let c1 = int(4) * &k1;
    let c2 = int(2) * &kk * &k1;
    let mut c: Vec<BigRational> = Vec::with_capacity(len);
    c.push(BigRational::one());
    for m in 1..len {
        let rm = &rho_b + int(m as i64);
        let d = &rm * (&rm - &cusp);
        let mut s = BigRational::zero();
        for j in 1..=m {
            if c[m - j].is_zero() {
                continue;
            }
            let w = &c1 * (&rm - int(j as i64)) - &c2 * int(j as i64);
            s += &c[m - j] * w * BigRational::from_integer(sigma[j].clone());
        }
        c.push(-s / d);
    }
    let mut coeffs = vec![BigRational::zero(); (trunc - lead) as usize];
    for (m, v) in c.into_iter().enumerate() {
        coeffs[m * grid as usize] = v;
    }
    Ok(QSeries::from_coeffs(grid as u32, lead, &coeffs))
}

/// `f·Δ^{−β}` realized as `f·η^{−24β}`; `β` must lie on `(1/24)·Z`.
fn delta_power(beta: Rational64, prec: i64) -> Result<QSeries> {
    let e = beta * 24;
    if !e.is_integer() {
        return Err(Error::UnsupportedBeta(beta.to_string()));
    }
    Ok(eta_expand(&EtaSpec::new(&[(1, e.to_integer())]), prec))
}

/// Every known solution of weight `k`: the closed-form families that apply,
/// then each admissible power-series branch.
fn known_solutions(k: Weight, prec: i64) -> Result<Vec<(Family, QSeries)>> {
    let mut out = Vec::new();
    let class = super::classify_weight(k).ok();
    let families: &[Family] = match class {
        Some(ResidueClass::Lvl1) => &[Family::Normalized],
        Some(ResidueClass::Lvl2 | ResidueClass::Lvl3 | ResidueClass::Lvl4) => &[Family::Normalized, Family::Cuspidal],
        Some(ResidueClass::Quasi) => &[Family::Quasi],
        _ => &[],
    };
    for &f in families {
        out.push((f, f.build(k, prec)?));
    }
    for (f, b) in [(Family::FrobeniusZero, Branch::Zero), (Family::FrobeniusCusp, Branch::Cusp)] {
        match frobenius_solve(k, b, prec) {
            Ok(s) => out.push((f, s)),
            Err(Error::Resonant(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Residual of `L_k f + α·E4·f` for `α = −β² − (k+1)β/6`.
pub fn twist_residual(f: &QSeries, k: Weight, beta: Rational64) -> crate::operators::OperatorResidual {
    let b = big(beta);
    let alpha = -(&b * &b) - (k.to_big() + int(1)) * &b / int(6);
    kz_alpha_apply(f, k, &alpha)
}

/// For every known solution `g` of weight `k' = k + 12β`, checks that
/// `f = g·Δ^{−β}` solves `L_k f + α·E4·f = 0` below `q^prec`, where
/// `α = −β² − (k+1)β/6`.
pub fn verify_delta_twist(k: Weight, beta: Rational64, prec: i64) -> Result<bool> {
    let shift = beta.ceil().to_integer().max(0);
    let p = prec + shift + 1;
    let twist = delta_power(-beta, p + shift + 1)?;
    let k_prime = Weight::new(k.value() + beta * 12)?;
    let sols = known_solutions(k_prime, p)?;
    let through = Exponent::from_integer(prec);
    Ok(!sols.is_empty()
        && sols.iter().all(|(_, g)| {
            let f = g.mul(&twist);
            twist_residual(&f, k, beta).vanishes_through(through)
        }))
}

/// Integer helper kept next to the recurrence for tests.
#[allow(dead_code)]
fn sigma_big(n: usize) -> BigInt {
    divisor_table(n + 1, DivisorKind::Sigma(1))[n].clone()
}
