//! Moving between solutions of weights `k − 6`, `k`, `k + 6`.
//!
//! Descent: `F_{k−6} = (k−5)/(288k(k−4)) · [F_k, E4]/Δ`.
//! Ascent: `F_{k+6i+6} = E6·F_{k+6i} + μ_i·Δ·F_{k+6i−6}` with
//! `μ_i = 432(k+6i)(k+6i−4)/((k+6i+1)(k+6i−5))`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{catalog, FormId};
use crate::operators::{kz_apply, rc_bracket, OperatorResidual};
use crate::qseries::{companion_prec, int, rat, Exponent, QSeries, Weight};

/// `μ_i^{(k)}`; `MuUndefined` when `(k+6i+1)(k+6i−5) = 0`.
pub fn mu(k: Weight, i: u32) -> Result<BigRational> {
    let w = k.offset(6 * i as i64);
    let x = w.to_big();
    let den = (&x + int(1)) * (&x - int(5));
    if den.is_zero() {
        return Err(Error::MuUndefined(w.to_string()));
    }
    Ok(int(432) * &x * (&x - int(4)) / den)
}

fn is_forbidden(k: Weight) -> bool {
    [0, 4, 5].iter().any(|&b| k == Weight::int(b))
}

/// `Δ` to a precision that never limits a product or quotient with `f`.
fn delta_for(f: &QSeries) -> QSeries {
    catalog(FormId::Delta, companion_prec(f) + 1)
}

/// The normalized solution of weight `k − 6` obtained from a solution `f` of weight `k`.
///
/// The result loses one order of `q` against `f`. A quotient whose leading
/// exponent lies below both admissible leading exponents of weight `k − 6`
/// (`0` and `(k−5)/6`) cannot be a solution and is reported as `NotDivisible`.
pub fn descend(f: &QSeries, k: Weight) -> Result<QSeries> {
    if is_forbidden(k) {
        return Err(Error::ForbiddenWeight(k.to_string()));
    }
    let kk = k.to_big();
    let e4 = catalog(FormId::E4, companion_prec(f));
    let br = rc_bracket(f, k, &e4, Weight::int(4));
    if br.is_zero() {
        return Ok(QSeries::zero(br.exp_den(), br.trunc() - br.exp_den() as i64));
    }
    let q = br.div(&delta_for(&br))?;
    let c = (&kk - int(5)) / (int(288) * &kk * (&kk - int(4)));
    let out = q.scale(&c);
    let floor = ((k.value() - 5) / 6).min(Exponent::zero());
    if !out.is_zero() && out.lead_exponent() < floor {
        return Err(Error::NotDivisible {
            exponent: out.lead_exponent().to_string(),
        });
    }
    Ok(out)
}

/// A run of the ascent recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderState {
    pub base: Weight,
    /// `(k + 6i, F_{k+6i})` for `i = 0..=steps`.
    pub rungs: Vec<(Weight, QSeries)>,
    /// `μ_i` used to build rung `i + 1`.
    pub mus: Vec<BigRational>,
}

impl LadderState {
    pub fn top(&self) -> &QSeries {
        &self.rungs.last().expect("a ladder always holds its seed").1
    }

    /// Residual of every rung against its own weight.
    pub fn residuals(&self) -> Vec<OperatorResidual> {
        self.rungs.iter().map(|(w, f)| kz_apply(f, *w)).collect()
    }

    /// True when every rung solves its equation wherever it is known.
    pub fn verify(&self) -> bool {
        self.residuals().iter().all(OperatorResidual::vanishes)
    }
}

/// Ascends `steps` rungs from the seed pair `(F_k, F_{k−6})` with `μ_i^{(k)}`.
pub fn ascend_ladder(k: Weight, f_k: &QSeries, f_km6: &QSeries, steps: u32) -> Result<LadderState> {
    let mu0 = mu(k, 0)?;
    ascend_ladder_with_mu0(k, f_k, f_km6, mu0, steps)
}

/// As [`ascend_ladder`] with `μ_0` supplied by the caller; the later constants
/// still come from the formula. This covers seeds such as `k = 5`, where the
/// formula for `μ_0` is undefined but `F_{−1} = 1`, `μ_0 = −1` is consistent.
pub fn ascend_ladder_with_mu0(
    k: Weight,
    f_k: &QSeries,
    f_km6: &QSeries,
    mu0: BigRational,
    steps: u32,
) -> Result<LadderState> {
    check_seed(k, f_k, f_km6, &mu0)?;
    let mut mus = Vec::with_capacity(steps as usize);
    for i in 0..steps {
        mus.push(if i == 0 { mu0.clone() } else { mu(k, i)? });
    }
    let mut rungs = vec![(k, f_k.clone())];
    let mut prev = f_km6.clone();
    for (i, m) in mus.iter().enumerate() {
        let cur = &rungs[i].1;
        let e6 = catalog(FormId::E6, companion_prec(cur));
        let next = e6.mul(cur).add(&delta_for(&prev).mul(&prev).scale(m));
        let w = k.offset(6 * (i as i64 + 1));
        prev = cur.clone();
        rungs.push((w, next));
    }
    Ok(LadderState { base: k, rungs, mus })
}

/// `[F_k, E4] = (2/3)(k+1)·Δ·μ_0·F_{k−6}` on the range both sides are known.
fn check_seed(k: Weight, f_k: &QSeries, f_km6: &QSeries, mu0: &BigRational) -> Result<()> {
    let e4 = catalog(FormId::E4, companion_prec(f_k));
    let lhs = rc_bracket(f_k, k, &e4, Weight::int(4));
    let c = rat(2, 3) * (k.to_big() + int(1)) * mu0;
    let rhs = delta_for(f_km6).mul(f_km6).scale(&c);
    match lhs.first_difference(&rhs) {
        None => Ok(()),
        Some(e) => Err(Error::SeedInconsistent { exponent: e.to_string() }),
    }
}

/// Rebuilds `F_k` from its two descents: `E6·F_{k−6} + μ_0^{(k−6)}·Δ·F_{k−12}`.
///
/// At `k − 6 ∈ {0, 4}` the lower rung is `0`; at `k − 6 = 5` it is `F_{−1} = 1`
/// with `μ_0 = −1`. The result loses at most two orders of `q` against `f`.
pub fn reascend(f: &QSeries, k: Weight) -> Result<QSeries> {
    let lower = k.offset(-6);
    let f6 = descend(f, k)?;
    let (f12, m) = if lower == Weight::int(0) || lower == Weight::int(4) {
        (QSeries::zero(1, f6.trunc_exponent().ceil().to_integer() + 1), int(0))
    } else if lower == Weight::int(5) {
        (QSeries::one(companion_prec(&f6) + 1), int(-1))
    } else {
        (descend(&f6, lower)?, mu(lower, 0)?)
    };
    let e6 = catalog(FormId::E6, companion_prec(&f6));
    Ok(e6.mul(&f6).add(&delta_for(&f12).mul(&f12).scale(&m)))
}
