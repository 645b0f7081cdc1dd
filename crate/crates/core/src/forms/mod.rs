//! Named q-expansions: Eisenstein series of levels 1–4, eta quotients, theta
//! series and hauptmoduls.
//!
//! Every entry is built from the recipe that defines it (divisor sums for
//! Eisenstein-type series, eta products for the root forms, quotients for the
//! hauptmoduls). Where a second recipe exists, [`alternate_recipe`] builds it
//! so the two can be compared.

mod divisor;
mod eta;
mod theta;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;

pub use divisor::{divisor_sum, divisor_table, legendre3, sigma1, DivisorKind};
pub use eta::{eta_expand, eta_pentagonal, EtaSpec};
pub use theta::{theta_series, ThetaKind};

use crate::error::Error;
use crate::qseries::{int, rat, Exponent, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormId {
    E2,
    E4,
    E6,
    Delta,
    J,
    Eta,
    E2_2,
    Delta4_2,
    J2,
    SqrtDelta4_2,
    E1_3,
    Delta3_3,
    J3,
    CbrtDelta3_3,
    E2_4,
    Delta2_4,
    J4,
    Theta3TwoTau,
    HalfTheta2TwoTau,
}

/// Descriptive labels; nothing here is verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormMeta {
    pub weight: Rational64,
    pub group: &'static str,
    pub character: &'static str,
}

impl FormId {
    pub const ALL: [FormId; 19] = [
        FormId::E2,
        FormId::E4,
        FormId::E6,
        FormId::Delta,
        FormId::J,
        FormId::Eta,
        FormId::E2_2,
        FormId::Delta4_2,
        FormId::J2,
        FormId::SqrtDelta4_2,
        FormId::E1_3,
        FormId::Delta3_3,
        FormId::J3,
        FormId::CbrtDelta3_3,
        FormId::E2_4,
        FormId::Delta2_4,
        FormId::J4,
        FormId::Theta3TwoTau,
        FormId::HalfTheta2TwoTau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormId::E2 => "E2",
            FormId::E4 => "E4",
            FormId::E6 => "E6",
            FormId::Delta => "Delta",
            FormId::J => "j",
            FormId::Eta => "eta",
            FormId::E2_2 => "E2_2",
            FormId::Delta4_2 => "Delta4_2",
            FormId::J2 => "j_2",
            FormId::SqrtDelta4_2 => "sqrtDelta4_2",
            FormId::E1_3 => "E1_3",
            FormId::Delta3_3 => "Delta3_3",
            FormId::J3 => "j_3",
            FormId::CbrtDelta3_3 => "cbrtDelta3_3",
            FormId::E2_4 => "E2_4",
            FormId::Delta2_4 => "Delta2_4",
            FormId::J4 => "j_4",
            FormId::Theta3TwoTau => "theta3_2tau",
            FormId::HalfTheta2TwoTau => "halftheta2_2tau",
        }
    }

    pub fn meta(self) -> FormMeta {
        let m = |w: Rational64, group, character| FormMeta {
            weight: w,
            group,
            character,
        };
        let i = Rational64::from_integer;
        let half = Rational64::new(1, 2);
        match self {
            FormId::E2 => m(i(2), "SL2(Z) (quasimodular)", "trivial"),
            FormId::E4 => m(i(4), "SL2(Z)", "trivial"),
            FormId::E6 => m(i(6), "SL2(Z)", "trivial"),
            FormId::Delta => m(i(12), "SL2(Z)", "trivial"),
            FormId::J => m(i(0), "SL2(Z)", "trivial"),
            FormId::Eta => m(half, "SL2(Z)", "eta multiplier"),
            FormId::E2_2 => m(i(2), "Gamma0(2)", "trivial"),
            FormId::Delta4_2 => m(i(4), "Gamma0(2)", "trivial"),
            FormId::J2 => m(i(0), "Gamma0(2)", "trivial"),
            FormId::SqrtDelta4_2 => m(i(2), "Gamma(2)", "trivial"),
            FormId::E1_3 => m(i(1), "Gamma0(3)", "(d/3)"),
            FormId::Delta3_3 => m(i(3), "Gamma0(3)", "(d/3)"),
            FormId::J3 => m(i(0), "Gamma0(3)", "trivial"),
            FormId::CbrtDelta3_3 => m(i(1), "Gamma0^0(3)", "(d/3)"),
            FormId::E2_4 => m(i(2), "Gamma0(4)", "trivial"),
            FormId::Delta2_4 => m(i(2), "Gamma0(4)", "trivial"),
            FormId::J4 => m(i(0), "Gamma0(4)", "trivial"),
            FormId::Theta3TwoTau => m(half, "Gamma0(4)", "theta multiplier"),
            FormId::HalfTheta2TwoTau => m(half, "Gamma0^0(4)", "theta multiplier"),
        }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FormId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown form id {s:?}")))
    }
}

type Cache = Mutex<HashMap<FormId, BTreeMap<i64, QSeries>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The expansion of `id`, exact for every exponent below `q^prec`.
///
/// Results are memoized per process; a request is served from any cached
/// expansion of at least the same precision, truncated, so the answer never
/// depends on request order.
pub fn catalog(id: FormId, prec: i64) -> QSeries {
    let prec = prec.max(0);
    if let Some(hit) = lookup(id, prec) {
        return hit;
    }
    let s = build(id, prec).truncated(Exponent::from_integer(prec));
    cache()
        .lock()
        .expect("catalog cache poisoned")
        .entry(id)
        .or_default()
        .insert(prec, s.clone());
    s
}

fn lookup(id: FormId, prec: i64) -> Option<QSeries> {
    let guard = cache().lock().expect("catalog cache poisoned");
    let (&p, s) = guard.get(&id)?.range(prec..).next()?;
    Some(if p == prec {
        s.clone()
    } else {
        s.truncated(Exponent::from_integer(prec))
    })
}

/// `c_0 + scale·Σ_{n≥1} table[n] q^n`, exact below `q^prec`.
fn from_table(c0: i64, scale: i64, prec: i64, kind: DivisorKind) -> QSeries {
    let len = prec.max(0) as usize;
    let mut num = divisor_table(len, kind);
    for x in num.iter_mut().skip(1) {
        *x *= scale;
    }
    if let Some(first) = num.first_mut() {
        *first = BigInt::from(c0);
    }
    QSeries::from_integers(1, 0, num)
}

/// `Σ table[n] q^{n/den}` over `n` in the residue classes accepted by `keep`.
fn fractional_from_table(den: u32, prec: i64, kind: DivisorKind, keep: impl Fn(usize) -> bool) -> QSeries {
    let trunc = prec * den as i64;
    if trunc <= 1 {
        return QSeries::zero(den, trunc);
    }
    let table = divisor_table(trunc as usize, kind);
    let num = (1..trunc as usize)
        .map(|n| if keep(n) { table[n].clone() } else { BigInt::zero() })
        .collect();
    QSeries::from_integers(den, 1, num)
}

fn build(id: FormId, prec: i64) -> QSeries {
    use FormId::*;
    match id {
        E2 => from_table(1, -24, prec, DivisorKind::Sigma(1)),
        E4 => from_table(1, 240, prec, DivisorKind::Sigma(3)),
        E6 => from_table(1, -504, prec, DivisorKind::Sigma(5)),
        Delta => {
            let e4 = catalog(E4, prec);
            let e6 = catalog(E6, prec);
            e4.pow_int(3)
                .expect("positive power")
                .sub(&e6.square())
                .scale(&rat(1, 1728))
        }
        J => quotient(&catalog(E4, prec + 2).pow_int(3).expect("positive power"), &catalog(Delta, prec + 2)),
        Eta => eta_expand(&EtaSpec::new(&[(1, 1)]), prec),
        E2_2 => from_table(1, 24, prec, DivisorKind::OddSigma(1)),
        Delta4_2 => from_table(0, 1, prec, DivisorKind::OddCofactorSigma(3)),
        J2 => quotient(&catalog(E2_2, prec + 2).square(), &catalog(Delta4_2, prec + 2)),
        SqrtDelta4_2 => eta_expand(&EtaSpec::new(&[(2, 8), (1, -4)]), prec),
        E1_3 => from_table(1, 6, prec, DivisorKind::Char3),
        Delta3_3 => from_table(0, 1, prec, DivisorKind::Char3Weighted),
        J3 => quotient(&catalog(E1_3, prec + 2).pow_int(3).expect("positive power"), &catalog(Delta3_3, prec + 2)),
        CbrtDelta3_3 => eta_expand(&EtaSpec::new(&[(3, 3), (1, -1)]), prec),
        E2_4 => {
            let e2 = catalog(E2, prec);
            let dil = catalog(E2, (prec + 3) / 4).dilate(4);
            dil.scale_int(4).sub(&e2).scale(&rat(1, 3))
        }
        Delta2_4 => {
            let t = divisor_table(prec.max(0) as usize, DivisorKind::Sigma(1));
            let num = t
                .into_iter()
                .enumerate()
                .map(|(n, v)| if n % 2 == 1 { v } else { BigInt::zero() })
                .collect();
            QSeries::from_integers(1, 0, num)
        }
        J4 => quotient(&catalog(E2_4, prec + 2), &catalog(Delta2_4, prec + 2)),
        Theta3TwoTau => theta_series(ThetaKind::Theta3TwoTau, prec),
        HalfTheta2TwoTau => theta_series(ThetaKind::HalfTheta2TwoTau, prec),
    }
}

fn quotient(a: &QSeries, b: &QSeries) -> QSeries {
    a.div(b).expect("catalog denominators are nonzero")
}

/// The second construction of `id`, when one exists, for cross-checking
/// against [`catalog`].
pub fn alternate_recipe(id: FormId, prec: i64) -> Option<QSeries> {
    use FormId::*;
    let eta = |f: &[(u32, i64)]| eta_expand(&EtaSpec::new(f), prec);
    Some(match id {
        Delta => eta(&[(1, 24)]),
        Eta => eta_pentagonal(prec),
        E2_2 => {
            let e2 = catalog(E2, prec);
            let dil = catalog(E2, (prec + 1) / 2).dilate(2);
            dil.scale_int(2).sub(&e2).truncated(Exponent::from_integer(prec))
        }
        Delta4_2 => eta(&[(2, 16), (1, -8)]),
        SqrtDelta4_2 => fractional_from_table(2, prec, DivisorKind::Sigma(1), |n| n % 2 == 1),
        Delta3_3 => eta(&[(3, 9), (1, -3)]),
        CbrtDelta3_3 => fractional_from_table(3, prec, DivisorKind::Char3, |n| n % 3 != 0),
        E2_4 => catalog(Theta3TwoTau, prec).pow_int(4).expect("positive power"),
        Delta2_4 => eta(&[(4, 8), (2, -4)]),
        Theta3TwoTau => eta(&[(2, 5), (1, -2), (4, -2)]),
        HalfTheta2TwoTau => eta(&[(4, 2), (2, -1)]),
        J => {
            let e4 = catalog(E4, prec + 2);
            quotient(&e4.pow_int(3).expect("positive power"), &eta_expand(&EtaSpec::new(&[(1, 24)]), prec + 2))
                .truncated(Exponent::from_integer(prec))
        }
        _ => return None,
    })
}

/// Leading `q`-coefficients displayed for each catalog entry, read along
/// `q^{lead}, q^{lead+1}, …`; `None` marks a coefficient the display omits.
pub fn displayed_coefficients(id: FormId) -> (Exponent, Vec<Option<i64>>) {
    use FormId::*;
    let e = Exponent::new;
    let some = |v: &[i64]| v.iter().map(|&x| Some(x)).collect::<Vec<_>>();
    match id {
        E2 => (e(0, 1), some(&[1, -24, -72, -96])),
        E4 => (e(0, 1), some(&[1, 240, 2160, 6720])),
        E6 => (e(0, 1), some(&[1, -504, -16632, -122976])),
        Delta => (e(0, 1), vec![Some(0), Some(1), Some(-24), Some(252), Some(-1472)]),
        J => (e(-1, 1), some(&[1, 744, 196884, 21493760])),
        Eta => (e(1, 24), some(&[1, -1, -1, 0, 0, 1])),
        E2_2 => (e(0, 1), some(&[1, 24, 24, 96])),
        Delta4_2 => (e(1, 1), some(&[1, 8, 28, 64])),
        J2 => (e(-1, 1), some(&[1, 40, 276, -2048])),
        SqrtDelta4_2 => (e(1, 2), some(&[1, 4, 6, 8])),
        E1_3 => (e(0, 1), some(&[1, 6, 0, 6, 6])),
        Delta3_3 => (e(1, 1), some(&[1, 3, 9, 13])),
        J3 => (e(-1, 1), some(&[1, 15, 54, -76])),
        CbrtDelta3_3 => (e(1, 3), some(&[1, 1, 2, 0, 2])),
        E2_4 => (e(0, 1), some(&[1, 8, 24, 32, 24])),
        Delta2_4 => (e(1, 1), some(&[1, 0, 4, 0, 6, 0, 8])),
        J4 => (e(-1, 1), some(&[1, 8, 20, 0, -62, 0, 216])),
        Theta3TwoTau => (e(0, 1), some(&[1, 2, 0, 0, 2, 0, 0, 0, 0, 2])),
        HalfTheta2TwoTau => (e(1, 4), some(&[1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1])),
    }
}

/// Convenience for tests and examples: integer coefficient list as rationals.
pub fn ints(v: &[i64]) -> Vec<num_rational::BigRational> {
    v.iter().map(|&x| int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in FormId::ALL {
            assert_eq!(id.name().parse::<FormId>().unwrap(), id);
        }
        assert!("E3".parse::<FormId>().is_err());
    }

    #[test]
    fn delta_from_eisenstein_series() {
        let d = catalog(FormId::Delta, 5);
        assert_eq!(d.coeffs(), ints(&[1, -24, 252, -1472]));
    }

    #[test]
    fn j_invariant_leading_terms() {
        let j = catalog(FormId::J, 3);
        assert_eq!(j.lead_exp(), -1);
        assert_eq!(j.coeffs(), ints(&[1, 744, 196884, 21493760]));
    }

    #[test]
    fn hauptmoduls() {
        assert_eq!(catalog(FormId::J2, 3).coeffs(), ints(&[1, 40, 276, -2048]));
        assert_eq!(catalog(FormId::J4, 6).coeffs(), ints(&[1, 8, 20, 0, -62, 0, 216]));
    }

    #[test]
    fn level_four_eisenstein() {
        assert_eq!(catalog(FormId::E2_4, 5).coeffs(), ints(&[1, 8, 24, 32, 24]));
    }

    #[test]
    fn cache_serves_smaller_requests_identically() {
        let big = catalog(FormId::E6, 40);
        let small = catalog(FormId::E6, 7);
        assert_eq!(small, big.truncated(Exponent::from_integer(7)));
        assert_eq!(small.trunc(), 7);
    }

    #[test]
    fn alternate_recipes_agree() {
        for id in FormId::ALL {
            if let Some(alt) = alternate_recipe(id, 30) {
                let main = catalog(id, 30);
                assert_eq!(main, alt, "{id}");
            }
        }
    }
}
