//! Solutions of the modular differential equation `L_k f = 0`.
//!
//! * [`solve_normalized`] and [`solve_cuspidal`] build the finite
//!   hypergeometric sums in Eisenstein and cusp forms of levels 1–4.
//! * [`quasimodular_solution`] handles `k ≡ 5 (mod 6)` through the
//!   polynomials `P_n`, `Q_n`.
//! * [`descend`] and [`ascend_ladder`] move between weights `k` and `k ± 6`.
//! * [`frobenius_solve`] is an independent oracle: the power-series solution
//!   obtained directly from the recurrence of the equation.
//! * [`verify_delta_twist`] checks the relation between the equation with an
//!   extra `α·E4` term and the plain one under multiplication by `Δ^β`.

mod families;
mod frobenius;
mod ladder;
mod quasi;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub use families::{solve_cuspidal, solve_normalized};
pub use frobenius::{frobenius_solve, indicial_roots, twist_residual, verify_delta_twist, Branch};
pub use ladder::{ascend_ladder, ascend_ladder_with_mu0, descend, mu, reascend, LadderState};
pub use quasi::{lambda, pq_polynomials, quasimodular_solution, PolyQ};

use crate::error::{Error, Result};
use crate::operators::kz_apply;
use crate::qseries::{Exponent, QSeries, Weight};

/// Which construction of Theorem-type solutions applies to a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ResidueClass {
    /// even `k ≡ 0, 4 (mod 6)`: level one
    Lvl1,
    /// even `k ≡ 2 (mod 6)`: level two
    Lvl2,
    /// odd `k ≡ 1, 3 (mod 6)`: level three
    Lvl3,
    /// odd `k ≡ 5 (mod 6)`: quasimodular solution of weight `k + 1`
    Quasi,
    /// half-integral `k ≡ 1/2 (mod 3)`: level four
    Lvl4,
    /// remaining half-integral weights; no modular solution is known
    NoneKnown,
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn classify_weight(k: Weight) -> Result<ResidueClass> {
    if k.is_negative() {
        return Err(Error::NegativeWeight(k.to_string()));
    }
    Ok(match k.as_int() {
        Some(n) => match n % 6 {
            0 | 4 => ResidueClass::Lvl1,
            2 => ResidueClass::Lvl2,
            1 | 3 => ResidueClass::Lvl3,
            _ => ResidueClass::Quasi,
        },
        None => {
            if k.twice() % 6 == 1 {
                ResidueClass::Lvl4
            } else {
                ResidueClass::NoneKnown
            }
        }
    })
}

/// Rising factorial `(a)_n = a(a+1)⋯(a+n−1)`.
pub fn pochhammer(a: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = a.clone();
    for _ in 0..n {
        if acc.is_zero() {
            break;
        }
        acc *= &t;
        t += BigRational::one();
    }
    acc
}

/// `(a)_i (b)_i / ((c)_i i!)`.
pub(crate) fn hyper_coeff(a: &BigRational, b: &BigRational, c: &BigRational, i: u32) -> BigRational {
    let num = pochhammer(a, i) * pochhammer(b, i);
    if num.is_zero() {
        return num;
    }
    let fact: BigInt = (1..=i as u64).map(BigInt::from).product();
    num / (pochhammer(c, i) * BigRational::from_integer(fact))
}

/// The named solution families a verification run can target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Normalized,
    Cuspidal,
    Quasi,
    FrobeniusZero,
    FrobeniusCusp,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Normalized,
        Family::Cuspidal,
        Family::Quasi,
        Family::FrobeniusZero,
        Family::FrobeniusCusp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Normalized => "normalized",
            Family::Cuspidal => "cuspidal",
            Family::Quasi => "quasi",
            Family::FrobeniusZero => "frobenius-zero",
            Family::FrobeniusCusp => "frobenius-cusp",
        }
    }

    /// Builds the family member of weight `k`, exact below `q^prec`.
    pub fn build(self, k: Weight, prec: i64) -> Result<QSeries> {
        match self {
            Family::Normalized => solve_normalized(k, prec),
            Family::Cuspidal => solve_cuspidal(k, prec),
            Family::Quasi => {
                let n = quasi_index(k)?;
                Ok(quasimodular_solution(n, prec))
            }
            Family::FrobeniusZero => frobenius_solve(k, Branch::Zero, prec),
            Family::FrobeniusCusp => frobenius_solve(k, Branch::Cusp, prec),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// `n` with `k = 6n + 5`, or `UnsupportedClass`.
pub(crate) fn quasi_index(k: Weight) -> Result<u32> {
    let class = classify_weight(k)?;
    if class != ResidueClass::Quasi {
        return Err(Error::UnsupportedClass {
            weight: k.to_string(),
            class,
        });
    }
    Ok(((k.as_int().expect("quasi weights are integral") - 5) / 6) as u32)
}

/// How the leading term of a family member is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `1 + O(q)`
    One,
    /// `q^ρ + O(q^{ρ+1})` with coefficient exactly 1
    CuspMonic,
    /// leading exponent prescribed, leading coefficient free
    LeadingExponent,
}

/// Outcome of building one solution and checking it against the equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub weight: String,
    pub family: Family,
    pub lead_exponent: String,
    pub expected_lead_exponent: String,
    pub normalization: Normalization,
    pub normalization_holds: bool,
    /// Residual coefficients are known and zero below `q^vanish_order`.
    pub vanish_order: String,
    pub checked_through: String,
    pub residual_vanishes: bool,
}

impl SolutionReport {
    pub fn passed(&self) -> bool {
        self.residual_vanishes && self.normalization_holds
    }
}

impl fmt::Display for SolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "weight: {}", self.weight)?;
        writeln!(f, "family: {}", self.family)?;
        writeln!(f, "leading exponent: {} (expected {})", self.lead_exponent, self.expected_lead_exponent)?;
        writeln!(f, "normalization: {:?} {}", self.normalization, if self.normalization_holds { "holds" } else { "FAILS" })?;
        writeln!(f, "residual vanishes below q^{}: {}", self.checked_through, self.residual_vanishes)?;
        write!(f, "residual vanish order: {}", self.vanish_order)
    }
}

/// Leading exponent promised by each family at weight `k`.
pub fn expected_lead(family: Family, k: Weight) -> (Exponent, Normalization) {
    let cusp = (k.value() + 1) / 6;
    match family {
        Family::Normalized | Family::FrobeniusZero => (Exponent::zero(), Normalization::One),
        Family::Cuspidal | Family::FrobeniusCusp => (cusp, Normalization::CuspMonic),
        Family::Quasi => (cusp, Normalization::LeadingExponent),
    }
}

/// Builds `family` at weight `k` and checks `L_k f = 0` below `q^prec`.
pub fn verify_family(k: Weight, family: Family, prec: i64) -> Result<SolutionReport> {
    let f = family.build(k, prec)?;
    Ok(report_for(&f, k, family, prec))
}

/// Checks an already-built series against the contract of `family`.
pub fn report_for(f: &QSeries, k: Weight, family: Family, prec: i64) -> SolutionReport {
    let r = kz_apply(f, k);
    let through = Exponent::from_integer(prec);
    let (lead, norm) = expected_lead(family, k);
    let holds = f.lead_exponent() == lead
        && match norm {
            Normalization::One | Normalization::CuspMonic => f.lead_coeff() == Some(BigRational::one()),
            Normalization::LeadingExponent => true,
        };
    SolutionReport {
        weight: k.to_string(),
        family,
        lead_exponent: f.lead_exponent().to_string(),
        expected_lead_exponent: lead.to_string(),
        normalization: norm,
        normalization_holds: holds,
        vanish_order: r.vanish_order.to_string(),
        checked_through: through.to_string(),
        residual_vanishes: r.vanishes_through(through),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rat;

    #[test]
    fn classification() {
        assert_eq!(classify_weight(Weight::int(4)).unwrap(), ResidueClass::Lvl1);
        assert_eq!(classify_weight(Weight::int(0)).unwrap(), ResidueClass::Lvl1);
        assert_eq!(classify_weight(Weight::int(8)).unwrap(), ResidueClass::Lvl2);
        assert_eq!(classify_weight(Weight::int(9)).unwrap(), ResidueClass::Lvl3);
        assert_eq!(classify_weight(Weight::int(11)).unwrap(), ResidueClass::Quasi);
        assert_eq!(classify_weight(Weight::half(3)).unwrap(), ResidueClass::NoneKnown);
        assert_eq!(classify_weight(Weight::half(1)).unwrap(), ResidueClass::Lvl4);
        assert_eq!(classify_weight(Weight::half(7)).unwrap(), ResidueClass::Lvl4);
        assert_eq!(classify_weight(Weight::half(11)).unwrap(), ResidueClass::NoneKnown);
        assert!(matches!(classify_weight(Weight::int(-2)), Err(Error::NegativeWeight(_))));
    }

    #[test]
    fn rising_factorials() {
        assert_eq!(pochhammer(&rat(5, 7), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(-1, 2), 2), rat(-1, 4));
        assert_eq!(pochhammer(&rat(-2, 1), 3), rat(0, 1));
        assert_eq!(pochhammer(&rat(3, 1), 4), rat(360, 1));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn report_for_e4() {
        let r = verify_family(Weight::int(4), Family::Normalized, 30).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.lead_exponent, "0");
    }

    #[test]
    fn report_for_quasi_weight_eleven() {
        let r = verify_family(Weight::int(11), Family::Quasi, 30).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.lead_exponent, "2");
    }
}
