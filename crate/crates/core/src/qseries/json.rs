//! JSON wire format:
//! `{"exp_den": N, "lead_exp": L, "trunc": T, "coeffs": [["num", "den"], …]}`.
//!
//! Grid integers are plain JSON numbers; coefficient numerators and
//! denominators are decimal strings so they carry arbitrary precision.
//! `coeffs` lists every coefficient from `q^{L/N}` up to `q^{(T-1)/N}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::QSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireQSeries {
    pub exp_den: u32,
    pub lead_exp: i64,
    pub trunc: i64,
    pub coeffs: Vec<[String; 2]>,
}

impl From<&QSeries> for WireQSeries {
    fn from(s: &QSeries) -> Self {
        WireQSeries {
            exp_den: s.exp_den(),
            lead_exp: s.lead_exp(),
            trunc: s.trunc(),
            coeffs: s
                .coeffs()
                .into_iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
    }
}

impl TryFrom<WireQSeries> for QSeries {
    type Error = Error;

    fn try_from(w: WireQSeries) -> Result<Self> {
        if w.exp_den == 0 {
            return Err(Error::Parse("exp_den must be positive".into()));
        }
        if w.trunc < w.lead_exp || (w.trunc - w.lead_exp) as usize != w.coeffs.len() {
            return Err(Error::Parse(format!(
                "expected trunc - lead_exp = {} coefficients, got {}",
                w.trunc - w.lead_exp,
                w.coeffs.len()
            )));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|[n, d]| {
                let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
                let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Ok(QSeries::zero(w.exp_den, w.trunc));
        }
        Ok(QSeries::from_coeffs(w.exp_den, w.lead_exp, &coeffs))
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WireQSeries::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = WireQSeries::deserialize(deserializer)?;
        QSeries::try_from(w).map_err(serde::de::Error::custom)
    }
}

impl QSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<QSeries> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
