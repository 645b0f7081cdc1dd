//! Weight-zero functions expanded in powers of `1/j`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{catalog, FormId};
use crate::qseries::{rat, Exponent, QSeries};

/// The two series whose `1/j` expansions are tabulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CfTarget {
    /// `E4'/(240·E6) = 1/j + 1266/j² + …`
    E4pOverE6,
    /// `E2·E4/(E6·j) = 1/j + 720/j² + …`
    Atkin,
}

impl CfTarget {
    pub fn name(self) -> &'static str {
        match self {
            CfTarget::E4pOverE6 => "e4p-over-e6",
            CfTarget::Atkin => "atkin",
        }
    }

    /// The target's q-expansion below `q^prec`.
    pub fn series(self, prec: i64) -> QSeries {
        let p = prec + 1;
        let e6 = catalog(FormId::E6, p);
        let out = match self {
            CfTarget::E4pOverE6 => catalog(FormId::E4, p)
                .theta_deriv()
                .scale(&rat(1, 240))
                .div(&e6),
            // E2·E4/(E6·j) = E2·Δ/(E6·E4²)
            CfTarget::Atkin => {
                let e4 = catalog(FormId::E4, p);
                catalog(FormId::E2, p)
                    .mul(&catalog(FormId::Delta, p))
                    .div(&e6.mul(&e4.square()))
            }
        };
        out.expect("E6 and E4 are units").truncated(Exponent::from_integer(prec))
    }
}

impl std::str::FromStr for CfTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [CfTarget::E4pOverE6, CfTarget::Atkin]
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown target {s:?}")))
    }
}

/// `c_1, …, c_depth` with `f = c_0 + Σ c_i/j^i + O(q^{depth+1})`, found by
/// peeling off one power of `1/j = Δ/E4³ = q − 744q² + …` at a time.
/// The constant `c_0` is the `q^0` coefficient of `f` and is not returned.
pub fn expand_in_inv_j(f: &QSeries, depth: u32) -> Result<Vec<BigRational>> {
    let f = f.coarsened();
    if f.exp_den() != 1 {
        return Err(Error::Unexpandable(format!("exponents on the grid 1/{}", f.exp_den())));
    }
    if f.lead_exp() < 0 {
        return Err(Error::Unexpandable(format!("pole of order {} at infinity", -f.lead_exp())));
    }
    let need = depth as i64 + 1;
    if f.trunc() < need {
        return Err(Error::InsufficientPrecision(format!(
            "depth {depth} needs coefficients below q^{need}, series is known below q^{}",
            f.trunc()
        )));
    }
    let u = catalog(FormId::Delta, need)
        .div(&catalog(FormId::E4, need).pow_int(3)?)?
        .truncated(Exponent::from_integer(need));
    let c0 = f.coeff_int(0).unwrap_or_else(BigRational::zero);
    let mut rest = f.truncated(Exponent::from_integer(need)).sub(&QSeries::constant(c0, need));
    let mut power = u.clone();
    let mut out = Vec::with_capacity(depth as usize);
    for i in 1..=depth as i64 {
        let c = rest.coeff_int(i).expect("within the truncation");
        if !c.is_zero() {
            rest = rest.sub(&power.scale(&c));
        }
        out.push(c);
        power = power.mul(&u);
    }
    Ok(out)
}
