//! Weighted differential operators on q-series: the Serre derivative, the
//! degree-one Rankin–Cohen bracket and the second-order operator whose kernel
//! the rest of the crate constructs.
//!
//! Weights are always passed explicitly; nothing here infers them.

use num_rational::BigRational;

use crate::forms::{catalog, FormId};
use crate::qseries::{companion_prec, rat, Exponent, QSeries, Weight};

/// The output of an operator applied to a candidate solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorResidual {
    pub series: QSeries,
    /// Every coefficient below `q^vanish_order` was computed and found zero.
    pub vanish_order: Exponent,
}

impl OperatorResidual {
    fn new(series: QSeries) -> Self {
        OperatorResidual {
            vanish_order: series.lead_exponent(),
            series,
        }
    }

    /// True when the residual is zero everywhere it is known.
    pub fn vanishes(&self) -> bool {
        self.series.is_zero()
    }

    /// True when the residual is known, and zero, for every exponent below `q^order`.
    pub fn vanishes_through(&self, order: Exponent) -> bool {
        self.vanish_order >= order
    }
}

/// `E2` to a precision that never limits a product with `f`.
fn e2_for(f: &QSeries) -> QSeries {
    catalog(FormId::E2, companion_prec(f))
}

fn e4_for(f: &QSeries) -> QSeries {
    catalog(FormId::E4, companion_prec(f))
}

/// `E2' = (E2² − E4)/12`, computed by differentiating the series directly.
pub fn e2_prime(prec: i64) -> QSeries {
    catalog(FormId::E2, prec).theta_deriv()
}

/// `∂_k f = f' − (k/12)·E2·f`.
pub fn serre(f: &QSeries, k: Weight) -> QSeries {
    let c = k.to_big() * rat(1, 12);
    f.theta_deriv().sub(&e2_for(f).mul(f).scale(&c))
}

/// `[f, g] = k·f·g' − l·f'·g` for `f` of weight `k` and `g` of weight `l`.
pub fn rc_bracket(f: &QSeries, k: Weight, g: &QSeries, l: Weight) -> QSeries {
    let a = f.mul(&g.theta_deriv()).scale(&k.to_big());
    let b = f.theta_deriv().mul(g).scale(&l.to_big());
    a.sub(&b)
}

/// `L_k f = f'' − ((k+1)/6)·E2·f' + (k(k+1)/12)·E2'·f`.
pub fn kz_apply(f: &QSeries, k: Weight) -> OperatorResidual {
    let kk = k.to_big();
    let one = BigRational::from_integer(1.into());
    let d1 = f.theta_deriv();
    let d2 = d1.theta_deriv();
    let e2 = e2_for(f);
    let e2p = e2.theta_deriv();
    let c1 = (&kk + &one) * rat(1, 6);
    let c2 = &kk * (&kk + &one) * rat(1, 12);
    let r = d2.sub(&e2.mul(&d1).scale(&c1)).add(&e2p.mul(f).scale(&c2));
    OperatorResidual::new(r)
}

/// `L_k f + α·E4·f`: the equation with an extra `α·E4` term in the
/// coefficient of `f`.
pub fn kz_alpha_apply(f: &QSeries, k: Weight, alpha: &BigRational) -> OperatorResidual {
    let base = kz_apply(f, k).series;
    OperatorResidual::new(base.add(&e4_for(f).mul(f).scale(alpha)))
}

/// `∂_{k+2}∂_k f − (k(k+2)/144)·E4·f`, the same equation written through Serre derivatives.
pub fn kz_sharp_apply(f: &QSeries, k: Weight) -> OperatorResidual {
    let kk = k.to_big();
    let inner = serre(f, k);
    let outer = serre(&inner, k.offset(2));
    let c = &kk * (&kk + BigRational::from_integer(2.into())) * rat(1, 144);
    OperatorResidual::new(outer.sub(&e4_for(f).mul(f).scale(&c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::int;

    fn w(k: i64) -> Weight {
        Weight::int(k)
    }

    #[test]
    fn serre_of_e4_and_e6() {
        let e4 = catalog(FormId::E4, 30);
        let e6 = catalog(FormId::E6, 30);
        assert_eq!(serre(&e4, w(4)), e6.scale(&rat(-1, 3)));
        assert_eq!(serre(&e6, w(6)), e4.square().scale(&rat(-1, 2)));
    }

    #[test]
    fn serre_kills_delta() {
        let d = catalog(FormId::Delta, 30);
        let s = serre(&d, w(12));
        assert!(s.is_zero());
        assert_eq!(s.trunc_exponent(), Exponent::from_integer(30));
    }

    #[test]
    fn serre_of_level_two_cusp_form() {
        let a = catalog(FormId::Delta4_2, 30);
        let b = catalog(FormId::E2_2, 30);
        assert_eq!(serre(&a, w(4)), a.mul(&b).scale(&rat(2, 3)));
    }

    #[test]
    fn bracket_examples() {
        let e4 = catalog(FormId::E4, 30);
        assert!(rc_bracket(&QSeries::one(30), w(0), &e4, w(4)).is_zero());
        assert!(rc_bracket(&e4, w(4), &e4, w(4)).is_zero());
        let f5 = e4.theta_deriv().scale(&rat(1, 240));
        let d = catalog(FormId::Delta, 30);
        assert_eq!(rc_bracket(&f5, w(5), &e4, w(4)), d.scale_int(-4));
    }

    #[test]
    fn known_kernel_elements() {
        assert!(kz_apply(&QSeries::one(20), w(0)).vanishes());
        assert!(kz_sharp_apply(&QSeries::one(20), w(0)).vanishes());
        let e4 = catalog(FormId::E4, 40);
        let r = kz_apply(&e4, w(4));
        assert!(r.vanishes_through(Exponent::from_integer(40)));
        let f5 = e4.theta_deriv().scale(&rat(1, 240));
        assert!(kz_apply(&f5, w(5)).vanishes());
        assert!(kz_sharp_apply(&catalog(FormId::E6, 40), w(6)).vanishes());
    }

    #[test]
    fn e2_derivative_identity() {
        let e2 = catalog(FormId::E2, 25);
        let e4 = catalog(FormId::E4, 25);
        assert_eq!(e2_prime(25), e2.square().sub(&e4).scale(&rat(1, 12)));
    }

    #[test]
    fn non_solution_leaves_residual() {
        let e6 = catalog(FormId::E6, 10);
        let r = kz_apply(&e6, w(4));
        assert!(!r.vanishes());
        assert_eq!(r.vanish_order, Exponent::from_integer(1));
        assert_eq!(r.series.coeff_int(1), Some(int(-124)));
    }
}
