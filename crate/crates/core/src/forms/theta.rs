use num_bigint::BigInt;
use num_traits::Zero;

use crate::qseries::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    /// `θ₃(2τ) = Σ_{n∈Z} q^{n²}`
    Theta3TwoTau,
    /// `θ₂(2τ)/2 = Σ_{n≥0} q^{(n+1/2)²}`
    HalfTheta2TwoTau,
}

pub fn theta_series(kind: ThetaKind, prec: i64) -> QSeries {
    match kind {
        ThetaKind::Theta3TwoTau => {
            let len = prec.max(0) as usize;
            let mut num = vec![BigInt::zero(); len];
            let mut n = 0usize;
            while n * n < len {
                num[n * n] = BigInt::from(if n == 0 { 1 } else { 2 });
                n += 1;
            }
            QSeries::from_integers(1, 0, num)
        }
        ThetaKind::HalfTheta2TwoTau => {
            // exponents (2n+1)²/4 on the quarter grid
            let trunc = 4 * prec;
            if trunc <= 1 {
                return QSeries::zero(4, trunc);
            }
            let mut num = vec![BigInt::zero(); (trunc - 1) as usize];
            let mut n = 0i64;
            while (2 * n + 1) * (2 * n + 1) < trunc {
                num[((2 * n + 1) * (2 * n + 1) - 1) as usize] = BigInt::from(1);
                n += 1;
            }
            QSeries::from_integers(4, 1, num)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{int, Exponent};

    #[test]
    fn theta3_terms() {
        let t = theta_series(ThetaKind::Theta3TwoTau, 10);
        assert_eq!(t.coeffs(), [1, 2, 0, 0, 2, 0, 0, 0, 0, 2].map(int).to_vec());
    }

    #[test]
    fn half_theta2_terms() {
        let t = theta_series(ThetaKind::HalfTheta2TwoTau, 13);
        let support: Vec<Exponent> = t.terms().map(|(e, _)| e).collect();
        assert_eq!(support, [1, 9, 25, 49].map(|n| Exponent::new(n, 4)).to_vec());
        assert_eq!(t.trunc_exponent(), Exponent::from_integer(13));
    }
}
