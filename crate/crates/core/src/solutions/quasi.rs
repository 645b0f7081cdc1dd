//! Quasimodular solutions for `k = 6n + 5` and the polynomials `P_n`, `Q_n`
//! that describe them.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::forms::{catalog, FormId};
use crate::qseries::{int, rat, Exponent, QSeries};

/// A polynomial in one variable with exact rational coefficients; index = degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQ {
    coeffs: Vec<BigRational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        PolyQ::new(v.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::from_ints(&[1])
    }

    pub fn x() -> Self {
        PolyQ::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when only degrees `≡ p (mod 2)` occur; the zero polynomial has both parities.
    pub fn has_parity(&self, p: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % 2 == p % 2)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `x·self + c·other`.
    fn shift_add(&self, c: &BigRational, other: &PolyQ) -> PolyQ {
        let n = (self.coeffs.len() + 1).max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = if i == 0 { BigRational::zero() } else { self.coeff(i - 1) };
                a + c * other.coeff(i)
            })
            .collect();
        PolyQ::new(v)
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let show = !mag.is_one() || i == 0;
            if show {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show { "*" } else { "" })?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `λ_n = 12(6n+1)(6n+5)/(n(n+1))` for `n ≥ 1`.
pub fn lambda(n: u32) -> BigRational {
    assert!(n >= 1, "lambda is defined for n >= 1");
    let n = n as i64;
    rat(12 * (6 * n + 1) * (6 * n + 5), n * (n + 1))
}

/// `(P_n, Q_n)` from `X_{m+1} = x·X_m + λ_m·X_{m−1}` with
/// `P_0 = 1, P_1 = x` and `Q_0 = 0, Q_1 = 1`.
pub fn pq_polynomials(n: u32) -> (PolyQ, PolyQ) {
    let (mut p0, mut p1) = (PolyQ::one(), PolyQ::x());
    let (mut q0, mut q1) = (PolyQ::zero(), PolyQ::one());
    if n == 0 {
        return (p0, q0);
    }
    for m in 1..n {
        let l = lambda(m);
        let p2 = p1.shift_add(&l, &p0);
        let q2 = q1.shift_add(&l, &q0);
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    (p1, q1)
}

/// `√Δ^{top} R(E6/√Δ) = Σ_i r_i E6^i Δ^{(top−i)/2}` for `R` of parity `top`.
fn parity_split(r: &PolyQ, top: usize, e6_pows: &[QSeries], d_pows: &[QSeries]) -> Option<QSeries> {
    let mut acc: Option<QSeries> = None;
    for (i, c) in r.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        debug_assert_eq!((top - i) % 2, 0, "parity violated");
        let t = e6_pows[i].mul(&d_pows[(top - i) / 2]).scale(c);
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    acc
}

/// The quasimodular solution of weight `k + 1` for `k = 6n + 5`:
/// `√Δ^n P_n(E6/√Δ)·E4'/240 − √Δ^{n+1} Q_n(E6/√Δ)`, evaluated without square
/// roots. Exact below `q^prec`.
pub fn quasimodular_solution(n: u32, prec: i64) -> QSeries {
    let (p, q) = pq_polynomials(n);
    let n = n as usize;
    let e6 = catalog(FormId::E6, prec);
    let d = catalog(FormId::Delta, prec);
    let mut e6_pows = vec![QSeries::one(prec)];
    for i in 1..=n {
        let next = e6_pows[i - 1].mul(&e6);
        e6_pows.push(next);
    }
    let mut d_pows = vec![QSeries::one(prec)];
    for i in 1..=(n + 1) / 2 {
        let next = d_pows[i - 1].mul(&d);
        d_pows.push(next);
    }
    let f5 = catalog(FormId::E4, prec).theta_deriv().scale(&rat(1, 240));
    let first = parity_split(&p, n, &e6_pows, &d_pows)
        .expect("P_n is nonzero")
        .mul(&f5);
    let out = match parity_split(&q, n + 1, &e6_pows, &d_pows) {
        Some(second) => first.sub(&second),
        None => first,
    };
    out.truncated(Exponent::from_integer(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::kz_apply;
    use crate::qseries::Weight;

    #[test]
    fn initial_polynomials() {
        assert_eq!(pq_polynomials(0), (PolyQ::one(), PolyQ::zero()));
        assert_eq!(pq_polynomials(1), (PolyQ::x(), PolyQ::one()));
    }

    #[test]
    fn printed_polynomials() {
        let cases = [
            (2, PolyQ::from_ints(&[462, 0, 1]), PolyQ::from_ints(&[0, 1])),
            (3, PolyQ::from_ints(&[0, 904, 0, 1]), PolyQ::from_ints(&[442, 0, 1])),
            (4, PolyQ::from_ints(&[201894, 0, 1341, 0, 1]), PolyQ::from_ints(&[0, 879, 0, 1])),
        ];
        for (n, p, q) in cases {
            assert_eq!(pq_polynomials(n), (p, q), "n = {n}");
        }
        assert_eq!(lambda(1), int(462));
    }

    #[test]
    fn lambda_six_is_not_integral() {
        assert_eq!(lambda(6), rat(12 * 37 * 41, 42));
        assert!(!lambda(6).is_integer());
    }

    #[test]
    fn parity() {
        for n in 0..10 {
            let (p, q) = pq_polynomials(n);
            assert!(p.has_parity(n as usize));
            assert!(q.has_parity(n as usize + 1));
        }
    }

    #[test]
    fn display() {
        assert_eq!(PolyQ::from_ints(&[201894, 0, 1341, 0, 1]).to_string(), "x^4 + 1341*x^2 + 201894");
        assert_eq!(PolyQ::zero().to_string(), "0");
    }

    #[test]
    fn first_two_solutions() {
        let f5 = quasimodular_solution(0, 20);
        let e4 = catalog(FormId::E4, 20);
        assert_eq!(f5, e4.theta_deriv().scale(&rat(1, 240)));
        assert_eq!(f5.coeffs()[..3], [int(1), int(18), int(84)]);
        let f11 = quasimodular_solution(1, 20);
        let expect = catalog(FormId::E6, 20)
            .mul(&f5)
            .sub(&catalog(FormId::Delta, 20));
        assert_eq!(f11, expect);
        assert_eq!(f11.lead_exponent(), Exponent::from_integer(2));
        assert_eq!(f11.lead_coeff(), Some(int(-462)));
        for n in 0..5 {
            let f = quasimodular_solution(n, 20);
            assert!(kz_apply(&f, Weight::int(6 * n as i64 + 5)).vanishes(), "n = {n}");
        }
    }
}
