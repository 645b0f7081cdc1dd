//! Divisor sums, one value at a time or sieved over a range.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Which arithmetic function of `n` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorKind {
    /// `Σ_{d|n} d^r`
    Sigma(u32),
    /// `Σ_{d|n, d odd} d^r`
    OddSigma(u32),
    /// `Σ_{d|n, d odd} (n/d)^r`
    OddCofactorSigma(u32),
    /// `Σ_{d|n} (d/3)`
    Char3,
    /// `Σ_{d|n} (d/3)(n/d)^2`
    Char3Weighted,
}

/// The Legendre symbol `(d/3)`.
pub fn legendre3(d: u64) -> i64 {
    match d % 3 {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn term(kind: DivisorKind, d: u64, n: u64) -> i128 {
    let p = |x: u64, r: u32| (x as i128).pow(r);
    match kind {
        DivisorKind::Sigma(r) => p(d, r),
        DivisorKind::OddSigma(r) => {
            if d % 2 == 1 {
                p(d, r)
            } else {
                0
            }
        }
        DivisorKind::OddCofactorSigma(r) => {
            if d % 2 == 1 {
                p(n / d, r)
            } else {
                0
            }
        }
        DivisorKind::Char3 => legendre3(d) as i128,
        DivisorKind::Char3Weighted => legendre3(d) as i128 * p(n / d, 2),
    }
}

/// Exact value of the chosen divisor sum at `n ≥ 1`.
pub fn divisor_sum(n: u64, kind: DivisorKind) -> BigRational {
    assert!(n >= 1, "divisor sums are defined for n >= 1");
    let mut acc = BigInt::from(0);
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc += term(kind, d, n);
            let e = n / d;
            if e != d {
                acc += term(kind, e, n);
            }
        }
        d += 1;
    }
    BigRational::from_integer(acc)
}

/// `table[n]` = divisor sum at `n` for `1 ≤ n < len`; `table[0] = 0`.
pub fn divisor_table(len: usize, kind: DivisorKind) -> Vec<BigInt> {
    let mut t = vec![0i128; len];
    for d in 1..len {
        let mut n = d;
        while n < len {
            t[n] += term(kind, d as u64, n as u64);
            n += d;
        }
    }
    t.into_iter().map(BigInt::from).collect()
}

/// `σ(n) = Σ_{d|n} d` as a machine integer.
pub fn sigma1(n: u64) -> u64 {
    let mut acc = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc += d;
            if n / d != d {
                acc += n / d;
            }
        }
        d += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::int;

    #[test]
    fn odd_cofactor_cubes_at_three() {
        assert_eq!(divisor_sum(3, DivisorKind::OddCofactorSigma(3)), int(28));
    }

    #[test]
    fn char3_at_two_vanishes() {
        assert_eq!(divisor_sum(2, DivisorKind::Char3), int(0));
    }

    #[test]
    fn weighted_char3_at_four() {
        assert_eq!(divisor_sum(4, DivisorKind::Char3Weighted), int(13));
    }

    #[test]
    fn sieve_matches_direct_sums() {
        for kind in [
            DivisorKind::Sigma(1),
            DivisorKind::Sigma(5),
            DivisorKind::OddSigma(1),
            DivisorKind::OddCofactorSigma(3),
            DivisorKind::Char3,
            DivisorKind::Char3Weighted,
        ] {
            let t = divisor_table(60, kind);
            for n in 1..60u64 {
                assert_eq!(BigRational::from_integer(t[n as usize].clone()), divisor_sum(n, kind), "{kind:?} at {n}");
            }
        }
    }

    #[test]
    fn sigma_small_values() {
        let expect = [1, 3, 4, 7, 6, 12, 8, 15, 13, 18];
        for (n, &s) in (1..=10).zip(expect.iter()) {
            assert_eq!(sigma1(n), s);
        }
    }
}
