//! Coordinates of a quasimodular form in the monomials `E2^i·E4^a·E6^b`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{catalog, FormId};
use crate::qseries::{Exponent, QSeries};

/// All `(a, b)` with `4a + 6b = w`, by increasing `b`.
pub fn modular_basis(w: u32) -> Result<Vec<(u32, u32)>> {
    if w % 2 == 1 {
        return Err(Error::OddWeight(w));
    }
    Ok((0..=w / 6)
        .filter(|b| (w - 6 * b) % 4 == 0)
        .map(|b| ((w - 6 * b) / 4, b))
        .collect())
}

/// `E2^depth · m` with `m = Σ c_{a,b} E4^a E6^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPart {
    pub depth: u32,
    pub modular: QSeries,
    pub monomials: BTreeMap<(u32, u32), BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiDecomposition {
    pub weight: u32,
    /// Nonzero parts by increasing depth.
    pub parts: Vec<QuasiPart>,
}

impl QuasiDecomposition {
    /// `Σ E2^i·m_i` below `q^prec`.
    pub fn recombine(&self, prec: i64) -> QSeries {
        let e2 = catalog(FormId::E2, prec);
        self.parts.iter().fold(QSeries::zero(1, prec), |acc, p| {
            let m = p.modular.truncated(Exponent::from_integer(prec));
            acc.add(&e2.pow_int(p.depth as i64).expect("nonnegative power").mul(&m))
        })
    }

    /// Largest power of `E2` that occurs.
    pub fn depth(&self) -> u32 {
        self.parts.last().map_or(0, |p| p.depth)
    }
}

impl fmt::Display for QuasiDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for p in &self.parts {
            for ((a, b), c) in &p.monomials {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({c})")?;
                for (name, e) in [("E2", p.depth), ("E4", *a), ("E6", *b)] {
                    match e {
                        0 => {}
                        1 => write!(f, "*{name}")?,
                        _ => write!(f, "*{name}^{e}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

enum Solve {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined,
}

/// Fraction-free elimination on the integer system `cols · x = rhs`.
fn bareiss_solve(cols: &[Vec<BigInt>], rhs: &[BigInt]) -> Solve {
    let n = cols.len();
    let rows = rhs.len();
    if rows < n {
        return Solve::Underdetermined;
    }
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).chain([rhs[r].clone()]).collect())
        .collect();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..rows).find(|&r| !m[r][c].is_zero()) else {
            return Solve::Underdetermined;
        };
        m.swap(c, p);
        let (top, rest) = m.split_at_mut(c + 1);
        let piv = &top[c];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                for x in row.iter_mut().skip(c + 1) {
                    *x = &*x * &piv[c] / &prev;
                }
                continue;
            }
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..=n {
                row[j] = (&piv[c] * &row[j] - &lead * &piv[j]) / &prev;
            }
        }
        prev = m[c][c].clone();
    }
    if m[n..].iter().any(|row| !row[n].is_zero()) {
        return Solve::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); n];
    for c in (0..n).rev() {
        let mut s = BigRational::from_integer(m[c][n].clone());
        for j in c + 1..n {
            s -= BigRational::from_integer(m[c][j].clone()) * &x[j];
        }
        x[c] = s / BigRational::from_integer(m[c][c].clone());
    }
    Solve::Unique(x)
}

fn integer_column(s: &QSeries, rows: usize) -> Vec<BigInt> {
    debug_assert!(s.is_integral());
    (0..rows as i64)
        .map(|n| s.coeff_int(n).expect("within the truncation").to_integer())
        .collect()
}

/// Writes a weight-`w` element of `Q[E2, E4, E6]` in the monomial basis.
///
/// Depths are tried in increasing order; at each depth the coefficients are
/// the exact solution of the linear system given by every known coefficient
/// of `f`, so the recombination agrees with `f` wherever `f` is known.
pub fn decompose_quasimodular(f: &QSeries, w: u32) -> Result<QuasiDecomposition> {
    modular_basis(w)?;
    let f = f.coarsened();
    if f.exp_den() != 1 || (!f.is_zero() && f.lead_exp() < 0) {
        return Err(Error::NotQuasimodular(format!(
            "leading exponent {} is not a nonnegative integer",
            f.lead_exponent()
        )));
    }
    let prec = f.trunc();
    if prec <= 0 {
        return Err(Error::InsufficientPrecision("no coefficients are known".into()));
    }
    let rows = prec as usize;
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let rhs: Vec<BigInt> = (0..prec)
        .map(|n| (f.coeff_int(n).expect("within the truncation") * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let pow = |id: FormId, e: u32| catalog(id, prec).pow_int(e as i64).expect("nonnegative power");
    let mut labels: Vec<(u32, u32, u32)> = Vec::new();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for depth in 0..=w / 2 {
        let e2 = pow(FormId::E2, depth);
        for (a, b) in modular_basis(w - 2 * depth)? {
            let s = e2.mul(&pow(FormId::E4, a)).mul(&pow(FormId::E6, b));
            cols.push(integer_column(&s, rows));
            labels.push((depth, a, b));
        }
        if cols.is_empty() {
            if f.is_zero() {
                return Ok(QuasiDecomposition { weight: w, parts: vec![] });
            }
            continue;
        }
        match bareiss_solve(&cols, &rhs) {
            Solve::Unique(x) => {
                let scale = BigRational::from_integer(den);
                let coeffs = x.into_iter().map(|c| c / &scale).collect::<Vec<_>>();
                return Ok(assemble(w, &labels, &coeffs, prec));
            }
            Solve::Inconsistent => continue,
            Solve::Underdetermined => {
                return Err(Error::InsufficientPrecision(format!(
                    "{} coefficients do not determine {} unknowns at depth {depth}",
                    rows,
                    cols.len()
                )))
            }
        }
    }
    Err(Error::NotQuasimodular(format!("no combination of weight {w} matches below q^{prec}")))
}

fn assemble(w: u32, labels: &[(u32, u32, u32)], coeffs: &[BigRational], prec: i64) -> QuasiDecomposition {
    let mut by_depth: BTreeMap<u32, BTreeMap<(u32, u32), BigRational>> = BTreeMap::new();
    for (&(d, a, b), c) in labels.iter().zip(coeffs) {
        if !c.is_zero() {
            by_depth.entry(d).or_default().insert((a, b), c.clone());
        }
    }
    let parts = by_depth
        .into_iter()
        .map(|(depth, monomials)| {
            let modular = monomials.iter().fold(QSeries::zero(1, prec), |acc, ((a, b), c)| {
                let m = catalog(FormId::E4, prec)
                    .pow_int(*a as i64)
                    .expect("nonnegative power")
                    .mul(&catalog(FormId::E6, prec).pow_int(*b as i64).expect("nonnegative power"));
                acc.add(&m.scale(c))
            });
            QuasiPart {
                depth,
                modular,
                monomials,
            }
        })
        .collect();
    QuasiDecomposition { weight: w, parts }
}
