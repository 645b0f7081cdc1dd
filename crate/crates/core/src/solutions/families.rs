//! The finite hypergeometric sums for the four modular residue classes.
//!
//! Every generator has the shape `Σ_i c_i · X^{a_i} · Y^{b_i}` (times `E6`
//! in one level-one case) with catalog forms `X` (cusp-like) and `Y`
//! (Eisenstein-like), so all sums are evaluated from two power tables.

use num_rational::BigRational;
use num_traits::Zero;

use super::{classify_weight, hyper_coeff, ResidueClass};
use crate::error::{Error, Result};
use crate::forms::{catalog, FormId};
use crate::qseries::{int, rat, Exponent, QSeries, Weight};

/// `[1, b, b², …, b^max]`, each exact below `q^prec`.
fn powers(base: &QSeries, max: usize, prec: i64) -> Vec<QSeries> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(QSeries::one(prec));
    for i in 1..=max {
        let next = if i == 1 { base.clone() } else { out[i - 1].mul(base) };
        out.push(next);
    }
    out
}

struct Term {
    coeff: BigRational,
    x_pow: usize,
    y_pow: usize,
}

/// `Σ coeff · X^x_pow · Y^y_pow`, truncated to `q^prec`.
fn evaluate(x: FormId, y: FormId, terms: &[Term], prec: i64) -> QSeries {
    let xs = powers(&catalog(x, prec), terms.iter().map(|t| t.x_pow).max().unwrap_or(0), prec);
    let ys = powers(&catalog(y, prec), terms.iter().map(|t| t.y_pow).max().unwrap_or(0), prec);
    let mut acc: Option<QSeries> = None;
    for t in terms.iter().filter(|t| !t.coeff.is_zero()) {
        let term = xs[t.x_pow].mul(&ys[t.y_pow]).scale(&t.coeff);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(|| QSeries::zero(1, prec))
        .truncated(Exponent::from_integer(prec))
}

/// Terms `c_i·scale^i·X^{x_pow(i)}·Y^{y_pow(i)}` for `0 ≤ i ≤ bound` with
/// `c_i = (a)_i (b)_i / ((c)_i i!)`.
fn hyper_terms(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    scale: i64,
    bound: usize,
    x_pow: &dyn Fn(usize) -> usize,
    y_pow: &dyn Fn(usize) -> usize,
) -> Vec<Term> {
    let mut s = int(1);
    (0..=bound)
        .map(|i| {
            let t = Term {
                coeff: hyper_coeff(a, b, c, i as u32) * &s,
                x_pow: x_pow(i),
                y_pow: y_pow(i),
            };
            s *= int(scale);
            t
        })
        .collect()
}

fn unsupported(k: Weight, class: ResidueClass) -> Error {
    Error::UnsupportedClass {
        weight: k.to_string(),
        class,
    }
}

fn to_index(r: &BigRational) -> usize {
    let v = r.to_integer();
    usize::try_from(v).expect("nonnegative exponent")
}

/// The generator normalized as `1 + O(q)`, exact below `q^prec`.
pub fn solve_normalized(k: Weight, prec: i64) -> Result<QSeries> {
    let class = classify_weight(k)?;
    let kk = k.to_big();
    let c_den = -(&kk - int(5)) * rat(1, 6);
    let build = |a, b, scale, bound, x_pow: &dyn Fn(usize) -> usize, y_pow: &dyn Fn(usize) -> usize| {
        hyper_terms(&a, &b, &c_den, scale, bound, x_pow, y_pow)
    };
    match class {
        ResidueClass::Lvl1 => {
            let n = k.as_int().expect("integral");
            if n % 12 == 0 || n % 12 == 4 {
                // Σ_{i ≤ k/12} Δ^i E4^{k/4 - 3i}
                let e = (n / 4) as usize;
                let terms = build(-&kk * rat(1, 12), -(&kk - int(4)) * rat(1, 12), 1728, (n / 12) as usize, &|i| i, &|i| e - 3 * i);
                Ok(evaluate(FormId::Delta, FormId::E4, &terms, prec))
            } else {
                // E6 · Σ_{i ≤ (k-6)/12} Δ^i E4^{(k-6)/4 - 3i}
                let e = ((n - 6) / 4) as usize;
                let terms = build(-(&kk - int(6)) * rat(1, 12), -(&kk - int(10)) * rat(1, 12), 1728, ((n - 6) / 12) as usize, &|i| i, &|i| e - 3 * i);
                let s = evaluate(FormId::Delta, FormId::E4, &terms, prec);
                Ok(s.mul(&catalog(FormId::E6, prec)).truncated(Exponent::from_integer(prec)))
            }
        }
        ResidueClass::Lvl2 => {
            // Σ_{i ≤ k/4} A^i B^{k/2 - 2i}
            let n = k.as_int().expect("integral");
            let half = (n / 2) as usize;
            let terms = build(-&kk * rat(1, 4), -(&kk - int(2)) * rat(1, 4), 64, (n / 4) as usize, &|i| i, &|i| half - 2 * i);
            Ok(evaluate(FormId::Delta4_2, FormId::E2_2, &terms, prec))
        }
        ResidueClass::Lvl3 => {
            // Σ_{i ≤ k/3} Δ3^i E1^{k - 3i}
            let n = k.as_int().expect("integral") as usize;
            let terms = build(-&kk * rat(1, 3), -(&kk - int(1)) * rat(1, 3), 27, n / 3, &|i| i, &|i| n - 3 * i);
            Ok(evaluate(FormId::Delta3_3, FormId::E1_3, &terms, prec))
        }
        ResidueClass::Lvl4 => {
            // k = (6n+1)/2: Σ_{i ≤ n} Δ2^i θ3(2τ)^{2k - 4i}
            let two_k = k.twice() as usize;
            let n = (two_k - 1) / 6;
            let terms = build(-(&kk * int(2) - int(1)) * rat(1, 6), -&kk * rat(1, 2), 16, n, &|i| i, &|i| two_k - 4 * i);
            Ok(evaluate(FormId::Delta2_4, FormId::Theta3TwoTau, &terms, prec))
        }
        ResidueClass::Quasi | ResidueClass::NoneKnown => Err(unsupported(k, class)),
    }
}

/// The generator normalized as `q^{(k+1)/6} + O(q^{(k+7)/6})`, exact below `q^prec`.
pub fn solve_cuspidal(k: Weight, prec: i64) -> Result<QSeries> {
    let class = classify_weight(k)?;
    let kk = k.to_big();
    let c_den = (&kk + int(7)) * rat(1, 6);
    let build = |a, b, scale, bound, x_pow: &dyn Fn(usize) -> usize, y_pow: &dyn Fn(usize) -> usize| {
        hyper_terms(&a, &b, &c_den, scale, bound, x_pow, y_pow)
    };
    match class {
        ResidueClass::Lvl2 => {
            // Σ_{i ≤ (k-2)/12} √A^{(k+1)/3 + 2i} B^{(k-2)/6 - 2i}
            let n = k.as_int().expect("integral");
            let x0 = to_index(&((&kk + int(1)) * rat(1, 3)));
            let y0 = ((n - 2) / 6) as usize;
            let terms = build(-(&kk - int(2)) * rat(1, 12), -(&kk - int(8)) * rat(1, 12), 64, ((n - 2) / 12) as usize, &|i| x0 + 2 * i, &|i| y0 - 2 * i);
            Ok(evaluate(FormId::SqrtDelta4_2, FormId::E2_2, &terms, prec))
        }
        ResidueClass::Lvl3 => {
            // Σ_{i ≤ (k-1)/6} ∛Δ3^{(k+1)/2 + 3i} E1^{(k-1)/2 - 3i}
            let n = k.as_int().expect("integral");
            let x0 = ((n + 1) / 2) as usize;
            let y0 = ((n - 1) / 2) as usize;
            let terms = build(-(&kk - int(1)) * rat(1, 6), -(&kk - int(3)) * rat(1, 6), 27, ((n - 1) / 6) as usize, &|i| x0 + 3 * i, &|i| y0 - 3 * i);
            Ok(evaluate(FormId::CbrtDelta3_3, FormId::E1_3, &terms, prec))
        }
        ResidueClass::Lvl4 => {
            // k = (6n+1)/2: Σ_{i ≤ n} (θ2(2τ)/2)^{2n+1+4i} E2_4^{n-i}
            let n = ((k.twice() - 1) / 6) as usize;
            let terms = build(-(&kk * int(2) - int(1)) * rat(1, 6), -(&kk - int(2)) * rat(1, 6), 16, n, &|i| 2 * n + 1 + 4 * i, &|i| n - i);
            Ok(evaluate(FormId::HalfTheta2TwoTau, FormId::E2_4, &terms, prec))
        }
        _ => Err(unsupported(k, class)),
    }
}
