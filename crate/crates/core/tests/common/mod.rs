//! Shared strategies, independent oracles and property checks.
#![allow(dead_code)]

use modsolve::operators::{rc_bracket, serre};
use modsolve::{QSeries, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

pub fn sigma(n: u64, r: u32) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(r)).sum()
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `E2` coefficients `1, −24σ(1), −24σ(2), …`.
pub fn e2_coeffs(len: usize) -> Vec<BigInt> {
    (0..len)
        .map(|n| if n == 0 { BigInt::one() } else { sigma(n as u64, 1) * -24 })
        .collect()
}

/// Coefficients of `L_k f` along `lead + Z`, computed from scratch with
/// integer arithmetic. `None` when `f` has terms off that coset.
pub fn residual_oracle(f: &QSeries, k: Weight, e2: &[BigInt]) -> Option<Vec<BigInt>> {
    if f.has_off_coset_terms() {
        return None;
    }
    let c = f.coset_coeffs();
    let den = c.iter().fold(BigInt::one(), |a, x| num_integer::lcm(a, x.denom().clone()));
    let n: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let rho = f.lead_exponent();
    let (r, g) = (BigInt::from(*rho.numer()), BigInt::from(*rho.denom()));
    let t = BigInt::from(k.twice());
    let t2 = &t + 2;
    // 48g²·L_k f at q^{ρ+m}
    Some(
        (0..n.len())
            .map(|m| {
                let e = |i: usize| &r + &g * BigInt::from(i);
                let mut acc = e(m).pow(2) * &n[m] * 48;
                let mut s2 = BigInt::zero();
                let mut s3 = BigInt::zero();
                for j in 0..=m {
                    if n[m - j].is_zero() {
                        continue;
                    }
                    s2 += &e2[j] * e(m - j) * &n[m - j];
                    if j > 0 {
                        s3 += &e2[j] * BigInt::from(j) * &n[m - j];
                    }
                }
                acc -= &g * 4 * &t2 * s2;
                acc += &g * &g * &t * &t2 * s3;
                acc
            })
            .collect(),
    )
}

/// True when the oracle residual vanishes at every exponent below `q^prec`.
pub fn oracle_solves(f: &QSeries, k: Weight, prec: i64) -> bool {
    let e2 = e2_coeffs((prec + 2) as usize);
    if f.trunc_exponent() < num_rational::Rational64::from_integer(prec) {
        return false;
    }
    let f = f.truncated(num_rational::Rational64::from_integer(prec));
    residual_oracle(&f, k, &e2).is_some_and(|r| r.iter().all(Zero::is_zero))
}

pub fn arb_coeff() -> impl Strategy<Value = BigRational> {
    (-60i64..60, 1i64..7).prop_map(|(n, d)| ratio(n, d))
}

/// Random series on a small grid with a random leading exponent.
pub fn arb_series() -> impl Strategy<Value = QSeries> {
    (prop::sample::select(vec![1u32, 2, 3, 4, 6]), -4i64..6, prop::collection::vec(arb_coeff(), 0..12))
        .prop_map(|(g, lead, c)| QSeries::from_coeffs(g, lead, &c))
}

pub fn arb_nonzero_series() -> impl Strategy<Value = QSeries> {
    arb_series().prop_filter("nonzero", |s| !s.is_zero())
}

pub fn arb_weight() -> impl Strategy<Value = Weight> {
    (-6i64..40).prop_map(Weight::half)
}

fn ensure(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn ring_axioms(a: &QSeries, b: &QSeries, c: &QSeries) -> Result<(), TestCaseError> {
    ensure(a.add(b) == b.add(a), "a+b = b+a")?;
    ensure(a.mul(b) == b.mul(a), "ab = ba")?;
    ensure(a.add(b).add(c).agrees_with(&a.add(&b.add(c))), "(a+b)+c = a+(b+c)")?;
    ensure(a.mul(b).mul(c).agrees_with(&a.mul(&b.mul(c))), "(ab)c = a(bc)")?;
    ensure(a.mul(&b.add(c)).agrees_with(&a.mul(b).add(&a.mul(c))), "a(b+c) = ab+ac")?;
    ensure(a.sub(a).is_zero(), "a-a = 0")?;
    ensure(a.add(&QSeries::zero(1, 100)) == *a, "a+0 = a")?;
    ensure(a.mul(&QSeries::one(100)).agrees_with(a), "a*1 = a")?;
    ensure(a.neg().neg() == *a, "--a = a")?;
    Ok(())
}

pub fn leibniz(f: &QSeries, g: &QSeries, k: Weight, l: Weight) -> Result<(), TestCaseError> {
    let fg = f.mul(g);
    let lhs = fg.theta_deriv();
    let rhs = f.theta_deriv().mul(g).add(&f.mul(&g.theta_deriv()));
    ensure(lhs.agrees_with(&rhs), "(fg)' = f'g + fg'")?;
    let kl = Weight::new(k.value() + l.value()).expect("sum of half-integers");
    let s = serre(&fg, kl);
    let t = serre(f, k).mul(g).add(&f.mul(&serre(g, l)));
    ensure(s.agrees_with(&t), "serre Leibniz rule")
}

pub fn antisymmetry(f: &QSeries, g: &QSeries, k: Weight, l: Weight) -> Result<(), TestCaseError> {
    let a = rc_bracket(f, k, g, l);
    let b = rc_bracket(g, l, f, k).neg();
    ensure(a.agrees_with(&b), "[f,g] = -[g,f]")?;
    ensure(rc_bracket(f, k, f, k).is_zero(), "[f,f] = 0")
}

/// Operations on truncations never claim a coefficient that the exact result contradicts.
pub fn precision_honesty(f: &QSeries, g: &QSeries, cut_f: i64, cut_g: i64) -> Result<(), TestCaseError> {
    let tf = f.truncated(f.lead_exponent() + cut_f);
    let tg = g.truncated(g.lead_exponent() + cut_g);
    let pairs = [(tf.add(&tg), f.add(g)), (tf.mul(&tg), f.mul(g)), (tf.theta_deriv(), f.theta_deriv())];
    for (short, full) in pairs {
        ensure(short.agrees_with(&full), "truncated result contradicts the full one")?;
        ensure(short.trunc_exponent() <= full.trunc_exponent(), "truncated result claims more precision")?;
    }
    if !tg.is_zero() {
        let short = tf.div(&tg).expect("nonzero divisor");
        let full = f.div(g).expect("nonzero divisor");
        ensure(short.agrees_with(&full), "truncated quotient contradicts the full one")?;
        ensure(short.trunc_exponent() <= full.trunc_exponent(), "truncated quotient claims more precision")?;
    }
    Ok(())
}

pub fn json_round_trip(s: &QSeries) -> Result<(), TestCaseError> {
    let back = QSeries::from_json(&s.to_json()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure(
        back == *s && back.exp_den() == s.exp_den() && back.trunc() == s.trunc() && back.coeffs() == s.coeffs(),
        "JSON round trip",
    )
}

/// Runs the five property suites with `CASES` random instances each; one entry per suite.
pub fn run_property_suites() -> Vec<(&'static str, Result<(), String>)> {
    let cfg = || Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let mut out = Vec::new();
    let mut r = TestRunner::new(cfg());
    out.push((
        "ring axioms",
        r.run(&(arb_series(), arb_series(), arb_series()), |(a, b, c)| ring_axioms(&a, &b, &c))
            .map_err(|e| e.to_string()),
    ));
    let mut r = TestRunner::new(cfg());
    out.push((
        "Leibniz rule",
        r.run(&(arb_series(), arb_series(), arb_weight(), arb_weight()), |(f, g, k, l)| leibniz(&f, &g, k, l))
            .map_err(|e| e.to_string()),
    ));
    let mut r = TestRunner::new(cfg());
    out.push((
        "bracket antisymmetry",
        r.run(&(arb_series(), arb_series(), arb_weight(), arb_weight()), |(f, g, k, l)| {
            antisymmetry(&f, &g, k, l)
        })
        .map_err(|e| e.to_string()),
    ));
    let mut r = TestRunner::new(cfg());
    out.push((
        "precision honesty",
        r.run(&(arb_nonzero_series(), arb_nonzero_series(), 0i64..12, 0i64..12), |(f, g, a, b)| {
            precision_honesty(&f, &g, a, b)
        })
        .map_err(|e| e.to_string()),
    ));
    let mut r = TestRunner::new(cfg());
    out.push((
        "JSON round trip",
        r.run(&arb_series(), |s| json_round_trip(&s)).map_err(|e| e.to_string()),
    ));
    out
}
