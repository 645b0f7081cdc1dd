mod common;

use std::time::{Duration, Instant};

use common::*;
use modsolve::analysis::{
    alpha_bound_check, char3_case_check, char3_closed_form, check_positivity, decompose_quasimodular,
    expand_in_inv_j, halfint_sign_window, identity_suite, sigma_gap_identity, CfTarget,
};
use modsolve::forms::{catalog, FormId};
use modsolve::solutions::{
    ascend_ladder, classify_weight, descend, frobenius_solve, pq_polynomials, quasimodular_solution,
    solve_cuspidal, solve_normalized, Branch, PolyQ, ResidueClass,
};
use modsolve::{Exponent, QSeries, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| ratio(x, 1)).collect()
}

fn exp(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

/// `(form, leading exponent, printed coefficients along lead + Z)`.
fn printed_expansions() -> Vec<(FormId, Exponent, Vec<i64>)> {
    use FormId::*;
    let e = Exponent::new;
    vec![
        (E2, e(0, 1), vec![1, -24, -72, -96]),
        (E4, e(0, 1), vec![1, 240, 2160, 6720]),
        (E6, e(0, 1), vec![1, -504, -16632, -122976]),
        (Delta, e(1, 1), vec![1, -24, 252, -1472]),
        (J, e(-1, 1), vec![1, 744, 196884, 21493760]),
        (Eta, e(1, 24), vec![1, -1, -1, 0, 0, 1]),
        (E2_2, e(0, 1), vec![1, 24, 24, 96]),
        (Delta4_2, e(1, 1), vec![1, 8, 28, 64]),
        (J2, e(-1, 1), vec![1, 40, 276, -2048]),
        (SqrtDelta4_2, e(1, 2), vec![1, 4, 6, 8]),
        (E1_3, e(0, 1), vec![1, 6, 0, 6, 6]),
        (Delta3_3, e(1, 1), vec![1, 3, 9, 13]),
        (J3, e(-1, 1), vec![1, 15, 54, -76]),
        (CbrtDelta3_3, e(1, 3), vec![1, 1, 2, 0, 2]),
        (E2_4, e(0, 1), vec![1, 8, 24, 32, 24]),
        (Delta2_4, e(1, 1), vec![1, 0, 4, 0, 6, 0, 8]),
        (J4, e(-1, 1), vec![1, 8, 20, 0, -62, 0, 216]),
        (Theta3TwoTau, e(0, 1), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]),
        (HalfTheta2TwoTau, e(1, 4), vec![1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1]),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (id, lead, coeffs) in printed_expansions() {
        let s = catalog(id, 20);
        if s.lead_exponent() != lead {
            return Err(format!("{} starts at q^{}", id.name(), s.lead_exponent()));
        }
        for (m, &c) in coeffs.iter().enumerate() {
            let got = s.coeff(lead + m as i64).expect("within the truncation");
            if got != ratio(c, 1) {
                return Err(format!("{}: coefficient of q^{} is {got}, printed {c}", id.name(), lead + m as i64));
            }
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(1) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("19 forms match in {t:?}"))
}

/// Weights covered by the closed-form sums: integers up to 60 outside the
/// quasimodular class and half-integers `(6n+1)/2` up to 121/2.
fn theorem_one_weights() -> Vec<Weight> {
    let mut w: Vec<Weight> = (0..=60)
        .map(Weight::int)
        .filter(|&k| classify_weight(k).unwrap() != ResidueClass::Quasi)
        .collect();
    w.extend((0..=20).map(|n| Weight::half(6 * n + 1)));
    w
}

fn has_cuspidal(k: Weight) -> bool {
    matches!(
        classify_weight(k).unwrap(),
        ResidueClass::Lvl2 | ResidueClass::Lvl3 | ResidueClass::Lvl4
    )
}

fn check_generator(f: &QSeries, k: Weight, lead: Exponent, prec: i64) -> Result<(), String> {
    if f.lead_exponent() != lead || f.lead_coeff() != Some(ratio(1, 1)) {
        return Err(format!("weight {k}: leading term {:?} q^{}", f.lead_coeff(), f.lead_exponent()));
    }
    if f.has_off_coset_terms() {
        return Err(format!("weight {k}: terms off q^{lead}·Z"));
    }
    if !oracle_solves(f, k, prec) {
        return Err(format!("weight {k}: residual does not vanish below q^{prec}"));
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let prec = 201;
    let jobs: Vec<(Weight, bool)> = theorem_one_weights()
        .into_iter()
        .flat_map(|k| {
            let mut v = vec![(k, false)];
            if has_cuspidal(k) {
                v.push((k, true));
            }
            v
        })
        .collect();
    let results: Vec<Result<(), String>> = jobs
        .par_iter()
        .map(|&(k, cusp)| {
            if cusp {
                let f = solve_cuspidal(k, prec).map_err(|e| e.to_string())?;
                check_generator(&f, k, (k.value() + 1) / 6, prec)
            } else {
                let f = solve_normalized(k, prec).map_err(|e| e.to_string())?;
                check_generator(&f, k, exp(0), prec)
            }
        })
        .collect();
    let bad: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    let t = start.elapsed();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if t > Duration::from_secs(120) {
        return Err(format!("{} generators verified but took {t:?}", jobs.len()));
    }
    Ok(format!("{} generators verified below q^{prec} in {t:?}", jobs.len()))
}

fn criterion_3() -> Outcome {
    let prec = 151;
    let bad: Vec<String> = (0..=12u32)
        .into_par_iter()
        .filter_map(|n| {
            let k = Weight::int(6 * n as i64 + 5);
            let f = quasimodular_solution(n, prec);
            let lead_ok = f.lead_exponent() == exp(n as i64 + 1);
            (!lead_ok || !oracle_solves(&f, k, prec)).then(|| format!("n = {n}"))
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!("residual or leading exponent wrong at {}", bad.join(", ")));
    }
    let printed: [(u32, &[i64], &[i64]); 3] = [
        (2, &[462, 0, 1], &[0, 1]),
        (3, &[0, 904, 0, 1], &[442, 0, 1]),
        (4, &[201894, 0, 1341, 0, 1], &[0, 879, 0, 1]),
    ];
    for (n, p, q) in printed {
        let (pn, qn) = pq_polynomials(n);
        if pn != PolyQ::from_ints(p) || qn != PolyQ::from_ints(q) {
            return Err(format!("P_{n} = {pn}, Q_{n} = {qn}"));
        }
    }
    Ok("n = 0..12 solve below q^151; P2-P4, Q2-Q4 match".into())
}

/// `E4'/240 = Σ n·σ3(n) q^n`, from divisor sums.
fn e4_prime_over_240(prec: i64) -> QSeries {
    let c: Vec<BigRational> = (0..prec)
        .map(|n| BigRational::from_integer(BigInt::from(n) * sigma(n.max(1) as u64, 3)))
        .collect();
    QSeries::from_coeffs(1, 0, &c)
}

fn criterion_4() -> Outcome {
    let prec = 101;
    let rungs = 8u32;
    let seeds: Vec<Weight> = [1, 2, 4, 6, 7, 8, 12, 20].into_iter().map(Weight::half).collect();
    let mut jobs = Vec::new();
    for &k in &seeds {
        jobs.push((k, false));
        if has_cuspidal(k) {
            jobs.push((k, true));
        }
    }
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(k, cusp)| {
            let build = |w: Weight, p: i64| if cusp { solve_cuspidal(w, p) } else { solve_normalized(w, p) };
            let run = || -> Result<(), String> {
                let seed = build(k, prec + 2).map_err(|e| e.to_string())?;
                let lower = if k == Weight::int(4) {
                    QSeries::zero(1, prec + 2)
                } else {
                    descend(&seed, k).map_err(|e| e.to_string())?
                };
                let st = ascend_ladder(k, &seed, &lower, rungs).map_err(|e| e.to_string())?;
                for (w, f) in &st.rungs {
                    let want = build(*w, prec).map_err(|e| e.to_string())?;
                    let got = f.truncated(exp(prec));
                    let same = if cusp { got.monic() == want } else { got == want };
                    if !same {
                        return Err(format!("rung of weight {w} differs at q^{:?}", got.first_difference(&want)));
                    }
                }
                Ok(())
            };
            run().err().map(|e| format!("seed {k}{}: {e}", if cusp { " (cuspidal)" } else { "" }))
        })
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let f11 = quasimodular_solution(1, prec + 1);
    let d = descend(&f11, Weight::int(11)).map_err(|e| e.to_string())?;
    let want = e4_prime_over_240(prec);
    if d != want {
        return Err(format!("descend(F11) differs from E4'/240 at {:?}", d.first_difference(&want)));
    }
    Ok(format!("{} ladders of {rungs} rungs agree below q^{prec}; descend(F11) = E4'/240", jobs.len()))
}

fn criterion_5() -> Outcome {
    let prec = 101;
    let mut jobs: Vec<(Weight, &str)> = Vec::new();
    for k in theorem_one_weights() {
        jobs.push((k, "normalized"));
        if has_cuspidal(k) {
            jobs.push((k, "cuspidal"));
        }
    }
    for n in 0..=12 {
        jobs.push((Weight::int(6 * n + 5), "quasi"));
    }
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(k, fam)| {
            let run = || -> Result<bool, String> {
                let e = |x: modsolve::Error| x.to_string();
                Ok(match fam {
                    "normalized" => frobenius_solve(k, Branch::Zero, prec).map_err(e)? == solve_normalized(k, prec).map_err(e)?,
                    "cuspidal" => frobenius_solve(k, Branch::Cusp, prec).map_err(e)? == solve_cuspidal(k, prec).map_err(e)?,
                    _ => {
                        let n = ((k.as_int().unwrap() - 5) / 6) as u32;
                        frobenius_solve(k, Branch::Cusp, prec).map_err(e)? == quasimodular_solution(n, prec).monic()
                    }
                })
            };
            match run() {
                Ok(true) => None,
                Ok(false) => Some(format!("{fam} {k} differs")),
                Err(e) => Some(format!("{fam} {k}: {e}")),
            }
        })
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    Ok(format!("{} closed forms equal the recurrence below q^{prec}", jobs.len()))
}

fn criterion_6() -> Outcome {
    let a = expand_in_inv_j(&CfTarget::E4pOverE6.series(10), 3).map_err(|e| e.to_string())?;
    let b = expand_in_inv_j(&CfTarget::Atkin.series(10), 3).map_err(|e| e.to_string())?;
    if a != ints(&[1, 1266, 1806960]) || b != ints(&[1, 720, 911520]) {
        return Err(format!("got {a:?} and {b:?}"));
    }
    Ok("[1, 1266, 1806960] and [1, 720, 911520]".into())
}

fn criterion_7() -> Outcome {
    let prec = 301;
    let weights: Vec<Weight> = [4, 16, 28, 40, 52, 2, 6, 14, 18, 26, 1, 7, 13, 25]
        .into_iter()
        .map(Weight::half)
        .collect();
    let mut problems: Vec<String> = weights
        .par_iter()
        .filter_map(|&k| {
            let f = match solve_cuspidal(k, prec) {
                Ok(f) => f,
                Err(e) => return Some(format!("k = {k}: {e}")),
            };
            match check_positivity(&f, exp(prec)) {
                Ok(r) if r.is_all_positive() => None,
                Ok(r) => Some(format!("k = {k}: {r}")),
                Err(e) => Some(format!("k = {k}: {e}")),
            }
        })
        .collect();
    for alpha in [ratio(0, 1), ratio(4, 1), ratio(799, 100)] {
        let r = alpha_bound_check(&alpha, prec).map_err(|e| e.to_string())?;
        if !r.is_all_positive() {
            problems.push(format!("alpha = {alpha}: {r}"));
        }
    }
    let sharp = alpha_bound_check(&ratio(8, 1), prec).map_err(|e| e.to_string())?;
    if sharp.is_all_positive() || sharp.first_nonpositive.as_deref() != Some("1") {
        problems.push(format!("alpha = 8 is not sharp at q: {sharp}"));
    }
    if let Some(n) = (1..=10_000).find(|&n| !sigma_gap_identity(n).1) {
        problems.push(format!("sigma gap fails at n = {n}"));
    }
    for p in (2..100u64).filter(|&p| (2..p).all(|d| p % d != 0)) {
        for e in 0..=6 {
            if char3_case_check(p, e).unwrap() != char3_closed_form(p, e).unwrap() {
                problems.push(format!("character sums at {p}^{e}"));
            }
        }
    }
    if let Some(n) = (0..=50).find(|&n| !halfint_sign_window(n)) {
        problems.push(format!("sign window fails at n = {n}"));
    }
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    Ok("14 cuspidal solutions positive below q^301; lemmas hold".into())
}

fn criterion_8() -> Outcome {
    let r = identity_suite(201);
    if !r.all_passed() {
        let f: Vec<String> = r.failures().map(|c| format!("{} {:?}", c.name, c.detail)).collect();
        return Err(f.join("; "));
    }
    Ok(format!("{} identities hold below q^201", r.checks.len()))
}

fn criterion_9() -> Outcome {
    let prec = 80;
    for n in 0..=8u32 {
        let f = quasimodular_solution(n, prec);
        let w = 6 * n + 6;
        let d = decompose_quasimodular(&f, w).map_err(|e| format!("n = {n}: {e}"))?;
        if d.recombine(prec) != f {
            return Err(format!("n = {n}: recombination differs"));
        }
        if n == 0 {
            let want = "(-1/720)*E6 + (1/720)*E2*E4";
            if d.to_string() != want {
                return Err(format!("n = 0 gives {d}"));
            }
        }
    }
    Ok("n = 0..8 decompose and recombine; F5 = E2*E4/720 - E6/720".into())
}

fn criterion_10() -> Outcome {
    let results = run_property_suites();
    let bad: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    Ok(format!("{} suites x {CASES} cases", results.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("catalog fidelity", criterion_1),
        ("closed-form solutions", criterion_2),
        ("quasimodular solutions", criterion_3),
        ("ladder", criterion_4),
        ("recurrence oracle", criterion_5),
        ("1/j expansions", criterion_6),
        ("positivity", criterion_7),
        ("identity suite", criterion_8),
        ("quasimodular decomposition", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let t = start.elapsed();
        match &out {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg} [{t:.1?}]", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL {name}: {msg} [{t:.1?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
