//! Regression suite of identities between catalog forms, lattice theta
//! series and solutions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::forms::{alternate_recipe, catalog, FormId};
use crate::operators::{e2_prime, serre};
use crate::qseries::{rat, Exponent, QSeries, Weight};
use crate::solutions::{hyper_coeff, solve_cuspidal, solve_normalized};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    /// First exponent where the sides differ, or a note on missing precision.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked_below: i64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{n}/{} identities hold below q^{}", self.checks.len(), self.checked_below)
    }
}

fn compare(name: impl Into<String>, lhs: &QSeries, rhs: &QSeries, prec: i64) -> IdentityCheck {
    let p = Exponent::from_integer(prec);
    let name = name.into();
    for (side, s) in [("left", lhs), ("right", rhs)] {
        if s.trunc_exponent() < p {
            return IdentityCheck {
                name,
                passed: false,
                detail: Some(format!("{side} side known only below q^{}", s.trunc_exponent())),
            };
        }
    }
    match lhs.truncated(p).first_difference(&rhs.truncated(p)) {
        None => IdentityCheck {
            name,
            passed: true,
            detail: None,
        },
        Some(e) => IdentityCheck {
            name,
            passed: false,
            detail: Some(format!("sides differ at q^{e}")),
        },
    }
}

/// `θ` series of a one-dimensional shape: `Σ sign(n)·q^{(n+shift)²/2}` over
/// `n ∈ Z`, on the grid `1/8`.
fn jacobi(shift_half: bool, alternating: bool, prec: i64) -> QSeries {
    let trunc = 8 * prec;
    let mut num = vec![BigInt::zero(); trunc.max(0) as usize];
    // exponent (n + s)²/2 = (2n + 2s)²/8
    let mut n = 0i64;
    loop {
        let m = if shift_half { 2 * n + 1 } else { 2 * n };
        let e = m * m;
        if e >= trunc {
            break;
        }
        let sign = if alternating && n % 2 == 1 { -1 } else { 1 };
        let mult = if shift_half || n > 0 { 2 } else { 1 };
        num[e as usize] += sign * mult;
        n += 1;
    }
    QSeries::from_integers(8, 0, num)
}

/// `Σ_{n ∈ Z} q^{n²/d}`.
fn unary_theta(d: i64, prec: i64) -> QSeries {
    let trunc = d * prec;
    let mut num = vec![BigInt::zero(); trunc.max(0) as usize];
    let mut n = 0i64;
    while n * n < trunc {
        num[(n * n) as usize] += if n == 0 { 1 } else { 2 };
        n += 1;
    }
    QSeries::from_integers(d as u32, 0, num).coarsened()
}

/// `Σ_{v ∈ Z²} q^{Q(v)}` for the binary form `Q(a, b) = (p a² + r ab + p b²)/d`.
fn binary_theta(p: i64, r: i64, d: i64, prec: i64) -> QSeries {
    let trunc = d * prec;
    let mut num = vec![BigInt::zero(); trunc.max(0) as usize];
    // Q ≥ (p − |r|/2)(a² + b²)/d
    let bound = ((trunc as f64) / (p as f64 - r.abs() as f64 / 2.0)).sqrt().ceil() as i64 + 1;
    for a in -bound..=bound {
        for b in -bound..=bound {
            let v = p * a * a + r * a * b + p * b * b;
            if v < trunc {
                num[v as usize] += 1;
            }
        }
    }
    QSeries::from_integers(d as u32, 0, num).coarsened()
}

/// Theta series `Σ_{v∈L} q^{(v,v)/2}` of the named lattice, built from its
/// Gram matrix or its coset description.
pub fn lattice_theta(name: &str, prec: i64) -> Option<QSeries> {
    let t3 = || jacobi(false, false, prec);
    let t4 = || jacobi(false, true, prec);
    let t2 = || jacobi(true, false, prec);
    let pow = |s: QSeries, e: i64| s.pow_int(e).expect("nonnegative power");
    let half = rat(1, 2);
    let s = match name {
        "A1" => unary_theta(1, prec),
        "A1*" => unary_theta(4, prec),
        "A2" => binary_theta(1, -1, 1, prec),
        "A2*" => binary_theta(1, 1, 3, prec),
        "D4" => pow(t3(), 4).add(&pow(t4(), 4)).scale(&half),
        "D4*" => pow(t3(), 4).add(&pow(t2(), 4)),
        "E8" => pow(t3(), 8).add(&pow(t4(), 8)).add(&pow(t2(), 8)).scale(&half),
        _ => return None,
    };
    Some(s.coarsened())
}

/// Lattices whose theta series are solutions, with the weight and the
/// multiple of the cuspidal solution added to the normalized one; weights
/// are given doubled.
pub const LATTICE_SOLUTIONS: [(&str, i64, i64); 7] = [
    ("A1", 1, 0),
    ("A1*", 1, 2),
    ("A2", 2, 0),
    ("A2*", 2, 6),
    ("D4", 4, 0),
    ("D4*", 4, 24),
    ("E8", 8, 0),
];

fn lattice_check(name: &str, k: Weight, cusp_mult: i64, prec: i64) -> IdentityCheck {
    let theta = lattice_theta(name, prec).expect("registered lattice");
    let mut sol = solve_normalized(k, prec).expect("lattice weights are solvable");
    if cusp_mult != 0 {
        let c = solve_cuspidal(k, prec).expect("lattice weights are solvable");
        sol = sol.add(&c.scale_int(cusp_mult));
    }
    compare(format!("Theta_{name} = solution of weight {k}"), &theta, &sol, prec)
}

/// `F(a, b, c; y)` summed while `y^i` still matters below `q^prec`.
fn hyper(a: &BigRational, b: &BigRational, c: &BigRational, y: &QSeries, prec: i64) -> QSeries {
    let mut acc = QSeries::one(prec);
    let mut pw = QSeries::one(prec);
    for i in 1..=prec.max(0) as u32 {
        let coef = hyper_coeff(a, b, c, i);
        pw = pw.mul(y);
        if coef.is_zero() {
            break;
        }
        acc = acc.add(&pw.scale(&coef));
    }
    acc
}

/// The three-term relation between hypergeometric sums behind the level-two
/// ladder, multiplied through by `A³` (`x = B²/A`, `A = Δ4^{(2)}`, `B = E2^{(2)}`):
///
/// `B⁶·F₁ = (B⁶ − 576AB⁴)·F₂ + C·(AB⁴ − 128A²B² + 4096A³)·F₃`.
fn level_two_ladder_relation(k: i64, prec: i64) -> IdentityCheck {
    let p = prec + 1;
    let a = catalog(FormId::Delta4_2, p);
    let b = catalog(FormId::E2_2, p);
    let b2 = b.square();
    let y = a.scale_int(64).div(&b2).expect("E2_2 is a unit");
    let f = |x: i64, y_: i64, z: i64| hyper(&rat(-x, 4), &rat(-y_, 4), &rat(-z, 6), &y, p);
    let f1 = f(k + 6, k + 4, k + 1);
    let f2 = f(k, k - 2, k - 5);
    let f3 = f(k - 6, k - 8, k - 11);
    let c = rat(432 * k * (k - 4), (k - 5) * (k + 1));
    let b4 = b2.square();
    let b6 = b4.mul(&b2);
    let ab4 = a.mul(&b4);
    let a2b2 = a.square().mul(&b2);
    let a3 = a.square().mul(&a);
    let lhs = b6.mul(&f1);
    let rhs = b6
        .sub(&ab4.scale_int(576))
        .mul(&f2)
        .add(&ab4.sub(&a2b2.scale_int(128)).add(&a3.scale_int(4096)).mul(&f3).scale(&c));
    compare(format!("level-two ladder relation of hypergeometric sums at k = {k}"), &lhs, &rhs, prec)
}

/// Every registered identity checked below `q^prec`.
pub fn identity_suite(prec: i64) -> IdentityReport {
    let p = prec + 2;
    let g = |id| catalog(id, p);
    let (a, b) = (g(FormId::Delta4_2), g(FormId::E2_2));
    let (e2, e4, e6, d) = (g(FormId::E2), g(FormId::E4), g(FormId::E6), g(FormId::Delta));
    let mut checks = vec![
        compare("E4 = 192*Delta4_2 + E2_2^2", &e4, &a.scale_int(192).add(&b.square()), prec),
        compare(
            "serre_4(Delta4_2) = (2/3)*Delta4_2*E2_2",
            &serre(&a, Weight::int(4)),
            &a.mul(&b).scale(&rat(2, 3)),
            prec,
        ),
        compare(
            "serre_2(E2_2) = 32*Delta4_2 - E2_2^2/6",
            &serre(&b, Weight::int(2)),
            &a.scale_int(32).sub(&b.square().scale(&rat(1, 6))),
            prec,
        ),
        compare(
            "E6 = E2_2^3 - 576*Delta4_2*E2_2",
            &e6,
            &b.pow_int(3).expect("power").sub(&a.mul(&b).scale_int(576)),
            prec,
        ),
        compare(
            "Delta = Delta4_2*E2_2^4 - 128*Delta4_2^2*E2_2^2 + 4096*Delta4_2^3",
            &d,
            &a.mul(&b.pow_int(4).expect("power"))
                .sub(&a.square().mul(&b.square()).scale_int(128))
                .add(&a.pow_int(3).expect("power").scale_int(4096)),
            prec,
        ),
        compare("E2' = (E2^2 - E4)/12", &e2_prime(p), &e2.square().sub(&e4).scale(&rat(1, 12)), prec),
        compare("E4' = (E2*E4 - E6)/3", &e4.theta_deriv(), &e2.mul(&e4).sub(&e6).scale(&rat(1, 3)), prec),
        compare("Delta' = E2*Delta", &d.theta_deriv(), &e2.mul(&d), prec),
        compare("Delta = (E4^3 - E6^2)/1728", &d, &e4.pow_int(3).expect("power").sub(&e6.square()).scale(&rat(1, 1728)), prec),
        compare("sqrtDelta4_2^2 = Delta4_2", &g(FormId::SqrtDelta4_2).square(), &a, prec),
        compare(
            "cbrtDelta3_3^3 = Delta3_3",
            &g(FormId::CbrtDelta3_3).pow_int(3).expect("power"),
            &g(FormId::Delta3_3),
            prec,
        ),
        compare(
            "theta3_2tau^4 = E2_4",
            &g(FormId::Theta3TwoTau).pow_int(4).expect("power"),
            &g(FormId::E2_4),
            prec,
        ),
        compare(
            "halftheta2_2tau^4 = Delta2_4",
            &g(FormId::HalfTheta2TwoTau).pow_int(4).expect("power"),
            &g(FormId::Delta2_4),
            prec,
        ),
        compare(
            "theta2(8tau) = theta3(2tau) - theta3(8tau)",
            &g(FormId::HalfTheta2TwoTau).dilate(4).scale_int(2),
            &g(FormId::Theta3TwoTau).sub(&catalog(FormId::Theta3TwoTau, (p + 3) / 4).dilate(4)),
            prec,
        ),
    ];
    let hauptmoduls = [
        (FormId::J, FormId::E4, 3, FormId::Delta),
        (FormId::J2, FormId::E2_2, 2, FormId::Delta4_2),
        (FormId::J3, FormId::E1_3, 3, FormId::Delta3_3),
        (FormId::J4, FormId::E2_4, 1, FormId::Delta2_4),
    ];
    for (j, num, e, den) in hauptmoduls {
        let q = g(num).pow_int(e).expect("power").div(&g(den)).expect("cusp forms are monic");
        checks.push(compare(format!("{} = {}^{e}/{}", j.name(), num.name(), den.name()), &g(j), &q, prec));
    }
    for id in FormId::ALL {
        if let Some(alt) = alternate_recipe(id, p) {
            checks.push(compare(format!("{} by a second recipe", id.name()), &g(id), &alt, prec));
        }
    }
    for (name, twice_k, m) in LATTICE_SOLUTIONS {
        checks.push(lattice_check(name, Weight::half(twice_k), m, prec));
    }
    for k in [2, 8, 14, 20] {
        checks.push(level_two_ladder_relation(k, prec));
    }
    IdentityReport {
        checked_below: prec,
        checks,
    }
}
