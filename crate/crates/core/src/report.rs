//! The full fixture and property suite behind the `report` command.
//!
//! Every check is deterministic given the seed; sweeps run in parallel over
//! pre-generated instances and are collected in input order.

use std::collections::BTreeSet;
use std::sync::Mutex;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{jacobian, poisson, BinaryQuantic, HomogeneousPoly, Rational};
use crate::covariants::{
    covariant_g, covariant_s, covariant_t, emanant4, grad_s, grad_t, hessian, source_g, source_h,
    source_s, source_s0, source_t, source_t0, syzygy_gradient, syzygy_main, syzygy_switch,
    syzygy_three, CovariantSet,
};
use crate::error::Result;
use crate::flow::{
    hamilton_rhs, integrate, monitor_properness, monitor_second_order, FlowConfig, FlowReport,
};
use crate::io::float17;
use crate::sampling::{random_poly, random_quantic, rng};
use crate::weierstrass::{
    build_weierstrass, classify, discriminant, pointwise_residual, wp_series, Category,
    WeierstrassSeries,
};

/// Every operation the suite must touch at least once.
pub const ALL_OPERATIONS: [&str; 28] = [
    "expand",
    "partial_p",
    "partial_q",
    "ring_ops",
    "jacobian",
    "poisson",
    "eval",
    "source",
    "hessian",
    "covariant_G",
    "emanant4",
    "covariant_S",
    "covariant_T",
    "grad_S",
    "grad_T",
    "syzygy_main",
    "syzygy_switch",
    "syzygy_three",
    "syzygy_gradient",
    "build_weierstrass",
    "pointwise_residual",
    "discriminant",
    "classify",
    "wp_series",
    "hamilton_rhs",
    "integrate",
    "monitor_second_order",
    "monitor_properness",
];

/// Instances per order in the syzygy sweeps.
pub const SWEEP_CASES: usize = 100;
/// Coefficient bound for random quantics.
pub const COEFF_BOUND: i64 = 5;

/// Bounds for the second-order finite-difference convergence ratio.
pub const CONVERGENCE_RATIO: (f64, f64) = (3.5, 4.5);

#[derive(Clone, Debug, Serialize)]
pub struct Sweep {
    pub name: String,
    pub order: Option<usize>,
    pub cases: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportSummary {
    pub seed: u64,
    pub sweeps: Vec<Sweep>,
    pub checks: Vec<Check>,
    pub operations: Vec<String>,
    pub sweeps_passed: usize,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub all_passed: bool,
}

#[derive(Default)]
struct Recorder {
    ops: Mutex<BTreeSet<&'static str>>,
    checks: Vec<Check>,
}

impl Recorder {
    fn touch(&self, ops: &[&'static str]) {
        self.ops.lock().expect("poisoned").extend(ops.iter().copied());
    }

    fn check(&mut self, name: &str, passed: bool, detail: Value) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn mono(c: i64, pe: usize, qe: usize) -> HomogeneousPoly {
    HomogeneousPoly::monomial(int(c), pe, qe)
}

fn quantic(a: &[i64]) -> BinaryQuantic {
    BinaryQuantic::from_integers(a).expect("fixture")
}

fn derived_seed(seed: u64, tag: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(tag)
}

/// Runs the suite. Errors only on internal failures; mathematical failures
/// are reported as failed checks.
pub fn run_report(seed: u64) -> Result<ReportSummary> {
    let mut rec = Recorder::default();
    let mut sweeps = Vec::new();

    syzygy_sweeps(seed, &rec, &mut sweeps)?;
    three_form_sweep(seed, &rec, &mut sweeps);
    source_sweeps(seed, &rec, &mut sweeps)?;
    ring_sweep(seed, &rec, &mut sweeps);
    fixture_checks(&mut rec)?;
    weierstrass_checks(&mut rec)?;
    flow_checks(&mut rec)?;

    // exercised operations, listed in canonical order
    let touched = rec.ops.lock().expect("poisoned").clone();
    let operations: Vec<String> = ALL_OPERATIONS
        .iter()
        .filter(|op| touched.contains(*op))
        .map(|op| op.to_string())
        .collect();
    let sweeps_passed = sweeps.iter().filter(|s| s.passed == s.cases).count();
    let checks_passed = rec.checks.iter().filter(|c| c.passed).count();
    let checks_failed = rec.checks.len() - checks_passed;
    let all_passed = checks_failed == 0 && sweeps_passed == sweeps.len();
    Ok(ReportSummary {
        seed,
        sweeps,
        checks: rec.checks,
        operations,
        sweeps_passed,
        checks_passed,
        checks_failed,
        all_passed,
    })
}

fn syzygy_sweeps(seed: u64, rec: &Recorder, sweeps: &mut Vec<Sweep>) -> Result<()> {
    for n in 5..=9 {
        let mut r = rng(derived_seed(seed, n as u64));
        let cases: Vec<BinaryQuantic> = (0..SWEEP_CASES)
            .map(|_| random_quantic(&mut r, n, COEFF_BOUND))
            .collect();
        let passed = cases
            .par_iter()
            .map(|u| -> Result<bool> {
                let set = CovariantSet::new(u)?;
                Ok(set.syzygies().all_zero())
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&ok| ok)
            .count();
        sweeps.push(Sweep {
            name: "syzygies".into(),
            order: Some(n),
            cases: cases.len(),
            passed,
        });
    }
    rec.touch(&["syzygy_main", "syzygy_switch", "syzygy_gradient", "syzygy_three"]);
    Ok(())
}

fn three_form_sweep(seed: u64, rec: &Recorder, sweeps: &mut Vec<Sweep>) {
    let mut r = rng(derived_seed(seed, 100));
    let triples: Vec<_> = (0..5 * SWEEP_CASES)
        .map(|_| {
            let pick = |r: &mut rand_chacha::ChaCha8Rng| {
                let d = rand::Rng::gen_range(r, 0..=6);
                random_poly(r, d, COEFF_BOUND)
            };
            (pick(&mut r), pick(&mut r), pick(&mut r))
        })
        .collect();
    let passed = triples
        .par_iter()
        .filter(|(x, y, z)| syzygy_three(x, y, z).is_zero())
        .count();
    sweeps.push(Sweep {
        name: "three_form_random_triples".into(),
        order: None,
        cases: triples.len(),
        passed,
    });
    rec.touch(&["syzygy_three"]);
}

fn source_sweeps(seed: u64, rec: &Recorder, sweeps: &mut Vec<Sweep>) -> Result<()> {
    for n in 5..=7 {
        let mut r = rng(derived_seed(seed, 200 + n as u64));
        let cases: Vec<BinaryQuantic> = (0..SWEEP_CASES)
            .map(|_| random_quantic(&mut r, n, COEFF_BOUND))
            .collect();
        let passed = cases
            .par_iter()
            .map(|u| -> Result<bool> {
                let set = CovariantSet::new(u)?;
                let nn = int((n * (n - 4)) as i64);
                Ok(set.h.source() == &source_h(u)
                    && set.g.source() == &source_g(u)
                    && set.s.source() == &source_s(u)
                    && set.t.source() == &source_t(u)
                    && set.ds.source() == &(&nn * source_s0(u))
                    && set.dt.source() == &(&nn * source_t0(u)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&ok| ok)
            .count();
        sweeps.push(Sweep {
            name: "sources".into(),
            order: Some(n),
            cases: cases.len(),
            passed,
        });
    }
    rec.touch(&["source", "hessian", "covariant_G", "covariant_S", "covariant_T", "grad_S", "grad_T"]);
    Ok(())
}

fn ring_sweep(seed: u64, rec: &Recorder, sweeps: &mut Vec<Sweep>) {
    let mut r = rng(derived_seed(seed, 300));
    let cases: Vec<_> = (0..200)
        .map(|_| {
            let d = rand::Rng::gen_range(&mut r, 1..=9);
            let e = rand::Rng::gen_range(&mut r, 1..=6);
            (random_poly(&mut r, d, 9), random_poly(&mut r, e, 9), random_poly(&mut r, e, 9))
        })
        .collect();
    let passed = cases
        .par_iter()
        .filter(|(x, y, z)| {
            let d = int(x.degree() as i64);
            let euler = (&HomogeneousPoly::p() * &x.partial_p())
                .checked_add(&(&HomogeneousPoly::q() * &x.partial_q()))
                .map(|lhs| lhs == x.scale(&d))
                .unwrap_or(false);
            let antisym = jacobian(x, y) == -jacobian(y, x) && jacobian(x, x).is_zero();
            let bracket = poisson(x, y) == jacobian(y, x);
            let leibniz = jacobian(x, &(y * z))
                == (y * &jacobian(x, z)).checked_add(&(z * &jacobian(x, y))).expect("same degree");
            let distrib = (x * &y.checked_add(z).expect("same degree"))
                == (x * y).checked_add(&(x * z)).expect("same degree");
            let round_trip = BinaryQuantic::from_poly(x)
                .map(|u| u.expand() == *x)
                .unwrap_or(false);
            let hom = {
                let (p, q, l) = (int(2), int(-3), int(5));
                x.eval(&(&l * &p), &(&l * &q)) == num_traits::pow(l.clone(), x.degree()) * x.eval(&p, &q)
            };
            euler && antisym && bracket && leibniz && distrib && round_trip && hom
        })
        .count();
    sweeps.push(Sweep {
        name: "ring_identities".into(),
        order: None,
        cases: cases.len(),
        passed,
    });
    rec.touch(&["partial_p", "partial_q", "ring_ops", "jacobian", "poisson", "eval", "expand"]);
}

fn fixture_checks(rec: &mut Recorder) -> Result<()> {
    let u = quantic(&[1, 0, 0, 0, 0, 1]);
    let set = CovariantSet::new(&u)?;
    let g_expected = mono(1, 7, 2).checked_sub(&mono(1, 2, 7))?;
    let ds_expected = mono(5, 5, 0).checked_sub(&mono(5, 0, 5))?;
    let ok = set.h == mono(1, 3, 3)
        && set.g == g_expected
        && set.s == mono(1, 1, 1)
        && set.t.is_zero()
        && set.ds == ds_expected
        && set.dt.is_zero();
    rec.check(
        "fixture_p5q5_covariants",
        ok,
        json!({ "H": set.h.to_string(), "G": set.g.to_string(), "S": set.s.to_string(),
                "T": set.t.to_string(), "dS": set.ds.to_string(), "dT": set.dt.to_string() }),
    );

    let e = emanant4(&u)?;
    rec.check(
        "fixture_p5q5_emanant",
        e.a == mono(120, 1, 0) && e.e == mono(120, 0, 1) && e.b.is_zero() && e.c.is_zero() && e.d.is_zero(),
        json!({}),
    );
    rec.touch(&["emanant4"]);

    let v = quantic(&[0, 1, 0, 0, 0, 0]);
    let h = hessian(&v)?;
    let g = covariant_g(&v, &h)?;
    let ok = h == mono(-1, 6, 0)
        && g == mono(2, 9, 0)
        && covariant_s(&v)?.is_zero()
        && covariant_t(&v)?.is_zero()
        && grad_s(&v)?.is_zero()
        && grad_t(&v)?.is_zero();
    rec.check("fixture_p4q_covariants", ok, json!({ "H": h.to_string(), "G": g.to_string() }));

    let ok = syzygy_main(&u)?.is_zero()
        && syzygy_switch(&u)?.is_zero()
        && syzygy_gradient(&u)?.is_zero()
        && syzygy_main(&v)?.is_zero()
        && syzygy_switch(&v)?.is_zero()
        && syzygy_gradient(&v)?.is_zero()
        && syzygy_three(&HomogeneousPoly::p(), &HomogeneousPoly::q(), &mono(1, 1, 1)).is_zero();
    rec.check("fixture_syzygies", ok, json!({}));

    let [rp, rq] = crate::flow::second_order_residuals(&quantic(&[2, -1, 0, 3, 1, -2, 4]))?;
    rec.check("second_order_law_exact", rp.is_zero() && rq.is_zero(), json!({}));
    Ok(())
}

fn weierstrass_checks(rec: &mut Recorder) -> Result<()> {
    let u = quantic(&[1, 0, 0, 0, 0, 1]);
    let w = build_weierstrass(&u)?;
    let (one, zero) = (int(1), int(0));
    let res = pointwise_residual(&w, &one, &one);
    let ok = res.is_zero()
        && w.phi.eval(&one, &one) == int(-225)
        && w.g2poly.eval(&one, &one) == int(202_500)
        && w.g3poly.eval(&one, &one).is_zero()
        && pointwise_residual(&w, &one, &zero).is_zero();
    rec.check(
        "weierstrass_residual_p5q5_at_1_1",
        ok,
        json!({ "residual": res.to_string(), "phi": w.phi.eval(&one, &one).to_string(),
                "g2": w.g2poly.eval(&one, &one).to_string() }),
    );
    rec.touch(&["build_weierstrass", "pointwise_residual"]);

    let ok = discriminant(&zero, &zero).is_zero()
        && discriminant(&int(3), &int(1)).is_zero()
        && discriminant(&int(202_500), &zero) == int(8_303_765_625_000_000);
    rec.check("discriminant_examples", ok, json!({}));
    rec.touch(&["discriminant"]);

    let v = quantic(&[0, 1, 0, 0, 0, 0]);
    let c = classify(&v, (&one, &one))?;
    let ok = c.proper
        && c.category == Category::ProperElementary
        && c.g2.is_zero()
        && c.g3.is_zero()
        && c.delta.as_ref().is_some_and(Zero::is_zero);
    rec.check("classify_p4q_proper_elementary", ok, json!({ "category": c.category }));
    let c1 = classify(&u, (&one, &zero))?;
    let c2 = classify(&u, (&one, &int(-1)))?;
    rec.check(
        "classify_p5q5",
        c1.category == Category::Improper && c2.category == Category::UZeroInverseSquare,
        json!({ "from_1_0": c1.category, "from_1_-1": c2.category }),
    );
    rec.touch(&["classify"]);

    let pure = wp_series(0.0, 0.0, 0.1)?;
    let series = WeierstrassSeries::new(3.0, -2.0);
    let mut worst: f64 = 0.0;
    for i in 1..=10 {
        let z = series.radius().min(1.0) * i as f64 / 10.0;
        let (wp, dwp) = (series.value(z)?, series.derivative(z)?);
        let rhs = 4.0 * wp.powi(3) - 3.0 * wp + 2.0;
        worst = worst.max((dwp * dwp - rhs).abs() / rhs.abs().max(1.0));
    }
    rec.check(
        "wp_series",
        pure == 100.0 && worst < 1e-9,
        json!({ "inverse_square_at_0.1": float17(pure), "ode_residual_max": float17(worst) }),
    );
    rec.touch(&["wp_series"]);
    Ok(())
}

fn flow_checks(rec: &mut Recorder) -> Result<()> {
    let p5q5 = quantic(&[1, 0, 0, 0, 0, 1]);
    let p4q = quantic(&[0, 1, 0, 0, 0, 0]);

    let ok = hamilton_rhs(&p5q5, 1.0, 1.0) == (-5.0, 5.0) && hamilton_rhs(&p4q, 1.0, 1.0) == (-5.0, 20.0);
    rec.check("hamilton_rhs_fixtures", ok, json!({}));
    rec.touch(&["hamilton_rhs"]);

    let cfg = FlowConfig::default();
    let closed = integrate(&p4q, (1.0, 1.0), &cfg)?;
    let phi_err = closed
        .samples
        .iter()
        .map(|s| {
            let exact = (s.t + 1.0 / 15.0).powi(-2);
            (s.phi - exact).abs() / exact
        })
        .fold(0.0, f64::max);
    rec.check(
        "closed_form_phi_p4q",
        phi_err < 1e-8 && !closed.diverged,
        json!({ "max_relative_error": float17(phi_err) }),
    );
    rec.touch(&["integrate"]);

    let generic = integrate(&p5q5, (1.0, 0.5), &cfg)?;
    let null = integrate(&p5q5, (1.0, -1.0), &cfg)?;
    let drifts = [closed.u_drift_max, generic.u_drift_max, null.u_drift_max];
    rec.check(
        "energy_conservation",
        drifts.iter().all(|&d| d < 1e-9),
        json!({ "p4q": float17(drifts[0]), "p5q5": float17(drifts[1]), "p5q5_null": float17(drifts[2]) }),
    );
    let residuals = [closed.residual_max, generic.residual_max, null.residual_max];
    rec.check(
        "weierstrass_residual_along_flow",
        residuals.iter().all(|&r| r < 1e-9),
        json!({ "p4q": float17(residuals[0]), "p5q5": float17(residuals[1]) }),
    );

    for (name, u, start) in [("p4q", &p4q, (1.0, 1.0)), ("p5q5", &p5q5, (1.0, 0.5))] {
        let (coarse, fine) = stride_pair(u, start)?;
        let e1 = monitor_second_order(u, &coarse)?;
        let e2 = monitor_second_order(u, &fine)?;
        let ratio = e1 / e2;
        rec.check(
            &format!("second_order_convergence_{name}"),
            (CONVERGENCE_RATIO.0..=CONVERGENCE_RATIO.1).contains(&ratio),
            json!({ "coarse": float17(e1), "fine": float17(e2), "ratio": float17(ratio) }),
        );
        let f1 = coarse.fd_consistency_error.unwrap_or(f64::NAN);
        let f2 = fine.fd_consistency_error.unwrap_or(f64::NAN);
        rec.check(
            &format!("phi_dot_fd_convergence_{name}"),
            (CONVERGENCE_RATIO.0..=CONVERGENCE_RATIO.1).contains(&(f1 / f2)),
            json!({ "coarse": float17(f1), "fine": float17(f2), "ratio": float17(f1 / f2) }),
        );
    }
    rec.touch(&["monitor_second_order"]);

    let generic_proper = monitor_properness(&generic, 1e-8);
    let closed_proper = monitor_properness(&closed, 1e-8);
    rec.check(
        "properness_monitor",
        !generic_proper && closed_proper,
        json!({ "p5q5_from_1_0.5": generic_proper, "p4q_from_1_1": closed_proper }),
    );
    rec.touch(&["monitor_properness"]);

    let ratio = rk4_order_ratio(&p4q)?;
    rec.check("rk4_global_order", ratio >= 12.0, json!({ "error_ratio": float17(ratio) }));
    Ok(())
}

/// Output strides of 10 and 5 steps at the default step size.
pub fn stride_pair(u: &BinaryQuantic, start: (f64, f64)) -> Result<(FlowReport, FlowReport)> {
    let coarse = FlowConfig {
        output_stride: 10,
        ..FlowConfig::default()
    };
    let fine = FlowConfig {
        output_stride: 5,
        ..FlowConfig::default()
    };
    Ok((integrate(u, start, &coarse)?, integrate(u, start, &fine)?))
}

/// Ratio of final-time errors in `p` at `dt = 1e-3` and `5e-4` against
/// `p(t) = (1 + 15 t)^(-1/3)` for `U = 5 p^4 q` from `(1, 1)`.
pub fn rk4_order_ratio(p4q: &BinaryQuantic) -> Result<f64> {
    let err = |dt: f64| -> Result<f64> {
        let cfg = FlowConfig {
            dt,
            ..FlowConfig::default()
        };
        let rep = integrate(p4q, (1.0, 1.0), &cfg)?;
        let last = rep.samples.last().expect("nonempty");
        Ok((last.p - (1.0 + 15.0 * last.t).powf(-1.0 / 3.0)).abs())
    };
    Ok(err(1e-3)? / err(5e-4)?)
}
