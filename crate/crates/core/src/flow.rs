//! Numerical Hamilton flow of a quantic and the monitors run along it.
//!
//! The equations of motion are `q' = U_p`, `p' = -U_q`. All monitored
//! quantities are evaluated from the exact covariant forms at the integrated
//! points; `Phi'` in particular comes from `-[N(N-2)]^3 G`, never from
//! differencing the samples.

use serde::Serialize;

use crate::algebra::{BinaryQuantic, FloatPoly, HomogeneousPoly, Rational};
use crate::covariants::CovariantSet;
use crate::error::{require_order, Error, Result};
use crate::weierstrass::WeierstrassData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Classical fixed-step fourth-order Runge-Kutta.
    Rk4,
    /// Dormand-Prince 5(4) with embedded error control.
    Rk45Adaptive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowConfig {
    pub t_end: f64,
    /// Step size for `Rk4`; for the adaptive method, the spacing of the
    /// output grid before striding and the initial step guess.
    pub dt: f64,
    pub method: Method,
    /// Record a sample every `output_stride` steps.
    pub output_stride: usize,
    pub rtol: f64,
    pub atol: f64,
    /// Integration stops once `|p|` or `|q|` exceeds this.
    pub escape_radius: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            t_end: 0.1,
            dt: 1e-4,
            method: Method::Rk4,
            output_stride: 1,
            rtol: 1e-10,
            atol: 1e-12,
            escape_radius: 1e12,
        }
    }
}

impl FlowConfig {
    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(what.to_string()));
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return bad("t_end must be finite and non-negative");
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad("dt must be finite and positive");
        }
        if self.output_stride == 0 {
            return bad("output stride must be at least 1");
        }
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return bad("tolerances must be positive");
        }
        Ok(())
    }
}

/// Right-hand side of the Hamilton equations, `(p', q') = (-U_q, U_p)`.
#[derive(Clone, Debug)]
pub struct HamiltonField {
    up: FloatPoly,
    uq: FloatPoly,
}

impl HamiltonField {
    pub fn new(u: &BinaryQuantic) -> Self {
        let x = u.expand();
        Self {
            up: x.partial_p().to_f64(),
            uq: x.partial_q().to_f64(),
        }
    }

    #[inline]
    pub fn rhs(&self, state: [f64; 2]) -> [f64; 2] {
        let [p, q] = state;
        [-self.uq.eval(p, q), self.up.eval(p, q)]
    }
}

/// `(p', q')` at a point.
pub fn hamilton_rhs(u: &BinaryQuantic, p: f64, q: f64) -> (f64, f64) {
    let [pdot, qdot] = HamiltonField::new(u).rhs([p, q]);
    (pdot, qdot)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowSample {
    pub t: f64,
    pub p: f64,
    pub q: f64,
    pub u: f64,
    pub phi: f64,
    pub phi_dot_analytic: f64,
    pub g2: f64,
    pub g3: f64,
    /// `phi_dot^2 - 4 phi^3 + g2 phi + g3`.
    pub weierstrass_residual: f64,
    pub lame_parameter: f64,
}

impl FlowSample {
    /// Residual divided by the largest of the four terms (at least 1).
    pub fn relative_residual(&self) -> f64 {
        let scale = [
            self.phi_dot_analytic * self.phi_dot_analytic,
            4.0 * self.phi.powi(3),
            self.g2 * self.phi,
            self.g3,
        ]
        .iter()
        .fold(1.0_f64, |m, x| m.max(x.abs()));
        self.weierstrass_residual.abs() / scale
    }
}

/// Float versions of the forms sampled along a trajectory.
#[derive(Clone, Debug)]
struct SampledForms {
    u: FloatPoly,
    phi: FloatPoly,
    phi_dot: FloatPoly,
    g2: FloatPoly,
    g3: FloatPoly,
    lame: f64,
}

impl SampledForms {
    fn new(u: &BinaryQuantic, data: &WeierstrassData) -> Self {
        Self {
            u: u.expand().to_f64(),
            phi: data.phi.to_f64(),
            phi_dot: data.phi_dot.to_f64(),
            g2: data.g2poly.to_f64(),
            g3: data.g3poly.to_f64(),
            lame: data.lame_parameter(),
        }
    }

    fn sample(&self, t: f64, [p, q]: [f64; 2]) -> FlowSample {
        let phi = self.phi.eval(p, q);
        let phi_dot = self.phi_dot.eval(p, q);
        let g2 = self.g2.eval(p, q);
        let g3 = self.g3.eval(p, q);
        FlowSample {
            t,
            p,
            q,
            u: self.u.eval(p, q),
            phi,
            phi_dot_analytic: phi_dot,
            g2,
            g3,
            weierstrass_residual: phi_dot * phi_dot - 4.0 * phi * phi * phi + g2 * phi + g3,
            lame_parameter: self.lame,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowReport {
    pub order: usize,
    pub method: Method,
    pub samples: Vec<FlowSample>,
    /// `max |u(t) - u(0)| / max(1, |u(0)|)`.
    pub u_drift_max: f64,
    /// Largest [`FlowSample::relative_residual`].
    pub residual_max: f64,
    /// See [`monitor_second_order`]; `None` with fewer than three samples.
    pub second_order_error_max: Option<f64>,
    /// See [`fd_consistency`]; `None` with fewer than three samples.
    pub fd_consistency_error: Option<f64>,
    pub lame_parameter: f64,
    /// Integration stopped early on a non-finite or escaping state.
    pub diverged: bool,
}

const RK4_WEIGHTS: [f64; 4] = [1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0];

fn axpy(y: [f64; 2], h: f64, k: [f64; 2]) -> [f64; 2] {
    [y[0] + h * k[0], y[1] + h * k[1]]
}

fn rk4_step(field: &HamiltonField, y: [f64; 2], h: f64) -> [f64; 2] {
    let k1 = field.rhs(y);
    let k2 = field.rhs(axpy(y, 0.5 * h, k1));
    let k3 = field.rhs(axpy(y, 0.5 * h, k2));
    let k4 = field.rhs(axpy(y, h, k3));
    let mut out = y;
    for (k, w) in [k1, k2, k3, k4].iter().zip(RK4_WEIGHTS) {
        out = axpy(out, h * w, *k);
    }
    out
}

// Dormand-Prince 5(4) tableau.
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One Dormand-Prince step: returns the fifth-order solution and the
/// embedded error estimate.
fn dp45_step(field: &HamiltonField, y: [f64; 2], h: f64) -> ([f64; 2], [f64; 2]) {
    let mut k = [[0.0; 2]; 7];
    k[0] = field.rhs(y);
    for stage in 1..7 {
        let mut yi = y;
        for (j, a) in DP_A[stage - 1].iter().enumerate().take(stage) {
            yi = axpy(yi, h * a, k[j]);
        }
        k[stage] = field.rhs(yi);
    }
    let mut y5 = y;
    let mut err = [0.0; 2];
    for i in 0..7 {
        y5 = axpy(y5, h * DP_B5[i], k[i]);
        let w = h * (DP_B5[i] - DP_B4[i]);
        err[0] += w * k[i][0];
        err[1] += w * k[i][1];
    }
    (y5, err)
}

struct Adaptive<'a> {
    field: &'a HamiltonField,
    rtol: f64,
    atol: f64,
    h: f64,
}

impl Adaptive<'_> {
    /// Advances `y` from `t0` to exactly `t1`. `None` if the step size collapses.
    fn advance(&mut self, mut y: [f64; 2], t0: f64, t1: f64) -> Option<[f64; 2]> {
        let mut t = t0;
        while t < t1 {
            let last = self.h >= t1 - t;
            let h = if last { t1 - t } else { self.h };
            if !(h > 1e-15 * t1.abs().max(1.0)) && !last {
                return None;
            }
            let (y_new, err) = dp45_step(self.field, y, h);
            let norm = (0..2)
                .map(|i| {
                    let sc = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                    (err[i] / sc).abs()
                })
                .fold(0.0, f64::max);
            if !norm.is_finite() {
                self.h = h * 0.2;
                if self.h < 1e-15 * t1.abs().max(1.0) {
                    return None;
                }
                continue;
            }
            let factor = if norm == 0.0 {
                5.0
            } else {
                (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
            };
            if norm <= 1.0 {
                y = y_new;
                t = if last { t1 } else { t + h };
                // keep the controller's suggestion unless this step was clipped
                if !last || factor < 1.0 {
                    self.h = h * factor;
                }
            } else {
                self.h = h * factor.min(1.0);
                if self.h < 1e-15 * t1.abs().max(1.0) {
                    return None;
                }
            }
        }
        Some(y)
    }
}

fn escaped(y: [f64; 2], radius: f64) -> bool {
    !(y[0].is_finite() && y[1].is_finite()) || y[0].abs() > radius || y[1].abs() > radius
}

/// Integrates the Hamilton flow of `u` from `start` and fills a [`FlowReport`].
///
/// The step count is `ceil(t_end / dt)` with the step shrunk to land on
/// `t_end`. Samples sit on every `output_stride`-th step plus the final time.
pub fn integrate(u: &BinaryQuantic, start: (f64, f64), config: &FlowConfig) -> Result<FlowReport> {
    require_order("flow integration", "N ≥ 5", u.order(), 5)?;
    config.validate()?;
    if !(start.0.is_finite() && start.1.is_finite()) {
        return Err(Error::InvalidArgument("start point must be finite".into()));
    }
    let set = CovariantSet::new(u)?;
    let data = WeierstrassData::from_covariants(&set)?;
    let forms = SampledForms::new(u, &data);
    let field = HamiltonField::new(u);

    let steps = if config.t_end == 0.0 {
        0
    } else {
        ((config.t_end / config.dt) - 1e-9).ceil().max(1.0) as usize
    };
    let h = if steps == 0 { 0.0 } else { config.t_end / steps as f64 };

    let mut y = [start.0, start.1];
    let mut samples = vec![forms.sample(0.0, y)];
    let mut diverged = false;
    let mut adaptive = Adaptive {
        field: &field,
        rtol: config.rtol,
        atol: config.atol,
        h,
    };
    let mut t_prev = 0.0;
    for i in 1..=steps {
        let record = i % config.output_stride == 0 || i == steps;
        let next = match config.method {
            Method::Rk4 => Some(rk4_step(&field, y, h)),
            Method::Rk45Adaptive if record => {
                let t = if i == steps { config.t_end } else { i as f64 * h };
                let out = adaptive.advance(y, t_prev, t);
                t_prev = t;
                out
            }
            Method::Rk45Adaptive => continue,
        };
        match next {
            Some(n) if !escaped(n, config.escape_radius) => y = n,
            _ => {
                diverged = true;
                break;
            }
        }
        if record {
            let t = if i == steps { config.t_end } else { i as f64 * h };
            samples.push(forms.sample(t, y));
        }
    }

    let u0 = samples[0].u;
    let u_drift_max = samples
        .iter()
        .map(|s| (s.u - u0).abs() / u0.abs().max(1.0))
        .fold(0.0, f64::max);
    let residual_max = samples
        .iter()
        .map(FlowSample::relative_residual)
        .fold(0.0, f64::max);

    let mut report = FlowReport {
        order: u.order(),
        method: config.method,
        samples,
        u_drift_max,
        residual_max,
        second_order_error_max: None,
        fd_consistency_error: None,
        lame_parameter: data.lame_parameter(),
        diverged,
    };
    if report.samples.len() >= 3 {
        report.second_order_error_max = Some(second_order_error(&set.h, &report)?);
        report.fd_consistency_error = Some(fd_consistency(&report)?);
    }
    Ok(report)
}

/// Interior sample indices whose neighbours are equally spaced in time.
fn uniform_triples(samples: &[FlowSample]) -> impl Iterator<Item = (usize, f64)> + '_ {
    (1..samples.len().saturating_sub(1)).filter_map(move |i| {
        let h1 = samples[i].t - samples[i - 1].t;
        let h2 = samples[i + 1].t - samples[i].t;
        ((h1 - h2).abs() <= 1e-9 * h1.abs()).then_some((i, 0.5 * (h1 + h2)))
    })
}

fn require_three(report: &FlowReport) -> Result<()> {
    if report.samples.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "finite-difference monitors need at least 3 samples, got {}",
            report.samples.len()
        )));
    }
    Ok(())
}

fn second_order_error(h_form: &HomogeneousPoly, report: &FlowReport) -> Result<f64> {
    require_three(report)?;
    let n = report.order as f64;
    let coef = n * n * (n - 1.0);
    let h_form = h_form.to_f64();
    let s = &report.samples;
    Ok(uniform_triples(s)
        .map(|(i, h)| {
            let h2 = h * h;
            let app = (s[i + 1].p - 2.0 * s[i].p + s[i - 1].p) / h2;
            let aqq = (s[i + 1].q - 2.0 * s[i].q + s[i - 1].q) / h2;
            let k = coef * h_form.eval(s[i].p, s[i].q);
            let (fp, fq) = (k * s[i].p, k * s[i].q);
            let scale = fp.hypot(fq).max(1.0);
            (app + fp).hypot(aqq + fq) / scale
        })
        .fold(0.0, f64::max))
}

/// Largest relative residual of `gamma'' = -N^2 (N-1) H gamma`, with
/// `gamma''` from central differences of the samples. Shrinks like the
/// square of the output spacing.
pub fn monitor_second_order(u: &BinaryQuantic, report: &FlowReport) -> Result<f64> {
    require_order("second-order monitor", "N ≥ 2", u.order(), 2)?;
    second_order_error(&crate::covariants::hessian(u)?, report)
}

/// Largest relative gap between the central difference of the sampled `Phi`
/// and the analytic `Phi'`.
pub fn fd_consistency(report: &FlowReport) -> Result<f64> {
    require_three(report)?;
    let s = &report.samples;
    Ok(uniform_triples(s)
        .map(|(i, h)| {
            let fd = (s[i + 1].phi - s[i - 1].phi) / (2.0 * h);
            let exact = s[i].phi_dot_analytic;
            (fd - exact).abs() / exact.abs().max(1.0)
        })
        .fold(0.0, f64::max))
}

/// True when `g2` and `g3` stay within `tol` (relative to `max(1, |initial|)`)
/// of their initial values over every sample.
pub fn monitor_properness(report: &FlowReport, tol: f64) -> bool {
    let Some(first) = report.samples.first() else {
        return true;
    };
    let drift = |get: fn(&FlowSample) -> f64| {
        let x0 = get(first);
        report
            .samples
            .iter()
            .map(|s| (get(s) - x0).abs() / x0.abs().max(1.0))
            .fold(0.0, f64::max)
    };
    drift(|s| s.g2) < tol && drift(|s| s.g3) < tol
}

/// Exact check of the second-order law: returns the two forms
/// `U_q U_qp - U_qq U_p + N^2 (N-1) H p` and
/// `U_p U_pq - U_pp U_q + N^2 (N-1) H q`, both identically zero.
pub fn second_order_residuals(u: &BinaryQuantic) -> Result<[HomogeneousPoly; 2]> {
    require_order("second-order law", "N ≥ 2", u.order(), 2)?;
    let n = u.order() as i64;
    let x = u.expand();
    let (up, uq) = (x.partial_p(), x.partial_q());
    let (upp, upq, uqq) = (up.partial_p(), up.partial_q(), uq.partial_q());
    let kh = crate::covariants::hessian(u)?.scale(&Rational::from_integer((n * n * (n - 1)).into()));
    let pdd = (&uq * &upq).checked_sub(&(&uqq * &up))?;
    let qdd = (&up * &upq).checked_sub(&(&upp * &uq))?;
    Ok([
        pdd.checked_add(&(&kh * &HomogeneousPoly::p()))?,
        qdd.checked_add(&(&kh * &HomogeneousPoly::q()))?,
    ])
}
