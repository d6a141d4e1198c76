//! Covariants, syzygies and Hamilton flows of binary quantics.
//!
//! * [`algebra`]: exact rationals, homogeneous forms in `(p, q)`, Jacobians
//!   and the Poisson bracket.
//! * [`covariants`]: the normalized covariants `H, G, S, T`, the Jacobian
//!   covariants `(U, S)`, `(U, T)` and residuals of the syzygies among them.
//! * [`weierstrass`]: the Weierstrass equation for the rescaled Hessian,
//!   its classification along a curve and a reference `wp` series.
//! * [`flow`]: Runge-Kutta integration of the Hamilton equations with
//!   conservation and consistency monitors.
//! * [`io`], [`report`]: file formats and the full fixture suite.

pub mod algebra;
pub mod covariants;
mod error;
pub mod flow;
pub mod io;
pub mod report;
pub mod sampling;
pub mod weierstrass;

pub use algebra::{jacobian, poisson, BinaryQuantic, FloatPoly, HomogeneousPoly, Rational};
pub use covariants::{CovariantName, CovariantSet, SyzygyResiduals};
pub use error::{Error, Result};
pub use flow::{FlowConfig, FlowReport, FlowSample, Method};
pub use weierstrass::{Category, Classification, SConstancy, WeierstrassData};
