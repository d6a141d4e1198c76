//! The Weierstrass equation satisfied by the rescaled Hessian.
//!
//! Along a Hamilton curve of `U`, `Phi = -[N(N-2)]^2 H` obeys
//! `Phi'^2 = 4 Phi^3 - g2 Phi - g3` with
//! `g2 = [N^2 (N-2)^2 U]^2 S` and `g3 = [N^2 (N-2)^2 U]^3 T`.
//! The equation is proper on a curve when `g2` and `g3` are constant there.

mod series;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{jacobian, BinaryQuantic, HomogeneousPoly, Rational};
use crate::covariants::CovariantSet;
use crate::error::{require_order, Error, Result};

pub use series::{wp_series, WeierstrassSeries, SERIES_TOLERANCE};

/// Rescaled Hessian, its flow derivative and the coefficient covariants,
/// all as exact forms in `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassData {
    pub order: usize,
    pub phi: HomogeneousPoly,
    pub phi_dot: HomogeneousPoly,
    pub g2poly: HomogeneousPoly,
    pub g3poly: HomogeneousPoly,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl WeierstrassData {
    /// Builds the data from a covariant set and checks that
    /// `phi_dot^2 - (4 phi^3 - g2 phi - g3)` vanishes identically.
    pub fn from_covariants(set: &CovariantSet) -> Result<Self> {
        let n = set.order() as i64;
        let k = int(n * (n - 2));
        let k2 = &k * &k;
        let k3 = &k2 * &k;
        let u = set.u.expand();
        let u2 = &u * &u;
        let data = Self {
            order: set.order(),
            phi: set.h.scale(&-&k2),
            phi_dot: set.g.scale(&-&k3),
            g2poly: (&u2 * &set.s).scale(&(&k2 * &k2)),
            g3poly: (&(&u2 * &u) * &set.t).scale(&(&k3 * &k3)),
        };
        if !data.identity_residual().is_zero() {
            return Err(Error::IdentityViolated("Weierstrass equation for the rescaled Hessian"));
        }
        Ok(data)
    }

    /// `phi_dot^2 - 4 phi^3 + g2 phi + g3` as a form of degree `6N - 12`.
    pub fn identity_residual(&self) -> HomogeneousPoly {
        crate::covariants::sum(&[
            &self.phi_dot * &self.phi_dot,
            -self.phi.pow(3).scale_int(4),
            &self.g2poly * &self.phi,
            self.g3poly.clone(),
        ])
    }

    pub fn lame_parameter(&self) -> f64 {
        1.0 / (self.order as f64 - 2.0)
    }
}

/// Builds [`WeierstrassData`] for `u`; needs `N ≥ 5`.
pub fn build_weierstrass(u: &BinaryQuantic) -> Result<WeierstrassData> {
    require_order("Weierstrass data", "N ≥ 5", u.order(), 5)?;
    WeierstrassData::from_covariants(&CovariantSet::new(u)?)
}

/// `Phi'^2 - 4 Phi^3 + g2 Phi + g3` at a rational point. Always zero.
pub fn pointwise_residual(data: &WeierstrassData, p: &Rational, q: &Rational) -> Rational {
    let phi = data.phi.eval(p, q);
    let phi_dot = data.phi_dot.eval(p, q);
    let g2 = data.g2poly.eval(p, q);
    let g3 = data.g3poly.eval(p, q);
    &phi_dot * &phi_dot - int(4) * &phi * &phi * &phi + g2 * &phi + g3
}

/// `g2^3 - 27 g3^2`.
pub fn discriminant(g2: &Rational, g3: &Rational) -> Rational {
    g2 * g2 * g2 - int(27) * g3 * g3
}

/// Behaviour of `S` along the curve through the start point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SConstancy {
    /// `S` vanishes along the curve.
    IdenticallyZero,
    /// `(U, S)` is the zero form and `S` is nonzero at the start.
    ConstantNonzero,
    /// `(U, S)` is nonzero at the start, so `S` changes along the curve.
    Nonconstant,
    /// `(U, S)` vanishes at the start without vanishing identically; only
    /// numerical monitoring can say more.
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    /// `U = 0` on the curve: `g2 = g3 = 0` and nonzero solutions are inverse squares.
    UZeroInverseSquare,
    /// Proper with vanishing discriminant: elementary solutions.
    ProperElementary,
    /// Proper with nonzero discriminant: nonconstant solutions are `wp` functions.
    ProperWp,
    /// Not proper at the symbol level; see the flow monitors.
    Improper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub u_value: Rational,
    pub s_constant: SConstancy,
    pub proper: bool,
    /// Whether `Phi` moves along the curve, decided from `G` and `(U, G)` at the start.
    pub phi_nonconstant: bool,
    /// Values of `g2` and `g3` at the start point.
    pub g2: Rational,
    pub g3: Rational,
    /// Discriminant, present only when the equation is proper.
    pub delta: Option<Rational>,
    pub category: Category,
}

/// Classifies the Weierstrass equation along the Hamilton curve through `start`.
///
/// Properness is decided symbolically only when `(U, S)` and `(U, T)` are
/// the zero form; otherwise the curve is reported as improper.
pub fn classify(u: &BinaryQuantic, start: (&Rational, &Rational)) -> Result<Classification> {
    require_order("classify", "N ≥ 5", u.order(), 5)?;
    let set = CovariantSet::new(u)?;
    let data = WeierstrassData::from_covariants(&set)?;
    let (p, q) = start;

    let u_value = u.expand().eval(p, q);
    let s_value = set.s.eval(p, q);
    let s_constant = if set.s.is_zero() {
        SConstancy::IdenticallyZero
    } else if set.ds.is_zero() {
        if s_value.is_zero() {
            SConstancy::IdenticallyZero
        } else {
            SConstancy::ConstantNonzero
        }
    } else if !set.ds.eval(p, q).is_zero() {
        SConstancy::Nonconstant
    } else {
        SConstancy::Undetermined
    };

    // Phi is analytic along the curve; with constant g2, g3 it satisfies
    // Phi'' = 6 Phi^2 - g2 / 2, so Phi'(0) = Phi''(0) = 0 pins it constant.
    let u_poly = u.expand();
    let phi_nonconstant =
        !set.g.eval(p, q).is_zero() || !jacobian(&u_poly, &set.g).eval(p, q).is_zero();

    let g2 = data.g2poly.eval(p, q);
    let g3 = data.g3poly.eval(p, q);

    if u_value.is_zero() {
        return Ok(Classification {
            u_value,
            s_constant,
            proper: true,
            phi_nonconstant,
            delta: Some(discriminant(&g2, &g3)),
            g2,
            g3,
            category: Category::UZeroInverseSquare,
        });
    }

    if set.ds.is_zero() && set.dt.is_zero() {
        if phi_nonconstant && !s_value.is_zero() {
            return Err(Error::IdentityViolated(
                "a nonconstant proper solution forces S = 0 on the curve",
            ));
        }
        let delta = discriminant(&g2, &g3);
        let category = if delta.is_zero() {
            Category::ProperElementary
        } else {
            Category::ProperWp
        };
        return Ok(Classification {
            u_value,
            s_constant,
            proper: true,
            phi_nonconstant,
            g2,
            g3,
            delta: Some(delta),
            category,
        });
    }

    Ok(Classification {
        u_value,
        s_constant,
        proper: false,
        phi_nonconstant,
        g2,
        g3,
        delta: None,
        category: Category::Improper,
    })
}

impl Classification {
    /// Proper with `Phi` constant: its value is then a root of `4x^3 - g2 x - g3`.
    pub fn is_rest_point(&self) -> bool {
        self.proper && !self.phi_nonconstant
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mono(c: i64, pe: usize, qe: usize) -> HomogeneousPoly {
        HomogeneousPoly::monomial(r(c), pe, qe)
    }

    fn p5q5() -> BinaryQuantic {
        BinaryQuantic::from_integers(&[1, 0, 0, 0, 0, 1]).unwrap()
    }

    fn p4q() -> BinaryQuantic {
        BinaryQuantic::from_integers(&[0, 1, 0, 0, 0, 0]).unwrap()
    }

    #[test]
    fn build_for_p5q5() {
        let w = build_weierstrass(&p5q5()).unwrap();
        assert_eq!(w.phi, mono(-225, 3, 3));
        assert_eq!(
            w.phi_dot,
            mono(-3375, 7, 2).checked_sub(&mono(-3375, 2, 7)).unwrap()
        );
        let u = p5q5().expand();
        assert_eq!(w.g2poly, (&(&u * &u) * &mono(1, 1, 1)).scale_int(50625));
        assert!(w.g3poly.is_zero());
        assert_eq!(w.g2poly.degree(), 12);
        assert_eq!(w.g3poly.degree(), 18);
    }

    #[test]
    fn build_for_p4q() {
        let w = build_weierstrass(&p4q()).unwrap();
        assert_eq!(w.phi, mono(225, 6, 0));
        assert_eq!(w.phi_dot, mono(-6750, 9, 0));
        assert!(w.g2poly.is_zero() && w.g3poly.is_zero());
        assert_eq!(r(6750) * r(6750), r(4) * r(225).pow(3));
        assert_eq!(r(6750) * r(6750), r(45_562_500));
    }

    #[test]
    fn build_for_pure_power() {
        let w = build_weierstrass(&BinaryQuantic::from_integers(&[1, 0, 0, 0, 0, 0, 0]).unwrap())
            .unwrap();
        assert!(w.phi.is_zero() && w.phi_dot.is_zero() && w.g2poly.is_zero() && w.g3poly.is_zero());
        assert!(build_weierstrass(&BinaryQuantic::from_integers(&[1, 0, 0, 0, 1]).unwrap()).is_err());
    }

    #[test]
    fn residual_at_points() {
        let w = build_weierstrass(&p5q5()).unwrap();
        assert_eq!(w.phi.eval(&r(1), &r(1)), r(-225));
        assert_eq!(w.phi_dot.eval(&r(1), &r(1)), r(0));
        assert_eq!(w.g2poly.eval(&r(1), &r(1)), r(202_500));
        assert_eq!(pointwise_residual(&w, &r(1), &r(1)), r(0));
        assert_eq!(pointwise_residual(&w, &r(1), &r(0)), r(0));
        assert_eq!(r(4) * r(11_390_625), r(202_500) * r(225));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&r(0), &r(0)), r(0));
        assert_eq!(discriminant(&r(3), &r(1)), r(0));
        assert_eq!(discriminant(&r(202_500), &r(0)), r(8_303_765_625_000_000));
    }

    #[test]
    fn classify_p4q() {
        let c = classify(&p4q(), (&r(1), &r(1))).unwrap();
        assert!(c.proper && c.phi_nonconstant);
        assert_eq!(c.u_value, r(5));
        assert_eq!((c.g2.clone(), c.g3.clone()), (r(0), r(0)));
        assert_eq!(c.delta, Some(r(0)));
        assert_eq!(c.s_constant, SConstancy::IdenticallyZero);
        assert_eq!(c.category, Category::ProperElementary);
    }

    #[test]
    fn classify_p5q5() {
        let c = classify(&p5q5(), (&r(1), &r(0))).unwrap();
        assert_eq!(c.u_value, r(1));
        assert!(!c.proper);
        assert_eq!(c.delta, None);
        assert_eq!(c.category, Category::Improper);
        assert_eq!(c.s_constant, SConstancy::Nonconstant);

        let c = classify(&p5q5(), (&r(1), &r(-1))).unwrap();
        assert_eq!(c.category, Category::UZeroInverseSquare);
        assert_eq!(c.u_value, r(0));
        assert_eq!((c.g2, c.g3), (r(0), r(0)));

        // (U,S) = 5(p^5 - q^5) vanishes at (1,1) but not identically
        let c = classify(&p5q5(), (&r(1), &r(1))).unwrap();
        assert_eq!(c.s_constant, SConstancy::Undetermined);
        assert_eq!(c.category, Category::Improper);
    }

    #[test]
    fn classify_rest_point_with_nonzero_s() {
        // U = 20 p^3 q^3: every Jacobian against U of a p^k q^k form vanishes
        let u = BinaryQuantic::from_integers(&[0, 0, 0, 1, 0, 0, 0]).unwrap();
        let c = classify(&u, (&r(1), &r(1))).unwrap();
        assert!(c.proper);
        assert!(c.is_rest_point());
        assert_eq!(c.s_constant, SConstancy::ConstantNonzero);
        let w = build_weierstrass(&u).unwrap();
        let phi0 = w.phi.eval(&r(1), &r(1));
        let cubic = r(4) * &phi0 * &phi0 * &phi0 - &c.g2 * &phi0 - &c.g3;
        assert_eq!(cubic, r(0));
    }

    #[test]
    fn classify_rejects_low_order() {
        let u = BinaryQuantic::from_integers(&[1, 0, 0, 0, 1]).unwrap();
        assert!(matches!(
            classify(&u, (&r(1), &r(1))),
            Err(Error::Precondition { requirement: "N ≥ 5", .. })
        ));
    }
}
