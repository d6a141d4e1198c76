//! Residuals of the four syzygies. Each residual is the difference of the
//! two sides of an identity and must be exactly the zero form.

use crate::algebra::{jacobian, BinaryQuantic, HomogeneousPoly};
use crate::error::{require_order, Result};

use super::{covariant_g, covariant_s, covariant_t, hessian, sum, CovariantSet};

fn main_residual(
    u: &HomogeneousPoly,
    h: &HomogeneousPoly,
    g: &HomogeneousPoly,
    s: &HomogeneousPoly,
    t: &HomogeneousPoly,
) -> HomogeneousPoly {
    let u2 = u * u;
    let u3 = &u2 * u;
    sum(&[
        g * g,
        h.pow(3).scale_int(4),
        &u3 * t,
        -(&(&u2 * s) * h),
    ])
}

/// `G^2 + 4H^3 + U^3 T - U^2 S H`.
///
/// Accepts `N = 4` as well, where `S` and `T` are the quartic's invariants;
/// that specialization is experimental.
pub fn syzygy_main(u: &BinaryQuantic) -> Result<HomogeneousPoly> {
    require_order("main syzygy", "N ≥ 4", u.order(), 4)?;
    let h = hessian(u)?;
    let g = covariant_g(u, &h)?;
    let s = covariant_s(u)?;
    let t = covariant_t(u)?;
    Ok(main_residual(&u.expand(), &h, &g, &s, &t))
}

fn switch_residual(set: &CovariantSet) -> HomogeneousPoly {
    let n = set.order() as i64;
    let lhs = set.dt.scale_int(2 * (n - 2));
    let rhs = jacobian(&set.h, &set.s).scale_int(n);
    lhs.checked_sub(&rhs).expect("degrees agree")
}

/// `2(N-2) (U, T) - N (H, S)`.
pub fn syzygy_switch(u: &BinaryQuantic) -> Result<HomogeneousPoly> {
    require_order("switch syzygy", "N ≥ 5", u.order(), 5)?;
    Ok(switch_residual(&CovariantSet::new(u)?))
}

/// `l X (Y, Z) + m Y (Z, X) + n Z (X, Y)` for forms of degrees `l, m, n`.
pub fn syzygy_three(
    x: &HomogeneousPoly,
    y: &HomogeneousPoly,
    z: &HomogeneousPoly,
) -> HomogeneousPoly {
    let (l, m, n) = (x.degree() as i64, y.degree() as i64, z.degree() as i64);
    sum(&[
        (x * &jacobian(y, z)).scale_int(l),
        (y * &jacobian(z, x)).scale_int(m),
        (z * &jacobian(x, y)).scale_int(n),
    ])
}

fn gradient_residual(set: &CovariantSet) -> HomogeneousPoly {
    let n = set.order() as i64;
    let u = set.u.expand();
    let lhs = (&jacobian(&u, &set.h) * &set.s).scale_int(n - 4);
    let rhs = (&set.ds * &set.h)
        .checked_sub(&(&set.dt * &u))
        .expect("degrees agree")
        .scale_int(n - 2);
    lhs.checked_sub(&rhs).expect("degrees agree")
}

/// `(N-4) (U, H) S - (N-2) [(U, S) H - (U, T) U]`.
pub fn syzygy_gradient(u: &BinaryQuantic) -> Result<HomogeneousPoly> {
    require_order("gradient syzygy", "N ≥ 5", u.order(), 5)?;
    Ok(gradient_residual(&CovariantSet::new(u)?))
}

/// Residuals of all four identities for one quantic. The three-form identity
/// is instantiated at `(X, Y, Z) = (H, S, U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyResiduals {
    pub main: HomogeneousPoly,
    pub switch: HomogeneousPoly,
    pub three: HomogeneousPoly,
    pub gradient: HomogeneousPoly,
}

impl SyzygyResiduals {
    pub(super) fn from_set(set: &CovariantSet) -> Self {
        let u = set.u.expand();
        Self {
            main: main_residual(&u, &set.h, &set.g, &set.s, &set.t),
            switch: switch_residual(set),
            three: syzygy_three(&set.h, &set.s, &u),
            gradient: gradient_residual(set),
        }
    }

    pub fn named(&self) -> [(&'static str, &HomogeneousPoly); 4] {
        [
            ("main", &self.main),
            ("switch", &self.switch),
            ("three", &self.three),
            ("gradient", &self.gradient),
        ]
    }

    pub fn all_zero(&self) -> bool {
        self.named().iter().all(|(_, r)| r.is_zero())
    }
}
