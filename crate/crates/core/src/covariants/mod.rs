//! Normalized covariants of a binary quantic.
//!
//! Every normalizing constant is checked: the computation runs on the
//! integral multiple `V = d U` of the quantic, where each normalized
//! covariant has integer coefficients, and a remainder anywhere is reported
//! as [`Error::InexactDivision`]. Results are then rescaled back to `U`
//! using the degree of the covariant in the coefficients.

mod sources;
mod syzygy;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{jacobian, BinaryQuantic, HomogeneousPoly, Rational};
use crate::error::{require_order, Error, Result};

pub use sources::{source_g, source_h, source_s, source_s0, source_t, source_t0};
pub use syzygy::{
    syzygy_gradient, syzygy_main, syzygy_switch, syzygy_three, SyzygyResiduals,
};

/// The fourth partials of `U` appearing as coefficients of the quartic
/// emanant `A P^4 + 4B P^3 Q + 6C P^2 Q^2 + 4D P Q^3 + E Q^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emanant4 {
    pub a: HomogeneousPoly,
    pub b: HomogeneousPoly,
    pub c: HomogeneousPoly,
    pub d: HomogeneousPoly,
    pub e: HomogeneousPoly,
}

impl Emanant4 {
    /// `AE - 4BD + 3C^2`.
    pub fn quadratic_invariant(&self) -> HomogeneousPoly {
        let ae = &self.a * &self.e;
        let bd = (&self.b * &self.d).scale_int(4);
        let cc = (&self.c * &self.c).scale_int(3);
        ae.checked_sub(&bd)
            .and_then(|x| x.checked_add(&cc))
            .expect("degrees agree")
    }

    /// `ACE + 2BCD - AD^2 - B^2E - C^3`.
    pub fn cubic_invariant(&self) -> HomogeneousPoly {
        let (a, b, c, d, e) = (&self.a, &self.b, &self.c, &self.d, &self.e);
        let terms = [
            &(a * c) * e,
            (&(b * c) * d).scale_int(2),
            -(&(a * d) * d),
            -(&(b * b) * e),
            -(&(c * c) * c),
        ];
        sum(&terms)
    }
}

pub(crate) fn sum(terms: &[HomogeneousPoly]) -> HomogeneousPoly {
    terms
        .iter()
        .skip(1)
        .fold(terms[0].clone(), |acc, t| acc.checked_add(t).expect("degrees agree"))
}

fn rescale(poly: HomogeneousPoly, denominator: &BigInt, weight: u32) -> HomogeneousPoly {
    if denominator.is_one() {
        return poly;
    }
    let factor = Rational::new(BigInt::one(), num_traits::pow(denominator.clone(), weight as usize));
    poly.scale(&factor)
}

fn order_u64(n: usize) -> u64 {
    n as u64
}

fn hessian_integral(v: &BinaryQuantic) -> Result<HomogeneousPoly> {
    let n = order_u64(v.order());
    let x = v.expand();
    let (xp, xq) = (x.partial_p(), x.partial_q());
    let (xpp, xpq, xqq) = (xp.partial_p(), xp.partial_q(), xq.partial_q());
    let det = (&xpp * &xqq).checked_sub(&(&xpq * &xpq))?;
    det.div_exact(n * n * (n - 1) * (n - 1), "H")
}

/// Normalized Hessian `H`, defined by `U_pp U_qq - U_pq^2 = N^2 (N-1)^2 H`.
/// Degree `2N - 4`.
pub fn hessian(u: &BinaryQuantic) -> Result<HomogeneousPoly> {
    require_order("hessian", "N ≥ 2", u.order(), 2)?;
    let (v, d) = u.clear_denominators();
    Ok(rescale(hessian_integral(&v)?, &d, 2))
}

/// Normalized covariant `G`, defined by `(U, H) = N (N-2) G`. Degree `3N - 6`.
///
/// `h` must be the Hessian of `u` as returned by [`hessian`].
pub fn covariant_g(u: &BinaryQuantic, h: &HomogeneousPoly) -> Result<HomogeneousPoly> {
    require_order("covariant G", "N ≥ 3", u.order(), 3)?;
    let n = order_u64(u.order());
    let (v, d) = u.clear_denominators();
    let d_rat = Rational::from_integer(d.clone());
    let hv = h.scale(&(&d_rat * &d_rat));
    let g = jacobian(&v.expand(), &hv).div_exact(n * (n - 2), "G")?;
    Ok(rescale(g, &d, 3))
}

/// Coefficients `A..E` of the quartic emanant (plain fourth partials of `U`),
/// each of degree `N - 4`.
pub fn emanant4(u: &BinaryQuantic) -> Result<Emanant4> {
    require_order("quartic emanant", "N ≥ 4", u.order(), 4)?;
    Ok(emanant_of(&u.expand()))
}

fn emanant_of(x: &HomogeneousPoly) -> Emanant4 {
    let ppp = x.partial_p().partial_p().partial_p();
    let qqq = x.partial_q().partial_q().partial_q();
    let ppq = x.partial_p().partial_p().partial_q();
    Emanant4 {
        a: ppp.partial_p(),
        b: ppp.partial_q(),
        c: ppq.partial_q(),
        d: qqq.partial_p(),
        e: qqq.partial_q(),
    }
}

fn emanant_constant(n: usize) -> u64 {
    let n = order_u64(n);
    n * (n - 1) * (n - 2) * (n - 3)
}

/// `S`, defined by `AE - 4BD + 3C^2 = [N(N-1)(N-2)(N-3)]^2 S`. Degree `2N - 8`.
pub fn covariant_s(u: &BinaryQuantic) -> Result<HomogeneousPoly> {
    require_order("covariant S", "N ≥ 4", u.order(), 4)?;
    let (v, d) = u.clear_denominators();
    let k = emanant_constant(u.order());
    let raw = emanant_of(&v.expand()).quadratic_invariant();
    Ok(rescale(raw.div_exact(k * k, "S")?, &d, 2))
}

/// `T`, defined by `ACE + 2BCD - AD^2 - B^2E - C^3 = [N(N-1)(N-2)(N-3)]^3 T`.
/// Degree `3N - 12`.
pub fn covariant_t(u: &BinaryQuantic) -> Result<HomogeneousPoly> {
    require_order("covariant T", "N ≥ 4", u.order(), 4)?;
    let (v, d) = u.clear_denominators();
    let k = emanant_constant(u.order());
    let raw = emanant_of(&v.expand()).cubic_invariant();
    let divisor = k
        .checked_pow(3)
        .ok_or_else(|| Error::InvalidArgument("order too large".into()))?;
    Ok(rescale(raw.div_exact(divisor, "T")?, &d, 3))
}

fn check_gradient_source(
    u: &BinaryQuantic,
    grad: &HomogeneousPoly,
    expected_leader: Rational,
    what: &'static str,
) -> Result<()> {
    let n = u.order() as i64;
    let expected = expected_leader * Rational::from_integer((n * (n - 4)).into());
    if grad.source() != &expected {
        return Err(Error::IdentityViolated(what));
    }
    Ok(())
}

/// `(U, S)`, the rate of change of `S` along every Hamilton curve.
/// Degree `3N - 10`; its source is checked against `N (N-4) S_0`.
pub fn grad_s(u: &BinaryQuantic) -> Result<HomogeneousPoly> {
    require_order("(U, S)", "N ≥ 5", u.order(), 5)?;
    gradient_of_s(u, &covariant_s(u)?)
}

/// `(U, T)`. Degree `4N - 14`; its source is checked against `N (N-4) T_0`.
pub fn grad_t(u: &BinaryQuantic) -> Result<HomogeneousPoly> {
    require_order("(U, T)", "N ≥ 5", u.order(), 5)?;
    gradient_of_t(u, &covariant_t(u)?)
}

fn gradient_of_s(u: &BinaryQuantic, s: &HomogeneousPoly) -> Result<HomogeneousPoly> {
    let grad = jacobian(&u.expand(), s);
    check_gradient_source(u, &grad, source_s0(u), "source of (U, S) is N(N-4) S_0")?;
    Ok(grad)
}

fn gradient_of_t(u: &BinaryQuantic, t: &HomogeneousPoly) -> Result<HomogeneousPoly> {
    let grad = jacobian(&u.expand(), t);
    check_gradient_source(u, &grad, source_t0(u), "source of (U, T) is N(N-4) T_0")?;
    Ok(grad)
}

/// Member of the covariant family, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CovariantName {
    H,
    G,
    S,
    T,
    /// `(U, S)`
    DS,
    /// `(U, T)`
    DT,
}

impl CovariantName {
    pub const ALL: [CovariantName; 6] = [Self::H, Self::G, Self::S, Self::T, Self::DS, Self::DT];

    pub fn label(self) -> &'static str {
        match self {
            Self::H => "H",
            Self::G => "G",
            Self::S => "S",
            Self::T => "T",
            Self::DS => "dS",
            Self::DT => "dT",
        }
    }

    /// Accepts the labels above plus `US` / `UT` / `(U,S)` / `(U,T)`, case-insensitively.
    pub fn parse(text: &str) -> Result<Self> {
        let key: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match key.to_ascii_lowercase().as_str() {
            "h" => Ok(Self::H),
            "g" => Ok(Self::G),
            "s" => Ok(Self::S),
            "t" => Ok(Self::T),
            "ds" | "us" | "(u,s)" => Ok(Self::DS),
            "dt" | "ut" | "(u,t)" => Ok(Self::DT),
            _ => Err(Error::InvalidArgument(format!("unknown covariant {text:?}"))),
        }
    }

    /// Smallest order for which the member is defined.
    pub fn min_order(self) -> usize {
        match self {
            Self::H => 2,
            Self::G => 3,
            Self::S | Self::T => 4,
            Self::DS | Self::DT => 5,
        }
    }

    /// Members defined for order `n`.
    pub fn available(n: usize) -> Vec<CovariantName> {
        Self::ALL.into_iter().filter(|c| n >= c.min_order()).collect()
    }
}

/// Computes one member of the family by name.
pub fn covariant_by_name(u: &BinaryQuantic, name: CovariantName) -> Result<HomogeneousPoly> {
    match name {
        CovariantName::H => hessian(u),
        CovariantName::G => covariant_g(u, &hessian(u)?),
        CovariantName::S => covariant_s(u),
        CovariantName::T => covariant_t(u),
        CovariantName::DS => grad_s(u),
        CovariantName::DT => grad_t(u),
    }
}

/// Sign picked up by each member of [`CovariantSet`] when `p` and `q` are
/// exchanged (and the coefficient vector reversed): the Jacobian covariants
/// flip sign, the determinantal ones do not.
pub const SWAP_SIGNS: [(&str, i64); 6] = [
    ("H", 1),
    ("G", -1),
    ("S", 1),
    ("T", 1),
    ("dS", -1),
    ("dT", -1),
];

/// `{H, G, S, T, (U,S), (U,T)}` for a quantic of order `N ≥ 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantSet {
    pub u: BinaryQuantic,
    pub h: HomogeneousPoly,
    pub g: HomogeneousPoly,
    pub s: HomogeneousPoly,
    pub t: HomogeneousPoly,
    pub ds: HomogeneousPoly,
    pub dt: HomogeneousPoly,
}

impl CovariantSet {
    pub fn new(u: &BinaryQuantic) -> Result<Self> {
        require_order("covariant set", "N ≥ 5", u.order(), 5)?;
        let h = hessian(u)?;
        let g = covariant_g(u, &h)?;
        let s = covariant_s(u)?;
        let t = covariant_t(u)?;
        let set = Self {
            u: u.clone(),
            ds: gradient_of_s(u, &s)?,
            dt: gradient_of_t(u, &t)?,
            g,
            h,
            s,
            t,
        };
        set.check_degrees()?;
        Ok(set)
    }

    pub fn order(&self) -> usize {
        self.u.order()
    }

    /// Members in the order `H, G, S, T, dS, dT` with their labels.
    pub fn named(&self) -> [(&'static str, &HomogeneousPoly); 6] {
        [
            ("H", &self.h),
            ("G", &self.g),
            ("S", &self.s),
            ("T", &self.t),
            ("dS", &self.ds),
            ("dT", &self.dt),
        ]
    }

    /// Expected degree of each member for order `n`.
    pub fn expected_degrees(n: usize) -> [usize; 6] {
        [2 * n - 4, 3 * n - 6, 2 * n - 8, 3 * n - 12, 3 * n - 10, 4 * n - 14]
    }

    fn check_degrees(&self) -> Result<()> {
        let expected = Self::expected_degrees(self.order());
        for ((_, poly), want) in self.named().iter().zip(expected) {
            if poly.degree() != want {
                return Err(Error::IdentityViolated("covariant degree bookkeeping"));
            }
        }
        Ok(())
    }

    /// All four syzygy residuals, each of which must be the zero form.
    pub fn syzygies(&self) -> SyzygyResiduals {
        SyzygyResiduals::from_set(self)
    }
}
