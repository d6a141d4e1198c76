use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// A homogeneous polynomial `sum_k c_k p^(d-k) q^k` in the plane.
///
/// The zero polynomial keeps a nominal degree so arithmetic stays inside a
/// degree class, but equality ignores the nominal degree of all-zero forms.
#[derive(Clone, Debug)]
pub struct HomogeneousPoly {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl PartialEq for HomogeneousPoly {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.degree == other.degree && self.coeffs == other.coeffs,
            _ => false,
        }
    }
}

impl Eq for HomogeneousPoly {}

impl HomogeneousPoly {
    /// Builds a form from its raw coefficients `c_0..c_d`; the degree is `len - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a homogeneous polynomial needs at least one coefficient".into(),
            ));
        }
        Ok(Self {
            degree: coeffs.len() - 1,
            coeffs,
        })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn constant(value: Rational) -> Self {
        Self {
            degree: 0,
            coeffs: vec![value],
        }
    }

    /// `coeff * p^p_exp * q^q_exp`.
    pub fn monomial(coeff: Rational, p_exp: usize, q_exp: usize) -> Self {
        let mut out = Self::zero(p_exp + q_exp);
        out.coeffs[q_exp] = coeff;
        out
    }

    pub fn p() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `p^(d-k) q^k`.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The source (leader): the coefficient of `p^d`.
    pub fn source(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn partial_p(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let d = self.degree;
        let coeffs = (0..d)
            .map(|k| &self.coeffs[k] * Rational::from_integer(BigInt::from(d - k)))
            .collect();
        Self {
            degree: d - 1,
            coeffs,
        }
    }

    pub fn partial_q(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let d = self.degree;
        let coeffs = (1..=d)
            .map(|k| &self.coeffs[k] * Rational::from_integer(BigInt::from(k)))
            .collect();
        Self {
            degree: d - 1,
            coeffs,
        }
    }

    /// Sum of two forms of equal degree. A zero operand is accepted at any
    /// nominal degree; otherwise mismatched degrees are an error.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.degree != other.degree {
            if other.is_zero() {
                return Ok(self.clone());
            }
            if self.is_zero() {
                return Ok(Self::zero(other.degree).combine(other, op)
                    .expect("degrees agree"));
            }
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| op(a, b))
            .collect();
        Ok(Self {
            degree: self.degree,
            coeffs,
        })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&Rational::from_integer(factor.into()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval(&self, p: &Rational, q: &Rational) -> Rational {
        let d = self.degree;
        let mut p_pows = Vec::with_capacity(d + 1);
        let mut q_pows = Vec::with_capacity(d + 1);
        let (mut pp, mut qp) = (Rational::one(), Rational::one());
        for _ in 0..=d {
            p_pows.push(pp.clone());
            q_pows.push(qp.clone());
            pp *= p;
            qp *= q;
        }
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * &p_pows[d - k] * &q_pows[k])
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Divides by a normalizing constant. When the form is integral the
    /// quotient must be integral as well, otherwise [`Error::InexactDivision`].
    pub fn div_exact(&self, divisor: u64, what: &'static str) -> Result<Self> {
        assert!(divisor != 0, "normalizing constant must be nonzero");
        let div = BigInt::from(divisor);
        if self.is_integral()
            && self
                .coeffs
                .iter()
                .any(|c| !c.numer().is_multiple_of(&div))
        {
            return Err(Error::InexactDivision { what, divisor });
        }
        Ok(self.scale(&Rational::new(BigInt::one(), div)))
    }

    /// Swaps the roles of `p` and `q`.
    pub fn swap_variables(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self {
            degree: self.degree,
            coeffs,
        }
    }
}

impl Mul for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn mul(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        let mut out = HomogeneousPoly::zero(self.degree + rhs.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Mul for HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn mul(self, rhs: HomogeneousPoly) -> HomogeneousPoly {
        &self * &rhs
    }
}

impl Neg for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn neg(self) -> HomogeneousPoly {
        HomogeneousPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn neg(self) -> HomogeneousPoly {
        -&self
    }
}

/// The Jacobian `(X, Y) = X_p Y_q - X_q Y_p`, of degree `deg X + deg Y - 2`.
/// A constant operand gives the zero form.
pub fn jacobian(x: &HomogeneousPoly, y: &HomogeneousPoly) -> HomogeneousPoly {
    if x.degree == 0 || y.degree == 0 {
        return HomogeneousPoly::zero((x.degree + y.degree).saturating_sub(2));
    }
    let lhs = &x.partial_p() * &y.partial_q();
    let rhs = &x.partial_q() * &y.partial_p();
    lhs.checked_sub(&rhs).expect("equal degrees")
}

/// The Poisson bracket `{W, Z} = W_q Z_p - W_p Z_q`, which is the Jacobian
/// with sign reversed: `{W, Z} = (Z, W)`. `{V, U}` is the rate of change of
/// `V` along the Hamilton flow of `U`.
pub fn poisson(w: &HomogeneousPoly, z: &HomogeneousPoly) -> HomogeneousPoly {
    jacobian(z, w)
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let d = self.degree;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || (d - k == 0 && k == 0) {
                factors.push(format_rational(&mag));
            }
            match d - k {
                0 => {}
                1 => factors.push("p".into()),
                e => factors.push(format!("p^{e}")),
            }
            match k {
                0 => {}
                1 => factors.push("q".into()),
                e => factors.push(format!("q^{e}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
