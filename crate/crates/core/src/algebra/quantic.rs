use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::HomogeneousPoly;
use super::rational::{binomial, Rational};
use crate::error::{Error, Result};

/// A binary quantic `(a_0, ..., a_N)(p, q)^N`, i.e.
/// `U = sum_n binom(N, n) a_n p^(N-n) q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuantic {
    a: Vec<Rational>,
}

impl BinaryQuantic {
    /// Takes the binomial-convention coefficients `a_0..a_N`; needs `N >= 1`.
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidQuantic(format!(
                "order must be at least 1, got {} coefficient(s)",
                a.len()
            )));
        }
        Ok(Self { a })
    }

    pub fn from_integers(a: &[i64]) -> Result<Self> {
        Self::new(a.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.a
    }

    /// `a_n`, or zero past the end (convenient for the source formulas).
    pub fn a(&self, n: usize) -> Rational {
        self.a.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Raw coefficients `c_n = binom(N, n) a_n`.
    pub fn expand(&self) -> HomogeneousPoly {
        let n = self.order();
        let coeffs = self
            .a
            .iter()
            .enumerate()
            .map(|(k, a)| a * Rational::from_integer(binomial(n, k)))
            .collect();
        HomogeneousPoly::new(coeffs).expect("order >= 1")
    }

    /// Inverse of [`expand`](Self::expand).
    pub fn from_poly(poly: &HomogeneousPoly) -> Result<Self> {
        let n = poly.degree();
        let a = poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c / Rational::from_integer(binomial(n, k)))
            .collect();
        Self::new(a)
    }

    /// Splits `U = V / d` with `V` integral and `d` the least positive integer
    /// that clears every denominator.
    pub fn clear_denominators(&self) -> (BinaryQuantic, BigInt) {
        let d = self.a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = Rational::from_integer(d.clone());
        let a = self.a.iter().map(|c| c * &scale).collect();
        (BinaryQuantic { a }, d)
    }

    /// `U(q, p)`: the same form with the variables exchanged.
    pub fn swap_variables(&self) -> Self {
        let mut a = self.a.clone();
        a.reverse();
        Self { a }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn expand_examples() {
        let u = BinaryQuantic::from_integers(&[1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(u.expand(), HomogeneousPoly::from_integers(&[1, 0, 0, 0, 0, 1]).unwrap());
        let u = BinaryQuantic::from_integers(&[0, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(u.expand(), HomogeneousPoly::monomial(r(5), 4, 1));
        let u = BinaryQuantic::from_integers(&[1, 1, 1]).unwrap();
        assert_eq!(u.expand(), HomogeneousPoly::from_integers(&[1, 2, 1]).unwrap());
        assert_eq!(u.expand().source(), &u.a(0));
    }

    #[test]
    fn rejects_order_zero() {
        assert!(BinaryQuantic::from_integers(&[1]).is_err());
        assert!(BinaryQuantic::new(vec![]).is_err());
    }

    #[test]
    fn clears_denominators() {
        let u = BinaryQuantic::new(vec![
            Rational::new(1.into(), 2.into()),
            Rational::new((-2).into(), 3.into()),
            r(1),
        ])
        .unwrap();
        let (v, d) = u.clear_denominators();
        assert_eq!(d, BigInt::from(6));
        assert_eq!(v, BinaryQuantic::from_integers(&[3, -4, 6]).unwrap());
    }
}
