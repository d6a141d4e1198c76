use super::poly::HomogeneousPoly;
use super::rational::rational_to_f64;

/// A homogeneous form with `f64` coefficients, for evaluation along
/// numerically integrated trajectories.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    coeffs: Vec<f64>,
}

impl FloatPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner in `p`, accumulating powers of `q`.
    pub fn eval(&self, p: f64, q: f64) -> f64 {
        let mut acc = 0.0;
        let mut q_pow = 1.0;
        for c in &self.coeffs {
            acc = acc * p + c * q_pow;
            q_pow *= q;
        }
        acc
    }
}

impl From<&HomogeneousPoly> for FloatPoly {
    fn from(poly: &HomogeneousPoly) -> Self {
        Self {
            coeffs: poly.coeffs().iter().map(rational_to_f64).collect(),
        }
    }
}

impl HomogeneousPoly {
    pub fn to_f64(&self) -> FloatPoly {
        FloatPoly::from(self)
    }

    /// Floating-point value at `(p, q)`.
    pub fn eval_f64(&self, p: f64, q: f64) -> f64 {
        self.to_f64().eval(p, q)
    }
}
