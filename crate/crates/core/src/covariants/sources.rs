//! Closed-form leading coefficients of the covariants, as polynomials in the
//! binomial-convention coefficients `a_0, a_1, ...`.

use crate::algebra::{BinaryQuantic, Rational};

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `a0 a2 - a1^2`.
pub fn source_h(u: &BinaryQuantic) -> Rational {
    let [a0, a1, a2] = [0, 1, 2].map(|i| u.a(i));
    &a0 * &a2 - &a1 * &a1
}

/// `a0^2 a3 - 3 a0 a1 a2 + 2 a1^3`.
pub fn source_g(u: &BinaryQuantic) -> Rational {
    let [a0, a1, a2, a3] = [0, 1, 2, 3].map(|i| u.a(i));
    &a0 * &a0 * &a3 - int(3) * &a0 * &a1 * &a2 + int(2) * &a1 * &a1 * &a1
}

/// `a0 a4 - 4 a1 a3 + 3 a2^2`.
pub fn source_s(u: &BinaryQuantic) -> Rational {
    let [a0, a1, a2, a3, a4] = [0, 1, 2, 3, 4].map(|i| u.a(i));
    &a0 * &a4 - int(4) * &a1 * &a3 + int(3) * &a2 * &a2
}

/// `a0 a2 a4 + 2 a1 a2 a3 - a0 a3^2 - a1^2 a4 - a2^3`.
pub fn source_t(u: &BinaryQuantic) -> Rational {
    let [a0, a1, a2, a3, a4] = [0, 1, 2, 3, 4].map(|i| u.a(i));
    &a0 * &a2 * &a4 + int(2) * &a1 * &a2 * &a3
        - &a0 * &a3 * &a3
        - &a1 * &a1 * &a4
        - &a2 * &a2 * &a2
}

/// `S_0`, where the source of `(U, S)` is `N (N-4) S_0`.
pub fn source_s0(u: &BinaryQuantic) -> Rational {
    let [a0, a1, a2, a3, a4, a5] = [0, 1, 2, 3, 4, 5].map(|i| u.a(i));
    &a0 * &a0 * &a5 - int(5) * &a0 * &a1 * &a4 + int(2) * &a0 * &a2 * &a3
        + int(8) * &a1 * &a1 * &a3
        - int(6) * &a1 * &a2 * &a2
}

/// `T_0`, where the source of `(U, T)` is `N (N-4) T_0`.
pub fn source_t0(u: &BinaryQuantic) -> Rational {
    let [a0, a1, a2, a3, a4, a5] = [0, 1, 2, 3, 4, 5].map(|i| u.a(i));
    &a0 * &a0 * &a2 * &a5 - &a0 * &a0 * &a3 * &a4 - &a0 * &a1 * &a1 * &a5
        - int(2) * &a0 * &a1 * &a2 * &a4
        + int(4) * &a0 * &a1 * &a3 * &a3
        - &a0 * &a2 * &a2 * &a3
        + int(3) * &a1 * &a1 * &a1 * &a4
        - int(6) * &a1 * &a1 * &a2 * &a3
        + int(3) * &a1 * &a2 * &a2 * &a2
}
