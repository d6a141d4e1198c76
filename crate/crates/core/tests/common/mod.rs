//! Independent oracle: a sparse bivariate polynomial over rationals with its
//! own arithmetic, used to recompute covariants without the library's dense
//! engine.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use quantic_core::{BinaryQuantic, HomogeneousPoly};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Map from `(p exponent, q exponent)` to coefficient; zero terms are dropped.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Sparse(pub BTreeMap<(usize, usize), Q>);

impl Sparse {
    fn insert(&mut self, key: (usize, usize), c: Q) {
        let entry = self.0.entry(key).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn add(&self, other: &Sparse) -> Sparse {
        let mut out = self.clone();
        for (k, c) in &other.0 {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Sparse) -> Sparse {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, s: &Q) -> Sparse {
        let mut out = Sparse::default();
        for (k, c) in &self.0 {
            out.insert(*k, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Sparse) -> Sparse {
        let mut out = Sparse::default();
        for ((a, b), c) in &self.0 {
            for ((x, y), d) in &other.0 {
                out.insert((a + x, b + y), c * d);
            }
        }
        out
    }

    pub fn dp(&self) -> Sparse {
        let mut out = Sparse::default();
        for ((a, b), c) in &self.0 {
            if *a > 0 {
                out.insert((a - 1, *b), c * q(*a as i64));
            }
        }
        out
    }

    pub fn dq(&self) -> Sparse {
        let mut out = Sparse::default();
        for ((a, b), c) in &self.0 {
            if *b > 0 {
                out.insert((*a, b - 1), c * q(*b as i64));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Same polynomial as the dense form? Zero matches zero of any degree.
    pub fn matches(&self, dense: &HomogeneousPoly) -> bool {
        let d = dense.degree();
        let mut other = Sparse::default();
        for (k, c) in dense.coeffs().iter().enumerate() {
            other.insert((d - k, k), c.clone());
        }
        *self == other
    }

    pub fn eval(&self, p: &Q, qv: &Q) -> Q {
        self.0
            .iter()
            .map(|((a, b), c)| c * num_traits::pow(p.clone(), *a) * num_traits::pow(qv.clone(), *b))
            .fold(Q::zero(), |acc, t| acc + t)
    }
}

pub fn jac(x: &Sparse, y: &Sparse) -> Sparse {
    x.dp().mul(&y.dq()).sub(&x.dq().mul(&y.dp()))
}

fn choose(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `sum binom(N,n) a_n p^(N-n) q^n` built term by term.
pub fn quantic(a: &[i64]) -> Sparse {
    let n = a.len() - 1;
    let mut out = Sparse::default();
    for (k, &ak) in a.iter().enumerate() {
        out.insert((n - k, k), q(choose(n, k) * ak));
    }
    out
}

pub struct OracleCovariants {
    pub u: Sparse,
    pub h: Sparse,
    pub g: Sparse,
    pub s: Sparse,
    pub t: Sparse,
    pub ds: Sparse,
    pub dt: Sparse,
}

/// Recomputes every covariant from the defining determinants.
pub fn oracle_covariants(a: &[i64]) -> OracleCovariants {
    let n = (a.len() - 1) as i64;
    let u = quantic(a);
    let inv = |k: i64| Q::new(BigInt::one(), BigInt::from(k));
    let hess = u.dp().dp().mul(&u.dq().dq()).sub(&u.dp().dq().mul(&u.dp().dq()));
    let h = hess.scale(&inv(n * n * (n - 1) * (n - 1)));
    let g = jac(&u, &h).scale(&inv(n * (n - 2)));
    let fourth = |ip: usize| {
        let mut x = u.clone();
        for _ in 0..ip {
            x = x.dp();
        }
        for _ in ip..4 {
            x = x.dq();
        }
        x
    };
    let (ea, eb, ec, ed, ee) = (fourth(4), fourth(3), fourth(2), fourth(1), fourth(0));
    let k = n * (n - 1) * (n - 2) * (n - 3);
    let s = ea
        .mul(&ee)
        .sub(&eb.mul(&ed).scale(&q(4)))
        .add(&ec.mul(&ec).scale(&q(3)))
        .scale(&inv(k * k));
    let t = ea
        .mul(&ec)
        .mul(&ee)
        .add(&eb.mul(&ec).mul(&ed).scale(&q(2)))
        .sub(&ea.mul(&ed).mul(&ed))
        .sub(&eb.mul(&eb).mul(&ee))
        .sub(&ec.mul(&ec).mul(&ec))
        .scale(&inv(k * k * k));
    let ds = jac(&u, &s);
    let dt = jac(&u, &t);
    OracleCovariants { u, h, g, s, t, ds, dt }
}

/// Leading-coefficient formulas, written out independently of the library.
pub fn reference_sources(a: &[i64]) -> [Q; 6] {
    let at = |i: usize| q(a[i]);
    let (a0, a1, a2, a3, a4, a5) = (at(0), at(1), at(2), at(3), at(4), at(5));
    let n = (a.len() - 1) as i64;
    let h = &a0 * &a2 - &a1 * &a1;
    let g = &a0 * &a0 * &a3 - q(3) * &a0 * &a1 * &a2 + q(2) * &a1 * &a1 * &a1;
    let s = &a0 * &a4 - q(4) * &a1 * &a3 + q(3) * &a2 * &a2;
    let t = &a0 * &a2 * &a4 + q(2) * &a1 * &a2 * &a3 - &a0 * &a3 * &a3 - &a1 * &a1 * &a4 - &a2 * &a2 * &a2;
    let s0 = &a0 * &a0 * &a5 - q(5) * &a0 * &a1 * &a4 + q(2) * &a0 * &a2 * &a3 + q(8) * &a1 * &a1 * &a3
        - q(6) * &a1 * &a2 * &a2;
    let t0 = &a0 * &a0 * &a2 * &a5 - &a0 * &a0 * &a3 * &a4 - &a0 * &a1 * &a1 * &a5
        - q(2) * &a0 * &a1 * &a2 * &a4
        + q(4) * &a0 * &a1 * &a3 * &a3
        - &a0 * &a2 * &a2 * &a3
        + q(3) * &a1 * &a1 * &a1 * &a4
        - q(6) * &a1 * &a1 * &a2 * &a3
        + q(3) * &a1 * &a2 * &a2 * &a2;
    let nn = q(n * (n - 4));
    [h, g, s, t, &nn * s0, &nn * t0]
}

pub fn as_quantic(a: &[i64]) -> BinaryQuantic {
    BinaryQuantic::from_integers(a).unwrap()
}
