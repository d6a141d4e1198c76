use crate::error::{Error, Result};

/// Relative size allowed for the first omitted Laurent term.
pub const SERIES_TOLERANCE: f64 = 1e-12;

/// Highest index kept: terms `c_k z^(2k-2)` for `k = 2..=8`, i.e. through `z^14`.
const LAST_KEPT: usize = 8;

/// Truncated Laurent expansion `wp(z) = z^-2 + sum_{k>=2} c_k z^(2k-2)` with
/// `c_2 = g2/20`, `c_3 = g3/28` and
/// `c_k = 3 / ((2k+1)(k-3)) * sum_{m=2}^{k-2} c_m c_{k-m}` for `k >= 4`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassSeries {
    /// `c[k]` for `k = 0..=LAST_KEPT + 2`; indices 0 and 1 are unused.
    c: [f64; LAST_KEPT + 3],
    radius: f64,
}

impl WeierstrassSeries {
    pub fn new(g2: f64, g3: f64) -> Self {
        let mut c = [0.0; LAST_KEPT + 3];
        c[2] = g2 / 20.0;
        c[3] = g3 / 28.0;
        for k in 4..c.len() {
            let conv: f64 = (2..=k - 2).map(|m| c[m] * c[k - m]).sum();
            c[k] = 3.0 * conv / (((2 * k + 1) * (k - 3)) as f64);
        }
        // |c_k z^(2k-2)| / |z^-2| = |c_k| |z|^(2k) for the two omitted terms
        let radius = (LAST_KEPT + 1..c.len())
            .filter(|&k| c[k] != 0.0)
            .map(|k| (SERIES_TOLERANCE / c[k].abs()).powf(1.0 / (2 * k) as f64))
            .fold(f64::INFINITY, f64::min);
        Self { c, radius }
    }

    /// Largest `|z|` for which the truncation meets [`SERIES_TOLERANCE`].
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn coefficient(&self, k: usize) -> f64 {
        self.c[k]
    }

    fn check(&self, z: f64) -> Result<()> {
        if z == 0.0 || !z.is_finite() {
            return Err(Error::InvalidArgument("wp series needs a finite nonzero z".into()));
        }
        if z.abs() > self.radius {
            return Err(Error::InvalidArgument(format!(
                "|z| = {} exceeds the series radius {}",
                z.abs(),
                self.radius
            )));
        }
        Ok(())
    }

    pub fn value(&self, z: f64) -> Result<f64> {
        self.check(z)?;
        let z2 = z * z;
        let tail: f64 = (2..=LAST_KEPT)
            .map(|k| self.c[k] * z2.powi(k as i32 - 1))
            .sum();
        let inv = 1.0 / z;
        Ok(inv * inv + tail)
    }

    /// Term-wise derivative `wp'(z)`.
    pub fn derivative(&self, z: f64) -> Result<f64> {
        self.check(z)?;
        let tail: f64 = (2..=LAST_KEPT)
            .map(|k| self.c[k] * (2 * k - 2) as f64 * z.powi(2 * k as i32 - 3))
            .sum();
        Ok(-2.0 / (z * z * z) + tail)
    }
}

/// `wp(z; g2, g3)` from the truncated Laurent series.
pub fn wp_series(g2: f64, g3: f64, z: f64) -> Result<f64> {
    WeierstrassSeries::new(g2, g3).value(z)
}
