use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Composite Gauss–Legendre rule settings for `[0, π]` (per axis).
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct QuadratureConfig {
    pub panels: usize,
    pub nodes: usize,
    /// Panel multiplier for the refined pass that yields the error estimate.
    pub refinement: usize,
    /// Relative tolerance on the refinement delta.
    pub tolerance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            panels: 64,
            nodes: 16,
            refinement: 2,
            tolerance: 1e-6,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.panels == 0 || self.nodes == 0 || self.nodes > 64 {
            return Err(Error::validation(format!(
                "quadrature needs panels ≥ 1 and 1 ≤ nodes ≤ 64 (got {} × {})",
                self.panels, self.nodes
            )));
        }
        if self.refinement < 2 {
            return Err(Error::validation("refinement factor must be at least 2"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::validation("tolerance must be positive"));
        }
        Ok(())
    }

    pub fn refined(&self) -> QuadratureConfig {
        QuadratureConfig {
            panels: self.panels * self.refinement,
            ..*self
        }
    }

    /// First 16 hex digits of SHA-256 over the canonical JSON of `self`.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(self).expect("config serializes"));
        hex::encode(h.finalize())[..16].to_string()
    }

    pub fn rule(&self) -> Rule {
        Rule::composite(0.0, std::f64::consts::PI, self.panels, self.nodes)
    }
}

/// Nodes and weights on `[-1, 1]`, by Newton iteration on `P_m`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(m, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(m, z);
        if d != 0.0 {
            dp = d;
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    (x, w)
}

// (P_m(z), P_m'(z))
fn legendre(m: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, m as f64 * (z * p1 - p0) / (z * z - 1.0))
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
}

impl Rule {
    pub fn composite(a: f64, b: f64, panels: usize, m: usize) -> Rule {
        let (gx, gw) = gauss_legendre(m);
        let h = (b - a) / panels as f64;
        let mut x = Vec::with_capacity(panels * m);
        let mut w = Vec::with_capacity(panels * m);
        for p in 0..panels {
            let lo = a + p as f64 * h;
            for (xi, wi) in gx.iter().zip(&gw) {
                x.push(lo + 0.5 * h * (xi + 1.0));
                w.push(0.5 * h * wi);
            }
        }
        Rule { x, w }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        crate::numeric::neumaier_sum(self.x.iter().zip(&self.w).map(|(&x, &w)| w * f(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_polynomials() {
        for m in [1, 2, 5, 16] {
            let (x, w) = gauss_legendre(m);
            for deg in 0..2 * m {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg + 1) as f64 };
                assert!((got - want).abs() < 1e-13, "m={m} deg={deg}");
            }
        }
    }

    #[test]
    fn composite_sin() {
        let r = Rule::composite(0.0, std::f64::consts::PI, 8, 8);
        assert!((r.integrate(f64::sin) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn config_hash_tracks_fields() {
        let a = QuadratureConfig::default();
        let b = QuadratureConfig { panels: 32, ..a };
        assert_eq!(a.hash(), QuadratureConfig::default().hash());
        assert_ne!(a.hash(), b.hash());
        assert!(QuadratureConfig { nodes: 0, ..a }.validate().is_err());
    }
}
