//! Tensor kernels over two class hypergroups on `[0, π]`.
//!
//! * SU(2) conjugacy classes: Haar density `(2/π) sin²θ`, characters
//!   `χ_k(θ) = sin((k+1)θ)/sin θ`, dimension `k+1`.
//! * Chebyshev (first kind): density `1/π`, characters `cos kθ`.
//!
//! A level-`n` tensor kernel is `μ_n(θ,θ') = Σ_{k≤n} c_k φ_k(θ) φ_k(θ')` and
//! its norm is `∬ |μ_n| w(θ) w(θ') dθ dθ'`, computed by composite
//! Gauss–Legendre with a refinement-delta error estimate.

pub mod quadrature;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::numeric::neumaier_sum;
pub use quadrature::{gauss_legendre, QuadratureConfig, Rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypergroupModel {
    Su2,
    Chebyshev,
}

pub fn su2_model() -> HypergroupModel {
    HypergroupModel::Su2
}

pub fn chebyshev_model() -> HypergroupModel {
    HypergroupModel::Chebyshev
}

// Below this |sin θ| the SU(2) quotient is replaced by the U_k recurrence.
const SINGULAR_SIN: f64 = 1e-4;

impl HypergroupModel {
    pub fn label(&self) -> &'static str {
        match self {
            HypergroupModel::Su2 => "su2",
            HypergroupModel::Chebyshev => "chebyshev",
        }
    }

    /// Haar density against `dθ` on `[0, π]`, total mass 1.
    pub fn weight(&self, theta: f64) -> f64 {
        match self {
            HypergroupModel::Su2 => 2.0 / PI * theta.sin().powi(2),
            HypergroupModel::Chebyshev => 1.0 / PI,
        }
    }

    pub fn character(&self, k: usize, theta: f64) -> f64 {
        match self {
            HypergroupModel::Su2 => {
                let s = theta.sin();
                if s.abs() < SINGULAR_SIN {
                    chebyshev_u(k, theta.cos())
                } else {
                    ((k + 1) as f64 * theta).sin() / s
                }
            }
            HypergroupModel::Chebyshev => (k as f64 * theta).cos(),
        }
    }

    /// `[φ_0(θ), …, φ_n(θ)]`.
    pub fn characters(&self, n: usize, theta: f64) -> Vec<f64> {
        (0..=n).map(|k| self.character(k, theta)).collect()
    }

    /// The value `a_k` must approach for a bounded approximate identity.
    pub fn dimension_weight(&self, k: usize) -> f64 {
        match self {
            HypergroupModel::Su2 => (k + 1) as f64,
            HypergroupModel::Chebyshev => {
                if k == 0 {
                    1.0
                } else {
                    2.0
                }
            }
        }
    }

    /// Closed form of `∫ φ_k² w`: 1 for SU(2), `1/dimension_weight(k)` for
    /// Chebyshev.
    pub fn norm_sq(&self, k: usize) -> f64 {
        match self {
            HypergroupModel::Su2 => 1.0,
            HypergroupModel::Chebyshev => 1.0 / self.dimension_weight(k),
        }
    }
}

// U_k(x) by the three-term recurrence.
fn chebyshev_u(k: usize, x: f64) -> f64 {
    let (mut u0, mut u1) = (1.0, 2.0 * x);
    if k == 0 {
        return 1.0;
    }
    for _ in 1..k {
        let u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    u1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    /// `a_k = dimension_weight(k)`.
    Dirichlet,
    /// Cesàro weights `a_k = dimension_weight(k)·(1 − k/(n+1))`.
    Fejer,
    /// Chebyshev only: `a_k = 1 − 2k/(n+1)`, tensor coefficient `a_k`.
    FejerLiteral,
    /// Chebyshev only: Cesàro weights, tensor coefficient `a_k²`.
    FejerSquared,
    /// Chebyshev only: Cesàro weights, tensor coefficient `dimension_weight(k)·a_k`.
    FejerDiagonal,
}

/// Coefficients `a_k^{(n)}` of a kernel family and the tensor coefficients
/// `c_k^{(n)}` of the associated `μ_n`.
///
/// SU(2) schemes square `a_k`. Chebyshev `dirichlet`/`fejer` use `a_k`
/// unsquared, which makes `μ_n = ½(K_n(θ+θ') + K_n(θ−θ'))` for the classical
/// kernel `K_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoefficientScheme {
    pub model: HypergroupModel,
    pub kind: SchemeKind,
}

impl CoefficientScheme {
    pub fn new(model: HypergroupModel, kind: SchemeKind) -> Result<Self> {
        use SchemeKind::*;
        let ok = match model {
            HypergroupModel::Su2 => matches!(kind, Dirichlet | Fejer),
            HypergroupModel::Chebyshev => true,
        };
        if !ok {
            return Err(Error::validation(format!(
                "scheme {} is not defined for model {}",
                kind.name(),
                model.label()
            )));
        }
        Ok(CoefficientScheme { model, kind })
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// `a_k^{(n)}`; zero for `k > n`.
    pub fn a(&self, k: usize, n: usize) -> f64 {
        if k > n {
            return 0.0;
        }
        let d = self.model.dimension_weight(k);
        let cesaro = 1.0 - k as f64 / (n + 1) as f64;
        match self.kind {
            SchemeKind::Dirichlet => d,
            SchemeKind::Fejer | SchemeKind::FejerSquared | SchemeKind::FejerDiagonal => d * cesaro,
            SchemeKind::FejerLiteral => 1.0 - 2.0 * k as f64 / (n + 1) as f64,
        }
    }

    /// `c_k^{(n)}`, the coefficient of `φ_k ⊗ φ_k` in `μ_n`.
    pub fn tensor(&self, k: usize, n: usize) -> f64 {
        let a = self.a(k, n);
        match (self.model, self.kind) {
            (HypergroupModel::Su2, _) | (_, SchemeKind::FejerSquared) => a * a,
            (_, SchemeKind::FejerDiagonal) => self.model.dimension_weight(k) * a,
            _ => a,
        }
    }

    pub fn tensor_coefficients(&self, n: usize) -> Vec<f64> {
        (0..=n).map(|k| self.tensor(k, n)).collect()
    }

    /// Gelfand transform of `m(μ_n)` at `k`: `c_k (‖φ_k‖₂² / φ_k(e))²`.
    /// A family is an approximate diagonal only if these tend to 1.
    pub fn multiplier(&self, k: usize, n: usize) -> f64 {
        let r = self.model.norm_sq(k) / self.model.character(k, 0.0);
        self.tensor(k, n) * r * r
    }
}

impl SchemeKind {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeKind::Dirichlet => "dirichlet",
            SchemeKind::Fejer => "fejer",
            SchemeKind::FejerLiteral => "fejer-literal",
            SchemeKind::FejerSquared => "fejer-squared",
            SchemeKind::FejerDiagonal => "fejer-diagonal",
        }
    }
}

/// A quadrature result: value from the refined pass, `|refined − base|` as
/// the error estimate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
    pub config_hash: String,
}

fn run_hash(scheme: &CoefficientScheme, n: usize, quad: &QuadratureConfig, what: &str) -> String {
    let mut h = Sha256::new();
    h.update(what.as_bytes());
    h.update(serde_json::to_vec(&(scheme, n, quad)).expect("serializable"));
    hex::encode(h.finalize())[..16].to_string()
}

fn estimate(
    quad: &QuadratureConfig,
    hash: String,
    eval: impl Fn(&Rule) -> f64,
) -> Result<Estimate> {
    quad.validate()?;
    let coarse = eval(&quad.rule());
    let fine = eval(&quad.refined().rule());
    let err = (fine - coarse).abs();
    Ok(Estimate {
        value: fine,
        error_estimate: err,
        converged: err <= quad.tolerance * fine.abs().max(1.0),
        config_hash: hash,
    })
}

/// `∬ |Σ_k c_k φ_k(x_i) φ_k(x_j)| w_i w_j` on a product rule. Rows run in
/// parallel; row sums are reduced in index order.
pub fn tensor_l1(model: HypergroupModel, c: &[f64], rule: &Rule) -> f64 {
    let n = c.len().saturating_sub(1);
    let phi: Vec<Vec<f64>> = rule.x.par_iter().map(|&x| model.characters(n, x)).collect();
    let ww: Vec<f64> = rule
        .x
        .iter()
        .zip(&rule.w)
        .map(|(&x, &w)| w * model.weight(x))
        .collect();
    let rows: Vec<f64> = (0..rule.len())
        .into_par_iter()
        .map(|i| {
            let left: Vec<f64> = phi[i].iter().zip(c).map(|(p, c)| p * c).collect();
            let row = neumaier_sum((0..rule.len()).map(|j| {
                let v: f64 = left.iter().zip(&phi[j]).map(|(a, b)| a * b).sum();
                v.abs() * ww[j]
            }));
            row * ww[i]
        })
        .collect();
    neumaier_sum(rows)
}

/// `‖μ_n‖₁` for the scheme's tensor coefficients.
pub fn diagonal_norm(
    scheme: &CoefficientScheme,
    n: usize,
    quad: &QuadratureConfig,
) -> Result<Estimate> {
    let c = scheme.tensor_coefficients(n);
    estimate(quad, run_hash(scheme, n, quad, "diagonal"), |r| {
        tensor_l1(scheme.model, &c, r)
    })
}

/// `∫ |Σ_k a_k φ_k| w`, the L¹ norm of the level-`n` kernel.
pub fn bai_norm(scheme: &CoefficientScheme, n: usize, quad: &QuadratureConfig) -> Result<Estimate> {
    let a: Vec<f64> = (0..=n).map(|k| scheme.a(k, n)).collect();
    let model = scheme.model;
    estimate(quad, run_hash(scheme, n, quad, "bai"), |r| {
        r.integrate(|x| {
            let v: f64 = a.iter().enumerate().map(|(k, a)| a * model.character(k, x)).sum();
            v.abs() * model.weight(x)
        })
    })
}

/// `(2/π)² Σ_{2j+1 ≤ n} (a_{2j+1}(2j+2) / ((2j+1)(2j+3)))²`, a lower bound for
/// the SU(2) `‖μ_n‖₁`.
pub fn su2_divergence_lower_bound(scheme: &CoefficientScheme, n: usize) -> Result<f64> {
    if scheme.model != HypergroupModel::Su2 {
        return Err(Error::validation("divergence bound is defined for su2 schemes"));
    }
    let terms = (0..).map(|j| 2 * j + 1).take_while(|&k| k <= n).map(|k| {
        let t = scheme.a(k, n) * (k + 1) as f64 / (k * (k + 2)) as f64;
        t * t
    });
    Ok((2.0 / PI).powi(2) * neumaier_sum(terms))
}

/// `∫ w` and the worst `|∫ φ_j φ_k w − δ_jk ‖φ_k‖²|` over `j, k ≤ kmax`.
pub fn orthogonality_residual(model: HypergroupModel, kmax: usize, quad: &QuadratureConfig) -> (f64, f64) {
    let rule = quad.rule();
    let mass = rule.integrate(|x| model.weight(x));
    let phi: Vec<Vec<f64>> = rule.x.iter().map(|&x| model.characters(kmax, x)).collect();
    let mut worst: f64 = 0.0;
    for j in 0..=kmax {
        for k in j..=kmax {
            let v = neumaier_sum(
                rule.x
                    .iter()
                    .zip(&rule.w)
                    .enumerate()
                    .map(|(i, (&x, &w))| w * model.weight(x) * phi[i][j] * phi[i][k]),
            );
            let want = if j == k { model.norm_sq(k) } else { 0.0 };
            worst = worst.max((v - want).abs());
        }
    }
    (mass, worst)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DecayProbe {
    pub thetas: Vec<f64>,
    pub kmax: usize,
    /// `values[t][k] = |φ_k(θ_t)| / dimension_weight(k)`.
    pub values: Vec<Vec<f64>>,
    /// `2 / ((kmax/2 + 1) · min sin θ)`.
    pub bound: f64,
    /// Largest normalized value over `k ∈ [kmax/2, kmax]`.
    pub tail_max: f64,
    pub passed: bool,
}

pub fn character_decay_probe(model: HypergroupModel, thetas: &[f64], kmax: usize) -> Result<DecayProbe> {
    if thetas.is_empty() {
        return Err(Error::validation("no probe angles"));
    }
    if let Some(t) = thetas.iter().find(|&&t| !(1e-3..=PI - 1e-3).contains(&t)) {
        return Err(Error::validation(format!("probe angle {t} is within 1e-3 of 0 or π")));
    }
    let values: Vec<Vec<f64>> = thetas
        .iter()
        .map(|&t| {
            (0..=kmax)
                .map(|k| model.character(k, t).abs() / model.dimension_weight(k))
                .collect()
        })
        .collect();
    let sin_min = thetas.iter().map(|t| t.sin()).fold(f64::INFINITY, f64::min);
    let bound = 2.0 / ((kmax / 2 + 1) as f64 * sin_min);
    let tail_max = values
        .iter()
        .flat_map(|row| row[kmax / 2..].iter().copied())
        .fold(0.0, f64::max);
    Ok(DecayProbe {
        thetas: thetas.to_vec(),
        kmax,
        values,
        bound,
        tail_max,
        passed: tail_max <= bound,
    })
}

/// Experiment description, read from JSON.
///
/// ```json
/// {"version": 1, "model": "chebyshev", "scheme": "fejer", "n": [4, 8, 16, 32],
///  "quadrature": {"panels": 64, "nodes": 16}}
/// ```
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExperimentSpec {
    #[serde(default = "one")]
    pub version: u32,
    #[serde(default)]
    pub label: Option<String>,
    pub model: HypergroupModel,
    pub scheme: SchemeKind,
    pub n: Vec<usize>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
}

fn one() -> u32 {
    1
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text)?;
        if spec.version > 1 {
            return Err(Error::Parse(format!("experiment version {} is not supported", spec.version)));
        }
        if spec.n.is_empty() {
            return Err(Error::validation("experiment lists no n values"));
        }
        spec.quadrature.validate()?;
        CoefficientScheme::new(spec.model, spec.scheme)?;
        Ok(spec)
    }
}

/// Bumped whenever [`EXPERIMENT_CSV_HEADER`] changes.
pub const EXPERIMENT_CSV_VERSION: u32 = 1;

pub const EXPERIMENT_CSV_HEADER: [&str; 12] = [
    "model",
    "scheme",
    "n",
    "diagonal_norm",
    "diagonal_error",
    "converged",
    "bai_norm",
    "bai_error",
    "multiplier_k1",
    "lower_bound",
    "bound_ok",
    "config_hash",
];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExperimentRow {
    pub model: HypergroupModel,
    pub scheme: SchemeKind,
    pub n: usize,
    pub diagonal: Estimate,
    pub bai: Estimate,
    /// `m̂(1)`; tends to 1 along an approximate diagonal.
    pub multiplier_k1: f64,
    pub lower_bound: Option<f64>,
    /// `diagonal ≥ lower_bound − tolerance`, when a bound exists.
    pub bound_ok: Option<bool>,
}

impl ExperimentRow {
    pub fn csv_record(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(|v| format!("{v:.12}")).unwrap_or_default();
        vec![
            self.model.label().into(),
            self.scheme.name().into(),
            self.n.to_string(),
            format!("{:.12}", self.diagonal.value),
            format!("{:.3e}", self.diagonal.error_estimate),
            (self.diagonal.converged && self.bai.converged).to_string(),
            format!("{:.12}", self.bai.value),
            format!("{:.3e}", self.bai.error_estimate),
            format!("{:.12}", self.multiplier_k1),
            opt(self.lower_bound),
            self.bound_ok.map(|b| b.to_string()).unwrap_or_default(),
            self.diagonal.config_hash.clone(),
        ]
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentRow>> {
    let scheme = CoefficientScheme::new(spec.model, spec.scheme)?;
    let q = &spec.quadrature;
    spec.n
        .iter()
        .map(|&n| {
            let diagonal = diagonal_norm(&scheme, n, q)?;
            let bai = bai_norm(&scheme, n, q)?;
            let lower_bound = match spec.model {
                HypergroupModel::Su2 => Some(su2_divergence_lower_bound(&scheme, n)?),
                HypergroupModel::Chebyshev => None,
            };
            let bound_ok = lower_bound
                .map(|b| diagonal.value >= b - q.tolerance.max(diagonal.error_estimate));
            Ok(ExperimentRow {
                model: spec.model,
                scheme: spec.scheme,
                n,
                multiplier_k1: scheme.multiplier(1, n),
                diagonal,
                bai,
                lower_bound,
                bound_ok,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> QuadratureConfig {
        QuadratureConfig {
            panels: 16,
            nodes: 16,
            ..Default::default()
        }
    }

    #[test]
    fn su2_character_values() {
        let m = su2_model();
        for k in 0..20 {
            assert!((m.character(k, 0.0) - (k + 1) as f64).abs() < 1e-12);
            assert!((m.character(k, PI) - (k + 1) as f64 * if k % 2 == 0 { 1.0 } else { -1.0 }).abs() < 1e-9);
            // recurrence and quotient agree just outside the switch-over
            let t = 2e-4;
            let direct = ((k + 1) as f64 * t).sin() / t.sin();
            assert!((chebyshev_u(k, t.cos()) - direct).abs() < 1e-9);
        }
        assert!(m.character(1, PI / 2.0).abs() < 1e-15);
        assert!(m.character(7, PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn haar_mass_and_orthogonality() {
        let q = QuadratureConfig::default();
        let (mass, res) = orthogonality_residual(su2_model(), 30, &q);
        assert!((mass - 1.0).abs() < 1e-12);
        assert!(res < 1e-10, "{res}");
        let (mass, res) = orthogonality_residual(chebyshev_model(), 50, &q);
        assert!((mass - 1.0).abs() < 1e-12);
        assert!(res < 1e-12, "{res}");
    }

    #[test]
    fn scheme_tables() {
        let s = CoefficientScheme::new(su2_model(), SchemeKind::Dirichlet).unwrap();
        assert_eq!(s.a(3, 5), 4.0);
        assert_eq!(s.tensor(3, 5), 16.0);
        assert_eq!(s.a(6, 5), 0.0);
        assert!((s.multiplier(3, 5) - 1.0).abs() < 1e-15);
        let f = CoefficientScheme::new(chebyshev_model(), SchemeKind::Fejer).unwrap();
        assert_eq!(f.a(0, 3), 1.0);
        assert_eq!(f.a(1, 3), 1.5);
        assert_eq!(f.tensor(1, 3), 1.5);
        let lit = CoefficientScheme::new(chebyshev_model(), SchemeKind::FejerLiteral).unwrap();
        assert!(lit.a(3, 3) < 0.0);
        assert!(CoefficientScheme::new(su2_model(), SchemeKind::FejerLiteral).is_err());
    }

    #[test]
    fn trivial_levels() {
        let q = small();
        for model in [su2_model(), chebyshev_model()] {
            let rule = q.rule();
            assert_eq!(tensor_l1(model, &[0.0, 0.0, 0.0], &rule), 0.0);
            assert!((tensor_l1(model, &[-2.5], &rule) - 2.5).abs() < 1e-12);
        }
        let s = CoefficientScheme::new(su2_model(), SchemeKind::Fejer).unwrap();
        assert!((diagonal_norm(&s, 0, &q).unwrap().value - 1.0).abs() < 1e-12);
    }

    /// Brute-force midpoint rule on a fine grid; agrees with the Gauss rule to
    /// the midpoint rule's own accuracy.
    #[test]
    fn diagonal_norm_matches_midpoint_oracle() {
        let s = CoefficientScheme::new(su2_model(), SchemeKind::Dirichlet).unwrap();
        let n = 4;
        let c = s.tensor_coefficients(n);
        let m = 1200;
        let h = PI / m as f64;
        let mut total = 0.0;
        for i in 0..m {
            let x = (i as f64 + 0.5) * h;
            for j in 0..m {
                let y = (j as f64 + 0.5) * h;
                let v: f64 = (0..=n)
                    .map(|k| c[k] * s.model.character(k, x) * s.model.character(k, y))
                    .sum();
                total += v.abs() * s.model.weight(x) * s.model.weight(y) * h * h;
            }
        }
        let est = diagonal_norm(&s, n, &small()).unwrap();
        assert!((est.value - total).abs() < 1e-4, "{} vs {total}", est.value);
    }

    #[test]
    fn chebyshev_fejer_is_one() {
        let s = CoefficientScheme::new(chebyshev_model(), SchemeKind::Fejer).unwrap();
        for n in [1, 4, 8] {
            let e = diagonal_norm(&s, n, &small()).unwrap();
            assert!((e.value - 1.0).abs() < 1e-9, "n={n}: {}", e.value);
            assert!((bai_norm(&s, n, &small()).unwrap().value - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn lower_bound_values() {
        let s = CoefficientScheme::new(su2_model(), SchemeKind::Dirichlet).unwrap();
        let b1 = su2_divergence_lower_bound(&s, 1).unwrap();
        assert!((b1 - (2.0 / PI).powi(2) * 16.0 / 9.0).abs() < 1e-15);
        let mut prev = 0.0;
        for n in 1..60 {
            let b = su2_divergence_lower_bound(&s, n).unwrap();
            assert!(b >= prev);
            prev = b;
        }
        let cheb = CoefficientScheme::new(chebyshev_model(), SchemeKind::Fejer).unwrap();
        assert!(su2_divergence_lower_bound(&cheb, 3).is_err());
    }

    #[test]
    fn decay() {
        let p = character_decay_probe(su2_model(), &[PI / 3.0, PI / 2.0, 1.0], 100).unwrap();
        assert!(p.passed);
        for (row, t) in p.values.iter().zip(&p.thetas) {
            for (k, v) in row.iter().enumerate() {
                assert!(*v <= 1.0 / ((k + 1) as f64 * t.sin()) + 1e-12);
            }
        }
        assert!(p.values[1][7] < 1e-14);
        let c = character_decay_probe(chebyshev_model(), &[1.0], 100).unwrap();
        assert!(!c.passed);
        assert!(character_decay_probe(su2_model(), &[1e-4], 10).is_err());
    }

    #[test]
    fn experiment_spec_parsing() {
        let s = ExperimentSpec::parse(r#"{"model":"chebyshev","scheme":"fejer-literal","n":[2]}"#).unwrap();
        assert_eq!(s.quadrature, QuadratureConfig::default());
        assert!(ExperimentSpec::parse(r#"{"model":"su2","scheme":"fejer-literal","n":[2]}"#).is_err());
        assert!(ExperimentSpec::parse(r#"{"model":"su2","scheme":"fejer","n":[]}"#).is_err());
        assert!(ExperimentSpec::parse(r#"{"model":"torus","scheme":"fejer","n":[1]}"#).is_err());
    }
}
