//! Exact pairings for the central measure on `(T ⋊ Z₂)²`.
//!
//! `G = T ⋊ Z₂` with `(s,a)(t,b) = (s t^a, ab)`. Its dual is `{1, σ, π_n}`
//! with normalized characters `1`, `σ(s,a) = a`, and
//! `ψ_{π_n}(s,1) = (sⁿ + s⁻ⁿ)/2`, `ψ_{π_n}(s,−1) = 0`.
//!
//! Functions on `G` are kept as a pair of Laurent polynomials in `s` (one per
//! sign of `a`) with rational coefficients, so every Haar integral is the
//! constant term and nothing is approximated. The measure is
//!
//! `μ = 1⊗1 + σ⊗σ − 2(1+σ)⊗(1+σ) + λ_D + λ_A`
//!
//! where `λ_D`, `λ_A` are Haar measures of `{((s,1),(s,1))}` and
//! `{((s,1),(s⁻¹,1))}`. The claim checked is `μ̂(π×ρ) = δ_{π,ρ}`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub type Q = Ratio<i64>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Finite Laurent polynomial `Σ c_m sᵐ` over the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i64, Q>);

impl Laurent {
    pub fn monomial(m: i64, c: Q) -> Self {
        let mut l = Laurent::default();
        l.add_term(m, c);
        l
    }

    fn add_term(&mut self, m: i64, c: Q) {
        let e = self.0.entry(m).or_insert_with(|| q(0));
        *e += c;
        if *e == q(0) {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&m, &c) in &other.0 {
            out.add_term(m, c);
        }
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (&m, &a) in &self.0 {
            for (&n, &b) in &other.0 {
                out.add_term(m + n, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: Q) -> Laurent {
        let mut out = Laurent::default();
        for (&m, &a) in &self.0 {
            out.add_term(m, a * c);
        }
        out
    }

    /// `s ↦ s⁻¹`. Equals complex conjugation on T for rational coefficients.
    pub fn invert(&self) -> Laurent {
        Laurent(self.0.iter().map(|(&m, &c)| (-m, c)).collect())
    }

    /// `∫_T f ds`, the constant term.
    pub fn integral(&self) -> Q {
        self.0.get(&0).copied().unwrap_or_else(|| q(0))
    }

    /// Value at `s = 1`.
    pub fn at_one(&self) -> Q {
        self.0.values().copied().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// A function on `T ⋊ Z₂`: `parts[0]` on `a = 1`, `parts[1]` on `a = −1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GFun {
    pub parts: [Laurent; 2],
}

impl GFun {
    pub fn mul(&self, other: &GFun) -> GFun {
        GFun {
            parts: [
                self.parts[0].mul(&other.parts[0]),
                self.parts[1].mul(&other.parts[1]),
            ],
        }
    }

    pub fn conj(&self) -> GFun {
        GFun {
            parts: [self.parts[0].invert(), self.parts[1].invert()],
        }
    }

    /// `∫_G f = ½ Σ_a ∫_T f(s,a) ds`.
    pub fn integral(&self) -> Q {
        (self.parts[0].integral() + self.parts[1].integral()) / q(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TZ2Character {
    Trivial,
    Sigma,
    Pi(u32),
}

impl TZ2Character {
    /// Normalized character as a [`GFun`].
    pub fn function(&self) -> GFun {
        let one = Laurent::monomial(0, q(1));
        match *self {
            TZ2Character::Trivial => GFun {
                parts: [one.clone(), one],
            },
            TZ2Character::Sigma => GFun {
                parts: [one, Laurent::monomial(0, q(-1))],
            },
            TZ2Character::Pi(n) => {
                let half = Ratio::new(1, 2);
                let n = n as i64;
                GFun {
                    parts: [
                        Laurent::monomial(n, half).add(&Laurent::monomial(-n, half)),
                        Laurent::default(),
                    ],
                }
            }
        }
    }

    /// `{1, σ, π_1, …, π_n}`.
    pub fn dual_up_to(n: u32) -> Vec<TZ2Character> {
        let mut v = vec![TZ2Character::Trivial, TZ2Character::Sigma];
        v.extend((1..=n).map(TZ2Character::Pi));
        v
    }
}

impl fmt::Display for TZ2Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TZ2Character::Trivial => write!(f, "1"),
            TZ2Character::Sigma => write!(f, "σ"),
            TZ2Character::Pi(n) => write!(f, "π_{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MuPart {
    TensorAtoms,
    LambdaD,
    LambdaA,
}

/// `∫ conj(ψ_π) · f` over `G`.
fn pair_function(f: &GFun, pi: TZ2Character) -> Q {
    f.mul(&pi.function().conj()).integral()
}

/// Pairing of `1⊗1 + σ⊗σ + coef·(1+σ)⊗(1+σ)` with `conj(ψ_π ⊗ ψ_ρ)`.
pub fn pair_tensor_atoms_with(pi: TZ2Character, rho: TZ2Character, coef: Q) -> Q {
    let one = TZ2Character::Trivial.function();
    let sigma = TZ2Character::Sigma.function();
    let (p1, ps) = (pair_function(&one, pi), pair_function(&sigma, pi));
    let (r1, rs) = (pair_function(&one, rho), pair_function(&sigma, rho));
    p1 * r1 + ps * rs + coef * (p1 + ps) * (r1 + rs)
}

pub fn pair_tensor_atoms(pi: TZ2Character, rho: TZ2Character) -> Q {
    pair_tensor_atoms_with(pi, rho, q(-2))
}

pub fn pair_part(part: MuPart, pi: TZ2Character, rho: TZ2Character) -> Q {
    let left = pi.function().conj().parts[0].clone();
    let right = rho.function().conj().parts[0].clone();
    match part {
        MuPart::TensorAtoms => pair_tensor_atoms(pi, rho),
        // ∫_T conj ψ_π(s,1) conj ψ_ρ(s,1) ds
        MuPart::LambdaD => left.mul(&right).integral(),
        // ∫_T conj ψ_π(s,1) conj ψ_ρ(s⁻¹,1) ds
        MuPart::LambdaA => left.mul(&right.invert()).integral(),
    }
}

/// `ν = λ_D + λ_A` paired with `conj(ψ_π ⊗ ψ_ρ)`.
pub fn pair_nu(pi: TZ2Character, rho: TZ2Character) -> Q {
    pair_part(MuPart::LambdaD, pi, rho) + pair_part(MuPart::LambdaA, pi, rho)
}

pub fn mu_hat(pi: TZ2Character, rho: TZ2Character) -> Q {
    pair_tensor_atoms(pi, rho) + pair_nu(pi, rho)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PairFailure {
    pub pi: String,
    pub rho: String,
    pub got: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TZ2Report {
    pub n: u32,
    pub atom_coefficient: String,
    pub pairs: usize,
    pub failures: Vec<PairFailure>,
    pub passed: bool,
}

/// Checks `μ̂(π×ρ) = δ_{π,ρ}` on all pairs from `{1, σ, π_1..π_n}`.
pub fn verify_finabexample(n: u32) -> TZ2Report {
    verify_finabexample_with(n, q(-2))
}

/// As [`verify_finabexample`] with the `(1+σ)⊗(1+σ)` coefficient replaced.
pub fn verify_finabexample_with(n: u32, atom_coefficient: Q) -> TZ2Report {
    let dual = TZ2Character::dual_up_to(n);
    let mut failures = Vec::new();
    for &pi in &dual {
        for &rho in &dual {
            let got = pair_tensor_atoms_with(pi, rho, atom_coefficient) + pair_nu(pi, rho);
            let expected = if pi == rho { q(1) } else { q(0) };
            if got != expected {
                failures.push(PairFailure {
                    pi: pi.to_string(),
                    rho: rho.to_string(),
                    got: got.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    TZ2Report {
        n,
        atom_coefficient: atom_coefficient.to_string(),
        pairs: dual.len() * dual.len(),
        passed: failures.is_empty(),
        failures,
    }
}
