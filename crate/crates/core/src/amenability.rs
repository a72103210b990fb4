//! The diagonal of the centre of a finite group algebra and its norm.
//!
//! For finite `G` the centre has the unique diagonal
//! `μ = Σ_π d_π² χ_π ⊗ χ_π = Σ_{C,C'} c(C,C') 1_{C̄} ⊗ 1_{C'}` with
//! `c(C,C') = Σ_π d_π² conj(χ_π(C)) χ_π(C')`, and the amenability constant is
//! its L¹ norm on `G × G`:
//!
//! `AM = (1/|G|²) Σ_{C,C'} |c(C,C')| |C| |C'|`.

use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::central::{ClassAlgebra, ClassFunction};
use crate::chartable::{character_table_with, CharTableOptions, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{conjugacy_structure, quotient_group, FiniteGroup};
use crate::numeric::{neumaier_sum, neumaier_sum_complex, snap_rational};

/// Lower bound on `AM − 1` for nonabelian groups.
pub const RIDER_GAP: f64 = 1.0 / 700.0;
/// Tolerance for reporting a snapped rational next to the raw value.
pub const SNAP_TOL: f64 = 1e-9;
pub const SNAP_MAX_DEN: i64 = 64;
pub const DIAGONAL_TOL: f64 = 1e-9;

/// Coefficients `c(C,C')` of the diagonal in the `1_C ⊗ 1_{C'}` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalCoefficients {
    pub group_hash: String,
    pub c: Vec<Vec<Complex64>>,
}

impl DiagonalCoefficients {
    pub fn get(&self, c: usize, d: usize) -> Complex64 {
        self.c[c][d]
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }
}

pub fn diagonal(t: &CharacterTable) -> DiagonalCoefficients {
    let r = t.num_classes();
    let c = (0..r)
        .into_par_iter()
        .map(|a| {
            (0..r)
                .map(|b| {
                    neumaier_sum_complex((0..t.num_irreps()).map(|p| {
                        let d2 = (t.degree(p) * t.degree(p)) as f64;
                        d2 * t.value(p, a).conj() * t.value(p, b)
                    }))
                })
                .collect()
        })
        .collect();
    DiagonalCoefficients {
        group_hash: t.group_hash().to_string(),
        c,
    }
}

/// AM together with its nearest small-denominator rational, when one is close.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmValue {
    pub value: f64,
    pub snapped: Option<Ratio<i64>>,
}

impl AmValue {
    fn new(value: f64) -> Self {
        AmValue {
            value,
            snapped: snap_rational(value, SNAP_MAX_DEN, SNAP_TOL),
        }
    }

    pub fn snapped_string(&self) -> Option<String> {
        self.snapped.map(|r| r.to_string())
    }
}

/// L¹ norm of `Σ c(C,C') 1_C ⊗ 1_{C'}` on `G × G` with normalized measure.
pub fn diagonal_norm(dc: &DiagonalCoefficients, class_sizes: &[usize]) -> f64 {
    let order: usize = class_sizes.iter().sum();
    let rows: Vec<f64> = dc
        .c
        .par_iter()
        .enumerate()
        .map(|(a, row)| {
            neumaier_sum(
                row.iter()
                    .enumerate()
                    .map(|(b, z)| z.norm() * (class_sizes[a] * class_sizes[b]) as f64),
            )
        })
        .collect();
    neumaier_sum(rows) / (order as f64 * order as f64)
}

pub fn am_constant(t: &CharacterTable) -> AmValue {
    AmValue::new(diagonal_norm(&diagonal(t), t.class_sizes()))
}

/// `(1/|G|) Σ_{π,C} d_π² (|C|/|G|) |χ_π(C)|² |C|`, the diagonal (C = C') part
/// of the AM sum written through the unitary `U = [√(|C|/|G|) χ_π(C)]`.
pub fn hs_lower_bound(t: &CharacterTable) -> f64 {
    let g = t.group_order() as f64;
    let sizes = t.class_sizes();
    let terms = (0..t.num_irreps()).flat_map(|p| {
        (0..t.num_classes()).map(move |c| {
            let d = t.degree(p) as f64;
            let s = sizes[c] as f64;
            d * d * (s / g) * t.value(p, c).norm_sqr() * s
        })
    });
    neumaier_sum(terms) / g
}

/// Outcome of checking the diagonal laws in the class-sum basis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DiagonalReport {
    /// Worst relative residual of `f·μ − μ·f` over the character basis.
    pub module_residual: f64,
    /// Worst relative residual of `m(μ) ∗ f − f` over the character basis.
    pub multiplication_residual: f64,
    /// The basis element and law with the largest residual, when failing.
    pub failure: Option<String>,
    pub passed: bool,
}

/// The coefficient `c(C,C')` carries `conj χ(C)`, so as an element of
/// `Z ⊗ Z` it multiplies `1_{C̄} ⊗ 1_{C'}`; this is `Σ_π d_π² χ_π ⊗ χ_π`.
///
/// Checks that `dc` is a diagonal: `f·μ = μ·f` and `m(μ) ∗ f = f` for every
/// character `f = χ_π`. Products are taken in `algebra`, built from exact
/// structure constants, so the check does not reuse the table's arithmetic.
///
/// Residuals are relative: the max-abs difference divided by
/// `max(1, max-abs of the expected value)`.
pub fn verify_diagonal(
    algebra: &ClassAlgebra,
    t: &CharacterTable,
    dc: &DiagonalCoefficients,
) -> Result<DiagonalReport> {
    verify_diagonal_with(algebra, t, dc, DIAGONAL_TOL)
}

pub fn verify_diagonal_with(
    algebra: &ClassAlgebra,
    t: &CharacterTable,
    dc: &DiagonalCoefficients,
    tol: f64,
) -> Result<DiagonalReport> {
    if dc.group_hash != t.group_hash() || algebra.group_hash() != t.group_hash() {
        return Err(Error::mismatch("diagonal, table and algebra must share a group"));
    }
    let r = t.num_classes();
    let hash = t.group_hash();
    let indicators: Vec<ClassFunction> = (0..r)
        .map(|c| ClassFunction::indicator(hash, r, c))
        .collect();
    // products[a][b] = 1_a ∗ 1_b
    let products: Vec<Vec<Vec<Complex64>>> = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| algebra.convolve_coeffs(&indicators[a].coeffs, &indicators[b].coeffs))
                .collect()
        })
        .collect();
    let m_mu: Vec<Complex64> = (0..r)
        .map(|k| {
            neumaier_sum_complex(
                (0..r)
                    .flat_map(|a| (0..r).map(move |b| (a, b)))
                    .map(|(a, b)| dc.c[a][b] * products[t.inverse_class(a)][b][k]),
            )
        })
        .collect();

    let mut module_residual: f64 = 0.0;
    let mut multiplication_residual: f64 = 0.0;
    let mut worst: (f64, String) = (0.0, String::new());
    for p in 0..t.num_irreps() {
        let f = ClassFunction::character(t, p);
        // f·μ = Σ c(a,b) (f ∗ 1_ā) ⊗ 1_b ; μ·f = Σ c(a,b) 1_ā ⊗ (1_b ∗ f)
        let f_conv: Vec<Vec<Complex64>> = (0..r)
            .map(|a| algebra.convolve_coeffs(&f.coeffs, &indicators[a].coeffs))
            .collect();
        let mut left = vec![vec![Complex64::new(0.0, 0.0); r]; r];
        let mut right = vec![vec![Complex64::new(0.0, 0.0); r]; r];
        for a in 0..r {
            let abar = t.inverse_class(a);
            for b in 0..r {
                let c = dc.c[a][b];
                for k in 0..r {
                    left[k][b] += c * f_conv[abar][k];
                    right[abar][k] += c * f_conv[b][k];
                }
            }
        }
        let scale = left
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(1.0, f64::max);
        let diff = left
            .iter()
            .flatten()
            .zip(right.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
            / scale;
        module_residual = module_residual.max(diff);
        if diff > worst.0 {
            worst = (diff, format!("module law at χ_{p}"));
        }

        let got = algebra.convolve_coeffs(&m_mu, &f.coeffs);
        let scale = f.coeffs.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let diff = got
            .iter()
            .zip(&f.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
            / scale;
        multiplication_residual = multiplication_residual.max(diff);
        if diff > worst.0 {
            worst = (diff, format!("m(μ)∗f = f at χ_{p}"));
        }
    }
    let passed = module_residual <= tol && multiplication_residual <= tol;
    Ok(DiagonalReport {
        module_residual,
        multiplication_residual,
        failure: (!passed).then(|| format!("{} (residual {:.3e})", worst.1, worst.0)),
        passed,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProductReport {
    pub am_left: f64,
    pub am_right: f64,
    pub am_product: f64,
    pub relative_error: f64,
    pub passed: bool,
}

/// AM of `G × H` (from the tensor product of the tables) against `AM(G)·AM(H)`.
pub fn product_multiplicativity_check(t1: &CharacterTable, t2: &CharacterTable) -> ProductReport {
    let am_left = am_constant(t1).value;
    let am_right = am_constant(t2).value;
    let am_product = am_constant(&t1.tensor(t2)).value;
    let relative_error = (am_product - am_left * am_right).abs() / am_product;
    ProductReport {
        am_left,
        am_right,
        am_product,
        relative_error,
        passed: relative_error <= 1e-8,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuotientReport {
    pub quotient_order: usize,
    pub am_group: f64,
    pub am_quotient: f64,
    pub passed: bool,
}

/// Computes AM for `G` and `G/N` and checks `AM(G) ≥ AM(G/N) − 1e-9`.
pub fn quotient_monotonicity_check(
    group: &FiniteGroup,
    normal: &[usize],
    options: &CharTableOptions,
) -> Result<QuotientReport> {
    let q = quotient_group(group, normal)?;
    let tg = character_table_with(group, &conjugacy_structure(group), options)?;
    let tq = character_table_with(&q.group, &conjugacy_structure(&q.group), options)?;
    let am_group = am_constant(&tg).value;
    let am_quotient = am_constant(&tq).value;
    Ok(QuotientReport {
        quotient_order: q.group.order(),
        am_group,
        am_quotient,
        passed: am_group >= am_quotient - 1e-9,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RiderReport {
    pub abelian: bool,
    pub am: f64,
    pub passed: bool,
}

/// Nonabelian: `AM ≥ 1 + 1/700`. Abelian: `AM = 1 ± 1e-9`.
pub fn rider_gap_check(t: &CharacterTable) -> RiderReport {
    let am = am_constant(t).value;
    let abelian = t.is_abelian();
    let passed = if abelian {
        (am - 1.0).abs() <= 1e-9
    } else {
        am >= 1.0 + RIDER_GAP
    };
    RiderReport { abelian, am, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::group::Perm;

    fn group(cycles: &[&str]) -> FiniteGroup {
        let g: Vec<Perm> = cycles.iter().map(|c| Perm::parse_cycles(c, 0).unwrap()).collect();
        FiniteGroup::from_permutation_generators(&g, "g").unwrap()
    }

    fn setup(cycles: &[&str]) -> (FiniteGroup, CharacterTable, ClassAlgebra) {
        let g = group(cycles);
        let cs = conjugacy_structure(&g);
        let t = character_table(&g, &cs).unwrap();
        let alg = ClassAlgebra::new(&g, &cs);
        (g, t, alg)
    }

    /// AM straight from the element-level definition: the diagonal as a
    /// function on G × G summed over all |G|² pairs.
    fn brute_am(g: &FiniteGroup, t: &CharacterTable) -> f64 {
        let cs = conjugacy_structure(g);
        let n = g.order();
        let mut total = 0.0;
        for s in 0..n {
            for u in 0..n {
                let mut v = Complex64::new(0.0, 0.0);
                for p in 0..t.num_irreps() {
                    let d = t.degree(p) as f64;
                    v += d * d * t.value(p, cs.class_of(s)) * t.value(p, cs.class_of(u));
                }
                total += v.norm();
            }
        }
        total / (n * n) as f64
    }

    #[test]
    fn s3_diagonal_entries() {
        let (g, t, _) = setup(&["(1 2)", "(1 2 3)"]);
        let dc = diagonal(&t);
        // classes: e, transpositions, 3-cycles
        let expect = [[18.0, 0.0, -6.0], [0.0, 2.0, 0.0], [-6.0, 0.0, 6.0]];
        for a in 0..3 {
            for b in 0..3 {
                assert!((dc.get(a, b) - expect[a][b]).norm() < 1e-12, "{a},{b}");
            }
        }
        let am = am_constant(&t);
        assert!((am.value - 7.0 / 3.0).abs() < 1e-12);
        assert_eq!(am.snapped, Some(Ratio::new(7, 3)));
        assert!((brute_am(&g, &t) - 7.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn d4_diagonal_entries() {
        let (g, t, _) = setup(&["(1 2 3 4)", "(1 3)"]);
        let cs = conjugacy_structure(&g);
        let dc = diagonal(&t);
        let e = cs.class_of(g.identity());
        let z = g.center().into_iter().find(|&x| x != g.identity()).unwrap();
        let rz = cs.class_of(z);
        for a in 0..5 {
            let expect = if cs.size(a) == 1 { 20.0 } else { 4.0 };
            assert!((dc.get(a, a).re - expect).abs() < 1e-12);
            for b in 0..5 {
                if a == b {
                    continue;
                }
                let expect = if (a, b) == (e, rz) || (a, b) == (rz, e) { -12.0 } else { 0.0 };
                assert!((dc.get(a, b) - expect).norm() < 1e-12);
            }
        }
        assert_eq!(am_constant(&t).snapped, Some(Ratio::new(7, 4)));
        assert!((brute_am(&g, &t) - 1.75).abs() < 1e-12);
    }

    #[test]
    fn diagonal_symmetries() {
        let (_, t, _) = setup(&["(1 2 3)", "(1 2)(3 4)"]);
        let dc = diagonal(&t);
        let e = t.identity_class();
        let d4: f64 = t.degrees().iter().map(|&d| (d * d * d * d) as f64).sum();
        assert!((dc.get(e, e).re - d4).abs() < 1e-9);
        for a in 0..dc.len() {
            for b in 0..dc.len() {
                assert!((dc.get(b, a) - dc.get(a, b).conj()).norm() < 1e-9);
            }
            if t.inverse_class(a) == a {
                assert!(dc.get(a, a).im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn abelian_diagonal_is_antidiagonal_haar() {
        let (g, t, alg) = setup(&["(1 2 3 4 5 6)"]);
        let dc = diagonal(&t);
        let cs = conjugacy_structure(&g);
        // As a function of (s, u), c(s, u) = |G| exactly when u = s, i.e. the
        // pairing χ(s⁻¹)χ(u) lives on the anti-diagonal u·s⁻¹ = e.
        for s in 0..6 {
            for u in 0..6 {
                let want = if g.mul(u, g.inverse(s)) == g.identity() { 6.0 } else { 0.0 };
                assert!((dc.get(cs.class_of(s), cs.class_of(u)) - want).norm() < 1e-12);
            }
        }
        assert!((am_constant(&t).value - 1.0).abs() < 1e-12);
        assert!(verify_diagonal(&alg, &t, &dc).unwrap().passed);
    }

    #[test]
    fn verify_detects_perturbation() {
        let (_, t, alg) = setup(&["(1 2)", "(1 2 3)"]);
        let mut dc = diagonal(&t);
        assert!(verify_diagonal(&alg, &t, &dc).unwrap().passed);
        dc.c[1][2] += 0.01;
        let rep = verify_diagonal(&alg, &t, &dc).unwrap();
        assert!(!rep.passed);
        assert!(rep.module_residual.max(rep.multiplication_residual) >= 1e-3);
        assert!(rep.failure.is_some());
    }

    #[test]
    fn hs_bound_sandwich() {
        let (_, t, _) = setup(&["(1 2)", "(1 2 3)"]);
        let hs = hs_lower_bound(&t);
        assert!(hs > 1.0 && hs <= 7.0 / 3.0 + 1e-9);
        let (_, t, _) = setup(&["(1 2 3 4 5)"]);
        assert!((hs_lower_bound(&t) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn products_and_quotients() {
        let (_, s3, _) = setup(&["(1 2)", "(1 2 3)"]);
        let (_, d4, _) = setup(&["(1 2 3 4)", "(1 3)"]);
        let (_, z4, _) = setup(&["(1 2 3 4)"]);
        let rep = product_multiplicativity_check(&s3, &s3);
        assert!(rep.passed);
        assert_eq!(snap_rational(rep.am_product, 64, 1e-9), Some(Ratio::new(49, 9)));
        let rep = product_multiplicativity_check(&s3, &d4);
        assert_eq!(snap_rational(rep.am_product, 64, 1e-9), Some(Ratio::new(49, 12)));
        let rep = product_multiplicativity_check(&z4, &s3);
        assert!((rep.am_product - 7.0 / 3.0).abs() < 1e-9);

        let s3g = group(&["(1 2)", "(1 2 3)"]);
        let all: Vec<usize> = (0..6).collect();
        let q = quotient_monotonicity_check(&s3g, &all, &Default::default()).unwrap();
        assert!(q.passed && (q.am_quotient - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rider() {
        let (_, s3, _) = setup(&["(1 2)", "(1 2 3)"]);
        assert!(rider_gap_check(&s3).passed);
        let (_, z8, _) = setup(&["(1 2 3 4 5 6 7 8)"]);
        let r = rider_gap_check(&z8);
        assert!(r.abelian && r.passed);
    }
}
