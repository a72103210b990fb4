//! Class functions as elements of the centre of the group algebra.
//!
//! Everything uses normalized Haar measure on `G` (total mass 1):
//!
//! * `∫_G f = (1/|G|) Σ_s f(s)`
//! * `(f ∗ g)(s) = (1/|G|) Σ_t f(t) g(t⁻¹s)`
//! * `‖f‖₁ = (1/|G|) Σ_C |C| |f(C)|`
//! * `f̂(π) = (1/|G|) Σ_C |C| f(C) conj(ψ_π(C))`, `ψ_π = χ_π / d_π`
//!
//! With these conventions `χ_π ∗ χ_σ = δ_{πσ} χ_π / d_π` and the unit is
//! `|G| · 1_{e}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chartable::{class_sum_structure_constants, CharacterTable, StructureConstants};
use crate::error::{Error, Result};
use crate::group::{ConjugacyStructure, FiniteGroup, Quotient};
use crate::numeric::neumaier_sum_complex;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A function on `G` constant on conjugacy classes, stored by class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFunction {
    pub group_hash: String,
    pub coeffs: Vec<Complex64>,
}

impl ClassFunction {
    pub fn new(group_hash: impl Into<String>, coeffs: Vec<Complex64>) -> Self {
        ClassFunction {
            group_hash: group_hash.into(),
            coeffs,
        }
    }

    pub fn zero(group_hash: &str, classes: usize) -> Self {
        Self::new(group_hash, vec![ZERO; classes])
    }

    /// `1_C`
    pub fn indicator(group_hash: &str, classes: usize, class: usize) -> Self {
        let mut f = Self::zero(group_hash, classes);
        f.coeffs[class] = Complex64::new(1.0, 0.0);
        f
    }

    /// The convolution unit `|G| · 1_{e}`.
    pub fn unit(t: &CharacterTable) -> Self {
        let mut f = Self::zero(t.group_hash(), t.num_classes());
        f.coeffs[t.identity_class()] = Complex64::new(t.group_order() as f64, 0.0);
        f
    }

    /// `χ_π` as a class function.
    pub fn character(t: &CharacterTable, irrep: usize) -> Self {
        Self::new(t.group_hash(), t.values()[irrep].clone())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(1/|G|) Σ_C |C| |f(C)|`
    pub fn l1_norm(&self, class_sizes: &[usize]) -> f64 {
        let order: usize = class_sizes.iter().sum();
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .zip(class_sizes)
            .map(|(z, &s)| s as f64 * z.norm())
            .collect();
        crate::numeric::neumaier_sum(terms) / order as f64
    }

    /// Values on every element of `G`.
    pub fn to_elements(&self, cs: &ConjugacyStructure) -> Vec<Complex64> {
        (0..cs.group_order()).map(|x| self.coeffs[cs.class_of(x)]).collect()
    }

    pub fn scaled(&self, a: Complex64) -> Self {
        Self::new(self.group_hash.clone(), self.coeffs.iter().map(|z| z * a).collect())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self> {
        same_group(&self.group_hash, &other.group_hash)?;
        Ok(Self::new(
            self.group_hash.clone(),
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `max_C |f(C) − g(C)|`
    pub fn max_abs_diff(&self, other: &ClassFunction) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn same_group(a: &str, b: &str) -> Result<()> {
    if a != b {
        return Err(Error::mismatch(format!(
            "class functions belong to different groups ({}… vs {}…)",
            &a[..a.len().min(12)],
            &b[..b.len().min(12)]
        )));
    }
    Ok(())
}

fn check_table(f: &ClassFunction, t: &CharacterTable) -> Result<()> {
    same_group(&f.group_hash, t.group_hash())?;
    if f.len() != t.num_classes() {
        return Err(Error::mismatch(format!(
            "class function has {} coefficients, table has {} classes",
            f.len(),
            t.num_classes()
        )));
    }
    Ok(())
}

/// `Pf(s) = (1/|G|) Σ_t f(t s t⁻¹)`, evaluated at each class representative.
pub fn central_project(
    f: &[Complex64],
    group: &FiniteGroup,
    cs: &ConjugacyStructure,
) -> Result<ClassFunction> {
    if f.len() != group.order() {
        return Err(Error::mismatch(format!(
            "function has {} values, group has order {}",
            f.len(),
            group.order()
        )));
    }
    if cs.group_hash() != group.content_hash() {
        return Err(Error::mismatch("conjugacy structure belongs to another group"));
    }
    let n = group.order() as f64;
    let coeffs = (0..cs.len())
        .map(|c| {
            let s = cs.representative(c);
            neumaier_sum_complex((0..group.order()).map(|t| f[group.conjugate(s, t)])) / n
        })
        .collect();
    Ok(ClassFunction::new(group.content_hash(), coeffs))
}

/// `f̂(π) = (1/|G|) Σ_C |C| f(C) conj(ψ_π(C))`
pub fn gelfand_transform(f: &ClassFunction, t: &CharacterTable) -> Result<Vec<Complex64>> {
    check_table(f, t)?;
    let n = t.group_order() as f64;
    let sizes = t.class_sizes();
    Ok((0..t.num_irreps())
        .map(|p| {
            neumaier_sum_complex(
                (0..t.num_classes())
                    .map(|c| sizes[c] as f64 * f.coeffs[c] * t.normalized_value(p, c).conj()),
            ) / n
        })
        .collect())
}

/// `f = Σ_π d_π v(π) χ_π`, the inverse of [`gelfand_transform`].
pub fn inverse_gelfand(v: &[Complex64], t: &CharacterTable) -> Result<ClassFunction> {
    if v.len() != t.num_irreps() {
        return Err(Error::mismatch(format!(
            "vector has {} entries, table has {} irreducibles",
            v.len(),
            t.num_irreps()
        )));
    }
    let coeffs = (0..t.num_classes())
        .map(|c| {
            neumaier_sum_complex(
                (0..t.num_irreps()).map(|p| t.degree(p) as f64 * v[p] * t.value(p, c)),
            )
        })
        .collect();
    Ok(ClassFunction::new(t.group_hash(), coeffs))
}

/// Spectral convolution: transform, multiply pointwise, invert. `O(k²)` in the
/// class count.
pub fn convolve(f: &ClassFunction, g: &ClassFunction, t: &CharacterTable) -> Result<ClassFunction> {
    check_table(f, t)?;
    check_table(g, t)?;
    let fh = gelfand_transform(f, t)?;
    let gh = gelfand_transform(g, t)?;
    let prod: Vec<Complex64> = fh.iter().zip(&gh).map(|(a, b)| a * b).collect();
    inverse_gelfand(&prod, t)
}

/// Element-level convolution `(1/|G|) Σ_t f(t) g(t⁻¹s)`, `O(|G| k)`.
///
/// Kept as the reference route the spectral one is tested against.
pub fn convolve_direct(
    f: &ClassFunction,
    g: &ClassFunction,
    group: &FiniteGroup,
    cs: &ConjugacyStructure,
) -> Result<ClassFunction> {
    same_group(&f.group_hash, group.content_hash())?;
    same_group(&g.group_hash, group.content_hash())?;
    let n = group.order();
    let coeffs = (0..cs.len())
        .map(|c| {
            let s = cs.representative(c);
            neumaier_sum_complex((0..n).map(|t| {
                f.coeffs[cs.class_of(t)] * g.coeffs[cs.class_of(group.mul(group.inverse(t), s))]
            })) / n as f64
        })
        .collect();
    Ok(ClassFunction::new(group.content_hash(), coeffs))
}

/// Multiplication in the class-sum basis, computed from exact structure
/// constants: `1_{C_i} ∗ 1_{C_j} = (1/|G|) Σ_k a[i][j][k] 1_{C_k}`.
///
/// Independent of any character table, so it can certify table-derived data.
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    group_hash: String,
    order: usize,
    sizes: Vec<usize>,
    identity_class: usize,
    consts: StructureConstants,
}

impl ClassAlgebra {
    pub fn new(group: &FiniteGroup, cs: &ConjugacyStructure) -> Self {
        ClassAlgebra {
            group_hash: group.content_hash().to_string(),
            order: group.order(),
            sizes: cs.sizes(),
            identity_class: cs.identity_class(),
            consts: class_sum_structure_constants(group, cs),
        }
    }

    pub fn group_hash(&self) -> &str {
        &self.group_hash
    }

    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn convolve(&self, f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction> {
        same_group(&f.group_hash, &self.group_hash)?;
        same_group(&g.group_hash, &self.group_hash)?;
        Ok(ClassFunction::new(
            self.group_hash.clone(),
            self.convolve_coeffs(&f.coeffs, &g.coeffs),
        ))
    }

    pub(crate) fn convolve_coeffs(&self, f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
        let r = self.num_classes();
        let n = self.order as f64;
        (0..r)
            .map(|k| {
                neumaier_sum_complex((0..r).flat_map(|i| {
                    (0..r).map(move |j| (i, j))
                }).filter_map(|(i, j)| {
                    let a = self.consts.get(i, j, k);
                    (a != 0).then(|| f[i] * g[j] * a as f64)
                })) / n
            })
            .collect()
    }
}

/// `T_N f(sN) = (1/|N|) Σ_{n∈N} f(sn)`, a class function on `G/N`.
pub fn quotient_pushforward(
    f: &ClassFunction,
    cs: &ConjugacyStructure,
    quotient: &Quotient,
    quotient_cs: &ConjugacyStructure,
) -> Result<ClassFunction> {
    same_group(&f.group_hash, cs.group_hash())?;
    if quotient.projection.len() != cs.group_order()
        || quotient_cs.group_hash() != quotient.group.content_hash()
    {
        return Err(Error::mismatch("projection does not match the group"));
    }
    let q = quotient.group.order();
    let mut sums = vec![Vec::new(); q];
    for (x, &c) in quotient.projection.iter().enumerate() {
        sums[c].push(f.coeffs[cs.class_of(x)]);
    }
    if sums.iter().any(|s| s.is_empty()) {
        return Err(Error::mismatch("projection is not surjective"));
    }
    // T_N f(sN) is the mean of f over the coset sN.
    let coeffs = (0..quotient_cs.len())
        .map(|qc| {
            let coset = &sums[quotient_cs.representative(qc)];
            neumaier_sum_complex(coset.iter().copied()) / coset.len() as f64
        })
        .collect();
    Ok(ClassFunction::new(quotient.group.content_hash(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::group::{conjugacy_structure, quotient_group, Perm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn group(cycles: &[&str]) -> FiniteGroup {
        let g: Vec<Perm> = cycles.iter().map(|c| Perm::parse_cycles(c, 0).unwrap()).collect();
        FiniteGroup::from_permutation_generators(&g, "g").unwrap()
    }

    fn random_cf(hash: &str, r: usize, rng: &mut ChaCha8Rng) -> ClassFunction {
        ClassFunction::new(
            hash,
            (0..r)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn projection_of_a_transposition() {
        let s3 = group(&["(1 2)", "(1 2 3)"]);
        let cs = conjugacy_structure(&s3);
        let t = (0..6).find(|&x| cs.class_of(x) == 1).unwrap();
        let mut f = vec![ZERO; 6];
        f[t] = Complex64::new(1.0, 0.0);
        let pf = central_project(&f, &s3, &cs).unwrap();
        assert!((pf.coeffs[1] - 1.0 / 3.0).norm() < 1e-15);
        assert_eq!(pf.coeffs[0], ZERO);
        assert_eq!(pf.coeffs[2], ZERO);
        // idempotent, and equal to the class average
        let again = central_project(&pf.to_elements(&cs), &s3, &cs).unwrap();
        assert!(again.max_abs_diff(&pf) < 1e-15);
        assert!(central_project(&f[..5], &s3, &cs).is_err());
    }

    #[test]
    fn character_convolution_relations() {
        let s3 = group(&["(1 2)", "(1 2 3)"]);
        let t = character_table(&s3, &conjugacy_structure(&s3)).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                let c = convolve(&ClassFunction::character(&t, p), &ClassFunction::character(&t, q), &t).unwrap();
                let expect = if p == q {
                    ClassFunction::character(&t, p).scaled(Complex64::new(1.0 / t.degree(p) as f64, 0.0))
                } else {
                    ClassFunction::zero(t.group_hash(), 3)
                };
                assert!(c.max_abs_diff(&expect) < 1e-12);
            }
        }
    }

    #[test]
    fn unit_and_transform_basics() {
        let d4 = group(&["(1 2 3 4)", "(1 3)"]);
        let cs = conjugacy_structure(&d4);
        let t = character_table(&d4, &cs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_cf(t.group_hash(), 5, &mut rng);
        let u = ClassFunction::unit(&t);
        assert!(convolve(&u, &f, &t).unwrap().max_abs_diff(&f) < 1e-12);
        assert!(convolve_direct(&u, &f, &d4, &cs).unwrap().max_abs_diff(&f) < 1e-12);

        let one = ClassFunction::new(t.group_hash(), vec![Complex64::new(1.0, 0.0); 5]);
        let hat = gelfand_transform(&one, &t).unwrap();
        assert!((hat[0] - 1.0).norm() < 1e-12);
        assert!(hat[1..].iter().all(|z| z.norm() < 1e-12));

        let ones = vec![Complex64::new(1.0, 0.0); 5];
        assert!(inverse_gelfand(&ones, &t).unwrap().max_abs_diff(&u) < 1e-12);

        for p in 0..5 {
            let h = gelfand_transform(&ClassFunction::character(&t, p), &t).unwrap();
            for (q, z) in h.iter().enumerate() {
                let expect = if p == q { 1.0 / t.degree(p) as f64 } else { 0.0 };
                assert!((z - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn three_convolution_routes_agree() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"]);
        let cs = conjugacy_structure(&s4);
        let t = character_table(&s4, &cs).unwrap();
        let alg = ClassAlgebra::new(&s4, &cs);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let f = random_cf(t.group_hash(), 5, &mut rng);
            let g = random_cf(t.group_hash(), 5, &mut rng);
            let a = convolve(&f, &g, &t).unwrap();
            let b = convolve_direct(&f, &g, &s4, &cs).unwrap();
            let c = alg.convolve(&f, &g).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-10);
            assert!(c.max_abs_diff(&b) < 1e-12);
            assert!(a.l1_norm(t.class_sizes()) <= f.l1_norm(t.class_sizes()) * g.l1_norm(t.class_sizes()) + 1e-12);
        }
    }

    #[test]
    fn pushforward() {
        let d4 = group(&["(1 2 3 4)", "(1 3)"]);
        let cs = conjugacy_structure(&d4);
        let t = character_table(&d4, &cs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_cf(t.group_hash(), 5, &mut rng);
        let g = random_cf(t.group_hash(), 5, &mut rng);

        let trivial = quotient_group(&d4, &[d4.identity()]).unwrap();
        let tcs = conjugacy_structure(&trivial.group);
        let same = quotient_pushforward(&f, &cs, &trivial, &tcs).unwrap();
        // G/{e} has the same classes in the same order
        for c in 0..5 {
            assert!((same.coeffs[c] - f.coeffs[c]).norm() < 1e-15);
        }

        let all: Vec<usize> = (0..8).collect();
        let whole = quotient_group(&d4, &all).unwrap();
        let wcs = conjugacy_structure(&whole.group);
        let mean = quotient_pushforward(&f, &cs, &whole, &wcs).unwrap();
        let avg = neumaier_sum_complex(f.to_elements(&cs)) / 8.0;
        assert!((mean.coeffs[0] - avg).norm() < 1e-15);

        let z = quotient_group(&d4, &d4.center()).unwrap();
        let zcs = conjugacy_structure(&z.group);
        let push = |h: &ClassFunction| quotient_pushforward(h, &cs, &z, &zcs).unwrap();
        let lhs = push(&convolve_direct(&f, &g, &d4, &cs).unwrap());
        let rhs = convolve_direct(&push(&f), &push(&g), &z.group, &zcs).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        assert!(push(&f).l1_norm(&zcs.sizes()) <= f.l1_norm(&cs.sizes()) + 1e-12);
    }

    #[test]
    fn mismatched_groups_rejected() {
        let s3 = group(&["(1 2)", "(1 2 3)"]);
        let z3 = group(&["(1 2 3)"]);
        let t = character_table(&s3, &conjugacy_structure(&s3)).unwrap();
        let f = ClassFunction::zero(z3.content_hash(), 3);
        assert!(matches!(gelfand_transform(&f, &t), Err(Error::Mismatch(_))));
        assert!(inverse_gelfand(&[ZERO; 2], &t).is_err());
    }
}
