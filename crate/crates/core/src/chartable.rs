//! Complex character tables via class-sum matrices.
//!
//! The class sums `K_i` span the centre of the group algebra and multiply as
//! `K_i K_j = Σ_k a[i][j][k] K_k`. In the basis `K_k / √|C_k|` (orthonormal for
//! the trace form) left multiplication by `K_i` has the real matrix
//! `A_i[k][j] = a[i][j][k] · √(|C_k| / |C_j|)`, and `A_iᵀ = A_ī`. A combination
//! `H = Σ z_i A_i` with `z_ī = conj(z_i)` is therefore Hermitian; when its
//! eigenvalues are simple, its eigenvectors are the primitive central
//! idempotents, from which the characters are read off.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ConjugacyStructure, FiniteGroup};

pub const DEFAULT_MAX_CLASSES: usize = 128;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CharTableOptions {
    pub max_classes: usize,
    pub seed: u64,
    /// Attempts with fresh random coefficients before giving up.
    pub max_retries: usize,
    /// Minimum separation between eigenvalues of the combined matrix.
    pub eigen_gap: f64,
    pub residual_tol: f64,
}

impl Default for CharTableOptions {
    fn default() -> Self {
        CharTableOptions {
            max_classes: DEFAULT_MAX_CLASSES,
            seed: 0x00c4_a27a_b1e5,
            max_retries: 5,
            eigen_gap: 1e-6,
            residual_tol: DEFAULT_RESIDUAL_TOL,
        }
    }
}

/// `a[i][j][k] = #{(x, y) ∈ C_i × C_j : xy = z}` for a fixed `z ∈ C_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    classes: usize,
    data: Vec<u64>,
}

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.classes + j) * self.classes + k]
    }

    pub fn classes(&self) -> usize {
        self.classes
    }
}

pub fn class_sum_structure_constants(
    group: &FiniteGroup,
    cs: &ConjugacyStructure,
) -> StructureConstants {
    let r = cs.len();
    let mut data = vec![0u64; r * r * r];
    // For z = rep(C_k): every x ∈ G contributes the pair (x, x⁻¹z).
    for k in 0..r {
        let z = cs.representative(k);
        for x in 0..group.order() {
            let y = group.mul(group.inverse(x), z);
            data[(cs.class_of(x) * r + cs.class_of(y)) * r + k] += 1;
        }
    }
    StructureConstants { classes: r, data }
}

/// Residuals of the orthogonality relations, all measured on
/// `U[π][C] = √(|C|/|G|) · χ_π(C)`.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct OrthogonalityReport {
    /// `max |U U* − I|`: row orthogonality.
    pub row: f64,
    /// `max |U* U − I|`: column orthogonality.
    pub column: f64,
    /// Frobenius norms of `U U* − I` and `U* U − I`, the larger of the two.
    pub unitary_frobenius: f64,
    /// `max |χ(C̄) − conj χ(C)|`.
    pub conjugation: f64,
    /// `|Σ d² − |G||`.
    pub degree_sum: f64,
    /// `max |ω(C_i)ω(C_j) − Σ_k a_ijk ω(C_k)| / |G|` over all rows, where
    /// `ω = |C|χ/d`. Only known when the table was computed from a group.
    #[serde(default)]
    pub central: f64,
}

impl OrthogonalityReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.row,
            self.column,
            self.unitary_frobenius,
            self.conjugation,
            self.degree_sum,
            self.central,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Irreducible characters of a finite group.
///
/// Rows are irreducible representations sorted by degree, with ties broken by
/// comparing values column by column in descending `(re, im)` order; the
/// trivial character is therefore row 0. Columns follow the class order of the
/// [`ConjugacyStructure`] the table was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    group_hash: String,
    group_order: usize,
    class_sizes: Vec<usize>,
    class_reps: Vec<usize>,
    inverse_class: Vec<usize>,
    identity_class: usize,
    degrees: Vec<usize>,
    values: Vec<Vec<Complex64>>,
    report: OrthogonalityReport,
}

pub fn character_table(group: &FiniteGroup, cs: &ConjugacyStructure) -> Result<CharacterTable> {
    character_table_with(group, cs, &CharTableOptions::default())
}

pub fn character_table_with(
    group: &FiniteGroup,
    cs: &ConjugacyStructure,
    options: &CharTableOptions,
) -> Result<CharacterTable> {
    if cs.group_hash() != group.content_hash() {
        return Err(Error::mismatch("conjugacy structure belongs to another group"));
    }
    let r = cs.len();
    if r > options.max_classes {
        return Err(Error::Resource {
            what: format!("character table with {r} classes"),
            limit: options.max_classes,
        });
    }
    let consts = class_sum_structure_constants(group, cs);
    let sizes: Vec<f64> = cs.sizes().into_iter().map(|s| s as f64).collect();
    let order = group.order() as f64;
    let e = cs.identity_class();

    // A_i[k][j] = a_ijk √(|C_k|/|C_j|); A_ī = A_i*.
    let a_mats: Vec<DMatrix<Complex64>> = (0..r)
        .map(|i| {
            DMatrix::from_fn(r, r, |k, j| {
                Complex64::new(consts.get(i, j, k) as f64 * (sizes[k] / sizes[j]).sqrt(), 0.0)
            })
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut last_gap = 0.0;
    let mut central = 0.0;
    let attempts = options.max_retries.max(1);
    for _ in 0..attempts {
        let mut weights = vec![Complex64::new(0.0, 0.0); r];
        for i in 0..r {
            let ib = cs.inverse_class(i);
            if ib == i {
                weights[i] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            } else if ib > i {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                weights[i] = z;
                weights[ib] = z.conj();
            }
        }
        let h = DMatrix::from_fn(r, r, |k, j| {
            (0..r)
                .map(|i| weights[i] * a_mats[i][(k, j)])
                .sum::<Complex64>()
        });
        let eig = h.symmetric_eigen();
        let mut evs: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        evs.sort_by(|a, b| a.total_cmp(b));
        let spread = evs.iter().map(|x| x.abs()).fold(1.0, f64::max);
        let gap = evs
            .windows(2)
            .map(|w| (w[1] - w[0]) / spread)
            .fold(f64::INFINITY, f64::min);
        last_gap = if gap.is_finite() { gap } else { 0.0 };
        if r > 1 && gap < options.eigen_gap {
            continue;
        }

        // u_k ∝ conj χ(C_k)·√|C_k| is a common eigenvector of every A_i with
        // eigenvalue ω(C_i) = |C_i| χ(C_i) / d. Rayleigh quotients recover ω
        // to second order in the eigenvector error.
        let mut degrees = Vec::with_capacity(r);
        let mut values = Vec::with_capacity(r);
        let mut omegas = Vec::with_capacity(r);
        let mut ok = true;
        for col in 0..r {
            let u = eig.eigenvectors.column(col).into_owned();
            let unorm = u.norm_squared();
            let omega: Vec<Complex64> = a_mats
                .iter()
                .map(|a| {
                    let au = a * &u;
                    u.dotc(&au) / unorm
                })
                .collect();
            let denom: f64 = (0..r).map(|i| omega[i].norm_sqr() / sizes[i]).sum();
            let d = (order / denom).sqrt();
            let rounded = d.round();
            if (d - rounded).abs() > 1e-6 || rounded < 1.0 {
                ok = false;
                break;
            }
            let row: Vec<Complex64> = (0..r)
                .map(|k| clean(omega[k] * rounded / sizes[k]))
                .collect();
            degrees.push(rounded as usize);
            values.push(row);
            omegas.push(omega);
        }
        if ok {
            central = central_residual(&consts, &omegas, order);
            ok = central <= options.residual_tol;
        }
        if !ok {
            continue;
        }
        if let Some(d) = degrees.iter().find(|&&d| group.order() % d != 0) {
            return Err(Error::validation(format!(
                "computed degree {d} does not divide |G| = {}",
                group.order()
            )));
        }
        let mut table = CharacterTable {
            group_hash: group.content_hash().to_string(),
            group_order: group.order(),
            class_sizes: cs.sizes(),
            class_reps: (0..r).map(|c| cs.representative(c)).collect(),
            inverse_class: (0..r).map(|c| cs.inverse_class(c)).collect(),
            identity_class: e,
            degrees,
            values,
            report: OrthogonalityReport::default(),
        };
        table.sort_rows();
        table.report = verify_orthogonality(&table);
        table.report.central = central;
        if table.report.max_residual() <= options.residual_tol {
            return Ok(table);
        }
    }
    Err(Error::NumericDegeneracy {
        retries: attempts,
        min_gap: last_gap,
    })
}

fn central_residual(consts: &StructureConstants, omegas: &[Vec<Complex64>], order: f64) -> f64 {
    let r = consts.classes();
    let mut worst: f64 = 0.0;
    for w in omegas {
        for i in 0..r {
            for j in 0..r {
                let rhs: Complex64 = (0..r).map(|k| consts.get(i, j, k) as f64 * w[k]).sum();
                worst = worst.max((w[i] * w[j] - rhs).norm());
            }
        }
    }
    worst / order
}

fn clean(z: Complex64) -> Complex64 {
    let snap = |x: f64| if x.abs() < 1e-13 { 0.0 } else { x };
    Complex64::new(snap(z.re), snap(z.im))
}

/// Key for deterministic ordering: values rounded to a 1e-9 grid.
fn rounded(z: Complex64) -> (i64, i64) {
    ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)
}

fn compare_rows(da: usize, a: &[Complex64], db: usize, b: &[Complex64]) -> Ordering {
    da.cmp(&db).then_with(|| {
        a.iter()
            .zip(b)
            .map(|(x, y)| rounded(*y).cmp(&rounded(*x)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Max residuals of the orthogonality relations and of `U` being unitary.
pub fn verify_orthogonality(t: &CharacterTable) -> OrthogonalityReport {
    let r = t.num_classes();
    let g = t.group_order as f64;
    let u = DMatrix::from_fn(r, r, |p, c| {
        t.values[p][c] * (t.class_sizes[c] as f64 / g).sqrt()
    });
    let id = DMatrix::<Complex64>::identity(r, r);
    let rows = &u * u.adjoint() - &id;
    let cols = u.adjoint() * &u - &id;
    let max_abs = |m: &DMatrix<Complex64>| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut conjugation: f64 = 0.0;
    for row in &t.values {
        for c in 0..r {
            conjugation = conjugation.max((row[t.inverse_class[c]] - row[c].conj()).norm());
        }
    }
    let dsum: usize = t.degrees.iter().map(|d| d * d).sum();
    OrthogonalityReport {
        row: max_abs(&rows),
        column: max_abs(&cols),
        unitary_frobenius: rows.norm().max(cols.norm()),
        conjugation,
        degree_sum: (dsum as f64 - g).abs(),
        central: 0.0,
    }
}

impl CharacterTable {
    fn sort_rows(&mut self) {
        let mut idx: Vec<usize> = (0..self.degrees.len()).collect();
        idx.sort_by(|&a, &b| {
            compare_rows(self.degrees[a], &self.values[a], self.degrees[b], &self.values[b])
        });
        self.degrees = idx.iter().map(|&i| self.degrees[i]).collect();
        self.values = idx.iter().map(|&i| self.values[i].clone()).collect();
    }

    pub fn group_hash(&self) -> &str {
        &self.group_hash
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// Number of irreducible representations (equal to the class count).
    pub fn num_irreps(&self) -> usize {
        self.degrees.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn class_representatives(&self) -> &[usize] {
        &self.class_reps
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, irrep: usize) -> usize {
        self.degrees[irrep]
    }

    /// `χ_π(C)`
    pub fn value(&self, irrep: usize, class: usize) -> Complex64 {
        self.values[irrep][class]
    }

    /// `ψ_π(C) = χ_π(C) / d_π`
    pub fn normalized_value(&self, irrep: usize, class: usize) -> Complex64 {
        self.values[irrep][class] / self.degrees[irrep] as f64
    }

    pub fn values(&self) -> &[Vec<Complex64>] {
        &self.values
    }

    pub fn report(&self) -> &OrthogonalityReport {
        &self.report
    }

    pub fn is_abelian(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    /// Value matrix with columns sorted by class size and then by column
    /// contents, rows re-sorted, and entries rounded to a 1e-9 grid. Two groups
    /// with the same character table (up to relabelling classes) produce the
    /// same canonical form.
    pub fn canonical_values(&self) -> Vec<Vec<[f64; 2]>> {
        let r = self.num_classes();
        // Rows are already sorted; column keys use the sorted rows, then rows
        // are re-sorted on the permuted columns until stable.
        let mut rows: Vec<(usize, Vec<Complex64>)> = self
            .degrees
            .iter()
            .copied()
            .zip(self.values.iter().cloned())
            .collect();
        let mut perm: Vec<usize> = (0..r).collect();
        for _ in 0..r.max(2) {
            let col = |c: usize| -> Vec<(i64, i64)> { rows.iter().map(|(_, v)| rounded(v[c])).collect() };
            let mut next = perm.clone();
            next.sort_by(|&a, &b| {
                self.class_sizes[a]
                    .cmp(&self.class_sizes[b])
                    .then_with(|| col(b).cmp(&col(a)))
            });
            let permuted: Vec<(usize, Vec<Complex64>)> = rows
                .iter()
                .map(|(d, v)| (*d, next.iter().map(|&c| v[c]).collect()))
                .collect();
            let mut order: Vec<usize> = (0..rows.len()).collect();
            order.sort_by(|&a, &b| compare_rows(permuted[a].0, &permuted[a].1, permuted[b].0, &permuted[b].1));
            let reordered: Vec<(usize, Vec<Complex64>)> = order.iter().map(|&i| rows[i].clone()).collect();
            let stable = next == perm && reordered == rows;
            perm = next;
            rows = reordered;
            if stable {
                break;
            }
        }
        rows.iter()
            .map(|(_, v)| {
                perm.iter()
                    .map(|&c| {
                        let (re, im) = rounded(v[c]);
                        [re as f64 / 1e9 + 0.0, im as f64 / 1e9 + 0.0]
                    })
                    .collect()
            })
            .collect()
    }

    /// Character table of `G × H` from the tables of the factors.
    ///
    /// Classes are ordered `(C, C')` ↦ `C * r_H + C'`, matching
    /// [`FiniteGroup::direct_product`] class enumeration only up to relabelling.
    pub fn tensor(&self, other: &CharacterTable) -> CharacterTable {
        let (r1, r2) = (self.num_classes(), other.num_classes());
        let mut class_sizes = Vec::with_capacity(r1 * r2);
        let mut class_reps = Vec::with_capacity(r1 * r2);
        let mut inverse_class = Vec::with_capacity(r1 * r2);
        for c1 in 0..r1 {
            for c2 in 0..r2 {
                class_sizes.push(self.class_sizes[c1] * other.class_sizes[c2]);
                class_reps.push(self.class_reps[c1] * other.group_order + other.class_reps[c2]);
                inverse_class.push(self.inverse_class[c1] * r2 + other.inverse_class[c2]);
            }
        }
        let mut degrees = Vec::new();
        let mut values = Vec::new();
        for p1 in 0..r1 {
            for p2 in 0..r2 {
                degrees.push(self.degrees[p1] * other.degrees[p2]);
                values.push(
                    (0..r1)
                        .flat_map(|c1| (0..r2).map(move |c2| (c1, c2)))
                        .map(|(c1, c2)| self.values[p1][c1] * other.values[p2][c2])
                        .collect(),
                );
            }
        }
        let mut hash = sha2_pair(&self.group_hash, &other.group_hash);
        hash.insert_str(0, "tensor:");
        let mut t = CharacterTable {
            group_hash: hash,
            group_order: self.group_order * other.group_order,
            class_sizes,
            class_reps,
            inverse_class,
            identity_class: self.identity_class * r2 + other.identity_class,
            degrees,
            values,
            report: OrthogonalityReport::default(),
        };
        t.sort_rows();
        t.report = verify_orthogonality(&t);
        // not recomputed: carried as the larger factor residual
        t.report.central = self.report.central.max(other.report.central);
        t
    }

    /// A copy with entry `(irrep, class)` shifted by `delta`, for sensitivity
    /// tests of the certification routines.
    pub fn perturbed(&self, irrep: usize, class: usize, delta: Complex64) -> CharacterTable {
        let mut t = self.clone();
        t.values[irrep][class] += delta;
        t.report = verify_orthogonality(&t);
        t
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            format: TABLE_FORMAT.to_string(),
            version: TABLE_VERSION,
            group_hash: self.group_hash.clone(),
            group_order: self.group_order,
            classes: (0..self.num_classes())
                .map(|c| ClassJson {
                    representative: self.class_reps[c],
                    size: self.class_sizes[c],
                    inverse: self.inverse_class[c],
                })
                .collect(),
            identity_class: self.identity_class,
            rows: self
                .degrees
                .iter()
                .zip(&self.values)
                .map(|(&degree, v)| RowJson {
                    degree,
                    values: v.iter().map(|z| [z.re, z.im]).collect(),
                })
                .collect(),
            residuals: self.report.clone(),
        }
    }

    /// Rebuilds a table from its JSON form. Orthogonality residuals are
    /// recomputed; the central residual needs the group and is carried over.
    pub fn from_json(j: &TableJson) -> Result<CharacterTable> {
        if j.format != TABLE_FORMAT || j.version > TABLE_VERSION {
            return Err(Error::Parse(format!(
                "unsupported character table format {} v{}",
                j.format, j.version
            )));
        }
        let r = j.classes.len();
        if j.rows.len() != r || j.rows.iter().any(|row| row.values.len() != r) {
            return Err(Error::Parse("character table is not square".into()));
        }
        let mut t = CharacterTable {
            group_hash: j.group_hash.clone(),
            group_order: j.group_order,
            class_sizes: j.classes.iter().map(|c| c.size).collect(),
            class_reps: j.classes.iter().map(|c| c.representative).collect(),
            inverse_class: j.classes.iter().map(|c| c.inverse).collect(),
            identity_class: j.identity_class,
            degrees: j.rows.iter().map(|row| row.degree).collect(),
            values: j
                .rows
                .iter()
                .map(|row| row.values.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect(),
            report: OrthogonalityReport::default(),
        };
        if t.inverse_class.iter().any(|&c| c >= r) || t.identity_class >= r {
            return Err(Error::Parse("class index out of range".into()));
        }
        t.report = verify_orthogonality(&t);
        t.report.central = j.residuals.central;
        Ok(t)
    }
}

fn sha2_pair(a: &str, b: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(a.as_bytes());
    h.update(b"|");
    h.update(b.as_bytes());
    hex::encode(h.finalize())
}

pub const TABLE_FORMAT: &str = "zamen-chartable";
pub const TABLE_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassJson {
    pub representative: usize,
    pub size: usize,
    pub inverse: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RowJson {
    pub degree: usize,
    pub values: Vec<[f64; 2]>,
}

/// On-disk character table, also the cache entry format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TableJson {
    pub format: String,
    pub version: u32,
    pub group_hash: String,
    pub group_order: usize,
    pub identity_class: usize,
    pub classes: Vec<ClassJson>,
    pub rows: Vec<RowJson>,
    pub residuals: OrthogonalityReport,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_structure, Perm};

    fn group(cycles: &[&str]) -> FiniteGroup {
        let g: Vec<Perm> = cycles.iter().map(|c| Perm::parse_cycles(c, 0).unwrap()).collect();
        FiniteGroup::from_permutation_generators(&g, "g").unwrap()
    }

    fn table(g: &FiniteGroup) -> CharacterTable {
        character_table(g, &conjugacy_structure(g)).unwrap()
    }

    /// Brute-force structure constant straight from the definition.
    fn brute_constant(g: &FiniteGroup, cs: &ConjugacyStructure, i: usize, j: usize, k: usize) -> u64 {
        let z = cs.representative(k);
        let mut n = 0;
        for &x in cs.class(i) {
            for &y in cs.class(j) {
                if g.mul(x, y) == z {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn structure_constants() {
        let triv = group(&["()"]);
        let cs = conjugacy_structure(&triv);
        assert_eq!(class_sum_structure_constants(&triv, &cs).get(0, 0, 0), 1);

        let s3 = group(&["(1 2)", "(1 2 3)"]);
        let cs = conjugacy_structure(&s3);
        let a = class_sum_structure_constants(&s3, &cs);
        // transpositions (class 1) squared land on e three times
        assert_eq!(a.get(1, 1, 0), 3);

        let d4 = group(&["(1 2 3 4)", "(1 3)"]);
        let cs = conjugacy_structure(&d4);
        let a = class_sum_structure_constants(&d4, &cs);
        let r = cs.len();
        for i in 0..r {
            for j in 0..r {
                let total: u64 = (0..r).map(|k| a.get(i, j, k) * cs.size(k) as u64).sum();
                assert_eq!(total, (cs.size(i) * cs.size(j)) as u64);
                for k in 0..r {
                    assert_eq!(a.get(i, j, k), brute_constant(&d4, &cs, i, j, k));
                }
            }
        }
    }

    #[test]
    fn cyclic_three() {
        let z3 = group(&["(1 2 3)"]);
        let t = table(&z3);
        assert_eq!(t.degrees(), &[1, 1, 1]);
        for p in 0..3 {
            for c in 0..3 {
                // every value is a cube root of unity
                assert!((t.value(p, c).powu(3) - 1.0).norm() < 1e-12);
            }
        }
        assert!(t.value(0, 1) == Complex64::new(1.0, 0.0) || (t.value(0, 1) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn s3_table() {
        let t = table(&group(&["(1 2)", "(1 2 3)"]));
        let expect = [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [2.0, 0.0, -1.0]];
        for (p, row) in expect.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert!((t.value(p, c) - Complex64::new(*v, 0.0)).norm() < 1e-12, "{p} {c}");
            }
        }
        assert!(verify_orthogonality(&t).max_residual() <= 1e-12);
    }

    #[test]
    fn quaternion_and_dihedral_agree() {
        let d4 = table(&group(&["(1 2 3 4)", "(1 3)"]));
        let q8 = table(&group(&["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]));
        assert_eq!(d4.degrees(), &[1, 1, 1, 1, 2]);
        assert_eq!(q8.degrees(), d4.degrees());
        assert_eq!(d4.canonical_values(), q8.canonical_values());
        let canon = d4.canonical_values();
        let two: Vec<f64> = canon[4].iter().map(|z| z[0]).collect();
        let mut sorted = two.clone();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(sorted, vec![-2.0, 0.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn perturbation_is_detected() {
        let t = table(&group(&["(1 2)", "(1 2 3)"]));
        let bad = t.perturbed(0, 0, Complex64::new(1e-3, 0.0));
        assert!(bad.report().max_residual() >= 1e-4);
    }

    #[test]
    fn seed_independence() {
        let a4 = group(&["(1 2 3)", "(1 2)(3 4)"]);
        let cs = conjugacy_structure(&a4);
        let a = character_table_with(&a4, &cs, &CharTableOptions { seed: 1, ..Default::default() }).unwrap();
        let b = character_table_with(&a4, &cs, &CharTableOptions { seed: 99, ..Default::default() }).unwrap();
        assert_eq!(a.degrees(), b.degrees());
        for p in 0..a.num_irreps() {
            for c in 0..a.num_classes() {
                assert!((a.value(p, c) - b.value(p, c)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn class_cap() {
        let z6 = group(&["(1 2 3 4 5 6)"]);
        let cs = conjugacy_structure(&z6);
        let err = character_table_with(&z6, &cs, &CharTableOptions { max_classes: 4, ..Default::default() });
        assert!(matches!(err, Err(Error::Resource { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let t = table(&group(&["(1 2 3 4)", "(1 2)"]));
        let j = serde_json::to_string(&t.to_json()).unwrap();
        let back = CharacterTable::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, t);
    }
}
