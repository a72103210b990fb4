//! Finite groups on dense element indices `0..order`.
//!
//! Groups of order at most [`DENSE_LIMIT`] carry a materialized Cayley table.
//! Larger groups keep their construction (permutations, factor groups, cosets)
//! and multiply on demand.

mod conjugacy;
pub mod perm;
pub mod spec;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub use conjugacy::{conjugacy_structure, ConjugacyStructure};
pub use perm::Perm;

use crate::error::{Error, Result};

/// Largest order for which a Cayley table is materialized.
pub const DENSE_LIMIT: usize = 4096;
/// Default cap on group order for every constructor.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// How thoroughly group axioms and action laws are checked.
#[derive(Clone, Debug)]
pub struct ValidationPolicy {
    /// Orders up to this bound are checked on every triple.
    pub exhaustive_limit: usize,
    /// Number of random triples checked above the exhaustive limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ValidationPolicy {
    fn default() -> Self {
        ValidationPolicy {
            exhaustive_limit: 512,
            samples: 10_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupOptions {
    pub max_order: usize,
    pub validation: ValidationPolicy,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            max_order: DEFAULT_MAX_ORDER,
            validation: ValidationPolicy::default(),
        }
    }
}

#[derive(Clone)]
enum Repr {
    Table,
    Perm {
        elements: Vec<Perm>,
        index: HashMap<Perm, u32>,
    },
    Product {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
    },
    Semidirect {
        normal: Arc<FiniteGroup>,
        acting: Arc<FiniteGroup>,
        action: Arc<Vec<Vec<u32>>>,
    },
    Quotient {
        parent: Arc<FiniteGroup>,
        reps: Vec<usize>,
        coset_of: Vec<u32>,
    },
}

/// A finite group with elements `0..order`.
///
/// Immutable after construction; cheap to share behind an `Arc`.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    identity: usize,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
    repr: Repr,
    hash: OnceLock<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

fn check_order(what: &str, order: usize, options: &GroupOptions) -> Result<()> {
    if order > options.max_order {
        return Err(Error::Resource {
            what: format!("{what} of order {order}"),
            limit: options.max_order,
        });
    }
    Ok(())
}

impl FiniteGroup {
    /// Closure of `generators` under composition.
    ///
    /// Elements are enumerated breadth-first from the identity, right-multiplying
    /// by the generators in the given order, so indices are deterministic.
    pub fn from_permutation_generators(generators: &[Perm], label: &str) -> Result<Self> {
        Self::from_permutation_generators_with(generators, label, &GroupOptions::default())
    }

    pub fn from_permutation_generators_with(
        generators: &[Perm],
        label: &str,
        options: &GroupOptions,
    ) -> Result<Self> {
        let degree = generators.iter().map(Perm::degree).max().unwrap_or(0);
        let gens: Vec<Perm> = generators.iter().map(|g| g.padded(degree)).collect();
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut next = 0;
        while next < elements.len() {
            for g in &gens {
                let y = elements[next].compose(g);
                if !index.contains_key(&y) {
                    if elements.len() + 1 > options.max_order {
                        return Err(Error::Resource {
                            what: format!("permutation closure for {label}"),
                            limit: options.max_order,
                        });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
            next += 1;
        }
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let group = FiniteGroup {
            label: label.to_string(),
            order: elements.len(),
            identity: 0,
            inverses,
            table: None,
            repr: Repr::Perm { elements, index },
            hash: OnceLock::new(),
        };
        Ok(group.densified())
    }

    /// Group from an explicit multiplication table `table[a][b] = a·b`.
    pub fn from_cayley_table(table: &[Vec<usize>], label: &str) -> Result<Self> {
        Self::from_cayley_table_with(table, label, &GroupOptions::default())
    }

    pub fn from_cayley_table_with(
        table: &[Vec<usize>],
        label: &str,
        options: &GroupOptions,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::validation("empty Cayley table"));
        }
        check_order("Cayley table", n, options)?;
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::validation(format!(
                    "row {a} has length {} (expected {n})",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::validation(format!("entry ({a},{b}) = {c} out of range")));
                }
                if seen[c] {
                    return Err(Error::validation(format!(
                        "not a Latin square: value {c} repeated in row {a}"
                    )));
                }
                seen[c] = true;
                flat.push(c as u32);
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let c = flat[a * n + b] as usize;
                if seen[c] {
                    return Err(Error::validation(format!(
                        "not a Latin square: value {c} repeated in column {b}"
                    )));
                }
                seen[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] as usize == x && flat[x * n + e] as usize == x))
            .ok_or_else(|| Error::validation("no identity element"))?;
        let mut inverses = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| flat[x * n + y] as usize == identity)
                .expect("Latin square row contains every value");
            if flat[y * n + x] as usize != identity {
                return Err(Error::validation(format!(
                    "element {x} has right inverse {y} that is not a left inverse"
                )));
            }
            inverses[x] = y as u32;
        }
        let group = FiniteGroup {
            label: label.to_string(),
            order: n,
            identity,
            inverses,
            table: Some(flat),
            repr: Repr::Table,
            hash: OnceLock::new(),
        };
        group.validate(&options.validation)?;
        Ok(group)
    }

    /// Direct product with elements `(g, h)` indexed `g * |H| + h`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Result<Self> {
        Self::direct_product_with(left, right, &GroupOptions::default())
    }

    pub fn direct_product_with(
        left: &FiniteGroup,
        right: &FiniteGroup,
        options: &GroupOptions,
    ) -> Result<Self> {
        let order = left
            .order
            .checked_mul(right.order)
            .filter(|&o| o <= options.max_order)
            .ok_or_else(|| Error::Resource {
                what: format!("direct product {} x {}", left.label, right.label),
                limit: options.max_order,
            })?;
        let nr = right.order;
        let inverses = (0..order)
            .map(|x| (left.inverse(x / nr) * nr + right.inverse(x % nr)) as u32)
            .collect();
        let group = FiniteGroup {
            label: format!("{} x {}", left.label, right.label),
            order,
            identity: left.identity * nr + right.identity,
            inverses,
            table: None,
            repr: Repr::Product {
                left: Arc::new(left.clone()),
                right: Arc::new(right.clone()),
            },
            hash: OnceLock::new(),
        };
        Ok(group.densified())
    }

    /// For a direct product `G × H`, the normal subgroups `G × {e}` and
    /// `{e} × H` as sorted element lists. `None` for other groups.
    pub fn product_factors(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        match &self.repr {
            Repr::Product { left, right } => {
                let nr = right.order;
                let l = (0..left.order).map(|g| g * nr + right.identity).collect();
                let r = (0..nr).map(|h| left.identity * nr + h).collect();
                Some((l, r))
            }
            _ => None,
        }
    }

    /// Semidirect product `N ⋊ H` with `(n,h)(n',h') = (n·φ_h(n'), hh')`.
    ///
    /// `action[h][n]` is the image of `n` under the automorphism attached to `h`.
    /// Elements `(n, h)` are indexed `n * |H| + h`.
    pub fn semidirect_product(
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<usize>],
    ) -> Result<Self> {
        Self::semidirect_product_with(normal, acting, action, &GroupOptions::default())
    }

    pub fn semidirect_product_with(
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<usize>],
        options: &GroupOptions,
    ) -> Result<Self> {
        let (nn, nh) = (normal.order, acting.order);
        let order = nn
            .checked_mul(nh)
            .filter(|&o| o <= options.max_order)
            .ok_or_else(|| Error::Resource {
                what: format!("semidirect product {} x| {}", normal.label, acting.label),
                limit: options.max_order,
            })?;
        if action.len() != nh {
            return Err(Error::validation(format!(
                "action lists {} maps for a group of order {nh}",
                action.len()
            )));
        }
        let mut table = Vec::with_capacity(nh);
        for (h, map) in action.iter().enumerate() {
            if map.len() != nn {
                return Err(Error::validation(format!("action of {h} has wrong length")));
            }
            let mut seen = vec![false; nn];
            for &x in map {
                if x >= nn || seen[x] {
                    return Err(Error::validation(format!("action of {h} is not a bijection")));
                }
                seen[x] = true;
            }
            table.push(map.iter().map(|&x| x as u32).collect::<Vec<u32>>());
        }
        let phi = |h: usize, x: usize| table[h][x] as usize;

        // Each φ_h is an automorphism of N.
        let check_pairs = |f: &mut dyn FnMut(usize, usize) -> Result<()>| -> Result<()> {
            let policy = &options.validation;
            if nn * nn <= policy.exhaustive_limit * policy.exhaustive_limit {
                for a in 0..nn {
                    for b in 0..nn {
                        f(a, b)?;
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
                for _ in 0..policy.samples {
                    f(rng.gen_range(0..nn), rng.gen_range(0..nn))?;
                }
            }
            Ok(())
        };
        for h in 0..nh {
            check_pairs(&mut |a, b| {
                if phi(h, normal.mul(a, b)) != normal.mul(phi(h, a), phi(h, b)) {
                    return Err(Error::validation(format!(
                        "action of {h} is not a homomorphism at ({a},{b})"
                    )));
                }
                Ok(())
            })?;
        }
        // h ↦ φ_h is a homomorphism H → Aut(N).
        for h1 in 0..nh {
            for h2 in 0..nh {
                let h12 = acting.mul(h1, h2);
                if let Some(x) = (0..nn).find(|&x| phi(h12, x) != phi(h1, phi(h2, x))) {
                    return Err(Error::validation(format!(
                        "action is not a homomorphism: φ({h1}·{h2}) and φ({h1})∘φ({h2}) differ at {x}"
                    )));
                }
            }
        }

        let inverses = (0..order)
            .map(|x| {
                let (n, h) = (x / nh, x % nh);
                let hi = acting.inverse(h);
                (phi(hi, normal.inverse(n)) * nh + hi) as u32
            })
            .collect();
        let group = FiniteGroup {
            label: format!("{} x| {}", normal.label, acting.label),
            order,
            identity: normal.identity * nh + acting.identity,
            inverses,
            table: None,
            repr: Repr::Semidirect {
                normal: Arc::new(normal.clone()),
                acting: Arc::new(acting.clone()),
                action: Arc::new(table),
            },
            hash: OnceLock::new(),
        };
        Ok(group.densified())
    }

    fn densified(mut self) -> Self {
        if self.table.is_none() && self.order <= DENSE_LIMIT {
            let n = self.order;
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(self.mul_structural(a, b) as u32);
                }
            }
            self.table = Some(t);
        }
        self
    }

    fn mul_structural(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table => unreachable!("table groups are always dense"),
            Repr::Perm { elements, index } => index[&elements[a].compose(&elements[b])] as usize,
            Repr::Product { left, right } => {
                let nr = right.order;
                left.mul(a / nr, b / nr) * nr + right.mul(a % nr, b % nr)
            }
            Repr::Semidirect {
                normal,
                acting,
                action,
            } => {
                let nh = acting.order;
                let (n1, h1) = (a / nh, a % nh);
                let (n2, h2) = (b / nh, b % nh);
                let twisted = action[h1][n2] as usize;
                normal.mul(n1, twisted) * nh + acting.mul(h1, h2)
            }
            Repr::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.mul(reps[a], reps[b])] as usize,
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.mul_structural(a, b),
        }
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `t · s · t⁻¹`
    #[inline]
    pub fn conjugate(&self, s: usize, t: usize) -> usize {
        self.mul(self.mul(t, s), self.inverse(t))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_dense(&self) -> bool {
        self.table.is_some()
    }

    /// The permutation behind element `x`, for groups built from generators.
    pub fn permutation(&self, x: usize) -> Option<&Perm> {
        match &self.repr {
            Repr::Perm { elements, .. } => elements.get(x),
            _ => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `{z : zx = xz for all x}`, ascending.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// Checks associativity, identity and inverse laws per `policy`.
    pub fn validate(&self, policy: &ValidationPolicy) -> Result<()> {
        let n = self.order;
        let e = self.identity;
        for x in 0..n {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Err(Error::validation(format!("identity law fails at {x}")));
            }
            if self.mul(x, self.inverse(x)) != e || self.mul(self.inverse(x), x) != e {
                return Err(Error::validation(format!("inverse law fails at {x}")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::validation(format!(
                    "not associative: (a·b)·c != a·(b·c) for (a,b,c) = ({a},{b},{c})"
                )));
            }
            Ok(())
        };
        if n <= policy.exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
            for _ in 0..policy.samples {
                assoc(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    /// SHA-256 over the multiplication structure; used as a cache key and to
    /// bind class functions and character tables to their group.
    pub fn content_hash(&self) -> &str {
        self.hash.get_or_init(|| {
            let mut h = Sha256::new();
            h.update(b"zamen-group-v1");
            h.update((self.order as u64).to_le_bytes());
            h.update((self.identity as u64).to_le_bytes());
            match &self.table {
                Some(t) => {
                    for v in t {
                        h.update(v.to_le_bytes());
                    }
                }
                None => {
                    for a in 0..self.order {
                        for b in 0..self.order {
                            h.update((self.mul(a, b) as u32).to_le_bytes());
                        }
                    }
                }
            }
            hex::encode(h.finalize())
        })
    }

    /// Cayley table as nested rows.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Element order of `x`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Checks that `subset` is a normal subgroup, naming a witness on failure.
    pub fn check_normal_subgroup(&self, subset: &[usize]) -> Result<()> {
        let mut member = vec![false; self.order];
        for &x in subset {
            if x >= self.order {
                return Err(Error::validation(format!("element {x} out of range")));
            }
            member[x] = true;
        }
        if !member[self.identity] {
            return Err(Error::validation("subset does not contain the identity"));
        }
        let elems: Vec<usize> = (0..self.order).filter(|&x| member[x]).collect();
        for &a in &elems {
            if !member[self.inverse(a)] {
                return Err(Error::validation(format!(
                    "not a subgroup: inverse of {a} missing"
                )));
            }
            for &b in &elems {
                let ab = self.mul(a, b);
                if !member[ab] {
                    return Err(Error::validation(format!(
                        "not a subgroup: {a}·{b} = {ab} missing"
                    )));
                }
            }
        }
        for t in 0..self.order {
            for &n in &elems {
                let c = self.conjugate(n, t);
                if !member[c] {
                    return Err(Error::validation(format!(
                        "not normal: conjugating {n} by {t} gives {c} outside the subgroup"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `G/N` together with the coset projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[g]` is the coset index of `g`.
    pub projection: Vec<usize>,
    /// Elements of `N`, ascending.
    pub kernel: Vec<usize>,
}

/// Builds `G/N` after verifying `N` is normal. Cosets are numbered in order of
/// their smallest element, which is also their representative.
pub fn quotient_group(group: &FiniteGroup, normal: &[usize]) -> Result<Quotient> {
    group.check_normal_subgroup(normal)?;
    let mut kernel = normal.to_vec();
    kernel.sort_unstable();
    kernel.dedup();
    let n = group.order;
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &k in &kernel {
            coset_of[group.mul(x, k)] = id;
        }
    }
    let q = reps.len();
    let parent = Arc::new(group.clone());
    let inverses = reps
        .iter()
        .map(|&r| coset_of[group.inverse(r)])
        .collect();
    let projection = coset_of.iter().map(|&c| c as usize).collect();
    let quotient = FiniteGroup {
        label: format!("{}/N{}", group.label, kernel.len()),
        order: q,
        identity: coset_of[group.identity] as usize,
        inverses,
        table: None,
        repr: Repr::Quotient {
            parent,
            reps,
            coset_of,
        },
        hash: OnceLock::new(),
    }
    .densified();
    Ok(Quotient {
        group: quotient,
        projection,
        kernel,
    })
}

/// Action table for `N ⋊ H` where `H` has order 2 and its non-identity element
/// inverts `N`. `N` must be abelian for this to be an automorphism; that is
/// checked by the semidirect constructor.
pub fn inversion_action(normal: &FiniteGroup, acting: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    if acting.order() != 2 {
        return Err(Error::validation(format!(
            "inversion action needs an acting group of order 2, got {}",
            acting.order()
        )));
    }
    Ok((0..2)
        .map(|h| {
            (0..normal.order())
                .map(|x| if h == acting.identity() { x } else { normal.inverse(x) })
                .collect()
        })
        .collect())
}

pub fn trivial_action(normal: &FiniteGroup, acting: &FiniteGroup) -> Vec<Vec<usize>> {
    vec![(0..normal.order()).collect(); acting.order()]
}
