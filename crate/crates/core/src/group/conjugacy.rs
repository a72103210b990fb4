use serde::{Deserialize, Serialize};

use super::FiniteGroup;

/// Partition of a group into conjugacy classes.
///
/// Classes are numbered by their smallest element, so the class of the
/// identity comes first whenever the identity is element 0.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConjugacyStructure {
    group_hash: String,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
    identity_class: usize,
}

/// Orbits of the conjugation action `s ↦ t s t⁻¹`.
pub fn conjugacy_structure(group: &FiniteGroup) -> ConjugacyStructure {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for t in 0..n {
            let c = group.conjugate(x, t);
            if class_of[c] == usize::MAX {
                class_of[c] = id;
                members.push(c);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let inverse_class = classes
        .iter()
        .map(|c| class_of[group.inverse(c[0])])
        .collect();
    ConjugacyStructure {
        group_hash: group.content_hash().to_string(),
        identity_class: class_of[group.identity()],
        class_of,
        classes,
        inverse_class,
    }
}

impl ConjugacyStructure {
    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Smallest element of class `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// `C ↦ C̄`, the class of inverses.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    pub fn group_hash(&self) -> &str {
        &self.group_hash
    }
}
