//! Group-spec JSON documents.
//!
//! ```json
//! {"version": 1, "kind": "perm", "label": "S3", "generators": ["(1 2)", "(1 2 3)"]}
//! {"version": 1, "kind": "cayley", "label": "Z2", "table": [[0, 1], [1, 0]]}
//! {"version": 1, "kind": "product", "factors": [{"kind": "perm", ...}, {...}]}
//! {"version": 1, "kind": "semidirect", "normal": {...}, "acting": {...}, "action": "inversion"}
//! ```
//!
//! Permutations are 1-based, either as cycle strings or one-line arrays.
//! A semidirect `action` is `"inversion"`, `"trivial"`, or one 0-based image
//! list over the normal subgroup's elements per element of the acting group.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{inversion_action, trivial_action, FiniteGroup, GroupOptions, Perm};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PermSpec {
    Cycles(String),
    OneLine(Vec<usize>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Perm {
        #[serde(default)]
        label: Option<String>,
        #[serde(default)]
        degree: Option<usize>,
        generators: Vec<PermSpec>,
    },
    Cayley {
        #[serde(default)]
        label: Option<String>,
        table: Vec<Vec<usize>>,
    },
    Product {
        #[serde(default)]
        label: Option<String>,
        factors: Vec<GroupSpec>,
    },
    Semidirect {
        #[serde(default)]
        label: Option<String>,
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: ActionSpec,
    },
}

/// Top-level document: a [`GroupSpec`] plus a schema version.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupDocument {
    #[serde(default = "default_version")]
    pub version: u32,
    #[serde(flatten)]
    pub group: GroupSpec,
}

fn default_version() -> u32 {
    SCHEMA_VERSION
}

impl GroupDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: GroupDocument = serde_json::from_str(text)?;
        if doc.version > SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "group spec version {} is newer than supported version {SCHEMA_VERSION}",
                doc.version
            )));
        }
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self, options: &GroupOptions) -> Result<FiniteGroup> {
        self.group.build(options)
    }
}

impl GroupSpec {
    pub fn label(&self) -> Option<&str> {
        match self {
            GroupSpec::Perm { label, .. }
            | GroupSpec::Cayley { label, .. }
            | GroupSpec::Product { label, .. }
            | GroupSpec::Semidirect { label, .. } => label.as_deref(),
        }
    }

    pub fn build(&self, options: &GroupOptions) -> Result<FiniteGroup> {
        let group = match self {
            GroupSpec::Perm {
                degree, generators, ..
            } => {
                let degree = degree.unwrap_or(0);
                let perms = generators
                    .iter()
                    .map(|g| match g {
                        PermSpec::Cycles(s) => Perm::parse_cycles(s, degree),
                        PermSpec::OneLine(v) => Perm::from_one_line(v),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let perms = if perms.is_empty() {
                    vec![Perm::identity(degree.max(1))]
                } else {
                    perms
                };
                FiniteGroup::from_permutation_generators_with(&perms, "perm", options)?
            }
            GroupSpec::Cayley { table, .. } => {
                FiniteGroup::from_cayley_table_with(table, "cayley", options)?
            }
            GroupSpec::Product { factors, .. } => {
                let mut iter = factors.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::Parse("product needs at least one factor".into()))?
                    .build(options)?;
                iter.try_fold(first, |acc, f| {
                    FiniteGroup::direct_product_with(&acc, &f.build(options)?, options)
                })?
            }
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
                ..
            } => {
                let n = normal.build(options)?;
                let h = acting.build(options)?;
                let table = match action {
                    ActionSpec::Named(name) if name == "inversion" => inversion_action(&n, &h)?,
                    ActionSpec::Named(name) if name == "trivial" => trivial_action(&n, &h),
                    ActionSpec::Named(name) => {
                        return Err(Error::Parse(format!("unknown action {name:?}")))
                    }
                    ActionSpec::Table(t) => t.clone(),
                };
                FiniteGroup::semidirect_product_with(&n, &h, &table, options)?
            }
        };
        Ok(match self.label() {
            Some(l) => group.with_label(l),
            None => group,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let s3 = GroupDocument::parse(
            r#"{"version":1,"kind":"perm","label":"S3","generators":["(1 2)",[2,3,1]]}"#,
        )
        .unwrap()
        .build(&GroupOptions::default())
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(), "S3");

        let z2 = r#"{"kind":"cayley","table":[[0,1],[1,0]]}"#;
        assert_eq!(
            GroupDocument::parse(z2).unwrap().build(&Default::default()).unwrap().order(),
            2
        );

        let prod = format!(r#"{{"kind":"product","factors":[{z2},{z2},{z2}]}}"#);
        let g = GroupDocument::parse(&prod).unwrap().build(&Default::default()).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());

        let d5 = r#"{"kind":"semidirect","label":"D5",
            "normal":{"kind":"perm","generators":["(1 2 3 4 5)"]},
            "acting":{"kind":"cayley","table":[[0,1],[1,0]]},
            "action":"inversion"}"#;
        let g = GroupDocument::parse(d5).unwrap().build(&Default::default()).unwrap();
        assert_eq!(g.order(), 10);
        assert!(!g.is_abelian());
    }

    #[test]
    fn rejects_malformed() {
        assert!(GroupDocument::parse("{not json").is_err());
        assert!(GroupDocument::parse(r#"{"kind":"blob"}"#).is_err());
        assert!(GroupDocument::parse(r#"{"version":99,"kind":"cayley","table":[[0]]}"#).is_err());
        let bad_action = r#"{"kind":"semidirect",
            "normal":{"kind":"cayley","table":[[0]]},
            "acting":{"kind":"cayley","table":[[0]]},
            "action":"twist"}"#;
        let doc = GroupDocument::parse(bad_action).unwrap();
        assert!(doc.build(&Default::default()).is_err());
    }
}
