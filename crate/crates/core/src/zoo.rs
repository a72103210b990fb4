//! The shipped fixture groups, embedded at compile time.

use crate::error::{Error, Result};
use crate::group::spec::GroupDocument;
use crate::group::{FiniteGroup, GroupOptions};

/// `(file stem, JSON text)` for every file under `fixtures/groups/`.
pub const FIXTURES: &[(&str, &str)] = &[
    ("a4", include_str!("../../../fixtures/groups/a4.json")),
    ("d4", include_str!("../../../fixtures/groups/d4.json")),
    ("d5", include_str!("../../../fixtures/groups/d5.json")),
    ("d6", include_str!("../../../fixtures/groups/d6.json")),
    ("d7", include_str!("../../../fixtures/groups/d7.json")),
    ("d8", include_str!("../../../fixtures/groups/d8.json")),
    ("d9", include_str!("../../../fixtures/groups/d9.json")),
    ("d10", include_str!("../../../fixtures/groups/d10.json")),
    ("d12", include_str!("../../../fixtures/groups/d12.json")),
    ("dic3", include_str!("../../../fixtures/groups/dic3.json")),
    ("dic5", include_str!("../../../fixtures/groups/dic5.json")),
    ("dic6", include_str!("../../../fixtures/groups/dic6.json")),
    ("f20", include_str!("../../../fixtures/groups/f20.json")),
    ("gd18", include_str!("../../../fixtures/groups/gd18.json")),
    ("m16", include_str!("../../../fixtures/groups/m16.json")),
    ("pauli", include_str!("../../../fixtures/groups/pauli.json")),
    ("q8", include_str!("../../../fixtures/groups/q8.json")),
    ("q16", include_str!("../../../fixtures/groups/q16.json")),
    ("s3", include_str!("../../../fixtures/groups/s3.json")),
    ("s3xs3", include_str!("../../../fixtures/groups/s3xs3.json")),
    ("s4", include_str!("../../../fixtures/groups/s4.json")),
    ("s5", include_str!("../../../fixtures/groups/s5.json")),
    ("sd16", include_str!("../../../fixtures/groups/sd16.json")),
    ("sl23", include_str!("../../../fixtures/groups/sl23.json")),
    ("trivial", include_str!("../../../fixtures/groups/trivial.json")),
    ("z2", include_str!("../../../fixtures/groups/z2.json")),
    ("z2xa4", include_str!("../../../fixtures/groups/z2xa4.json")),
    ("z2xd4", include_str!("../../../fixtures/groups/z2xd4.json")),
    ("z2xdic3", include_str!("../../../fixtures/groups/z2xdic3.json")),
    ("z2xq8", include_str!("../../../fixtures/groups/z2xq8.json")),
    ("z2xz2", include_str!("../../../fixtures/groups/z2xz2.json")),
    ("z2xz2xs3", include_str!("../../../fixtures/groups/z2xz2xs3.json")),
    ("z2xz2xz2", include_str!("../../../fixtures/groups/z2xz2xz2.json")),
    ("z2xz2xz2xz2", include_str!("../../../fixtures/groups/z2xz2xz2xz2.json")),
    ("z2xz2xz4", include_str!("../../../fixtures/groups/z2xz2xz4.json")),
    ("z2xz4", include_str!("../../../fixtures/groups/z2xz4.json")),
    ("z2xz6", include_str!("../../../fixtures/groups/z2xz6.json")),
    ("z2xz8", include_str!("../../../fixtures/groups/z2xz8.json")),
    ("z3", include_str!("../../../fixtures/groups/z3.json")),
    ("z3sz8", include_str!("../../../fixtures/groups/z3sz8.json")),
    ("z3xd4", include_str!("../../../fixtures/groups/z3xd4.json")),
    ("z3xq8", include_str!("../../../fixtures/groups/z3xq8.json")),
    ("z3xs3", include_str!("../../../fixtures/groups/z3xs3.json")),
    ("z3xz3", include_str!("../../../fixtures/groups/z3xz3.json")),
    ("z4", include_str!("../../../fixtures/groups/z4.json")),
    ("z4sz4", include_str!("../../../fixtures/groups/z4sz4.json")),
    ("z4xs3", include_str!("../../../fixtures/groups/z4xs3.json")),
    ("z4xz4", include_str!("../../../fixtures/groups/z4xz4.json")),
    ("z5", include_str!("../../../fixtures/groups/z5.json")),
    ("z6", include_str!("../../../fixtures/groups/z6.json")),
    ("z7", include_str!("../../../fixtures/groups/z7.json")),
    ("z7sz3", include_str!("../../../fixtures/groups/z7sz3.json")),
    ("z8", include_str!("../../../fixtures/groups/z8.json")),
    ("z9", include_str!("../../../fixtures/groups/z9.json")),
    ("z10", include_str!("../../../fixtures/groups/z10.json")),
    ("z11", include_str!("../../../fixtures/groups/z11.json")),
    ("z12", include_str!("../../../fixtures/groups/z12.json")),
    ("z13", include_str!("../../../fixtures/groups/z13.json")),
    ("z14", include_str!("../../../fixtures/groups/z14.json")),
    ("z15", include_str!("../../../fixtures/groups/z15.json")),
    ("z16", include_str!("../../../fixtures/groups/z16.json")),
];

pub fn fixture_json(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, j)| *j)
        .ok_or_else(|| Error::validation(format!("no fixture named {name:?}")))
}

pub fn load(name: &str) -> Result<FiniteGroup> {
    GroupDocument::parse(fixture_json(name)?)?.build(&GroupOptions::default())
}

/// Every fixture, built, in file-name order.
pub fn all() -> Result<Vec<(&'static str, FiniteGroup)>> {
    FIXTURES
        .iter()
        .map(|(n, j)| Ok((*n, GroupDocument::parse(j)?.build(&GroupOptions::default())?)))
        .collect()
}
