//! Permutations of `{0, .., degree-1}` with 1-based textual notation.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation stored as its image list: `self.0[i]` is the image of point `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i as u32).collect()))
    }

    /// Parses 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)`; `()`, `e` and `id`
    /// denote the identity. Points may be separated by spaces or commas.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let trimmed = text.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        if !matches!(trimmed, "" | "e" | "id" | "()") {
            let mut rest = trimmed;
            while !rest.is_empty() {
                let open = rest
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
                let close = open
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
                let cycle = open[..close]
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>()
                            .ok()
                            .filter(|&p| p >= 1)
                            .ok_or_else(|| Error::Parse(format!("bad point {s:?} in {text:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
                rest = open[close + 1..].trim_start();
            }
        }
        let max_point = cycles.iter().flatten().copied().max().unwrap_or(0);
        let degree = degree.max(max_point);
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in &cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let p = p - 1;
                if touched[p] {
                    return Err(Error::Parse(format!("point {} repeated in {text:?}", p + 1)));
                }
                touched[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn padded(&self, degree: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree.max(self.0.len()) as u32);
        Perm(v)
    }

    /// Composition `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.image(p);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_roundtrip() {
        let p = Perm::parse_cycles("(1 2 3)(4,5)", 0).unwrap();
        assert_eq!(p.degree(), 5);
        assert_eq!(p.image(0), 1);
        assert_eq!(p.image(2), 0);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert!(Perm::parse_cycles("()", 3).unwrap().is_identity());
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        // (a∘b)(2) = a(3) = 3, (a∘b)(1) = a(1) = 2
        let ab = a.compose(&b);
        assert_eq!(ab.image(1), 2);
        assert_eq!(ab.image(0), 1);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::parse_cycles("(1 2", 0).is_err());
        assert!(Perm::parse_cycles("(1 1)", 0).is_err());
        assert!(Perm::parse_cycles("(0 1)", 0).is_err());
        assert!(Perm::from_one_line(&[1, 1]).is_err());
        assert_eq!(Perm::from_one_line(&[2, 1]).unwrap().image(0), 1);
    }
}
