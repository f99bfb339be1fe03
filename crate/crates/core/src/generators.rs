//! Subsets of the simple generators, stored as a bitmask.
//!
//! Generators are 0-based inside the crate and 1-based whenever a set is
//! parsed from or rendered to text, so `{s1, s3}` is written `1,3`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest rank a [`GeneratorSet`] can hold.
pub const MAX_RANK: usize = 32;

/// A subset `I` of the simple generators `S`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GeneratorSet(u32);

impl GeneratorSet {
    pub const EMPTY: GeneratorSet = GeneratorSet(0);

    pub fn from_bits(bits: u32) -> Self {
        GeneratorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The whole of `S` for a system of the given rank.
    pub fn full(rank: usize) -> Self {
        debug_assert!(rank <= MAX_RANK);
        if rank == MAX_RANK {
            GeneratorSet(u32::MAX)
        } else {
            GeneratorSet((1u32 << rank) - 1)
        }
    }

    pub fn singleton(generator: usize) -> Self {
        GeneratorSet(1 << generator)
    }

    /// Builds a set from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(GeneratorSet::EMPTY, |acc, i| acc.with(i))
    }

    /// Builds a set from 1-based indices, rejecting anything outside `1..=rank`.
    pub fn from_one_based(indices: &[usize], rank: usize) -> Result<Self> {
        let mut set = GeneratorSet::EMPTY;
        for &i in indices {
            if i == 0 || i > rank {
                return Err(Error::GeneratorOutOfRange { index: i, rank });
            }
            set = set.with(i - 1);
        }
        Ok(set)
    }

    /// Parses a comma-separated list of 1-based indices such as `"1,3"`.
    ///
    /// The empty string and `"-"` both denote the empty set. When `dihedral`
    /// is set the aliases `s` and `t` stand for generators 1 and 2.
    pub fn parse(text: &str, rank: usize, dihedral: bool) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "-" || text == "{}" {
            return Ok(GeneratorSet::EMPTY);
        }
        let mut indices = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            let index = match token {
                "s" if dihedral => 1,
                "t" if dihedral => 2,
                _ => token
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad generator index {token:?}")))?,
            };
            indices.push(index);
        }
        GeneratorSet::from_one_based(&indices, rank)
    }

    pub fn contains(self, generator: usize) -> bool {
        generator < MAX_RANK && self.0 & (1 << generator) != 0
    }

    #[must_use]
    pub fn with(self, generator: usize) -> Self {
        GeneratorSet(self.0 | (1 << generator))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GeneratorSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: GeneratorSet) -> Self {
        GeneratorSet(self.0 | other.0)
    }

    #[must_use]
    pub fn complement(self, rank: usize) -> Self {
        GeneratorSet(!self.0 & GeneratorSet::full(rank).0)
    }

    /// 0-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_RANK).filter(move |&i| self.contains(i))
    }

    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Every subset of `S` for the given rank, in bitmask order.
    pub fn all(rank: usize) -> impl Iterator<Item = GeneratorSet> {
        (0..1u64 << rank).map(|b| GeneratorSet(b as u32))
    }

    /// Renders as a subscript in the `Y_{1,3}` style; the empty set is `∅`.
    pub fn subscript(self) -> String {
        match self.len() {
            0 => "∅".to_string(),
            1 => self.one_based()[0].to_string(),
            _ => format!(
                "{{{}}}",
                self.one_based()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// Lexicographic order on the sorted member lists, so `[] < [1] < [1,2] < [2]`.
impl Ord for GeneratorSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for GeneratorSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Serialized as a sorted array of 1-based indices.
impl Serialize for GeneratorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_one_based() {
        let set = GeneratorSet::parse("1,3", 3, false).unwrap();
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(set.one_based(), vec![1, 3]);
        assert_eq!(
            GeneratorSet::parse("", 3, false).unwrap(),
            GeneratorSet::EMPTY
        );
    }

    #[test]
    fn parse_dihedral_aliases() {
        assert_eq!(
            GeneratorSet::parse("s,t", 2, true).unwrap(),
            GeneratorSet::full(2)
        );
        assert!(GeneratorSet::parse("s", 2, false).is_err());
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(matches!(
            GeneratorSet::parse("4", 3, false),
            Err(Error::GeneratorOutOfRange { index: 4, rank: 3 })
        ));
        assert!(GeneratorSet::parse("0", 3, false).is_err());
    }

    #[test]
    fn lexicographic_order() {
        let mut sets: Vec<GeneratorSet> = GeneratorSet::all(3).collect();
        sets.sort();
        let rendered: Vec<Vec<usize>> = sets.iter().map(|s| s.one_based()).collect();
        assert_eq!(
            rendered,
            vec![
                vec![],
                vec![1],
                vec![1, 2],
                vec![1, 2, 3],
                vec![1, 3],
                vec![2],
                vec![2, 3],
                vec![3]
            ]
        );
    }

    #[test]
    fn complement_and_subset() {
        let set = GeneratorSet::from_indices([0, 3]);
        assert_eq!(set.complement(5), GeneratorSet::from_indices([1, 2, 4]));
        assert!(set.is_subset(GeneratorSet::full(4)));
        assert!(!GeneratorSet::full(4).is_subset(set));
        assert_eq!(GeneratorSet::full(32).len(), 32);
    }

    #[test]
    fn serializes_one_based() {
        let json = serde_json::to_string(&GeneratorSet::from_indices([0, 2])).unwrap();
        assert_eq!(json, "[1,3]");
    }
}
