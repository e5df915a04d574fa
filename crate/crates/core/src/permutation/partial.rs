use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::PermutationError;

/// A finite partial bijection of ℤ.
///
/// Both directions are indexed so that forward and backward lookups are
/// logarithmic. Serialized as a list of `[source, target]` pairs sorted by
/// source.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct PartialInjection {
    forward: BTreeMap<i64, i64>,
    backward: BTreeMap<i64, i64>,
}

impl PartialInjection {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (i64, i64)>,
    ) -> Result<Self, PermutationError> {
        let mut table = Self::new();
        for (source, target) in pairs {
            table.insert(source, target)?;
        }
        Ok(table)
    }

    /// Adds `source ↦ target`. Returns `Ok(false)` when the pair is already
    /// present and an error when it would break functionality or injectivity.
    pub fn insert(&mut self, source: i64, target: i64) -> Result<bool, PermutationError> {
        match (self.forward.get(&source), self.backward.get(&target)) {
            (Some(&t), _) if t == target => Ok(false),
            (Some(_), _) => Err(PermutationError::DuplicateSource(source)),
            (None, Some(_)) => Err(PermutationError::DuplicateTarget(target)),
            (None, None) => {
                self.forward.insert(source, target);
                self.backward.insert(target, source);
                Ok(true)
            }
        }
    }

    pub fn get(&self, source: i64) -> Option<i64> {
        self.forward.get(&source).copied()
    }

    pub fn preimage(&self, target: i64) -> Option<i64> {
        self.backward.get(&target).copied()
    }

    pub fn contains_source(&self, a: i64) -> bool {
        self.forward.contains_key(&a)
    }

    pub fn contains_target(&self, a: i64) -> bool {
        self.backward.contains_key(&a)
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Pairs in increasing order of source.
    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.forward.iter().map(|(&s, &t)| (s, t))
    }

    pub fn domain(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.forward.keys().copied()
    }

    pub fn codomain(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.backward.keys().copied()
    }

    pub fn inverse(&self) -> Self {
        Self {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// True when every pair of `other` is also a pair of `self`.
    pub fn extends(&self, other: &PartialInjection) -> bool {
        other.pairs().all(|(s, t)| self.get(s) == Some(t))
    }
}

impl TryFrom<Vec<(i64, i64)>> for PartialInjection {
    type Error = PermutationError;

    fn try_from(pairs: Vec<(i64, i64)>) -> Result<Self, Self::Error> {
        Self::from_pairs(pairs)
    }
}

impl From<PartialInjection> for Vec<(i64, i64)> {
    fn from(table: PartialInjection) -> Self {
        table.pairs().collect()
    }
}
