//! Monotone extension of partial assignments.
//!
//! A [`PartialAssignment`] holds σ (always the shift `a ↦ a + 1`) and one
//! finite partial bijection per free generator. The `force_*` operations
//! each add finitely many pairs so that one requirement holds, and return a
//! [`Witness`] that stays valid under every later extension and under the
//! final completion. Pairs are never rewritten.

mod ops;
mod witness;

pub use witness::{ReplayError, Witness};

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permutation::{PartialInjection, PermutationError, Window};
use crate::words::{Action, Generator, Letter, Stuck};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ForcingError {
    #[error("generator {0} is not part of the assignment")]
    UnknownGenerator(Generator),
    #[error("word must be nonempty")]
    EmptyWord,
    #[error("word {0} is conjugate to a power of {1}")]
    ConjugatePower(String, Generator),
    #[error("tuples must be nonempty, of equal length and without repeats")]
    BadTuples,
    #[error("orbit target must be at least 1")]
    ZeroTarget,
    #[error("no suitable extension found within {0} attempts")]
    Exhausted(usize),
    #[error("inconsistent extension: {0}")]
    Conflict(#[from] PermutationError),
    #[error(transparent)]
    Stuck(#[from] Stuck),
}

/// One inserted pair `source^generator = target`, serialized as
/// `[generator, source, target]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Insertion(pub Generator, pub i64, pub i64);

/// Result of a single `force_*` call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forced {
    pub witness: Witness,
    pub inserted: Vec<Insertion>,
}

/// σ pinned to the shift plus finite tables for the free generators.
#[derive(Debug, Clone)]
pub struct PartialAssignment {
    sigma: Generator,
    tables: BTreeMap<Generator, PartialInjection>,
    protected: Window,
    occupied: BTreeSet<i64>,
    // lowest isolated candidates per margin, valid because `occupied` only grows
    hints: BTreeMap<i64, (i64, i64)>,
    seed: Option<u64>,
    journal: Vec<Insertion>,
}

impl PartialEq for PartialAssignment {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.tables == other.tables && self.protected == other.protected
    }
}

impl Eq for PartialAssignment {}

impl PartialAssignment {
    /// Empty tables for `free`, with σ named `sigma`.
    pub fn new(sigma: Generator, free: impl IntoIterator<Item = Generator>, protected: Window) -> Self {
        Self {
            sigma,
            tables: free.into_iter().map(|g| (g, PartialInjection::new())).collect(),
            protected,
            occupied: BTreeSet::new(),
            hints: BTreeMap::new(),
            seed: None,
            journal: Vec::new(),
        }
    }

    /// Randomizes fresh-point selection. The choice is still a function of
    /// the seed and the current tables, so runs stay reproducible.
    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn sigma(&self) -> &Generator {
        &self.sigma
    }

    pub fn protected(&self) -> Window {
        self.protected
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Free generators in name order.
    pub fn free_generators(&self) -> impl Iterator<Item = &Generator> {
        self.tables.keys()
    }

    pub fn table(&self, g: &Generator) -> Option<&PartialInjection> {
        self.tables.get(g)
    }

    pub fn tables(&self) -> &BTreeMap<Generator, PartialInjection> {
        &self.tables
    }

    /// Every point in some table's domain or codomain.
    pub fn occupied(&self) -> &BTreeSet<i64> {
        &self.occupied
    }

    /// Total number of pairs over all tables.
    pub fn size(&self) -> usize {
        self.tables.values().map(PartialInjection::len).sum()
    }

    /// True iff every pair of `other` is present here.
    pub fn extends(&self, other: &PartialAssignment) -> bool {
        other
            .tables
            .iter()
            .all(|(g, t)| self.tables.get(g).is_some_and(|mine| mine.extends(t)))
    }

    pub fn knows(&self, g: &Generator) -> bool {
        *g == self.sigma || self.tables.contains_key(g)
    }

    pub(crate) fn check_letters(&self, letters: &[Letter]) -> Result<(), ForcingError> {
        match letters.iter().find(|l| !self.knows(&l.generator)) {
            Some(l) => Err(ForcingError::UnknownGenerator(l.generator.clone())),
            None => Ok(()),
        }
    }

    /// Adds `source^g = target` for a free generator `g`.
    pub fn insert(&mut self, g: &Generator, source: i64, target: i64) -> Result<bool, ForcingError> {
        let table = self
            .tables
            .get_mut(g)
            .ok_or_else(|| ForcingError::UnknownGenerator(g.clone()))?;
        let added = table.insert(source, target)?;
        if added {
            self.occupied.insert(source);
            self.occupied.insert(target);
            self.journal.push(Insertion(g.clone(), source, target));
        }
        Ok(added)
    }

    /// Defines `point^letter = target`, i.e. `target^g = point` for an
    /// inverse letter.
    pub(crate) fn define(&mut self, letter: &Letter, point: i64, target: i64) -> Result<(), ForcingError> {
        if letter.inverse {
            self.insert(&letter.generator, target, point)?;
        } else {
            self.insert(&letter.generator, point, target)?;
        }
        Ok(())
    }

    pub(crate) fn take_journal(&mut self) -> Vec<Insertion> {
        std::mem::take(&mut self.journal)
    }

    /// `count` distinct fresh points: outside `exclusions`, the protected
    /// window and every table, taken by increasing absolute value with the
    /// positive point first (unless a seed is set).
    pub fn fresh_points(&mut self, exclusions: &BTreeSet<i64>, count: usize) -> Vec<i64> {
        let mut avoid = exclusions.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let p = self.fresh_isolated(0, &avoid);
            avoid.insert(p);
            out.push(p);
        }
        out
    }

    /// A fresh point `f` such that `[f - margin, f + margin]` avoids the
    /// protected window, every table and `avoid`.
    pub(crate) fn fresh_isolated(&mut self, margin: i64, avoid: &BTreeSet<i64>) -> i64 {
        let skip = match self.seed {
            None => 0,
            Some(seed) => {
                let mix = (self.occupied.len() as u64)
                    .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                    .wrapping_add(avoid.len() as u64);
                ChaCha8Rng::seed_from_u64(seed ^ mix).gen_range(0..=2)
            }
        };
        let edge = self.protected.radius() + margin + 1;
        let (hp, hn) = *self.hints.get(&margin).unwrap_or(&(edge, -edge));
        let none = BTreeSet::new();
        let hp = next_isolated(hp, 1, margin, &self.occupied, &none);
        let hn = next_isolated(hn, -1, margin, &self.occupied, &none);
        self.hints.insert(margin, (hp, hn));

        let mut p = next_isolated(hp, 1, margin, &self.occupied, avoid);
        let mut n = next_isolated(hn, -1, margin, &self.occupied, avoid);
        for _ in 0..skip {
            if p <= -n {
                p = next_isolated(p + 1, 1, margin, &self.occupied, avoid);
            } else {
                n = next_isolated(n - 1, -1, margin, &self.occupied, avoid);
            }
        }
        if p <= -n {
            p
        } else {
            n
        }
    }
}

/// First `x` at or beyond `from` in direction `dir` whose margin
/// neighbourhood misses both sets.
fn next_isolated(mut x: i64, dir: i64, margin: i64, a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> i64 {
    loop {
        let hit = |s: &BTreeSet<i64>| {
            let mut r = s.range(x - margin..=x + margin);
            if dir > 0 {
                r.next_back().copied()
            } else {
                r.next().copied()
            }
        };
        let blocker = match (hit(a), hit(b)) {
            (Some(u), Some(v)) => Some(if dir > 0 { u.max(v) } else { u.min(v) }),
            (u, v) => u.or(v),
        };
        match blocker {
            None => return x,
            Some(q) => x = q + dir * (margin + 1),
        }
    }
}

impl Action for PartialAssignment {
    fn step(&self, letter: &Letter, point: i64) -> Option<i64> {
        if letter.generator == self.sigma {
            return Some(point + letter.sign());
        }
        let t = self.tables.get(&letter.generator)?;
        if letter.inverse {
            t.preimage(point)
        } else {
            t.get(point)
        }
    }

    fn step_run(&self, letter: &Letter, count: usize, point: i64) -> Option<i64> {
        if letter.generator == self.sigma {
            return Some(point + letter.sign() * count as i64);
        }
        (0..count).try_fold(point, |x, _| self.step(letter, x))
    }
}
