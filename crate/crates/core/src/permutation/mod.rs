//! Permutations of ℤ with finite descriptions.
//!
//! A [`FinPerm`] is either a pure shift `a ↦ a + s` or a finite table of
//! exceptions completed to a bijection of ℤ by the anchored order
//! alignment (see [`complete`]). Group elements built from several
//! permutations are never collapsed into a single `FinPerm`; they are
//! words evaluated pointwise.

mod finperm;
mod orbit;
mod partial;

pub use finperm::{complete, FinPerm};
pub use orbit::{
    orbit_structure, orbit_structure_by, window_fixing_power, window_fixing_power_by, Orbit,
    OrbitReport, DEFAULT_ORBIT_CAP,
};
pub use partial::PartialInjection;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::Stuck;

/// The symmetric interval `[-radius, radius]` of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub radius: u32,
}

impl Window {
    pub fn new(radius: u32) -> Self {
        Self { radius }
    }

    pub fn radius(&self) -> i64 {
        i64::from(self.radius)
    }

    pub fn contains(&self, a: i64) -> bool {
        a.unsigned_abs() <= u64::from(self.radius)
    }

    /// Number of integers in the window.
    pub fn len(&self) -> usize {
        2 * self.radius as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Points in increasing order.
    pub fn points(&self) -> impl Iterator<Item = i64> + Clone {
        -self.radius()..=self.radius()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PermutationError {
    #[error("source {0} is already mapped to a different target")]
    DuplicateSource(i64),
    #[error("target {0} already has a different preimage")]
    DuplicateTarget(i64),
    #[error("orbit of {point} did not close within {cap} steps")]
    OrbitExceedsCap { point: i64, cap: usize },
    #[error("fixing power does not fit in 64 bits")]
    PowerOverflow,
    #[error(transparent)]
    Evaluation(#[from] Stuck),
}
