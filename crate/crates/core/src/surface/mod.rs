//! Surface group presentations, Dehn twists and folding maps.
//!
//! Everything here is symbolic: maps are tables of generator images and are
//! checked against the source relator when built. Triviality in a surface
//! group is decided with Dehn's algorithm, which is exact for the standard
//! one-relator presentations of genus at least 2.

mod dehn;
mod maps;
mod twists;

pub use dehn::{dehn_reduce, symmetrize};
pub use maps::GroupMap;
pub use twists::{
    dehn_twist_even, folding_even, folding_odd, presentation_even, presentation_odd, twists_odd,
    Parity, Surface,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Generator, Word};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("genus {0} is below 2")]
    GenusTooSmall(u32),
    #[error("no image given for generator {0}")]
    MissingImage(Generator),
    #[error("generator {0} is not in the alphabet")]
    UnknownGenerator(Generator),
    #[error("relator {relator} maps to {image}, which is not trivial")]
    RelatorSurvives { relator: Word, image: Word },
    #[error("cannot compose: target of the inner map is not the source of the outer map")]
    Incompatible,
    #[error("power of a map that is not an endomorphism")]
    NotEndomorphism,
}

/// Generators and relators. A free group is a presentation without
/// relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn free(generators: Vec<Generator>) -> Self {
        Self {
            generators,
            relators: Vec::new(),
        }
    }

    pub fn one_relator(generators: Vec<Generator>, relator: Word) -> Self {
        Self {
            generators,
            relators: vec![relator],
        }
    }

    /// The single relator of a surface presentation, if any.
    pub fn relator(&self) -> Option<&Word> {
        self.relators.first()
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.generators.contains(g)
    }

    /// Whether `w` is trivial in the group. Exact for free groups and for
    /// presentations satisfying C'(1/6).
    pub fn is_trivial(&self, w: &Word) -> bool {
        if self.relators.is_empty() {
            w.is_empty()
        } else {
            dehn_reduce(w, &symmetrize(&self.relators)).is_empty()
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<(), SurfaceError> {
        match w.letters().iter().find(|l| !self.contains(&l.generator)) {
            Some(l) => Err(SurfaceError::UnknownGenerator(l.generator.clone())),
            None => Ok(()),
        }
    }
}

pub(crate) fn gens(names: impl IntoIterator<Item = String>) -> Vec<Generator> {
    names.into_iter().map(Generator::new).collect()
}
