use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{evaluate, Action, Stuck, Word};

/// Data certifying that one requirement holds. Every claim is a statement
/// about finitely many evaluations, so it survives any extension of the
/// tables it was checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `point^word = image` and `image ≠ point`.
    Nontrivial { word: Word, point: i64, image: i64 },
    /// `word = σ^shift τ σ^-shift` maps `sources[j]` to `targets[j]`.
    Mapping {
        word: Word,
        shift: i64,
        sources: Vec<i64>,
        targets: Vec<i64>,
    },
    /// `chain[i]^word = chain[i + 1]`, all entries distinct.
    LongOrbit { word: Word, chain: Vec<i64> },
    /// The full orbit of `orbit[0]` under `word`, in order.
    FiniteOrbit { word: Word, orbit: Vec<i64> },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error(transparent)]
    Stuck(#[from] Stuck),
    #[error("{word} sends {point} to {got}, expected {expected}")]
    Mismatch {
        word: Word,
        point: i64,
        expected: i64,
        got: i64,
    },
    #[error("{word} fixes {point}")]
    Fixed { word: Word, point: i64 },
    #[error("witness points of {0} repeat")]
    Repeated(Word),
    #[error("witness for {0} carries no points")]
    Empty(Word),
}

impl Witness {
    pub fn word(&self) -> &Word {
        match self {
            Witness::Nontrivial { word, .. }
            | Witness::Mapping { word, .. }
            | Witness::LongOrbit { word, .. }
            | Witness::FiniteOrbit { word, .. } => word,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Nontrivial { .. } => "nontrivial",
            Witness::Mapping { .. } => "mapping",
            Witness::LongOrbit { .. } => "long_orbit",
            Witness::FiniteOrbit { .. } => "finite_orbit",
        }
    }

    /// Points the witness talks about.
    pub fn points(&self) -> Vec<i64> {
        match self {
            Witness::Nontrivial { point, image, .. } => vec![*point, *image],
            Witness::Mapping {
                sources, targets, ..
            } => sources.iter().chain(targets).copied().collect(),
            Witness::LongOrbit { chain, .. } => chain.clone(),
            Witness::FiniteOrbit { orbit, .. } => orbit.clone(),
        }
    }

    /// Re-evaluates the certified facts against `action`.
    pub fn replay<A: Action + ?Sized>(&self, action: &A) -> Result<(), ReplayError> {
        let expect = |word: &Word, point: i64, expected: i64| -> Result<(), ReplayError> {
            let got = evaluate(word, action, point)?;
            if got == expected {
                Ok(())
            } else {
                Err(ReplayError::Mismatch {
                    word: word.clone(),
                    point,
                    expected,
                    got,
                })
            }
        };
        match self {
            Witness::Nontrivial { word, point, image } => {
                if point == image {
                    return Err(ReplayError::Fixed {
                        word: word.clone(),
                        point: *point,
                    });
                }
                expect(word, *point, *image)
            }
            Witness::Mapping {
                word,
                sources,
                targets,
                ..
            } => {
                if sources.is_empty() || sources.len() != targets.len() {
                    return Err(ReplayError::Empty(word.clone()));
                }
                sources
                    .iter()
                    .zip(targets)
                    .try_for_each(|(&x, &y)| expect(word, x, y))
            }
            Witness::LongOrbit { word, chain } => {
                distinct(word, chain)?;
                chain.windows(2).try_for_each(|p| expect(word, p[0], p[1]))
            }
            Witness::FiniteOrbit { word, orbit } => {
                distinct(word, orbit)?;
                let n = orbit.len();
                (0..n).try_for_each(|i| expect(word, orbit[i], orbit[(i + 1) % n]))
            }
        }
    }
}

fn distinct(word: &Word, points: &[i64]) -> Result<(), ReplayError> {
    if points.is_empty() {
        return Err(ReplayError::Empty(word.clone()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() == points.len() {
        Ok(())
    } else {
        Err(ReplayError::Repeated(word.clone()))
    }
}
