//! Requirement scheduling, finalization and the surface group
//! homomorphisms built on a constructed free group.
//!
//! The free alphabet is `tau1, …, tauN` plus `sigma`, the latter always the
//! shift. A run discharges, in this order, every freeness requirement
//! (each reduced word up to `word_len` moves a point), every transitivity
//! requirement (each pair of tuples of distinct window points is matched by
//! some word), and for each designated word a long orbit of every length up
//! to `orbit_target` followed by a finite orbit through every window point.

mod embedding;
mod run;

pub use embedding::{surface_hom, surface_hom_even, surface_hom_odd, FreeBasis, SurfaceHom, GAMMA};
pub use run::{construct, finalize, run_construction, ConstructionLog, EmbeddingSpec, LogEntry, Op};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forcing::ForcingError;
use crate::permutation::Window;
use crate::surface::SurfaceError;
use crate::words::{enumerate_reduced_words, Generator, Word};

pub const SIGMA: &str = "sigma";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("assignment lacks generator {0}")]
    InvalidRank(Generator),
    #[error("requirement {index} failed: {source}")]
    Forcing {
        index: usize,
        #[source]
        source: ForcingError,
    },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("{0}")]
    Inconsistent(String),
}

/// Bounds of a construction run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionBudget {
    pub n_free: usize,
    pub word_len: usize,
    pub tuple_max: usize,
    pub window: Window,
    pub orbit_target: usize,
    pub designated: Vec<Word>,
}

impl ConstructionBudget {
    pub fn sigma() -> Generator {
        Generator::new(SIGMA)
    }

    /// `tau1, …, tauN`.
    pub fn free_generators(&self) -> Vec<Generator> {
        (1..=self.n_free)
            .map(|i| Generator::new(format!("tau{i}")))
            .collect()
    }

    /// The free generators followed by `sigma`.
    pub fn alphabet(&self) -> Vec<Generator> {
        let mut a = self.free_generators();
        a.push(Self::sigma());
        a
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::InvalidBudget(m));
        if self.n_free == 0 {
            return bad("n_free must be at least 1".into());
        }
        if self.word_len == 0 {
            return bad("word_len must be at least 1".into());
        }
        let alphabet = self.alphabet();
        let sigma = Self::sigma();
        for w in &self.designated {
            if w.is_empty() {
                return bad("designated words must be nonempty".into());
            }
            if let Some(g) = w.generators().into_iter().find(|g| !alphabet.contains(g)) {
                return bad(format!("designated word {w} uses unknown generator {g}"));
            }
            if w.is_conjugate_power_of(&sigma) {
                return bad(format!("designated word {w} is conjugate to a power of sigma"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Requirement {
    Freeness { word: Word },
    Transitivity { x: Vec<i64>, y: Vec<i64> },
    LongOrbit { word: Word, t: usize },
    FiniteOrbit { word: Word, point: i64 },
}

/// Ordered `k`-tuples of distinct window points, lexicographic.
pub fn distinct_tuples(window: Window, k: usize) -> Vec<Vec<i64>> {
    let points: Vec<i64> = window.points().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for prefix in &out {
            for &p in &points {
                if !prefix.contains(&p) {
                    let mut t = prefix.clone();
                    t.push(p);
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out
}

/// Every requirement of the budget, in scheduling order.
pub fn enumerate_requirements(budget: &ConstructionBudget) -> Result<Vec<Requirement>, EngineError> {
    budget.validate()?;
    let mut out: Vec<Requirement> = enumerate_reduced_words(&budget.alphabet(), budget.word_len)
        .into_iter()
        .map(|word| Requirement::Freeness { word })
        .collect();
    for k in 1..=budget.tuple_max {
        let tuples = distinct_tuples(budget.window, k);
        for x in &tuples {
            for y in &tuples {
                out.push(Requirement::Transitivity {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
    }
    for w in &budget.designated {
        for t in 1..=budget.orbit_target {
            out.push(Requirement::LongOrbit { word: w.clone(), t });
        }
    }
    for w in &budget.designated {
        for point in budget.window.points() {
            out.push(Requirement::FiniteOrbit {
                word: w.clone(),
                point,
            });
        }
    }
    Ok(out)
}
