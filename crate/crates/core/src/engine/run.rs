use serde::{Deserialize, Serialize};

use super::{enumerate_requirements, ConstructionBudget, EngineError, FreeBasis, Requirement, SurfaceHom};
use crate::forcing::{Forced, Insertion, PartialAssignment, ReplayError, Witness};
use crate::permutation::{complete, FinPerm};
use crate::words::{Action, GeneratorAssignment, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Nontrivial,
    Mapping,
    LongOrbit,
    FiniteOrbit,
}

/// One discharged requirement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub op: Op,
    pub word: Word,
    pub inserted: Vec<Insertion>,
    pub witness: Witness,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConstructionLog {
    pub entries: Vec<LogEntry>,
}

impl ConstructionLog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.entries.iter().map(|e| &e.witness)
    }

    /// One JSON object per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("log entries serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let entries = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?;
        Ok(Self { entries })
    }

    /// Indices and errors of witnesses that fail to replay.
    pub fn replay<A: Action + ?Sized>(&self, action: &A) -> Vec<(usize, ReplayError)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.witness.replay(action).err().map(|err| (i, err)))
            .collect()
    }
}

/// Discharges every requirement of `budget` in order. The budget window is
/// the protected window of the assignment.
pub fn run_construction(
    budget: &ConstructionBudget,
    seed: Option<u64>,
) -> Result<(PartialAssignment, ConstructionLog), EngineError> {
    let reqs = enumerate_requirements(budget)?;
    let mut assign = PartialAssignment::new(
        ConstructionBudget::sigma(),
        budget.free_generators(),
        budget.window,
    )
    .with_seed(seed);
    let mut log = ConstructionLog::default();
    for (index, req) in reqs.iter().enumerate() {
        let (op, result) = match req {
            Requirement::Freeness { word } => (Op::Nontrivial, assign.force_nontrivial(word)),
            Requirement::Transitivity { x, y } => (Op::Mapping, assign.force_mapping(x, y)),
            Requirement::LongOrbit { word, t } => (Op::LongOrbit, assign.force_long_orbit(word, *t)),
            Requirement::FiniteOrbit { word, point } => {
                (Op::FiniteOrbit, assign.force_finite_orbit(word, *point))
            }
        };
        let Forced { witness, inserted } =
            result.map_err(|source| EngineError::Forcing { index, source })?;
        log.entries.push(LogEntry {
            op,
            word: witness.word().clone(),
            inserted,
            witness,
        });
    }
    Ok((assign, log))
}

/// Completes every table canonically; σ stays the shift.
pub fn finalize(assign: &PartialAssignment) -> GeneratorAssignment {
    let mut out: GeneratorAssignment = assign
        .tables()
        .iter()
        .map(|(g, t)| (g.clone(), complete(t.clone())))
        .collect();
    out.insert(assign.sigma().clone(), FinPerm::Shift(1));
    out
}

/// Everything needed to reproduce and re-check a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub genus: u32,
    pub budget: ConstructionBudget,
    pub seed: Option<u64>,
    pub homomorphism: SurfaceHom,
    pub assignment: GeneratorAssignment,
    pub log: ConstructionLog,
}

/// Runs the construction for `budget` and assembles the surface
/// homomorphism of the given genus on top of it.
pub fn construct(
    genus: u32,
    budget: &ConstructionBudget,
    basis: &FreeBasis,
    power: u32,
    seed: Option<u64>,
) -> Result<EmbeddingSpec, EngineError> {
    let (partial, log) = run_construction(budget, seed)?;
    let assignment = finalize(&partial);
    let homomorphism = super::surface_hom(&assignment, basis, power)?;
    if homomorphism.genus() != genus {
        return Err(EngineError::InvalidBudget(format!(
            "basis is for genus {}, not {genus}",
            homomorphism.genus()
        )));
    }
    Ok(EmbeddingSpec {
        genus,
        budget: budget.clone(),
        seed,
        homomorphism,
        assignment,
        log,
    })
}
