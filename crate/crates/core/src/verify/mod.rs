//! Brute-force re-checks of a finished run.
//!
//! Nothing here trusts the construction log except as a source of candidate
//! points and words. A word that fixes a whole finite window is reported as
//! a flag, never as an error.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::engine::{distinct_tuples, EmbeddingSpec, SurfaceHom};
use crate::permutation::{window_fixing_power, PermutationError, Window, DEFAULT_ORBIT_CAP};
use crate::words::{enumerate_reduced_words, evaluate, Generator, GeneratorAssignment, Stuck, Word};

/// 0, 1, −1, 2, −2, … up to the radius.
fn rule_points(w: Window) -> impl Iterator<Item = i64> {
    let r = w.radius();
    std::iter::once(0).chain((1..=r).flat_map(|k| [k, -k]))
}

/// Largest absolute value of a point appearing in some table.
pub fn table_extent(assign: &GeneratorAssignment) -> i64 {
    assign
        .iter()
        .filter_map(|(_, p)| p.table())
        .flat_map(|t| t.pairs().flat_map(|(a, b)| [a.abs(), b.abs()]))
        .max()
        .unwrap_or(0)
}

fn alphabet(assign: &GeneratorAssignment) -> Vec<Generator> {
    assign.generators().cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub words_checked: usize,
    /// Words fixing every point of the search window.
    pub flagged: Vec<Word>,
}

/// Looks for a moved point of every reduced word up to `max_len`.
pub fn check_freeness(
    assign: &GeneratorAssignment,
    max_len: usize,
    search: Window,
) -> Result<FreenessReport, Stuck> {
    let words = enumerate_reduced_words(&alphabet(assign), max_len);
    let mut flagged = Vec::new();
    for w in &words {
        let mut moved = false;
        for a in rule_points(search) {
            if assign.evaluate(w, a)? != a {
                moved = true;
                break;
            }
        }
        if !moved {
            flagged.push(w.clone());
        }
    }
    Ok(FreenessReport {
        words_checked: words.len(),
        flagged,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityReport {
    pub pairs_checked: usize,
    pub unrealized: Vec<(Vec<i64>, Vec<i64>)>,
}

/// For every pair of `k`-tuples of distinct window points, searches the
/// words up to `word_len_cap` (plus `extra`) for one sending the first
/// tuple onto the second.
pub fn check_transitivity(
    assign: &GeneratorAssignment,
    k: usize,
    window: Window,
    word_len_cap: usize,
    extra: &[Word],
) -> Result<TransitivityReport, Stuck> {
    let mut words = vec![Word::identity()];
    words.extend(enumerate_reduced_words(&alphabet(assign), word_len_cap));
    words.extend(extra.iter().cloned());
    let points: Vec<i64> = window.points().collect();
    let tuples = distinct_tuples(window, k);
    let mut realized: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
    for w in &words {
        let images = points
            .iter()
            .map(|&p| assign.evaluate(w, p))
            .collect::<Result<Vec<i64>, Stuck>>()?;
        let image = |p: i64| images[(p + window.radius()) as usize];
        for x in &tuples {
            let y: Vec<i64> = x.iter().map(|&p| image(p)).collect();
            if y.iter().all(|&q| window.contains(q)) {
                realized.insert((x.clone(), y));
            }
        }
    }
    let mut unrealized = Vec::new();
    for x in &tuples {
        for y in &tuples {
            if !realized.contains(&(x.clone(), y.clone())) {
                unrealized.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(TransitivityReport {
        pairs_checked: tuples.len() * tuples.len(),
        unrealized,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Nondiscrete {
    /// `w^q` fixes the window and moves `moved`.
    Witnessed { q: u64, moved: i64 },
    /// `w^q` fixes the window but no moved point was found.
    Degenerate { q: u64 },
}

impl Nondiscrete {
    pub fn q(&self) -> u64 {
        match *self {
            Nondiscrete::Witnessed { q, .. } | Nondiscrete::Degenerate { q } => q,
        }
    }

    pub fn moved(&self) -> Option<i64> {
        match *self {
            Nondiscrete::Witnessed { moved, .. } => Some(moved),
            Nondiscrete::Degenerate { .. } => None,
        }
    }
}

/// `Some(true)` if `a^{w^q} ≠ a`, `None` if that cannot be decided within
/// `cap` steps.
pub fn moved_by_power(w: &Word, assign: &GeneratorAssignment, a: i64, q: u64, cap: usize) -> Result<Option<bool>, Stuck> {
    let limit = q.min(cap as u64);
    let mut y = a;
    for i in 1..=limit {
        y = assign.evaluate(w, y)?;
        if y == a {
            return Ok(Some(q % i != 0));
        }
    }
    Ok((q <= cap as u64).then_some(true))
}

fn find_moved(
    w: &Word,
    assign: &GeneratorAssignment,
    window: Window,
    q: u64,
    cap: usize,
    hints: &[i64],
    search: Window,
) -> Result<Option<i64>, Stuck> {
    let outside = rule_points(search).filter(|a| !window.contains(*a));
    for a in hints.iter().copied().filter(|a| !window.contains(*a)).chain(outside) {
        if moved_by_power(w, assign, a, q, cap)? == Some(true) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// The window-fixing power of `w` and a point beyond the window it moves.
/// `hints` are tried first, then `search` in rule order.
pub fn check_nondiscrete(
    w: &Word,
    assign: &GeneratorAssignment,
    window: Window,
    cap: usize,
    hints: &[i64],
    search: Window,
) -> Result<Nondiscrete, PermutationError> {
    let q = window_fixing_power(w, assign, window, cap)?;
    Ok(match find_moved(w, assign, window, q, cap, hints, search)? {
        Some(moved) => Nondiscrete::Witnessed { q, moved },
        None => Nondiscrete::Degenerate { q },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairNondiscrete {
    pub q: u64,
    pub moved: [Option<i64>; 2],
}

/// A common power fixing the window under both words, with a moved point
/// for each where one is found.
pub fn check_nondiscrete_pair(
    words: [&Word; 2],
    assign: &GeneratorAssignment,
    window: Window,
    cap: usize,
    hints: &[i64],
    search: Window,
) -> Result<PairNondiscrete, PermutationError> {
    let q0 = window_fixing_power(words[0], assign, window, cap)?;
    let q1 = window_fixing_power(words[1], assign, window, cap)?;
    let q = num_integer::lcm(q0, q1);
    let moved = [
        find_moved(words[0], assign, window, q, cap, hints, search)?,
        find_moved(words[1], assign, window, q, cap, hints, search)?,
    ];
    Ok(PairNondiscrete { q, moved })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EmbeddingStatus {
    Certified { point: i64 },
    RelatorEquivalent,
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingItem {
    pub word: Word,
    pub image: Word,
    #[serde(flatten)]
    pub status: EmbeddingStatus,
}

/// Classifies each sample word by its image: symbolically trivial, or
/// moving a point of the window or of `hints`, or neither.
pub fn check_embedding(
    hom: &SurfaceHom,
    assign: &GeneratorAssignment,
    sample: &[Word],
    window: Window,
    hints: &[i64],
) -> Result<Vec<EmbeddingItem>, Stuck> {
    let mut out = Vec::with_capacity(sample.len());
    for g in sample {
        let image = hom.apply(g);
        let status = if image.is_empty() {
            EmbeddingStatus::RelatorEquivalent
        } else {
            let mut status = EmbeddingStatus::Unverified;
            for a in rule_points(window).chain(hints.iter().copied()) {
                if assign.evaluate(&image, a)? != a {
                    status = EmbeddingStatus::Certified { point: a };
                    break;
                }
            }
            status
        };
        out.push(EmbeddingItem {
            word: g.clone(),
            image,
            status,
        });
    }
    Ok(out)
}

/// First window point moved by the unreduced relator image, if any.
pub fn relator_moves(hom: &SurfaceHom, assign: &GeneratorAssignment, window: Window) -> Result<Option<i64>, Stuck> {
    let raw = hom.apply_raw(hom.surface().relator());
    for a in window.points() {
        if evaluate(&raw, assign, a)? != a {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Default sample for [`check_embedding`]: every generator, the relator,
/// and `b1 a1⁻¹` (even) or `b b'⁻¹` (odd).
pub fn default_sample(hom: &SurfaceHom) -> Vec<Word> {
    let surface = hom.surface();
    let mut sample: Vec<Word> = surface
        .presentation()
        .generators
        .iter()
        .map(Word::generator)
        .collect();
    sample.push(surface.relator().clone());
    let extra = match hom.parity {
        crate::surface::Parity::Even => "b1 ~a1",
        crate::surface::Parity::Odd => "b ~b'",
    };
    sample.push(extra.parse().expect("fixed sample word"));
    sample
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayFailure {
    pub index: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignatedReport {
    pub word: Word,
    pub all_finite: bool,
    pub max_orbit: Option<usize>,
    pub nondiscrete: Option<Nondiscrete>,
    pub error: Option<String>,
}

/// Every check at the budget recorded in a spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub witnesses: usize,
    pub replay_failures: Vec<ReplayFailure>,
    pub freeness: FreenessReport,
    pub transitivity: Vec<TransitivityReport>,
    pub designated: Vec<DesignatedReport>,
    pub relator_symbolic_empty: bool,
    pub relator_moved_point: Option<i64>,
    pub route_mismatches: Vec<Generator>,
    pub embedding: Vec<EmbeddingItem>,
}

impl VerifyReport {
    /// True iff every logged witness replays.
    pub fn replay_ok(&self) -> bool {
        self.replay_failures.is_empty()
    }

    /// True iff no check raised a flag.
    pub fn clean(&self) -> bool {
        self.replay_ok()
            && self.freeness.flagged.is_empty()
            && self.transitivity.iter().all(|t| t.unrealized.is_empty())
            && self
                .designated
                .iter()
                .all(|d| d.all_finite && matches!(d.nondiscrete, Some(Nondiscrete::Witnessed { .. })))
            && self.relator_symbolic_empty
            && self.relator_moved_point.is_none()
            && self.route_mismatches.is_empty()
    }
}

/// Word length used for the transitivity search besides logged witnesses.
pub const TRANSITIVITY_WORD_CAP: usize = 2;
/// Radius of the numeric relator check.
pub const RELATOR_WINDOW: u32 = 50;

pub fn verify_spec(spec: &EmbeddingSpec) -> Result<VerifyReport, crate::engine::EngineError> {
    let stuck = |e: Stuck| crate::engine::EngineError::Inconsistent(e.to_string());
    let assign = &spec.assignment;
    let budget = &spec.budget;
    let replay_failures = spec
        .log
        .replay(assign)
        .into_iter()
        .map(|(index, e)| ReplayFailure {
            index,
            error: e.to_string(),
        })
        .collect();
    let extent = table_extent(assign) + budget.word_len as i64 + 1;
    let search = Window::new(u32::try_from(extent).unwrap_or(u32::MAX));
    let freeness = check_freeness(assign, budget.word_len, search).map_err(stuck)?;
    let logged: Vec<Word> = spec.log.witnesses().map(|w| w.word().clone()).collect::<HashSet<_>>().into_iter().collect();
    let mut logged = logged;
    logged.sort_by_key(|w| w.to_string());
    let transitivity = (1..=budget.tuple_max)
        .map(|k| check_transitivity(assign, k, budget.window, TRANSITIVITY_WORD_CAP, &logged))
        .collect::<Result<Vec<_>, _>>()
        .map_err(stuck)?;
    let hints: Vec<i64> = spec.log.witnesses().flat_map(|w| w.points()).collect();
    let mut designated = Vec::new();
    for w in &budget.designated {
        let orbits = crate::permutation::orbit_structure(w, assign, budget.window, DEFAULT_ORBIT_CAP)
            .map_err(stuck)?;
        let nd = check_nondiscrete(w, assign, budget.window, DEFAULT_ORBIT_CAP, &hints, search);
        designated.push(DesignatedReport {
            word: w.clone(),
            all_finite: orbits.all_finite(),
            max_orbit: orbits.max_length(),
            nondiscrete: nd.as_ref().ok().copied(),
            error: nd.err().map(|e| e.to_string()),
        });
    }
    let hom = &spec.homomorphism;
    let embedding = check_embedding(hom, assign, &default_sample(hom), budget.window, &hints).map_err(stuck)?;
    Ok(VerifyReport {
        witnesses: spec.log.len(),
        replay_failures,
        freeness,
        transitivity,
        designated,
        relator_symbolic_empty: hom.relator_image().is_empty(),
        relator_moved_point: relator_moves(hom, assign, Window::new(RELATOR_WINDOW)).map_err(stuck)?,
        route_mismatches: hom.route_mismatches()?,
        embedding,
    })
}
