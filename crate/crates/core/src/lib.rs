//! Explicit finite approximations of faithful, highly transitive actions of
//! surface groups on ℤ.
//!
//! The crate is layered bottom-up:
//!
//! * [`permutation`]: permutations of ℤ with finite descriptions.
//! * [`words`]: reduced free-group words, evaluation and traces.
//! * [`forcing`]: monotone extension of partial assignments so that a
//!   single requirement (nontriviality, mapping, long orbit, finite orbit)
//!   holds with a replayable witness.
//! * [`surface`]: surface group presentations, Dehn twists, folding maps.
//! * [`engine`]: requirement scheduling, finalization and the surface
//!   group homomorphisms built on top of the constructed free group.
//! * [`verify`]: brute-force re-checks that do not trust the log.

pub mod engine;
pub mod forcing;
pub mod permutation;
pub mod surface;
pub mod verify;
pub mod words;
