use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{PermutationError, Window};
use crate::words::{GeneratorAssignment, Stuck, Word};

/// Iteration cap used when none is given.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// First window point from which the orbit was explored.
    pub representative: i64,
    pub length: usize,
}

/// Closed orbits meeting a window, plus the window points whose orbit did
/// not close within the cap.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub orbits: Vec<Orbit>,
    pub truncated: Vec<i64>,
}

impl OrbitReport {
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.length).collect()
    }

    pub fn all_finite(&self) -> bool {
        self.truncated.is_empty()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.orbits.iter().map(|o| o.length).max()
    }
}

/// Orbit structure of the cyclic group generated by `step` on the window.
pub fn orbit_structure_by<E>(
    mut step: impl FnMut(i64) -> Result<i64, E>,
    win: Window,
    cap: usize,
) -> Result<OrbitReport, E> {
    let mut report = OrbitReport::default();
    let mut closed: HashSet<i64> = HashSet::new();
    for a in win.points() {
        if closed.contains(&a) {
            continue;
        }
        let mut members = vec![a];
        let mut x = step(a)?;
        while x != a && members.len() < cap {
            members.push(x);
            x = step(x)?;
        }
        if x == a {
            report.orbits.push(Orbit {
                representative: a,
                length: members.len(),
            });
            closed.extend(members);
        } else {
            report.truncated.push(a);
        }
    }
    Ok(report)
}

/// Orbit structure of `⟨w⟩` under a total assignment.
pub fn orbit_structure(
    w: &Word,
    assign: &GeneratorAssignment,
    win: Window,
    cap: usize,
) -> Result<OrbitReport, Stuck> {
    orbit_structure_by(|a| assign.evaluate(w, a), win, cap)
}

/// Least common multiple of the orbit lengths meeting the window, so that
/// the `m`-th power fixes the window pointwise.
pub fn window_fixing_power_by<E>(
    step: impl FnMut(i64) -> Result<i64, E>,
    win: Window,
    cap: usize,
) -> Result<u64, PermutationError>
where
    PermutationError: From<E>,
{
    let report = orbit_structure_by(step, win, cap)?;
    if let Some(&point) = report.truncated.first() {
        return Err(PermutationError::OrbitExceedsCap { point, cap });
    }
    report.orbits.iter().try_fold(1u64, |acc, o| {
        let len = o.length as u64;
        (acc / acc.gcd(&len))
            .checked_mul(len)
            .ok_or(PermutationError::PowerOverflow)
    })
}

pub fn window_fixing_power(
    w: &Word,
    assign: &GeneratorAssignment,
    win: Window,
    cap: usize,
) -> Result<u64, PermutationError> {
    window_fixing_power_by(|a| assign.evaluate(w, a), win, cap)
}
