use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{runs, Generator, Letter};
use crate::permutation::FinPerm;

/// Something that moves integers one letter at a time (right action).
pub trait Action {
    /// Image of `point` under `letter`, or `None` if it is not determined.
    fn step(&self, letter: &Letter, point: i64) -> Option<i64>;

    /// Image under `count` consecutive copies of `letter`.
    fn step_run(&self, letter: &Letter, count: usize, point: i64) -> Option<i64> {
        (0..count).try_fold(point, |x, _| self.step(letter, x))
    }
}

/// Evaluation could not advance: `letter` (1-based `position`) is not
/// determined at `point`. `reached` holds the trace up to that point.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("undefined at letter {position} ({letter:?}) applied to {point}")]
pub struct Stuck {
    pub position: usize,
    pub letter: Letter,
    pub point: i64,
    pub reached: Vec<i64>,
}

/// The ordered images `a, a^{w₁}, a^{w₁w₂}, …, a^w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub points: Vec<i64>,
}

impl Trace {
    pub fn start(&self) -> i64 {
        self.points[0]
    }

    pub fn end(&self) -> i64 {
        *self.points.last().expect("trace is never empty")
    }
}

/// `a^w`, applying letters left to right.
pub fn evaluate<A: Action + ?Sized>(letters: &[Letter], action: &A, a: i64) -> Result<i64, Stuck> {
    let mut x = a;
    let mut position = 0;
    for (letter, n) in runs(letters) {
        match action.step_run(letter, n, x) {
            Some(y) => x = y,
            None => {
                // locate the exact letter inside the run
                let t = trace(letters, action, a).expect_err("run evaluation failed");
                debug_assert!(t.position > position);
                return Err(t);
            }
        }
        position += n;
    }
    Ok(x)
}

pub fn trace<A: Action + ?Sized>(letters: &[Letter], action: &A, a: i64) -> Result<Trace, Stuck> {
    let mut points = Vec::with_capacity(letters.len() + 1);
    points.push(a);
    let mut x = a;
    for (i, letter) in letters.iter().enumerate() {
        match action.step(letter, x) {
            Some(y) => {
                x = y;
                points.push(y);
            }
            None => {
                return Err(Stuck {
                    position: i + 1,
                    letter: letter.clone(),
                    point: x,
                    reached: points,
                })
            }
        }
    }
    Ok(Trace { points })
}

/// Total permutations attached to generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorAssignment(BTreeMap<Generator, FinPerm>);

impl GeneratorAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, g: Generator, p: FinPerm) -> Option<FinPerm> {
        self.0.insert(g, p)
    }

    pub fn get(&self, g: &Generator) -> Option<&FinPerm> {
        self.0.get(g)
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.0.contains_key(g)
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &FinPerm)> {
        self.0.iter()
    }

    pub fn evaluate(&self, letters: &[Letter], a: i64) -> Result<i64, Stuck> {
        evaluate(letters, self, a)
    }

    pub fn trace(&self, letters: &[Letter], a: i64) -> Result<Trace, Stuck> {
        trace(letters, self, a)
    }
}

impl FromIterator<(Generator, FinPerm)> for GeneratorAssignment {
    fn from_iter<I: IntoIterator<Item = (Generator, FinPerm)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Action for GeneratorAssignment {
    fn step(&self, letter: &Letter, point: i64) -> Option<i64> {
        let p = self.0.get(&letter.generator)?;
        Some(if letter.inverse {
            p.apply_inverse(point)
        } else {
            p.apply(point)
        })
    }

    fn step_run(&self, letter: &Letter, count: usize, point: i64) -> Option<i64> {
        let p = self.0.get(&letter.generator)?;
        Some(p.apply_repeated(point, count, letter.inverse))
    }
}
