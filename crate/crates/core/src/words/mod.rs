//! Free-group words over named generators.
//!
//! A [`Word`] is always freely reduced; raw letter sequences only exist at
//! API boundaries ([`reduce`], [`Word::from_letters`]). Exponents are
//! stored as repeated letters.

mod enumerate;
mod eval;
mod parse;

pub use enumerate::{count_reduced_words, enumerate_reduced_words};
pub use eval::{evaluate, trace, Action, GeneratorAssignment, Stuck, Trace};
pub use parse::ParseWordError;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A generator symbol such as `sigma`, `tau1`, `a1'` or `phi2'`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: impl AsRef<str>) -> Self {
        Self(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        Ok(Generator::new(name))
    }
}

/// A generator or its inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn positive(generator: Generator) -> Self {
        Self::new(generator, false)
    }

    pub fn negative(generator: Generator) -> Self {
        Self::new(generator, true)
    }

    pub fn inverse(&self) -> Letter {
        Letter::new(self.generator.clone(), !self.inverse)
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

/// Free reduction of a raw letter sequence.
pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last().is_some_and(|last| last.cancels(&l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(g: &Generator) -> Self {
        Word(vec![Letter::positive(g.clone())])
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        reduce(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        reduce(self.0.iter().chain(other.0.iter()).cloned())
    }

    /// `self^n`; negative exponents invert.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let (core, conj) = base.cyclic_reduce();
        let mut letters = conj.0.clone();
        for _ in 0..n.unsigned_abs() {
            letters.extend(core.0.iter().cloned());
        }
        letters.extend(conj.inverse().0);
        reduce(letters)
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        reduce(
            u.0.iter()
                .chain(v.0.iter())
                .cloned()
                .chain(u.inverse().0)
                .chain(v.inverse().0),
        )
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let letters = &self.0;
        let mut lo = 0;
        let mut hi = letters.len();
        while hi >= lo + 2 && letters[lo].cancels(&letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        (
            Word(letters[lo..hi].to_vec()),
            Word(letters[..lo].to_vec()),
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) if self.0.len() > 1 => !a.cancels(b),
            _ => true,
        }
    }

    /// True iff the cyclic core uses no generator other than `g`.
    pub fn is_conjugate_power_of(&self, g: &Generator) -> bool {
        self.cyclic_reduce().0.uses_only(g)
    }

    pub fn uses_only(&self, g: &Generator) -> bool {
        self.0.iter().all(|l| &l.generator == g)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.0.iter().map(|l| l.generator.clone()).collect()
    }

    /// Replaces every letter by the image of its generator (inverted for
    /// inverse letters) without reducing.
    pub fn substitute_raw<E>(
        &self,
        mut image: impl FnMut(&Generator) -> Result<Word, E>,
    ) -> Result<Vec<Letter>, E> {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = image(&l.generator)?;
            if l.inverse {
                out.extend(img.inverse().0);
            } else {
                out.extend(img.0);
            }
        }
        Ok(out)
    }

    /// Runs of identical consecutive letters as `(letter, run length)`.
    pub fn runs(&self) -> Vec<(&Letter, usize)> {
        runs(&self.0)
    }
}

pub(crate) fn runs(letters: &[Letter]) -> Vec<(&Letter, usize)> {
    let mut out: Vec<(&Letter, usize)> = Vec::new();
    for l in letters {
        match out.last_mut() {
            Some((prev, n)) if *prev == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

impl std::ops::Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.concat(&rhs)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
