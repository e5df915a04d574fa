use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{gens, GroupMap, Presentation, SurfaceError};
use crate::words::{Generator, Word};

fn gw(name: String) -> Word {
    Word::generator(&Generator::new(name))
}

fn comm(u: String, v: String) -> Word {
    Word::commutator(&gw(u), &gw(v))
}

fn product(words: impl IntoIterator<Item = Word>) -> Word {
    words.into_iter().fold(Word::identity(), |acc, w| &acc * &w)
}

fn check_rank(r: u32) -> Result<(), SurfaceError> {
    if r == 0 {
        Err(SurfaceError::ZeroRank)
    } else {
        Ok(())
    }
}

/// `[a1,a1']⋯[ar,ar']`.
fn a_prefix(r: u32) -> Word {
    product((1..=r).map(|i| comm(format!("a{i}"), format!("a{i}'"))))
}

fn pairs(prefix: &str, r: u32) -> impl Iterator<Item = String> + '_ {
    (1..=r).flat_map(move |i| [format!("{prefix}{i}"), format!("{prefix}{i}'")])
}

/// Genus `2r`: generators `a1, a1', …, b1, b1', …` and relator
/// `[a1,a1']⋯[ar,ar'][br',br]⋯[b1',b1]`.
pub fn presentation_even(r: u32) -> Result<Presentation, SurfaceError> {
    check_rank(r)?;
    let generators = gens(pairs("a", r).chain(pairs("b", r)));
    let tail = product((1..=r).rev().map(|i| comm(format!("b{i}'"), format!("b{i}"))));
    Ok(Presentation::one_relator(generators, &a_prefix(r) * &tail))
}

/// Genus `2r + 1`: generators `a1, a1', …, b, b', c1, c1', …` and relator
/// `[a1,a1']⋯[ar,ar'][b',b][cr',cr]⋯[c1',c1]`.
///
/// The `c` commutators run from `r` down to 1, mirroring the even case. In
/// this order the folding map kills the relator for every `r`.
pub fn presentation_odd(r: u32) -> Result<Presentation, SurfaceError> {
    check_rank(r)?;
    let generators = gens(
        pairs("a", r)
            .chain(["b".to_string(), "b'".to_string()])
            .chain(pairs("c", r)),
    );
    let middle = comm("b'".into(), "b".into());
    let tail = product((1..=r).rev().map(|i| comm(format!("c{i}'"), format!("c{i}"))));
    Ok(Presentation::one_relator(
        generators,
        &(&a_prefix(r) * &middle) * &tail,
    ))
}

fn conj(x: &Word, g: String) -> Word {
    &(x * &gw(g)) * &x.inverse()
}

/// The twist `h` around `x = [a1,a1']⋯[ar,ar']`: fixes the `a`s and
/// conjugates the `b`s by `x`.
pub fn dehn_twist_even(r: u32) -> Result<GroupMap, SurfaceError> {
    let p = presentation_even(r)?;
    let x = a_prefix(r);
    let mut images = BTreeMap::new();
    for name in pairs("a", r) {
        images.insert(Generator::new(&name), gw(name));
    }
    for name in pairs("b", r) {
        images.insert(Generator::new(&name), conj(&x, name));
    }
    GroupMap::new(p.clone(), p, images)
}

/// The twists `(δ, ζ)` around `x = [a1,a1']⋯[ar,ar']b'` and around `b'`.
pub fn twists_odd(r: u32) -> Result<(GroupMap, GroupMap), SurfaceError> {
    let p = presentation_odd(r)?;
    let x = &a_prefix(r) * &gw("b'".into());
    let mut delta = BTreeMap::new();
    let mut zeta = BTreeMap::new();
    for name in pairs("a", r).chain(["b'".to_string()]) {
        delta.insert(Generator::new(&name), gw(name.clone()));
        zeta.insert(Generator::new(&name), gw(name));
    }
    delta.insert(Generator::new("b"), &x * &gw("b".into()));
    zeta.insert(Generator::new("b"), &gw("b".into()) * &gw("b'".into()).inverse());
    for name in pairs("c", r) {
        delta.insert(Generator::new(&name), conj(&x, name.clone()));
        zeta.insert(Generator::new(&name), gw(name));
    }
    Ok((
        GroupMap::new(p.clone(), p.clone(), delta)?,
        GroupMap::new(p.clone(), p, zeta)?,
    ))
}

fn phis(r: u32) -> impl Iterator<Item = String> {
    pairs("phi", r).collect::<Vec<_>>().into_iter()
}

/// Folding `k` onto the free group on `phi1, phi1', …`: `ai, bi ↦ phii`
/// and `ai', bi' ↦ phii'`.
pub fn folding_even(r: u32) -> Result<GroupMap, SurfaceError> {
    let p = presentation_even(r)?;
    let target = Presentation::free(gens(phis(r)));
    let mut images = BTreeMap::new();
    for i in 1..=r {
        for src in ["a", "b"] {
            images.insert(Generator::new(format!("{src}{i}")), gw(format!("phi{i}")));
            images.insert(Generator::new(format!("{src}{i}'")), gw(format!("phi{i}'")));
        }
    }
    GroupMap::new(p, target, images)
}

/// Folding `k` onto the free group on `phi1, phi1', …, tau`: `b ↦ 1`,
/// `b' ↦ tau`, and `ai, ci ↦ phii`, `ai', ci' ↦ phii'`.
pub fn folding_odd(r: u32) -> Result<GroupMap, SurfaceError> {
    let p = presentation_odd(r)?;
    let target = Presentation::free(gens(phis(r).chain(["tau".to_string()])));
    let mut images = BTreeMap::new();
    for i in 1..=r {
        for src in ["a", "c"] {
            images.insert(Generator::new(format!("{src}{i}")), gw(format!("phi{i}")));
            images.insert(Generator::new(format!("{src}{i}'")), gw(format!("phi{i}'")));
        }
    }
    images.insert(Generator::new("b"), Word::identity());
    images.insert(Generator::new("b'"), gw("tau".into()));
    GroupMap::new(p, target, images)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// A closed orientable surface of genus at least 2 together with its
/// folding map `k` and twist `t` (`h` for even genus, `δ∘ζ` for odd), so
/// that the `n`-th map of the sequence is `k∘tⁿ`.
#[derive(Debug, Clone)]
pub struct Surface {
    genus: u32,
    presentation: Presentation,
    folding: GroupMap,
    twist: GroupMap,
}

impl Surface {
    pub fn new(genus: u32) -> Result<Self, SurfaceError> {
        if genus < 2 {
            return Err(SurfaceError::GenusTooSmall(genus));
        }
        let r = genus / 2;
        let (presentation, folding, twist) = if genus % 2 == 0 {
            (presentation_even(r)?, folding_even(r)?, dehn_twist_even(r)?)
        } else {
            let (delta, zeta) = twists_odd(r)?;
            (presentation_odd(r)?, folding_odd(r)?, delta.compose(&zeta)?)
        };
        Ok(Self {
            genus,
            presentation,
            folding,
            twist,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn rank(&self) -> u32 {
        self.genus / 2
    }

    pub fn parity(&self) -> Parity {
        if self.genus % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn relator(&self) -> &Word {
        self.presentation.relator().expect("surface presentations have a relator")
    }

    pub fn folding(&self) -> &GroupMap {
        &self.folding
    }

    pub fn twist(&self) -> &GroupMap {
        &self.twist
    }

    /// The curve word `x` of the twist.
    pub fn curve(&self) -> Word {
        match self.parity() {
            Parity::Even => a_prefix(self.rank()),
            Parity::Odd => &a_prefix(self.rank()) * &gw("b'".into()),
        }
    }

    /// `k∘tⁿ` as a map, built by composition.
    pub fn sequence(&self, n: u32) -> Result<GroupMap, SurfaceError> {
        self.folding.compose(&self.twist.power(n)?)
    }

    /// Images of `g` under `k∘tⁿ` for `n = 0..=n_max`, by repeated
    /// substitution.
    pub fn sequence_images(&self, g: &Word, n_max: u32) -> Vec<Word> {
        let mut current = g.clone();
        let mut out = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            if n > 0 {
                current = self.twist.apply_map(&current);
            }
            out.push(self.folding.apply_map(&current));
        }
        out
    }

    /// Least `n₀ ≤ n_max` such that the image of `g` is nontrivial for every
    /// `n` in `n₀..=n_max`.
    pub fn faithful_index(&self, g: &Word, n_max: u32) -> Result<Option<u32>, SurfaceError> {
        self.presentation.check_word(g)?;
        let images = self.sequence_images(g, n_max);
        let survivors = images.iter().rev().take_while(|w| !w.is_empty()).count() as u32;
        Ok((survivors > 0).then(|| n_max + 1 - survivors))
    }
}
