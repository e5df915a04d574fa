use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ConstructionBudget, EngineError};
use crate::surface::{Parity, Surface};
use crate::words::{reduce, Generator, GeneratorAssignment, Letter, Word};

/// Symbol standing for `γ` in compact image words.
pub const GAMMA: &str = "gamma";

/// Which assignment generator plays each free generator `phi1, phi1', …`
/// (and `tau` for odd genus) of the folding target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeBasis {
    pub parity: Parity,
    pub rank: u32,
    pub images: BTreeMap<Generator, Generator>,
}

fn phi_names(parity: Parity, rank: u32) -> Vec<Generator> {
    let mut out: Vec<Generator> = (1..=rank)
        .flat_map(|i| [Generator::new(format!("phi{i}")), Generator::new(format!("phi{i}'"))])
        .collect();
    if parity == Parity::Odd {
        out.push(Generator::new("tau"));
    }
    out
}

impl FreeBasis {
    /// Binds `phi1, phi1', …, phir, phir'` (then `tau` for odd genus) to
    /// `gens` in order.
    pub fn new(parity: Parity, rank: u32, gens: Vec<Generator>) -> Result<Self, EngineError> {
        let names = phi_names(parity, rank);
        let mut sorted = gens.clone();
        sorted.sort();
        sorted.dedup();
        if rank == 0 || gens.len() != names.len() || sorted.len() != gens.len() {
            return Err(EngineError::InvalidBudget(format!(
                "a rank {rank} basis needs {} distinct generators",
                names.len()
            )));
        }
        Ok(Self {
            parity,
            rank,
            images: names.into_iter().zip(gens).collect(),
        })
    }

    /// `sigma, tau1, tau2, …` in order, so that the last free generator
    /// plays `tau` for odd genus.
    pub fn standard(genus: u32) -> Result<Self, EngineError> {
        let surface = Surface::new(genus)?;
        let count = phi_names(surface.parity(), surface.rank()).len();
        let gens = std::iter::once(ConstructionBudget::sigma())
            .chain((1..count).map(|i| Generator::new(format!("tau{i}"))))
            .collect();
        Self::new(surface.parity(), surface.rank(), gens)
    }

    pub fn genus(&self) -> u32 {
        match self.parity {
            Parity::Even => 2 * self.rank,
            Parity::Odd => 2 * self.rank + 1,
        }
    }

    fn get(&self, name: &str) -> Word {
        Word::generator(&self.images[&Generator::new(name)])
    }

    pub fn phi(&self, i: u32) -> Word {
        self.get(&format!("phi{i}"))
    }

    pub fn phi_prime(&self, i: u32) -> Word {
        self.get(&format!("phi{i}'"))
    }

    /// The assignment generator playing `tau` (odd genus only).
    pub fn tau(&self) -> Option<Word> {
        (self.parity == Parity::Odd).then(|| self.get("tau"))
    }

    /// `γ = [φ1,φ1']⋯[φr,φr']`, times `τ` for odd genus.
    pub fn gamma(&self) -> Word {
        let mut g = (1..=self.rank).fold(Word::identity(), |acc, i| {
            &acc * &Word::commutator(&self.phi(i), &self.phi_prime(i))
        });
        if let Some(t) = self.tau() {
            g = &g * &t;
        }
        g
    }

    /// Words whose cyclic groups must be non-discrete: `γ`, and `τ` first
    /// for odd genus.
    pub fn designated(&self) -> Vec<Word> {
        self.tau().into_iter().chain([self.gamma()]).collect()
    }

    /// Number of `tauN` generators the basis refers to.
    pub fn n_free(&self) -> usize {
        self.images
            .values()
            .filter_map(|g| g.name().strip_prefix("tau")?.parse::<usize>().ok())
            .max()
            .unwrap_or(0)
    }

    /// Rewrites a word over the `phi` alphabet into the assignment alphabet.
    pub fn substitute(&self, w: &Word) -> Word {
        Word::from_letters(w.letters().iter().map(|l| {
            let g = self.images.get(&l.generator).cloned().unwrap_or_else(|| l.generator.clone());
            Letter::new(g, l.inverse)
        }))
    }
}

/// A homomorphism from the surface group into the group generated by a
/// finalized assignment. Images are stored with `gamma` as a symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceHom {
    pub parity: Parity,
    pub rank: u32,
    pub power: u32,
    pub basis: FreeBasis,
    pub gamma: Word,
    pub images: BTreeMap<Generator, Word>,
}

impl SurfaceHom {
    pub fn genus(&self) -> u32 {
        self.basis.genus()
    }

    pub fn surface(&self) -> Surface {
        Surface::new(self.genus()).expect("basis genus is at least 2")
    }

    /// Replaces `gamma` by its definition, without reducing.
    fn expand_raw(&self, w: &Word) -> Vec<Letter> {
        let gamma = Generator::new(GAMMA);
        w.substitute_raw::<std::convert::Infallible>(|g| {
            Ok(if *g == gamma {
                self.gamma.clone()
            } else {
                Word::generator(g)
            })
        })
        .unwrap_or_else(|never| match never {})
    }

    /// Reduced image of a generator over the assignment alphabet.
    pub fn image(&self, g: &Generator) -> Option<Word> {
        self.images.get(g).map(|w| reduce(self.expand_raw(w)))
    }

    /// Image of a surface word, fully substituted but not reduced. Numeric
    /// evaluation of this sequence is a check independent of free reduction.
    pub fn apply_raw(&self, w: &Word) -> Vec<Letter> {
        let mut out = Vec::new();
        for l in w.letters() {
            let img = self.images.get(&l.generator).cloned().unwrap_or_else(|| Word::generator(&l.generator));
            let img = if l.inverse { img.inverse() } else { img };
            out.extend(self.expand_raw(&img));
        }
        out
    }

    pub fn apply(&self, w: &Word) -> Word {
        reduce(self.apply_raw(w))
    }

    pub fn relator_image(&self) -> Word {
        self.apply(self.surface().relator())
    }

    /// Generators whose image differs from the one obtained through the
    /// twist-and-fold sequence `k∘tⁿ` rewritten in the assignment alphabet.
    pub fn route_mismatches(&self) -> Result<Vec<Generator>, EngineError> {
        let surface = self.surface();
        let seq = surface.sequence(self.power)?;
        Ok(surface
            .presentation()
            .generators
            .iter()
            .filter(|g| {
                let via_route = self.basis.substitute(&seq.apply_map(&Word::generator(g)));
                self.image(g) != Some(via_route)
            })
            .cloned()
            .collect())
    }
}

fn check_assignment(assign: &GeneratorAssignment, basis: &FreeBasis, n: u32) -> Result<(), EngineError> {
    if n == 0 {
        return Err(EngineError::InvalidBudget("power must be at least 1".into()));
    }
    match basis.images.values().find(|g| !assign.contains(g)) {
        Some(g) => Err(EngineError::InvalidRank(g.clone())),
        None => Ok(()),
    }
}

fn finish(basis: &FreeBasis, n: u32, images: BTreeMap<Generator, Word>) -> Result<SurfaceHom, EngineError> {
    let hom = SurfaceHom {
        parity: basis.parity,
        rank: basis.rank,
        power: n,
        basis: basis.clone(),
        gamma: basis.gamma(),
        images,
    };
    let image = hom.relator_image();
    if !image.is_empty() {
        return Err(EngineError::Inconsistent(format!("relator maps to {image}")));
    }
    Ok(hom)
}

fn conj_by_gamma(n: u32, w: &Word) -> Word {
    let g = Word::generator(&Generator::new(GAMMA)).pow(i64::from(n));
    &(&g * w) * &g.inverse()
}

/// `ai ↦ φi`, `ai' ↦ φi'`, `bi ↦ γⁿφiγ⁻ⁿ`, `bi' ↦ γⁿφi'γ⁻ⁿ`.
pub fn surface_hom_even(assign: &GeneratorAssignment, basis: &FreeBasis, n: u32) -> Result<SurfaceHom, EngineError> {
    if basis.parity != Parity::Even {
        return Err(EngineError::InvalidBudget("basis is for odd genus".into()));
    }
    check_assignment(assign, basis, n)?;
    let mut images = BTreeMap::new();
    for i in 1..=basis.rank {
        images.insert(Generator::new(format!("a{i}")), basis.phi(i));
        images.insert(Generator::new(format!("a{i}'")), basis.phi_prime(i));
        images.insert(Generator::new(format!("b{i}")), conj_by_gamma(n, &basis.phi(i)));
        images.insert(Generator::new(format!("b{i}'")), conj_by_gamma(n, &basis.phi_prime(i)));
    }
    finish(basis, n, images)
}

/// `ai ↦ φi`, `ai' ↦ φi'`, `b ↦ γⁿτ⁻ⁿ`, `b' ↦ τ`, `ci ↦ γⁿφiγ⁻ⁿ`,
/// `ci' ↦ γⁿφi'γ⁻ⁿ`.
pub fn surface_hom_odd(assign: &GeneratorAssignment, basis: &FreeBasis, n: u32) -> Result<SurfaceHom, EngineError> {
    let tau = basis
        .tau()
        .ok_or_else(|| EngineError::InvalidBudget("basis is for even genus".into()))?;
    check_assignment(assign, basis, n)?;
    let mut images = BTreeMap::new();
    for i in 1..=basis.rank {
        images.insert(Generator::new(format!("a{i}")), basis.phi(i));
        images.insert(Generator::new(format!("a{i}'")), basis.phi_prime(i));
        images.insert(Generator::new(format!("c{i}")), conj_by_gamma(n, &basis.phi(i)));
        images.insert(Generator::new(format!("c{i}'")), conj_by_gamma(n, &basis.phi_prime(i)));
    }
    let gn = Word::generator(&Generator::new(GAMMA)).pow(i64::from(n));
    images.insert(Generator::new("b"), &gn * &tau.pow(-i64::from(n)));
    images.insert(Generator::new("b'"), tau);
    finish(basis, n, images)
}

pub fn surface_hom(assign: &GeneratorAssignment, basis: &FreeBasis, n: u32) -> Result<SurfaceHom, EngineError> {
    match basis.parity {
        Parity::Even => surface_hom_even(assign, basis, n),
        Parity::Odd => surface_hom_odd(assign, basis, n),
    }
}
