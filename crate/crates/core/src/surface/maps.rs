use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Presentation, SurfaceError};
use crate::words::{reduce, Generator, Word};

/// A homomorphism given by generator images. Construction checks that every
/// source relator maps to the identity of the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupMap {
    source: Presentation,
    target: Presentation,
    images: BTreeMap<Generator, Word>,
}

impl GroupMap {
    pub fn new(
        source: Presentation,
        target: Presentation,
        images: BTreeMap<Generator, Word>,
    ) -> Result<Self, SurfaceError> {
        for g in &source.generators {
            let img = images
                .get(g)
                .ok_or_else(|| SurfaceError::MissingImage(g.clone()))?;
            target.check_word(img)?;
        }
        if let Some(extra) = images.keys().find(|g| !source.contains(g)) {
            return Err(SurfaceError::UnknownGenerator(extra.clone()));
        }
        let map = Self {
            source,
            target,
            images,
        };
        for r in &map.source.relators {
            let image = map.apply_map(r);
            if !map.target.is_trivial(&image) {
                return Err(SurfaceError::RelatorSurvives {
                    relator: r.clone(),
                    image,
                });
            }
        }
        Ok(map)
    }

    pub fn identity(p: &Presentation) -> Self {
        let images = p
            .generators
            .iter()
            .map(|g| (g.clone(), Word::generator(g)))
            .collect();
        Self {
            source: p.clone(),
            target: p.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn image(&self, g: &Generator) -> Option<&Word> {
        self.images.get(g)
    }

    pub fn images(&self) -> &BTreeMap<Generator, Word> {
        &self.images
    }

    /// Substitutes images for letters and reduces. Letters outside the
    /// source alphabet are kept as they are.
    pub fn apply_map(&self, w: &Word) -> Word {
        let raw = w
            .substitute_raw::<std::convert::Infallible>(|g| {
                Ok(self.images.get(g).cloned().unwrap_or_else(|| Word::generator(g)))
            })
            .unwrap_or_else(|never| match never {});
        reduce(raw)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &GroupMap) -> Result<GroupMap, SurfaceError> {
        if inner.target.generators != self.source.generators {
            return Err(SurfaceError::Incompatible);
        }
        let images = inner
            .images
            .iter()
            .map(|(g, w)| (g.clone(), self.apply_map(w)))
            .collect();
        GroupMap::new(inner.source.clone(), self.target.clone(), images)
    }

    /// `self^n` by repeated composition; `n = 0` gives the identity.
    pub fn power(&self, n: u32) -> Result<GroupMap, SurfaceError> {
        if self.source != self.target {
            return Err(SurfaceError::NotEndomorphism);
        }
        let mut acc = GroupMap::identity(&self.source);
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }
}
