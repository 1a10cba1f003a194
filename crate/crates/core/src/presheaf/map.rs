use crate::error::{ensure, Result};
use crate::site::Site;

use super::Presheaf;

/// A morphism of truncated presheaves, stored as its levelwise functions.
/// The source and target are not owned; [`PresheafMap::check`] verifies the
/// map against a given pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresheafMap {
    components: Vec<Vec<usize>>,
}

impl PresheafMap {
    pub fn new(components: Vec<Vec<usize>>) -> Self {
        PresheafMap { components }
    }

    pub fn identity<S: Site>(x: &Presheaf<S>) -> Self {
        PresheafMap {
            components: x.counts().iter().map(|&c| (0..c).collect()).collect(),
        }
    }

    /// The unique map out of an empty presheaf truncated at `trunc`.
    pub fn from_empty(trunc: usize) -> Self {
        PresheafMap {
            components: vec![Vec::new(); trunc + 1],
        }
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, n: usize) -> &[usize] {
        &self.components[n]
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.components[n][x]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &PresheafMap) -> PresheafMap {
        PresheafMap {
            components: f
                .components
                .iter()
                .zip(&self.components)
                .map(|(fc, gc)| fc.iter().map(|&x| gc[x]).collect())
                .collect(),
        }
    }

    /// Checks shapes and naturality with respect to every generator.
    pub fn check<S: Site>(&self, src: &Presheaf<S>, tgt: &Presheaf<S>) -> Result<()> {
        ensure!(
            src.site() == tgt.site(),
            Validation,
            "maps must stay within one site"
        );
        ensure!(
            self.components.len() == src.trunc() + 1 && src.trunc() <= tgt.trunc(),
            Validation,
            "map has {} components for truncations {} and {}",
            self.components.len(),
            src.trunc(),
            tgt.trunc()
        );
        for (n, comp) in self.components.iter().enumerate() {
            ensure!(
                comp.len() == src.count(n) && comp.iter().all(|&y| y < tgt.count(n)),
                Validation,
                "component {n} has the wrong shape"
            );
        }
        for &g in src.generators() {
            let (a, b) = (g.src, g.tgt());
            for x in 0..src.count(b) {
                ensure!(
                    self.components[a][src.act(g, x)] == tgt.act(g, self.components[b][x]),
                    Validation,
                    "map is not natural for {g} at cell {}",
                    src.label(b, x)
                );
            }
        }
        Ok(())
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|c| {
            let mut seen = std::collections::HashSet::new();
            c.iter().all(|y| seen.insert(*y))
        })
    }

    /// Levelwise bijectivity onto a target with the given counts.
    pub fn is_iso_onto(&self, tgt_counts: &[usize]) -> bool {
        self.is_mono()
            && self
                .components
                .iter()
                .zip(tgt_counts)
                .all(|(c, &n)| c.len() == n)
    }

    /// The levelwise inverse of a bijective map.
    pub fn inverse(&self) -> Option<PresheafMap> {
        let mut comps = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let mut inv = vec![usize::MAX; c.len()];
            for (x, &y) in c.iter().enumerate() {
                if y >= inv.len() || inv[y] != usize::MAX {
                    return None;
                }
                inv[y] = x;
            }
            comps.push(inv);
        }
        Some(PresheafMap { components: comps })
    }
}
