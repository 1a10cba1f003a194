//! Dimension-graded index categories presented by generators.
//!
//! Both the cube categories and the simplex category have objects indexed
//! by natural numbers and are generated by cofaces (raising dimension by one)
//! and degree-lowering maps. A [`Site`] packages what the presheaf machinery
//! needs: the generators, composition of morphisms, finite hom-sets and a
//! factorization of every morphism into generators.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cube::{self, CubeMap, Flavor, Generator};

/// Kind of a generating morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    /// Coface with a sign (simplicial cofaces always use `false`).
    Face(bool),
    /// Codegeneracy.
    Degen,
    /// Connection (cube categories with connections only).
    Conn,
}

/// A generating morphism `src -> tgt` of a site. Presheaves act by it from
/// dimension [`Gen::tgt`] down or up to dimension [`Gen::src`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen {
    pub kind: GenKind,
    pub index: usize,
    pub src: usize,
}

impl Gen {
    pub fn tgt(&self) -> usize {
        match self.kind {
            GenKind::Face(_) => self.src + 1,
            GenKind::Degen | GenKind::Conn => self.src - 1,
        }
    }

    /// Whether the presheaf action raises dimension (a degeneracy-type map).
    pub fn is_degenerating(&self) -> bool {
        !matches!(self.kind, GenKind::Face(_))
    }

    pub fn as_cube_generator(&self) -> Generator {
        match self.kind {
            GenKind::Face(eps) => Generator::Face {
                eps,
                index: self.index,
            },
            GenKind::Degen => Generator::Degen(self.index),
            GenKind::Conn => Generator::Conn(self.index),
        }
    }

    pub fn from_cube_generator(g: Generator, src: usize) -> Gen {
        match g {
            Generator::Face { eps, index } => Gen {
                kind: GenKind::Face(eps),
                index,
                src,
            },
            Generator::Degen(index) => Gen {
                kind: GenKind::Degen,
                index,
                src,
            },
            Generator::Conn(index) => Gen {
                kind: GenKind::Conn,
                index,
                src,
            },
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::Face(eps) => write!(f, "d{}@{}", eps as u8, self.index)?,
            GenKind::Degen => write!(f, "s@{}", self.index)?,
            GenKind::Conn => write!(f, "g@{}", self.index)?,
        }
        write!(f, "[{}]", self.src)
    }
}

/// A finite hom-set together with an index for reverse lookup.
#[derive(Debug)]
pub struct HomSet<M> {
    pub maps: Vec<M>,
    index: HashMap<M, usize>,
}

impl<M: Clone + Eq + Hash> HomSet<M> {
    pub fn new(maps: Vec<M>) -> Self {
        let index = maps
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        HomSet { maps, index }
    }

    pub fn position(&self, m: &M) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

pub trait Site: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Mor: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    /// Short tag used in file formats.
    fn kind(&self) -> &'static str;

    /// All generators with source and target at most `max_dim`, sorted.
    fn generators(&self, max_dim: usize) -> Vec<Gen>;

    fn gen_mor(&self, g: Gen) -> Self::Mor;

    fn mor_src(&self, f: &Self::Mor) -> usize;

    fn mor_tgt(&self, f: &Self::Mor) -> usize;

    fn identity(&self, n: usize) -> Self::Mor;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    /// The hom-set from `m` to `n`, cached.
    fn homs(&self, m: usize, n: usize) -> Arc<HomSet<Self::Mor>>;

    /// A factorization into generators, outermost first.
    fn factor(&self, f: &Self::Mor) -> Vec<Gen>;

    fn describe(&self, f: &Self::Mor) -> String {
        format!("{f:?}")
    }
}

/// A cube category of the given flavor, as an index site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CubeSite {
    pub flavor: Flavor,
}

impl CubeSite {
    pub fn new(flavor: Flavor) -> Self {
        CubeSite { flavor }
    }
}

type CubeCache = Mutex<HashMap<(Flavor, usize, usize), Arc<HomSet<CubeMap>>>>;

fn cube_cache() -> &'static CubeCache {
    static CACHE: OnceLock<CubeCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Site for CubeSite {
    type Mor = CubeMap;

    fn kind(&self) -> &'static str {
        "cubical"
    }

    fn generators(&self, max_dim: usize) -> Vec<Gen> {
        let mut out = Vec::new();
        for src in 0..=max_dim {
            if src < max_dim {
                for index in 0..=src {
                    out.push(Gen {
                        kind: GenKind::Face(false),
                        index,
                        src,
                    });
                    out.push(Gen {
                        kind: GenKind::Face(true),
                        index,
                        src,
                    });
                }
            }
            for index in 0..src {
                out.push(Gen {
                    kind: GenKind::Degen,
                    index,
                    src,
                });
            }
            if self.flavor.has_connections() {
                for index in 0..src.saturating_sub(1) {
                    out.push(Gen {
                        kind: GenKind::Conn,
                        index,
                        src,
                    });
                }
            }
        }
        out.sort();
        out
    }

    fn gen_mor(&self, g: Gen) -> CubeMap {
        g.as_cube_generator()
            .to_map(g.src)
            .expect("generator within range")
    }

    fn mor_src(&self, f: &CubeMap) -> usize {
        f.src()
    }

    fn mor_tgt(&self, f: &CubeMap) -> usize {
        f.tgt()
    }

    fn identity(&self, n: usize) -> CubeMap {
        CubeMap::identity(n)
    }

    fn compose(&self, g: &CubeMap, f: &CubeMap) -> CubeMap {
        g.after(f)
    }

    fn homs(&self, m: usize, n: usize) -> Arc<HomSet<CubeMap>> {
        let key = (self.flavor, m, n);
        if let Some(h) = cube_cache().lock().unwrap().get(&key) {
            return h.clone();
        }
        let h = Arc::new(HomSet::new(cube::enumerate::hom_maps(self.flavor, m, n)));
        cube_cache().lock().unwrap().entry(key).or_insert(h).clone()
    }

    fn factor(&self, f: &CubeMap) -> Vec<Gen> {
        let word = cube::CubeWord::from_map(f, self.flavor).expect("map lies in the site");
        let raw = word.to_raw();
        let dims = raw.dims().expect("normal form is well formed");
        // dims[k] is the source of the generator applied at step k (innermost first).
        let n = raw.gens.len();
        raw.gens
            .iter()
            .enumerate()
            .map(|(pos, &g)| Gen::from_cube_generator(g, dims[n - 1 - pos]))
            .collect()
    }

    fn describe(&self, f: &CubeMap) -> String {
        match cube::CubeWord::from_map(f, self.flavor) {
            Ok(w) => cube::RawWord::new(self.flavor, w.src_dim, w.gens()).to_string(),
            Err(_) => format!("{f:?}"),
        }
    }
}
