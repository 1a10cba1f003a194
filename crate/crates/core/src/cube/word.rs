use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{bail, ensure, Error, Result};

use super::{CubeFunction, CubeMap, Flavor};

/// One generating morphism of a cube category, with its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// `δ^ε_i`
    Face { eps: bool, index: usize },
    /// `σ_i`
    Degen(usize),
    /// `γ_i`
    Conn(usize),
}

impl Generator {
    pub fn face(eps: bool, index: usize) -> Self {
        Generator::Face { eps, index }
    }

    /// Target dimension when applied to `□^src`, or a dimension error if the
    /// index is out of range there.
    pub fn target_dim(self, src: usize) -> Result<usize> {
        match self {
            Generator::Face { index, .. } if index <= src => Ok(src + 1),
            Generator::Degen(i) if i < src => Ok(src - 1),
            Generator::Conn(i) if i + 1 < src => Ok(src - 1),
            g => bail!(Dimension, "{g} is not defined on □^{src}"),
        }
    }

    pub fn to_map(self, src: usize) -> Result<CubeMap> {
        self.target_dim(src)?;
        Ok(match self {
            Generator::Face { eps, index } => CubeMap::face(eps, index, src),
            Generator::Degen(i) => CubeMap::degeneracy(i, src),
            Generator::Conn(i) => CubeMap::connection(i, src),
        })
    }

    pub fn allowed_in(self, flavor: Flavor) -> bool {
        flavor.has_connections() || !matches!(self, Generator::Conn(_))
    }

    /// Change in dimension, target minus source.
    pub fn shift(self) -> isize {
        match self {
            Generator::Face { .. } => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Face { eps, index } => write!(f, "d{}@{}", eps as u8, index),
            Generator::Degen(i) => write!(f, "s@{i}"),
            Generator::Conn(i) => write!(f, "g@{i}"),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self> {
        let (head, idx) = tok
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("bad generator `{tok}`")))?;
        let index: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in `{tok}`")))?;
        match head {
            "d0" => Ok(Generator::face(false, index)),
            "d1" => Ok(Generator::face(true, index)),
            "s" => Ok(Generator::Degen(index)),
            "g" => Ok(Generator::Conn(index)),
            _ => bail!(Parse, "unknown generator `{tok}`"),
        }
    }
}

/// An arbitrary composable sequence of generators, outermost first: the
/// last generator is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawWord {
    pub flavor: Flavor,
    pub src_dim: usize,
    pub gens: Vec<Generator>,
}

impl RawWord {
    pub fn new(flavor: Flavor, src_dim: usize, gens: Vec<Generator>) -> Self {
        RawWord {
            flavor,
            src_dim,
            gens,
        }
    }

    /// Parses `d1@1 . d0@0` style syntax. When `src_dim` is `None` the
    /// smallest source dimension on which every index is in range is used.
    pub fn parse(text: &str, flavor: Flavor, src_dim: Option<usize>) -> Result<Self> {
        let trimmed = text.trim();
        let gens = if trimmed.is_empty() || trimmed == "id" {
            Vec::new()
        } else {
            trimmed
                .split('.')
                .map(|t| t.trim().parse::<Generator>())
                .collect::<Result<Vec<_>>>()?
        };
        let src_dim = src_dim.unwrap_or_else(|| minimal_source(&gens));
        Ok(RawWord {
            flavor,
            src_dim,
            gens,
        })
    }

    /// Dimensions visited, from the source to the target; validates every
    /// index and the flavor.
    pub fn dims(&self) -> Result<Vec<usize>> {
        let mut dims = vec![self.src_dim];
        let mut cur = self.src_dim;
        for g in self.gens.iter().rev() {
            if !g.allowed_in(self.flavor) {
                bail!(Flavor, "{g} is not a morphism of the reduced cube category");
            }
            cur = g.target_dim(cur)?;
            dims.push(cur);
        }
        Ok(dims)
    }

    pub fn tgt_dim(&self) -> Result<usize> {
        Ok(*self.dims()?.last().unwrap())
    }

    pub fn to_map(&self) -> Result<CubeMap> {
        let dims = self.dims()?;
        let mut acc = CubeMap::identity(self.src_dim);
        for (g, &d) in self.gens.iter().rev().zip(&dims) {
            acc = g.to_map(d)?.after(&acc);
        }
        Ok(acc)
    }

    /// Pointwise composite of the generator truth tables.
    pub fn eval(&self) -> Result<CubeFunction> {
        let dims = self.dims()?;
        let mut acc = CubeFunction::identity(self.src_dim);
        for (g, &d) in self.gens.iter().rev().zip(&dims) {
            acc = CubeFunction::generator(*g, d)?.after(&acc)?;
        }
        Ok(acc)
    }

    pub fn normalize(&self) -> Result<CubeWord> {
        CubeWord::from_map(&self.to_map()?, self.flavor)
    }
}

impl fmt::Display for RawWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_gens(f, &self.gens)
    }
}

fn write_gens(f: &mut fmt::Formatter<'_>, gens: &[Generator]) -> fmt::Result {
    if gens.is_empty() {
        return f.write_str("id");
    }
    for (k, g) in gens.iter().enumerate() {
        if k > 0 {
            f.write_str(" . ")?;
        }
        write!(f, "{g}")?;
    }
    Ok(())
}

fn minimal_source(gens: &[Generator]) -> usize {
    let mut need: isize = 0;
    let mut off: isize = 0;
    for g in gens.iter().rev() {
        let req = match *g {
            Generator::Face { index, .. } => index as isize,
            Generator::Degen(i) => i as isize + 1,
            Generator::Conn(i) => i as isize + 2,
        };
        need = need.max(req - off);
        off += g.shift();
    }
    need.max(0) as usize
}

/// A cube morphism in normal form
/// `δ^{ε₁}_{i₁}···δ^{εₐ}_{iₐ} ∘ γ_{j₁}···γ_{j_b} ∘ σ_{k₁}···σ_{k_c}`.
///
/// Face indices strictly decrease, degeneracy indices strictly increase, and
/// the connections form runs `γ_a^r` with increasing `a`, each run being
/// followed by an index at least `a + r + 1`. The run condition is what makes
/// the connection part unique: `γ_0 γ_0` and `γ_0 γ_1` are the same map.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeWord {
    pub flavor: Flavor,
    pub src_dim: usize,
    pub tgt_dim: usize,
    pub faces: Vec<(bool, usize)>,
    pub conns: Vec<usize>,
    pub degens: Vec<usize>,
}

impl CubeWord {
    pub fn identity(flavor: Flavor, n: usize) -> Self {
        CubeWord {
            flavor,
            src_dim: n,
            tgt_dim: n,
            faces: Vec::new(),
            conns: Vec::new(),
            degens: Vec::new(),
        }
    }

    /// Reads off the normal form of a compact map.
    pub fn from_map(map: &CubeMap, flavor: Flavor) -> Result<Self> {
        ensure!(
            map.in_flavor(flavor),
            Validation,
            "{map:?} is not a {flavor} cube morphism"
        );
        let m = map.src();
        let n = map.tgt();
        let mut faces = Vec::new();
        let mut used = 0u32;
        let mut blocks = Vec::new();
        for k in (0..n).rev() {
            match map.coord(k) {
                None => faces.push((true, k)),
                Some(0) => faces.push((false, k)),
                Some(mask) => {
                    used |= mask;
                    blocks.push(mask);
                }
            }
        }
        blocks.reverse();
        let degens: Vec<usize> = (0..m).filter(|&s| used >> s & 1 == 0).collect();
        // Position of each surviving coordinate once the degeneracies are applied.
        let mut survivor_pos = vec![usize::MAX; m];
        for (pos, s) in (0..m).filter(|&s| used >> s & 1 == 1).enumerate() {
            survivor_pos[s] = pos;
        }
        let mut conns = Vec::new();
        for mask in blocks {
            let start = survivor_pos[mask.trailing_zeros() as usize];
            for _ in 1..mask.count_ones() {
                conns.push(start);
            }
        }
        let word = CubeWord {
            flavor,
            src_dim: m,
            tgt_dim: n,
            faces,
            conns,
            degens,
        };
        debug_assert!(word.is_normal());
        Ok(word)
    }

    pub fn gens(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self
            .faces
            .iter()
            .map(|&(eps, index)| Generator::Face { eps, index })
            .collect();
        gens.extend(self.conns.iter().map(|&j| Generator::Conn(j)));
        gens.extend(self.degens.iter().map(|&k| Generator::Degen(k)));
        gens
    }

    pub fn to_raw(&self) -> RawWord {
        RawWord {
            flavor: self.flavor,
            src_dim: self.src_dim,
            gens: self.gens(),
        }
    }

    pub fn to_map(&self) -> CubeMap {
        self.to_raw()
            .to_map()
            .expect("normal forms are well formed")
    }

    pub fn eval(&self) -> Result<CubeFunction> {
        self.to_raw().eval()
    }

    pub fn is_identity(&self) -> bool {
        self.faces.is_empty() && self.conns.is_empty() && self.degens.is_empty()
    }

    /// Checks the normal-form ordering and the dimension bookkeeping.
    pub fn is_normal(&self) -> bool {
        let faces_ok = self.faces.windows(2).all(|w| w[0].1 > w[1].1);
        let degens_ok = self.degens.windows(2).all(|w| w[0] < w[1]);
        let mut conns_ok = self.flavor.has_connections() || self.conns.is_empty();
        let mut k = 0;
        while k < self.conns.len() {
            let a = self.conns[k];
            let mut r = 0;
            while k < self.conns.len() && self.conns[k] == a {
                r += 1;
                k += 1;
            }
            if k < self.conns.len() && self.conns[k] < a + r + 1 {
                conns_ok = false;
            }
        }
        let dims_ok = self
            .to_raw()
            .tgt_dim()
            .map(|t| t == self.tgt_dim)
            .unwrap_or(false);
        faces_ok && degens_ok && conns_ok && dims_ok
    }

    /// `self ∘ f`, normalized.
    pub fn compose(&self, f: &CubeWord) -> Result<CubeWord> {
        ensure!(
            self.flavor == f.flavor,
            Flavor,
            "cannot compose a {} word with a {} word",
            self.flavor,
            f.flavor
        );
        ensure!(
            f.tgt_dim == self.src_dim,
            Dimension,
            "cannot compose □^{}->□^{} after □^{}->□^{}",
            self.src_dim,
            self.tgt_dim,
            f.src_dim,
            f.tgt_dim
        );
        CubeWord::from_map(&self.to_map().after(&f.to_map()), self.flavor)
    }

    /// Monoidal product, `self` acting on the leading coordinates.
    pub fn tensor(&self, g: &CubeWord) -> Result<CubeWord> {
        ensure!(
            self.flavor == g.flavor,
            Flavor,
            "cannot tensor a {} word with a {} word",
            self.flavor,
            g.flavor
        );
        CubeWord::from_map(&self.to_map().tensor(&g.to_map()), self.flavor)
    }
}

impl fmt::Display for CubeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_gens(f, &self.gens())?;
        write!(f, " : {} -> {}", self.src_dim, self.tgt_dim)
    }
}

impl fmt::Debug for CubeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.flavor.short())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(text: &str, flavor: Flavor) -> CubeWord {
        RawWord::parse(text, flavor, None)
            .unwrap()
            .normalize()
            .unwrap()
    }

    #[test]
    fn source_dimension_is_inferred() {
        let w = RawWord::parse("g@0 . d0@0", Flavor::Connections, None).unwrap();
        assert_eq!(w.src_dim, 1);
        assert_eq!(
            RawWord::parse("", Flavor::Reduced, None).unwrap().src_dim,
            0
        );
        assert_eq!(
            RawWord::parse("d1@1 . d0@0", Flavor::Reduced, None)
                .unwrap()
                .src_dim,
            0
        );
    }

    #[test]
    fn relation_examples() {
        let c = Flavor::Connections;
        assert!(word("s@0 . d0@0", Flavor::Reduced).is_identity());
        assert_eq!(
            word("d0@0 . d1@0", Flavor::Reduced).to_string(),
            "d1@1 . d0@0 : 0 -> 2"
        );
        let w = word("g@0 . d0@0", c);
        assert!(w.is_identity());
        assert_eq!(w.to_string(), "id : 1 -> 1");
        assert_eq!(
            word("s@0 . d0@1", Flavor::Reduced).to_string(),
            "d0@0 . s@0 : 1 -> 1"
        );
    }

    #[test]
    fn connection_runs_are_canonical() {
        let c = Flavor::Connections;
        assert_eq!(word("g@0 . g@1", c), word("g@0 . g@0", c));
        assert_eq!(word("g@0 . g@0 . g@2", c).conns, vec![0, 0, 0]);
        assert_eq!(word("g@1 . g@0", c).conns, vec![0, 2]);
    }

    #[test]
    fn parse_errors() {
        assert!(RawWord::parse("q@1", Flavor::Reduced, None)
            .unwrap_err()
            .is_parse());
        assert!(RawWord::parse("d0@x", Flavor::Reduced, None)
            .unwrap_err()
            .is_parse());
        let bad = RawWord::parse("s@3", Flavor::Reduced, Some(2)).unwrap();
        assert!(matches!(bad.normalize(), Err(Error::Dimension(_))));
        let flav = RawWord::parse("g@0", Flavor::Reduced, None).unwrap();
        assert!(matches!(flav.normalize(), Err(Error::Flavor(_))));
    }

    #[test]
    fn tensor_is_not_symmetric() {
        let r = Flavor::Reduced;
        let d0 = word("d0@0", r);
        let id1 = CubeWord::identity(r, 1);
        let left = d0.tensor(&id1).unwrap();
        let right = id1.tensor(&d0).unwrap();
        assert_eq!(left.to_string(), "d0@0 : 1 -> 2");
        assert_eq!(right.to_string(), "d0@1 : 1 -> 2");
        assert_ne!(left.eval().unwrap(), right.eval().unwrap());
    }
}
