//! Chain realization `L(X)`: the coend of `X` against `n ↦ C[1]^{⊗n}`.
//!
//! A basis element of `C[1]^{⊗n}` is a word in the letters `0`, `1`, `e`.
//! Every generator of the cube category sends a basis word to a basis word
//! or to zero, without signs, so the coend is free on the classes of pairs
//! `(x, word)` that are not identified with zero.

use crate::cubical::{DayTensor, TruncatedCubicalSet};
use crate::error::{ensure, Result};
use crate::site::{Gen, GenKind, Site};
use crate::util::UnionFind;

use super::interval::{gamma_letters, sigma_letter, Letter};
use super::{ChainMap, FinChainComplex, Matrix, Ring, TensorLayout};

pub(crate) type Word = Vec<Letter>;

pub(crate) fn words(n: usize) -> Vec<Word> {
    (0..3usize.pow(n as u32))
        .map(|c| decode_word(n, c))
        .collect()
}

fn decode_word(n: usize, mut c: usize) -> Word {
    let mut w = vec![Letter::Zero; n];
    for slot in w.iter_mut().rev() {
        *slot = [Letter::Zero, Letter::One, Letter::Edge][c % 3];
        c /= 3;
    }
    w
}

pub(crate) fn encode_word(w: &[Letter]) -> usize {
    w.iter().fold(0, |acc, &l| acc * 3 + l as usize)
}

/// `C[1]^{⊗ g}` on a basis word; `None` is zero.
pub(crate) fn act_on_word(g: Gen, w: &[Letter]) -> Option<Word> {
    let i = g.index;
    let mut out = w.to_vec();
    match g.kind {
        GenKind::Face(eps) => out.insert(i, if eps { Letter::One } else { Letter::Zero }),
        GenKind::Degen => {
            if !sigma_letter(out.remove(i)) {
                return None;
            }
        }
        GenKind::Conn => {
            let b = out.remove(i + 1);
            out[i] = gamma_letters(out[i], b)?;
        }
    }
    Some(out)
}

/// A chain realization with the coend data needed to map into it.
pub struct ChainRealization {
    pub complex: FinChainComplex,
    source: TruncatedCubicalSet,
    skeleton: usize,
    offsets: Vec<usize>,
    /// Class of each pair, as (degree, basis index); `None` if zero.
    class: Vec<Option<(usize, usize)>>,
    /// Representative pair `(n, x, word)` of each basis element, per degree.
    reps: Vec<Vec<(usize, usize, Word)>>,
    witnesses: Vec<Vec<(Gen, usize)>>,
}

impl ChainRealization {
    pub fn new(x: &TruncatedCubicalSet, ring: Ring) -> Result<Self> {
        let m = x.computed_skeleton();
        ensure!(
            m <= 8,
            Guard,
            "realization of a {m}-skeletal cubical set is too large"
        );
        let site = *x.site();
        let mut offsets = Vec::with_capacity(m + 1);
        let mut size = 0;
        for n in 0..=m {
            offsets.push(size);
            size += x.count(n) * 3usize.pow(n as u32);
        }
        ensure!(size <= 50_000_000, Guard, "realization needs {size} pairs");
        let zero = size;
        let mut uf = UnionFind::new(size + 1);
        for g in site.generators(m) {
            let (a, b) = (g.src, g.tgt());
            let wa = 3usize.pow(a as u32);
            let wb = 3usize.pow(b as u32);
            for (code, word) in words(a).into_iter().enumerate() {
                let image = act_on_word(g, &word).map(|w| encode_word(&w));
                for (xb, &xa) in x.table(g).iter().enumerate() {
                    let left = offsets[a] + xa * wa + code;
                    let right = match image {
                        Some(c) => offsets[b] + xb * wb + c,
                        None => zero,
                    };
                    uf.union(left, right);
                }
            }
        }
        let zero_root = uf.find(zero);
        let mut root_class: std::collections::HashMap<usize, (usize, usize)> = Default::default();
        let mut reps: Vec<Vec<(usize, usize, Word)>> = vec![Vec::new(); m + 1];
        let mut class = vec![None; size];
        for n in 0..=m {
            let nw = 3usize.pow(n as u32);
            for cell in 0..x.count(n) {
                for code in 0..nw {
                    let idx = offsets[n] + cell * nw + code;
                    let r = uf.find(idx);
                    if r == zero_root {
                        continue;
                    }
                    let word = decode_word(n, code);
                    let deg = word.iter().map(|l| l.degree()).sum::<usize>();
                    let entry = *root_class.entry(r).or_insert_with(|| {
                        reps[deg].push((n, cell, word.clone()));
                        (deg, reps[deg].len() - 1)
                    });
                    class[idx] = Some(entry);
                }
            }
        }
        let witnesses = x.degeneracy_witnesses(m);
        let mut this = ChainRealization {
            complex: FinChainComplex::zero(ring),
            source: x.clone(),
            skeleton: m,
            offsets,
            class,
            reps,
            witnesses,
        };
        let bases: Vec<Vec<String>> = this
            .reps
            .iter()
            .map(|l| {
                l.iter()
                    .map(|(n, cell, w)| {
                        format!(
                            "{}|{}",
                            x.label(*n, *cell),
                            w.iter().map(|l| l.symbol()).collect::<String>()
                        )
                    })
                    .collect()
            })
            .collect();
        let mut diffs = vec![Matrix::zeros(0, bases[0].len())];
        for deg in 1..bases.len() {
            let mut d = Matrix::zeros(bases[deg - 1].len(), bases[deg].len());
            for (k, (n, cell, word)) in this.reps[deg].iter().enumerate() {
                let mut edges = 0;
                for i in 0..word.len() {
                    if word[i] != Letter::Edge {
                        continue;
                    }
                    let sign = if edges % 2 == 0 { 1 } else { -1 };
                    edges += 1;
                    for (end, coeff) in [(Letter::One, sign), (Letter::Zero, -sign)] {
                        let mut w = word.clone();
                        w[i] = end;
                        if let Some((_, j)) = this.class_of(*n, *cell, &w)? {
                            d.add(j, k, coeff);
                        }
                    }
                }
            }
            diffs.push(d);
        }
        this.complex = FinChainComplex::new(ring, bases, diffs)?;
        Ok(this)
    }

    pub fn source(&self) -> &TruncatedCubicalSet {
        &self.source
    }

    /// The basis element `[x ⊗ word]` as (degree, index), or `None` if zero.
    fn class_of(&self, n: usize, x: usize, word: &[Letter]) -> Result<Option<(usize, usize)>> {
        ensure!(
            word.len() == n,
            Dimension,
            "word length {} differs from {n}",
            word.len()
        );
        ensure!(
            x < self.source.count(n),
            Validation,
            "no cell {x} in dimension {n}"
        );
        let (mut n, mut x, mut word) = (n, x, word.to_vec());
        while n > self.skeleton {
            let (g, z) = self.witnesses[n - self.skeleton - 1][x];
            match act_on_word(g, &word) {
                Some(w) => word = w,
                None => return Ok(None),
            }
            n = g.tgt();
            x = z;
        }
        Ok(self.class[self.offsets[n] + x * 3usize.pow(n as u32) + encode_word(&word)])
    }

    /// The image of `x ⊗ word` given as a string over `0`, `1`, `e`.
    pub fn basis_element(&self, n: usize, x: usize, word: &str) -> Result<Option<(usize, usize)>> {
        let w = word
            .chars()
            .map(|c| match c {
                '0' => Ok(Letter::Zero),
                '1' => Ok(Letter::One),
                'e' => Ok(Letter::Edge),
                other => Err(crate::Error::Parse(format!(
                    "bad interval letter `{other}`"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        self.class_of(n, x, &w)
    }

    /// The chain map `L(f): L(X) -> L(Y)` of a cubical map.
    pub fn map_to(
        &self,
        target: &ChainRealization,
        f: &crate::cubical::CubicalMap,
    ) -> Result<ChainMap> {
        f.check(&self.source, &target.source)?;
        let ring = self.complex.ring();
        let mut comps = Vec::new();
        for deg in 0..=self.complex.top().max(target.complex.top()) {
            let mut m = Matrix::zeros(target.complex.rank(deg), self.complex.rank(deg));
            for (k, (n, x, w)) in self.reps.get(deg).into_iter().flatten().enumerate() {
                if let Some((_, j)) = target.class_of(*n, f.apply(*n, *x), w)? {
                    m.add(j, k, 1);
                }
            }
            comps.push(m.reduced(ring));
        }
        let map = ChainMap::new(comps);
        map.check(&self.complex, &target.complex)?;
        Ok(map)
    }

    /// The comparison `L(X) ⊗ L(Y) -> L(X ⊗ Y)`, sending
    /// `[x ⊗ u] ⊗ [y ⊗ v]` to `[(x ⊗ y) ⊗ uv]`.
    pub fn monoidal_comparison(
        lx: &ChainRealization,
        ly: &ChainRealization,
        tensor: &DayTensor,
        lxy: &ChainRealization,
    ) -> Result<ChainMap> {
        let src = lx.complex.tensor(&ly.complex)?;
        let layout = TensorLayout::new(&lx.complex, &ly.complex);
        let mut comps = Vec::new();
        for deg in 0..=src.top().max(lxy.complex.top()) {
            let mut m = Matrix::zeros(lxy.complex.rank(deg), src.rank(deg));
            for k in 0..src.rank(deg) {
                let (i, a, j, b) = layout.split(deg, k);
                let (p, x, u) = &lx.reps[i][a];
                let (q, y, v) = &ly.reps[j][b];
                let cell = tensor.pure(&[(*p, *x), (*q, *y)])?;
                let word: Word = u.iter().chain(v).copied().collect();
                if let Some((_, r)) = lxy.class_of(p + q, cell, &word)? {
                    m.add(r, k, 1);
                }
            }
            comps.push(m.reduced(src.ring()));
        }
        let map = ChainMap::new(comps);
        map.check(&src, &lxy.complex)?;
        Ok(map)
    }
}

pub fn chain_realization(x: &TruncatedCubicalSet, ring: Ring) -> Result<FinChainComplex> {
    Ok(ChainRealization::new(x, ring)?.complex)
}

/// Normalized cubical chains: nondegenerate cells, with
/// `d x = Σ_i (-1)^i (x·δ^1_i - x·δ^0_i)` and degenerate faces dropped.
pub fn normalized_cubical_chains(x: &TruncatedCubicalSet, ring: Ring) -> Result<FinChainComplex> {
    let top = x.computed_skeleton();
    let nondeg: Vec<Vec<usize>> = (0..=top).map(|n| x.nondegenerate(n)).collect();
    let position = |n: usize, c: usize| nondeg[n].iter().position(|&y| y == c);
    let bases = (0..=top)
        .map(|n| nondeg[n].iter().map(|&c| x.label(n, c)).collect())
        .collect();
    let mut diffs = vec![Matrix::zeros(0, nondeg[0].len())];
    for n in 1..=top {
        let mut d = Matrix::zeros(nondeg[n - 1].len(), nondeg[n].len());
        for (k, &c) in nondeg[n].iter().enumerate() {
            for i in 0..n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for (eps, s) in [(true, sign), (false, -sign)] {
                    let g = Gen {
                        kind: GenKind::Face(eps),
                        index: i,
                        src: n - 1,
                    };
                    if let Some(j) = position(n - 1, x.act(g, c)) {
                        d.add(j, k, s);
                    }
                }
            }
        }
        diffs.push(d);
    }
    FinChainComplex::new(ring, bases, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology;
    use crate::cube::Flavor;
    use crate::cubical::{boundary, representable};

    #[test]
    fn representables_realize_to_tensor_powers() {
        let c = super::super::interval_c1(Ring::Integers).complex;
        for flavor in Flavor::ALL {
            let l0 =
                chain_realization(&representable(flavor, 0, 2).unwrap(), Ring::Integers).unwrap();
            assert_eq!(l0.ranks(), vec![1]);
            let l1 =
                chain_realization(&representable(flavor, 1, 2).unwrap(), Ring::Integers).unwrap();
            assert_eq!(l1.ranks(), c.ranks());
            let l2 =
                chain_realization(&representable(flavor, 2, 2).unwrap(), Ring::Integers).unwrap();
            assert_eq!(l2.ranks(), c.tensor(&c).unwrap().ranks());
        }
    }

    #[test]
    fn square_boundary() {
        for flavor in Flavor::ALL {
            let (b, _) = boundary(flavor, 2, 2).unwrap();
            let l = chain_realization(&b, Ring::Integers).unwrap();
            assert_eq!(l.ranks(), vec![4, 4]);
            let h = homology(&l).unwrap();
            assert_eq!(
                h.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                ["Z", "Z"]
            );
            let classical = normalized_cubical_chains(&b, Ring::Integers).unwrap();
            assert_eq!(classical.ranks(), l.ranks());
        }
    }
}
