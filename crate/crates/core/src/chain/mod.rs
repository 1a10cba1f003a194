//! Finite chain complexes over `ℤ` or a prime field, the interval `C[1]`,
//! chain realization of cubical sets, homology and the dg-singular functor.
//!
//! Complexes live in non-negative degrees. The tensor product uses the
//! Koszul convention `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`; every sign in
//! the realization is derived from it.

mod dg;
mod homology;
mod interval;
mod matrix;
mod realize;
mod simplicial;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};

pub use dg::{dg_singular, tensor_of_cells, DgSingular, DEFAULT_MAX_CELLS};
pub use homology::{field_homology, homology, HomologyGroup};
pub use interval::{
    coalgebra_check_c1, interval_axioms, interval_c1, AxiomCheck, CoalgebraReport, Interval,
};
pub use matrix::Matrix;
pub use realize::{chain_realization, normalized_cubical_chains, ChainRealization};
pub use simplicial::simplicial_chains;

/// Coefficients: the integers or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Prime(u32),
}

impl Ring {
    pub fn reduce(self, x: i64) -> i64 {
        match self {
            Ring::Integers => x,
            Ring::Prime(p) => x.rem_euclid(p as i64),
        }
    }

    pub fn prime(p: u32) -> Result<Ring> {
        ensure!(
            p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)),
            Validation,
            "{p} is not prime"
        );
        Ok(Ring::Prime(p))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s {
            "Z" | "z" | "ZZ" | "integers" => Ok(Ring::Integers),
            _ => match s.trim_start_matches(['F', 'f']).parse::<u32>() {
                Ok(p) if s.starts_with(['F', 'f']) => Ring::prime(p),
                _ => Err(crate::Error::Parse(format!("unknown ring `{s}`"))),
            },
        }
    }
}

/// A finitely generated chain complex in degrees `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinChainComplex {
    ring: Ring,
    bases: Vec<Vec<String>>,
    /// `diffs[n]` is `d_n: C_n -> C_{n-1}`; `diffs[0]` has no rows.
    diffs: Vec<Matrix>,
}

impl FinChainComplex {
    /// Builds a complex and checks shapes and `d ∘ d = 0`.
    pub fn new(ring: Ring, bases: Vec<Vec<String>>, diffs: Vec<Matrix>) -> Result<Self> {
        ensure!(
            bases.len() == diffs.len(),
            Validation,
            "need one differential per degree"
        );
        let mut c = FinChainComplex { ring, bases, diffs };
        for n in 0..c.bases.len() {
            let rows = if n == 0 { 0 } else { c.bases[n - 1].len() };
            ensure!(
                c.diffs[n].rows() == rows && c.diffs[n].cols() == c.bases[n].len(),
                Validation,
                "d_{n} has shape {}x{}, expected {rows}x{}",
                c.diffs[n].rows(),
                c.diffs[n].cols(),
                c.bases[n].len()
            );
            c.diffs[n] = c.diffs[n].reduced(ring);
        }
        c.validate()?;
        Ok(c)
    }

    pub fn zero(ring: Ring) -> Self {
        FinChainComplex {
            ring,
            bases: vec![Vec::new()],
            diffs: vec![Matrix::zeros(0, 0)],
        }
    }

    /// The ring in degree 0, the monoidal unit.
    pub fn unit(ring: Ring) -> Self {
        FinChainComplex {
            ring,
            bases: vec![vec!["1".into()]],
            diffs: vec![Matrix::zeros(0, 1)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for n in 2..self.bases.len() {
            let dd = self.diffs[n - 1].mul(&self.diffs[n], self.ring);
            ensure!(dd.is_zero(), Validation, "d_{} ∘ d_{n} is not zero", n - 1);
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Highest stored degree.
    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.bases.get(n).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, n: usize) -> &[String] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    /// `d_n`, an empty-shaped zero matrix outside the stored range.
    pub fn d(&self, n: usize) -> Matrix {
        match self.diffs.get(n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.rank(n.saturating_sub(1)), self.rank(n)),
        }
    }

    /// `A ⊗ B` with basis `a ⊗ b` ordered by the degree of `a`, then `a`,
    /// then `b`.
    pub fn tensor(&self, other: &FinChainComplex) -> Result<FinChainComplex> {
        ensure!(
            self.ring == other.ring,
            Validation,
            "tensor factors must share a ring"
        );
        let layout = TensorLayout::new(self, other);
        let top = self.top() + other.top();
        let mut bases = vec![Vec::new(); top + 1];
        for n in 0..=top {
            for i in 0..=n.min(self.top()) {
                for a in self.basis(i) {
                    for b in other.basis(n - i) {
                        bases[n].push(format!("{a}⊗{b}"));
                    }
                }
            }
        }
        let mut diffs = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut d = Matrix::zeros(if n == 0 { 0 } else { bases[n - 1].len() }, bases[n].len());
            for i in 0..=n.min(self.top()) {
                let j = n - i;
                let (da, db) = (self.d(i), other.d(j));
                for a in 0..self.rank(i) {
                    for b in 0..other.rank(j) {
                        let col = layout.index(i, a, j, b);
                        if i > 0 {
                            for a2 in 0..self.rank(i - 1) {
                                let c = da.get(a2, a);
                                if c != 0 {
                                    d.add(layout.index(i - 1, a2, j, b), col, c);
                                }
                            }
                        }
                        if j > 0 {
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            for b2 in 0..other.rank(j - 1) {
                                let c = db.get(b2, b);
                                if c != 0 {
                                    d.add(layout.index(i, a, j - 1, b2), col, sign * c);
                                }
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        FinChainComplex::new(self.ring, bases, diffs)
    }

    /// Direct sum, with the basis of `self` first in each degree.
    pub fn direct_sum(&self, other: &FinChainComplex) -> Result<FinChainComplex> {
        ensure!(
            self.ring == other.ring,
            Validation,
            "summands must share a ring"
        );
        let top = self.top().max(other.top());
        let mut bases = Vec::new();
        let mut diffs = Vec::new();
        for n in 0..=top {
            let mut b: Vec<String> = self.basis(n).to_vec();
            b.extend(other.basis(n).iter().cloned());
            bases.push(b);
            diffs.push(self.d(n).block_diag(&other.d(n)));
        }
        FinChainComplex::new(self.ring, bases, diffs)
    }
}

/// Index arithmetic for the basis of a tensor product.
#[derive(Clone, Debug)]
pub(crate) struct TensorLayout {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl TensorLayout {
    pub(crate) fn new(a: &FinChainComplex, b: &FinChainComplex) -> Self {
        TensorLayout {
            a: a.ranks(),
            b: b.ranks(),
        }
    }

    fn ra(&self, i: usize) -> usize {
        self.a.get(i).copied().unwrap_or(0)
    }

    fn rb(&self, j: usize) -> usize {
        self.b.get(j).copied().unwrap_or(0)
    }

    /// Position of `a ⊗ b` (degrees `i`, `j`) within degree `i + j`.
    pub(crate) fn index(&self, i: usize, a: usize, j: usize, b: usize) -> usize {
        let n = i + j;
        let before: usize = (0..i).map(|k| self.ra(k) * self.rb(n - k)).sum();
        before + a * self.rb(j) + b
    }

    /// Inverse of [`TensorLayout::index`] in degree `n`.
    pub(crate) fn split(&self, n: usize, mut idx: usize) -> (usize, usize, usize, usize) {
        for i in 0..=n {
            let block = self.ra(i) * self.rb(n - i);
            if idx < block {
                let rb = self.rb(n - i);
                return (i, idx / rb, n - i, idx % rb);
            }
            idx -= block;
        }
        panic!("tensor index out of range")
    }
}

/// A degree-preserving chain map, stored as one matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    components: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(components: Vec<Matrix>) -> Self {
        ChainMap { components }
    }

    /// A map given on basis elements; `images(n, k)` is the image of the
    /// `k`-th basis element of degree `n` as `(index, coefficient)` terms.
    pub fn from_basis(
        src: &FinChainComplex,
        tgt: &FinChainComplex,
        mut images: impl FnMut(usize, usize) -> Vec<(usize, i64)>,
    ) -> Self {
        let top = src.top().max(tgt.top());
        let components = (0..=top)
            .map(|n| {
                let mut m = Matrix::zeros(tgt.rank(n), src.rank(n));
                for k in 0..src.rank(n) {
                    for (i, c) in images(n, k) {
                        m.add(i, k, c);
                    }
                }
                m.reduced(src.ring())
            })
            .collect();
        ChainMap { components }
    }

    pub fn identity(a: &FinChainComplex) -> Self {
        ChainMap::from_basis(a, a, |_, k| vec![(k, 1)])
    }

    pub fn component(&self, n: usize) -> Option<&Matrix> {
        self.components.get(n)
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    fn comp(&self, n: usize, rows: usize, cols: usize) -> Matrix {
        self.components
            .get(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(rows, cols))
    }

    /// Checks shapes and `d f = f d`.
    pub fn check(&self, src: &FinChainComplex, tgt: &FinChainComplex) -> Result<()> {
        ensure!(
            src.ring() == tgt.ring(),
            Validation,
            "chain map between different rings"
        );
        let top = src.top().max(tgt.top());
        for (n, c) in self.components.iter().enumerate() {
            ensure!(
                c.rows() == tgt.rank(n) && c.cols() == src.rank(n),
                Validation,
                "component {n} has the wrong shape"
            );
        }
        for n in 1..=top {
            let lhs = tgt
                .d(n)
                .mul(&self.comp(n, tgt.rank(n), src.rank(n)), src.ring());
            let rhs = self
                .comp(n - 1, tgt.rank(n - 1), src.rank(n - 1))
                .mul(&src.d(n), src.ring());
            ensure!(
                lhs == rhs,
                Validation,
                "chain map does not commute with d in degree {n}"
            );
        }
        Ok(())
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &ChainMap, ring: Ring) -> ChainMap {
        let top = self.components.len().max(f.components.len());
        let components = (0..top)
            .map(|n| match (self.components.get(n), f.components.get(n)) {
                (Some(g), Some(h)) => g.mul(h, ring),
                (Some(g), None) => Matrix::zeros(g.rows(), 0),
                (None, Some(h)) => Matrix::zeros(0, h.cols()),
                (None, None) => Matrix::zeros(0, 0),
            })
            .collect();
        ChainMap { components }
    }

    /// Equality as linear maps, ignoring trailing empty components.
    pub fn same_as(&self, other: &ChainMap) -> bool {
        let top = self.components.len().max(other.components.len());
        (0..top).all(
            |n| match (self.components.get(n), other.components.get(n)) {
                (Some(a), Some(b)) => a == b,
                (Some(a), None) | (None, Some(a)) => a.is_zero(),
                (None, None) => true,
            },
        )
    }

    /// `f ⊗ g: A ⊗ B -> A' ⊗ B'`. Both maps have degree 0, so no signs occur.
    pub fn tensor(
        &self,
        g: &ChainMap,
        (a, b): (&FinChainComplex, &FinChainComplex),
        (a2, b2): (&FinChainComplex, &FinChainComplex),
    ) -> Result<ChainMap> {
        let src = a.tensor(b)?;
        let tgt = a2.tensor(b2)?;
        let (ls, lt) = (TensorLayout::new(a, b), TensorLayout::new(a2, b2));
        let ring = a.ring();
        Ok(ChainMap::from_basis(&src, &tgt, |n, k| {
            let (i, x, j, y) = ls.split(n, k);
            let (fi, gj) = (
                self.comp(i, a2.rank(i), a.rank(i)),
                g.comp(j, b2.rank(j), b.rank(j)),
            );
            let mut out = Vec::new();
            for x2 in 0..a2.rank(i) {
                let c1 = fi.get(x2, x);
                if c1 == 0 {
                    continue;
                }
                for y2 in 0..b2.rank(j) {
                    let c2 = gj.get(y2, y);
                    if c2 != 0 {
                        out.push((lt.index(i, x2, j, y2), ring.reduce(c1 * c2)));
                    }
                }
            }
            out
        }))
    }

    /// Whether the map is invertible in every degree.
    pub fn is_iso(&self, src: &FinChainComplex, tgt: &FinChainComplex) -> bool {
        (0..=src.top().max(tgt.top())).all(|n| {
            src.rank(n) == tgt.rank(n)
                && self
                    .components
                    .get(n)
                    .map_or(src.rank(n) == 0, |m| m.is_invertible(src.ring()))
        })
    }
}

/// The associator `(A ⊗ B) ⊗ C -> A ⊗ (B ⊗ C)`.
pub fn associator(
    a: &FinChainComplex,
    b: &FinChainComplex,
    c: &FinChainComplex,
) -> Result<ChainMap> {
    let (ab, bc) = (a.tensor(b)?, b.tensor(c)?);
    let (src, tgt) = (ab.tensor(c)?, a.tensor(&bc)?);
    let (l_ab, l_ab_c) = (TensorLayout::new(a, b), TensorLayout::new(&ab, c));
    let (l_bc, l_a_bc) = (TensorLayout::new(b, c), TensorLayout::new(a, &bc));
    Ok(ChainMap::from_basis(&src, &tgt, |n, k| {
        let (ij, xy, l, z) = l_ab_c.split(n, k);
        let (i, x, j, y) = l_ab.split(ij, xy);
        vec![(l_a_bc.index(i, x, j + l, l_bc.index(j, y, l, z)), 1)]
    }))
}

/// The left unitor `1 ⊗ A -> A`.
pub fn left_unitor(a: &FinChainComplex) -> Result<ChainMap> {
    let src = FinChainComplex::unit(a.ring()).tensor(a)?;
    Ok(ChainMap::from_basis(&src, a, |_, k| vec![(k, 1)]))
}

/// The right unitor `A ⊗ 1 -> A`.
pub fn right_unitor(a: &FinChainComplex) -> Result<ChainMap> {
    let src = a.tensor(&FinChainComplex::unit(a.ring()))?;
    Ok(ChainMap::from_basis(&src, a, |_, k| vec![(k, 1)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_tensor_ranks() {
        let c = interval_c1(Ring::Integers).complex;
        let cc = c.tensor(&c).unwrap();
        assert_eq!(cc.ranks(), vec![4, 4, 1]);
        let u = FinChainComplex::unit(Ring::Integers);
        assert_eq!(c.tensor(&u).unwrap().ranks(), c.ranks());
    }

    #[test]
    fn associator_is_a_chain_iso() {
        let c = interval_c1(Ring::Integers).complex;
        let alpha = associator(&c, &c, &c).unwrap();
        let src = c.tensor(&c).unwrap().tensor(&c).unwrap();
        let tgt = c.tensor(&c.tensor(&c).unwrap()).unwrap();
        alpha.check(&src, &tgt).unwrap();
        assert!(alpha.is_iso(&src, &tgt));
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("F3".parse::<Ring>().unwrap(), Ring::Prime(3));
        assert!("F4".parse::<Ring>().is_err());
        assert!("Q".parse::<Ring>().is_err());
    }
}
