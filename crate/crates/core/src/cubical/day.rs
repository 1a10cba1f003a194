//! The Day tensor product of cubical sets, as a finite coend.
//!
//! `(X_1 ⊗ … ⊗ X_k)(n)` is the set of triples `(x_1, …, x_k, w)` with
//! `x_t ∈ X_t(p_t)`, `p_t <= M_t` and `w: □^n -> □^{p_1 + … + p_k}`, modulo
//! `(…, x·f, …, w) ~ (…, x, …, (id ⊗ f ⊗ id) ∘ w)` for generators `f`.
//! Cells of `X_t` above its skeleton are degenerate, so restricting the
//! coend to `p_t <= M_t` loses nothing. The classes are found by union-find.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cube::{CubeMap, Flavor};
use crate::error::{bail, ensure, Result};
use crate::presheaf::{Presheaf, PresheafMap};
use crate::site::{CubeSite, Gen, HomSet, Site};
use crate::util::UnionFind;

use super::TruncatedCubicalSet;

/// Upper bound on the number of triples examined per dimension.
const MAX_TRIPLES: usize = 50_000_000;

struct Level {
    offsets: Vec<usize>,
    homs: Vec<Arc<HomSet<CubeMap>>>,
    class: Vec<u32>,
    reps: Vec<usize>,
}

/// A Day tensor product together with the coend data needed to map into it.
pub struct DayTensor {
    pub object: TruncatedCubicalSet,
    factors: Vec<TruncatedCubicalSet>,
    skeletons: Vec<usize>,
    /// Dimension vectors `(p_1, …, p_k)`, shared by all levels.
    shapes: Vec<Vec<usize>>,
    shape_index: HashMap<Vec<usize>, usize>,
    levels: Vec<Level>,
    /// For each factor and dimension above its skeleton: a degeneracy
    /// witness `(g, z)` with `X(g)(z)` equal to the cell.
    witnesses: Vec<Vec<Vec<(Gen, usize)>>>,
}

impl DayTensor {
    pub fn new(flavor: Flavor, trunc: usize, factors: &[&TruncatedCubicalSet]) -> Result<Self> {
        let site = CubeSite::new(flavor);
        for x in factors {
            ensure!(
                x.site() == &site,
                Flavor,
                "tensor factors must have flavor {flavor}"
            );
            ensure!(
                x.trunc() == trunc,
                Validation,
                "tensor factors must share truncation {trunc}"
            );
        }
        let skeletons: Vec<usize> = factors.iter().map(|x| x.computed_skeleton()).collect();
        let total: usize = skeletons.iter().sum();
        ensure!(
            total <= trunc,
            SkeletonBound,
            "skeleta {skeletons:?} add up to {total}, above the truncation {trunc}"
        );

        let mut shapes = vec![Vec::new()];
        for &m in &skeletons {
            shapes = shapes
                .into_iter()
                .flat_map(|s: Vec<usize>| {
                    (0..=m).map(move |p| {
                        let mut t = s.clone();
                        t.push(p);
                        t
                    })
                })
                .collect();
        }
        let shape_index = shapes
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, s)| (s, k))
            .collect();
        let tuples: Vec<usize> = shapes
            .iter()
            .map(|s| s.iter().zip(factors).map(|(&p, x)| x.count(p)).product())
            .collect();

        let gens = site.generators(trunc);
        let mut levels = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let homs: Vec<_> = shapes
                .iter()
                .map(|s| site.homs(n, s.iter().sum()))
                .collect();
            let mut offsets = Vec::with_capacity(shapes.len());
            let mut size = 0usize;
            for (k, h) in homs.iter().enumerate() {
                offsets.push(size);
                size += tuples[k] * h.len();
            }
            ensure!(
                size <= MAX_TRIPLES,
                Guard,
                "Day tensor needs {size} triples in dimension {n}"
            );
            let mut uf = UnionFind::new(size);
            for (b, shape) in shapes.iter().enumerate() {
                for (t, x) in factors.iter().enumerate() {
                    let before: usize = shape[..t].iter().sum();
                    let after: usize = shape[t + 1..].iter().sum();
                    for &g in gens
                        .iter()
                        .filter(|g| g.tgt() == shape[t] && g.src <= skeletons[t])
                    {
                        let mut small = shape.clone();
                        small[t] = g.src;
                        let b2 = shapes.iter().position(|s| *s == small).unwrap();
                        let lift = CubeMap::identity(before)
                            .tensor(&site.gen_mor(g))
                            .tensor(&CubeMap::identity(after));
                        let w_table: Vec<usize> = homs[b2]
                            .maps
                            .iter()
                            .map(|w| {
                                homs[b]
                                    .position(&lift.after(w))
                                    .expect("lifted map is a cube map")
                            })
                            .collect();
                        let table = x.table(g);
                        let (nw, nw2) = (homs[b].len(), homs[b2].len());
                        for tup in 0..tuples[b] {
                            let cells = decode_tuple(shape, factors, tup);
                            let mut moved = cells.clone();
                            moved[t] = table[cells[t]];
                            let tup2 = encode_tuple(&small, factors, &moved);
                            for (w2, &w) in w_table.iter().enumerate() {
                                uf.union(offsets[b2] + tup2 * nw2 + w2, offsets[b] + tup * nw + w);
                            }
                        }
                    }
                }
            }
            let (class, reps) = uf.classes();
            levels.push(Level {
                offsets,
                homs,
                class: class.into_iter().map(|c| c as u32).collect(),
                reps,
            });
        }

        let counts: Vec<usize> = levels.iter().map(|l| l.reps.len()).collect();
        let factors_owned: Vec<TruncatedCubicalSet> = factors.iter().map(|&x| x.clone()).collect();
        let witnesses = factors
            .iter()
            .zip(&skeletons)
            .map(|(x, &m)| x.degeneracy_witnesses(m))
            .collect();
        let mut this = DayTensor {
            object: Presheaf::empty(site, trunc),
            factors: factors_owned,
            skeletons,
            shapes,
            shape_index,
            levels,
            witnesses,
        };
        let object = Presheaf::from_fn(site, trunc, total, counts, |g, c| {
            let (b, tup, w) = this.decode(g.tgt(), this.levels[g.tgt()].reps[c]);
            let w2 = w.after(&site.gen_mor(g));
            this.triple_class(g.src, b, tup, &w2)
        })?;
        this.object = object;
        Ok(this)
    }

    pub fn factors(&self) -> &[TruncatedCubicalSet] {
        &self.factors
    }

    /// Splits a triple index of dimension `n` into (shape, tuple, w).
    fn decode(&self, n: usize, idx: usize) -> (usize, usize, CubeMap) {
        let level = &self.levels[n];
        // Empty shapes share their offset with a later shape, so the last
        // offset not above `idx` belongs to the shape containing it.
        let b = level.offsets.partition_point(|&o| o <= idx) - 1;
        let local = idx - level.offsets[b];
        let nw = level.homs[b].len();
        (b, local / nw, level.homs[b].maps[local % nw].clone())
    }

    fn triple_class(&self, n: usize, b: usize, tup: usize, w: &CubeMap) -> usize {
        let level = &self.levels[n];
        let wi = level.homs[b]
            .position(w)
            .expect("map into the shape's cube");
        level.class[level.offsets[b] + tup * level.homs[b].len() + wi] as usize
    }

    /// A representative `((p_t, x_t))_t, w` of a cell of dimension `n`.
    pub fn representative(&self, n: usize, c: usize) -> (Vec<(usize, usize)>, CubeMap) {
        let (b, tup, w) = self.decode(n, self.levels[n].reps[c]);
        let shape = &self.shapes[b];
        let cells = decode_tuple(shape, &self.factors_refs(), tup);
        (shape.iter().copied().zip(cells).collect(), w)
    }

    fn factors_refs(&self) -> Vec<&TruncatedCubicalSet> {
        self.factors.iter().collect()
    }

    /// The class of `(x_1, …, x_k, w)` where `x_t` has dimension `p_t` and
    /// `w: □^n -> □^{Σ p_t}`. Cells above a factor's skeleton are first
    /// rewritten as degeneracies of lower cells.
    pub fn class_of(&self, n: usize, cells: &[(usize, usize)], w: &CubeMap) -> Result<usize> {
        ensure!(
            cells.len() == self.factors.len(),
            Validation,
            "expected {} factors",
            self.factors.len()
        );
        ensure!(
            w.src() == n,
            Dimension,
            "map source {} differs from {n}",
            w.src()
        );
        let site = *self.object.site();
        let mut cells = cells.to_vec();
        let mut w = w.clone();
        for t in 0..cells.len() {
            while cells[t].0 > self.skeletons[t] {
                let (p, x) = cells[t];
                ensure!(
                    x < self.factors[t].count(p),
                    Validation,
                    "no cell {x} in dimension {p}"
                );
                let (g, z) = self.witnesses[t][p - self.skeletons[t] - 1][x];
                let before: usize = cells[..t].iter().map(|c| c.0).sum();
                let after: usize = cells[t + 1..].iter().map(|c| c.0).sum();
                let lift = CubeMap::identity(before)
                    .tensor(&site.gen_mor(g))
                    .tensor(&CubeMap::identity(after));
                w = lift.after(&w);
                cells[t] = (g.tgt(), z);
            }
        }
        let shape: Vec<usize> = cells.iter().map(|c| c.0).collect();
        ensure!(
            w.tgt() == shape.iter().sum::<usize>(),
            Dimension,
            "map target {} does not match the cell dimensions",
            w.tgt()
        );
        let b = self.shape_index[&shape];
        let ids: Vec<usize> = cells.iter().map(|c| c.1).collect();
        for (t, &x) in ids.iter().enumerate() {
            ensure!(
                x < self.factors[t].count(shape[t]),
                Validation,
                "no cell {x} in dimension {}",
                shape[t]
            );
        }
        let tup = encode_tuple(&shape, &self.factors_refs(), &ids);
        Ok(self.triple_class(n, b, tup, &w))
    }

    /// The class of the pure tensor `x_1 ⊗ … ⊗ x_k`, a cell of dimension
    /// `Σ p_t`.
    pub fn pure(&self, cells: &[(usize, usize)]) -> Result<usize> {
        let n: usize = cells.iter().map(|c| c.0).sum();
        ensure!(
            n <= self.object.trunc(),
            Dimension,
            "pure tensor of dimension {n} above the truncation"
        );
        self.class_of(n, cells, &CubeMap::identity(n))
    }

    /// The tensor product of maps `f_t: X_t -> Y_t`, from this tensor into
    /// `target`, the tensor of the `Y_t`.
    pub fn map_to(&self, target: &DayTensor, maps: &[&PresheafMap]) -> Result<PresheafMap> {
        ensure!(
            maps.len() == self.factors.len() && target.factors.len() == maps.len(),
            Validation,
            "need one map per tensor factor"
        );
        for (t, f) in maps.iter().enumerate() {
            f.check(&self.factors[t], &target.factors[t])?;
        }
        let mut comps = Vec::with_capacity(self.object.trunc() + 1);
        for n in 0..=self.object.trunc() {
            let mut comp = Vec::with_capacity(self.object.count(n));
            for c in 0..self.object.count(n) {
                let (cells, w) = self.representative(n, c);
                let image: Vec<_> = cells
                    .iter()
                    .zip(maps)
                    .map(|(&(p, x), f)| (p, f.apply(p, x)))
                    .collect();
                comp.push(target.class_of(n, &image, &w)?);
            }
            comps.push(comp);
        }
        let map = PresheafMap::new(comps);
        map.check(&self.object, &target.object)?;
        Ok(map)
    }
}

fn decode_tuple(shape: &[usize], factors: &[&TruncatedCubicalSet], mut tup: usize) -> Vec<usize> {
    let mut cells = vec![0; shape.len()];
    for t in (0..shape.len()).rev() {
        let k = factors[t].count(shape[t]);
        cells[t] = tup % k;
        tup /= k;
    }
    cells
}

fn encode_tuple(shape: &[usize], factors: &[&TruncatedCubicalSet], cells: &[usize]) -> usize {
    let mut tup = 0;
    for t in 0..shape.len() {
        tup = tup * factors[t].count(shape[t]) + cells[t];
    }
    tup
}

/// `X ⊗ Y`.
pub fn day_tensor(x: &TruncatedCubicalSet, y: &TruncatedCubicalSet) -> Result<TruncatedCubicalSet> {
    if x.site() != y.site() {
        bail!(
            Flavor,
            "cannot tensor {} with {} cubical sets",
            x.site().flavor,
            y.site().flavor
        );
    }
    Ok(DayTensor::new(x.site().flavor, x.trunc(), &[x, y])?.object)
}

/// `X_1 ⊗ … ⊗ X_k`; the empty product is `□[0]`.
pub fn day_tensor_many(
    flavor: Flavor,
    trunc: usize,
    xs: &[&TruncatedCubicalSet],
) -> Result<TruncatedCubicalSet> {
    Ok(DayTensor::new(flavor, trunc, xs)?.object)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{boundary, representable};
    use crate::presheaf::is_isomorphic;

    #[test]
    fn cubes_multiply() {
        for flavor in Flavor::ALL {
            let i = representable(flavor, 1, 2).unwrap();
            let sq = representable(flavor, 2, 2).unwrap();
            let t = day_tensor(&i, &i).unwrap();
            assert_eq!(t.counts(), sq.counts());
            assert!(is_isomorphic(&t, &sq, Default::default())
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn empty_product_is_the_point() {
        let p = day_tensor_many(Flavor::Connections, 2, &[]).unwrap();
        assert_eq!(p.counts(), &[1, 1, 1]);
    }

    #[test]
    fn torus_vertices() {
        let (b, _) = boundary(Flavor::Reduced, 2, 2).unwrap();
        let t = day_tensor(&b, &b).unwrap();
        assert_eq!(t.count(0), 16);
        assert_eq!(t.nondegenerate_counts(), vec![16, 32, 16]);
    }

    #[test]
    fn skeleton_bound_is_enforced() {
        let sq = representable(Flavor::Reduced, 2, 2).unwrap();
        let i = representable(Flavor::Reduced, 1, 2).unwrap();
        assert!(matches!(
            day_tensor(&sq, &i),
            Err(crate::Error::SkeletonBound(_))
        ));
    }

    #[test]
    fn map_tensor_is_natural() {
        let (b, inc) = boundary(Flavor::Connections, 1, 2).unwrap();
        let i = representable(Flavor::Connections, 1, 2).unwrap();
        let src = DayTensor::new(Flavor::Connections, 2, &[&b, &i]).unwrap();
        let tgt = DayTensor::new(Flavor::Connections, 2, &[&i, &i]).unwrap();
        let id = PresheafMap::identity(&i);
        let f = src.map_to(&tgt, &[&inc, &id]).unwrap();
        assert!(f.is_mono());
    }
}
