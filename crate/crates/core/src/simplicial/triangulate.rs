//! Triangulation `L` of cubical sets and its right adjoint `R`.
//!
//! `L(X)` is the coend of `X` against `n ↦ N({0 < 1}^n)`: a `k`-simplex is a
//! class of pairs `(x, c)` with `x ∈ X(n)`, `n <= M`, and `c` a monotone
//! chain `v_0 <= … <= v_k` of vertices of `{0,1}^n`, modulo
//! `(x·f, c) ~ (x, f∘c)`. `R(Y)(n)` is the set of simplicial maps
//! `N({0 < 1}^n) -> Y`.

use std::collections::HashMap;

use crate::cube::Flavor;
use crate::cubical::{CubicalMap, TruncatedCubicalSet};
use crate::error::{ensure, Result};
use crate::presheaf::{self, Presheaf, PresheafMap};
use crate::site::{CubeSite, Gen, Site};
use crate::util::UnionFind;

use super::{guard, SimplexSite, SimplicialMap, TruncatedSimplicialSet};

fn vertex_label(v: u32, n: usize) -> String {
    (0..n)
        .map(|k| if v >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Monotone chains of `k + 1` vertices in `{0,1}^n`, lexicographically.
fn chains(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k + 1);
    fn go(n: usize, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in 0..1u32 << n {
            if lo & !v == 0 {
                cur.push(v);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    go(n, k, &mut cur, &mut out);
    out
}

fn reindex(chain: &[u32], theta: &super::Monotone) -> Vec<u32> {
    theta.values.iter().map(|&j| chain[j]).collect()
}

/// The nerve of the poset `{0 < 1}^n` with simplices stored as chains.
struct ChainNerve {
    object: TruncatedSimplicialSet,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

fn chain_nerve(n: usize, trunc: usize) -> Result<ChainNerve> {
    let levels: Vec<Vec<Vec<u32>>> = (0..=trunc).map(|k| chains(n, k)).collect();
    let index: Vec<HashMap<Vec<u32>, usize>> = levels
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let site = SimplexSite;
    let object = Presheaf::from_fn(
        site,
        trunc,
        n.min(trunc),
        levels.iter().map(Vec::len).collect(),
        |g, c| index[g.src][&reindex(&levels[g.tgt()][c], &site.gen_mor(g))],
    )?;
    let labels = levels
        .iter()
        .map(|l| {
            l.iter()
                .map(|c| {
                    c.iter()
                        .map(|&v| vertex_label(v, n))
                        .collect::<Vec<_>>()
                        .join("<")
                })
                .collect()
        })
        .collect();
    Ok(ChainNerve {
        object: object.with_labels(labels),
        index,
    })
}

/// `N({0 < 1}^n)`, which is `L(□[n])`, truncated at `trunc`.
pub fn cube_poset_nerve(n: usize, trunc: usize) -> Result<TruncatedSimplicialSet> {
    guard(0, trunc)?;
    Ok(chain_nerve(n, trunc)?.object)
}

struct Level {
    /// Chains of length `k + 1` in each cube dimension `n <= M`.
    chains: Vec<Vec<Vec<u32>>>,
    chain_index: Vec<HashMap<Vec<u32>, usize>>,
    offsets: Vec<usize>,
    class: Vec<u32>,
    reps: Vec<usize>,
}

/// A triangulation with the coend data needed to map out of and into it.
pub struct Triangulation {
    pub object: TruncatedSimplicialSet,
    source: TruncatedCubicalSet,
    skeleton: usize,
    levels: Vec<Level>,
    witnesses: Vec<Vec<(Gen, usize)>>,
}

impl Triangulation {
    pub fn new(x: &TruncatedCubicalSet) -> Result<Self> {
        let trunc = x.trunc();
        guard(0, trunc)?;
        let m = x.computed_skeleton();
        let cube = *x.site();
        let gens: Vec<Gen> = cube.generators(m);
        let mut levels = Vec::with_capacity(trunc + 1);
        for k in 0..=trunc {
            let chains: Vec<Vec<Vec<u32>>> = (0..=m).map(|n| chains(n, k)).collect();
            let chain_index: Vec<HashMap<Vec<u32>, usize>> = chains
                .iter()
                .map(|l| l.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
                .collect();
            let mut offsets = Vec::with_capacity(m + 1);
            let mut size = 0;
            for n in 0..=m {
                offsets.push(size);
                size += x.count(n) * chains[n].len();
            }
            ensure!(
                size <= 50_000_000,
                Guard,
                "triangulation needs {size} pairs in dimension {k}"
            );
            let mut uf = UnionFind::new(size);
            for &g in &gens {
                let (a, b) = (g.src, g.tgt());
                let f = cube.gen_mor(g);
                let moved: Vec<usize> = chains[a]
                    .iter()
                    .map(|c| chain_index[b][&c.iter().map(|&v| f.apply(v)).collect::<Vec<_>>()])
                    .collect();
                let (na, nb) = (chains[a].len(), chains[b].len());
                for (xb, &xa) in x.table(g).iter().enumerate() {
                    for (c, &fc) in moved.iter().enumerate() {
                        uf.union(offsets[a] + xa * na + c, offsets[b] + xb * nb + fc);
                    }
                }
            }
            let (class, reps) = uf.classes();
            levels.push(Level {
                chains,
                chain_index,
                offsets,
                class: class.into_iter().map(|c| c as u32).collect(),
                reps,
            });
        }
        let witnesses = x.degeneracy_witnesses(m);
        let mut this = Triangulation {
            object: Presheaf::empty(SimplexSite, trunc),
            source: x.clone(),
            skeleton: m,
            levels,
            witnesses,
        };
        let counts: Vec<usize> = this.levels.iter().map(|l| l.reps.len()).collect();
        let object = Presheaf::from_fn(SimplexSite, trunc, m, counts, |g, s| {
            let (n, cell, chain) = this.representative(g.tgt(), s);
            let moved = reindex(&chain, &SimplexSite.gen_mor(g));
            this.pair_class(g.src, n, cell, &moved)
        })?;
        let labels = (0..=trunc)
            .map(|k| {
                (0..object.count(k))
                    .map(|s| {
                        let (n, cell, chain) = this.representative(k, s);
                        let c: Vec<_> = chain.iter().map(|&v| vertex_label(v, n)).collect();
                        format!("{}|{}", x.label(n, cell), c.join("<"))
                    })
                    .collect()
            })
            .collect();
        this.object = object.with_labels(labels);
        Ok(this)
    }

    fn pair_class(&self, k: usize, n: usize, cell: usize, chain: &[u32]) -> usize {
        let level = &self.levels[k];
        let c = level.chain_index[n][chain];
        level.class[level.offsets[n] + cell * level.chains[n].len() + c] as usize
    }

    /// A representative `(n, x, chain)` of a `k`-simplex.
    pub fn representative(&self, k: usize, s: usize) -> (usize, usize, Vec<u32>) {
        let level = &self.levels[k];
        let idx = level.reps[s];
        let n = level.offsets.partition_point(|&o| o <= idx) - 1;
        let local = idx - level.offsets[n];
        let nc = level.chains[n].len();
        (n, local / nc, level.chains[n][local % nc].clone())
    }

    /// The simplex `[(x, chain)]` for `x ∈ X(n)` and a chain of `k + 1`
    /// vertices of `{0,1}^n`.
    pub fn class_of(&self, n: usize, x: usize, chain: &[u32]) -> Result<usize> {
        let k = chain
            .len()
            .checked_sub(1)
            .ok_or_else(|| crate::Error::Dimension("empty chain".into()))?;
        ensure!(
            k <= self.object.trunc(),
            Dimension,
            "chain of length {} above the truncation",
            k + 1
        );
        ensure!(
            n <= self.source.trunc() && x < self.source.count(n),
            Validation,
            "no cell {x} in dimension {n}"
        );
        ensure!(
            chain.iter().all(|&v| v >> n == 0) && chain.windows(2).all(|w| w[0] & !w[1] == 0),
            Validation,
            "not a monotone chain in {{0,1}}^{n}"
        );
        let (mut n, mut x, mut chain) = (n, x, chain.to_vec());
        while n > self.skeleton {
            let (g, z) = self.witnesses[n - self.skeleton - 1][x];
            let f = self.source.site().gen_mor(g);
            chain = chain.iter().map(|&v| f.apply(v)).collect();
            n = g.tgt();
            x = z;
        }
        Ok(self.pair_class(k, n, x, &chain))
    }
}

pub fn triangulate(x: &TruncatedCubicalSet) -> Result<TruncatedSimplicialSet> {
    Ok(Triangulation::new(x)?.object)
}

/// `L(f)` for a cubical map `f: X -> Y`, given both triangulations.
pub fn triangulate_map(
    f: &CubicalMap,
    lx: &Triangulation,
    ly: &Triangulation,
) -> Result<PresheafMap> {
    f.check(&lx.source, &ly.source)?;
    let mut comps = Vec::new();
    for k in 0..=lx.object.trunc() {
        let mut comp = Vec::with_capacity(lx.object.count(k));
        for s in 0..lx.object.count(k) {
            let (n, x, chain) = lx.representative(k, s);
            comp.push(ly.class_of(n, f.apply(n, x), &chain)?);
        }
        comps.push(comp);
    }
    let map = PresheafMap::new(comps);
    map.check(&lx.object, &ly.object)?;
    Ok(map)
}

/// The cubical singular set `R(Y)`, truncated at `min(trunc, Y.trunc)`.
/// Cells of dimension `n` are the maps `N({0 < 1}^n) -> Y`.
pub fn cubical_singular(
    y: &TruncatedSimplicialSet,
    flavor: Flavor,
    trunc: usize,
) -> Result<TruncatedCubicalSet> {
    Ok(singular_with_cells(y, flavor, trunc)?.0)
}

type SingularCells = (TruncatedCubicalSet, Vec<HashMap<PresheafMap, usize>>);

fn singular_with_cells(
    y: &TruncatedSimplicialSet,
    flavor: Flavor,
    trunc: usize,
) -> Result<SingularCells> {
    let t = trunc.min(y.trunc());
    crate::cubical::representable(flavor, 0, t)?;
    let nerves: Vec<ChainNerve> = (0..=t).map(|n| chain_nerve(n, t)).collect::<Result<_>>()?;
    let cells: Vec<Vec<PresheafMap>> = nerves
        .iter()
        .map(|p| presheaf::hom_maps(&p.object, y, Default::default()))
        .collect::<Result<_>>()?;
    let index: Vec<HashMap<PresheafMap, usize>> = cells
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    let site = CubeSite::new(flavor);
    let chain_lists: Vec<Vec<Vec<Vec<u32>>>> = (0..=t)
        .map(|n| (0..=t).map(|k| chains(n, k)).collect())
        .collect();
    let r = Presheaf::from_fn(
        site,
        t,
        t,
        cells.iter().map(Vec::len).collect(),
        |g, phi| {
            let (a, b) = (g.src, g.tgt());
            let f = site.gen_mor(g);
            let phi = &cells[b][phi];
            let comps = (0..=t)
                .map(|k| {
                    chain_lists[a][k]
                        .iter()
                        .map(|c| {
                            let moved: Vec<u32> = c.iter().map(|&v| f.apply(v)).collect();
                            phi.apply(k, nerves[b].index[k][&moved])
                        })
                        .collect()
                })
                .collect();
            index[a][&PresheafMap::new(comps)]
        },
    )?;
    let mut r = r;
    let m = r.computed_skeleton();
    r.set_skeleton(m);
    Ok((r, index))
}

/// The unit `X -> R(L(X))` of the triangulation adjunction, with its target.
pub fn adjunction_unit(x: &TruncatedCubicalSet) -> Result<(TruncatedCubicalSet, CubicalMap)> {
    let lx = Triangulation::new(x)?;
    let id = PresheafMap::identity(&lx.object);
    adjunct(x, &lx, &id, &lx.object)
}

/// The map `X -> R(Y)` corresponding to `f: L(X) -> Y`, with `R(Y)`.
/// Needs `Y` truncated no lower than `X`.
pub fn adjunct(
    x: &TruncatedCubicalSet,
    lx: &Triangulation,
    f: &SimplicialMap,
    y: &TruncatedSimplicialSet,
) -> Result<(TruncatedCubicalSet, CubicalMap)> {
    let t = x.trunc();
    ensure!(
        y.trunc() >= t,
        Dimension,
        "target truncated at {} below {t}",
        y.trunc()
    );
    f.check(&lx.object, y)?;
    let (ry, index) = singular_with_cells(y, x.site().flavor, t)?;
    let mut comps = Vec::with_capacity(t + 1);
    for n in 0..=t {
        let ks: Vec<Vec<Vec<u32>>> = (0..=t).map(|k| chains(n, k)).collect();
        let mut comp = Vec::with_capacity(x.count(n));
        for cell in 0..x.count(n) {
            let phi = ks
                .iter()
                .enumerate()
                .map(|(k, level)| {
                    level
                        .iter()
                        .map(|c| Ok(f.apply(k, lx.class_of(n, cell, c)?)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            comp.push(index[n][&PresheafMap::new(phi)]);
        }
        comps.push(comp);
    }
    let map = PresheafMap::new(comps);
    map.check(x, &ry)?;
    Ok((ry, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{boundary, representable};
    use crate::presheaf::is_isomorphic;
    use crate::simplicial::simplex;

    #[test]
    fn small_triangulations() {
        for flavor in Flavor::ALL {
            let l0 = triangulate(&representable(flavor, 0, 2).unwrap()).unwrap();
            assert_eq!(l0.counts(), &[1, 1, 1]);
            let l1 = triangulate(&representable(flavor, 1, 2).unwrap()).unwrap();
            assert!(
                is_isomorphic(&l1, &simplex(1, 2).unwrap(), Default::default())
                    .unwrap()
                    .is_some()
            );
            let l2 = triangulate(&representable(flavor, 2, 2).unwrap()).unwrap();
            assert_eq!(l2.nondegenerate_counts(), vec![4, 5, 2]);
        }
    }

    #[test]
    fn singular_of_an_edge() {
        let r = cubical_singular(&simplex(1, 2).unwrap(), Flavor::Reduced, 2).unwrap();
        assert_eq!(&r.counts()[..2], &[2, 3]);
        let p = cubical_singular(&simplex(0, 2).unwrap(), Flavor::Connections, 2).unwrap();
        assert_eq!(p.counts(), &[1, 1, 1]);
    }

    #[test]
    fn unit_is_a_map() {
        let (b, _) = boundary(Flavor::Connections, 2, 2).unwrap();
        let (_, unit) = adjunction_unit(&b).unwrap();
        assert!(unit.is_mono());
    }
}
