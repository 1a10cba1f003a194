//! The homotopy coherent nerve.
//!
//! A `k`-simplex of `N^c(C)` is an enriched functor `W_k -> C`, which is
//! the same as objects `g_0, …, g_k` and cells `c_ij ∈ C(g_i, g_j)(j-i-1)`
//! for `i < j` with `C(δ^1_{j-i-1})(c_ik) = m(c_ij ⊗ c_jk)`.

use std::collections::HashMap;

use crate::cube::CubeMap;
use crate::error::{ensure, Result};
use crate::presheaf::Presheaf;
use crate::simplicial::{SimplexSite, TruncatedSimplicialSet};
use crate::site::{Gen, GenKind};

use super::{w_codegeneracy_map, w_coface_map, CubicalCategory};

/// Default bound on the number of simplices in one dimension.
pub const MAX_SIMPLICES: usize = 1_000_000;

/// The pairs `i < j` of `[k]`, shortest first, then by `i`. Cells of a
/// simplex are stored in this order.
pub fn pairs(k: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..=k)
        .flat_map(|i| (i + 1..=k).map(move |j| (i, j)))
        .collect();
    out.sort_by_key(|&(i, j)| (j - i, i));
    out
}

type Simplex = (Vec<usize>, Vec<usize>);

/// `N^c(C)` with its simplices as (objects, cells in [`pairs`] order).
pub struct HcNerve {
    pub object: TruncatedSimplicialSet,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl HcNerve {
    pub fn new(c: &CubicalCategory, k_max: usize) -> Result<Self> {
        ensure!(
            c.flavor().has_connections(),
            Flavor,
            "the coherent nerve needs cubical sets with connections"
        );
        ensure!(
            c.trunc() + 1 >= k_max,
            Dimension,
            "homs truncated at {} cannot hold {k_max}-simplices",
            c.trunc()
        );
        let simplices: Vec<Vec<Simplex>> = (0..=k_max)
            .map(|k| enumerate(c, k))
            .collect::<Result<_>>()?;
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let site = SimplexSite;
        let counts = simplices.iter().map(Vec::len).collect();
        let object = Presheaf::from_fn(site, k_max, k_max, counts, |g, x| {
            let s = &simplices[g.tgt()][x];
            let image = match g.kind {
                GenKind::Face(_) => face(c, s, g.index),
                _ => degeneracy(c, s, g.index),
            };
            index[g.src][&image]
        })?;
        let labels = simplices
            .iter()
            .map(|l| {
                l.iter()
                    .map(|(objs, _)| {
                        objs.iter()
                            .map(|&o| c.objects()[o].as_str())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect()
            })
            .collect();
        let mut object = object.with_labels(labels);
        let m = object.computed_skeleton();
        object.set_skeleton(m);
        Ok(HcNerve {
            object,
            simplices,
            index,
        })
    }

    /// Objects and cells of a simplex.
    pub fn simplex(&self, k: usize, x: usize) -> (&[usize], &[usize]) {
        let (o, c) = &self.simplices[k][x];
        (o, c)
    }

    pub fn find(&self, k: usize, objects: &[usize], cells: &[usize]) -> Option<usize> {
        self.index
            .get(k)?
            .get(&(objects.to_vec(), cells.to_vec()))
            .copied()
    }
}

fn enumerate(c: &CubicalCategory, k: usize) -> Result<Vec<Simplex>> {
    let n = c.object_count();
    let ps = pairs(k);
    let pos: HashMap<(usize, usize), usize> = ps.iter().enumerate().map(|(t, &p)| (p, t)).collect();
    let mut out = Vec::new();
    let mut objs = Vec::with_capacity(k + 1);
    let mut cells = vec![0; ps.len()];
    fn objects_rec(
        c: &CubicalCategory,
        k: usize,
        n: usize,
        objs: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if objs.len() == k + 1 {
            return f(objs);
        }
        for o in 0..n {
            let d = objs.len();
            if objs
                .iter()
                .enumerate()
                .all(|(i, &g)| c.hom(g, o).count(d - i - 1) > 0)
            {
                objs.push(o);
                objects_rec(c, k, n, objs, f)?;
                objs.pop();
            }
        }
        Ok(())
    }
    fn cells_rec(
        c: &CubicalCategory,
        objs: &[usize],
        ps: &[(usize, usize)],
        pos: &HashMap<(usize, usize), usize>,
        t: usize,
        cells: &mut Vec<usize>,
        out: &mut Vec<Simplex>,
    ) -> Result<()> {
        if t == ps.len() {
            ensure!(
                out.len() < MAX_SIMPLICES,
                Guard,
                "more than {MAX_SIMPLICES} simplices"
            );
            out.push((objs.to_vec(), cells.clone()));
            return Ok(());
        }
        let (i, k) = ps[t];
        let d = k - i - 1;
        let h = c.hom(objs[i], objs[k]);
        'cand: for x in 0..h.count(d) {
            for j in i + 1..k {
                let g = Gen {
                    kind: GenKind::Face(true),
                    index: j - i - 1,
                    src: d - 1,
                };
                let composite = c.compose(
                    objs[i],
                    objs[j],
                    objs[k],
                    (j - i - 1, cells[pos[&(i, j)]]),
                    (k - j - 1, cells[pos[&(j, k)]]),
                );
                if h.act(g, x) != composite {
                    continue 'cand;
                }
            }
            cells[t] = x;
            cells_rec(c, objs, ps, pos, t + 1, cells, out)?;
        }
        Ok(())
    }
    objects_rec(c, k, n, &mut objs, &mut |objs| {
        cells_rec(c, objs, &ps, &pos, 0, &mut cells, &mut out)
    })?;
    Ok(out)
}

/// `d_l`: precomposition with the coface functor `W_{k-1} -> W_k`.
fn face(c: &CubicalCategory, (objs, cells): &Simplex, l: usize) -> Simplex {
    let k = objs.len() - 1;
    let old: HashMap<(usize, usize), usize> =
        pairs(k).into_iter().zip(cells.iter().copied()).collect();
    let lift = |x: usize| if x < l { x } else { x + 1 };
    let new_objs: Vec<usize> = (0..k).map(|x| objs[lift(x)]).collect();
    let new_cells = pairs(k - 1)
        .into_iter()
        .map(|(a, b)| {
            let x = old[&(lift(a), lift(b))];
            act(c, objs[lift(a)], objs[lift(b)], &w_coface_map(l, a, b), x)
        })
        .collect();
    (new_objs, new_cells)
}

/// `s_l`: precomposition with the codegeneracy functor `W_{k+1} -> W_k`.
fn degeneracy(c: &CubicalCategory, (objs, cells): &Simplex, l: usize) -> Simplex {
    let k = objs.len() - 1;
    let old: HashMap<(usize, usize), usize> =
        pairs(k).into_iter().zip(cells.iter().copied()).collect();
    let down = |x: usize| if x <= l { x } else { x - 1 };
    let new_objs: Vec<usize> = (0..=k + 1).map(|x| objs[down(x)]).collect();
    let new_cells = pairs(k + 1)
        .into_iter()
        .map(|(a, b)| {
            let (sa, sb) = (down(a), down(b));
            if sa == sb {
                c.unit(objs[sa])
            } else {
                act(
                    c,
                    objs[sa],
                    objs[sb],
                    &w_codegeneracy_map(l, a, b),
                    old[&(sa, sb)],
                )
            }
        })
        .collect();
    (new_objs, new_cells)
}

fn act(c: &CubicalCategory, x: usize, y: usize, f: &CubeMap, cell: usize) -> usize {
    if f.is_identity() {
        cell
    } else {
        c.hom(x, y).act_mor(f, cell)
    }
}

/// `N^c(C)` truncated at `k_max`.
pub fn hc_nerve(c: &CubicalCategory, k_max: usize) -> Result<TruncatedSimplicialSet> {
    Ok(HcNerve::new(c, k_max)?.object)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Flavor;
    use crate::enriched::discrete_enrich;
    use crate::presheaf::is_isomorphic;
    use crate::simplicial::{nerve_of_category, FinCategory};

    #[test]
    fn discrete_nerves_agree() {
        for c in [FinCategory::ordinal(1), FinCategory::ordinal(2)] {
            let ic = discrete_enrich(&c, Flavor::Connections, 2).unwrap();
            let hc = hc_nerve(&ic, 3).unwrap();
            let n = nerve_of_category(&c, 3).unwrap();
            assert!(is_isomorphic(&hc, &n, Default::default())
                .unwrap()
                .is_some());
        }
    }
}
