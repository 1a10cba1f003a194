//! A small finite simplicial-set kernel and the triangulation adjunction
//! between cubical and simplicial sets.

mod category;
mod triangulate;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{ensure, Result};
use crate::presheaf::{self, Presheaf, PresheafMap};
use crate::site::{Gen, GenKind, HomSet, Site};

pub use category::{nerve_of_category, FinCategory};
pub use triangulate::{
    adjunct, adjunction_unit, cube_poset_nerve, cubical_singular, triangulate, triangulate_map,
    Triangulation,
};

/// Largest simplicial dimension accepted by the enumerating constructors.
pub const SIMPLEX_GUARD: usize = 8;

pub type TruncatedSimplicialSet = Presheaf<SimplexSite>;
pub type SimplicialSet = TruncatedSimplicialSet;
pub type SimplicialMap = PresheafMap;

/// A monotone map `[m] -> [n]`, stored as its list of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monotone {
    pub tgt: usize,
    pub values: Vec<usize>,
}

impl Monotone {
    pub fn identity(n: usize) -> Self {
        Monotone {
            tgt: n,
            values: (0..=n).collect(),
        }
    }

    pub fn src(&self) -> usize {
        self.values.len() - 1
    }

    /// `d^i: [n-1] -> [n]`, skipping `i`.
    pub fn face(i: usize, n: usize) -> Self {
        Monotone {
            tgt: n,
            values: (0..n).map(|k| if k < i { k } else { k + 1 }).collect(),
        }
    }

    /// `s^i: [n+1] -> [n]`, hitting `i` twice.
    pub fn degeneracy(i: usize, n: usize) -> Self {
        Monotone {
            tgt: n,
            values: (0..=n + 1)
                .map(|k| if k <= i { k } else { k - 1 })
                .collect(),
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &Monotone) -> Monotone {
        Monotone {
            tgt: self.tgt,
            values: f.values.iter().map(|&k| self.values[k]).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        (0..=self.tgt).all(|k| self.values.contains(&k))
    }
}

/// The simplex category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SimplexSite;

type SimplexCache = Mutex<HashMap<(usize, usize), Arc<HomSet<Monotone>>>>;

fn simplex_cache() -> &'static SimplexCache {
    static CACHE: OnceLock<SimplexCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn monotone_maps(m: usize, n: usize) -> Vec<Monotone> {
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, lo: usize, values: &mut Vec<usize>, out: &mut Vec<Monotone>) {
        if values.len() == m + 1 {
            out.push(Monotone {
                tgt: n,
                values: values.clone(),
            });
            return;
        }
        for v in lo..=n {
            values.push(v);
            go(m, n, v, values, out);
            values.pop();
        }
    }
    go(m, n, 0, &mut values, &mut out);
    out
}

impl Site for SimplexSite {
    type Mor = Monotone;

    fn kind(&self) -> &'static str {
        "simplicial"
    }

    fn generators(&self, max_dim: usize) -> Vec<Gen> {
        let mut out = Vec::new();
        for src in 0..=max_dim {
            if src < max_dim {
                for index in 0..=src + 1 {
                    out.push(Gen {
                        kind: GenKind::Face(false),
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
        }
        out.sort();
        out
    }

    fn gen_mor(&self, g: Gen) -> Monotone {
        match g.kind {
            GenKind::Face(_) => Monotone::face(g.index, g.src + 1),
            GenKind::Degen => Monotone::degeneracy(g.index, g.src - 1),
            GenKind::Conn => panic!("the simplex category has no connections"),
        }
    }

    fn mor_src(&self, f: &Monotone) -> usize {
        f.src()
    }

    fn mor_tgt(&self, f: &Monotone) -> usize {
        f.tgt
    }

    fn identity(&self, n: usize) -> Monotone {
        Monotone::identity(n)
    }

    fn compose(&self, g: &Monotone, f: &Monotone) -> Monotone {
        g.after(f)
    }

    fn homs(&self, m: usize, n: usize) -> Arc<HomSet<Monotone>> {
        if let Some(h) = simplex_cache().lock().unwrap().get(&(m, n)) {
            return h.clone();
        }
        let h = Arc::new(HomSet::new(monotone_maps(m, n)));
        simplex_cache()
            .lock()
            .unwrap()
            .entry((m, n))
            .or_insert(h)
            .clone()
    }

    /// `f = d^{i_1} ⋯ d^{i_a} s^{j_1} ⋯ s^{j_b}` with `i_1 > … > i_a` the
    /// values missed by `f` and `j_1 < … < j_b` the places where `f` repeats.
    fn factor(&self, f: &Monotone) -> Vec<Gen> {
        let m = f.src();
        let repeats: Vec<usize> = (0..m).filter(|&j| f.values[j] == f.values[j + 1]).collect();
        let missed: Vec<usize> = (0..=f.tgt).filter(|k| !f.values.contains(k)).collect();
        let mut out = Vec::new();
        // Faces, outermost first; the innermost face starts at the image size.
        let image = m + 1 - repeats.len() - 1;
        for (pos, &i) in missed.iter().rev().enumerate() {
            out.push(Gen {
                kind: GenKind::Face(false),
                index: i,
                src: f.tgt - 1 - pos,
            });
        }
        debug_assert!(missed.is_empty() || f.tgt - missed.len() == image);
        // Degeneracies: s^{j_1} is outermost, with source image + 1.
        for (pos, &j) in repeats.iter().enumerate() {
            out.push(Gen {
                kind: GenKind::Degen,
                index: j,
                src: image + 1 + pos,
            });
        }
        debug_assert_eq!(
            out.iter()
                .rev()
                .fold(Monotone::identity(m), |acc, &g| self.gen_mor(g).after(&acc)),
            *f
        );
        out
    }

    fn describe(&self, f: &Monotone) -> String {
        f.values.iter().map(|v| v.to_string()).collect()
    }
}

fn guard(n: usize, trunc: usize) -> Result<()> {
    ensure!(
        n <= trunc,
        Dimension,
        "simplex dimension {n} exceeds truncation {trunc}"
    );
    ensure!(
        trunc <= SIMPLEX_GUARD,
        Guard,
        "truncation {trunc} exceeds the guard {SIMPLEX_GUARD}"
    );
    Ok(())
}

/// `Δ[n]`, with cells labelled by their vertex lists.
pub fn simplex(n: usize, trunc: usize) -> Result<TruncatedSimplicialSet> {
    guard(n, trunc)?;
    presheaf::representable(&SimplexSite, n, trunc)
}

fn sub_simplex(
    n: usize,
    trunc: usize,
    keep: impl Fn(&Monotone) -> bool,
) -> Result<(TruncatedSimplicialSet, SimplicialMap)> {
    guard(n, trunc)?;
    let rep = simplex(n, trunc)?;
    let marks: Vec<Vec<bool>> = (0..=trunc)
        .map(|m| SimplexSite.homs(m, n).maps.iter().map(&keep).collect())
        .collect();
    presheaf::subpresheaf(&rep, &marks)
}

/// `∂Δ[n]` with its inclusion into `Δ[n]`.
pub fn boundary_simplex(n: usize, trunc: usize) -> Result<(TruncatedSimplicialSet, SimplicialMap)> {
    sub_simplex(n, trunc, |f| !f.is_surjective())
}

/// The horn `Λ^k[n]` with its inclusion into `Δ[n]`: simplices missing some
/// vertex other than `k`.
pub fn horn(n: usize, k: usize, trunc: usize) -> Result<(TruncatedSimplicialSet, SimplicialMap)> {
    ensure!(k <= n, Dimension, "horn vertex {k} out of range for Δ[{n}]");
    sub_simplex(n, trunc, |f| {
        (0..=n).any(|j| j != k && !f.values.contains(&j))
    })
}

/// Levelwise product.
pub fn product(
    x: &TruncatedSimplicialSet,
    y: &TruncatedSimplicialSet,
) -> Result<TruncatedSimplicialSet> {
    ensure!(
        x.trunc() == y.trunc(),
        Validation,
        "product factors must share a truncation"
    );
    let trunc = x.trunc();
    let skeleton = (x.skeleton() + y.skeleton()).min(trunc);
    let counts = (0..=trunc).map(|n| x.count(n) * y.count(n)).collect();
    let p = Presheaf::from_fn(SimplexSite, trunc, skeleton, counts, |g, c| {
        let ny = y.count(g.tgt());
        x.act(g, c / ny) * y.count(g.src) + y.act(g, c % ny)
    })?;
    let labels = (0..=trunc)
        .map(|n| {
            (0..p.count(n))
                .map(|c| {
                    format!(
                        "({},{})",
                        x.label(n, c / y.count(n)),
                        y.label(n, c % y.count(n))
                    )
                })
                .collect()
        })
        .collect();
    Ok(p.with_labels(labels))
}

/// Outcome of a horn-filling probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornFillReport {
    pub total_maps: usize,
    pub unfillable: usize,
}

/// Counts maps `Λ^k[n] -> X` with no extension to `Δ[n]`.
pub fn horn_fill_probe(x: &TruncatedSimplicialSet, n: usize, k: usize) -> Result<HornFillReport> {
    ensure!(
        n >= 1 && n <= x.trunc(),
        Dimension,
        "horn dimension {n} must lie in 1..={}",
        x.trunc()
    );
    let (h, incl) = horn(n, k, x.trunc())?;
    let maps = presheaf::hom_maps(&h, x, Default::default())?;
    let homs = SimplexSite.homs(n - 1, n);
    let faces: Vec<(Gen, usize)> = (0..=n)
        .filter(|&j| j != k)
        .map(|j| {
            let g = Gen {
                kind: GenKind::Face(false),
                index: j,
                src: n - 1,
            };
            let in_rep = homs.position(&Monotone::face(j, n)).unwrap();
            let in_horn = incl
                .component(n - 1)
                .iter()
                .position(|&c| c == in_rep)
                .unwrap();
            (g, in_horn)
        })
        .collect();
    let unfillable = maps
        .iter()
        .filter(|phi| {
            !(0..x.count(n)).any(|z| {
                faces
                    .iter()
                    .all(|&(g, c)| x.act(g, z) == phi.apply(n - 1, c))
            })
        })
        .count();
    Ok(HornFillReport {
        total_maps: maps.len(),
        unfillable,
    })
}

/// [`horn_fill_probe`] restricted to inner horns `0 < k < n`.
pub fn inner_horn_fill_probe(
    x: &TruncatedSimplicialSet,
    n: usize,
    k: usize,
) -> Result<HornFillReport> {
    ensure!(0 < k && k < n, Dimension, "Λ^{k}[{n}] is not an inner horn");
    horn_fill_probe(x, n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_round_trips() {
        for m in 0..4 {
            for n in 0..4 {
                for f in &SimplexSite.homs(m, n).maps {
                    let g = SimplexSite
                        .factor(f)
                        .iter()
                        .rev()
                        .fold(Monotone::identity(m), |acc, &g| {
                            SimplexSite.gen_mor(g).after(&acc)
                        });
                    assert_eq!(&g, f);
                }
            }
        }
    }

    #[test]
    fn standard_objects() {
        assert_eq!(simplex(0, 3).unwrap().counts(), &[1, 1, 1, 1]);
        let (b, _) = boundary_simplex(2, 2).unwrap();
        assert_eq!(b.nondegenerate_counts(), vec![3, 3, 0]);
        let (h, _) = horn(2, 1, 2).unwrap();
        assert_eq!(h.nondegenerate_counts(), vec![3, 2, 0]);
    }

    #[test]
    fn square_product() {
        let d1 = simplex(1, 3).unwrap();
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.nondegenerate_counts(), vec![4, 5, 2, 0]);
    }

    #[test]
    fn horn_probes() {
        let d1 = simplex(1, 2).unwrap();
        assert_eq!(inner_horn_fill_probe(&d1, 2, 1).unwrap().unfillable, 0);
        let (b, _) = boundary_simplex(2, 2).unwrap();
        assert!(inner_horn_fill_probe(&b, 2, 1).unwrap().unfillable > 0);
    }
}
