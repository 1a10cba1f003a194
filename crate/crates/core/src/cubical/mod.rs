//! Finite truncated cubical sets, in both flavors.
//!
//! Face indices are 0-based throughout. The caps `⊓^{ε,i}[n]` take a 0-based
//! `i` as well: `cap(flavor, n, ε, i, N)` omits the face where coordinate `i`
//! is constantly `ε`. Literature that numbers faces `1..=n` writes the same
//! cap with index `i + 1`.

mod day;
mod decompose;

use crate::cube::{Flavor, DIM_GUARD};
use crate::error::{ensure, Result};
use crate::presheaf::{self, Presheaf, PresheafMap};
use crate::site::{CubeSite, Gen, GenKind, Site};

pub use day::{day_tensor, day_tensor_many, DayTensor};
pub use decompose::{boundary_decomposition, cap_decomposition, CapSplit, Decomposition};

pub type TruncatedCubicalSet = Presheaf<CubeSite>;
pub type CubicalSet = TruncatedCubicalSet;
pub type CubicalMap = PresheafMap;

fn guard(n: usize, trunc: usize) -> Result<()> {
    ensure!(
        n <= trunc,
        Dimension,
        "cube dimension {n} exceeds truncation {trunc}"
    );
    ensure!(
        trunc <= DIM_GUARD,
        Guard,
        "truncation {trunc} exceeds the guard {DIM_GUARD}"
    );
    Ok(())
}

/// `□[n]`, truncated at `trunc`. Cells are labelled by their normal-form word.
pub fn representable(flavor: Flavor, n: usize, trunc: usize) -> Result<TruncatedCubicalSet> {
    guard(n, trunc)?;
    presheaf::representable(&CubeSite::new(flavor), n, trunc)
}

pub fn point(flavor: Flavor, trunc: usize) -> Result<TruncatedCubicalSet> {
    representable(flavor, 0, trunc)
}

pub fn empty(flavor: Flavor, trunc: usize) -> TruncatedCubicalSet {
    Presheaf::empty(CubeSite::new(flavor), trunc)
}

/// Marks the cells of `□[n]` that factor through one of the listed faces.
fn through_faces(
    flavor: Flavor,
    n: usize,
    trunc: usize,
    faces: &[(bool, usize)],
) -> Vec<Vec<bool>> {
    let site = CubeSite::new(flavor);
    (0..=trunc)
        .map(|m| {
            let homs = site.homs(m, n);
            let mut keep = vec![false; homs.len()];
            if n > 0 {
                for h in &site.homs(m, n - 1).maps {
                    for &(eps, i) in faces {
                        let d = site.gen_mor(Gen {
                            kind: GenKind::Face(eps),
                            index: i,
                            src: n - 1,
                        });
                        let f = d.after(h);
                        keep[homs.position(&f).expect("face composite is a cube map")] = true;
                    }
                }
            }
            keep
        })
        .collect()
}

/// `∂□[n]`: the maps into `□^n` that factor through some coface, with its
/// inclusion into `□[n]`.
pub fn boundary(
    flavor: Flavor,
    n: usize,
    trunc: usize,
) -> Result<(TruncatedCubicalSet, CubicalMap)> {
    guard(n, trunc)?;
    let rep = representable(flavor, n, trunc)?;
    let faces: Vec<_> = (0..n).flat_map(|i| [(false, i), (true, i)]).collect();
    presheaf::subpresheaf(&rep, &through_faces(flavor, n, trunc, &faces))
}

/// `⊓^{ε,i}[n]`: the boundary with the face `(ε, i)` omitted, with its
/// inclusion into `□[n]`.
pub fn cap(
    flavor: Flavor,
    n: usize,
    eps: bool,
    i: usize,
    trunc: usize,
) -> Result<(TruncatedCubicalSet, CubicalMap)> {
    guard(n, trunc)?;
    ensure!(i < n, Dimension, "cap index {i} out of range for □[{n}]");
    let rep = representable(flavor, n, trunc)?;
    let faces: Vec<_> = (0..n)
        .flat_map(|k| [(false, k), (true, k)])
        .filter(|&f| f != (eps, i))
        .collect();
    presheaf::subpresheaf(&rep, &through_faces(flavor, n, trunc, &faces))
}

/// Restricts a map into `□[n]` through a sub-presheaf of `□[n]`, given the
/// inclusion of that sub-presheaf. Used to get `cap ⊂ boundary`.
pub fn factor_through(f: &CubicalMap, incl: &CubicalMap) -> Option<CubicalMap> {
    let comps = f
        .components()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            c.iter()
                .map(|&y| incl.component(n).iter().position(|&z| z == y))
                .collect()
        })
        .collect::<Option<Vec<Vec<usize>>>>()?;
    Some(PresheafMap::new(comps))
}

/// Outcome of a cap-filling probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapFillReport {
    pub total_maps: usize,
    pub unfillable: usize,
}

/// For every map `⊓^{ε,i}[n] -> X`, decides whether it extends along the
/// inclusion into `□[n]`. An extension is a cell `z ∈ X(n)` whose faces
/// other than `(ε, i)` are the images of the corresponding cap faces.
pub fn cap_fill_check(
    x: &TruncatedCubicalSet,
    n: usize,
    eps: bool,
    i: usize,
) -> Result<CapFillReport> {
    ensure!(
        n >= 1 && n <= x.trunc(),
        Dimension,
        "cap dimension {n} must lie in 1..={}",
        x.trunc()
    );
    let flavor = x.site().flavor;
    let (cap, incl) = cap(flavor, n, eps, i, x.trunc())?;
    let maps = presheaf::hom_maps(&cap, x, Default::default())?;
    let site = x.site();
    // The (n-1)-faces of the cap, as cells of the cap.
    let mut faces = Vec::new();
    let homs = site.homs(n - 1, n);
    for k in 0..n {
        for e in [false, true] {
            if (e, k) == (eps, i) {
                continue;
            }
            let d = site.gen_mor(Gen {
                kind: GenKind::Face(e),
                index: k,
                src: n - 1,
            });
            let in_rep = homs.position(&d).unwrap();
            let in_cap = incl
                .component(n - 1)
                .iter()
                .position(|&c| c == in_rep)
                .unwrap();
            faces.push((
                Gen {
                    kind: GenKind::Face(e),
                    index: k,
                    src: n - 1,
                },
                in_cap,
            ));
        }
    }
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
    Ok(CapFillReport {
        total_maps: maps.len(),
        unfillable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representable_counts() {
        let p = point(Flavor::Reduced, 3).unwrap();
        assert_eq!(p.counts(), &[1, 1, 1, 1]);
        let i = representable(Flavor::Reduced, 1, 2).unwrap();
        assert_eq!(&i.counts()[..2], &[2, 3]);
        let sq = representable(Flavor::Connections, 2, 2).unwrap();
        assert_eq!(
            sq.count(1),
            crate::cube::hom_count(Flavor::Connections, 1, 2).unwrap()
        );
    }

    #[test]
    fn boundary_counts() {
        let (b0, _) = boundary(Flavor::Reduced, 0, 2).unwrap();
        assert!(b0.is_empty());
        let (b1, _) = boundary(Flavor::Reduced, 1, 2).unwrap();
        assert_eq!(b1.nondegenerate_counts(), vec![2, 0, 0]);
        let (b2, inc) = boundary(Flavor::Reduced, 2, 2).unwrap();
        assert_eq!(&b2.counts()[..2], &[4, 8]);
        assert_eq!(b2.nondegenerate_counts(), vec![4, 4, 0]);
        assert!(inc.is_mono());
    }

    #[test]
    fn caps() {
        let (c, _) = cap(Flavor::Reduced, 1, false, 0, 1).unwrap();
        assert_eq!(c.counts(), &[1, 1]);
        let (c2, inc) = cap(Flavor::Connections, 2, false, 0, 2).unwrap();
        assert_eq!(c2.nondegenerate_counts(), vec![4, 3, 0]);
        let (_, binc) = boundary(Flavor::Connections, 2, 2).unwrap();
        let sub = factor_through(&inc, &binc).expect("cap lies in the boundary");
        assert!(sub.is_mono());
    }

    #[test]
    fn point_fills_every_cap() {
        let p = point(Flavor::Connections, 2).unwrap();
        let rep = cap_fill_check(&p, 2, true, 1).unwrap();
        assert_eq!(
            rep,
            CapFillReport {
                total_maps: 1,
                unfillable: 0
            }
        );
    }
}
