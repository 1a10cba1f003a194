//! Pushout decompositions of boundaries and caps.
//!
//! Each decomposition glues two Day tensors of sub-objects of `□[i]` and
//! `□[j]` along a third. The pushout `P` comes with a canonical map to
//! `□[i] ⊗ □[j] = □[i+j]`; the decomposition holds when that map is injective
//! with image exactly the expected sub-object.

use crate::cube::{CubeMap, Flavor};
use crate::error::{ensure, Result};
use crate::presheaf::{is_isomorphic, pushout, PresheafMap, SearchLimits};
use crate::site::{CubeSite, Site};

use super::{boundary, cap, representable, CubicalMap, DayTensor, TruncatedCubicalSet};

/// Outcome of one decomposition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub name: String,
    /// Cell counts of the pushout.
    pub counts: Vec<usize>,
    /// The comparison map to `□[n]` is injective.
    pub injective: bool,
    /// Its image is the expected sub-object.
    pub image_matches: bool,
    /// An abstract isomorphism to the expected object was found.
    pub isomorphic: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.injective && self.image_matches && self.isomorphic
    }
}

/// A sub-object of `□[k]` with its inclusion.
type Sub = (TruncatedCubicalSet, CubicalMap);

fn whole(flavor: Flavor, k: usize, trunc: usize) -> Result<Sub> {
    let x = representable(flavor, k, trunc)?;
    let id = PresheafMap::identity(&x);
    Ok((x, id))
}

/// Checks the gluing `P = (A1 ⊗ B2) ⊔_{A1 ⊗ B1} (A2 ⊗ B1)` for `A1 ⊆ A2 ⊆ □[i]`,
/// `B1 ⊆ B2 ⊆ □[j]`, against the expected sub-object of `□[i+j]`.
fn glue(
    name: String,
    flavor: Flavor,
    (i, a1, a2): (usize, &Sub, &Sub),
    (j, b1, b2): (usize, &Sub, &Sub),
    expected: &Sub,
    trunc: usize,
) -> Result<Decomposition> {
    let n = i + j;
    ensure!(
        n <= trunc,
        Dimension,
        "decomposition of dimension {n} above truncation {trunc}"
    );
    let corner = DayTensor::new(flavor, trunc, &[&a1.0, &b1.0])?;
    let left = DayTensor::new(flavor, trunc, &[&a1.0, &b2.0])?;
    let right = DayTensor::new(flavor, trunc, &[&a2.0, &b1.0])?;
    // Inclusions among sub-objects, read off from the inclusions into the cube.
    let sub_incl = |small: &Sub, big: &Sub| -> Result<CubicalMap> {
        super::factor_through(&small.1, &big.1).ok_or_else(|| {
            crate::Error::Validation("sub-object is not contained in its ambient".into())
        })
    };
    let id_a1 = PresheafMap::identity(&a1.0);
    let id_b1 = PresheafMap::identity(&b1.0);
    let f = corner.map_to(&left, &[&id_a1, &sub_incl(b1, b2)?])?;
    let g = corner.map_to(&right, &[&sub_incl(a1, a2)?, &id_b1])?;
    let p = pushout(&corner.object, &left.object, &right.object, &f, &g)?;

    // The comparison map P -> □[n].
    let mut comp: Vec<Vec<usize>> = (0..=trunc)
        .map(|d| vec![usize::MAX; p.object.count(d)])
        .collect();
    let mut consistent = true;
    for (t, leg, sa, sb) in [(&left, &p.left, a1, b2), (&right, &p.right, a2, b1)] {
        for d in 0..=trunc {
            for c in 0..t.object.count(d) {
                let (cells, w) = t.representative(d, c);
                let site = CubeSite::new(flavor);
                let a = &site.homs(cells[0].0, i).maps[sa.1.apply(cells[0].0, cells[0].1)];
                let b = &site.homs(cells[1].0, j).maps[sb.1.apply(cells[1].0, cells[1].1)];
                let image = site.homs(d, n).position(&a.tensor(b).after(&w)).unwrap();
                let slot = &mut comp[d][leg.apply(d, c)];
                if *slot != usize::MAX && *slot != image {
                    consistent = false;
                }
                *slot = image;
            }
        }
    }
    ensure!(
        consistent,
        Validation,
        "comparison map out of the pushout is not well defined"
    );
    let comp = CubicalMap::new(comp);
    let cube = representable(flavor, n, trunc)?;
    comp.check(&p.object, &cube)?;
    let injective = comp.is_mono();
    let image_matches = (0..=trunc).all(|d| {
        let mut got: Vec<usize> = comp.component(d).to_vec();
        let mut want: Vec<usize> = expected.1.component(d).to_vec();
        got.sort_unstable();
        want.sort_unstable();
        got == want
    });
    let isomorphic = is_isomorphic(&p.object, &expected.0, SearchLimits::default())?.is_some();
    Ok(Decomposition {
        name,
        counts: p.object.counts().to_vec(),
        injective,
        image_matches,
        isomorphic,
    })
}

/// `∂□[i+j] ≅ ∂□[i] ⊗ □[j] ⊔_{∂□[i] ⊗ ∂□[j]} □[i] ⊗ ∂□[j]`.
pub fn boundary_decomposition(flavor: Flavor, i: usize, j: usize) -> Result<Decomposition> {
    let n = i + j;
    let trunc = n;
    let bi = boundary(flavor, i, trunc)?;
    let bj = boundary(flavor, j, trunc)?;
    glue(
        format!("boundary {i}+{j}"),
        flavor,
        (i, &bi, &whole(flavor, i, trunc)?),
        (j, &bj, &whole(flavor, j, trunc)?),
        &boundary(flavor, n, trunc)?,
        trunc,
    )
}

/// The three cap decompositions, with 0-based cap indices:
///
/// * `Last`: `⊓^{ε,n-1}[n] ≅ ∂□[n-1] ⊗ □[1] ⊔_{∂□[n-1] ⊗ □[0]} □[n-1] ⊗ □[0]`,
/// * `First`: `⊓^{ε,0}[n] ≅ □[1] ⊗ ∂□[n-1] ⊔_{□[0] ⊗ ∂□[n-1]} □[0] ⊗ □[n-1]`,
/// * `Split(i)`: for `1 ≤ i < n`, `⊓^{ε,i-1}[n] ≅ ⊓^{ε,i-1}[i] ⊗ □[n-i]
///   ⊔_{⊓^{ε,i-1}[i] ⊗ ∂□[n-i]} □[i] ⊗ ∂□[n-i]`.
///
/// In the first two, `□[0]` sits in `□[1]` at the end opposite to `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapSplit {
    Last,
    First,
    Split(usize),
}

pub fn cap_decomposition(
    flavor: Flavor,
    n: usize,
    eps: bool,
    split: CapSplit,
) -> Result<Decomposition> {
    ensure!(n >= 1, Dimension, "caps need dimension at least 1");
    let trunc = n;
    // The end of □[1] that the cap keeps, as a sub-object.
    let end = || -> Result<Sub> {
        let pt = representable(flavor, 0, trunc)?;
        let site = CubeSite::new(flavor);
        let v = CubeMap::face(!eps, 0, 0);
        let incl = CubicalMap::new(
            (0..=trunc)
                .map(|d| {
                    let target = site.homs(d, 1);
                    site.homs(d, 0)
                        .maps
                        .iter()
                        .map(|f| target.position(&v.after(f)).unwrap())
                        .collect()
                })
                .collect(),
        );
        incl.check(&pt, &representable(flavor, 1, trunc)?)?;
        Ok((pt, incl))
    };
    match split {
        CapSplit::Last => glue(
            format!("cap {n} eps={} last", eps as u8),
            flavor,
            (
                n - 1,
                &boundary(flavor, n - 1, trunc)?,
                &whole(flavor, n - 1, trunc)?,
            ),
            (1, &end()?, &whole(flavor, 1, trunc)?),
            &cap(flavor, n, eps, n - 1, trunc)?,
            trunc,
        ),
        CapSplit::First => glue(
            format!("cap {n} eps={} first", eps as u8),
            flavor,
            (1, &end()?, &whole(flavor, 1, trunc)?),
            (
                n - 1,
                &boundary(flavor, n - 1, trunc)?,
                &whole(flavor, n - 1, trunc)?,
            ),
            &cap(flavor, n, eps, 0, trunc)?,
            trunc,
        ),
        CapSplit::Split(i) => {
            ensure!(
                i >= 1 && i < n,
                Dimension,
                "split point {i} must lie strictly inside 0..{n}"
            );
            let j = n - i;
            glue(
                format!("cap {n} eps={} split {i}+{j}", eps as u8),
                flavor,
                (
                    i,
                    &cap(flavor, i, eps, i - 1, trunc)?,
                    &whole(flavor, i, trunc)?,
                ),
                (j, &boundary(flavor, j, trunc)?, &whole(flavor, j, trunc)?),
                &cap(flavor, n, eps, i - 1, trunc)?,
                trunc,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_decompositions() {
        for flavor in Flavor::ALL {
            assert!(boundary_decomposition(flavor, 1, 1).unwrap().holds());
            assert!(cap_decomposition(flavor, 2, false, CapSplit::Last)
                .unwrap()
                .holds());
            assert!(cap_decomposition(flavor, 2, true, CapSplit::First)
                .unwrap()
                .holds());
            assert!(cap_decomposition(flavor, 2, true, CapSplit::Split(1))
                .unwrap()
                .holds());
        }
    }
}
