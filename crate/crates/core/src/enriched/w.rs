//! The cubical categories `W_n` and their coface and codegeneracy functors.
//!
//! `W_n(i, j) = □_c[j-i-1]` for `i < j`. Coordinate `t` of that cube stands
//! for the intermediate object `i + 1 + t`; a vertex records which
//! intermediate objects a composite passes through. Composition inserts a
//! 1 for the middle object.

use crate::cube::{CubeMap, Flavor};
use crate::cubical::{empty, point, representable, CubicalMap};
use crate::error::{ensure, Result};
use crate::site::{CubeSite, Site};

use super::{CubicalCategory, CubicalFunctor, CubicalQuiver};

fn hom_dim(i: usize, j: usize) -> Option<usize> {
    (i < j).then(|| j - i - 1)
}

/// `W_n` with homs truncated at `trunc >= n - 1`.
pub fn w_category(n: usize, trunc: usize) -> Result<CubicalCategory> {
    ensure!(
        trunc + 1 >= n,
        Dimension,
        "W_{n} needs truncation at least {}",
        n.saturating_sub(1)
    );
    let f = Flavor::Connections;
    let site = CubeSite::new(f);
    let homs = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| match hom_dim(i, j) {
                    Some(d) => representable(f, d, trunc),
                    None if i == j => point(f, trunc),
                    None => Ok(empty(f, trunc)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let quiver = CubicalQuiver::new((0..=n).map(|k| k.to_string()).collect(), homs)?;
    CubicalCategory::with_point_units(quiver, |i, j, k, (p, a), (q, b)| {
        let (dij, djk) = (j - i - 1, k - j - 1);
        let fa = &site.homs(p, dij).maps[a];
        let fb = &site.homs(q, djk).maps[b];
        let c = CubeMap::face(true, dij, dij + djk).after(&fa.tensor(fb));
        Ok(site
            .homs(p + q, k - i - 1)
            .position(&c)
            .expect("composite is a cube map"))
    })
}

/// The cube map `W_n(a, b) -> W_{n+1}(δa, δb)` induced by the coface `δ^i`.
pub fn w_coface_map(i: usize, a: usize, b: usize) -> CubeMap {
    let d = b - a - 1;
    if a < i && i <= b {
        CubeMap::face(false, i - a - 1, d)
    } else {
        CubeMap::identity(d)
    }
}

/// The cube map `W_n(a, b) -> W_{n-1}(σa, σb)` induced by the codegeneracy
/// `σ^i`, which identifies `i` and `i + 1`.
pub fn w_codegeneracy_map(i: usize, a: usize, b: usize) -> CubeMap {
    let d = b - a - 1;
    if a < i && b > i + 1 {
        CubeMap::connection(i - a - 1, d)
    } else if a < i && b == i + 1 {
        CubeMap::degeneracy(i - a - 1, d)
    } else if a == i && b > i + 1 {
        CubeMap::degeneracy(0, d)
    } else {
        // Includes a = i, b = i + 1, where both ends land on the point.
        CubeMap::identity(d)
    }
}

fn coface(i: usize, x: usize) -> usize {
    if x < i {
        x
    } else {
        x + 1
    }
}

fn codegeneracy(i: usize, x: usize) -> usize {
    if x <= i {
        x
    } else {
        x - 1
    }
}

/// Postcomposition with `h` on representables, as a map `□[h.src] -> □[h.tgt]`.
fn postcompose(h: &CubeMap, trunc: usize) -> CubicalMap {
    let site = CubeSite::new(Flavor::Connections);
    CubicalMap::new(
        (0..=trunc)
            .map(|m| {
                let target = site.homs(m, h.tgt());
                site.homs(m, h.src())
                    .maps
                    .iter()
                    .map(|f| target.position(&h.after(f)).unwrap())
                    .collect()
            })
            .collect(),
    )
}

fn induced(
    n: usize,
    trunc: usize,
    objects: impl Fn(usize) -> usize,
    hom: impl Fn(usize, usize) -> CubeMap,
) -> CubicalFunctor {
    let homs = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| {
                    if a < b {
                        postcompose(&hom(a, b), trunc)
                    } else if a == b {
                        postcompose(&CubeMap::identity(0), trunc)
                    } else {
                        CubicalMap::from_empty(trunc)
                    }
                })
                .collect()
        })
        .collect();
    CubicalFunctor::new((0..=n).map(objects).collect(), homs)
}

/// The functor `W_n -> W_{n+1}` induced by `δ^i: [n] -> [n+1]`.
pub fn w_coface(i: usize, n: usize, trunc: usize) -> Result<CubicalFunctor> {
    ensure!(
        i <= n + 1,
        Dimension,
        "coface index {i} out of range for W_{n}"
    );
    ensure!(
        trunc >= n,
        Dimension,
        "W_{} needs truncation at least {n}",
        n + 1
    );
    Ok(induced(
        n,
        trunc,
        |x| coface(i, x),
        |a, b| w_coface_map(i, a, b),
    ))
}

/// The functor `W_n -> W_{n-1}` induced by `σ^i: [n] -> [n-1]`.
pub fn w_codegeneracy(i: usize, n: usize, trunc: usize) -> Result<CubicalFunctor> {
    ensure!(
        i < n,
        Dimension,
        "codegeneracy index {i} out of range for W_{n}"
    );
    ensure!(
        trunc + 1 >= n,
        Dimension,
        "W_{n} needs truncation at least {}",
        n - 1
    );
    Ok(induced(
        n,
        trunc,
        |x| codegeneracy(i, x),
        |a, b| w_codegeneracy_map(i, a, b),
    ))
}

/// Validates every coface and codegeneracy functor among `W_0, …, W_n` and
/// checks all cosimplicial identities. Returns the number of identity
/// instances checked.
pub fn check_cosimplicial_identities(n: usize) -> Result<usize> {
    let trunc = n.saturating_sub(1).max(1);
    let ws = (0..=n)
        .map(|k| w_category(k, trunc))
        .collect::<Result<Vec<_>>>()?;
    // d[k][i]: W_k -> W_{k+1}; s[k][i]: W_k -> W_{k-1}.
    let mut d = Vec::new();
    let mut s = Vec::new();
    for k in 0..=n {
        let mut dk = Vec::new();
        if k < n {
            for i in 0..=k + 1 {
                let f = w_coface(i, k, trunc)?;
                f.validate(&ws[k], &ws[k + 1])?;
                dk.push(f);
            }
        }
        d.push(dk);
        let mut sk = Vec::new();
        for i in 0..k {
            let f = w_codegeneracy(i, k, trunc)?;
            f.validate(&ws[k], &ws[k - 1])?;
            sk.push(f);
        }
        s.push(sk);
    }
    let mut checked = 0;
    let mut expect = |lhs: CubicalFunctor, rhs: CubicalFunctor, what: String| -> Result<()> {
        ensure!(
            lhs == rhs,
            Validation,
            "cosimplicial identity fails: {what}"
        );
        checked += 1;
        Ok(())
    };
    // Functors compose like the maps of Δ: `g.after(f)` is "f, then g".
    for k in 0..=n {
        // δ^j δ^i = δ^i δ^{j-1} for i < j, as maps [k] -> [k+2].
        if k + 2 <= n {
            for j in 0..=k + 2 {
                for i in 0..j {
                    expect(
                        d[k + 1][j].after(&d[k][i]),
                        d[k + 1][i].after(&d[k][j - 1]),
                        format!("d{j} d{i} = d{i} d{} on W_{k}", j - 1),
                    )?;
                }
            }
        }
        // σ^j σ^i = σ^i σ^{j+1} for i <= j, as maps [k] -> [k-2].
        if k >= 2 {
            for j in 0..k - 1 {
                for i in 0..=j {
                    expect(
                        s[k - 1][j].after(&s[k][i]),
                        s[k - 1][i].after(&s[k][j + 1]),
                        format!("s{j} s{i} = s{i} s{} on W_{k}", j + 1),
                    )?;
                }
            }
        }
        // Mixed relations, as maps [k] -> [k].
        if k < n {
            for j in 0..=k {
                for i in 0..=k + 1 {
                    let lhs = s[k + 1][j].after(&d[k][i]);
                    let rhs = if i < j {
                        d[k - 1][i].after(&s[k][j - 1])
                    } else if i == j || i == j + 1 {
                        CubicalFunctor::identity(&ws[k])
                    } else {
                        d[k - 1][i - 1].after(&s[k][j])
                    };
                    expect(lhs, rhs, format!("s{j} d{i} on W_{k}"))?;
                }
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::underlying;

    #[test]
    fn small_w() {
        let w1 = w_category(1, 1).unwrap();
        let s = underlying(&w1).unwrap();
        assert!(s.is_isomorphic_fixing_objects(&crate::simplicial::FinCategory::ordinal(1)));
        let w3 = w_category(3, 2).unwrap();
        assert_eq!(
            w3.hom(0, 3).counts(),
            representable(Flavor::Connections, 2, 2).unwrap().counts()
        );
        assert_eq!(underlying(&w3).unwrap().hom(0, 3).len(), 4);
    }

    #[test]
    fn identities_hold() {
        assert!(check_cosimplicial_identities(3).unwrap() > 0);
    }
}
