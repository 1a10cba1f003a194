//! Finite colimits, computed pointwise.

use crate::error::{ensure, Result};
use crate::site::Site;
use crate::util::UnionFind;

use super::{Presheaf, PresheafMap};

pub struct Coproduct<S: Site> {
    pub object: Presheaf<S>,
    pub injections: Vec<PresheafMap>,
}

/// Dimensionwise disjoint union. Cells of the `k`-th summand come after
/// those of the earlier summands.
pub fn coproduct<S: Site>(site: &S, trunc: usize, xs: &[&Presheaf<S>]) -> Result<Coproduct<S>> {
    for x in xs {
        ensure!(
            x.site() == site,
            Validation,
            "coproduct summands must share a site"
        );
        ensure!(
            x.trunc() == trunc,
            Validation,
            "coproduct summands must share a truncation"
        );
    }
    let mut offsets = vec![vec![0; trunc + 1]; xs.len() + 1];
    for (k, x) in xs.iter().enumerate() {
        for n in 0..=trunc {
            offsets[k + 1][n] = offsets[k][n] + x.count(n);
        }
    }
    let counts = offsets[xs.len()].clone();
    let skeleton = xs.iter().map(|x| x.skeleton()).max().unwrap_or(0);
    let object = Presheaf::from_fn(site.clone(), trunc, skeleton, counts, |g, c| {
        let k = (0..xs.len()).rfind(|&k| offsets[k][g.tgt()] <= c).unwrap();
        offsets[k][g.src] + xs[k].act(g, c - offsets[k][g.tgt()])
    })?;
    let injections = xs
        .iter()
        .enumerate()
        .map(|(k, x)| {
            PresheafMap::new(
                (0..=trunc)
                    .map(|n| (0..x.count(n)).map(|c| offsets[k][n] + c).collect())
                    .collect(),
            )
        })
        .collect();
    Ok(Coproduct { object, injections })
}

pub struct Pushout<S: Site> {
    pub object: Presheaf<S>,
    /// `X -> P`
    pub left: PresheafMap,
    /// `Y -> P`
    pub right: PresheafMap,
}

/// The pushout of `X <- A -> Y`, computed dimensionwise as a quotient of
/// `X(n) ⊔ Y(n)`.
pub fn pushout<S: Site>(
    a: &Presheaf<S>,
    x: &Presheaf<S>,
    y: &Presheaf<S>,
    f: &PresheafMap,
    g: &PresheafMap,
) -> Result<Pushout<S>> {
    ensure!(
        a.trunc() == x.trunc() && x.trunc() == y.trunc(),
        Validation,
        "pushout legs must share a truncation"
    );
    f.check(a, x)?;
    g.check(a, y)?;
    let trunc = x.trunc();
    let mut class = Vec::new();
    let mut reps = Vec::new();
    for n in 0..=trunc {
        let nx = x.count(n);
        let mut uf = UnionFind::new(nx + y.count(n));
        for c in 0..a.count(n) {
            uf.union(f.apply(n, c), nx + g.apply(n, c));
        }
        let (cl, rp) = uf.classes();
        class.push(cl);
        reps.push(rp);
    }
    let counts = reps.iter().map(Vec::len).collect();
    let skeleton = x.skeleton().max(y.skeleton());
    let object = Presheaf::from_fn(x.site().clone(), trunc, skeleton, counts, |gen, c| {
        let (src, tgt) = (gen.src, gen.tgt());
        let r = reps[tgt][c];
        let nx = x.count(tgt);
        let image = if r < nx {
            x.act(gen, r)
        } else {
            x.count(src) + y.act(gen, r - nx)
        };
        class[src][image]
    })?;
    let left = PresheafMap::new(
        (0..=trunc)
            .map(|n| class[n][..x.count(n)].to_vec())
            .collect(),
    );
    let right = PresheafMap::new(
        (0..=trunc)
            .map(|n| class[n][x.count(n)..].to_vec())
            .collect(),
    );
    Ok(Pushout {
        object,
        left,
        right,
    })
}
