use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{bail, ensure, Result};
use crate::presheaf::Presheaf;
use crate::site::Site;

use super::{guard, Monotone, SimplexSite, TruncatedSimplicialSet};

/// A finite category given by explicit tables.
///
/// Composition is diagrammatic: `then(f, g)` is "`f`, then `g`", defined
/// when `tgt(f) = src(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCategory {
    pub objects: Vec<String>,
    /// `(src, tgt, label)` of each morphism.
    pub morphisms: Vec<(usize, usize, String)>,
    pub identities: Vec<usize>,
    /// `compose[f][g]` is `then(f, g)` when composable.
    pub compose: Vec<Vec<Option<usize>>>,
}

impl FinCategory {
    /// Builds and validates a category from tables.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(usize, usize, String)>,
        identities: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let c = FinCategory {
            objects,
            morphisms,
            identities,
            compose,
        };
        c.validate()?;
        Ok(c)
    }

    /// The category of a finite preorder given by `leq`, with one morphism
    /// `a -> b` whenever `leq(a, b)`. Reflexivity and transitivity are checked.
    pub fn from_preorder(objects: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = objects.len();
        let mut index = HashMap::new();
        let mut morphisms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index.insert((a, b), morphisms.len());
                    morphisms.push((a, b, format!("{}<={}", objects[a], objects[b])));
                }
            }
        }
        let mut identities = Vec::with_capacity(n);
        for a in 0..n {
            match index.get(&(a, a)) {
                Some(&i) => identities.push(i),
                None => bail!(Validation, "preorder is not reflexive at {}", objects[a]),
            }
        }
        let mut compose = vec![vec![None; morphisms.len()]; morphisms.len()];
        for (f, &(a, b, _)) in morphisms.iter().enumerate() {
            for (g, &(b2, c, _)) in morphisms.iter().enumerate() {
                if b == b2 {
                    match index.get(&(a, c)) {
                        Some(&h) => compose[f][g] = Some(h),
                        None => bail!(Validation, "preorder is not transitive"),
                    }
                }
            }
        }
        Self::new(objects, morphisms, identities, compose)
    }

    /// The ordinal `[n] = {0 < 1 < … < n}`.
    pub fn ordinal(n: usize) -> Self {
        Self::from_preorder((0..=n).map(|k| k.to_string()).collect(), |a, b| a <= b)
            .expect("ordinals are posets")
    }

    /// The poset `{0 < 1}^n`, objects named by bit strings with coordinate 0
    /// first. Object `v` corresponds to the cube vertex whose bit `k` is
    /// coordinate `k`.
    pub fn cube_poset(n: usize) -> Self {
        let names = (0..1usize << n)
            .map(|v| {
                (0..n)
                    .map(|k| if v >> k & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect();
        Self::from_preorder(names, |a, b| a & !b == 0).expect("cube posets are posets")
    }

    /// The free commutative square `0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3`.
    pub fn commutative_square() -> Self {
        Self::from_preorder(["0", "1", "2", "3"].map(String::from).to_vec(), |a, b| {
            a == b || a == 0 || b == 3
        })
        .expect("the square is a poset")
    }

    /// The discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        Self::from_preorder((0..n).map(|k| k.to_string()).collect(), |a, b| a == b)
            .expect("discrete categories are posets")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].0
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].1
    }

    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[f][g]
    }

    /// Morphisms `a -> b`, in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].0 == a && self.morphisms[f].1 == b)
            .collect()
    }

    /// Checks typing, units and associativity.
    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.objects.len(), self.morphisms.len());
        ensure!(
            self.identities.len() == n,
            Validation,
            "need one identity per object"
        );
        ensure!(
            self.compose.len() == m && self.compose.iter().all(|r| r.len() == m),
            Validation,
            "composition table must be {m} by {m}"
        );
        for &(a, b, _) in &self.morphisms {
            ensure!(a < n && b < n, Validation, "morphism endpoint out of range");
        }
        for (x, &i) in self.identities.iter().enumerate() {
            ensure!(
                i < m && self.src(i) == x && self.tgt(i) == x,
                Validation,
                "bad identity for object {x}"
            );
        }
        for f in 0..m {
            for g in 0..m {
                let composable = self.tgt(f) == self.src(g);
                match self.compose[f][g] {
                    Some(h) => ensure!(
                        composable
                            && h < m
                            && self.src(h) == self.src(f)
                            && self.tgt(h) == self.tgt(g),
                        Validation,
                        "composite of {f} and {g} is ill-typed"
                    ),
                    None => ensure!(!composable, Validation, "missing composite of {f} and {g}"),
                }
            }
            ensure!(
                self.then(self.identities[self.src(f)], f) == Some(f)
                    && self.then(f, self.identities[self.tgt(f)]) == Some(f),
                Validation,
                "unit law fails for morphism {f}"
            );
        }
        for f in 0..m {
            for g in 0..m {
                let Some(fg) = self.compose[f][g] else {
                    continue;
                };
                for h in 0..m {
                    if let Some(gh) = self.compose[g][h] {
                        ensure!(
                            self.compose[fg][h] == self.compose[f][gh],
                            Validation,
                            "associativity fails for ({f}, {g}, {h})"
                        );
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the two categories are equal after renumbering morphisms,
    /// keeping objects fixed.
    pub fn is_isomorphic_fixing_objects(&self, other: &FinCategory) -> bool {
        if self.objects.len() != other.objects.len()
            || self.morphisms.len() != other.morphisms.len()
        {
            return false;
        }
        let n = self.objects.len();
        (0..n).all(|a| (0..n).all(|b| self.hom(a, b).len() == other.hom(a, b).len()))
            && self.find_iso(other).is_some()
    }

    fn find_iso(&self, other: &FinCategory) -> Option<Vec<usize>> {
        // Backtracking over hom-set bijections; desk-scale only.
        let m = self.morphisms.len();
        let mut map = vec![usize::MAX; m];
        let mut used = vec![false; m];
        fn go(
            c: &FinCategory,
            d: &FinCategory,
            f: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if f == map.len() {
                return (0..map.len()).all(|a| {
                    (0..map.len())
                        .all(|b| c.compose[a][b].map(|h| map[h]) == d.compose[map[a]][map[b]])
                });
            }
            let (a, b, _) = c.morphisms[f];
            for g in d.hom(a, b) {
                if used[g] {
                    continue;
                }
                map[f] = g;
                used[g] = true;
                if go(c, d, f + 1, map, used) {
                    return true;
                }
                used[g] = false;
            }
            map[f] = usize::MAX;
            false
        }
        go(self, other, 0, &mut map, &mut used).then_some(map)
    }
}

/// Composite of a chain of morphisms between vertex positions `a <= b`.
fn chain_composite(c: &FinCategory, objs: &[usize], mors: &[usize], a: usize, b: usize) -> usize {
    (a..b).fold(c.identities[objs[a]], |acc, k| {
        c.then(acc, mors[k]).expect("chain is composable")
    })
}

/// The nerve of a finite category, truncated at `trunc`. A `k`-simplex is a
/// chain of `k` composable morphisms; `k = 0` gives the objects.
pub fn nerve_of_category(c: &FinCategory, trunc: usize) -> Result<TruncatedSimplicialSet> {
    guard(0, trunc)?;
    // Simplices as (objects g_0..g_k, morphisms f_1..f_k).
    let mut levels: Vec<Vec<(Vec<usize>, Vec<usize>)>> = Vec::with_capacity(trunc + 1);
    levels.push(
        (0..c.object_count())
            .map(|x| (vec![x], Vec::new()))
            .collect(),
    );
    for k in 1..=trunc {
        let mut next = Vec::new();
        for (objs, mors) in &levels[k - 1] {
            let last = *objs.last().unwrap();
            for f in (0..c.morphisms.len()).filter(|&f| c.src(f) == last) {
                let mut o = objs.clone();
                o.push(c.tgt(f));
                let mut m = mors.clone();
                m.push(f);
                next.push((o, m));
            }
        }
        ensure!(
            next.len() <= 5_000_000,
            Guard,
            "nerve has too many {k}-simplices"
        );
        levels.push(next);
    }
    let index: Vec<HashMap<&[usize], usize>> = levels
        .iter()
        .map(|l| {
            l.iter()
                .enumerate()
                .map(|(i, (_, m))| (m.as_slice(), i))
                .collect()
        })
        .collect();
    let counts = levels.iter().map(Vec::len).collect();
    let site = SimplexSite;
    let nerve = Presheaf::from_fn(site, trunc, trunc, counts, |g, x| {
        let theta: Monotone = site.gen_mor(g);
        let (objs, mors) = &levels[g.tgt()][x];
        let new_mors: Vec<usize> = (0..theta.src())
            .map(|j| chain_composite(c, objs, mors, theta.values[j], theta.values[j + 1]))
            .collect();
        if g.src == 0 {
            objs[theta.values[0]]
        } else {
            index[g.src][new_mors.as_slice()]
        }
    })?;
    let labels = levels
        .iter()
        .map(|l| {
            l.iter()
                .map(|(objs, mors)| {
                    if mors.is_empty() {
                        c.objects[objs[0]].clone()
                    } else {
                        mors.iter()
                            .map(|&f| c.morphisms[f].2.as_str())
                            .collect::<Vec<_>>()
                            .join(";")
                    }
                })
                .collect()
        })
        .collect();
    let mut nerve = nerve.with_labels(labels);
    let m = nerve.computed_skeleton();
    nerve.set_skeleton(m);
    Ok(nerve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::is_isomorphic;
    use crate::simplicial::{product, simplex};

    #[test]
    fn ordinal_nerves() {
        let n1 = nerve_of_category(&FinCategory::ordinal(1), 3).unwrap();
        let d1 = simplex(1, 3).unwrap();
        assert!(is_isomorphic(&n1, &d1, Default::default())
            .unwrap()
            .is_some());
        let n2 = nerve_of_category(&FinCategory::ordinal(2), 2).unwrap();
        assert_eq!(n2.count(2), 10);
    }

    #[test]
    fn square_nerve_is_a_product() {
        let sq = nerve_of_category(&FinCategory::commutative_square(), 3).unwrap();
        let d1 = simplex(1, 3).unwrap();
        let p = product(&d1, &d1).unwrap();
        assert!(is_isomorphic(&sq, &p, Default::default())
            .unwrap()
            .is_some());
        let cube = nerve_of_category(&FinCategory::cube_poset(2), 3).unwrap();
        assert!(is_isomorphic(&sq, &cube, Default::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn bad_tables_are_rejected() {
        let mut c = FinCategory::ordinal(1);
        c.compose[0][0] = None;
        assert!(c.validate().is_err());
    }
}
