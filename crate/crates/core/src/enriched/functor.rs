use std::collections::HashMap;

use crate::cubical::CubicalMap;
use crate::error::{ensure, Result};
use crate::presheaf::{hom_maps, SearchLimits};

use super::CubicalCategory;

/// An enriched functor: an object function and one cubical map per hom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalFunctor {
    pub objects: Vec<usize>,
    /// `homs[x][y]: A(x, y) -> B(Fx, Fy)`.
    pub homs: Vec<Vec<CubicalMap>>,
}

impl CubicalFunctor {
    pub fn new(objects: Vec<usize>, homs: Vec<Vec<CubicalMap>>) -> Self {
        CubicalFunctor { objects, homs }
    }

    pub fn identity(c: &CubicalCategory) -> Self {
        let n = c.object_count();
        CubicalFunctor {
            objects: (0..n).collect(),
            homs: (0..n)
                .map(|x| (0..n).map(|y| CubicalMap::identity(c.hom(x, y))).collect())
                .collect(),
        }
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn after(&self, f: &CubicalFunctor) -> CubicalFunctor {
        let n = f.objects.len();
        CubicalFunctor {
            objects: f.objects.iter().map(|&x| self.objects[x]).collect(),
            homs: (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| self.homs[f.objects[x]][f.objects[y]].after(&f.homs[x][y]))
                        .collect()
                })
                .collect(),
        }
    }

    /// Checks that every hom map is natural, units go to units and
    /// composition is preserved on all pure pairs.
    pub fn validate(&self, a: &CubicalCategory, b: &CubicalCategory) -> Result<()> {
        let n = a.object_count();
        ensure!(
            a.trunc() <= b.trunc(),
            Dimension,
            "functor lowers the truncation"
        );
        ensure!(
            self.objects.len() == n && self.objects.iter().all(|&y| y < b.object_count()),
            Validation,
            "object function has the wrong shape"
        );
        for x in 0..n {
            for y in 0..n {
                self.homs[x][y].check(a.hom(x, y), b.hom(self.objects[x], self.objects[y]))?;
            }
            ensure!(
                self.homs[x][x].apply(0, a.unit(x)) == b.unit(self.objects[x]),
                Validation,
                "functor does not preserve the unit of {}",
                a.objects()[x]
            );
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    ensure!(
                        preserves(
                            a,
                            b,
                            &self.objects,
                            (x, y, z),
                            (&self.homs[x][y], &self.homs[y][z], &self.homs[x][z])
                        ),
                        Validation,
                        "functor does not preserve composition on ({x},{y},{z})"
                    );
                }
            }
        }
        Ok(())
    }
}

fn preserves(
    a: &CubicalCategory,
    b: &CubicalCategory,
    obj: &[usize],
    (x, y, z): (usize, usize, usize),
    (fxy, fyz, fxz): (&CubicalMap, &CubicalMap, &CubicalMap),
) -> bool {
    let t = a.trunc();
    let (hxy, hyz) = (a.hom(x, y), a.hom(y, z));
    for p in 0..=t {
        for q in 0..=t - p {
            for c1 in 0..hxy.count(p) {
                for c2 in 0..hyz.count(q) {
                    let lhs = fxz.apply(p + q, a.compose(x, y, z, (p, c1), (q, c2)));
                    let rhs = b.compose(
                        obj[x],
                        obj[y],
                        obj[z],
                        (p, fxy.apply(p, c1)),
                        (q, fyz.apply(q, c2)),
                    );
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every enriched functor `A -> B`, in lexicographic order of the object
/// function and then of the hom maps. Pairs of objects are assigned with
/// the endo-homs first, so the unit condition prunes early.
pub fn enumerate_functors(
    a: &CubicalCategory,
    b: &CubicalCategory,
    limits: SearchLimits,
) -> Result<Vec<CubicalFunctor>> {
    ensure!(
        a.flavor() == b.flavor(),
        Flavor,
        "functors must stay within one flavor"
    );
    ensure!(
        a.trunc() <= b.trunc(),
        Dimension,
        "source truncation {} exceeds target truncation {}",
        a.trunc(),
        b.trunc()
    );
    let (n, m) = (a.object_count(), b.object_count());
    let total = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    ensure!(
        total <= limits.max_results as u128,
        Guard,
        "{m}^{n} object functions exceed the bound"
    );
    let mut order: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    rest.sort_by_key(|&(x, y)| (x.abs_diff(y), x, y));
    order.extend(rest);
    let mut cache: HashMap<(usize, usize, usize, usize), Vec<CubicalMap>> = HashMap::new();
    let mut out = Vec::new();
    let mut obj = vec![0; n];
    for code in 0..total as usize {
        let mut c = code;
        for o in obj.iter_mut().rev() {
            *o = c % m;
            c /= m;
        }
        let mut candidates: Vec<Vec<CubicalMap>> = Vec::with_capacity(order.len());
        let mut dead = false;
        for &(x, y) in &order {
            let key = (x, y, obj[x], obj[y]);
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
                let maps = hom_maps(a.hom(x, y), b.hom(obj[x], obj[y]), limits)?;
                e.insert(maps);
            }
            let mut maps = cache[&key].clone();
            if x == y {
                maps.retain(|f| f.apply(0, a.unit(x)) == b.unit(obj[x]));
            }
            if maps.is_empty() {
                dead = true;
                break;
            }
            candidates.push(maps);
        }
        if dead {
            continue;
        }
        let mut assigned: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
        search(
            a,
            b,
            &obj,
            &order,
            &candidates,
            0,
            &mut assigned,
            &mut out,
            limits,
        )?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &CubicalCategory,
    b: &CubicalCategory,
    obj: &[usize],
    order: &[(usize, usize)],
    candidates: &[Vec<CubicalMap>],
    depth: usize,
    assigned: &mut Vec<Vec<Option<usize>>>,
    out: &mut Vec<CubicalFunctor>,
    limits: SearchLimits,
) -> Result<()> {
    if depth == order.len() {
        ensure!(
            out.len() < limits.max_results,
            Guard,
            "more than {} functors",
            limits.max_results
        );
        let n = obj.len();
        let index: HashMap<(usize, usize), usize> =
            order.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let homs = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| candidates[index[&(x, y)]][assigned[x][y].unwrap()].clone())
                    .collect()
            })
            .collect();
        out.push(CubicalFunctor::new(obj.to_vec(), homs));
        return Ok(());
    }
    let (x, y) = order[depth];
    let n = obj.len();
    let pos: HashMap<(usize, usize), usize> =
        order.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let map_of = |assigned: &Vec<Vec<Option<usize>>>, u: usize, v: usize| {
        assigned[u][v].map(|k| &candidates[pos[&(u, v)]][k])
    };
    for k in 0..candidates[depth].len() {
        assigned[x][y] = Some(k);
        // Check every composable triple whose three homs are now assigned
        // and which involves (x, y).
        let mut ok = true;
        'triples: for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let involved = (u, v) == (x, y) || (v, w) == (x, y) || (u, w) == (x, y);
                    if !involved {
                        continue;
                    }
                    let (Some(f1), Some(f2), Some(f3)) = (
                        map_of(assigned, u, v),
                        map_of(assigned, v, w),
                        map_of(assigned, u, w),
                    ) else {
                        continue;
                    };
                    if !preserves(a, b, obj, (u, v, w), (f1, f2, f3)) {
                        ok = false;
                        break 'triples;
                    }
                }
            }
        }
        if ok {
            search(
                a,
                b,
                obj,
                order,
                candidates,
                depth + 1,
                assigned,
                out,
                limits,
            )?;
        }
    }
    assigned[x][y] = None;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Flavor;
    use crate::enriched::{discrete_enrich, point_category, w_category};
    use crate::simplicial::FinCategory;

    #[test]
    fn functor_counts() {
        let f = Flavor::Connections;
        let c = discrete_enrich(&FinCategory::ordinal(2), f, 2).unwrap();
        let pt = point_category(f, 2).unwrap();
        assert_eq!(
            enumerate_functors(&pt, &c, Default::default())
                .unwrap()
                .len(),
            3
        );
        let w1 = w_category(1, 2).unwrap();
        assert_eq!(
            enumerate_functors(&w1, &c, Default::default())
                .unwrap()
                .len(),
            6
        );
        let w2 = w_category(2, 2).unwrap();
        let fs = enumerate_functors(&w2, &c, Default::default()).unwrap();
        assert_eq!(fs.len(), 10);
        for g in &fs {
            g.validate(&w2, &c).unwrap();
        }
    }
}
