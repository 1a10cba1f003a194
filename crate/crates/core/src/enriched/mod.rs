//! Categories enriched in truncated cubical sets, the cosimplicial cubical
//! category `W` and the homotopy coherent nerve.
//!
//! Composition is diagrammatic: `m_{x,y,z}: C(x,y) ⊗ C(y,z) -> C(x,z)`. A
//! map out of a Day tensor is determined by its values on pure tensors
//! `a ⊗ b`, so composition is stored as one table per object triple and pair
//! of dimensions `(p, q)` with `p + q` at most the truncation. The validator
//! checks that the tables are natural in each variable, which is exactly the
//! condition for them to define a map out of the coend.

mod dg;
mod functor;
mod nerve;
mod w;

use std::collections::HashMap;

use crate::cube::{CubeMap, Flavor};
use crate::cubical::{point, CubicalMap, DayTensor, TruncatedCubicalSet};
use crate::error::{bail, ensure, Result};
use crate::presheaf::{coproduct, Presheaf};
use crate::simplicial::FinCategory;
use crate::site::{CubeSite, Gen, Site};

pub use dg::{dg_category_nerve, DgCategory};
pub use functor::{enumerate_functors, CubicalFunctor};
pub use nerve::{hc_nerve, pairs, HcNerve};
pub use w::{
    check_cosimplicial_identities, w_category, w_codegeneracy, w_codegeneracy_map, w_coface,
    w_coface_map,
};

/// Objects and hom cubical sets, all of one flavor and truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicalQuiver {
    pub objects: Vec<String>,
    flavor: Flavor,
    trunc: usize,
    homs: Vec<Vec<TruncatedCubicalSet>>,
}

impl CubicalQuiver {
    /// `homs[x][y]` is the hom from `x` to `y`.
    pub fn new(objects: Vec<String>, homs: Vec<Vec<TruncatedCubicalSet>>) -> Result<Self> {
        let n = objects.len();
        ensure!(n > 0, Validation, "a quiver needs at least one object");
        ensure!(
            homs.len() == n && homs.iter().all(|r| r.len() == n),
            Validation,
            "expected a {n} x {n} table of homs"
        );
        let first = &homs[0][0];
        let (flavor, trunc) = (first.site().flavor, first.trunc());
        for (x, row) in homs.iter().enumerate() {
            for (y, h) in row.iter().enumerate() {
                ensure!(
                    h.site().flavor == flavor,
                    Flavor,
                    "hom ({x},{y}) has flavor {}",
                    h.site().flavor
                );
                ensure!(
                    h.trunc() == trunc,
                    Validation,
                    "hom ({x},{y}) is truncated at {}, not {trunc}",
                    h.trunc()
                );
            }
        }
        let mut seen = std::collections::HashSet::new();
        for o in &objects {
            ensure!(seen.insert(o), Validation, "duplicate object name {o}");
        }
        Ok(CubicalQuiver {
            objects,
            flavor,
            trunc,
            homs,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn hom(&self, x: usize, y: usize) -> &TruncatedCubicalSet {
        &self.homs[x][y]
    }
}

/// Composition table for one object triple: `table[p][q][a * n_q + b]` is
/// `m(a ⊗ b)` for `a` of dimension `p` and `b` of dimension `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CompTable {
    table: Vec<Vec<Vec<usize>>>,
}

/// A category enriched in truncated cubical sets.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicalCategory {
    quiver: CubicalQuiver,
    units: Vec<usize>,
    comp: Vec<CompTable>,
}

/// The cell `t ⊗ a` (or `a ⊗ t`) of `□[0] ⊗ X ≅ X`, where `t` is the
/// `p`-cell of the point: the degeneracy of `a` along the terminal map.
fn unit_action(x: &TruncatedCubicalSet, p: usize, (q, a): (usize, usize), left: bool) -> usize {
    let t = CubeMap::terminal(p);
    let f = if left {
        t.tensor(&CubeMap::identity(q))
    } else {
        CubeMap::identity(q).tensor(&t)
    };
    x.act_mor(&f, a)
}

impl CubicalCategory {
    /// Builds the tables from `m(x, y, z, (p, a), (q, b))` and validates.
    pub fn from_fn(
        quiver: CubicalQuiver,
        units: Vec<usize>,
        mut m: impl FnMut(usize, usize, usize, (usize, usize), (usize, usize)) -> Result<usize>,
    ) -> Result<Self> {
        let n = quiver.object_count();
        let t = quiver.trunc;
        ensure!(units.len() == n, Validation, "expected {n} units");
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz, hxz) = (quiver.hom(x, y), quiver.hom(y, z), quiver.hom(x, z));
                    let mut table = Vec::with_capacity(t + 1);
                    for p in 0..=t {
                        let mut row = Vec::with_capacity(t + 1 - p);
                        for q in 0..=t - p {
                            let mut cells = Vec::with_capacity(hxy.count(p) * hyz.count(q));
                            for a in 0..hxy.count(p) {
                                for b in 0..hyz.count(q) {
                                    let c = m(x, y, z, (p, a), (q, b))?;
                                    ensure!(
                                        c < hxz.count(p + q),
                                        Validation,
                                        "composite of ({x},{y}) and ({y},{z}) cells is not a cell"
                                    );
                                    cells.push(c);
                                }
                            }
                            row.push(cells);
                        }
                        table.push(row);
                    }
                    comp.push(CompTable { table });
                }
            }
        }
        let c = CubicalCategory {
            quiver,
            units,
            comp,
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds a category whose hom `(x, x)` is the point whenever `x` is
    /// only composed through units there; `m` is consulted only for triples
    /// with `x != y` and `y != z`.
    pub fn with_point_units(
        quiver: CubicalQuiver,
        mut m: impl FnMut(usize, usize, usize, (usize, usize), (usize, usize)) -> Result<usize>,
    ) -> Result<Self> {
        let n = quiver.object_count();
        for x in 0..n {
            ensure!(
                quiver.hom(x, x).counts().iter().all(|&c| c == 1),
                Validation,
                "endo-hom of {} is not a point",
                quiver.objects[x]
            );
        }
        let q2 = quiver.clone();
        Self::from_fn(quiver, vec![0; n], move |x, y, z, (p, a), (q, b)| {
            if x == y {
                Ok(unit_action(q2.hom(y, z), p, (q, b), true))
            } else if y == z {
                Ok(unit_action(q2.hom(x, y), q, (p, a), false))
            } else {
                m(x, y, z, (p, a), (q, b))
            }
        })
    }

    pub fn quiver(&self) -> &CubicalQuiver {
        &self.quiver
    }

    pub fn objects(&self) -> &[String] {
        &self.quiver.objects
    }

    pub fn object_count(&self) -> usize {
        self.quiver.object_count()
    }

    pub fn flavor(&self) -> Flavor {
        self.quiver.flavor
    }

    pub fn trunc(&self) -> usize {
        self.quiver.trunc
    }

    pub fn hom(&self, x: usize, y: usize) -> &TruncatedCubicalSet {
        self.quiver.hom(x, y)
    }

    /// The vertex `u_x` of `C(x, x)`.
    pub fn unit(&self, x: usize) -> usize {
        self.units[x]
    }

    /// `m(a ⊗ b)` for `a ∈ C(x,y)(p)`, `b ∈ C(y,z)(q)`, `p + q ≤ trunc`.
    pub fn compose(
        &self,
        x: usize,
        y: usize,
        z: usize,
        (p, a): (usize, usize),
        (q, b): (usize, usize),
    ) -> usize {
        let n = self.object_count();
        let t = &self.comp[(x * n + y) * n + z];
        t.table[p][q][a * self.hom(y, z).count(q) + b]
    }

    /// The composition map out of the Day tensor `C(x,y) ⊗ C(y,z)`.
    pub fn composition_map(&self, x: usize, y: usize, z: usize) -> Result<(DayTensor, CubicalMap)> {
        let tensor = DayTensor::new(
            self.flavor(),
            self.trunc(),
            &[self.hom(x, y), self.hom(y, z)],
        )?;
        let hxz = self.hom(x, z);
        let comps = (0..=self.trunc())
            .map(|n| {
                (0..tensor.object.count(n))
                    .map(|c| {
                        let (cells, w) = tensor.representative(n, c);
                        hxz.act_mor(&w, self.compose(x, y, z, cells[0], cells[1]))
                    })
                    .collect()
            })
            .collect();
        let map = CubicalMap::new(comps);
        map.check(&tensor.object, hxz)?;
        Ok((tensor, map))
    }

    /// Checks well-definedness of the tables, the unit laws and
    /// associativity, cellwise up to the truncation.
    pub fn validate(&self) -> Result<()> {
        let n = self.object_count();
        let t = self.trunc();
        let site = CubeSite::new(self.flavor());
        for x in 0..n {
            ensure!(
                self.units[x] < self.hom(x, x).count(0),
                Validation,
                "unit of {} is not a vertex",
                self.objects()[x]
            );
        }
        let gens = site.generators(t);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz) = (self.hom(x, y), self.hom(y, z));
                    if hxy.is_empty() || hyz.is_empty() {
                        continue;
                    }
                    for p in 0..=t {
                        for q in 0..=t - p {
                            for a in 0..hxy.count(p) {
                                for b in 0..hyz.count(q) {
                                    let c = self.compose(x, y, z, (p, a), (q, b));
                                    self.check_natural(&gens, (x, y, z), (p, a), (q, b), c)?;
                                }
                            }
                        }
                    }
                }
            }
        }
        // Units.
        for x in 0..n {
            for y in 0..n {
                let h = self.hom(x, y);
                for p in 0..=t {
                    for a in 0..h.count(p) {
                        let l = self.compose(x, x, y, (0, self.units[x]), (p, a));
                        let r = self.compose(x, y, y, (p, a), (0, self.units[y]));
                        ensure!(
                            l == a && r == a,
                            Validation,
                            "unit law fails at ({},{}) on cell {}",
                            self.objects()[x],
                            self.objects()[y],
                            h.label(p, a)
                        );
                    }
                }
            }
        }
        // Associativity on pure triples.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let (h1, h2, h3) = (self.hom(x, y), self.hom(y, z), self.hom(z, w));
                        if h1.is_empty() || h2.is_empty() || h3.is_empty() {
                            continue;
                        }
                        for p in 0..=t {
                            for q in 0..=t - p {
                                for r in 0..=t - p - q {
                                    for a in 0..h1.count(p) {
                                        for b in 0..h2.count(q) {
                                            let ab = self.compose(x, y, z, (p, a), (q, b));
                                            for c in 0..h3.count(r) {
                                                let bc = self.compose(y, z, w, (q, b), (r, c));
                                                let lhs =
                                                    self.compose(x, z, w, (p + q, ab), (r, c));
                                                let rhs =
                                                    self.compose(x, y, w, (p, a), (q + r, bc));
                                                ensure!(
                                                    lhs == rhs,
                                                    Validation,
                                                    "composition is not associative on ({x},{y},{z},{w}) in dimensions ({p},{q},{r})"
                                                );
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `m(X(g) a ⊗ b) = C(g ⊗ id) m(a ⊗ b)` and the same on the right, for
    /// every generator `g` that stays within the truncation.
    fn check_natural(
        &self,
        gens: &[Gen],
        (x, y, z): (usize, usize, usize),
        (p, a): (usize, usize),
        (q, b): (usize, usize),
        c: usize,
    ) -> Result<()> {
        let site = CubeSite::new(self.flavor());
        let t = self.trunc();
        let (hxy, hyz, hxz) = (self.hom(x, y), self.hom(y, z), self.hom(x, z));
        for &g in gens {
            if g.tgt() == p && g.src + q <= t {
                let lift = site.gen_mor(g).tensor(&CubeMap::identity(q));
                let lhs = self.compose(x, y, z, (g.src, hxy.act(g, a)), (q, b));
                ensure!(
                    lhs == hxz.act_mor(&lift, c),
                    Validation,
                    "composition is not natural in the first variable for {g}"
                );
            }
            if g.tgt() == q && p + g.src <= t {
                let lift = CubeMap::identity(p).tensor(&site.gen_mor(g));
                let lhs = self.compose(x, y, z, (p, a), (g.src, hyz.act(g, b)));
                ensure!(
                    lhs == hxz.act_mor(&lift, c),
                    Validation,
                    "composition is not natural in the second variable for {g}"
                );
            }
        }
        Ok(())
    }

    /// Restriction of every hom to dimensions `0..=n`.
    pub fn truncate(&self, n: usize) -> Result<CubicalCategory> {
        let k = self.object_count();
        let homs = (0..k)
            .map(|x| (0..k).map(|y| self.hom(x, y).truncate(n)).collect())
            .collect::<Result<_>>()?;
        let quiver = CubicalQuiver::new(self.objects().to_vec(), homs)?;
        Self::from_fn(quiver, self.units.clone(), |x, y, z, a, b| {
            Ok(self.compose(x, y, z, a, b))
        })
    }
}

/// `*_𝟙`: one object with the point as endo-hom.
pub fn point_category(flavor: Flavor, trunc: usize) -> Result<CubicalCategory> {
    let quiver = CubicalQuiver::new(vec!["*".into()], vec![vec![point(flavor, trunc)?]])?;
    CubicalCategory::with_point_units(quiver, |_, _, _, _, _| unreachable!())
}

/// `[1]_X`: objects `0, 1` with `hom(0,1) = X`, points on the diagonal and
/// nothing from `1` to `0`.
pub fn arrow_category(x: &TruncatedCubicalSet) -> Result<CubicalCategory> {
    let (flavor, t) = (x.site().flavor, x.trunc());
    let pt = point(flavor, t)?;
    let empty = crate::cubical::empty(flavor, t);
    let quiver = CubicalQuiver::new(
        vec!["0".into(), "1".into()],
        vec![vec![pt.clone(), x.clone()], vec![empty, pt]],
    )?;
    CubicalCategory::with_point_units(quiver, |_, _, _, _, _| {
        bail!(Validation, "no composable pair avoids units")
    })
}

/// `i(C)`: each hom is the discrete cubical set on the hom-set of `C`.
pub fn discrete_enrich(c: &FinCategory, flavor: Flavor, trunc: usize) -> Result<CubicalCategory> {
    c.validate()?;
    let n = c.object_count();
    let site = CubeSite::new(flavor);
    ensure!(
        trunc <= crate::cube::DIM_GUARD,
        Guard,
        "truncation {trunc} exceeds the guard"
    );
    let homs: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|x| (0..n).map(|y| c.hom(x, y)).collect())
        .collect();
    let sets = homs
        .iter()
        .map(|row| {
            row.iter()
                .map(|h| {
                    let x = Presheaf::from_fn(site, trunc, 0, vec![h.len(); trunc + 1], |_, k| k)?;
                    let labels = (0..=trunc)
                        .map(|_| h.iter().map(|&f| c.morphisms[f].2.clone()).collect())
                        .collect();
                    Ok(x.with_labels(labels))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let quiver = CubicalQuiver::new(c.objects.clone(), sets)?;
    let units = (0..n)
        .map(|x| {
            homs[x][x]
                .iter()
                .position(|&f| f == c.identities[x])
                .unwrap()
        })
        .collect();
    CubicalCategory::from_fn(quiver, units, |x, y, z, (_, a), (_, b)| {
        let f = c
            .then(homs[x][y][a], homs[y][z][b])
            .expect("composable by typing");
        Ok(homs[x][z].iter().position(|&g| g == f).unwrap())
    })
}

/// `S(C)`: vertices of the homs, composed in dimension 0.
pub fn underlying(c: &CubicalCategory) -> Result<FinCategory> {
    let n = c.object_count();
    let mut index = HashMap::new();
    let mut morphisms = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let h = c.hom(x, y);
            for v in 0..h.count(0) {
                index.insert((x, y, v), morphisms.len());
                morphisms.push((x, y, h.label(0, v)));
            }
        }
    }
    let identities = (0..n).map(|x| index[&(x, x, c.unit(x))]).collect();
    let mut compose = vec![vec![None; morphisms.len()]; morphisms.len()];
    for (&(x, y, a), &f) in &index {
        for z in 0..n {
            for b in 0..c.hom(y, z).count(0) {
                let g = index[&(y, z, b)];
                compose[f][g] = Some(index[&(x, z, c.compose(x, y, z, (0, a), (0, b)))]);
            }
        }
    }
    FinCategory::new(c.objects().to_vec(), morphisms, identities, compose)
}

/// `𝕋(Q)`: the free category on a quiver. Homs are coproducts over paths of
/// the Day tensors of the homs along the path, with the point for the empty
/// path; composition concatenates paths. Fails if a path longer than
/// `path_bound` has a nonempty tensor.
pub fn free_category(q: &CubicalQuiver, path_bound: usize) -> Result<CubicalCategory> {
    let n = q.object_count();
    let nonempty = |x: usize, y: usize| !q.hom(x, y).is_empty();
    // Paths as object sequences, by length.
    let mut paths: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    let mut frontier = paths.clone();
    for len in 1..=path_bound + 1 {
        let mut next = Vec::new();
        for p in &frontier {
            let last = *p.last().unwrap();
            for y in (0..n).filter(|&y| nonempty(last, y)) {
                let mut p2 = p.clone();
                p2.push(y);
                next.push(p2);
            }
        }
        if len == path_bound + 1 {
            ensure!(
                next.is_empty(),
                Guard,
                "the quiver has nonempty paths longer than the bound {path_bound}"
            );
        }
        ensure!(
            paths.len() + next.len() <= 100_000,
            Guard,
            "too many paths in the free category"
        );
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let tensors: Vec<DayTensor> = paths
        .iter()
        .map(|p| {
            let factors: Vec<&TruncatedCubicalSet> =
                p.windows(2).map(|e| q.hom(e[0], e[1])).collect();
            DayTensor::new(q.flavor(), q.trunc(), &factors)
        })
        .collect::<Result<_>>()?;
    let path_index: HashMap<&[usize], usize> = paths
        .iter()
        .enumerate()
        .map(|(k, p)| (p.as_slice(), k))
        .collect();
    // For each pair, the paths between them and the coproduct offsets.
    let mut summands: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for (k, p) in paths.iter().enumerate() {
        summands[p[0]][*p.last().unwrap()].push(k);
    }
    let mut homs = Vec::with_capacity(n);
    let mut injections: Vec<Vec<Vec<CubicalMap>>> = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        let mut inj_row = Vec::with_capacity(n);
        for y in 0..n {
            let parts: Vec<&TruncatedCubicalSet> =
                summands[x][y].iter().map(|&k| &tensors[k].object).collect();
            let cp = coproduct(&CubeSite::new(q.flavor()), q.trunc(), &parts)?;
            row.push(cp.object);
            inj_row.push(cp.injections);
        }
        homs.push(row);
        injections.push(inj_row);
    }
    // Locate a cell of hom(x,y) as (summand, cell of that tensor).
    let locate = |x: usize, y: usize, d: usize, c: usize| -> (usize, usize) {
        for (s, inj) in injections[x][y].iter().enumerate() {
            if let Some(pos) = inj.component(d).iter().position(|&v| v == c) {
                return (summands[x][y][s], pos);
            }
        }
        unreachable!("coproduct cells come from a summand")
    };
    let names = q.objects.clone();
    let quiver = CubicalQuiver::new(names, homs)?;
    let units = (0..n).map(|x| injections[x][x][0].apply(0, 0)).collect();
    CubicalCategory::from_fn(quiver, units, |x, y, z, (p, a), (r, b)| {
        let (k1, c1) = locate(x, y, p, a);
        let (k2, c2) = locate(y, z, r, b);
        let (cells1, w1) = tensors[k1].representative(p, c1);
        let (cells2, w2) = tensors[k2].representative(r, c2);
        let mut path = paths[k1].clone();
        path.extend_from_slice(&paths[k2][1..]);
        let k = path_index[path.as_slice()];
        let cells: Vec<(usize, usize)> = cells1.into_iter().chain(cells2).collect();
        let c = tensors[k].class_of(p + r, &cells, &w1.tensor(&w2))?;
        let s = summands[x][z].iter().position(|&j| j == k).unwrap();
        Ok(injections[x][z][s].apply(p + r, c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::representable;

    #[test]
    fn small_categories() {
        let pt = point_category(Flavor::Connections, 2).unwrap();
        assert_eq!(underlying(&pt).unwrap().morphisms.len(), 1);
        let e = arrow_category(&crate::cubical::empty(Flavor::Connections, 2)).unwrap();
        let s = underlying(&e).unwrap();
        assert!(s.is_isomorphic_fixing_objects(&FinCategory::discrete(2)));
        let x = representable(Flavor::Connections, 1, 2).unwrap();
        let a = arrow_category(&x).unwrap();
        assert_eq!(underlying(&a).unwrap().hom(0, 1).len(), 2);
    }

    #[test]
    fn discrete_round_trip() {
        for c in [
            FinCategory::ordinal(2),
            FinCategory::commutative_square(),
            FinCategory::discrete(3),
        ] {
            let ic = discrete_enrich(&c, Flavor::Connections, 2).unwrap();
            assert!(underlying(&ic).unwrap().is_isomorphic_fixing_objects(&c));
        }
    }

    #[test]
    fn free_categories() {
        let f = Flavor::Connections;
        let pt = point(f, 2).unwrap();
        let e = crate::cubical::empty(f, 2);
        let q = CubicalQuiver::new(
            vec!["0".into(), "1".into()],
            vec![vec![e.clone(), pt], vec![e.clone(), e.clone()]],
        )
        .unwrap();
        let t = free_category(&q, 1).unwrap();
        let s = underlying(&t).unwrap();
        assert!(s.is_isomorphic_fixing_objects(&FinCategory::ordinal(1)));
        assert!(free_category(&q, 0).is_err());

        // 0 -> 1 -> 2 with □[1] on both arrows.
        let i = representable(f, 1, 2).unwrap();
        let q = CubicalQuiver::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![
                vec![e.clone(), i.clone(), e.clone()],
                vec![e.clone(), e.clone(), i],
                vec![e.clone(), e.clone(), e],
            ],
        )
        .unwrap();
        let t = free_category(&q, 2).unwrap();
        assert_eq!(
            t.hom(0, 2).counts(),
            representable(f, 2, 2).unwrap().counts()
        );
    }
}
