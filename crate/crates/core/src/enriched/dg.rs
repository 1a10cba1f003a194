//! dg categories over a prime field and their coherent nerve, via the
//! dg-singular functor applied hom-wise.

use crate::chain::{
    associator, left_unitor, right_unitor, tensor_of_cells, ChainMap, DgSingular, FinChainComplex,
    Matrix, Ring,
};
use crate::cube::Flavor;
use crate::error::{ensure, Result};
use crate::simplicial::{FinCategory, TruncatedSimplicialSet};

use super::{hc_nerve, CubicalCategory, CubicalQuiver};

/// A dg category with finitely many objects and finite hom complexes.
/// `composition[x][y][z]: hom(x,y) ⊗ hom(y,z) -> hom(x,z)` is diagrammatic,
/// and `units[x]` is a degree-0 vector of `hom(x,x)`.
#[derive(Clone, Debug)]
pub struct DgCategory {
    pub objects: Vec<String>,
    pub homs: Vec<Vec<FinChainComplex>>,
    pub composition: Vec<Vec<Vec<ChainMap>>>,
    pub units: Vec<Vec<i64>>,
}

impl DgCategory {
    pub fn new(
        objects: Vec<String>,
        homs: Vec<Vec<FinChainComplex>>,
        composition: Vec<Vec<Vec<ChainMap>>>,
        units: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let c = DgCategory {
            objects,
            homs,
            composition,
            units,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn ring(&self) -> Ring {
        self.homs[0][0].ring()
    }

    fn unit_map(&self, x: usize) -> ChainMap {
        let h = &self.homs[x][x];
        let mut m = Matrix::zeros(h.rank(0), 1);
        for (i, &c) in self.units[x].iter().enumerate() {
            m.set(i, 0, self.ring().reduce(c));
        }
        ChainMap::new(vec![m])
    }

    /// Checks shapes, that compositions are chain maps, the unit laws and
    /// associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        ensure!(n > 0, Validation, "a dg category needs an object");
        ensure!(
            self.homs.len() == n && self.homs.iter().all(|r| r.len() == n),
            Validation,
            "expected a {n} x {n} table of hom complexes"
        );
        ensure!(
            self.composition.len() == n
                && self
                    .composition
                    .iter()
                    .all(|r| r.len() == n && r.iter().all(|s| s.len() == n)),
            Validation,
            "expected an {n} x {n} x {n} table of compositions"
        );
        ensure!(self.units.len() == n, Validation, "expected {n} units");
        let ring = self.ring();
        ensure!(
            matches!(ring, Ring::Prime(_)),
            Unsupported,
            "dg categories here live over a prime field"
        );
        for row in &self.homs {
            for h in row {
                ensure!(
                    h.ring() == ring,
                    Validation,
                    "hom complexes over different rings"
                );
                h.validate()?;
            }
        }
        for x in 0..n {
            ensure!(
                self.units[x].len() == self.homs[x][x].rank(0),
                Validation,
                "unit of {} has the wrong length",
                self.objects[x]
            );
        }
        let unit = FinChainComplex::unit(ring);
        for x in 0..n {
            for y in 0..n {
                let hxy = &self.homs[x][y];
                for z in 0..n {
                    let m = &self.composition[x][y][z];
                    m.check(&hxy.tensor(&self.homs[y][z])?, &self.homs[x][z])?;
                }
                // m ∘ (u ⊗ id) = λ and m ∘ (id ⊗ u) = ρ.
                let id = ChainMap::identity(hxy);
                let left = self.composition[x][x][y].after(
                    &self
                        .unit_map(x)
                        .tensor(&id, (&unit, hxy), (&self.homs[x][x], hxy))?,
                    ring,
                );
                let right = self.composition[x][y][y].after(
                    &id.tensor(&self.unit_map(y), (hxy, &unit), (hxy, &self.homs[y][y]))?,
                    ring,
                );
                ensure!(
                    left.same_as(&left_unitor(hxy)?) && right.same_as(&right_unitor(hxy)?),
                    Validation,
                    "unit laws fail on hom({},{})",
                    self.objects[x],
                    self.objects[y]
                );
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let (a, b, c) = (&self.homs[x][y], &self.homs[y][z], &self.homs[z][w]);
                        let (ab, bc) = (&self.homs[x][z], &self.homs[y][w]);
                        let (a_b, b_c) = (a.tensor(b)?, b.tensor(c)?);
                        let lhs = self.composition[x][z][w].after(
                            &self.composition[x][y][z].tensor(
                                &ChainMap::identity(c),
                                (&a_b, c),
                                (ab, c),
                            )?,
                            ring,
                        );
                        let rhs = self.composition[x][y][w]
                            .after(
                                &ChainMap::identity(a).tensor(
                                    &self.composition[y][z][w],
                                    (a, &b_c),
                                    (a, bc),
                                )?,
                                ring,
                            )
                            .after(&associator(a, b, c)?, ring);
                        ensure!(
                            lhs.same_as(&rhs),
                            Validation,
                            "composition is not associative on ({x},{y},{z},{w})"
                        );
                    }
                }
            }
        }
        Ok(())
    }

    /// The linearization `F_p[C]` of a finite category, concentrated in
    /// degree 0.
    pub fn linearize(c: &FinCategory, ring: Ring) -> Result<Self> {
        c.validate()?;
        let n = c.object_count();
        let homs_c: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|x| (0..n).map(|y| c.hom(x, y)).collect())
            .collect();
        let homs: Vec<Vec<FinChainComplex>> = homs_c
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| {
                        FinChainComplex::new(
                            ring,
                            vec![h.iter().map(|&f| c.morphisms[f].2.clone()).collect()],
                            vec![Matrix::zeros(0, h.len())],
                        )
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut composition = Vec::with_capacity(n);
        for x in 0..n {
            let mut row = Vec::with_capacity(n);
            for y in 0..n {
                let mut cell = Vec::with_capacity(n);
                for z in 0..n {
                    let src = homs[x][y].tensor(&homs[y][z])?;
                    let nz = homs_c[y][z].len();
                    cell.push(ChainMap::from_basis(&src, &homs[x][z], |_, k| {
                        let (a, b) = (homs_c[x][y][k / nz], homs_c[y][z][k % nz]);
                        let f = c.then(a, b).expect("composable by typing");
                        vec![(homs_c[x][z].iter().position(|&g| g == f).unwrap(), 1)]
                    }));
                }
                row.push(cell);
            }
            composition.push(row);
        }
        let units = (0..n)
            .map(|x| {
                homs_c[x][x]
                    .iter()
                    .map(|&f| i64::from(f == c.identities[x]))
                    .collect()
            })
            .collect();
        Self::new(c.objects.clone(), homs, composition, units)
    }

    /// The cubical category obtained by applying `R` to every hom, with
    /// homs truncated at `trunc`.
    pub fn cubical(&self, trunc: usize) -> Result<CubicalCategory> {
        let n = self.objects.len();
        let rs: Vec<Vec<DgSingular>> = self
            .homs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| DgSingular::new(h, trunc, crate::chain::DEFAULT_MAX_CELLS))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let quiver = CubicalQuiver::new(
            self.objects.clone(),
            rs.iter()
                .map(|row| row.iter().map(|r| r.object.clone()).collect())
                .collect(),
        )?;
        debug_assert_eq!(quiver.flavor(), Flavor::Connections);
        let units = (0..n)
            .map(|x| rs[x][x].find_cell(0, self.unit_map(x).components()))
            .collect::<Result<_>>()?;
        CubicalCategory::from_fn(quiver, units, |x, y, z, a, b| {
            tensor_of_cells(
                (&rs[x][y], a),
                (&rs[y][z], b),
                &self.composition[x][y][z],
                &rs[x][z],
            )
        })
    }
}

/// `N^c(R_*(D))` truncated at `k_max`.
pub fn dg_category_nerve(d: &DgCategory, k_max: usize) -> Result<TruncatedSimplicialSet> {
    let c = d.cubical(k_max.saturating_sub(1))?;
    hc_nerve(&c, k_max)
}
