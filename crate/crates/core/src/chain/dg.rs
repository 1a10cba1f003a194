//! The dg-singular cubical set `R(A)(n) = {chain maps C[1]^{⊗n} -> A}` of a
//! complex over a prime field.
//!
//! The chain maps out of `C[1]^{⊗n}` form a vector space; it is computed as
//! a null space and then enumerated, under a cardinality guard.

use std::collections::HashMap;

use crate::cube::Flavor;
use crate::cubical::{DayTensor, TruncatedCubicalSet};
use crate::error::{bail, ensure, Result};
use crate::presheaf::{Presheaf, PresheafMap};
use crate::site::CubeSite;

use super::interval::Letter;
use super::matrix::mod_inverse;
use super::realize::{act_on_word, encode_word, words, Word};
use super::{ChainMap, FinChainComplex, Matrix, Ring, TensorLayout};

/// Default bound on `|R(A)(n)|`.
pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

/// `C[1]^{⊗n}` with basis words grouped by degree.
struct CubeChains {
    complex: FinChainComplex,
    /// Degree and position of each word, by word code.
    position: Vec<(usize, usize)>,
    words: Vec<Vec<Word>>,
}

fn cube_chains(n: usize, ring: Ring) -> CubeChains {
    let all = words(n);
    let mut by_degree: Vec<Vec<Word>> = vec![Vec::new(); n + 1];
    let mut position = Vec::with_capacity(all.len());
    for w in &all {
        let d = w.iter().map(|l| l.degree()).sum::<usize>();
        position.push((d, by_degree[d].len()));
        by_degree[d].push(w.clone());
    }
    let mut diffs = vec![Matrix::zeros(0, by_degree[0].len())];
    for d in 1..=n {
        let mut m = Matrix::zeros(by_degree[d - 1].len(), by_degree[d].len());
        for (k, w) in by_degree[d].iter().enumerate() {
            let mut edges = 0;
            for i in 0..n {
                if w[i] != Letter::Edge {
                    continue;
                }
                let sign = if edges % 2 == 0 { 1 } else { -1 };
                edges += 1;
                for (end, c) in [(Letter::One, sign), (Letter::Zero, -sign)] {
                    let mut v = w.clone();
                    v[i] = end;
                    m.add(position[encode_word(&v)].1, k, c);
                }
            }
        }
        diffs.push(m);
    }
    let bases = by_degree
        .iter()
        .map(|ws| {
            ws.iter()
                .map(|w| w.iter().map(|l| l.symbol()).collect())
                .collect()
        })
        .collect();
    let complex = FinChainComplex::new(ring, bases, diffs).expect("cube chains form a complex");
    CubeChains {
        complex,
        position,
        words: by_degree,
    }
}

/// Null space basis of `m` over `F_p`, one vector per free column.
fn null_space(m: &Matrix, p: i64) -> Vec<Vec<i64>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<i64>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).rem_euclid(p)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_inverse(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (-a[i][f]).rem_euclid(p);
            }
            v
        })
        .collect()
}

/// `R(A)` together with its cells as chain maps.
pub struct DgSingular {
    pub object: TruncatedCubicalSet,
    target: FinChainComplex,
    chains: Vec<CubeChains>,
    /// `cells[n][k]`: components of the `k`-th chain map `C[1]^{⊗n} -> A`.
    cells: Vec<Vec<Vec<Matrix>>>,
    index: Vec<HashMap<Vec<Matrix>, usize>>,
}

impl DgSingular {
    pub fn new(a: &FinChainComplex, trunc: usize, max_cells: usize) -> Result<Self> {
        let Ring::Prime(p) = a.ring() else {
            bail!(
                Unsupported,
                "chain maps into a complex over Z form an infinite set; use a prime field"
            );
        };
        ensure!(
            trunc <= crate::cube::DIM_GUARD,
            Guard,
            "truncation {trunc} exceeds the guard"
        );
        let p = p as i64;
        let chains: Vec<CubeChains> = (0..=trunc).map(|n| cube_chains(n, a.ring())).collect();
        let mut cells = Vec::with_capacity(trunc + 1);
        for k in &chains {
            cells.push(chain_maps(&k.complex, a, p, max_cells)?);
        }
        let index: Vec<HashMap<Vec<Matrix>, usize>> = cells
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let site = CubeSite::new(Flavor::Connections);
        let object = Presheaf::from_fn(
            site,
            trunc,
            trunc,
            cells.iter().map(Vec::len).collect(),
            |g, phi| {
                let (src, tgt) = (g.src, g.tgt());
                let phi = &cells[tgt][phi];
                let kc = &chains[src];
                let comps = kc
                    .words
                    .iter()
                    .enumerate()
                    .map(|(d, ws)| {
                        let mut m = Matrix::zeros(a.rank(d), ws.len());
                        for (col, w) in ws.iter().enumerate() {
                            if let Some(v) = act_on_word(g, w) {
                                let (d2, pos) = chains[tgt].position[encode_word(&v)];
                                debug_assert_eq!(d, d2);
                                for r in 0..a.rank(d) {
                                    m.set(r, col, phi[d].get(r, pos));
                                }
                            }
                        }
                        m
                    })
                    .collect::<Vec<_>>();
                index[src][&comps]
            },
        )?;
        let mut this = DgSingular {
            object,
            target: a.clone(),
            chains,
            cells,
            index,
        };
        let m = this.object.computed_skeleton();
        this.object.set_skeleton(m);
        Ok(this)
    }

    pub fn target(&self) -> &FinChainComplex {
        &self.target
    }

    /// The chain map `C[1]^{⊗n} -> A` of a cell.
    pub fn cell(&self, n: usize, k: usize) -> ChainMap {
        ChainMap::new(self.cells[n][k].clone())
    }

    pub(crate) fn find_cell(&self, n: usize, comps: &[Matrix]) -> Result<usize> {
        self.index[n].get(comps).copied().ok_or_else(|| {
            crate::Error::Validation("image is not a chain map into the target".into())
        })
    }

    /// The lax structure map `R(A) ⊗ R(B) -> R(A ⊗ B)` on the given Day
    /// tensor of `R(A)` and `R(B)`.
    pub fn lax_map(
        ra: &DgSingular,
        rb: &DgSingular,
        rab: &DgSingular,
        tensor: &DayTensor,
    ) -> Result<PresheafMap> {
        let mu = ChainMap::identity(&rab.target);
        let trunc = tensor.object.trunc();
        let mut comps = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let mut comp = Vec::with_capacity(tensor.object.count(n));
            for c in 0..tensor.object.count(n) {
                let (cells, w) = tensor.representative(n, c);
                let pure = tensor_of_cells((ra, cells[0]), (rb, cells[1]), &mu, rab)?;
                comp.push(rab.object.act_mor(&w, pure));
            }
            comps.push(comp);
        }
        let map = PresheafMap::new(comps);
        map.check(&tensor.object, &rab.object)?;
        Ok(map)
    }
}

/// All chain maps `K -> A` over `F_p`, lexicographic in null-space
/// coordinates.
fn chain_maps(
    k: &FinChainComplex,
    a: &FinChainComplex,
    p: i64,
    max_cells: usize,
) -> Result<Vec<Vec<Matrix>>> {
    let top = k.top();
    // Unknowns: entries of f_d (rank A_d x rank K_d), row-major, for d <= top.
    let mut offsets = Vec::with_capacity(top + 2);
    let mut total = 0;
    for d in 0..=top {
        offsets.push(total);
        total += a.rank(d) * k.rank(d);
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    // d_A f_d = f_{d-1} d_K for d = 1..=top+1 (f_{top+1} = 0).
    for d in 1..=top + 1 {
        let (da, dk) = (a.d(d), k.d(d));
        for i in 0..a.rank(d - 1) {
            for j in 0..k.rank(d) {
                let mut row = vec![0; total];
                if d <= top {
                    for l in 0..a.rank(d) {
                        row[offsets[d] + l * k.rank(d) + j] += da.get(i, l);
                    }
                }
                for l in 0..k.rank(d - 1) {
                    row[offsets[d - 1] + i * k.rank(d - 1) + l] -= dk.get(l, j);
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows, total);
    let basis = null_space(&system, p);
    let dim = basis.len() as u32;
    let count = (p as u128)
        .checked_pow(dim)
        .filter(|&c| c <= max_cells as u128)
        .ok_or_else(|| {
            crate::Error::Guard(format!("{p}^{dim} chain maps exceed the bound {max_cells}"))
        })? as usize;
    let mut out = Vec::with_capacity(count);
    for mut code in 0..count {
        let mut v = vec![0i64; total];
        let mut coeffs = vec![0i64; basis.len()];
        for c in coeffs.iter_mut().rev() {
            *c = (code % p as usize) as i64;
            code /= p as usize;
        }
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + c * y) % p;
                }
            }
        }
        let comps = (0..=top)
            .map(|d| {
                let (r, cols) = (a.rank(d), k.rank(d));
                let mut m = Matrix::zeros(r, cols);
                for i in 0..r {
                    for j in 0..cols {
                        m.set(i, j, v[offsets[d] + i * cols + j]);
                    }
                }
                m
            })
            .collect();
        out.push(comps);
    }
    Ok(out)
}

/// The cell `μ ∘ (φ ⊗ ψ)` of `R(C)(p + q)` for `φ ∈ R(A)(p)`, `ψ ∈ R(B)(q)`
/// and a chain map `μ: A ⊗ B -> C`. Cells are given as `(dimension, index)`.
pub fn tensor_of_cells(
    (ra, (p, phi)): (&DgSingular, (usize, usize)),
    (rb, (q, psi)): (&DgSingular, (usize, usize)),
    mu: &ChainMap,
    rc: &DgSingular,
) -> Result<usize> {
    let n = p + q;
    ensure!(
        n <= rc.object.trunc(),
        Dimension,
        "tensor of cells of dimension {n} above the truncation"
    );
    let (a, b, c) = (&ra.target, &rb.target, &rc.target);
    let ring = c.ring();
    let layout = TensorLayout::new(a, b);
    let (fa, fb) = (&ra.cells[p][phi], &rb.cells[q][psi]);
    let kc = &rc.chains[n];
    let mut comps = Vec::with_capacity(kc.words.len());
    for (d, ws) in kc.words.iter().enumerate() {
        let mut m = Matrix::zeros(c.rank(d), ws.len());
        let mu_d = mu.component(d);
        for (col, w) in ws.iter().enumerate() {
            let (u, v) = w.split_at(p);
            let (du, iu) = ra.chains[p].position[encode_word(u)];
            let (dv, iv) = rb.chains[q].position[encode_word(v)];
            for x in 0..a.rank(du) {
                let cx = fa[du].get(x, iu);
                if cx == 0 {
                    continue;
                }
                for y in 0..b.rank(dv) {
                    let cy = fb[dv].get(y, iv);
                    if cy == 0 {
                        continue;
                    }
                    let t = layout.index(du, x, dv, y);
                    if let Some(mu_d) = mu_d {
                        for r in 0..c.rank(d) {
                            m.add(r, col, cx * cy * mu_d.get(r, t));
                        }
                    }
                }
            }
        }
        comps.push(m.reduced(ring));
    }
    rc.find_cell(n, &comps)
}

/// `R(A)` truncated at `trunc`, with the default cardinality guard.
pub fn dg_singular(a: &FinChainComplex, trunc: usize) -> Result<TruncatedCubicalSet> {
    Ok(DgSingular::new(a, trunc, DEFAULT_MAX_CELLS)?.object)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::interval_c1;

    #[test]
    fn small_singular_sets() {
        let f2 = Ring::Prime(2);
        let unit = FinChainComplex::unit(f2);
        assert_eq!(dg_singular(&unit, 2).unwrap().count(0), 2);
        let c1 = interval_c1(f2).complex;
        assert_eq!(dg_singular(&c1, 1).unwrap().count(0), 4);
        let zero = FinChainComplex::zero(f2);
        assert_eq!(dg_singular(&zero, 3).unwrap().counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn integers_are_rejected() {
        let unit = FinChainComplex::unit(Ring::Integers);
        assert!(matches!(
            dg_singular(&unit, 1),
            Err(crate::Error::Unsupported(_))
        ));
    }

    #[test]
    fn lax_structure_is_a_map() {
        let f2 = Ring::Prime(2);
        let unit = FinChainComplex::unit(f2);
        let r = DgSingular::new(&unit, 2, DEFAULT_MAX_CELLS).unwrap();
        let uu = unit.tensor(&unit).unwrap();
        let ruu = DgSingular::new(&uu, 2, DEFAULT_MAX_CELLS).unwrap();
        // R(1) is 0-skeletal, so R(1) ⊗ R(1) fits the truncation.
        assert_eq!(r.object.skeleton(), 0);
        let t = DayTensor::new(Flavor::Connections, 2, &[&r.object, &r.object]).unwrap();
        let lax = DgSingular::lax_map(&r, &r, &ruu, &t).unwrap();
        // Vertices are scalars and the structure map multiplies them.
        let mut image = lax.component(0).to_vec();
        image.sort();
        assert_eq!(image, [0, 0, 0, 1]);
    }
}
