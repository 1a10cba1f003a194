use crate::error::Result;
use crate::simplicial::TruncatedSimplicialSet;
use crate::site::GenKind;

use super::{FinChainComplex, Matrix, Ring};

/// Normalized chains of a simplicial set: nondegenerate simplices with
/// `d = Σ (-1)^i d_i`, degenerate faces dropped.
pub fn simplicial_chains(x: &TruncatedSimplicialSet, ring: Ring) -> Result<FinChainComplex> {
    let top = x.trunc();
    let nondeg: Vec<Vec<usize>> = (0..=top).map(|n| x.nondegenerate(n)).collect();
    let position: Vec<Vec<Option<usize>>> = (0..=top)
        .map(|n| {
            let mut pos = vec![None; x.count(n)];
            for (k, &c) in nondeg[n].iter().enumerate() {
                pos[c] = Some(k);
            }
            pos
        })
        .collect();
    let mut diffs = vec![Matrix::zeros(0, nondeg[0].len())];
    for n in 1..=top {
        let mut m = Matrix::zeros(nondeg[n - 1].len(), nondeg[n].len());
        for (g, table) in x.actions_from(n) {
            let GenKind::Face(_) = g.kind else { continue };
            let sign = if g.index % 2 == 0 { 1 } else { -1 };
            for (col, &c) in nondeg[n].iter().enumerate() {
                if let Some(row) = position[n - 1][table[c]] {
                    m.add(row, col, sign);
                }
            }
        }
        diffs.push(m);
    }
    let bases = nondeg
        .iter()
        .enumerate()
        .map(|(n, cs)| cs.iter().map(|&c| x.label(n, c)).collect())
        .collect();
    FinChainComplex::new(ring, bases, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology;
    use crate::simplicial::{boundary_simplex, simplex};

    #[test]
    fn spheres() {
        let d2 = simplex(2, 2).unwrap();
        let h = homology(&simplicial_chains(&d2, Ring::Integers).unwrap()).unwrap();
        assert_eq!(
            h.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            ["Z", "0", "0"]
        );
        let (s1, _) = boundary_simplex(2, 2).unwrap();
        let h = homology(&simplicial_chains(&s1, Ring::Integers).unwrap()).unwrap();
        assert_eq!(
            h.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            ["Z", "Z", "0"]
        );
    }
}
