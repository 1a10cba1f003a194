use std::fmt;

use serde::Serialize;

use crate::error::{ensure, Result};

use super::{FinChainComplex, Ring};

/// `H_n ≅ ℤ^betti ⊕ ⨁ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// Integer homology via Smith normal form, one group per stored degree.
pub fn homology(a: &FinChainComplex) -> Result<Vec<HomologyGroup>> {
    ensure!(
        a.ring() == Ring::Integers,
        Validation,
        "integer homology needs a complex over Z"
    );
    let invariants: Vec<Vec<i64>> = (0..=a.top() + 1)
        .map(|n| a.d(n).smith_invariants())
        .collect();
    Ok((0..=a.top())
        .map(|n| {
            let rank_out = invariants[n].len();
            let rank_in = &invariants[n + 1];
            HomologyGroup {
                degree: n,
                betti: a.rank(n) - rank_out - rank_in.len(),
                torsion: rank_in.iter().copied().filter(|&t| t > 1).collect(),
            }
        })
        .collect())
}

/// Betti numbers over the coefficient field of `a`.
pub fn field_homology(a: &FinChainComplex) -> Result<Vec<usize>> {
    let Ring::Prime(p) = a.ring() else {
        return Err(crate::Error::Validation(
            "field homology needs a prime field".into(),
        ));
    };
    let ranks: Vec<usize> = (0..=a.top() + 1).map(|n| a.d(n).rank_mod(p)).collect();
    Ok((0..=a.top())
        .map(|n| a.rank(n) - ranks[n] - ranks[n + 1])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Matrix;

    #[test]
    fn projective_plane_torsion() {
        // A cellular chain complex of RP^2: Z <-0- Z <-2- Z.
        let c = FinChainComplex::new(
            Ring::Integers,
            vec![vec!["v".into()], vec!["e".into()], vec!["f".into()]],
            vec![
                Matrix::zeros(0, 1),
                Matrix::from_rows(vec![vec![0]], 1),
                Matrix::from_rows(vec![vec![2]], 1),
            ],
        )
        .unwrap();
        let h = homology(&c).unwrap();
        assert_eq!(
            h.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            ["Z", "Z/2", "0"]
        );
    }
}
