use std::fmt;

use crate::error::{ensure, Result};

use super::Generator;

/// A total function `{0,1}^src_dim -> {0,1}^tgt_dim` stored as a truth table.
///
/// Rows are indexed by the lexicographic order of source vertices, so
/// coordinate 0 is the most significant bit of the row index. Entries use the
/// same encoding for target vertices. This is the semantic oracle that every
/// symbolic cube operation is checked against.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeFunction {
    src_dim: usize,
    tgt_dim: usize,
    table: Vec<u32>,
}

impl CubeFunction {
    pub fn from_table(src_dim: usize, tgt_dim: usize, table: Vec<u32>) -> Result<Self> {
        ensure!(
            src_dim < 31 && tgt_dim < 31,
            Dimension,
            "cube dimension too large"
        );
        ensure!(
            table.len() == 1 << src_dim,
            Validation,
            "truth table has {} rows, expected {}",
            table.len(),
            1u64 << src_dim
        );
        ensure!(
            table.iter().all(|&v| v >> tgt_dim == 0),
            Validation,
            "truth table entry wider than {tgt_dim} bits"
        );
        Ok(CubeFunction {
            src_dim,
            tgt_dim,
            table,
        })
    }

    /// Builds the table of an arbitrary function given on coordinate vectors.
    pub fn from_fn(src_dim: usize, tgt_dim: usize, f: impl Fn(&[bool]) -> Vec<bool>) -> Self {
        let table = (0..1u32 << src_dim)
            .map(|row| {
                let x = unpack(row, src_dim);
                let y = f(&x);
                assert_eq!(y.len(), tgt_dim);
                pack(&y)
            })
            .collect();
        CubeFunction {
            src_dim,
            tgt_dim,
            table,
        }
    }

    pub fn identity(n: usize) -> Self {
        CubeFunction {
            src_dim: n,
            tgt_dim: n,
            table: (0..1 << n).collect(),
        }
    }

    /// The table of a single generator acting on `□^src_dim`, written out
    /// directly from `δ^0(*) = 0`, `δ^1(*) = 1`, `σ(i) = *` and
    /// `γ(i, j) = max(i, j)` tensored with identities.
    pub fn generator(g: Generator, src_dim: usize) -> Result<Self> {
        let tgt = g.target_dim(src_dim)?;
        Ok(Self::from_fn(src_dim, tgt, |x| match g {
            Generator::Face { eps, index } => {
                let mut y = x.to_vec();
                y.insert(index, eps);
                y
            }
            Generator::Degen(i) => {
                let mut y = x.to_vec();
                y.remove(i);
                y
            }
            Generator::Conn(i) => {
                let mut y = x.to_vec();
                let merged = y[i] || y[i + 1];
                y.remove(i + 1);
                y[i] = merged;
                y
            }
        }))
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Value at a source vertex given as coordinates.
    pub fn at(&self, x: &[bool]) -> Vec<bool> {
        assert_eq!(x.len(), self.src_dim);
        unpack(self.table[pack(x) as usize], self.tgt_dim)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &CubeFunction) -> Result<CubeFunction> {
        ensure!(
            f.tgt_dim == self.src_dim,
            Dimension,
            "cannot compose □^{}->□^{} after □^{}->□^{}",
            self.src_dim,
            self.tgt_dim,
            f.src_dim,
            f.tgt_dim
        );
        let table = f.table.iter().map(|&v| self.table[v as usize]).collect();
        Ok(CubeFunction {
            src_dim: f.src_dim,
            tgt_dim: self.tgt_dim,
            table,
        })
    }

    /// Cartesian product of functions, `self` on the leading coordinates.
    pub fn product(&self, g: &CubeFunction) -> CubeFunction {
        let m = self.src_dim + g.src_dim;
        let n = self.tgt_dim + g.tgt_dim;
        CubeFunction::from_fn(m, n, |x| {
            let mut y = self.at(&x[..self.src_dim]);
            y.extend(g.at(&x[self.src_dim..]));
            y
        })
    }

    /// Rows rendered as `x -> y` bit strings.
    pub fn rows(&self) -> Vec<String> {
        self.table
            .iter()
            .enumerate()
            .map(|(row, &v)| {
                format!(
                    "{} -> {}",
                    bits(row as u32, self.src_dim),
                    bits(v, self.tgt_dim)
                )
            })
            .collect()
    }
}

fn bits(v: u32, width: usize) -> String {
    if width == 0 {
        return "*".to_string();
    }
    (0..width)
        .map(|k| {
            if v >> (width - 1 - k) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn unpack(v: u32, width: usize) -> Vec<bool> {
    (0..width).map(|k| v >> (width - 1 - k) & 1 == 1).collect()
}

fn pack(x: &[bool]) -> u32 {
    x.iter().fold(0, |acc, &b| acc << 1 | b as u32)
}

impl fmt::Debug for CubeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "□^{}->□^{} [{}]",
            self.src_dim,
            self.tgt_dim,
            self.rows().join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_zero_on_point() {
        let f = CubeFunction::generator(
            Generator::Face {
                eps: false,
                index: 0,
            },
            0,
        )
        .unwrap();
        assert_eq!(f.table(), &[0]);
    }

    #[test]
    fn connection_is_max() {
        let g = CubeFunction::generator(Generator::Conn(0), 2).unwrap();
        assert_eq!(g.table(), &[0, 1, 1, 1]);
    }

    #[test]
    fn table_shape_is_checked() {
        assert!(CubeFunction::from_table(2, 1, vec![0, 1, 1]).is_err());
        assert!(CubeFunction::from_table(1, 1, vec![0, 2]).is_err());
    }
}
