use super::Ring;

/// A dense integer matrix. Entries are reduced modulo `p` by the callers
/// that work over a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        let r = rows.len();
        let mut m = Matrix::zeros(r, cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn triples(&self) -> Vec<(usize, usize, i64)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter_map(|(i, j)| Some((i, j, self.get(i, j))).filter(|t| t.2 != 0))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn reduced(&self, ring: Ring) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| ring.reduce(x)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix, ring: Ring) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out.reduced(ring)
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for (i, j, v) in self.triples() {
            m.set(i, j, v);
        }
        for (i, j, v) in other.triples() {
            m.set(self.rows + i, self.cols + j, v);
        }
        m
    }

    /// Rank over the field `F_p` by Gaussian elimination.
    pub fn rank_mod(&self, p: u32) -> usize {
        let p = p as i64;
        let mut a: Vec<Vec<i64>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).rem_euclid(p))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = mod_inverse(a[rank][col], p);
            for j in col..self.cols {
                a[rank][j] = a[rank][j] * inv % p;
            }
            for r in 0..self.rows {
                if r != rank && a[r][col] != 0 {
                    let f = a[r][col];
                    for j in col..self.cols {
                        a[r][j] = (a[r][j] - f * a[rank][j]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// The nonzero invariant factors of the Smith normal form over `ℤ`, in
    /// divisibility order. Their count is the rank.
    pub fn smith_invariants(&self) -> Vec<i64> {
        let mut a: Vec<Vec<i128>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as i128).collect())
            .collect();
        let (m, n) = (self.rows, self.cols);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < m.min(n) {
            // Pivot: smallest nonzero absolute value in the remaining block.
            let Some((pi, pj)) = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let piv = a[t][t];
                let mut done = true;
                for i in t + 1..m {
                    let q = a[i][t] / piv;
                    if q != 0 {
                        for j in t..n {
                            a[i][j] -= q * a[t][j];
                        }
                    }
                    if a[i][t] != 0 {
                        done = false;
                    }
                }
                for j in t + 1..n {
                    let q = a[t][j] / piv;
                    if q != 0 {
                        for row in a.iter_mut().skip(t) {
                            row[j] -= q * row[t];
                        }
                    }
                    if a[t][j] != 0 {
                        done = false;
                    }
                }
                if done {
                    break;
                }
                // A smaller remainder appeared in the pivot row or column.
                let (bi, bj) = (t..m)
                    .map(|i| (i, t))
                    .chain((t..n).map(|j| (t, j)))
                    .filter(|&(i, j)| a[i][j] != 0)
                    .min_by_key(|&(i, j)| a[i][j].abs())
                    .unwrap();
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
            }
            diag.push(a[t][t].abs());
            t += 1;
        }
        // Enforce divisibility: (a, b) -> (gcd, lcm) until sorted.
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                let g = gcd(diag[i], diag[j]);
                let l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
        diag.into_iter()
            .map(|x| i64::try_from(x).expect("invariant factor overflow"))
            .collect()
    }

    pub fn rank(&self, ring: Ring) -> usize {
        match ring {
            Ring::Integers => self.smith_invariants().len(),
            Ring::Prime(p) => self.rank_mod(p),
        }
    }

    /// Invertibility over the ring: square with unit determinant.
    pub fn is_invertible(&self, ring: Ring) -> bool {
        self.rows == self.cols
            && match ring {
                Ring::Integers => {
                    let inv = self.smith_invariants();
                    inv.len() == self.rows && inv.iter().all(|&x| x == 1)
                }
                Ring::Prime(p) => self.rank_mod(p) == self.rows,
            }
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

pub(crate) fn mod_inverse(a: i64, p: i64) -> i64 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_examples() {
        let m = Matrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(m.smith_invariants(), vec![2, 6, 12]);
        let z = Matrix::from_rows(vec![vec![2, 0], vec![0, 3]], 2);
        assert_eq!(z.smith_invariants(), vec![1, 6]);
        assert!(Matrix::identity(3).is_invertible(Ring::Integers));
        assert!(!Matrix::from_rows(vec![vec![2]], 1).is_invertible(Ring::Integers));
        assert!(Matrix::from_rows(vec![vec![2]], 1).is_invertible(Ring::Prime(3)));
    }

    #[test]
    fn field_rank() {
        let m = Matrix::from_rows(vec![vec![1, 1], vec![1, 1]], 2);
        assert_eq!(m.rank_mod(2), 1);
        assert_eq!(
            Matrix::from_rows(vec![vec![1, 1], vec![1, -1]], 2).rank_mod(2),
            1
        );
        assert_eq!(
            Matrix::from_rows(vec![vec![1, 1], vec![1, -1]], 2).rank_mod(3),
            2
        );
    }
}
