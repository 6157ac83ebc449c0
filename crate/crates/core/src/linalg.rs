//! Exact Gaussian elimination over [`Scalar`].

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

/// A particular solution together with a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub nullspace: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, v) in col.iter().enumerate() {
                m.data[r][c] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r][c] = v;
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].inv().expect("nonzero pivot");
            for v in m[row].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = m[row].clone();
            for (r, line) in m.iter_mut().enumerate() {
                if r == row || line[col].is_zero() {
                    continue;
                }
                let f = line[col].clone();
                for (v, p) in line.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = &*v - &(&f * p);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (Matrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = rhs`; `None` if inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Solution> {
        assert_eq!(rhs.len(), self.rows, "rhs length");
        let mut aug = self.data.clone();
        for (line, b) in aug.iter_mut().zip(rhs) {
            line.push(b.clone());
        }
        let aug = Matrix { rows: self.rows, cols: self.cols + 1, data: aug };
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            particular[p] = r.get(row, self.cols).clone();
        }
        Some(Solution { particular, nullspace: self.nullspace() })
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.data
            .iter()
            .map(|row| row.iter().zip(x).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    #[test]
    fn identity_solves_uniquely() {
        let rhs = vec![s(3), s(-1), Scalar::ratio(1, 2)];
        let sol = Matrix::identity(3).solve(&rhs).unwrap();
        assert_eq!(sol.particular, rhs);
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn zero_matrix_has_full_nullspace() {
        let sol = Matrix::zeros(2, 3).solve(&[s(0), s(0)]).unwrap();
        assert_eq!(sol.nullspace.len(), 3);
        assert!(Matrix::zeros(2, 3).solve(&[s(1), s(0)]).is_none());
    }

    #[test]
    fn one_by_two() {
        let m = Matrix::from_rows(vec![vec![s(1), s(-1)]]);
        assert_eq!(m.nullspace(), vec![vec![s(1), s(1)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solution_checks_out() {
        let m = Matrix::from_rows(vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(7)], vec![s(0), s(0), s(1)]]);
        let rhs = vec![s(1), s(3), s(1)];
        let sol = m.solve(&rhs).unwrap();
        assert_eq!(m.mul_vec(&sol.particular), rhs);
        for v in &sol.nullspace {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        assert_eq!(m.rank() + sol.nullspace.len(), 3);
    }
}
