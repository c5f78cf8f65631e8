//! Dense exact linear algebra over the rational-function field.
//!
//! Rank is generic rank: an entry counts as nonzero when it is not the zero
//! rational function. Pivots are chosen by smallest term count within the
//! column (ties to the lowest row), which keeps intermediate expressions
//! small; the reduced row-echelon form itself is unique.

use std::fmt;
use std::ops::{Mul, Sub};

use thiserror::Error;

use crate::arith::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("inconsistent system (row {row} of the reduced system reads 0 = nonzero)")]
    NoSolution { row: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Non-constant pivot values divided by during elimination; the computed
    /// rank holds wherever none of them vanishes.
    pub assumed_nonzero: Vec<RationalFunction>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![RationalFunction::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = RationalFunction::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<Matrix, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: Vec<RationalFunction>) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn map<E, F>(&self, f: F) -> Result<Matrix, E>
    where
        F: Fn(&RationalFunction) -> Result<RationalFunction, E>,
    {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn choose_pivot(&self, col: usize, from: usize) -> Option<usize> {
        (from..self.rows).filter(|&i| !self[(i, col)].is_zero()).min_by_key(|&i| (self[(i, col)].complexity(), i))
    }

    /// `row[target] -= factor * row[source]` on columns `from..`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &RationalFunction, from: usize) {
        for j in from..self.cols {
            let s = &self[(source, j)];
            if s.is_zero() {
                continue;
            }
            let v = &self[(target, j)] - &(factor * s);
            self[(target, j)] = v;
        }
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut assumed = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = a.choose_pivot(c, r) else { continue };
            a.swap_rows(r, p);
            let pv = a[(r, c)].clone();
            if !pv.is_constant() {
                assumed.push(pv.clone());
            }
            let inv = pv.inv().expect("pivot is nonzero");
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    a.eliminate(i, r, &f, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: a, rank: r, pivots, assumed_nonzero: assumed }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn nullspace_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<RationalFunction>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![RationalFunction::zero(); self.cols];
                v[f] = RationalFunction::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&matrix[(i, f)];
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<RationalFunction, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut a = self.clone();
        let mut det = RationalFunction::one();
        for c in 0..a.cols {
            let Some(p) = a.choose_pivot(c, c) else {
                return Ok(RationalFunction::zero());
            };
            if p != c {
                a.swap_rows(c, p);
                det = -det;
            }
            let pv = a[(c, c)].clone();
            det = &det * &pv;
            let inv = pv.inv().expect("pivot is nonzero");
            for i in c + 1..a.rows {
                if !a[(i, c)].is_zero() {
                    let f = &a[(i, c)] * &inv;
                    a.eliminate(i, c, &f, c);
                }
            }
        }
        Ok(det)
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch(format!("lhs has {} rows, rhs has {}", self.rows, b.rows)));
        }
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + b.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..b.cols {
                aug[(i, n + j)] = b[(i, j)].clone();
            }
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if let Some(row) = pivots.iter().position(|&c| c >= n) {
            return Err(LinalgError::NoSolution { row });
        }
        let mut x = Matrix::zeros(n, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = matrix[(i, n + j)].clone();
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let x = self.solve(&Matrix::identity(self.rows))?;
        if (&x * self) != Matrix::identity(self.rows) {
            return Err(LinalgError::NoSolution { row: self.rank() });
        }
        Ok(x)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = RationalFunction;
    fn index(&self, (i, j): (usize, usize)) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RationalFunction {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut m = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] = &m[(i, j)] + &(a * b);
                    }
                }
            }
        }
        m
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_expr, Symbol};

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_expr(s).unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(3);
        let r = id.rref();
        assert_eq!((r.matrix, r.rank), (id, 3));
        let z = Matrix::zeros(2, 4);
        let r = z.rref();
        assert_eq!((r.matrix, r.rank, r.pivots.len()), (z, 0, 0));
        let p = m(&[&["t", "1"], &["t^2", "t"]]);
        let r = p.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix, m(&[&["1", "1/t"], &["0", "0"]]));
    }

    #[test]
    fn solve_examples() {
        let b = m(&[&["t", "alpha"], &["1", "0"]]);
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), b);
        assert_eq!(m(&[&["t"]]).solve(&m(&[&["1"]])).unwrap(), m(&[&["1/t"]]));
        assert_eq!(m(&[&["0"]]).solve(&m(&[&["1"]])), Err(LinalgError::NoSolution { row: 0 }));
    }

    #[test]
    fn underdetermined_solve_returns_a_solution() {
        let a = m(&[&["1", "alpha", "0"]]);
        let b = m(&[&["t"]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
    }

    #[test]
    fn determinant_examples() {
        let d = Matrix::diagonal(vec![parse_expr("t").unwrap(), 1.into(), parse_expr("t^2").unwrap()]);
        assert_eq!(d.determinant().unwrap(), RationalFunction::t_power(3));
        assert!(m(&[&["1", "1"], &["1", "1"]]).determinant().unwrap().is_zero());
        assert_eq!(m(&[&["t", "1"], &["0", "t"]]).determinant().unwrap(), RationalFunction::t_power(2));
        assert_eq!(m(&[&["0", "1"], &["1", "0"]]).determinant().unwrap(), (-1).into());
        assert!(matches!(Matrix::zeros(2, 3).determinant(), Err(LinalgError::NonSquare { .. })));
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(Matrix::zeros(4, 9).nullspace_dimension(), 9);
        assert_eq!(Matrix::identity(5).nullspace_dimension(), 0);
        assert_eq!(m(&[&["1", "alpha"]]).nullspace_dimension(), 1);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = m(&[&["1", "alpha", "t"], &["alpha", "alpha^2", "1"]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let x = Matrix::from_rows(ns[0].iter().map(|e| vec![e.clone()]).collect()).unwrap();
        assert!((&a * &x).is_zero());
    }

    #[test]
    fn generic_rank_records_assumptions() {
        let a = m(&[&["alpha - 1", "1"], &["0", "1"]]);
        let r = a.rref();
        assert_eq!(r.rank, 2);
        assert!(r.assumed_nonzero.iter().any(|p| p.contains(&Symbol::Alpha)));
    }

    #[test]
    fn inverse_of_parametric_matrix() {
        let a = m(&[&["t", "1/t"], &["alpha", "1"]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(m(&[&["1", "1"], &["1", "1"]]).inverse().is_err());
    }
}
