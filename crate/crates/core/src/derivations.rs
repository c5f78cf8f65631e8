//! Derivation algebras `Der(A) = {D : D(xy) = D(x)y + xD(y)}`.
//!
//! Unknowns are the entries of `D` with `D(e_q) = sum_p D[p][q] e_p`; the
//! unknown `D[p][q]` is column `(p-1)*n + (q-1)`. Rows are ordered by the
//! constraint `(i, j, k)` with `i < j`, lexicographically.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraError, AlgebraStructure};
use crate::arith::{Rational, RationalFunction, Symbol};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct DerivationSystem {
    pub algebra: String,
    pub matrix: Matrix,
}

/// Dimension of `Der(A)` together with the parameter expressions assumed
/// nonzero while computing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationDimension {
    pub dim: usize,
    pub assumed_nonzero: Vec<RationalFunction>,
}

impl DerivationSystem {
    pub fn assemble(a: &AlgebraStructure) -> DerivationSystem {
        let n = a.dim();
        let col = |p: usize, q: usize| (p - 1) * n + (q - 1);
        let pairs = n * (n.saturating_sub(1)) / 2;
        let mut m = Matrix::zeros((pairs * n).max(1), n * n);
        let mut row = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                let eij = a.basis_product(i, j);
                for k in 1..=n {
                    // D(e_i e_j)_k = sum_m c_ij^m D[k][m]
                    for mm in 1..=n {
                        let c = eij.coord(mm);
                        if !c.is_zero() {
                            m[(row, col(k, mm))] = &m[(row, col(k, mm))] + c;
                        }
                    }
                    // - (D(e_i) e_j)_k - (e_i D(e_j))_k
                    for p in 1..=n {
                        let c = a.basis_product(p, j).coord(k);
                        if !c.is_zero() {
                            m[(row, col(p, i))] = &m[(row, col(p, i))] - c;
                        }
                        let c = a.basis_product(i, p).coord(k);
                        if !c.is_zero() {
                            m[(row, col(p, j))] = &m[(row, col(p, j))] - c;
                        }
                    }
                    row += 1;
                }
            }
        }
        DerivationSystem { algebra: a.name().to_string(), matrix: m }
    }

    /// Basis of the solution space, each reshaped into an `n x n` matrix.
    pub fn basis(&self, n: usize) -> Vec<Matrix> {
        self.matrix
            .nullspace()
            .into_iter()
            .map(|v| Matrix::from_rows(v.chunks(n).map(|r| r.to_vec()).collect()).expect("square reshape"))
            .collect()
    }
}

pub fn derivation_analysis(a: &AlgebraStructure) -> DerivationDimension {
    let sys = DerivationSystem::assemble(a);
    let r = sys.matrix.rref();
    let mut assumed: Vec<RationalFunction> = Vec::new();
    for p in r.assumed_nonzero {
        for part in [p.num(), p.den()] {
            if !part.is_constant() {
                let f = RationalFunction::from_poly(part.monic());
                if !assumed.contains(&f) {
                    assumed.push(f);
                }
            }
        }
    }
    DerivationDimension { dim: a.dim() * a.dim() - r.rank, assumed_nonzero: assumed }
}

/// Generic `dim Der(A)` over the field of parameter functions.
pub fn derivation_dimension(a: &AlgebraStructure) -> usize {
    derivation_analysis(a).dim
}

/// `dim Der(A)` after substituting the given parameter values.
pub fn derivation_dimension_at(
    a: &AlgebraStructure,
    values: &BTreeMap<Symbol, Rational>,
) -> Result<usize, AlgebraError> {
    Ok(derivation_dimension(&a.specialize(values)?))
}

/// Whether the linear map `d` (columns are images of basis vectors) is a
/// derivation of `a`.
pub fn is_derivation(a: &AlgebraStructure, d: &Matrix) -> bool {
    let n = a.dim();
    let flat: Vec<Vec<RationalFunction>> = d.entries().iter().map(|e| vec![e.clone()]).collect();
    let x = Matrix::from_rows(flat).expect("column vector");
    d.rows() == n && d.cols() == n && (&DerivationSystem::assemble(a).matrix * &x).is_zero()
}
