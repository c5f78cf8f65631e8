//! Isomorphism invariants computed by generic rank.

use super::{AlgebraStructure, Element};
use crate::linalg::Matrix;

/// Basis (as rows) of the span of `vectors`.
fn span(vectors: Vec<Element>, dim: usize) -> Vec<Element> {
    let rows: Vec<_> = vectors.into_iter().filter(|v| !v.is_zero()).map(Element::into_coords).collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let r = Matrix::from_rows(rows).expect("equal lengths").rref();
    (0..r.rank).map(|i| Element::new(r.matrix.row(i).to_vec())).inspect(|e| debug_assert_eq!(e.dim(), dim)).collect()
}

/// Dimensions of `A^1 = A`, `A^k = sum_{i+j=k} A^i A^j`, stopping at the
/// first zero term or once the sequence stops decreasing.
pub fn lcs_dimensions(a: &AlgebraStructure) -> Vec<usize> {
    let n = a.dim();
    let mut powers: Vec<Vec<Element>> = vec![(1..=n).map(|i| Element::basis(n, i)).collect()];
    let mut dims = vec![n];
    if n == 0 {
        return dims;
    }
    loop {
        let k = powers.len() + 1;
        let mut gens = Vec::new();
        for i in 1..=k / 2 {
            let j = k - i;
            for u in &powers[i - 1] {
                for v in &powers[j - 1] {
                    gens.push(a.mul(u, v));
                }
            }
        }
        let next = span(gens, n);
        let d = next.len();
        let prev = *dims.last().unwrap();
        dims.push(d);
        if d == 0 || d == prev {
            return dims;
        }
        powers.push(next);
    }
}

pub fn is_nilpotent(a: &AlgebraStructure) -> bool {
    lcs_dimensions(a).last() == Some(&0)
}

/// `dim {x : x e_j = 0 for all j}`.
pub fn annihilator_dimension(a: &AlgebraStructure) -> usize {
    let n = a.dim();
    let mut m = Matrix::zeros(n * n, n);
    for j in 1..=n {
        for i in 1..=n {
            let col = a.basis_product(i, j);
            for k in 1..=n {
                m[((j - 1) * n + (k - 1), i - 1)] = col.coord(k).clone();
            }
        }
    }
    m.nullspace_dimension()
}
