//! Anticommutative algebras given by structure constants.
//!
//! Basis indices in the public API are 1-based, matching the usual
//! `e1 .. en` notation; only pairs `i < j` are stored.

mod identities;
mod invariants;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::arith::{format_combination, ArithError, Rational, RationalFunction, Symbol};

pub use identities::{
    check_jacobi, check_malcev, check_metabelian, check_tortkara, Identity, IdentityOutcome, IdentityWitness,
};
pub use invariants::{annihilator_dimension, is_nilpotent, lcs_dimensions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("product e{i}*e{j} must have i < j")]
    IndexOrder { i: usize, j: usize },
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure constant c({i},{j};{k}) mentions t")]
    TSymbolForbidden { i: usize, j: usize, k: usize },
    #[error("structure constant c({i},{j};{k}) mentions undeclared symbol '{symbol}'")]
    UndeclaredSymbol { i: usize, j: usize, k: usize, symbol: Symbol },
    #[error("t cannot be an algebra parameter")]
    TParameter,
    #[error("cannot specialize: {0}")]
    Arith(#[from] ArithError),
}

/// Key `(i, j, k)` of the constant `c_{i,j}^k` (1-based, `i < j`).
pub type ConstantKey = (usize, usize, usize);

/// A vector in an algebra, by coordinates in the fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<RationalFunction>,
}

impl Element {
    pub fn zero(dim: usize) -> Element {
        Element { coords: vec![RationalFunction::zero(); dim] }
    }

    /// `e_i`, 1-based.
    pub fn basis(dim: usize, i: usize) -> Element {
        let mut e = Element::zero(dim);
        e.coords[i - 1] = RationalFunction::one();
        e
    }

    pub fn new(coords: Vec<RationalFunction>) -> Element {
        Element { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[RationalFunction] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<RationalFunction> {
        self.coords
    }

    /// Coordinate of `e_i`, 1-based.
    pub fn coord(&self, i: usize) -> &RationalFunction {
        &self.coords[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, f: &RationalFunction) -> Element {
        Element { coords: self.coords.iter().map(|c| c * f).collect() }
    }

    /// `self += f * other`.
    pub(crate) fn add_scaled(&mut self, f: &RationalFunction, other: &Element) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = &*a + &(f * b);
            }
        }
    }

    pub fn evaluate(&self, values: &BTreeMap<Symbol, Rational>) -> Result<Vec<Rational>, ArithError> {
        self.coords.iter().map(|c| c.evaluate(values)).collect()
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: BTreeMap<usize, RationalFunction> =
            self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i + 1, c.clone())).collect();
        f.write_str(&format_combination(&m))
    }
}

/// An anticommutative algebra `e_i e_j = sum_k c_{i,j}^k e_k`.
#[derive(Clone, Debug)]
pub struct AlgebraStructure {
    name: String,
    dim: usize,
    params: BTreeSet<Symbol>,
    constants: BTreeMap<ConstantKey, RationalFunction>,
    /// `table[p * dim + q] = e_{p+1} e_{q+1}` for all `p, q`.
    table: Vec<Element>,
}

impl PartialEq for AlgebraStructure {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dim == other.dim
            && self.params == other.params
            && self.constants == other.constants
    }
}

impl Eq for AlgebraStructure {}

impl AlgebraStructure {
    /// Validates and builds an algebra. Zero constants are dropped.
    pub fn new<I>(
        name: impl Into<String>,
        dim: usize,
        params: BTreeSet<Symbol>,
        constants: I,
    ) -> Result<AlgebraStructure, AlgebraError>
    where
        I: IntoIterator<Item = (ConstantKey, RationalFunction)>,
    {
        if params.contains(&Symbol::T) {
            return Err(AlgebraError::TParameter);
        }
        let mut stored = BTreeMap::new();
        for ((i, j, k), c) in constants {
            for index in [i, j, k] {
                if index == 0 || index > dim {
                    return Err(AlgebraError::IndexOutOfRange { index, dim });
                }
            }
            if i >= j {
                return Err(AlgebraError::IndexOrder { i, j });
            }
            if c.contains(&Symbol::T) {
                return Err(AlgebraError::TSymbolForbidden { i, j, k });
            }
            if let Some(symbol) = c.symbols().into_iter().find(|s| !params.contains(s)) {
                return Err(AlgebraError::UndeclaredSymbol { i, j, k, symbol });
            }
            if !c.is_zero() {
                stored.insert((i, j, k), c);
            }
        }
        let mut table = vec![Element::zero(dim); dim * dim];
        for (&(i, j, k), c) in &stored {
            table[(i - 1) * dim + (j - 1)].coords[k - 1] = c.clone();
            table[(j - 1) * dim + (i - 1)].coords[k - 1] = -c;
        }
        Ok(AlgebraStructure { name: name.into(), dim, params, constants: stored, table })
    }

    /// Convenience constructor from `(i, j, k, c)` rows.
    pub fn from_products<I>(
        name: impl Into<String>,
        dim: usize,
        params: &[Symbol],
        products: I,
    ) -> Result<AlgebraStructure, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, usize, RationalFunction)>,
    {
        AlgebraStructure::new(
            name,
            dim,
            params.iter().cloned().collect(),
            products.into_iter().map(|(i, j, k, c)| ((i, j, k), c)),
        )
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> AlgebraStructure {
        AlgebraStructure::new(name, dim, BTreeSet::new(), []).expect("abelian algebra is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &BTreeSet<Symbol> {
        &self.params
    }

    pub fn constants(&self) -> &BTreeMap<ConstantKey, RationalFunction> {
        &self.constants
    }

    /// `c_{i,j}^k` for any `i, j` (antisymmetric extension).
    pub fn constant(&self, i: usize, j: usize, k: usize) -> RationalFunction {
        self.table[(i - 1) * self.dim + (j - 1)].coords[k - 1].clone()
    }

    /// `e_i e_j`, 1-based.
    pub fn basis_product(&self, i: usize, j: usize) -> &Element {
        &self.table[(i - 1) * self.dim + (j - 1)]
    }

    pub fn with_name(&self, name: impl Into<String>) -> AlgebraStructure {
        AlgebraStructure { name: name.into(), ..self.clone() }
    }

    /// Re-runs constructor validation on the stored data.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        AlgebraStructure::new(self.name.clone(), self.dim, self.params.clone(), self.constants.clone()).map(|_| ())
    }

    /// Substitutes rational values for (some of) the parameters.
    pub fn specialize(&self, values: &BTreeMap<Symbol, Rational>) -> Result<AlgebraStructure, AlgebraError> {
        let constants = self
            .constants
            .iter()
            .map(|(k, c)| Ok((*k, c.substitute(values)?)))
            .collect::<Result<Vec<_>, ArithError>>()?;
        let params = self.params.iter().filter(|p| !values.contains_key(p)).cloned().collect();
        AlgebraStructure::new(self.name.clone(), self.dim, params, constants)
    }

    /// Replaces a parameter by a rational function of the parameters.
    pub fn reparametrize(&self, sym: &Symbol, value: &RationalFunction) -> Result<AlgebraStructure, AlgebraError> {
        let constants = self
            .constants
            .iter()
            .map(|(k, c)| Ok((*k, c.compose(sym, value)?)))
            .collect::<Result<Vec<_>, ArithError>>()?;
        let mut params: BTreeSet<Symbol> = self.params.iter().filter(|p| *p != sym).cloned().collect();
        params.extend(value.symbols());
        AlgebraStructure::new(self.name.clone(), self.dim, params, constants)
    }

    fn check_dim(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    /// The bilinear product `x y`.
    pub fn product(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.mul(x, y))
    }

    /// `J(a, b, c) = (ab)c + (bc)a + (ca)b`.
    pub fn jacobian(&self, a: &Element, b: &Element, c: &Element) -> Result<Element, AlgebraError> {
        for x in [a, b, c] {
            self.check_dim(x)?;
        }
        Ok(self.jac(a, b, c))
    }

    pub(crate) fn jac(&self, a: &Element, b: &Element, c: &Element) -> Element {
        let mut out = self.mul(&self.mul(a, b), c);
        let bc_a = self.mul(&self.mul(b, c), a);
        let ca_b = self.mul(&self.mul(c, a), b);
        out.add_scaled(&RationalFunction::one(), &bc_a);
        out.add_scaled(&RationalFunction::one(), &ca_b);
        out
    }

    /// Unchecked product: coefficient of `e_k` is
    /// `sum_{i<j} (x_i y_j - x_j y_i) c_{i,j}^k`.
    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        let n = self.dim;
        let mut out = Element::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let e = &self.table[i * n + j];
                if e.is_zero() {
                    continue;
                }
                let (xi, xj, yi, yj) = (&x.coords[i], &x.coords[j], &y.coords[i], &y.coords[j]);
                let w = match (xi.is_zero() || yj.is_zero(), xj.is_zero() || yi.is_zero()) {
                    (true, true) => continue,
                    (false, true) => xi * yj,
                    (true, false) => -&(xj * yi),
                    (false, false) => &(xi * yj) - &(xj * yi),
                };
                if !w.is_zero() {
                    out.add_scaled(&w, e);
                }
            }
        }
        out
    }

    /// `x e_q` for 1-based `q`.
    pub(crate) fn mul_basis_right(&self, x: &Element, q: usize) -> Element {
        let mut out = Element::zero(self.dim);
        for (p, c) in x.coords.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &self.table[p * self.dim + (q - 1)]);
            }
        }
        out
    }
}

impl fmt::Display for AlgebraStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim)?;
        for i in 1..=self.dim {
            for j in i + 1..=self.dim {
                let p = self.basis_product(i, j);
                if !p.is_zero() {
                    write!(f, "; e{i}e{j} = {p}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arith::parse_expr;

    pub(crate) fn alg(name: &str, params: &[Symbol], rows: &[(usize, usize, usize, &str)]) -> AlgebraStructure {
        AlgebraStructure::from_products(
            name,
            6,
            params,
            rows.iter().map(|&(i, j, k, c)| (i, j, k, parse_expr(c).unwrap())),
        )
        .unwrap()
    }

    pub(crate) fn t00() -> AlgebraStructure {
        alg("T00", &[], &[(1, 2, 3, "1"), (1, 3, 4, "1"), (2, 4, 5, "1")])
    }

    pub(crate) fn g5() -> AlgebraStructure {
        alg(
            "g5",
            &[],
            &[(1, 2, 3, "1"), (1, 3, 4, "1"), (1, 4, 5, "1"), (1, 5, 6, "1"), (2, 3, 5, "1"), (2, 4, 6, "1")],
        )
    }

    pub(crate) fn t19() -> AlgebraStructure {
        alg("T19", &[], &[(1, 2, 3, "1"), (1, 3, 4, "1"), (1, 5, 6, "1"), (2, 4, 5, "1"), (3, 4, 6, "1")])
    }

    fn e(i: usize) -> Element {
        Element::basis(6, i)
    }

    #[test]
    fn products_of_basis_vectors() {
        assert_eq!(t00().product(&e(1), &e(2)).unwrap(), e(3));
        assert!(t00().product(&e(1), &e(1)).unwrap().is_zero());
        assert_eq!(g5().product(&e(2), &e(1)).unwrap(), -&e(3));
    }

    #[test]
    fn product_dimension_mismatch() {
        let err = t00().product(&Element::basis(5, 1), &e(2)).unwrap_err();
        assert_eq!(err, AlgebraError::DimensionMismatch { expected: 6, found: 5 });
    }

    #[test]
    fn jacobian_examples() {
        let ab = AlgebraStructure::abelian("ab", 6);
        assert!(ab.jacobian(&e(1), &e(2), &e(3)).unwrap().is_zero());
        let x = &e(1) + &e(3);
        assert!(t19().jacobian(&x, &x, &e(2)).unwrap().is_zero());
        // (e1e2)e3 = 0, (e2e3)e1 = e5e1 = -e6, (e3e1)e2 = -e4e2 = e6
        assert!(g5().jacobian(&e(1), &e(2), &e(3)).unwrap().is_zero());
        // T19: (e1e2)e4 = e3e4 = e6, (e2e4)e1 = e5e1 = -e6, (e4e1)e2 = 0
        assert!(t19().jacobian(&e(1), &e(2), &e(4)).unwrap().is_zero());
        // T19: (e1e2)e3 = 0, (e2e3)e1 = 0, (e3e1)e2 = -e4e2 = e5
        assert_eq!(t19().jacobian(&e(1), &e(2), &e(3)).unwrap(), e(5));
    }

    #[test]
    fn constructor_validation() {
        let bad = AlgebraStructure::from_products("B", 3, &[], [(2, 1, 3, RationalFunction::one())]);
        assert_eq!(bad.unwrap_err(), AlgebraError::IndexOrder { i: 2, j: 1 });
        let bad = AlgebraStructure::from_products("B", 3, &[], [(1, 2, 4, RationalFunction::one())]);
        assert!(matches!(bad, Err(AlgebraError::IndexOutOfRange { index: 4, .. })));
        let bad = AlgebraStructure::from_products("B", 3, &[], [(1, 2, 3, parse_expr("t").unwrap())]);
        assert!(matches!(bad, Err(AlgebraError::TSymbolForbidden { .. })));
        let bad = AlgebraStructure::from_products("B", 3, &[], [(1, 2, 3, parse_expr("alpha").unwrap())]);
        assert!(matches!(bad, Err(AlgebraError::UndeclaredSymbol { .. })));
    }

    #[test]
    fn specialization() {
        let t09 = alg(
            "T09",
            &[Symbol::Alpha],
            &[(1, 2, 3, "1"), (1, 3, 4, "1"), (1, 5, 6, "alpha+1"), (2, 3, 5, "1"), (2, 4, 6, "alpha")],
        );
        let at = t09.specialize(&BTreeMap::from([(Symbol::Alpha, Rational::from_integer((-1).into()))])).unwrap();
        assert!(at.params().is_empty());
        assert_eq!(at.constants().len(), 4);
        assert_eq!(at.constant(2, 4, 6), (-1).into());
        let refl = t09.reparametrize(&Symbol::Alpha, &parse_expr("-alpha-1").unwrap()).unwrap();
        assert_eq!(refl.constant(1, 5, 6), parse_expr("-alpha").unwrap());
        assert_eq!(refl.constant(2, 4, 6), parse_expr("-alpha-1").unwrap());
    }
}
