//! Exact arithmetic: rationals, multivariate polynomials and rational
//! functions over the symbols `t`, `alpha`, `eps` and user symbols, with
//! `t`-adic order and `t -> 0` limits.

mod gcd;
mod monomial;
mod parse;
mod poly;
mod ratfun;
mod symbol;

use thiserror::Error;

pub use gcd::{content, gcd};
pub use monomial::Monomial;
#[allow(unused_imports)]
pub(crate) use parse::basis_index;
pub use parse::{format_combination, parse_combination, parse_combination_at, parse_expr, parse_expr_at, SyntaxError};
pub use poly::Polynomial;
pub use ratfun::{RationalFunction, TOrder};
pub use symbol::Symbol;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("limit at t = 0 does not exist (t-order {order})")]
    Pole { order: i64 },
    #[error("denominator vanishes at the given assignment")]
    EvaluationPole,
    #[error("no value given for symbol '{0}'")]
    UnboundSymbol(Symbol),
}

/// Parses `p`, `-p`, `p/q` as an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if d == 0.into() {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}
