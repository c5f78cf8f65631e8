use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{gcd, ArithError, Monomial, Polynomial, Rational, Symbol};

/// Order of vanishing in `t` at `t = 0`; `Infinite` for the zero function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TOrder {
    Finite(i64),
    Infinite,
}

impl TOrder {
    pub fn finite(self) -> Option<i64> {
        match self {
            TOrder::Finite(k) => Some(k),
            TOrder::Infinite => None,
        }
    }
}

impl Add for TOrder {
    type Output = TOrder;
    fn add(self, rhs: TOrder) -> TOrder {
        match (self, rhs) {
            (TOrder::Finite(a), TOrder::Finite(b)) => TOrder::Finite(a + b),
            _ => TOrder::Infinite,
        }
    }
}

impl fmt::Display for TOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TOrder::Finite(k) => write!(f, "{k}"),
            TOrder::Infinite => f.write_str("inf"),
        }
    }
}

/// A reduced quotient of polynomials.
///
/// Invariants: `gcd(num, den) = 1`, `den` has leading coefficient 1 in
/// graded-lex order, and zero is `0/1`. Two values are equal exactly when
/// their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(d) = den.as_constant() {
            let inv = d.recip();
            return RationalFunction { num: num.scale(&inv), den: Polynomial::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Builds a value from parts already known to be coprime with monic
    /// denominator.
    fn from_reduced(num: Polynomial, den: Polynomial) -> RationalFunction {
        debug_assert!(den.leading_coefficient().is_one());
        if num.is_zero() {
            RationalFunction::zero()
        } else {
            RationalFunction { num, den }
        }
    }

    pub fn zero() -> RationalFunction {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn from_rational(q: Rational) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(q))
    }

    pub fn from_int(n: i64) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::from_int(n))
    }

    pub fn var(sym: Symbol) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::var(sym))
    }

    /// `t^k` for any integer `k`.
    pub fn t_power(k: i64) -> RationalFunction {
        let m = Monomial::power(Symbol::T, k.unsigned_abs() as u32);
        let p = Polynomial::term(Rational::one(), m);
        if k >= 0 {
            RationalFunction::from_poly(p)
        } else {
            RationalFunction { num: Polynomial::one(), den: p }
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// Total number of stored terms; used as a pivot complexity measure.
    pub fn complexity(&self) -> usize {
        self.num.term_count() + self.den.term_count()
    }

    pub fn contains(&self, sym: &Symbol) -> bool {
        self.num.contains(sym) || self.den.contains(sym)
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn inv(&self) -> Result<RationalFunction, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let lc = self.num.leading_coefficient().recip();
        Ok(RationalFunction::from_reduced(self.den.scale(&lc), self.num.scale(&lc)))
    }

    pub fn pow(&self, e: i64) -> Result<RationalFunction, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RationalFunction::from_reduced(base.num.pow(k), base.den.pow(k)))
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction::from_reduced(self.num.scale(c), self.den.clone())
    }

    /// `min t-degree(num) - min t-degree(den)`.
    pub fn t_order(&self) -> TOrder {
        match self.num.min_degree_in(&Symbol::T) {
            None => TOrder::Infinite,
            Some(n) => {
                let d = self.den.min_degree_in(&Symbol::T).unwrap_or(0);
                TOrder::Finite(n as i64 - d as i64)
            }
        }
    }

    /// The limit as `t -> 0`, a function of the remaining symbols.
    pub fn limit_t0(&self) -> Result<RationalFunction, ArithError> {
        match self.t_order() {
            TOrder::Infinite => Ok(RationalFunction::zero()),
            TOrder::Finite(k) if k > 0 => Ok(RationalFunction::zero()),
            TOrder::Finite(k) if k < 0 => Err(ArithError::Pole { order: k }),
            TOrder::Finite(_) => {
                let nm = Monomial::power(Symbol::T, self.num.min_degree_in(&Symbol::T).unwrap());
                let dm = Monomial::power(Symbol::T, self.den.min_degree_in(&Symbol::T).unwrap());
                let num = self.num.div_monomial(&nm).unwrap().at_zero(&Symbol::T);
                let den = self.den.div_monomial(&dm).unwrap().at_zero(&Symbol::T);
                RationalFunction::new(num, den)
            }
        }
    }

    /// Substitutes the given symbols; the result may still contain others.
    pub fn substitute(&self, values: &BTreeMap<Symbol, Rational>) -> Result<RationalFunction, ArithError> {
        let num = self.num.substitute(values);
        let den = self.den.substitute(values);
        if den.is_zero() {
            return Err(ArithError::EvaluationPole);
        }
        Ok(RationalFunction::reduce(num, den))
    }

    /// Replaces `sym` by the rational function `value`.
    pub fn compose(&self, sym: &Symbol, value: &RationalFunction) -> Result<RationalFunction, ArithError> {
        let eval = |p: &Polynomial| -> RationalFunction {
            let mut acc = RationalFunction::zero();
            for (e, c) in p.coefficients_in(sym) {
                let pw = value.pow(e as i64).expect("nonnegative power");
                acc = &acc + &(&RationalFunction::from_poly(c) * &pw);
            }
            acc
        };
        eval(&self.num).checked_div(&eval(&self.den)).map_err(|_| ArithError::EvaluationPole)
    }

    pub fn evaluate(&self, values: &BTreeMap<Symbol, Rational>) -> Result<Rational, ArithError> {
        let missing = |p: &Polynomial| p.symbols().into_iter().find(|s| !values.contains_key(s));
        if let Some(s) = missing(&self.num).or_else(|| missing(&self.den)) {
            return Err(ArithError::UnboundSymbol(s));
        }
        let d = self.den.evaluate(values).unwrap();
        if d.is_zero() {
            return Err(ArithError::EvaluationPole);
        }
        Ok(self.num.evaluate(values).unwrap() / d)
    }

    fn is_negative_leading(&self) -> bool {
        self.num.is_negative_leading()
    }

    /// Writes `self` as a coefficient of a basis vector: `""` for 1, `"-"`
    /// for -1, otherwise a factor followed by `*`.
    pub fn coefficient_prefix(&self) -> String {
        if self.is_one() {
            String::new()
        } else if (-self).is_one() {
            "-".into()
        } else if self.den.is_one() && self.num.term_count() > 1 {
            format!("({})*", self)
        } else {
            format!("{}*", self)
        }
    }

    /// Sign-split form used when joining terms with ` + ` / ` - `.
    pub fn split_sign(&self) -> (bool, RationalFunction) {
        if self.is_negative_leading() {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let simple_den = self.den.is_monomial() && self.den.leading_term().is_some_and(|(m, _)| m.pairs().len() == 1);
        if simple_den {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction::from_poly(num);
            }
            return RationalFunction::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let ld = self.den.div_exact(&g).unwrap();
        let rd = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &rd) + &(&rhs.num * &ld);
        RationalFunction::reduce(num, &self.den * &rd)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so the product is already reduced
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction::from_reduced(num, den)
        } else {
            let inv = lc.recip();
            RationalFunction::from_reduced(num.scale(&inv), den.scale(&inv))
        }
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction { (&self).$f(&rhs) }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: &RationalFunction) -> RationalFunction { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RationalFunction::from_int(n)
    }
}
