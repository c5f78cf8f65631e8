//! Expression grammar shared by the algebra and certificate formats.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exp)?
//! exp    := ['-'] INT | '(' ['-'] INT ')'
//! atom   := INT | SYMBOL | BASIS | '(' expr ')'
//! ```
//!
//! `BASIS` is `e<k>` and is only accepted where a linear combination of basis
//! vectors is expected. Negative exponents are accepted on `t` alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::{RationalFunction, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Basis(usize),
    Op(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |col: usize, message: String| SyntaxError { line, column: col0 + col, message };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let tok = match basis_index(&s, 'e') {
                Some(0) => return Err(err(col, "basis indices start at 1".into())),
                Some(k) => Tok::Basis(k),
                None => Tok::Ident(s),
            };
            out.push(Token { tok, col });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), col });
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// `e12` -> `Some(12)` for prefix `e`.
pub(crate) fn basis_index(s: &str, prefix: char) -> Option<usize> {
    let rest = s.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Sym(Symbol),
    Basis(usize, usize),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64),
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    col0: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn err(&self, col: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line: self.line, column: self.col0 + col, message: message.into() }
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Op(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), col);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), col);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        let col = self.col();
        self.pos += 1;
        let paren = self.peek_op() == Some('(');
        if paren {
            self.pos += 1;
        }
        let neg = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let k = match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Int(k), .. }) => k
                .to_i64()
                .filter(|k| *k <= u32::MAX as i64)
                .ok_or_else(|| self.err(self.col(), "exponent too large"))?,
            _ => return Err(self.err(self.col(), "expected an integer exponent")),
        };
        self.pos += 1;
        if paren {
            if self.peek_op() != Some(')') {
                return Err(self.err(self.col(), "expected ')'"));
            }
            self.pos += 1;
        }
        let k = if neg { -k } else { k };
        if k < 0 && !matches!(base, Expr::Sym(Symbol::T)) {
            return Err(self.err(col, "negative exponents are only allowed on t"));
        }
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let col = self.col();
        let tok = self.toks.get(self.pos).ok_or_else(|| self.err(col, "unexpected end of expression"))?;
        self.pos += 1;
        match &tok.tok {
            Tok::Int(k) => Ok(Expr::Int(k.clone())),
            Tok::Ident(s) => Ok(Expr::Sym(Symbol::from_name(s))),
            Tok::Basis(k) => Ok(Expr::Basis(*k, col)),
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err(self.col(), "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(self.err(col, format!("unexpected '{c}'"))),
        }
    }
}

fn parse_ast(src: &str, line: usize, col0: usize) -> Result<Expr, SyntaxError> {
    let toks = lex(src, line, col0)?;
    let mut p = Parser { toks: &toks, pos: 0, line, col0, end_col: src.chars().count() + 1 };
    if toks.is_empty() {
        return Err(p.err(1, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos < toks.len() {
        return Err(p.err(p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Linear combination `scalar + sum coeffs[k] * e_k`, used while evaluating.
#[derive(Debug, Clone, Default)]
struct Linear {
    scalar: RationalFunction,
    coeffs: BTreeMap<usize, RationalFunction>,
}

impl Linear {
    fn scalar(f: RationalFunction) -> Linear {
        Linear { scalar: f, coeffs: BTreeMap::new() }
    }

    fn is_scalar(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn scale(self, f: &RationalFunction) -> Linear {
        Linear {
            scalar: &self.scalar * f,
            coeffs: self.coeffs.into_iter().map(|(k, c)| (k, &c * f)).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn combine(mut self, rhs: Linear, sign: bool) -> Linear {
        let add = |a: &RationalFunction, b: &RationalFunction| if sign { a - b } else { a + b };
        self.scalar = add(&self.scalar, &rhs.scalar);
        for (k, c) in rhs.coeffs {
            let cur = self.coeffs.remove(&k).unwrap_or_default();
            let v = add(&cur, &c);
            if !v.is_zero() {
                self.coeffs.insert(k, v);
            }
        }
        self
    }
}

struct Ctx {
    line: usize,
    col0: usize,
    allow_basis: bool,
}

impl Ctx {
    fn err(&self, col: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line: self.line, column: self.col0 + col, message: message.into() }
    }

    fn eval(&self, e: &Expr) -> Result<Linear, SyntaxError> {
        Ok(match e {
            Expr::Int(k) => Linear::scalar(RationalFunction::from_rational(k.clone().into())),
            Expr::Sym(s) => Linear::scalar(RationalFunction::var(s.clone())),
            Expr::Basis(k, col) => {
                if !self.allow_basis {
                    return Err(self.err(*col, "basis element not allowed in a scalar expression"));
                }
                Linear { scalar: RationalFunction::zero(), coeffs: BTreeMap::from([(*k, RationalFunction::one())]) }
            }
            Expr::Neg(x) => self.eval(x)?.scale(&RationalFunction::from_int(-1)),
            Expr::Pow(b, k) => {
                let base = self.eval(b)?;
                if !base.is_scalar() {
                    return Err(self.err(1, "cannot raise a basis element to a power"));
                }
                if let Expr::Sym(Symbol::T) = **b {
                    Linear::scalar(RationalFunction::t_power(*k))
                } else {
                    Linear::scalar(base.scalar.pow(*k).map_err(|_| self.err(1, "zero to a negative power"))?)
                }
            }
            Expr::Bin(op, l, r, col) => {
                let a = self.eval(l)?;
                let b = self.eval(r)?;
                match op {
                    '+' => a.combine(b, false),
                    '-' => a.combine(b, true),
                    '*' if a.is_scalar() => b.scale(&a.scalar),
                    '*' if b.is_scalar() => a.scale(&b.scalar),
                    '*' => return Err(self.err(*col, "product of two basis elements is not linear")),
                    '/' => {
                        if !b.is_scalar() {
                            return Err(self.err(*col, "division by a basis element"));
                        }
                        let inv = b.scalar.inv().map_err(|_| self.err(*col, "division by zero"))?;
                        a.scale(&inv)
                    }
                    _ => unreachable!(),
                }
            }
        })
    }
}

/// Parses a scalar expression. `line`/`col0` locate `src` in its file for
/// error messages.
pub fn parse_expr_at(src: &str, line: usize, col0: usize) -> Result<RationalFunction, SyntaxError> {
    let ast = parse_ast(src, line, col0)?;
    Ok(Ctx { line, col0, allow_basis: false }.eval(&ast)?.scalar)
}

pub fn parse_expr(src: &str) -> Result<RationalFunction, SyntaxError> {
    parse_expr_at(src, 1, 0)
}

/// Parses a linear combination of `e1 .. e<dim>`; the map holds nonzero
/// coefficients keyed by 1-based index.
pub fn parse_combination_at(
    src: &str,
    dim: usize,
    line: usize,
    col0: usize,
) -> Result<BTreeMap<usize, RationalFunction>, SyntaxError> {
    let ast = parse_ast(src, line, col0)?;
    let ctx = Ctx { line, col0, allow_basis: true };
    let lin = ctx.eval(&ast)?;
    if !lin.scalar.is_zero() {
        return Err(ctx.err(1, "expected a linear combination of basis elements"));
    }
    if let Some(k) = lin.coeffs.keys().find(|k| **k > dim) {
        return Err(ctx.err(1, format!("basis index e{k} exceeds dimension {dim}")));
    }
    Ok(lin.coeffs)
}

pub fn parse_combination(src: &str, dim: usize) -> Result<BTreeMap<usize, RationalFunction>, SyntaxError> {
    parse_combination_at(src, dim, 1, 0)
}

/// Writes a combination in the form accepted by [`parse_combination`].
pub fn format_combination(coeffs: &BTreeMap<usize, RationalFunction>) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().filter(|(_, c)| !c.is_zero()) {
        let (neg, mag) = c.split_sign();
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&mag.coefficient_prefix());
        out.push_str(&format!("e{k}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        parse_expr(s).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(rf("1 + 2*3"), RationalFunction::from_int(7));
        assert_eq!(rf("-2^2"), RationalFunction::from_int(-4));
        assert_eq!(rf("(1+1)^3"), RationalFunction::from_int(8));
        assert_eq!(rf("12/4/3"), RationalFunction::from_int(1));
    }

    #[test]
    fn t_negative_powers() {
        assert_eq!(rf("t^-2"), RationalFunction::t_power(-2));
        assert_eq!(rf("t^(-3)"), RationalFunction::t_power(-3));
        assert_eq!(rf("1/t^2"), RationalFunction::t_power(-2));
        let e = parse_expr("alpha^-1").unwrap_err();
        assert!(e.message.contains("only allowed on t"), "{e}");
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(rf(" alpha/( (alpha + 1 ) * t^2 ) "), rf("alpha/((alpha+1)*t^2)"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_expr("1 + * 2").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(parse_expr("(t + 1").is_err());
        assert!(parse_expr("t $ 1").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("e1 + 1").is_err());
    }

    #[test]
    fn combinations() {
        let c = parse_combination("t*e1 + t^-2*e2 - (eps-1)/t*e3 - e1*t", 6).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&2], RationalFunction::t_power(-2));
        assert_eq!(c[&3], rf("(1-eps)/t"));
        assert!(parse_combination("e1*e2", 6).is_err());
        assert!(parse_combination("e7", 6).is_err());
        assert!(parse_combination("e1 + 1", 6).is_err());
        assert!(parse_combination("e0", 6).is_err());
        assert!(parse_combination("0", 6).unwrap().is_empty());
    }

    #[test]
    fn combination_round_trip() {
        for s in [
            "t*e1 + 1/t^2*e2 - 1/t^3*e3",
            "alpha/(t^2*alpha + t^2)*e4",
            "-e5 + (eps - 1)/t^2*e6",
            "(alpha + 1)*e6",
            "(t - 1)/t*e6",
        ] {
            let c = parse_combination(s, 6).unwrap();
            let back = format_combination(&c);
            assert_eq!(parse_combination(&back, 6).unwrap(), c, "{s} -> {back}");
        }
    }
}
