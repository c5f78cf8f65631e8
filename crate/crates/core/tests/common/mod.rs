//! Independent oracles over plain rationals. Nothing here uses the library's
//! linear algebra, identity checkers or transformation code; the library is
//! only asked for the constants and family entries at concrete points.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use degencheck::algebra::AlgebraStructure;
use degencheck::arith::{Rational, RationalFunction, Symbol};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;
pub type Values = BTreeMap<Symbol, Q>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_q(r: &mut ChaCha8Rng) -> Q {
    q(r.gen_range(-9..=9), r.gen_range(1..=5))
}

pub fn random_vector(r: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| random_q(r)).collect()
}

/// Random parameter values keeping every expression in `avoid` nonzero.
pub fn random_params(r: &mut ChaCha8Rng, params: &[Symbol], avoid: &[RationalFunction]) -> Values {
    loop {
        let v: Values = params.iter().map(|p| (p.clone(), random_q(r))).collect();
        let ok = avoid.iter().all(|e| matches!(e.evaluate(&v), Ok(x) if !x.is_zero()));
        if ok {
            return v;
        }
    }
}

/// Dense antisymmetric table `c[i][j][k]` (0-based) at concrete parameters.
pub struct Table {
    pub n: usize,
    pub c: Vec<Vec<Vec<Q>>>,
}

impl Table {
    pub fn of(a: &AlgebraStructure, values: &Values) -> Table {
        let n = a.dim();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for (&(i, j, k), f) in a.constants() {
            let v = f.evaluate(values).expect("constant evaluates");
            c[i - 1][j - 1][k - 1] = v.clone();
            c[j - 1][i - 1][k - 1] = -v;
        }
        Table { n, c }
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..self.n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &s * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn jacobian(&self, a: &[Q], b: &[Q], c: &[Q]) -> Vec<Q> {
        let x = self.mul(&self.mul(a, b), c);
        let y = self.mul(&self.mul(b, c), a);
        let z = self.mul(&self.mul(c, a), b);
        (0..self.n).map(|k| &x[k] + &y[k] + &z[k]).collect()
    }

    /// `(ab)(cb) - J(a,b,c) b` without any linearization.
    pub fn tortkara(&self, a: &[Q], b: &[Q], c: &[Q]) -> Vec<Q> {
        let l = self.mul(&self.mul(a, b), &self.mul(c, b));
        let r = self.mul(&self.jacobian(a, b, c), b);
        (0..self.n).map(|k| &l[k] - &r[k]).collect()
    }

    /// Dimension of the derivation algebra, via an explicit linear system.
    pub fn derivation_dimension(&self) -> usize {
        let n = self.n;
        let var = |p: usize, q: usize| p * n + q; // D(e_q) = sum_p D[p][q] e_p
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut row = vec![Q::zero(); n * n];
                    for l in 0..n {
                        row[var(k, l)] += &self.c[i][j][l];
                    }
                    for p in 0..n {
                        row[var(p, i)] -= &self.c[p][j][k];
                        row[var(p, j)] -= &self.c[i][p][k];
                    }
                    rows.push(row);
                }
            }
        }
        n * n - rank(rows)
    }
}

pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Solves `a x = b` for square invertible `a`.
pub fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Vec<Q> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let d = &f * &a[c][j];
                    a[i][j] -= d;
                }
                let d = &f * &b[c];
                b[i] -= d;
            }
        }
    }
    (0..n).map(|i| &b[i] / &a[i][i]).collect()
}

/// Structure constants of `source` in the basis whose rows are `f` (already
/// evaluated at some `t`), keyed by 1-based `(i, j, k)` with `i < j`.
pub fn transformed_at(source: &Table, f: &[Vec<Q>]) -> BTreeMap<(usize, usize, usize), Q> {
    let n = source.n;
    let ft: Vec<Vec<Q>> = (0..n).map(|r| (0..n).map(|c| f[c][r].clone()).collect()).collect();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = source.mul(&f[i], &f[j]);
            let c = solve(ft.clone(), v);
            for (k, x) in c.into_iter().enumerate() {
                out.insert((i + 1, j + 1, k + 1), x);
            }
        }
    }
    out
}

pub fn abs_le(x: &Q, bound: &Q) -> bool {
    x.abs() <= *bound
}

/// Random rational function in `t` and `alpha` with small degrees.
pub fn random_rf(r: &mut ChaCha8Rng) -> RationalFunction {
    let num = random_poly(r);
    let mut den = random_poly(r);
    while den.is_zero() {
        den = random_poly(r);
    }
    num / den
}

pub fn random_poly(r: &mut ChaCha8Rng) -> RationalFunction {
    let t = RationalFunction::var(Symbol::T);
    let a = RationalFunction::var(Symbol::Alpha);
    let mut p = RationalFunction::zero();
    for _ in 0..r.gen_range(1..=3) {
        let m = t.pow(r.gen_range(0..=2)).unwrap() * a.pow(r.gen_range(0..=2)).unwrap();
        p = p + RationalFunction::from_rational(random_q(r)) * m;
    }
    p
}
