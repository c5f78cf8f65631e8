//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive content / primitive-part reduction: pick the first variable in
//! symbol order, split off the contents (gcds of coefficients, computed
//! recursively in fewer variables) and run a primitive pseudo-remainder
//! sequence on the primitive parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Rational, Symbol};

/// Monic gcd of `a` and `b`. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    if a.is_monomial() || b.is_monomial() {
        return Polynomial::term(Rational::one(), mg);
    }
    let a = a.div_monomial(&ma).expect("monomial content divides");
    let b = b.div_monomial(&mb).expect("monomial content divides");
    let g = heuristic_gcd(&integer_primitive(&a), &integer_primitive(&b)).unwrap_or_else(|| gcd_no_monomial(&a, &b));
    g.mul_monomial(&mg).monic()
}

fn integer_primitive(p: &Polynomial) -> Polynomial {
    p.scale(&rational_content(std::slice::from_ref(p)).recip())
}

fn max_norm(p: &Polynomial) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

/// Limit on the evaluation point size before giving up on the heuristic.
const HEURISTIC_MAX_BITS: u64 = 4096;

/// Heuristic gcd of integer polynomials: evaluate one variable at a large
/// integer `xi`, take the gcd of the images recursively, and read the
/// candidate back from the balanced base-`xi` digits of its coefficients.
/// A candidate is accepted only if it divides both inputs, which makes it
/// the gcd once `xi` exceeds twice the smaller coefficient norm. `None`
/// means the heuristic did not succeed.
fn heuristic_gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let (ca, cb) = (rational_content(std::slice::from_ref(a)), rational_content(std::slice::from_ref(b)));
    let c = Polynomial::constant(Rational::from_integer(ca.numer().gcd(cb.numer())));
    if a.is_constant() || b.is_constant() {
        return Some(c);
    }
    let a = &a.scale(&ca.recip());
    let b = &b.scale(&cb.recip());
    let x = a.symbols().union(&b.symbols()).last().cloned()?;
    let bound = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = bound * 2 + 29;
    for _ in 0..6 {
        if xi.bits() > HEURISTIC_MAX_BITS {
            return None;
        }
        let ia = evaluate_at(a, &x, &xi);
        let ib = evaluate_at(b, &x, &xi);
        if !ia.is_zero() && !ib.is_zero() {
            if let Some(gi) = heuristic_gcd(&ia, &ib) {
                let cand = lift(&gi, &x, &xi);
                if !cand.is_zero() {
                    let cand = integer_primitive(&cand);
                    if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                        return Some(&c * &cand);
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn evaluate_at(p: &Polynomial, x: &Symbol, xi: &BigInt) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (e, c) in p.coefficients_in(x) {
        acc = &acc + &c.scale(&Rational::from_integer(xi.pow(e)));
    }
    acc
}

/// Replaces every integer coefficient `c = sum d_k xi^k` (balanced digits)
/// by `sum d_k x^k`.
fn lift(g: &Polynomial, x: &Symbol, xi: &BigInt) -> Polynomial {
    let half = xi / 2;
    let mut out = Polynomial::zero();
    for (m, c) in g.terms() {
        let mut c = c.numer().clone();
        let mut k = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                let mono = m.mul(&Monomial::power(x.clone(), k));
                out = &out + &Polynomial::term(Rational::from_integer(d.clone()), mono);
            }
            c = (c - d) / xi;
            k += 1;
        }
    }
    out
}

fn gcd_no_monomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a.term_count() <= b.term_count() {
        if b.div_exact(a).is_some() {
            return a.monic();
        }
    } else if a.div_exact(b).is_some() {
        return b.monic();
    }
    let sa = a.symbols();
    let sb = b.symbols();
    let x = sa.union(&sb).next().cloned().expect("non-constant input");
    if !sa.contains(&x) {
        return gcd(a, &content(b, &x));
    }
    if !sb.contains(&x) {
        return gcd(&content(a, &x), b);
    }
    let ca = content(a, &x);
    let cb = content(b, &x);
    let c = gcd(&ca, &cb);
    let pa = to_dense(&divide_coefficients(a, &ca, &x), &x);
    let pb = to_dense(&divide_coefficients(b, &cb, &x), &x);
    if coprime_image(&pa, &pb) {
        return c.monic();
    }
    let g = primitive_prs(pa, pb, &x);
    (&c * &g).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content(p: &Polynomial, x: &Symbol) -> Polynomial {
    let mut g = Polynomial::zero();
    for c in p.coefficients_in(x).values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_coefficients(p: &Polynomial, c: &Polynomial, x: &Symbol) -> Polynomial {
    if c.is_one() {
        return p.clone();
    }
    let coeffs = p
        .coefficients_in(x)
        .into_iter()
        .map(|(e, k)| (e, k.div_exact(c).expect("content divides every coefficient")))
        .collect();
    Polynomial::from_coefficients_in(x, &coeffs)
}

type Dense = Vec<Polynomial>;

fn to_dense(p: &Polynomial, x: &Symbol) -> Dense {
    let coeffs = p.coefficients_in(x);
    let deg = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
    let mut v = vec![Polynomial::zero(); deg + 1];
    for (e, c) in coeffs {
        v[e as usize] = c;
    }
    v
}

fn from_dense(v: &Dense, x: &Symbol) -> Polynomial {
    let coeffs = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as u32, c.clone())).collect();
    Polynomial::from_coefficients_in(x, &coeffs)
}

fn trim(v: &mut Dense) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn is_zero_dense(v: &Dense) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Sufficient test for `gcd(a, b) = 1` in `x`: the other variables are set to
/// small integers keeping both leading coefficients nonzero, and the univariate
/// images are checked for coprimality. An image gcd of degree 0 proves the
/// true gcd has degree 0, since specialization cannot lower its degree.
fn coprime_image(a: &Dense, b: &Dense) -> bool {
    let mut syms = std::collections::BTreeSet::new();
    for p in a.iter().chain(b) {
        syms.extend(p.symbols());
    }
    for attempt in 0..3i64 {
        let point: std::collections::BTreeMap<Symbol, Rational> = syms
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), Rational::from_integer(BigInt::from(3 + 7 * attempt + 2 * i as i64))))
            .collect();
        let image = |v: &Dense| -> Option<Vec<Rational>> { v.iter().map(|p| p.evaluate(&point)).collect() };
        let (Some(ia), Some(ib)) = (image(a), image(b)) else { return false };
        if ia.last().is_none_or(Zero::is_zero) || ib.last().is_none_or(Zero::is_zero) {
            continue;
        }
        return univariate_gcd_degree(ia, ib) == 0;
    }
    false
}

fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    let strip = |v: &mut Vec<Rational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let f = a.last().unwrap() / &lb;
            let shift = a.len() - b.len();
            for (k, bc) in b.iter().enumerate() {
                a[k + shift] -= &f * bc;
            }
            a.pop();
            strip(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonzero).
fn prem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut r);
    while !is_zero_dense(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(bc * &lr);
        }
        trim(&mut r);
        if r.len() - 1 == dr && r[dr].is_zero() {
            break;
        }
    }
    r
}

/// Primitive part, scaled to coprime integer coefficients with a positive
/// leading coefficient.
fn primitive_part(v: &Dense) -> Dense {
    let mut c = Polynomial::zero();
    for k in v {
        c = gcd(&c, k);
        if c.is_one() {
            break;
        }
    }
    let mut out: Dense = if c.is_one() || c.is_zero() {
        v.clone()
    } else {
        v.iter().map(|k| k.div_exact(&c).expect("content divides")).collect()
    };
    trim(&mut out);
    let mut q = rational_content(&out);
    if out.last().is_some_and(|p| p.leading_coefficient() < Rational::zero()) {
        q = -q;
    }
    if !q.is_one() && !q.is_zero() {
        let inv = q.recip();
        for k in out.iter_mut() {
            *k = k.scale(&inv);
        }
    }
    out
}

/// Positive rational `q` such that `v / q` has coprime integer coefficients.
fn rational_content(v: &[Polynomial]) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in v.iter().flat_map(|p| p.terms()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num, den)
    }
}

fn primitive_prs(mut a: Dense, mut b: Dense, x: &Symbol) -> Polynomial {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b);
        if is_zero_dense(&r) {
            return from_dense(&primitive_part(&b), x);
        }
        if r.len() == 1 {
            return Polynomial::one();
        }
        a = b;
        b = primitive_part(&r);
    }
}
