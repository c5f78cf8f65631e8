//! Polynomial-identity checks on basis tuples.
//!
//! Multilinear identities (Jacobi, metabelian) are checked on basis triples /
//! quadruples directly. Tortkara and Malcev are quadratic in one variable and
//! are checked through their full linearization in that variable, which over
//! a field of characteristic zero is equivalent to the identity itself.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlgebraStructure, Element};
use crate::arith::RationalFunction;
use crate::exec::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Tortkara,
    Malcev,
    Jacobi,
    Metabelian,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::Tortkara, Identity::Malcev, Identity::Jacobi, Identity::Metabelian];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Tortkara => "tortkara",
            Identity::Malcev => "malcev",
            Identity::Jacobi => "jacobi",
            Identity::Metabelian => "metabelian",
        }
    }

    pub fn from_name(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == s.trim().to_ascii_lowercase())
    }

    /// Meaning of the basis indices recorded in a witness.
    pub fn variables(self) -> &'static [&'static str] {
        match self {
            Identity::Tortkara => &["a", "b", "c", "b'"],
            Identity::Malcev => &["x", "y", "z", "x'"],
            Identity::Jacobi => &["a", "b", "c"],
            Identity::Metabelian => &["x", "y", "z", "w"],
        }
    }

    pub fn check(self, a: &AlgebraStructure, exec: Execution) -> IdentityOutcome {
        match self {
            Identity::Tortkara => check_tortkara(a, exec),
            Identity::Malcev => check_malcev(a, exec),
            Identity::Jacobi => check_jacobi(a, exec),
            Identity::Metabelian => check_metabelian(a, exec),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basis instantiation on which an identity does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityWitness {
    pub identity: Identity,
    /// 1-based basis indices, in the order of [`Identity::variables`].
    pub indices: Vec<usize>,
    pub residual: Element,
}

impl fmt::Display for IdentityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> =
            self.identity.variables().iter().zip(&self.indices).map(|(v, i)| format!("{v}=e{i}")).collect();
        write!(f, "{} fails at {}: residual {}", self.identity, vars.join(", "), self.residual)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    Pass,
    Fail(IdentityWitness),
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, IdentityOutcome::Pass)
    }

    pub fn witness(&self) -> Option<&IdentityWitness> {
        match self {
            IdentityOutcome::Pass => None,
            IdentityOutcome::Fail(w) => Some(w),
        }
    }
}

fn run<F>(a: &AlgebraStructure, identity: Identity, exec: Execution, per_first: F) -> IdentityOutcome
where
    F: Fn(usize) -> Option<(Vec<usize>, Element)> + Sync + Send,
{
    let firsts: Vec<usize> = (1..=a.dim()).collect();
    match exec.find_map_first(&firsts, |&p| per_first(p)) {
        None => IdentityOutcome::Pass,
        Some((indices, residual)) => IdentityOutcome::Fail(IdentityWitness { identity, indices, residual }),
    }
}

fn sum(terms: &[(i64, &Element)], dim: usize) -> Element {
    let mut out = Element::zero(dim);
    for (s, e) in terms {
        out.add_scaled(&RationalFunction::from_int(*s), e);
    }
    out
}

/// Linearized Tortkara identity
/// `(ab)(cb') + (ab')(cb) - J(a,b,c)b' - J(a,b',c)b` on all basis tuples.
pub fn check_tortkara(a: &AlgebraStructure, exec: Execution) -> IdentityOutcome {
    let n = a.dim();
    let e = |i| Element::basis(n, i);
    run(a, Identity::Tortkara, exec, |p| {
        for q in 1..=n {
            for r in 1..=n {
                let jq = a.jac(&e(p), &e(q), &e(r));
                // symmetric in (b, b')
                for s in q..=n {
                    let lhs1 = a.mul(a.basis_product(p, q), a.basis_product(r, s));
                    let lhs2 = a.mul(a.basis_product(p, s), a.basis_product(r, q));
                    let js = a.jac(&e(p), &e(s), &e(r));
                    let rhs1 = a.mul_basis_right(&jq, s);
                    let rhs2 = a.mul_basis_right(&js, q);
                    let res = sum(&[(1, &lhs1), (1, &lhs2), (-1, &rhs1), (-1, &rhs2)], n);
                    if !res.is_zero() {
                        return Some((vec![p, q, r, s], res));
                    }
                }
            }
        }
        None
    })
}

/// Linearized Malcev identity. With `x, x'` the two copies of the repeated
/// variable, checks
/// `(xy)(x'z) + (x'y)(xz) - ((xy)z)x' - ((x'y)z)x - ((yz)x)x' - ((yz)x')x
///  - ((zx)x')y - ((zx')x)y = 0`
/// which linearizes `(xy)(xz) = ((xy)z)x + ((yz)x)x + ((zx)x)y`.
pub fn check_malcev(a: &AlgebraStructure, exec: Execution) -> IdentityOutcome {
    let n = a.dim();
    let rm = |x: &Element, q: usize| a.mul_basis_right(x, q);
    run(a, Identity::Malcev, exec, |p| {
        for q in 1..=n {
            for r in 1..=n {
                // symmetric in (x, x')
                for s in p..=n {
                    let (xy, xpy) = (a.basis_product(p, q), a.basis_product(s, q));
                    let (xz, xpz) = (a.basis_product(p, r), a.basis_product(s, r));
                    let yz = a.basis_product(q, r);
                    let t1 = a.mul(xy, xpz);
                    let t2 = a.mul(xpy, xz);
                    let t3 = rm(&rm(xy, r), s);
                    let t4 = rm(&rm(xpy, r), p);
                    let t5 = rm(&rm(yz, p), s);
                    let t6 = rm(&rm(yz, s), p);
                    let t7 = rm(&rm(a.basis_product(r, p), s), q);
                    let t8 = rm(&rm(a.basis_product(r, s), p), q);
                    let res =
                        sum(&[(1, &t1), (1, &t2), (-1, &t3), (-1, &t4), (-1, &t5), (-1, &t6), (-1, &t7), (-1, &t8)], n);
                    if !res.is_zero() {
                        return Some((vec![p, q, r, s], res));
                    }
                }
            }
        }
        None
    })
}

/// `J(e_p, e_q, e_r) = 0` for `p < q < r` (J is alternating).
pub fn check_jacobi(a: &AlgebraStructure, exec: Execution) -> IdentityOutcome {
    let n = a.dim();
    let e = |i| Element::basis(n, i);
    run(a, Identity::Jacobi, exec, |p| {
        for q in p + 1..=n {
            for r in q + 1..=n {
                let res = a.jac(&e(p), &e(q), &e(r));
                if !res.is_zero() {
                    return Some((vec![p, q, r], res));
                }
            }
        }
        None
    })
}

/// `(e_p e_q)(e_r e_s) = 0` for `p < q`, `r < s`.
pub fn check_metabelian(a: &AlgebraStructure, exec: Execution) -> IdentityOutcome {
    let n = a.dim();
    run(a, Identity::Metabelian, exec, |p| {
        for q in p + 1..=n {
            let pq = a.basis_product(p, q);
            if pq.is_zero() {
                continue;
            }
            for r in 1..=n {
                for s in r + 1..=n {
                    let res = a.mul(pq, a.basis_product(r, s));
                    if !res.is_zero() {
                        return Some((vec![p, q, r, s], res));
                    }
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{g5, t00, t19};
    use super::*;

    const SEQ: Execution = Execution::Sequential;

    #[test]
    fn abelian_passes_everything() {
        let ab = AlgebraStructure::abelian("ab", 6);
        for id in Identity::ALL {
            assert!(id.check(&ab, SEQ).passed(), "{id}");
        }
    }

    #[test]
    fn t19_is_tortkara_but_not_metabelian() {
        assert!(check_tortkara(&t19(), SEQ).passed());
        let w = check_metabelian(&t19(), SEQ);
        let w = w.witness().expect("T19 is not metabelian");
        // (e1e2)(e1e3) = e3 e4 = e6
        assert_eq!(w.indices, vec![1, 2, 1, 3]);
        assert_eq!(w.residual, Element::basis(6, 6));
    }

    #[test]
    fn t00_is_metabelian_and_not_malcev() {
        assert!(check_metabelian(&t00(), SEQ).passed());
        assert!(!check_malcev(&t00(), SEQ).passed());
    }

    #[test]
    fn g5_is_lie() {
        assert!(check_jacobi(&g5(), SEQ).passed());
        assert!(check_malcev(&g5(), SEQ).passed());
    }

    #[test]
    fn strategies_give_the_same_witness() {
        for a in [t00(), t19(), g5()] {
            for id in Identity::ALL {
                assert_eq!(id.check(&a, SEQ), id.check(&a, Execution::Parallel));
            }
        }
    }

    #[test]
    fn witness_residual_is_reproducible() {
        // T19 fails Jacobi at (1,2,3) with residual e5
        let w = check_jacobi(&t19(), SEQ);
        let w = w.witness().unwrap();
        assert_eq!(w.indices, vec![1, 2, 3]);
        assert_eq!(w.residual, Element::basis(6, 5));
        assert!(w.to_string().starts_with("jacobi fails at a=e1, b=e2, c=e3"));
    }

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(Identity::from_name(id.name()), Some(id));
        }
        assert_eq!(Identity::from_name("Lie"), None);
    }
}
