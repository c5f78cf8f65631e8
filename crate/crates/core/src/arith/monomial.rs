use std::cmp::Ordering;
use std::fmt;

use super::Symbol;

/// A power product of symbols, stored sparsely as `(symbol, exponent)` pairs
/// sorted by symbol with strictly positive exponents.
///
/// Ordered graded-lexicographically under the symbol order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(sym: Symbol) -> Monomial {
        Monomial(vec![(sym, 1)])
    }

    pub fn power(sym: Symbol, exp: u32) -> Monomial {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(sym, exp)])
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated symbols are merged and
    /// zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Symbol, u32)>>(pairs: I) -> Monomial {
        let mut v: Vec<(Symbol, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(v.len());
        for (s, e) in v {
            match out.last_mut() {
                Some((ls, le)) if *ls == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, sym: &Symbol) -> u32 {
        self.0.iter().find(|(s, _)| s == sym).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(s, e)| other.exponent(s) >= *e)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (s, e) in &self.0 {
            let d = other.exponent(s);
            match e.cmp(&d) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((s.clone(), e - d)),
            }
        }
        if other.0.iter().any(|(s, _)| self.exponent(s) == 0) {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(s, e)| {
                    let d = other.exponent(s);
                    (d > 0).then(|| (s.clone(), (*e).min(d)))
                })
                .collect(),
        )
    }

    /// Removes `sym` entirely, returning its former exponent.
    pub fn split_off(&self, sym: &Symbol) -> (u32, Monomial) {
        let e = self.exponent(sym);
        (e, Monomial(self.0.iter().filter(|(s, _)| s != sym).cloned().collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            for k in 0..a.len().min(b.len()) {
                let (sa, ea) = &a[k];
                let (sb, eb) = &b[k];
                match sa.cmp(sb) {
                    // `a` carries an earlier symbol that `b` lacks.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                }
            }
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|(s, e)| (Symbol::from_name(s), *e)))
    }

    #[test]
    fn grlex() {
        // degree dominates
        assert!(m(&[("eps", 3)]) > m(&[("t", 2)]));
        // same degree: t beats alpha
        assert!(m(&[("t", 1)]) > m(&[("alpha", 1)]));
        assert!(m(&[("t", 1), ("eps", 1)]) > m(&[("alpha", 2)]));
        assert!(m(&[("alpha", 2)]) > m(&[("alpha", 1), ("eps", 1)]));
        assert!(m(&[]) < m(&[("eps", 1)]));
    }

    #[test]
    fn div_and_gcd() {
        let a = m(&[("t", 3), ("alpha", 1)]);
        let b = m(&[("t", 1)]);
        assert_eq!(a.div(&b), Some(m(&[("t", 2), ("alpha", 1)])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.div(&m(&[("eps", 1)])), None);
        assert_eq!(a.gcd(&m(&[("t", 2), ("eps", 4)])), m(&[("t", 2)]));
        assert_eq!(a.mul(&b), m(&[("t", 4), ("alpha", 1)]));
    }
}
