//! Text formats.
//!
//! Algebra:
//!
//! ```text
//! algebra T09 dim 6 params alpha
//! e1*e2 = e3
//! e1*e5 = (alpha + 1)*e6
//! ```
//!
//! Certificate:
//!
//! ```text
//! degeneration T19 -> T09 where alpha + 1 != 0
//! E1 = t*e1
//! ...
//! ```
//!
//! Statements are separated by newlines or by a `/` that is directly
//! followed by the start of another statement, so `algebra A dim 3 /
//! e1*e2 = e3` is one algebra on one line while `/` inside expressions keeps
//! meaning division. `#` starts a comment.

use std::collections::{BTreeMap, BTreeSet};

use super::{Catalog, CatalogError};
use crate::algebra::AlgebraStructure;
use crate::arith::{
    basis_index, format_combination, parse_combination_at, parse_expr_at, RationalFunction, Symbol, SyntaxError,
};
use crate::degeneration::{BasisFamily, DegenerationCertificate};
use crate::linalg::Matrix;

#[derive(Debug)]
struct Stmt {
    text: String,
    line: usize,
    /// 0-based character offset of `text` within its line.
    col: usize,
}

impl Stmt {
    fn err(&self, offset: usize, message: impl Into<String>) -> CatalogError {
        CatalogError::Syntax(SyntaxError { line: self.line, column: self.col + offset + 1, message: message.into() })
    }
}

fn is_statement_head(s: &str) -> bool {
    let s = s.trim_start();
    let word = |w: &str| s.strip_prefix(w).is_some_and(|r| r.starts_with(char::is_whitespace));
    if word("algebra") || word("degeneration") {
        return true;
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some((lhs, _)) = compact.split_once('=') else { return false };
    if basis_index(lhs, 'E').is_some() {
        return true;
    }
    matches!(lhs.split_once('*'), Some((a, b)) if basis_index(a, 'e').is_some() && basis_index(b, 'e').is_some())
}

fn statements(src: &str) -> Vec<Stmt> {
    let mut out = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut start = 0;
        let mut depth = 0i32;
        let push = |from: usize, to: usize, out: &mut Vec<Stmt>| {
            let piece: String = chars[from..to].iter().collect();
            let lead = piece.len() - piece.trim_start().len();
            let lead_chars = piece[..lead].chars().count();
            let text = piece.trim().to_string();
            if !text.is_empty() {
                out.push(Stmt { text, line: ln + 1, col: from + lead_chars });
            }
        };
        for (i, &c) in chars.iter().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    let rest: String = chars[i + 1..].iter().collect();
                    if is_statement_head(&rest) {
                        push(start, i, &mut out);
                        start = i + 1;
                    }
                }
                _ => {}
            }
        }
        push(start, chars.len(), &mut out);
    }
    out
}

/// Splits on commas outside parentheses, returning `(offset, piece)`.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

struct AlgebraDraft {
    name: String,
    dim: usize,
    params: BTreeSet<Symbol>,
    constants: BTreeMap<(usize, usize, usize), RationalFunction>,
    pairs: BTreeSet<(usize, usize)>,
    line: usize,
}

impl AlgebraDraft {
    fn header(st: &Stmt) -> Result<AlgebraDraft, CatalogError> {
        let words: Vec<&str> = st.text.split_whitespace().collect();
        if words.len() < 4 || words[0] != "algebra" || words[2] != "dim" {
            return Err(st.err(0, "expected 'algebra <name> dim <n> [params <sym,...>]'"));
        }
        let dim: usize = words[3]
            .parse()
            .ok()
            .filter(|d| *d > 0)
            .ok_or_else(|| st.err(0, format!("invalid dimension '{}'", words[3])))?;
        let mut params = BTreeSet::new();
        if words.len() > 4 {
            if words[4] != "params" {
                return Err(st.err(0, format!("unexpected '{}' in algebra header", words[4])));
            }
            for p in words[5..].join(" ").split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let s = Symbol::from_name(p);
                if s.is_t() {
                    return Err(st.err(0, "t cannot be an algebra parameter"));
                }
                params.insert(s);
            }
        }
        Ok(AlgebraDraft {
            name: words[1].to_string(),
            dim,
            params,
            constants: BTreeMap::new(),
            pairs: BTreeSet::new(),
            line: st.line,
        })
    }

    fn product(&mut self, st: &Stmt) -> Result<(), CatalogError> {
        let (lhs, rhs) = st.text.split_once('=').ok_or_else(|| st.err(0, "expected 'e<i>*e<j> = ...'"))?;
        let compact: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
        let (i, j) = compact
            .split_once('*')
            .and_then(|(a, b)| Some((basis_index(a, 'e')?, basis_index(b, 'e')?)))
            .ok_or_else(|| st.err(0, "expected 'e<i>*e<j>' on the left-hand side"))?;
        for idx in [i, j] {
            if idx == 0 || idx > self.dim {
                return Err(st.err(0, format!("basis index e{idx} out of range 1..={}", self.dim)));
            }
        }
        if i >= j {
            return Err(CatalogError::IndexOrder { line: st.line, i, j });
        }
        if !self.pairs.insert((i, j)) {
            return Err(CatalogError::DuplicateProduct { line: st.line, i, j });
        }
        let offset = st.col + lhs.chars().count() + 1;
        for (k, c) in parse_combination_at(rhs, self.dim, st.line, offset)? {
            if c.contains(&Symbol::T) {
                return Err(CatalogError::TSymbolForbidden { line: st.line });
            }
            self.constants.insert((i, j, k), c);
        }
        Ok(())
    }

    fn finish(self) -> Result<AlgebraStructure, CatalogError> {
        AlgebraStructure::new(self.name, self.dim, self.params, self.constants)
            .map_err(|source| CatalogError::InvalidAlgebra { line: self.line, source })
    }
}

/// Parses any number of algebras.
pub fn parse_algebras(src: &str) -> Result<Vec<AlgebraStructure>, CatalogError> {
    let mut out = Vec::new();
    let mut cur: Option<AlgebraDraft> = None;
    for st in statements(src) {
        if st.text.starts_with("algebra") && st.text[7..].starts_with(char::is_whitespace) {
            if let Some(d) = cur.take() {
                out.push(d.finish()?);
            }
            cur = Some(AlgebraDraft::header(&st)?);
        } else {
            match cur.as_mut() {
                Some(d) => d.product(&st)?,
                None => return Err(st.err(0, "expected an 'algebra' header")),
            }
        }
    }
    if let Some(d) = cur {
        out.push(d.finish()?);
    }
    Ok(out)
}

/// Parses a text holding exactly one algebra.
pub fn parse_algebra(src: &str) -> Result<AlgebraStructure, CatalogError> {
    let mut v = parse_algebras(src)?;
    if v.len() != 1 {
        return Err(CatalogError::Count { what: "algebra", found: v.len() });
    }
    Ok(v.pop().unwrap())
}

pub fn serialize_algebra(a: &AlgebraStructure) -> String {
    let mut out = format!("algebra {} dim {}", a.name(), a.dim());
    if !a.params().is_empty() {
        let ps: Vec<&str> = a.params().iter().map(|p| p.name()).collect();
        out.push_str(&format!(" params {}", ps.join(",")));
    }
    out.push('\n');
    let mut by_pair: BTreeMap<(usize, usize), BTreeMap<usize, RationalFunction>> = BTreeMap::new();
    for (&(i, j, k), c) in a.constants() {
        by_pair.entry((i, j)).or_default().insert(k, c.clone());
    }
    for ((i, j), comb) in by_pair {
        out.push_str(&format!("e{i}*e{j} = {}\n", format_combination(&comb)));
    }
    out
}

struct CertificateDraft {
    source: String,
    target: String,
    bindings: BTreeMap<Symbol, RationalFunction>,
    assumed: Vec<RationalFunction>,
    dim: usize,
    rows: BTreeMap<usize, BTreeMap<usize, RationalFunction>>,
}

impl CertificateDraft {
    fn header(st: &Stmt, catalog: &Catalog) -> Result<CertificateDraft, CatalogError> {
        let body = st.text["degeneration".len()..].to_string();
        let base = "degeneration".len();
        let arrow = body.find("->").ok_or_else(|| st.err(base, "expected '<source> -> <target>'"))?;
        let source = body[..arrow].trim().to_string();
        let rest = &body[arrow + 2..];
        let (target_part, where_part) = match rest.find(" where ") {
            Some(w) => (&rest[..w], Some((arrow + 2 + w + " where ".len(), &rest[w + " where ".len()..]))),
            None => (rest, None),
        };
        let target_off = base + arrow + 2;
        let (target, bindings) = match target_part.find('(') {
            None => (target_part.trim().to_string(), BTreeMap::new()),
            Some(p) => {
                let inner = target_part[p + 1..]
                    .trim_end()
                    .strip_suffix(')')
                    .ok_or_else(|| st.err(target_off + p, "unclosed parameter binding list"))?;
                let mut bindings = BTreeMap::new();
                for (off, piece) in split_top_level(inner) {
                    let (sym, expr) = piece
                        .split_once('=')
                        .ok_or_else(|| st.err(target_off + p + 1 + off, "expected '<param> = <expr>'"))?;
                    let col = st.col + target_off + p + 1 + off + sym.len() + 1;
                    bindings.insert(Symbol::from_name(sym.trim()), parse_expr_at(expr, st.line, col)?);
                }
                (target_part[..p].trim().to_string(), bindings)
            }
        };
        let mut assumed = Vec::new();
        if let Some((woff, wtext)) = where_part {
            for (off, piece) in split_top_level(wtext) {
                let expr = piece
                    .trim_end()
                    .strip_suffix("0")
                    .and_then(|s| s.trim_end().strip_suffix("!="))
                    .ok_or_else(|| st.err(base + woff + off, "expected '<expr> != 0'"))?;
                assumed.push(parse_expr_at(expr, st.line, st.col + base + woff + off)?);
            }
        }
        let src_alg = catalog.get(&source).map_err(|_| CatalogError::UnknownAlgebra(source.clone()))?;
        let tgt_alg = catalog.get(&target).map_err(|_| CatalogError::UnknownAlgebra(target.clone()))?;
        if src_alg.dim() != tgt_alg.dim() {
            return Err(CatalogError::InvalidCertificate {
                id: format!("{source}->{target}"),
                message: format!("dimensions differ ({} vs {})", src_alg.dim(), tgt_alg.dim()),
            });
        }
        Ok(CertificateDraft { source, target, bindings, assumed, dim: src_alg.dim(), rows: BTreeMap::new() })
    }

    fn row(&mut self, st: &Stmt) -> Result<(), CatalogError> {
        let (lhs, rhs) = st.text.split_once('=').ok_or_else(|| st.err(0, "expected 'E<i> = ...'"))?;
        let i = basis_index(lhs.trim(), 'E').ok_or_else(|| st.err(0, "expected 'E<i>' on the left-hand side"))?;
        if i == 0 || i > self.dim {
            return Err(st.err(0, format!("basis row E{i} out of range 1..={}", self.dim)));
        }
        let comb = parse_combination_at(rhs, self.dim, st.line, st.col + lhs.chars().count() + 1)?;
        if self.rows.insert(i, comb).is_some() {
            return Err(CatalogError::DuplicateBasisRow { line: st.line, row: i });
        }
        Ok(())
    }

    fn finish(self) -> Result<DegenerationCertificate, CatalogError> {
        let n = self.dim;
        if let Some(row) = (1..=n).find(|r| !self.rows.contains_key(r)) {
            return Err(CatalogError::MissingBasisRow { row });
        }
        let rows =
            (1..=n).map(|i| (1..=n).map(|j| self.rows[&i].get(&j).cloned().unwrap_or_default()).collect()).collect();
        let family = BasisFamily::new(Matrix::from_rows(rows).expect("square"), self.assumed).expect("square family");
        Ok(DegenerationCertificate { source: self.source, target: self.target, bindings: self.bindings, family })
    }
}

/// Parses any number of certificates; algebras are resolved in `catalog`.
pub fn parse_certificates(src: &str, catalog: &Catalog) -> Result<Vec<DegenerationCertificate>, CatalogError> {
    let mut out = Vec::new();
    let mut cur: Option<CertificateDraft> = None;
    for st in statements(src) {
        if st.text.starts_with("degeneration") && st.text[12..].starts_with(char::is_whitespace) {
            if let Some(d) = cur.take() {
                out.push(d.finish()?);
            }
            cur = Some(CertificateDraft::header(&st, catalog)?);
        } else {
            match cur.as_mut() {
                Some(d) => d.row(&st)?,
                None => return Err(st.err(0, "expected a 'degeneration' header")),
            }
        }
    }
    if let Some(d) = cur {
        out.push(d.finish()?);
    }
    Ok(out)
}

pub fn parse_certificate(src: &str, catalog: &Catalog) -> Result<DegenerationCertificate, CatalogError> {
    let mut v = parse_certificates(src, catalog)?;
    if v.len() != 1 {
        return Err(CatalogError::Count { what: "certificate", found: v.len() });
    }
    Ok(v.pop().unwrap())
}

pub fn serialize_certificate(c: &DegenerationCertificate) -> String {
    let mut out = format!("degeneration {} -> {}", c.source, c.target);
    if !c.bindings.is_empty() {
        let b: Vec<String> = c.bindings.iter().map(|(s, e)| format!("{s} = {e}")).collect();
        out.push_str(&format!("({})", b.join(", ")));
    }
    if !c.family.assumed_nonzero().is_empty() {
        let w: Vec<String> = c.family.assumed_nonzero().iter().map(|e| format!("{e} != 0")).collect();
        out.push_str(&format!(" where {}", w.join(", ")));
    }
    out.push('\n');
    for i in 1..=c.family.dim() {
        out.push_str(&format!("E{i} = {}\n", format_combination(&c.family.row_combination(i))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_expr;

    #[test]
    fn slash_separated_algebra() {
        let a = parse_algebra("algebra T00 dim 6 / e1*e2=e3 / e1*e3=e4 / e2*e4=e5").unwrap();
        assert_eq!(a.name(), "T00");
        assert_eq!(a.constants().len(), 3);
        assert!(a.constant(2, 4, 5).is_one());
    }

    #[test]
    fn division_is_not_a_separator() {
        let a = parse_algebra("algebra X dim 3 params alpha / e1*e2 = alpha/(alpha+1)*e3 / e1*e3 = 1/2*e2").unwrap();
        assert_eq!(a.constant(1, 2, 3), parse_expr("alpha/(alpha+1)").unwrap());
        assert_eq!(a.constant(1, 3, 2), parse_expr("1/2").unwrap());
    }

    #[test]
    fn empty_product_list() {
        let a = parse_algebra("algebra A dim 2").unwrap();
        assert_eq!(a, AlgebraStructure::abelian("A", 2));
    }

    #[test]
    fn algebra_errors() {
        assert_eq!(
            parse_algebra("algebra B dim 3 / e2*e1=e3").unwrap_err(),
            CatalogError::IndexOrder { line: 1, i: 2, j: 1 }
        );
        assert_eq!(
            parse_algebra("algebra B dim 3\ne1*e2=e3\ne1*e2=2*e3").unwrap_err(),
            CatalogError::DuplicateProduct { line: 3, i: 1, j: 2 }
        );
        assert_eq!(
            parse_algebra("algebra B dim 3\ne1*e2=t*e3").unwrap_err(),
            CatalogError::TSymbolForbidden { line: 2 }
        );
        assert!(matches!(parse_algebra("algebra B dim 3\ne1*e2=alpha*e3"), Err(CatalogError::InvalidAlgebra { .. })));
        match parse_algebra("algebra B dim 3\ne1*e2 = e3 +* e1").unwrap_err() {
            CatalogError::Syntax(e) => assert_eq!((e.line, e.column), (2, 13)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_algebra("e1*e2 = e3"), Err(CatalogError::Syntax(_))));
        assert!(matches!(parse_algebra(""), Err(CatalogError::Count { found: 0, .. })));
    }

    #[test]
    fn comments_are_ignored() {
        let a = parse_algebra("# heading\nalgebra A dim 3 # trailing\ne1*e2 = e3 # c\n").unwrap();
        assert_eq!(a.constants().len(), 1);
    }

    #[test]
    fn algebra_round_trip() {
        let src = "algebra T09 dim 6 params alpha\ne1*e2 = e3\ne1*e3 = e4\ne1*e5 = (alpha + 1)*e6\ne2*e3 = e5\ne2*e4 = alpha*e6\n";
        let a = parse_algebra(src).unwrap();
        assert_eq!(serialize_algebra(&a), src);
    }

    fn tiny_catalog() -> Catalog {
        let mut c = Catalog::new();
        c.add_algebra(parse_algebra("algebra H dim 3 / e1*e2 = e3").unwrap()).unwrap();
        c.add_algebra(AlgebraStructure::abelian("A3", 3)).unwrap();
        c.add_algebra(parse_algebra("algebra P dim 3 params alpha / e1*e2 = alpha*e3").unwrap()).unwrap();
        c
    }

    #[test]
    fn certificate_parse_and_serialize() {
        let cat = tiny_catalog();
        let src = "degeneration H -> A3 where alpha + 1 != 0, eps != 0\nE1 = t*e1\nE2 = e2 + 1/t*e3\nE3 = e3\n";
        let c = parse_certificate(src, &cat).unwrap();
        assert_eq!(c.id(), "H->A3");
        assert_eq!(c.family.assumed_nonzero().len(), 2);
        assert_eq!(c.family.entries()[(1, 2)], RationalFunction::t_power(-1));
        assert_eq!(serialize_certificate(&c), src);
        let again = parse_certificate(&serialize_certificate(&c), &cat).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn certificate_bindings() {
        let cat = tiny_catalog();
        let c =
            parse_certificate("degeneration P -> P(alpha = -alpha - 1) / E1 = e1 / E2 = e2 / E3 = -e3", &cat).unwrap();
        assert_eq!(c.bindings[&Symbol::Alpha], parse_expr("-alpha-1").unwrap());
        assert_eq!(parse_certificate(&serialize_certificate(&c), &cat).unwrap(), c);
    }

    #[test]
    fn certificate_errors() {
        let cat = tiny_catalog();
        assert_eq!(
            parse_certificate("degeneration H -> A3\nE1 = e1\nE2 = e2", &cat).unwrap_err(),
            CatalogError::MissingBasisRow { row: 3 }
        );
        assert_eq!(
            parse_certificate("degeneration H -> Nope\nE1 = e1", &cat).unwrap_err(),
            CatalogError::UnknownAlgebra("Nope".into())
        );
        assert!(matches!(
            parse_certificate("degeneration H -> A3\nE1 = e1\nE1 = e2\nE3 = e3", &cat),
            Err(CatalogError::DuplicateBasisRow { line: 3, row: 1 })
        ));
        assert!(matches!(parse_certificate("degeneration H A3\nE1 = e1", &cat), Err(CatalogError::Syntax(_))));
        assert!(matches!(
            parse_certificate("degeneration H -> A3 where t\nE1 = e1", &cat),
            Err(CatalogError::Syntax(_))
        ));
    }

    #[test]
    fn batched_certificates() {
        let cat = tiny_catalog();
        let src =
            "degeneration H -> A3 / E1 = t*e1 / E2 = e2 / E3 = e3\ndegeneration H -> H / E1 = e1 / E2 = e2 / E3 = e3\n";
        let v = parse_certificates(src, &cat).unwrap();
        assert_eq!(v.iter().map(|c| c.id()).collect::<Vec<_>>(), ["H->A3", "H->H"]);
    }
}
