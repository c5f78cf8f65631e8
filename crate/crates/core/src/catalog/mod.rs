//! Named algebras and degeneration certificates, with the built-in
//! classification data and the textual file formats.

mod builtin;
mod format;

use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraStructure};
use crate::arith::SyntaxError;
use crate::degeneration::DegenerationCertificate;

pub use builtin::builtin;
pub use format::{
    parse_algebra, parse_algebras, parse_certificate, parse_certificates, serialize_algebra, serialize_certificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("line {line}: product e{i}*e{j} must have i < j")]
    IndexOrder { line: usize, i: usize, j: usize },
    #[error("line {line}: product e{i}*e{j} given twice")]
    DuplicateProduct { line: usize, i: usize, j: usize },
    #[error("line {line}: structure constants may not mention t")]
    TSymbolForbidden { line: usize },
    #[error("line {line}: {source}")]
    InvalidAlgebra { line: usize, source: AlgebraError },
    #[error("unknown algebra '{0}'")]
    UnknownAlgebra(String),
    #[error("certificate is missing basis row E{row}")]
    MissingBasisRow { row: usize },
    #[error("line {line}: basis row E{row} given twice")]
    DuplicateBasisRow { line: usize, row: usize },
    #[error("algebra '{0}' defined twice")]
    DuplicateName(String),
    #[error("no algebra named '{0}'")]
    NotFound(String),
    #[error("expected exactly one {what}, found {found}")]
    Count { what: &'static str, found: usize },
    #[error("certificate {id}: {message}")]
    InvalidCertificate { id: String, message: String },
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    algebras: Vec<AlgebraStructure>,
    certificates: Vec<DegenerationCertificate>,
}

impl Catalog {
    pub fn new() -> Catalog {
        Catalog::default()
    }

    pub fn algebras(&self) -> &[AlgebraStructure] {
        &self.algebras
    }

    pub fn certificates(&self) -> &[DegenerationCertificate] {
        &self.certificates
    }

    pub fn get(&self, name: &str) -> Result<&AlgebraStructure, CatalogError> {
        self.algebras.iter().find(|a| a.name() == name).ok_or_else(|| CatalogError::NotFound(name.to_string()))
    }

    pub fn certificate(&self, id: &str) -> Option<&DegenerationCertificate> {
        let id: String = id.chars().filter(|c| !c.is_whitespace()).collect();
        self.certificates.iter().find(|c| c.id() == id)
    }

    pub fn add_algebra(&mut self, a: AlgebraStructure) -> Result<(), CatalogError> {
        if self.algebras.iter().any(|b| b.name() == a.name()) {
            return Err(CatalogError::DuplicateName(a.name().to_string()));
        }
        self.algebras.push(a);
        Ok(())
    }

    /// Adds a certificate whose source and target must already be present.
    pub fn add_certificate(&mut self, c: DegenerationCertificate) -> Result<(), CatalogError> {
        for name in [&c.source, &c.target] {
            self.get(name).map_err(|_| CatalogError::UnknownAlgebra(name.clone()))?;
        }
        self.certificates.push(c);
        Ok(())
    }

    pub fn clear_certificates(&mut self) {
        self.certificates.clear();
    }
}
