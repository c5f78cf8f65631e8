//! Degeneration certificates: a parametrized basis `E_i^t = sum_j a_i^j(t) e_j`
//! of a source algebra whose structure constants tend to those of a target
//! algebra as `t -> 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraStructure, ConstantKey, Element};
use crate::arith::{ArithError, Polynomial, Rational, RationalFunction, Symbol, TOrder};
use crate::catalog::Catalog;
use crate::derivations::derivation_dimension;
use crate::exec::Execution;
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenerationError {
    #[error("unknown algebra '{0}'")]
    UnknownAlgebra(String),
    #[error("dimension mismatch: source {source_dim}, target {target_dim}, family {family_dim}")]
    DimensionMismatch { source_dim: usize, target_dim: usize, family_dim: usize },
    #[error("basis family is singular (determinant is identically zero)")]
    SingularFamily,
    #[error("parameter values violate the assumption {expr} != 0")]
    ExcludedParameter { expr: String },
    #[error("basis family must be square, got {rows}x{cols}")]
    NonSquareFamily { rows: usize, cols: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<LinalgError> for DegenerationError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NonSquare { rows, cols } => DegenerationError::NonSquareFamily { rows, cols },
            _ => DegenerationError::SingularFamily,
        }
    }
}

/// Rows of `entries` are the coordinates of `E_i^t` in the basis `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisFamily {
    entries: Matrix,
    /// Parameter expressions the family requires to be nonzero.
    assumed_nonzero: Vec<RationalFunction>,
}

impl BasisFamily {
    pub fn new(entries: Matrix, assumed_nonzero: Vec<RationalFunction>) -> Result<BasisFamily, DegenerationError> {
        if !entries.is_square() {
            return Err(DegenerationError::NonSquareFamily { rows: entries.rows(), cols: entries.cols() });
        }
        Ok(BasisFamily { entries, assumed_nonzero })
    }

    pub fn identity(n: usize) -> BasisFamily {
        BasisFamily { entries: Matrix::identity(n), assumed_nonzero: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn assumed_nonzero(&self) -> &[RationalFunction] {
        &self.assumed_nonzero
    }

    /// `E_i^t`, 1-based.
    pub fn vector(&self, i: usize) -> Element {
        Element::new(self.entries.row(i - 1).to_vec())
    }

    /// Nonzero coordinates of `E_i^t`, 1-based.
    pub fn row_combination(&self, i: usize) -> BTreeMap<usize, RationalFunction> {
        self.entries
            .row(i - 1)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k + 1, c.clone()))
            .collect()
    }

    pub fn determinant(&self) -> RationalFunction {
        self.entries.determinant().expect("family is square")
    }

    /// Substitutes parameter values, rejecting values that violate an
    /// assumption of the family.
    pub fn specialize(&self, values: &BTreeMap<Symbol, Rational>) -> Result<BasisFamily, DegenerationError> {
        let mut assumed = Vec::new();
        for a in &self.assumed_nonzero {
            let v = a.substitute(values).map_err(|_| DegenerationError::ExcludedParameter { expr: a.to_string() })?;
            if v.is_zero() {
                return Err(DegenerationError::ExcludedParameter { expr: a.to_string() });
            }
            if !v.is_constant() {
                assumed.push(v);
            }
        }
        let entries = self.entries.map(|e| e.substitute(values))?;
        Ok(BasisFamily { entries, assumed_nonzero: assumed })
    }
}

/// One row of a degeneration table: `source -> target` via `family`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationCertificate {
    pub source: String,
    pub target: String,
    /// Values of target parameters as functions of the family's parameters.
    /// Unlisted target parameters are bound to the symbol of the same name.
    pub bindings: BTreeMap<Symbol, RationalFunction>,
    pub family: BasisFamily,
}

impl DegenerationCertificate {
    pub fn new(source: impl Into<String>, target: impl Into<String>, family: BasisFamily) -> Self {
        DegenerationCertificate { source: source.into(), target: target.into(), bindings: BTreeMap::new(), family }
    }

    pub fn id(&self) -> String {
        format!("{}->{}", self.source, self.target)
    }

    pub fn is_proper(&self) -> bool {
        self.source != self.target
    }

    /// Parameters appearing in the family other than `t`.
    pub fn parameters(&self) -> std::collections::BTreeSet<Symbol> {
        let mut s: std::collections::BTreeSet<Symbol> =
            self.family.entries().entries().iter().flat_map(|e| e.symbols()).collect();
        for b in self.bindings.values() {
            s.extend(b.symbols());
        }
        s.remove(&Symbol::T);
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetClass {
    /// `det = c * t^k` with `c` free of `t`: a basis for every `t != 0`.
    MonomialInT,
    /// Nonzero, but vanishing at finitely many `t != 0`.
    NonMonomialNonzero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Verified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Limit of the transformed constant, or `None` when it has a pole.
    pub computed: Option<String>,
    pub expected: String,
    /// `t`-order of the transformed constant when the limit does not exist.
    pub pole_order: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimDerCheck {
    pub source: usize,
    pub target: usize,
    pub proper: bool,
    /// `source < target`; required of every proper degeneration.
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub certificate: String,
    pub source: String,
    pub target: String,
    pub status: Status,
    pub determinant: Option<String>,
    pub det_class: Option<DetClass>,
    pub assumed_nonzero: Vec<String>,
    pub discrepancies: Vec<Discrepancy>,
    pub dim_der: Option<DimDerCheck>,
    /// Set when verification could not run (unknown algebra, singular family).
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Report for a certificate whose verification could not run.
    pub fn from_error(cert: &DegenerationCertificate, e: &DegenerationError) -> VerificationReport {
        VerificationReport {
            certificate: cert.id(),
            source: cert.source.clone(),
            target: cert.target.clone(),
            status: Status::Failed,
            determinant: None,
            det_class: None,
            assumed_nonzero: Vec::new(),
            discrepancies: Vec::new(),
            dim_der: None,
            error: Some(e.to_string()),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Verified => "verified",
            Status::Failed => "FAILED",
        };
        write!(f, "{:<12} {status}", self.certificate)?;
        if let Some(e) = &self.error {
            return write!(f, " ({e})");
        }
        if let (Some(det), Some(class)) = (&self.determinant, self.det_class) {
            write!(f, "  det = {det} [{class:?}]")?;
        }
        if let Some(d) = &self.dim_der {
            write!(f, "  dimDer {} -> {}", d.source, d.target)?;
            if d.proper && !d.strict {
                f.write_str(" (NOT increasing)")?;
            }
        }
        if !self.assumed_nonzero.is_empty() {
            write!(f, "  assuming {} != 0", self.assumed_nonzero.join(", "))?;
        }
        for d in &self.discrepancies {
            match (&d.computed, d.pole_order) {
                (_, Some(o)) => {
                    write!(f, "\n    c({},{};{}) has a pole of t-order {o}, expected {}", d.i, d.j, d.k, d.expected)?
                }
                (Some(c), None) => write!(f, "\n    c({},{};{}) -> {c}, expected {}", d.i, d.j, d.k, d.expected)?,
                (None, None) => {}
            }
        }
        Ok(())
    }
}

/// Structure constants of `a` in the basis `E^t`, for all `i < j`.
pub fn transformed_constants(
    a: &AlgebraStructure,
    family: &BasisFamily,
) -> Result<BTreeMap<ConstantKey, RationalFunction>, DegenerationError> {
    transformed_constants_with(a, family, Execution::Sequential)
}

pub fn transformed_constants_with(
    a: &AlgebraStructure,
    family: &BasisFamily,
    exec: Execution,
) -> Result<BTreeMap<ConstantKey, RationalFunction>, DegenerationError> {
    let n = a.dim();
    if family.dim() != n {
        return Err(DegenerationError::DimensionMismatch { source_dim: n, target_dim: n, family_dim: family.dim() });
    }
    if family.determinant().is_zero() {
        return Err(DegenerationError::SingularFamily);
    }
    // sum_k c_k E_k = v  <=>  c^T = v^T F^{-1}
    let inv = family.entries().inverse()?;
    let vectors: Vec<Element> = (1..=n).map(|i| family.vector(i)).collect();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let rows = exec.map(&pairs, |&(i, j)| {
        let v = a.mul(&vectors[i - 1], &vectors[j - 1]);
        let mut out = Vec::new();
        for k in 1..=n {
            let mut c = RationalFunction::zero();
            for (l, vl) in v.coords().iter().enumerate() {
                let g = &inv[(l, k - 1)];
                if !vl.is_zero() && !g.is_zero() {
                    c = &c + &(vl * g);
                }
            }
            if !c.is_zero() {
                out.push(((i, j, k), c));
            }
        }
        out
    });
    Ok(rows.into_iter().flatten().collect())
}

/// Factor of `p` free of `t`, if `p` is a power of `t` times such a factor.
fn t_free_part(p: &Polynomial) -> Option<Polynomial> {
    let k = p.min_degree_in(&Symbol::T)?;
    let q = p.div_monomial(&crate::arith::Monomial::power(Symbol::T, k))?;
    (!q.contains(&Symbol::T)).then_some(q)
}

/// Collects parameter expressions assumed nonzero, dropping constants and
/// products of powers of already collected factors.
#[derive(Default)]
struct Assumptions(Vec<Polynomial>);

impl Assumptions {
    fn add(&mut self, p: &Polynomial) {
        let Some(q) = t_free_part(p) else { return };
        let mut q = q.monic();
        for f in &self.0 {
            while let Some(r) = q.div_exact(f) {
                if r.is_constant() {
                    q = Polynomial::one();
                    break;
                }
                q = r;
            }
        }
        if !q.is_constant() && !self.0.contains(&q.monic()) {
            self.0.push(q.monic());
        }
    }

    fn add_rf(&mut self, f: &RationalFunction) {
        self.add(f.num());
        self.add(f.den());
    }
}

fn resolve<'a>(catalog: &'a Catalog, name: &str) -> Result<&'a AlgebraStructure, DegenerationError> {
    catalog.get(name).map_err(|_| DegenerationError::UnknownAlgebra(name.to_string()))
}

/// Target algebra with its parameters replaced by the certificate bindings.
fn bound_target(
    target: &AlgebraStructure,
    cert: &DegenerationCertificate,
    values: &BTreeMap<Symbol, Rational>,
) -> Result<AlgebraStructure, DegenerationError> {
    let mut out = target.clone();
    for p in target.params() {
        let expr = cert.bindings.get(p).cloned().unwrap_or_else(|| RationalFunction::var(p.clone()));
        let expr = expr.substitute(values)?;
        if expr != RationalFunction::var(p.clone()) {
            out = out.reparametrize(p, &expr)?;
        }
    }
    Ok(out)
}

/// Checks one certificate against the catalog at generic parameter values.
pub fn verify_certificate(
    cert: &DegenerationCertificate,
    catalog: &Catalog,
) -> Result<VerificationReport, DegenerationError> {
    verify_certificate_at(cert, catalog, &BTreeMap::new())
}

/// Checks one certificate after substituting `values` for parameters.
pub fn verify_certificate_at(
    cert: &DegenerationCertificate,
    catalog: &Catalog,
    values: &BTreeMap<Symbol, Rational>,
) -> Result<VerificationReport, DegenerationError> {
    let source = resolve(catalog, &cert.source)?.specialize(values)?;
    let target = bound_target(resolve(catalog, &cert.target)?, cert, values)?;
    let family = cert.family.specialize(values)?;
    if source.dim() != target.dim() || source.dim() != family.dim() {
        return Err(DegenerationError::DimensionMismatch {
            source_dim: source.dim(),
            target_dim: target.dim(),
            family_dim: family.dim(),
        });
    }

    let det = family.determinant();
    if det.is_zero() {
        return Err(DegenerationError::SingularFamily);
    }
    let mut assumptions = Assumptions::default();
    for a in family.assumed_nonzero() {
        assumptions.add_rf(a);
    }
    let det_class = {
        let k = det.t_order().finite().expect("det is nonzero");
        let rest = &det * &RationalFunction::t_power(-k);
        if rest.contains(&Symbol::T) {
            DetClass::NonMonomialNonzero
        } else {
            assumptions.add_rf(&rest);
            DetClass::MonomialInT
        }
    };
    for e in family.entries().entries() {
        assumptions.add(e.den());
    }

    let constants = transformed_constants(&source, &family)?;
    let n = source.dim();
    let mut discrepancies = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                let expected = target.constant(i, j, k);
                let c = constants.get(&(i, j, k)).cloned().unwrap_or_default();
                match c.limit_t0() {
                    Ok(lim) => {
                        assumptions.add(lim.den());
                        if lim != expected {
                            discrepancies.push(Discrepancy {
                                i,
                                j,
                                k,
                                computed: Some(lim.to_string()),
                                expected: expected.to_string(),
                                pole_order: None,
                            });
                        }
                    }
                    Err(_) => discrepancies.push(Discrepancy {
                        i,
                        j,
                        k,
                        computed: None,
                        expected: expected.to_string(),
                        pole_order: match c.t_order() {
                            TOrder::Finite(o) => Some(o),
                            TOrder::Infinite => None,
                        },
                    }),
                }
            }
        }
    }

    let ds = derivation_dimension(&source);
    let dt = derivation_dimension(&target);
    let status = if discrepancies.is_empty() { Status::Verified } else { Status::Failed };
    Ok(VerificationReport {
        certificate: cert.id(),
        source: cert.source.clone(),
        target: cert.target.clone(),
        status,
        determinant: Some(det.to_string()),
        det_class: Some(det_class),
        assumed_nonzero: assumptions.0.iter().map(|p| p.to_string()).collect(),
        discrepancies,
        dim_der: Some(DimDerCheck { source: ds, target: dt, proper: cert.is_proper(), strict: ds < dt }),
        error: None,
    })
}

/// Verifies every certificate of the catalog, in catalog order.
pub fn verify_all(catalog: &Catalog, exec: Execution) -> Vec<VerificationReport> {
    verify_list(catalog.certificates(), catalog, exec)
}

pub fn verify_list(certs: &[DegenerationCertificate], catalog: &Catalog, exec: Execution) -> Vec<VerificationReport> {
    exec.map(certs, |c| verify_certificate(c, catalog).unwrap_or_else(|e| VerificationReport::from_error(c, &e)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub failed: usize,
}

pub fn summarize(reports: &[VerificationReport]) -> Summary {
    let verified = reports.iter().filter(|r| r.verified()).count();
    Summary { total: reports.len(), verified, failed: reports.len() - verified }
}
