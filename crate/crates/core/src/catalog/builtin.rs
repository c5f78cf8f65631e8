use super::format::{parse_algebras, parse_certificates};
use super::Catalog;

pub(crate) const ALGEBRAS: &str = include_str!("../../data/algebras.txt");
pub(crate) const CERTIFICATES: &str = include_str!("../../data/certificates.txt");

/// The 23 built-in algebras and the 19 certificates, in table order.
pub fn builtin() -> Catalog {
    let mut c = Catalog::new();
    for a in parse_algebras(ALGEBRAS).expect("built-in algebras parse") {
        c.add_algebra(a).expect("built-in names are unique");
    }
    let certs = parse_certificates(CERTIFICATES, &c).expect("built-in certificates parse");
    for cert in certs {
        c.add_certificate(cert).expect("built-in certificates resolve");
    }
    c
}
