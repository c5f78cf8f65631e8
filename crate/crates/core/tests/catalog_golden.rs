use degencheck::algebra::{check_malcev, check_metabelian, check_tortkara};
use degencheck::catalog::{
    builtin, parse_algebra, parse_algebras, parse_certificate, parse_certificates, serialize_algebra,
    serialize_certificate, CatalogError,
};
use degencheck::exec::Execution;

const GOLDEN_ALGEBRAS: &str = include_str!("golden/algebras.txt");
const GOLDEN_CERTIFICATES: &str = include_str!("golden/certificates.txt");

fn strip_comments(s: &str) -> String {
    let body: Vec<&str> = s.lines().filter(|l| !l.starts_with('#')).collect();
    body.join("\n").trim().to_string()
}

#[test]
fn algebras_match_golden_file() {
    let c = builtin();
    let text: Vec<String> = c.algebras().iter().map(serialize_algebra).collect();
    assert_eq!(text.join("\n").trim(), strip_comments(GOLDEN_ALGEBRAS));
}

#[test]
fn certificates_match_golden_file() {
    let c = builtin();
    let text: Vec<String> = c.certificates().iter().map(serialize_certificate).collect();
    assert_eq!(text.join("\n").trim(), strip_comments(GOLDEN_CERTIFICATES));
}

#[test]
fn golden_files_parse_back_to_builtins() {
    let c = builtin();
    assert_eq!(parse_algebras(GOLDEN_ALGEBRAS).unwrap(), c.algebras());
    assert_eq!(parse_certificates(GOLDEN_CERTIFICATES, &c).unwrap(), c.certificates());
}

#[test]
fn contents_and_lookup() {
    let c = builtin();
    let names: Vec<&str> = c.algebras().iter().map(|a| a.name()).collect();
    assert_eq!(names.len(), 23);
    assert_eq!(names[..2], ["g5", "M6e"]);
    assert_eq!(names[22], "abelian6");
    assert_eq!(c.certificates().len(), 19);
    let t17 = c.get("T17").unwrap();
    let expected = parse_algebra("algebra T17 dim 6 / e1*e2=e3 / e1*e3=e4 / e1*e4=e5 / e2*e3=e5 / e2*e5=e6").unwrap();
    assert_eq!(*t17, expected);
    assert_eq!(c.get("T99").unwrap_err(), CatalogError::NotFound("T99".into()));
}

#[test]
fn t19_to_t00_transcription() {
    let c = builtin();
    let src = "degeneration T19 -> T00\nE1 = e1\nE2 = e2\nE3 = e3\nE4 = e4\nE5 = e5\nE6 = t^-1*e6\n";
    assert_eq!(&parse_certificate(src, &c).unwrap(), c.certificate("T19->T00").unwrap());
    let five = "degeneration T19 -> T00\nE1 = e1\nE2 = e2\nE3 = e3\nE4 = e4\nE5 = e5\n";
    assert_eq!(parse_certificate(five, &c).unwrap_err(), CatalogError::MissingBasisRow { row: 6 });
}

#[test]
fn parametric_rows_carry_assumption() {
    let c = builtin();
    for id in ["T19->T09", "T19->T18"] {
        let cert = c.certificate(id).unwrap();
        let a: Vec<String> = cert.family.assumed_nonzero().iter().map(|e| e.to_string()).collect();
        assert_eq!(a, ["alpha + 1"], "{id}");
    }
}

#[test]
fn identity_membership() {
    let c = builtin();
    let mut non_metabelian = Vec::new();
    for a in c.algebras().iter().filter(|a| a.name().starts_with('T')) {
        assert!(check_tortkara(a, Execution::Parallel).passed(), "{}", a.name());
        assert!(!check_malcev(a, Execution::Parallel).passed(), "{}", a.name());
        if !check_metabelian(a, Execution::Parallel).passed() {
            non_metabelian.push(a.name());
        }
    }
    assert_eq!(non_metabelian, ["T19"]);
    for name in ["g5", "M6e"] {
        assert!(check_malcev(c.get(name).unwrap(), Execution::Parallel).passed(), "{name}");
    }
}
