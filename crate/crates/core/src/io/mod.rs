//! Parsers and writers for DIMACS graphs, DIMACS CNF, a TSPLIB subset, and
//! JSON certificates.

mod certificate;
mod cnf;
mod dimacs;
mod tsplib;

pub use certificate::{
    certificate_candidate, certificate_for, instance_digest, read_certificate,
    verify_certificate, write_certificate, Certificate,
};
pub use cnf::{parse_dimacs_cnf, write_dimacs_cnf};
pub use dimacs::{parse_dimacs_graph, write_dimacs_graph};
pub use tsplib::{parse_tsplib, write_tsplib};

/// Strict mode rejects header/count mismatches; lenient mode records a
/// warning and keeps going. Real-world corpora need the latter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

/// A parse result together with any lenient-mode warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

impl<T> Parsed<T> {
    pub(crate) fn clean(value: T) -> Self {
        Parsed {
            value,
            warnings: Vec::new(),
        }
    }
}
