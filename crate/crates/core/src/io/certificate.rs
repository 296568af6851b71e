//! JSON certificates: a candidate permutation plus a content digest of the
//! instance it certifies, so verification can refuse mismatched pairs.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::formulations::{evaluate, CandidateSolution, Evaluation, Instance, Problem};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub problem: Problem,
    pub instance_digest: String,
    /// 1-based image list: position i holds pi(i).
    pub pi: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    pub objective: f64,
    pub feasible: bool,
}

/// SHA-256 of a canonical text serialization of the instance. Graph edges
/// are sorted and clause lists kept in order, so the digest is stable across
/// whitespace and formatting variants of the source file.
pub fn instance_digest(instance: &Instance) -> String {
    let mut canon = String::new();
    match instance {
        Instance::Graph(g) => {
            canon.push_str(&format!("graph {}\n", g.n()));
            for (u, v) in g.edges() {
                canon.push_str(&format!("{u} {v}\n"));
            }
        }
        Instance::GraphPair(g1, g2) => {
            canon.push_str(&format!("graphpair {}\n", g1.n()));
            for g in [g1, g2] {
                for (u, v) in g.edges() {
                    canon.push_str(&format!("{u} {v}\n"));
                }
                canon.push_str(";\n");
            }
        }
        Instance::Tsp(t) => {
            canon.push_str(&format!("tsp {}\n", t.n));
            for row in &t.cost {
                for c in row {
                    canon.push_str(&format!("{} ", float_repr(*c)));
                }
                canon.push('\n');
            }
        }
        Instance::Qap(q) => {
            canon.push_str(&format!("qap {}\n", q.n));
            for m in [&q.flow, &q.dist] {
                for row in m {
                    for c in row {
                        canon.push_str(&format!("{} ", float_repr(*c)));
                    }
                    canon.push('\n');
                }
                canon.push_str(";\n");
            }
        }
        Instance::Sat(s) => {
            canon.push_str(&format!("cnf {} {}\n", s.num_vars, s.clauses.len()));
            for clause in &s.clauses {
                for lit in clause {
                    canon.push_str(&format!("{lit} "));
                }
                canon.push_str("0\n");
            }
        }
    }
    let mut hasher = Sha256::new();
    hasher.update(canon.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn float_repr(x: f64) -> String {
    // shortest round-trippable form; keeps digests independent of how the
    // value was originally written
    format!("{x}")
}

/// Builds a certificate from a solved candidate and its exact evaluation.
pub fn certificate_for(
    instance: &Instance,
    candidate: &CandidateSolution,
    evaluation: &Evaluation,
) -> Certificate {
    Certificate {
        problem: candidate.problem,
        instance_digest: instance_digest(instance),
        pi: candidate.pi.one_based(),
        k: candidate.k,
        blocks: candidate.blocks.clone(),
        objective: evaluation.objective,
        feasible: evaluation.feasible,
    }
}

/// Serializes with the fixed field order of the struct definition.
pub fn write_certificate(cert: &Certificate) -> String {
    let mut text = serde_json::to_string_pretty(cert).expect("certificate always serializes");
    text.push('\n');
    text
}

/// Parses and validates a certificate; the permutation must be a bijection.
pub fn read_certificate(text: &str) -> Result<Certificate> {
    let cert: Certificate = serde_json::from_str(text)?;
    Permutation::from_one_based(&cert.pi)
        .map_err(|e| Error::Schema(format!("pi is not a permutation: {e}")))?;
    if let Some(blocks) = &cert.blocks {
        if blocks.iter().sum::<usize>() != cert.pi.len() || blocks.iter().any(|&b| b == 0) {
            return Err(Error::Schema(
                "blocks must be positive and sum to the permutation size".into(),
            ));
        }
        if cert.k.is_some_and(|k| k != blocks.len()) {
            return Err(Error::Schema("k disagrees with the block count".into()));
        }
    }
    Ok(cert)
}

/// Re-evaluates a certificate against an instance. Fails with a digest
/// mismatch before evaluating anything if the certificate belongs to a
/// different instance.
pub fn verify_certificate(instance: &Instance, cert: &Certificate) -> Result<Evaluation> {
    let got = instance_digest(instance);
    if cert.instance_digest != got {
        return Err(Error::DigestMismatch {
            expected: cert.instance_digest.clone(),
            got,
        });
    }
    let candidate = certificate_candidate(cert)?;
    evaluate(instance, &candidate)
}

/// The candidate a certificate describes, with the permutation re-validated.
pub fn certificate_candidate(cert: &Certificate) -> Result<CandidateSolution> {
    let pi = Permutation::from_one_based(&cert.pi)?;
    Ok(CandidateSolution {
        problem: cert.problem,
        pi,
        k: cert.k,
        blocks: cert.blocks.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::demo_mis_graph;
    use crate::sat::{appendix_formula, assignment_to_permutation};

    fn fig_cert() -> (Instance, Certificate) {
        let instance = Instance::Graph(demo_mis_graph());
        let pi = Permutation::from_one_based(&[1, 4, 5, 2, 3]).unwrap();
        let candidate = CandidateSolution::with_k(Problem::Mis, pi, 3);
        let evaluation = evaluate(&instance, &candidate).unwrap();
        let cert = certificate_for(&instance, &candidate, &evaluation);
        (instance, cert)
    }

    #[test]
    fn mis_certificate_roundtrips_byte_identically() {
        let (_, cert) = fig_cert();
        let text = write_certificate(&cert);
        let back = read_certificate(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(write_certificate(&back), text);
    }

    #[test]
    fn mis_certificate_verifies() {
        let (instance, cert) = fig_cert();
        let eval = verify_certificate(&instance, &cert).unwrap();
        assert!(eval.feasible);
        assert_eq!(eval.objective, 3.0);
    }

    #[test]
    fn k4_variant_is_infeasible() {
        let (instance, mut cert) = fig_cert();
        cert.k = Some(4);
        let eval = verify_certificate(&instance, &cert).unwrap();
        assert!(!eval.feasible);
    }

    #[test]
    fn non_bijective_pi_rejected() {
        let (_, mut cert) = fig_cert();
        cert.pi = vec![1, 1, 2, 3, 4];
        let text = write_certificate(&cert);
        assert!(matches!(read_certificate(&text), Err(Error::Schema(_))));
    }

    #[test]
    fn digest_mismatch_detected() {
        let (_, cert) = fig_cert();
        let other = Instance::Graph(crate::graph::Graph::complete(5));
        assert!(matches!(
            verify_certificate(&other, &cert),
            Err(Error::DigestMismatch { .. })
        ));
    }

    #[test]
    fn sat_assignment_certificate_verifies() {
        let formula = appendix_formula();
        let instance = Instance::Sat(formula.clone());
        // Assignment 1 from the worked example: x1=T, x2=T, x3=T, x4=T
        let pi = assignment_to_permutation(&formula, &[true, true, true, true]).unwrap();
        let candidate = CandidateSolution::new(Problem::Sat, pi);
        let evaluation = evaluate(&instance, &candidate).unwrap();
        assert!(evaluation.feasible);
        let cert = certificate_for(&instance, &candidate, &evaluation);
        let eval = verify_certificate(&instance, &cert).unwrap();
        assert!(eval.feasible);
    }

    #[test]
    fn digest_stable_and_content_sensitive() {
        let g = Instance::Graph(demo_mis_graph());
        assert_eq!(instance_digest(&g), instance_digest(&g));
        let other = Instance::Graph(crate::graph::Graph::cycle(5));
        assert_ne!(instance_digest(&g), instance_digest(&other));
    }

    #[test]
    fn bad_blocks_rejected() {
        let (_, mut cert) = fig_cert();
        cert.blocks = Some(vec![2, 2]);
        let text = write_certificate(&cert);
        assert!(matches!(read_certificate(&text), Err(Error::Schema(_))));
    }
}
