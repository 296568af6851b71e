//! CNF satisfiability as a graph problem over `N = 2n + m` vertices.
//!
//! Literal vertices come first in the fixed order `x1, !x1, x2, !x2, ...`
//! (1-based vertices `2v-1` and `2v` for variable `v`), followed by one
//! vertex per clause. Permutations fix the clause block pointwise; the first
//! `n` positions name the literals assigned True.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{relabel, Permutation};

/// A CNF formula. Clauses are lists of nonzero signed integers, `+v` for
/// the literal `x_v` and `-v` for its negation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatInstance {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl SatInstance {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for (ci, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidInstance(format!("clause {} is empty", ci + 1)));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::InvalidInstance(format!(
                        "literal {lit} out of range in clause {}",
                        ci + 1
                    )));
                }
                if clause.contains(&-lit) {
                    return Err(Error::InvalidInstance(format!(
                        "clause {} is tautological ({} and {})",
                        ci + 1,
                        lit,
                        -lit
                    )));
                }
            }
        }
        Ok(SatInstance { num_vars, clauses })
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Direct clause-by-clause evaluation of a truth assignment.
    pub fn eval(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: assignment.len(),
            });
        }
        Ok(self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment[(lit.unsigned_abs() as usize) - 1];
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        }))
    }
}

/// 1-based literal vertex for a signed literal: `x_v -> 2v-1`, `!x_v -> 2v`.
pub fn literal_vertex(lit: i64) -> usize {
    let v = lit.unsigned_abs() as usize;
    if lit > 0 {
        2 * v - 1
    } else {
        2 * v
    }
}

/// The block matrices of the graph encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SatEncoding {
    pub n_vars: usize,
    pub m_clauses: usize,
    /// `2n x 2n` conflict matrix between complementary literals.
    pub conflict: Vec<Vec<i64>>,
    /// `m x 2n` clause-literal incidence matrix.
    pub incidence: Vec<Vec<i64>>,
}

impl SatEncoding {
    /// Builds the conflict matrix `V`, the incidence matrix `B`, and thereby
    /// the block adjacency `A = [[V, B^T], [B, 0]]` on `N = 2n + m` vertices.
    pub fn build(inst: &SatInstance) -> Result<Self> {
        let n = inst.num_vars;
        let m = inst.clauses.len();
        let mut conflict = vec![vec![0i64; 2 * n]; 2 * n];
        for v in 0..n {
            conflict[2 * v][2 * v + 1] = 1;
            conflict[2 * v + 1][2 * v] = 1;
        }
        let mut incidence = vec![vec![0i64; 2 * n]; m];
        for (c, clause) in inst.clauses.iter().enumerate() {
            for &lit in clause {
                incidence[c][literal_vertex(lit) - 1] = 1;
            }
        }
        Ok(SatEncoding {
            n_vars: n,
            m_clauses: m,
            conflict,
            incidence,
        })
    }

    pub fn n_vertices(&self) -> usize {
        2 * self.n_vars + self.m_clauses
    }

    /// The full `N x N` block adjacency matrix.
    pub fn adjacency(&self) -> Array2<i64> {
        let n2 = 2 * self.n_vars;
        let nn = self.n_vertices();
        let mut a = Array2::zeros((nn, nn));
        for i in 0..n2 {
            for j in 0..n2 {
                a[[i, j]] = self.conflict[i][j];
            }
        }
        for (c, row) in self.incidence.iter().enumerate() {
            for (i, &b) in row.iter().enumerate() {
                a[[n2 + c, i]] = b;
                a[[i, n2 + c]] = b;
            }
        }
        a
    }

    /// The clause selector `T`: identity on the last `m` positions.
    pub fn clause_selector(&self) -> Array2<i64> {
        let nn = self.n_vertices();
        let mut t = Array2::zeros((nn, nn));
        for i in 2 * self.n_vars..nn {
            t[[i, i]] = 1;
        }
        t
    }

    /// The literal selector `C`: identity on the first `n` positions.
    pub fn literal_selector(&self) -> Array2<i64> {
        let nn = self.n_vertices();
        let mut c = Array2::zeros((nn, nn));
        for i in 0..self.n_vars {
            c[[i, i]] = 1;
        }
        c
    }

    fn check_clause_block_fixed(&self, pi: &Permutation) -> Result<()> {
        let nn = self.n_vertices();
        if pi.n() != nn {
            return Err(Error::DimensionMismatch {
                expected: nn,
                got: pi.n(),
            });
        }
        for p in 2 * self.n_vars..nn {
            if pi.apply(p) != p {
                return Err(Error::InvalidPermutation(format!(
                    "SAT permutations must fix clause positions; position {} maps to {}",
                    p + 1,
                    pi.apply(p) + 1
                )));
            }
        }
        Ok(())
    }

    /// Reads the truth assignment off the first `n` positions of `pi`.
    /// Errors if some variable does not contribute exactly one literal there.
    pub fn extract_assignment(&self, pi: &Permutation) -> Result<Vec<bool>> {
        self.check_clause_block_fixed(pi)?;
        let n = self.n_vars;
        let mut values: Vec<Option<bool>> = vec![None; n];
        for p in 0..n {
            let vertex = pi.apply(p); // 0-based literal vertex
            if vertex >= 2 * n {
                return Err(Error::InfeasibleCandidate(format!(
                    "position {} holds clause vertex {}",
                    p + 1,
                    vertex + 1
                )));
            }
            let var = vertex / 2;
            let positive = vertex % 2 == 0;
            if values[var].is_some() {
                return Err(Error::InfeasibleCandidate(format!(
                    "variable x{} selected twice in the true block",
                    var + 1
                )));
            }
            values[var] = Some(positive);
        }
        values
            .into_iter()
            .enumerate()
            .map(|(v, val)| {
                val.ok_or_else(|| {
                    Error::InfeasibleCandidate(format!("variable x{} unassigned", v + 1))
                })
            })
            .collect()
    }
}

/// Result of checking a permutation against both SAT constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SatCheck {
    /// Conflict mass inside the selected true-literal block: twice the number
    /// of complementary pairs both placed in the first `n` positions.
    pub complementarity: i64,
    /// `T P A P^T C 1_N`: entry `i` counts, for a clause position, how many
    /// of its literals sit in the true block. Zero on literal positions.
    pub clause_cover: Vec<i64>,
}

impl SatCheck {
    pub fn feasible(&self, m_clauses: usize) -> bool {
        let nn = self.clause_cover.len();
        self.complementarity == 0
            && self.clause_cover[nn - m_clauses..].iter().all(|&c| c >= 1)
    }
}

/// Evaluates the complementarity and clause-satisfaction constraints for a
/// permutation that fixes the clause block pointwise.
pub fn sat_check(enc: &SatEncoding, pi: &Permutation) -> Result<SatCheck> {
    enc.check_clause_block_fixed(pi)?;
    let n = enc.n_vars;
    let nn = enc.n_vertices();
    let m = relabel(&enc.adjacency(), pi)?;
    // Conflict edges selected by C on both sides, summed over the block.
    let mut complementarity = 0;
    for i in 0..n {
        for j in 0..n {
            complementarity += m[[i, j]];
        }
    }
    // (T M C) 1_N keeps rows in the clause block and columns in the true block.
    let mut clause_cover = vec![0i64; nn];
    for (i, cover) in clause_cover.iter_mut().enumerate().take(nn).skip(2 * n) {
        for j in 0..n {
            *cover += m[[i, j]];
        }
    }
    Ok(SatCheck {
        complementarity,
        clause_cover,
    })
}

/// Canonical permutation for a truth assignment: true literals occupy the
/// first `n` positions in variable order, the remaining literals follow in
/// variable order, and clause vertices stay in place.
pub fn assignment_to_permutation(inst: &SatInstance, assignment: &[bool]) -> Result<Permutation> {
    if assignment.len() != inst.num_vars {
        return Err(Error::DimensionMismatch {
            expected: inst.num_vars,
            got: assignment.len(),
        });
    }
    let n = inst.num_vars;
    let m = inst.clauses.len();
    let mut map = Vec::with_capacity(2 * n + m);
    for (v, &val) in assignment.iter().enumerate() {
        map.push(if val { 2 * v + 1 } else { 2 * v + 2 });
    }
    for (v, &val) in assignment.iter().enumerate() {
        map.push(if val { 2 * v + 2 } else { 2 * v + 1 });
    }
    for c in 0..m {
        map.push(2 * n + c + 1);
    }
    Permutation::from_one_based(&map)
}

/// The worked 4-variable, 5-clause formula used throughout the tests:
/// (x1 | x2 | !x3) & (!x1 | x3 | x4) & (x2 | !x4) & (!x2 | !x3 | x4) & (x1 | !x4).
pub fn appendix_formula() -> SatInstance {
    SatInstance::new(
        4,
        vec![
            vec![1, 2, -3],
            vec![-1, 3, 4],
            vec![2, -4],
            vec![-2, -3, 4],
            vec![1, -4],
        ],
    )
    .expect("static formula is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn appendix_conflict() -> Vec<Vec<i64>> {
        vec![
            vec![0, 1, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
        ]
    }

    pub(crate) fn appendix_incidence() -> Vec<Vec<i64>> {
        vec![
            vec![1, 0, 1, 0, 0, 1, 0, 0],
            vec![0, 1, 0, 0, 1, 0, 1, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 1, 0, 1, 1, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 1],
        ]
    }

    #[test]
    fn appendix_encoding_matches_worked_matrices() {
        let enc = SatEncoding::build(&appendix_formula()).unwrap();
        assert_eq!(enc.n_vertices(), 13);
        assert_eq!(enc.conflict, appendix_conflict());
        assert_eq!(enc.incidence, appendix_incidence());
    }

    #[test]
    fn single_unit_clause_encoding() {
        let inst = SatInstance::new(1, vec![vec![1]]).unwrap();
        let enc = SatEncoding::build(&inst).unwrap();
        assert_eq!(enc.n_vertices(), 3);
        assert_eq!(enc.conflict, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(enc.incidence, vec![vec![1, 0]]);
    }

    #[test]
    fn incidence_row_sums_are_clause_lengths() {
        let inst = appendix_formula();
        let enc = SatEncoding::build(&inst).unwrap();
        let lengths: Vec<i64> = enc.incidence.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(lengths, vec![3, 3, 2, 3, 2]);
    }

    #[test]
    fn instance_invariants_enforced() {
        assert!(SatInstance::new(2, vec![vec![]]).is_err());
        assert!(SatInstance::new(2, vec![vec![3]]).is_err());
        assert!(SatInstance::new(2, vec![vec![0]]).is_err());
        assert!(SatInstance::new(2, vec![vec![1, -1]]).is_err());
    }

    #[test]
    fn assignment_one_check() {
        let inst = appendix_formula();
        let enc = SatEncoding::build(&inst).unwrap();
        let pi =
            Permutation::from_one_based(&[1, 3, 5, 7, 2, 4, 6, 8, 9, 10, 11, 12, 13]).unwrap();
        let check = sat_check(&enc, &pi).unwrap();
        assert_eq!(check.complementarity, 0);
        assert_eq!(
            check.clause_cover,
            vec![0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 1, 1, 1]
        );
        assert!(check.feasible(enc.m_clauses));
    }

    #[test]
    fn all_five_listed_permutations_feasible() {
        let inst = appendix_formula();
        let enc = SatEncoding::build(&inst).unwrap();
        let listed = [
            vec![1, 3, 5, 7, 2, 4, 6, 8, 9, 10, 11, 12, 13],
            vec![1, 3, 6, 7, 2, 4, 5, 8, 9, 10, 11, 12, 13],
            vec![1, 4, 5, 8, 2, 3, 6, 7, 9, 10, 11, 12, 13],
            vec![2, 3, 6, 8, 1, 4, 5, 7, 9, 10, 11, 12, 13],
            vec![2, 4, 6, 8, 1, 3, 5, 7, 9, 10, 11, 12, 13],
        ];
        for map in &listed {
            let pi = Permutation::from_one_based(map).unwrap();
            let check = sat_check(&enc, &pi).unwrap();
            assert!(check.feasible(enc.m_clauses), "permutation {map:?}");
            let assignment = enc.extract_assignment(&pi).unwrap();
            assert!(inst.eval(&assignment).unwrap());
        }
    }

    #[test]
    fn assignment_three_extraction() {
        let inst = appendix_formula();
        let enc = SatEncoding::build(&inst).unwrap();
        let pi =
            Permutation::from_one_based(&[1, 4, 5, 8, 2, 3, 6, 7, 9, 10, 11, 12, 13]).unwrap();
        assert_eq!(
            enc.extract_assignment(&pi).unwrap(),
            vec![true, false, true, false]
        );
    }

    #[test]
    fn conflicting_selection_detected() {
        // x1 and !x1 both in the first n positions
        let inst = appendix_formula();
        let enc = SatEncoding::build(&inst).unwrap();
        let pi =
            Permutation::from_one_based(&[1, 2, 3, 5, 4, 6, 7, 8, 9, 10, 11, 12, 13]).unwrap();
        let check = sat_check(&enc, &pi).unwrap();
        assert!(check.complementarity >= 2);
        assert!(!check.feasible(enc.m_clauses));
    }

    #[test]
    fn permutation_must_fix_clause_block() {
        let inst = appendix_formula();
        let enc = SatEncoding::build(&inst).unwrap();
        let pi =
            Permutation::from_one_based(&[1, 3, 5, 7, 2, 4, 6, 9, 8, 10, 11, 12, 13]).unwrap();
        assert!(sat_check(&enc, &pi).is_err());
    }

    #[test]
    fn assignment_round_trips_through_permutation() {
        let inst = appendix_formula();
        let enc = SatEncoding::build(&inst).unwrap();
        for bits in 0..16u32 {
            let assignment: Vec<bool> = (0..4).map(|v| bits & (1 << v) != 0).collect();
            let pi = assignment_to_permutation(&inst, &assignment).unwrap();
            assert_eq!(enc.extract_assignment(&pi).unwrap(), assignment);
            // a permutation built from an assignment never selects a conflict
            assert_eq!(sat_check(&enc, &pi).unwrap().complementarity, 0);
        }
    }

    #[test]
    fn feasibility_invariant_under_middle_block_reordering() {
        let inst = appendix_formula();
        let enc = SatEncoding::build(&inst).unwrap();
        // Assignment 1 with the unassigned literals reshuffled
        let variants = [
            vec![1, 3, 5, 7, 8, 6, 4, 2, 9, 10, 11, 12, 13],
            vec![1, 3, 5, 7, 4, 2, 8, 6, 9, 10, 11, 12, 13],
        ];
        for map in &variants {
            let pi = Permutation::from_one_based(map).unwrap();
            assert!(sat_check(&enc, &pi).unwrap().feasible(enc.m_clauses));
        }
    }
}
