//! Permutation-matrix formulations of graph and logic combinatorial
//! problems: exact evaluators, brute-force oracles, simulated annealing,
//! and a Sinkhorn doubly-stochastic relaxation, plus instance/certificate
//! I/O for the CLI.

pub mod error;
pub mod formulations;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod perm;
pub mod sat;
pub mod solvers;
pub mod trunc;

pub use error::{Error, Result};
pub use formulations::{
    evaluate, extract_solution, CandidateSolution, DiscreteSolution, Evaluation, Instance,
    Problem, QapInstance, TspInstance,
};
pub use graph::Graph;
pub use perm::{cycle_shift_matrix, perm_matrix, relabel, Permutation};
pub use sat::{SatEncoding, SatInstance};
pub use trunc::{trace_product, TruncationSpec};
