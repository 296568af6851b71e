//! Heuristic solvers: simulated annealing over permutations and a Sinkhorn
//! doubly-stochastic relaxation with assignment rounding.

mod anneal;
mod assignment;
mod relax;
mod sinkhorn;

pub use anneal::{anneal, AnnealParams, SolveOutcome};
pub use assignment::{max_weight_assignment, min_cost_assignment};
pub use relax::{
    relax_solve, relaxed_objective, round_to_permutation, RelaxOutcome, RelaxParams,
    RelaxTrajectory,
};
pub use sinkhorn::{sinkhorn_normalize, DoublyStochastic};
