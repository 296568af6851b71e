//! Per-problem objective values, constraint residuals, and discrete-solution
//! extraction. Every constraint is evaluated in exact integer arithmetic on
//! the relabelled adjacency matrix; violations are raw (double-counted)
//! traces so the `= 0` check is exact.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{cycle_shift_matrix, perm_matrix, relabel, Permutation};
use crate::sat::{sat_check, SatEncoding, SatInstance};
use crate::trunc::{trace_product, TruncationSpec};

/// The nine problems the permutation picture covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Tsp,
    Qap,
    Mis,
    MaxCut,
    Coloring,
    Mvc,
    Mds,
    Clique,
    Gi,
    Sat,
}

impl Problem {
    pub const ALL: [Problem; 10] = [
        Problem::Tsp,
        Problem::Qap,
        Problem::Mis,
        Problem::MaxCut,
        Problem::Coloring,
        Problem::Mvc,
        Problem::Mds,
        Problem::Clique,
        Problem::Gi,
        Problem::Sat,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Problem::Tsp => "tsp",
            Problem::Qap => "qap",
            Problem::Mis => "mis",
            Problem::MaxCut => "maxcut",
            Problem::Coloring => "coloring",
            Problem::Mvc => "mvc",
            Problem::Mds => "mds",
            Problem::Clique => "clique",
            Problem::Gi => "gi",
            Problem::Sat => "sat",
        }
    }

    /// Minimization problems report smaller-is-better objectives.
    pub fn is_minimization(&self) -> bool {
        matches!(
            self,
            Problem::Tsp | Problem::Qap | Problem::Coloring | Problem::Mvc | Problem::Mds | Problem::Gi
        )
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::UnsupportedProblem(s.to_string()))
    }
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// TSP instance. Symmetry is not required (asymmetric cost allowed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TspInstance {
    pub n: usize,
    pub cost: Vec<Vec<f64>>,
}

impl TspInstance {
    pub fn new(cost: Vec<Vec<f64>>) -> Result<Self> {
        let n = cost.len();
        if n < 2 {
            return Err(Error::InvalidInstance("TSP needs at least 2 cities".into()));
        }
        for (i, row) in cost.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if cost[i][i] != 0.0 {
                return Err(Error::InvalidInstance(format!(
                    "nonzero diagonal cost at city {}",
                    i + 1
                )));
            }
            if row.iter().any(|&c| c < 0.0 || !c.is_finite()) {
                return Err(Error::InvalidInstance(format!(
                    "negative or non-finite cost in row {}",
                    i + 1
                )));
            }
        }
        Ok(TspInstance { n, cost })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.cost[i][j] == self.cost[j][i]))
    }

    /// Ring instance with unit cost on consecutive cities and `far` elsewhere.
    pub fn unit_ring(n: usize, far: f64) -> Self {
        let mut cost = vec![vec![far; n]; n];
        for i in 0..n {
            cost[i][i] = 0.0;
            cost[i][(i + 1) % n] = 1.0;
            cost[(i + 1) % n][i] = 1.0;
        }
        TspInstance { n, cost }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QapInstance {
    pub n: usize,
    pub flow: Vec<Vec<f64>>,
    pub dist: Vec<Vec<f64>>,
}

impl QapInstance {
    pub fn new(flow: Vec<Vec<f64>>, dist: Vec<Vec<f64>>) -> Result<Self> {
        let n = flow.len();
        if dist.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: dist.len(),
            });
        }
        if flow.iter().any(|r| r.len() != n) || dist.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInstance("flow/dist must be square".into()));
        }
        Ok(QapInstance { n, flow, dist })
    }
}

/// An instance of any supported problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Instance {
    Tsp(TspInstance),
    Qap(QapInstance),
    Graph(Graph),
    GraphPair(Graph, Graph),
    Sat(SatInstance),
}

impl Instance {
    /// Size of the permutation the problem optimizes over.
    pub fn perm_size(&self) -> usize {
        match self {
            Instance::Tsp(t) => t.n,
            Instance::Qap(q) => q.n,
            Instance::Graph(g) => g.n(),
            Instance::GraphPair(g, _) => g.n(),
            Instance::Sat(s) => 2 * s.num_vars + s.clauses.len(),
        }
    }
}

/// A candidate `(pi, k, blocks)` for a given problem; everything a verifier
/// needs to re-check feasibility exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSolution {
    pub problem: Problem,
    pub pi: Permutation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
}

impl CandidateSolution {
    pub fn new(problem: Problem, pi: Permutation) -> Self {
        CandidateSolution {
            problem,
            pi,
            k: None,
            blocks: None,
        }
    }

    pub fn with_k(problem: Problem, pi: Permutation, k: usize) -> Self {
        CandidateSolution {
            problem,
            pi,
            k: Some(k),
            blocks: None,
        }
    }

    pub fn with_blocks(pi: Permutation, blocks: Vec<usize>) -> Self {
        CandidateSolution {
            problem: Problem::Coloring,
            pi,
            k: Some(blocks.len()),
            blocks: Some(blocks),
        }
    }
}

fn check_n(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Tour length of `pi`: `sum_i d[pi(i)][pi(i+1)] + d[pi(n)][pi(1)]`.
pub fn tsp_length(inst: &TspInstance, pi: &Permutation) -> Result<f64> {
    check_n(inst.n, pi.n())?;
    let n = inst.n;
    let mut total = 0.0;
    for i in 0..n {
        total += inst.cost[pi.apply(i)][pi.apply((i + 1) % n)];
    }
    Ok(total)
}

/// Tour length via the trace form `Tr(P V^T P^T C)`, kept as a dense
/// cross-check of [`tsp_length`]. The paper's `P` in this formula is the
/// matrix of the inverse permutation under the crate-wide indexing, which is
/// what makes the trace equal the positional sum for every cost matrix.
pub fn tsp_trace_length(inst: &TspInstance, pi: &Permutation) -> Result<f64> {
    check_n(inst.n, pi.n())?;
    let n = inst.n;
    let q = perm_matrix(&pi.invert());
    let v = cycle_shift_matrix(n)?;
    let m = q.dot(&v.t().to_owned()).dot(&q.t().to_owned());
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += m[[i, j]] as f64 * inst.cost[j][i];
        }
    }
    Ok(total)
}

/// Tour successor matrix: `H[i][j] = 1` iff city `j` immediately follows
/// city `i` in the tour of `pi`. A permutation matrix of a single n-cycle.
pub fn tsp_heatmap(pi: &Permutation) -> Result<Array2<i64>> {
    let n = pi.n();
    let q = perm_matrix(&pi.invert());
    let v = cycle_shift_matrix(n)?;
    Ok(q.dot(&v).dot(&q.t().to_owned()))
}

/// `Tr(F P D P^T)` for the assignment `pi`.
pub fn qap_value(inst: &QapInstance, pi: &Permutation) -> Result<f64> {
    check_n(inst.n, pi.n())?;
    let n = inst.n;
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            // (P D P^T)[j][i] = D[pi(j)][pi(i)]
            total += inst.flow[i][j] * inst.dist[pi.apply(j)][pi.apply(i)];
        }
    }
    Ok(total)
}

/// `Tr(P A P^T C(k))` with prefix-block `C(k)`: twice the number of edges
/// among `{pi(1..k)}`; zero iff that set is independent.
pub fn mis_violation(g: &Graph, pi: &Permutation, k: usize) -> Result<i64> {
    check_n(g.n(), pi.n())?;
    let m = relabel(&g.adjacency(), pi)?;
    trace_product(&m, &TruncationSpec::PrefixBlock { k })
}

/// `1/2 Tr(P A P^T C(k))` with cross-block `C(k)`: the number of edges
/// between `{pi(1..k)}` and `{pi(k+1..n)}`.
pub fn maxcut_value(g: &Graph, pi: &Permutation, k: usize) -> Result<i64> {
    check_n(g.n(), pi.n())?;
    let m = relabel(&g.adjacency(), pi)?;
    Ok(trace_product(&m, &TruncationSpec::CrossBlock { k })? / 2)
}

/// `Tr(P A P^T C)` with block-diagonal `C`: twice the number of
/// monochromatic edges when color `i` occupies the `n_i` consecutive
/// positions; zero iff the blocks form a proper coloring.
pub fn coloring_violation(g: &Graph, pi: &Permutation, blocks: &[usize]) -> Result<i64> {
    check_n(g.n(), pi.n())?;
    let m = relabel(&g.adjacency(), pi)?;
    trace_product(
        &m,
        &TruncationSpec::DiagonalBlocks {
            blocks: blocks.to_vec(),
        },
    )
}

/// `Tr(P A P^T C(k))` with suffix-block `C(k)`: twice the number of edges
/// with both endpoints outside `{pi(1..k)}`; zero iff that set is a vertex
/// cover. `k = 0` is legal (passes only on edgeless graphs).
pub fn mvc_violation(g: &Graph, pi: &Permutation, k: usize) -> Result<i64> {
    check_n(g.n(), pi.n())?;
    let m = relabel(&g.adjacency(), pi)?;
    trace_product(&m, &TruncationSpec::SuffixBlock { k })
}

/// `P (A + I) P^T 1_k`: entry `i` is the size of the closed neighborhood of
/// `pi(i)` intersected with `{pi(1..k)}`. Feasible iff every entry >= 1.
pub fn mds_coverage(g: &Graph, pi: &Permutation, k: usize) -> Result<Vec<i64>> {
    check_n(g.n(), pi.n())?;
    let n = g.n();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let mut v = vec![0i64; n];
    for i in 0..n {
        let vi = pi.apply(i);
        for j in 0..k {
            let vj = pi.apply(j);
            v[i] += if vi == vj { 1 } else { g.adj0(vi, vj) };
        }
    }
    Ok(v)
}

/// `Tr(P (J - A - I) P^T C(k))` with prefix-block `C(k)`: twice the number
/// of non-edges among `{pi(1..k)}`; zero iff that set is a clique.
pub fn clique_violation(g: &Graph, pi: &Permutation, k: usize) -> Result<i64> {
    check_n(g.n(), pi.n())?;
    let n = g.n();
    let mut non_edges = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                non_edges[[i, j]] = 1 - g.adj0(i, j);
            }
        }
    }
    let m = relabel(&non_edges, pi)?;
    trace_product(&m, &TruncationSpec::PrefixBlock { k })
}

/// `||P A1 P^T - A2||_F^2`: the number of mismatched adjacency entries.
/// Zero iff `pi` is an isomorphism; always even for simple graphs.
pub fn gi_distance(g1: &Graph, g2: &Graph, pi: &Permutation) -> Result<i64> {
    check_n(g1.n(), g2.n())?;
    check_n(g1.n(), pi.n())?;
    let m = relabel(&g1.adjacency(), pi)?;
    let a2 = g2.adjacency();
    let mut total = 0;
    for i in 0..g1.n() {
        for j in 0..g1.n() {
            let d = m[[i, j]] - a2[[i, j]];
            total += d * d;
        }
    }
    Ok(total)
}

/// Exact integer evaluation of a candidate: objective, total violation, and
/// the feasibility verdict every solver and verifier must defer to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub objective: f64,
    pub violation: i64,
    pub feasible: bool,
}

fn require_k(c: &CandidateSolution) -> Result<usize> {
    c.k.ok_or_else(|| {
        Error::InfeasibleCandidate(format!("{} candidate is missing k", c.problem))
    })
}

/// Evaluates a candidate against its instance with exact arithmetic.
pub fn evaluate(instance: &Instance, c: &CandidateSolution) -> Result<Evaluation> {
    match (instance, c.problem) {
        (Instance::Tsp(t), Problem::Tsp) => Ok(Evaluation {
            objective: tsp_length(t, &c.pi)?,
            violation: 0,
            feasible: true,
        }),
        (Instance::Qap(q), Problem::Qap) => Ok(Evaluation {
            objective: qap_value(q, &c.pi)?,
            violation: 0,
            feasible: true,
        }),
        (Instance::Graph(g), Problem::Mis) => {
            let k = require_k(c)?;
            let v = mis_violation(g, &c.pi, k)?;
            Ok(Evaluation {
                objective: k as f64,
                violation: v,
                feasible: v == 0,
            })
        }
        (Instance::Graph(g), Problem::MaxCut) => {
            let k = require_k(c)?;
            let cut = maxcut_value(g, &c.pi, k)?;
            Ok(Evaluation {
                objective: cut as f64,
                violation: 0,
                feasible: true,
            })
        }
        (Instance::Graph(g), Problem::Coloring) => {
            let blocks = c.blocks.as_ref().ok_or_else(|| {
                Error::InfeasibleCandidate("coloring candidate is missing blocks".into())
            })?;
            let v = coloring_violation(g, &c.pi, blocks)?;
            Ok(Evaluation {
                objective: blocks.len() as f64,
                violation: v,
                feasible: v == 0,
            })
        }
        (Instance::Graph(g), Problem::Mvc) => {
            let k = require_k(c)?;
            let v = mvc_violation(g, &c.pi, k)?;
            Ok(Evaluation {
                objective: k as f64,
                violation: v,
                feasible: v == 0,
            })
        }
        (Instance::Graph(g), Problem::Mds) => {
            let k = require_k(c)?;
            let cov = mds_coverage(g, &c.pi, k)?;
            let shortfall: i64 = cov.iter().map(|&x| (1 - x).max(0)).sum();
            Ok(Evaluation {
                objective: k as f64,
                violation: shortfall,
                feasible: shortfall == 0,
            })
        }
        (Instance::Graph(g), Problem::Clique) => {
            let k = require_k(c)?;
            let v = clique_violation(g, &c.pi, k)?;
            Ok(Evaluation {
                objective: k as f64,
                violation: v,
                feasible: v == 0,
            })
        }
        (Instance::GraphPair(g1, g2), Problem::Gi) => {
            let d = gi_distance(g1, g2, &c.pi)?;
            Ok(Evaluation {
                objective: d as f64,
                violation: d,
                feasible: d == 0,
            })
        }
        (Instance::Sat(s), Problem::Sat) => {
            let enc = SatEncoding::build(s)?;
            let check = sat_check(&enc, &c.pi)?;
            let shortfall: i64 = check
                .clause_cover
                .iter()
                .skip(enc.n_vertices() - enc.m_clauses)
                .map(|&x| (1 - x).max(0))
                .sum();
            let violation = check.complementarity + shortfall;
            Ok(Evaluation {
                objective: if violation == 0 { 1.0 } else { 0.0 },
                violation,
                feasible: violation == 0,
            })
        }
        _ => Err(Error::UnsupportedProblem(format!(
            "candidate problem {} does not match instance",
            c.problem
        ))),
    }
}

/// The discrete solution a feasible candidate encodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DiscreteSolution {
    /// 1-based vertex set (MIS, MVC, MDS, Clique).
    VertexSet(Vec<usize>),
    /// 1-based bipartition (Max-Cut).
    Bipartition(Vec<usize>, Vec<usize>),
    /// Color classes as 1-based vertex sets.
    Coloring(Vec<Vec<usize>>),
    /// City visiting order (TSP).
    Tour(Vec<usize>),
    /// Vertex mapping `i -> pi(i)` (GI), 1-based on both sides.
    Mapping(Vec<usize>),
    /// Per-variable truth values (SAT).
    Assignment(Vec<bool>),
}

/// Extracts the discrete solution from a candidate, after re-verifying
/// feasibility exactly. Infeasible candidates are an error.
pub fn extract_solution(instance: &Instance, c: &CandidateSolution) -> Result<DiscreteSolution> {
    let eval = evaluate(instance, c)?;
    if !eval.feasible {
        return Err(Error::InfeasibleCandidate(format!(
            "{} candidate has violation {}",
            c.problem, eval.violation
        )));
    }
    let prefix = |k: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..k).map(|i| c.pi.apply(i) + 1).collect();
        v.sort_unstable();
        v
    };
    match c.problem {
        Problem::Mis | Problem::Mvc | Problem::Mds | Problem::Clique => {
            Ok(DiscreteSolution::VertexSet(prefix(c.k.unwrap())))
        }
        Problem::MaxCut => {
            let k = c.k.unwrap();
            let left = prefix(k);
            let mut right: Vec<usize> = (k..c.pi.n()).map(|i| c.pi.apply(i) + 1).collect();
            right.sort_unstable();
            Ok(DiscreteSolution::Bipartition(left, right))
        }
        Problem::Coloring => {
            let blocks = c.blocks.as_ref().unwrap();
            let mut classes = Vec::with_capacity(blocks.len());
            let mut start = 0;
            for &b in blocks {
                let mut class: Vec<usize> =
                    (start..start + b).map(|i| c.pi.apply(i) + 1).collect();
                class.sort_unstable();
                classes.push(class);
                start += b;
            }
            Ok(DiscreteSolution::Coloring(classes))
        }
        Problem::Tsp => Ok(DiscreteSolution::Tour(c.pi.one_based())),
        Problem::Qap | Problem::Gi => Ok(DiscreteSolution::Mapping(c.pi.one_based())),
        Problem::Sat => {
            let Instance::Sat(s) = instance else {
                unreachable!("evaluate already matched instance kind");
            };
            let enc = SatEncoding::build(s)?;
            enc.extract_assignment(&c.pi).map(DiscreteSolution::Assignment)
        }
    }
}
