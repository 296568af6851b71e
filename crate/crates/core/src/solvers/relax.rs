//! Doubly-stochastic relaxation: penalized trace objectives with analytic
//! gradients, Sinkhorn projection, assignment rounding, and an anneal polish.

use ndarray::Array2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulations::{
    clique_violation, evaluate, gi_distance, maxcut_value, mis_violation, mvc_violation,
    qap_value, tsp_length, CandidateSolution, Evaluation, Instance, Problem,
};
use crate::perm::{cycle_shift_matrix, Permutation};
use crate::trunc::TruncationSpec;

use super::anneal::{anneal_permutation, MoveSet};
use super::assignment::max_weight_assignment;
use super::sinkhorn::{sinkhorn_normalize, DoublyStochastic};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxParams {
    pub seed: u64,
    pub steps: usize,
    pub learning_rate: f64,
    pub sinkhorn_iters: usize,
    pub temperature: f64,
    pub temperature_decay: f64,
    pub penalty: f64,
    pub penalty_growth: f64,
    pub tolerance: f64,
}

impl Default for RelaxParams {
    fn default() -> Self {
        RelaxParams {
            seed: 0,
            steps: 300,
            learning_rate: 0.1,
            sinkhorn_iters: 50,
            temperature: 1.0,
            temperature_decay: 0.995,
            penalty: 1.0,
            penalty_growth: 1.0,
            tolerance: 1e-6,
        }
    }
}

impl RelaxParams {
    pub fn validate(&self) -> Result<()> {
        if self.sinkhorn_iters < 1 || self.steps < 1 {
            return Err(Error::InvalidInstance(
                "relax needs steps >= 1 and sinkhorn_iters >= 1".into(),
            ));
        }
        if !(self.learning_rate > 0.0)
            || !(self.temperature > 0.0)
            || !(self.temperature_decay > 0.0 && self.temperature_decay <= 1.0)
            || !(self.penalty >= 0.0)
            || !(self.penalty_growth >= 1.0)
            || !(self.tolerance > 0.0)
        {
            return Err(Error::InvalidInstance("relax hyperparameter out of range".into()));
        }
        Ok(())
    }
}

/// Summary of one relaxation trajectory: the last relaxed value, the Sinkhorn
/// residual of the last iterate, and the penalty weight at termination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxTrajectory {
    pub final_value: f64,
    pub final_residual: f64,
    pub steps: usize,
    pub final_penalty: f64,
}

/// Result of [`relax_solve`]: discrete candidate, its exact evaluation, and
/// the trajectory of the relaxation that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaxOutcome {
    pub candidate: CandidateSolution,
    pub evaluation: Evaluation,
    pub trajectory: RelaxTrajectory,
}

/// Rounds a doubly stochastic matrix to the nearest permutation in the
/// maximum-weight assignment sense; ties go to the smaller column index.
pub fn round_to_permutation(s: &DoublyStochastic) -> Permutation {
    max_weight_assignment(s.entries())
}

/// `Tr(S X S^T Y)` and its gradient `Y^T S X^T + Y S X`.
fn trace_form(s: &Array2<f64>, x: &Array2<f64>, y: &Array2<f64>) -> (f64, Array2<f64>) {
    let sx = s.dot(x);
    let value = y.dot(&sx.dot(&s.t())).diag().sum();
    let grad = y.t().dot(s).dot(&x.t()) + y.dot(&sx);
    (value, grad)
}

fn to_f64(m: &Array2<i64>) -> Array2<f64> {
    m.mapv(|x| x as f64)
}

fn require_k(k: Option<usize>) -> Result<usize> {
    k.ok_or_else(|| Error::InvalidInstance("this problem needs a subset size k".into()))
}

fn trunc_f64(spec: &TruncationSpec, n: usize) -> Result<Array2<f64>> {
    Ok(to_f64(&spec.matrix(n)?))
}

/// Relaxed penalized objective `objective(S) + lambda * violation(S)` with
/// `S` in place of the permutation matrix, plus its analytic gradient.
/// Supported problems: TSP, QAP, MIS, Max-Cut, MVC, Max-Clique, GI.
pub fn relaxed_objective(
    problem: Problem,
    instance: &Instance,
    s: &Array2<f64>,
    k: Option<usize>,
    lambda: f64,
) -> Result<(f64, Array2<f64>)> {
    let n = instance.perm_size();
    if s.nrows() != n || s.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: s.nrows().max(s.ncols()),
        });
    }
    match (problem, instance) {
        (Problem::Tsp, Instance::Tsp(inst)) => {
            let vt = to_f64(&cycle_shift_matrix(n)?).t().to_owned();
            let mut c = Array2::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    c[[i, j]] = inst.cost[i][j];
                }
            }
            Ok(trace_form(s, &vt, &c))
        }
        (Problem::Qap, Instance::Qap(inst)) => {
            let mut d = Array2::zeros((n, n));
            let mut f = Array2::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    d[[i, j]] = inst.dist[i][j];
                    f[[i, j]] = inst.flow[i][j];
                }
            }
            Ok(trace_form(s, &d, &f))
        }
        (Problem::Gi, Instance::GraphPair(g1, g2)) => {
            let a1 = to_f64(&g1.adjacency());
            let a2 = to_f64(&g2.adjacency());
            let r = s.dot(&a1).dot(&s.t()) - &a2;
            let value = r.iter().map(|x| x * x).sum();
            let grad = (r.dot(s).dot(&a1.t()) + r.t().dot(s).dot(&a1)) * 2.0;
            Ok((value, grad))
        }
        (Problem::Mis, Instance::Graph(g)) => {
            let k = require_k(k)?;
            let c = trunc_f64(&TruncationSpec::PrefixBlock { k }, n)?;
            let (v, grad) = trace_form(s, &to_f64(&g.adjacency()), &c);
            Ok((k as f64 + lambda * v, lambda * grad))
        }
        (Problem::Mvc, Instance::Graph(g)) => {
            let k = require_k(k)?;
            let c = trunc_f64(&TruncationSpec::SuffixBlock { k }, n)?;
            let (v, grad) = trace_form(s, &to_f64(&g.adjacency()), &c);
            Ok((k as f64 + lambda * v, lambda * grad))
        }
        (Problem::Clique, Instance::Graph(g)) => {
            let k = require_k(k)?;
            let mut non_edges = Array2::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        non_edges[[i, j]] = 1.0 - g.adj0(i, j) as f64;
                    }
                }
            }
            let c = trunc_f64(&TruncationSpec::PrefixBlock { k }, n)?;
            let (v, grad) = trace_form(s, &non_edges, &c);
            Ok((k as f64 + lambda * v, lambda * grad))
        }
        (Problem::MaxCut, Instance::Graph(g)) => {
            let k = require_k(k)?;
            let c = trunc_f64(&TruncationSpec::CrossBlock { k }, n)?;
            let (v, grad) = trace_form(s, &to_f64(&g.adjacency()), &c);
            Ok((v / 2.0, grad / 2.0))
        }
        _ => Err(Error::UnsupportedProblem(format!(
            "relaxed objective is not defined for {problem} on this instance"
        ))),
    }
}

fn softmax_matrix(logits: &Array2<f64>, tau: f64) -> Array2<f64> {
    logits.mapv(|x| (x / tau).clamp(-30.0, 30.0).exp())
}

/// Short deterministic polish on the rounded candidate.
fn polish(
    problem: Problem,
    instance: &Instance,
    pi: Permutation,
    k: Option<usize>,
    seed: u64,
) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x706f_6c69_7368);
    let iterations = 800;
    let moves = match problem {
        Problem::Tsp => MoveSet {
            segment_reversal: true,
            boundary_k: None,
            limit: None,
        },
        Problem::Mis | Problem::Mvc | Problem::Clique | Problem::MaxCut => MoveSet {
            segment_reversal: false,
            boundary_k: k,
            limit: None,
        },
        _ => MoveSet::swaps_only(),
    };
    let energy = |p: &Permutation| -> f64 {
        match (problem, instance) {
            (Problem::Tsp, Instance::Tsp(inst)) => tsp_length(inst, p).expect("validated"),
            (Problem::Qap, Instance::Qap(inst)) => qap_value(inst, p).expect("validated"),
            (Problem::Gi, Instance::GraphPair(g1, g2)) => {
                gi_distance(g1, g2, p).expect("validated") as f64
            }
            (Problem::Mis, Instance::Graph(g)) => {
                mis_violation(g, p, k.expect("k set")).expect("validated") as f64
            }
            (Problem::Mvc, Instance::Graph(g)) => {
                mvc_violation(g, p, k.expect("k set")).expect("validated") as f64
            }
            (Problem::Clique, Instance::Graph(g)) => {
                clique_violation(g, p, k.expect("k set")).expect("validated") as f64
            }
            (Problem::MaxCut, Instance::Graph(g)) => {
                -(maxcut_value(g, p, k.expect("k set")).expect("validated") as f64)
            }
            _ => unreachable!("unsupported problems rejected earlier"),
        }
    };
    let target = matches!(
        problem,
        Problem::Mis | Problem::Mvc | Problem::Clique
    )
    .then_some(0.0);
    let (best, _) = anneal_permutation(pi, energy, moves, iterations, 0.2, 0.995, target, &mut rng);
    best
}

fn make_candidate(problem: Problem, pi: Permutation, k: Option<usize>) -> CandidateSolution {
    match k {
        Some(k) => CandidateSolution::with_k(problem, pi, k),
        None => CandidateSolution::new(problem, pi),
    }
}

/// One relaxation run at a fixed k (or none). Returns the best discrete
/// candidate seen across periodic roundings plus the trajectory summary.
fn relax_run(
    problem: Problem,
    instance: &Instance,
    k: Option<usize>,
    params: &RelaxParams,
    seed: u64,
    warm: Option<&Array2<f64>>,
) -> Result<(CandidateSolution, Evaluation, RelaxTrajectory, Array2<f64>)> {
    let n = instance.perm_size();
    let maximize = problem == Problem::MaxCut;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut logits = match warm {
        Some(w) => w.clone(),
        None => Array2::from_shape_fn((n, n), |_| rng.random_range(-0.05..0.05)),
    };
    let mut tau = params.temperature;
    let mut lambda = params.penalty;
    let mut last_value = f64::NAN;
    let mut last_residual = f64::NAN;
    let mut best: Option<(CandidateSolution, Evaluation)> = None;

    let round_period = 50usize;
    for step in 1..=params.steps {
        let ds = sinkhorn_normalize(
            &softmax_matrix(&logits, tau),
            params.sinkhorn_iters,
            params.tolerance,
        )?;
        let (value, grad) = relaxed_objective(problem, instance, ds.entries(), k, lambda)?;
        last_value = value;
        last_residual = ds.residual();
        let dir = if maximize { 1.0 } else { -1.0 };
        logits.scaled_add(dir * params.learning_rate, &grad);
        tau = (tau * params.temperature_decay).max(1e-3);
        lambda *= params.penalty_growth;

        if step % round_period == 0 || step == params.steps {
            // the TSP trace form reads the rounded matrix as the inverse tour
            let mut raw = round_to_permutation(&ds);
            if problem == Problem::Tsp {
                raw = raw.invert();
            }
            let rounded = polish(problem, instance, raw, k, seed.wrapping_add(step as u64));
            let candidate = make_candidate(problem, rounded, k);
            let evaluation = evaluate(instance, &candidate)?;
            if !evaluation.feasible {
                lambda *= 2.0;
            }
            let better = match &best {
                None => true,
                Some((_, be)) => {
                    if evaluation.feasible != be.feasible {
                        evaluation.feasible
                    } else if problem.is_minimization() {
                        evaluation.objective < be.objective
                    } else {
                        evaluation.objective > be.objective
                    }
                }
            };
            if better {
                best = Some((candidate, evaluation));
            }
        }
    }
    let (candidate, evaluation) = best.expect("steps >= 1 rounds at least once");
    let trajectory = RelaxTrajectory {
        final_value: last_value,
        final_residual: last_residual,
        steps: params.steps,
        final_penalty: lambda,
    };
    Ok((candidate, evaluation, trajectory, logits))
}

/// Sinkhorn relaxation front end: gradient descent on the penalized relaxed
/// objective, assignment rounding, anneal polish, and (for the subset
/// problems) the same incremental k-schedule the annealer uses. Feasibility
/// of the returned candidate is decided by exact discrete re-evaluation.
pub fn relax_solve(
    problem: Problem,
    instance: &Instance,
    params: &RelaxParams,
) -> Result<RelaxOutcome> {
    params.validate()?;
    let n = instance.perm_size();
    match problem {
        Problem::Tsp | Problem::Qap | Problem::Gi => {
            let (candidate, evaluation, trajectory, _) =
                relax_run(problem, instance, None, params, params.seed, None)?;
            Ok(RelaxOutcome {
                candidate,
                evaluation,
                trajectory,
            })
        }
        Problem::MaxCut => {
            let mut best: Option<RelaxOutcome> = None;
            for k in 1..=(n / 2).max(1) {
                let (candidate, evaluation, trajectory, _) = relax_run(
                    problem,
                    instance,
                    Some(k),
                    params,
                    params.seed.wrapping_add((k as u64) << 16),
                    None,
                )?;
                let better = best
                    .as_ref()
                    .map_or(true, |b| evaluation.objective > b.evaluation.objective);
                if better {
                    best = Some(RelaxOutcome {
                        candidate,
                        evaluation,
                        trajectory,
                    });
                }
            }
            Ok(best.expect("n >= 2"))
        }
        Problem::Mis | Problem::Clique => {
            // k = 1 is always feasible; grow until a run comes back infeasible
            let mut warm: Option<Array2<f64>> = None;
            let mut best: Option<RelaxOutcome> = None;
            for k in 1..=n {
                let (candidate, evaluation, trajectory, logits) = relax_run(
                    problem,
                    instance,
                    Some(k),
                    params,
                    params.seed.wrapping_add((k as u64) << 16),
                    warm.as_ref(),
                )?;
                if !evaluation.feasible {
                    break;
                }
                warm = Some(logits);
                best = Some(RelaxOutcome {
                    candidate,
                    evaluation,
                    trajectory,
                });
            }
            Ok(best.expect("k = 1 is feasible for every graph"))
        }
        Problem::Mvc => {
            // k = n is always feasible; shrink while feasibility holds
            let identity = CandidateSolution::with_k(problem, Permutation::identity(n), n);
            let evaluation = evaluate(instance, &identity)?;
            let mut best = RelaxOutcome {
                candidate: identity,
                evaluation,
                trajectory: RelaxTrajectory {
                    final_value: 0.0,
                    final_residual: 0.0,
                    steps: 0,
                    final_penalty: params.penalty,
                },
            };
            let mut warm: Option<Array2<f64>> = None;
            for k in (0..n).rev() {
                if k == 0 {
                    let candidate =
                        CandidateSolution::with_k(problem, best.candidate.pi.clone(), 0);
                    let evaluation = evaluate(instance, &candidate)?;
                    if evaluation.feasible {
                        best.candidate = candidate;
                        best.evaluation = evaluation;
                    }
                    break;
                }
                let (candidate, evaluation, trajectory, logits) = relax_run(
                    problem,
                    instance,
                    Some(k),
                    params,
                    params.seed.wrapping_add((k as u64) << 16),
                    warm.as_ref(),
                )?;
                if !evaluation.feasible {
                    break;
                }
                warm = Some(logits);
                best = RelaxOutcome {
                    candidate,
                    evaluation,
                    trajectory,
                };
            }
            Ok(best)
        }
        Problem::Mds | Problem::Sat | Problem::Coloring => Err(Error::UnsupportedProblem(
            format!("{problem} has no relaxation; use the annealer"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{demo_mis_graph, Graph};
    use crate::perm::perm_matrix;
    use crate::{QapInstance, TspInstance};

    fn quick_params(seed: u64) -> RelaxParams {
        RelaxParams {
            seed,
            steps: 150,
            ..RelaxParams::default()
        }
    }

    fn random_instance_for(problem: Problem, n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match problem {
            Problem::Tsp => {
                let cost: Vec<Vec<f64>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i == j { 0.0 } else { rng.random_range(0.1..5.0) })
                            .collect()
                    })
                    .collect();
                Instance::Tsp(TspInstance::new(cost).unwrap())
            }
            Problem::Qap => {
                let m = |rng: &mut ChaCha8Rng| -> Vec<Vec<f64>> {
                    (0..n)
                        .map(|_| (0..n).map(|_| rng.random_range(0.0..3.0)).collect())
                        .collect()
                };
                Instance::Qap(QapInstance::new(m(&mut rng), m(&mut rng)).unwrap())
            }
            Problem::Gi => Instance::GraphPair(
                Graph::random(n, 0.5, &mut rng),
                Graph::random(n, 0.5, &mut rng),
            ),
            _ => Instance::Graph(Graph::random(n, 0.5, &mut rng)),
        }
    }

    fn finite_diff_grad(
        problem: Problem,
        instance: &Instance,
        s: &Array2<f64>,
        k: Option<usize>,
        lambda: f64,
    ) -> Array2<f64> {
        let h = 1e-5;
        let n = s.nrows();
        let mut g = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                let mut plus = s.clone();
                plus[[i, j]] += h;
                let mut minus = s.clone();
                minus[[i, j]] -= h;
                let (vp, _) = relaxed_objective(problem, instance, &plus, k, lambda).unwrap();
                let (vm, _) = relaxed_objective(problem, instance, &minus, k, lambda).unwrap();
                g[[i, j]] = (vp - vm) / (2.0 * h);
            }
        }
        g
    }

    #[test]
    fn gradients_match_finite_differences() {
        let problems = [
            Problem::Tsp,
            Problem::Qap,
            Problem::Gi,
            Problem::Mis,
            Problem::Mvc,
            Problem::Clique,
            Problem::MaxCut,
        ];
        for problem in problems {
            for seed in 0..20u64 {
                let n = 5;
                let instance = random_instance_for(problem, n, seed);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdead);
                let raw = Array2::from_shape_fn((n, n), |_| rng.random_range(0.05..1.0));
                let s = sinkhorn_normalize(&raw, 50, 1e-9).unwrap().entries().clone();
                let k = Some(rng.random_range(1..n));
                let lambda = 1.5;
                let (_, analytic) = relaxed_objective(problem, &instance, &s, k, lambda).unwrap();
                let numeric = finite_diff_grad(problem, &instance, &s, k, lambda);
                let scale = numeric.iter().fold(1.0f64, |a, &x| a.max(x.abs()));
                for (a, b) in analytic.iter().zip(numeric.iter()) {
                    let rel = (a - b).abs() / scale;
                    assert!(rel < 1e-4, "{problem} seed {seed}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn vertex_values_match_discrete_evaluation() {
        for seed in 0..10u64 {
            let n = 6;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pi = Permutation::random(n, &mut rng);
            let lambda = 2.0;
            let k = 1 + (seed as usize) % (n - 1);

            let inst = random_instance_for(Problem::Tsp, n, seed);
            let s = perm_matrix(&pi.invert()).mapv(|x| x as f64);
            let (v, _) = relaxed_objective(Problem::Tsp, &inst, &s, None, lambda).unwrap();
            let Instance::Tsp(t) = &inst else { unreachable!() };
            assert!((v - tsp_length(t, &pi).unwrap()).abs() < 1e-9);

            let s = perm_matrix(&pi).mapv(|x| x as f64);
            let inst = random_instance_for(Problem::Qap, n, seed);
            let (v, _) = relaxed_objective(Problem::Qap, &inst, &s, None, lambda).unwrap();
            let Instance::Qap(q) = &inst else { unreachable!() };
            assert!((v - qap_value(q, &pi).unwrap()).abs() < 1e-9);

            let inst = random_instance_for(Problem::Mis, n, seed);
            let Instance::Graph(g) = &inst else { unreachable!() };
            let (v, _) = relaxed_objective(Problem::Mis, &inst, &s, Some(k), lambda).unwrap();
            let expect = k as f64 + lambda * mis_violation(g, &pi, k).unwrap() as f64;
            assert!((v - expect).abs() < 1e-9);

            let (v, _) = relaxed_objective(Problem::Mvc, &inst, &s, Some(k), lambda).unwrap();
            let expect = k as f64 + lambda * mvc_violation(g, &pi, k).unwrap() as f64;
            assert!((v - expect).abs() < 1e-9);

            let (v, _) = relaxed_objective(Problem::Clique, &inst, &s, Some(k), lambda).unwrap();
            let expect = k as f64 + lambda * clique_violation(g, &pi, k).unwrap() as f64;
            assert!((v - expect).abs() < 1e-9);

            let (v, _) = relaxed_objective(Problem::MaxCut, &inst, &s, Some(k), lambda).unwrap();
            let expect = maxcut_value(g, &pi, k).unwrap() as f64;
            assert!((v - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn gi_identity_is_a_stationary_zero() {
        let g = demo_mis_graph();
        let inst = Instance::GraphPair(g.clone(), g);
        let s = Array2::eye(5);
        let (v, grad) = relaxed_objective(Problem::Gi, &inst, &s, None, 1.0).unwrap();
        assert_eq!(v, 0.0);
        assert!(grad.iter().all(|&x| x.abs() < 1e-12));
    }

    #[test]
    fn mis_demo_graph_reaches_k3_for_most_seeds() {
        let inst = Instance::Graph(demo_mis_graph());
        let mut hits = 0;
        for seed in 0..10 {
            let r = relax_solve(Problem::Mis, &inst, &quick_params(seed)).unwrap();
            assert!(r.evaluation.feasible, "seed {seed} returned infeasible");
            if r.candidate.k == Some(3) {
                hits += 1;
            }
        }
        assert!(hits >= 8, "only {hits}/10 seeds reached k = 3");
    }

    #[test]
    fn tsp_unit_ring_reaches_five() {
        let inst = Instance::Tsp(TspInstance::unit_ring(5, 10.0));
        let r = relax_solve(Problem::Tsp, &inst, &quick_params(1)).unwrap();
        assert_eq!(r.evaluation.objective, 5.0);
        assert!(r.trajectory.final_residual <= 1e-6 || r.trajectory.final_residual.is_finite());
    }

    #[test]
    fn gi_relabeled_cycle_reaches_zero() {
        let g1 = Graph::cycle(4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sigma = Permutation::random(4, &mut rng);
        let relabeled = crate::perm::relabel(&g1.adjacency(), &sigma).unwrap();
        let g2 = Graph::from_adjacency(relabeled).unwrap();
        let inst = Instance::GraphPair(g1, g2);
        let r = relax_solve(Problem::Gi, &inst, &quick_params(2)).unwrap();
        assert_eq!(r.evaluation.objective, 0.0);
        assert!(r.evaluation.feasible);
    }

    #[test]
    fn mvc_demo_graph_finds_small_cover() {
        let inst = Instance::Graph(demo_mis_graph());
        let r = relax_solve(Problem::Mvc, &inst, &quick_params(3)).unwrap();
        assert!(r.evaluation.feasible);
        assert_eq!(r.candidate.k, Some(2));
    }

    #[test]
    fn maxcut_k4_reaches_four() {
        let inst = Instance::Graph(Graph::complete(4));
        let r = relax_solve(Problem::MaxCut, &inst, &quick_params(4)).unwrap();
        assert_eq!(r.evaluation.objective, 4.0);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let inst = Instance::Graph(demo_mis_graph());
        let a = relax_solve(Problem::Mis, &inst, &quick_params(9)).unwrap();
        let b = relax_solve(Problem::Mis, &inst, &quick_params(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unsupported_problems_are_rejected() {
        let inst = Instance::Graph(demo_mis_graph());
        assert!(relax_solve(Problem::Mds, &inst, &quick_params(0)).is_err());
        assert!(relax_solve(Problem::Coloring, &inst, &quick_params(0)).is_err());
        let s = Array2::eye(5);
        assert!(relaxed_objective(Problem::Mds, &inst, &s, Some(1), 1.0).is_err());
        assert!(relaxed_objective(Problem::Sat, &inst, &s, None, 1.0).is_err());
    }

    #[test]
    fn rounding_examples() {
        let pi = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let m = perm_matrix(&pi).mapv(|x| x as f64) + Array2::from_elem((3, 3), 1e-9);
        let ds = sinkhorn_normalize(&m, 100, 1e-10).unwrap();
        assert_eq!(round_to_permutation(&ds), pi);
    }
}
