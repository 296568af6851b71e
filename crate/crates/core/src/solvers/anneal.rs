//! Simulated annealing over permutations, with an outer k-schedule for the
//! subset problems and composition moves for coloring.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulations::{
    clique_violation, coloring_violation, evaluate, gi_distance, maxcut_value, mds_coverage,
    mis_violation, mvc_violation, qap_value, tsp_length, CandidateSolution, Evaluation, Instance,
    Problem,
};
use crate::graph::Graph;
use crate::perm::Permutation;
use crate::sat::{sat_check, SatEncoding};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealParams {
    pub seed: u64,
    pub iterations: usize,
    pub initial_temperature: f64,
    pub cooling_rate: f64,
    pub restarts: usize,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            seed: 0,
            iterations: 100_000,
            initial_temperature: 1.0,
            cooling_rate: 0.9995,
            restarts: 2,
        }
    }
}

impl AnnealParams {
    pub fn validate(&self) -> Result<()> {
        if self.iterations < 1 || self.restarts < 1 {
            return Err(Error::InvalidInstance(
                "anneal needs iterations >= 1 and restarts >= 1".into(),
            ));
        }
        if !(self.initial_temperature > 0.0)
            || !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0)
        {
            return Err(Error::InvalidInstance(
                "anneal needs T0 > 0 and cooling rate in (0,1)".into(),
            ));
        }
        Ok(())
    }
}

/// A solver's answer: the best candidate found plus its exact re-evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub candidate: CandidateSolution,
    pub evaluation: Evaluation,
}

fn accept(delta: f64, temp: f64, rng: &mut ChaCha8Rng) -> bool {
    delta <= 0.0 || rng.random::<f64>() < (-delta / temp.max(1e-300)).exp()
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(restart as u64 + 1)))
}

#[derive(Clone, Copy)]
pub(crate) struct MoveSet {
    /// Also propose segment reversals (TSP).
    pub(crate) segment_reversal: bool,
    /// Also propose swaps across the k-boundary (subset problems).
    pub(crate) boundary_k: Option<usize>,
    /// Only permute the first `limit` positions (SAT literal block).
    pub(crate) limit: Option<usize>,
}

impl MoveSet {
    pub(crate) fn swaps_only() -> Self {
        MoveSet {
            segment_reversal: false,
            boundary_k: None,
            limit: None,
        }
    }
}

/// Annealing loop over permutations. Returns the best state visited and its
/// energy; stops early when `target` is reached.
#[allow(clippy::too_many_arguments)]
pub(crate) fn anneal_permutation<E: FnMut(&Permutation) -> f64>(
    init: Permutation,
    mut energy: E,
    moves: MoveSet,
    iterations: usize,
    t0: f64,
    cooling: f64,
    target: Option<f64>,
    rng: &mut ChaCha8Rng,
) -> (Permutation, f64) {
    let n = moves.limit.unwrap_or(init.n());
    let mut current = init;
    let mut current_energy = energy(&current);
    let mut best = current.clone();
    let mut best_energy = current_energy;
    let mut temp = t0;
    if n < 2 {
        return (best, best_energy);
    }
    for _ in 0..iterations {
        if let Some(t) = target {
            if best_energy <= t {
                break;
            }
        }
        enum Proposed {
            Swap(usize, usize),
            Reverse(usize, usize),
        }
        let proposal = if moves.segment_reversal && rng.random::<f64>() < 0.5 {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            Proposed::Reverse(a.min(b), a.max(b))
        } else if let Some(k) = moves.boundary_k {
            if k >= 1 && k < n && rng.random::<f64>() < 0.5 {
                Proposed::Swap(rng.random_range(0..k), rng.random_range(k..n))
            } else {
                Proposed::Swap(rng.random_range(0..n), rng.random_range(0..n))
            }
        } else {
            Proposed::Swap(rng.random_range(0..n), rng.random_range(0..n))
        };
        match proposal {
            Proposed::Swap(a, b) => {
                if a != b {
                    current.swap_positions(a, b);
                    let e = energy(&current);
                    if accept(e - current_energy, temp, rng) {
                        current_energy = e;
                    } else {
                        current.swap_positions(a, b);
                    }
                }
            }
            Proposed::Reverse(a, b) => {
                if a != b {
                    current.reverse_segment(a, b);
                    let e = energy(&current);
                    if accept(e - current_energy, temp, rng) {
                        current_energy = e;
                    } else {
                        current.reverse_segment(a, b);
                    }
                }
            }
        }
        if current_energy < best_energy {
            best_energy = current_energy;
            best = current.clone();
        }
        temp *= cooling;
    }
    (best, best_energy)
}

fn anneal_objective<E: FnMut(&Permutation) -> f64 + Copy>(
    n: usize,
    energy: E,
    moves: MoveSet,
    params: &AnnealParams,
) -> (Permutation, f64) {
    let mut overall: Option<(Permutation, f64)> = None;
    for restart in 0..params.restarts {
        let mut rng = restart_rng(params.seed, restart);
        let init = Permutation::random(n, &mut rng);
        let (pi, e) = anneal_permutation(
            init,
            energy,
            moves,
            params.iterations,
            params.initial_temperature,
            params.cooling_rate,
            None,
            &mut rng,
        );
        match &overall {
            Some((_, be)) if e >= *be => {}
            _ => overall = Some((pi, e)),
        }
    }
    overall.expect("restarts >= 1")
}

/// Feasibility anneal at a fixed k: warm-started, stops once violation 0 is
/// found. Returns the best permutation and whether it reached feasibility.
fn anneal_feasibility<E: FnMut(&Permutation) -> f64 + Copy>(
    warm: &Permutation,
    energy: E,
    k: usize,
    params: &AnnealParams,
    outer_round: usize,
) -> (Permutation, bool) {
    let n = warm.n();
    let moves = MoveSet {
        segment_reversal: false,
        boundary_k: Some(k),
        limit: None,
    };
    let mut best: Option<(Permutation, f64)> = None;
    for restart in 0..params.restarts {
        let mut rng = restart_rng(params.seed ^ (outer_round as u64) << 32, restart);
        let init = if restart == 0 {
            warm.clone()
        } else {
            Permutation::random(n, &mut rng)
        };
        let (pi, e) = anneal_permutation(
            init,
            energy,
            moves,
            params.iterations,
            params.initial_temperature,
            params.cooling_rate,
            Some(0.0),
            &mut rng,
        );
        let better = best.as_ref().map_or(true, |(_, be)| e < *be);
        if better {
            best = Some((pi, e));
        }
        if best.as_ref().unwrap().1 <= 0.0 {
            break;
        }
    }
    let (pi, e) = best.expect("restarts >= 1");
    (pi, e <= 0.0)
}

fn subset_violation(problem: Problem, g: &Graph, pi: &Permutation, k: usize) -> f64 {
    let v = match problem {
        Problem::Mis => mis_violation(g, pi, k),
        Problem::Clique => clique_violation(g, pi, k),
        Problem::Mvc => mvc_violation(g, pi, k),
        Problem::Mds => mds_coverage(g, pi, k)
            .map(|cov| cov.iter().map(|&c| (1 - c).max(0)).sum()),
        _ => unreachable!("subset problems only"),
    };
    v.expect("dimensions validated before the search") as f64
}

fn anneal_subset(problem: Problem, g: &Graph, params: &AnnealParams) -> SolveOutcome {
    let n = g.n();
    let maximize = matches!(problem, Problem::Mis | Problem::Clique);
    let mut rng = restart_rng(params.seed, 0);
    let mut pi = Permutation::random(n, &mut rng);
    let mut best_k;
    if maximize {
        // k = 1 is always feasible; grow with warm starts until the anneal
        // fails to reach feasibility.
        best_k = 1;
        let mut round = 0;
        for k in 2..=n {
            round += 1;
            let (next_pi, feasible) = anneal_feasibility(
                &pi,
                |p| subset_violation(problem, g, p, k),
                k,
                params,
                round,
            );
            if !feasible {
                break;
            }
            pi = next_pi;
            best_k = k;
        }
    } else {
        // k = n is always feasible; shrink while feasibility holds.
        best_k = n;
        let mut round = 0;
        let floor = if problem == Problem::Mvc { 0 } else { 1 };
        loop {
            if best_k == floor {
                break;
            }
            let k = best_k - 1;
            round += 1;
            if k == 0 {
                // k = 0 needs no permutation search: legal only when edgeless
                if g.edge_count() == 0 {
                    best_k = 0;
                }
                break;
            }
            let (next_pi, feasible) = anneal_feasibility(
                &pi,
                |p| subset_violation(problem, g, p, k),
                k,
                params,
                round,
            );
            if !feasible {
                break;
            }
            pi = next_pi;
            best_k = k;
        }
    }
    SolveOutcome {
        candidate: CandidateSolution::with_k(problem, pi.clone(), best_k),
        evaluation: Evaluation {
            objective: best_k as f64,
            violation: subset_violation(problem, g, &pi, best_k.max(if problem == Problem::Mvc { 0 } else { 1 })) as i64,
            feasible: subset_violation(problem, g, &pi, best_k.max(if problem == Problem::Mvc { 0 } else { 1 })) == 0.0,
        },
    }
}

fn anneal_maxcut(g: &Graph, params: &AnnealParams) -> SolveOutcome {
    let n = g.n();
    let mut overall: Option<(Permutation, usize, i64)> = None;
    for restart in 0..params.restarts {
        let mut rng = restart_rng(params.seed, restart);
        let mut pi = Permutation::random(n, &mut rng);
        let mut k = rng.random_range(1..n);
        let cut = |p: &Permutation, k: usize| {
            maxcut_value(g, p, k).expect("dimensions validated") };
        let mut current = cut(&pi, k);
        let mut best = (pi.clone(), k, current);
        let mut temp = params.initial_temperature;
        for _ in 0..params.iterations {
            if rng.random::<f64>() < 0.3 && n > 2 {
                // move the cut point
                let nk = if rng.random::<bool>() { k + 1 } else { k.saturating_sub(1) };
                let nk = nk.clamp(1, n - 1);
                let e = cut(&pi, nk);
                if accept((current - e) as f64, temp, &mut rng) {
                    k = nk;
                    current = e;
                }
            } else {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                if a != b {
                    pi.swap_positions(a, b);
                    let e = cut(&pi, k);
                    if accept((current - e) as f64, temp, &mut rng) {
                        current = e;
                    } else {
                        pi.swap_positions(a, b);
                    }
                }
            }
            if current > best.2 {
                best = (pi.clone(), k, current);
            }
            temp *= params.cooling_rate;
        }
        match &overall {
            Some((_, _, bc)) if best.2 <= *bc => {}
            _ => overall = Some(best),
        }
    }
    let (pi, k, cut) = overall.expect("restarts >= 1");
    SolveOutcome {
        candidate: CandidateSolution::with_k(Problem::MaxCut, pi, k),
        evaluation: Evaluation {
            objective: cut as f64,
            violation: 0,
            feasible: true,
        },
    }
}

fn anneal_coloring(g: &Graph, params: &AnnealParams) -> SolveOutcome {
    let n = g.n();
    let mut rng = restart_rng(params.seed, 0);
    let mut pi = Permutation::random(n, &mut rng);
    let mut blocks: Vec<usize> = vec![1; n]; // singleton classes are proper
    loop {
        if blocks.len() == 1 {
            break;
        }
        // merge the two smallest adjacent blocks as the warm start for k-1
        let mut merge_at = 0;
        let mut merge_size = usize::MAX;
        for i in 0..blocks.len() - 1 {
            let s = blocks[i] + blocks[i + 1];
            if s < merge_size {
                merge_size = s;
                merge_at = i;
            }
        }
        let mut trial: Vec<usize> = blocks.clone();
        trial[merge_at] += trial[merge_at + 1];
        trial.remove(merge_at + 1);

        let mut found: Option<(Permutation, Vec<usize>)> = None;
        for restart in 0..params.restarts {
            let mut rng = restart_rng(params.seed ^ ((blocks.len() as u64) << 40), restart);
            let mut cur_pi = if restart == 0 {
                pi.clone()
            } else {
                Permutation::random(n, &mut rng)
            };
            let mut cur_blocks = trial.clone();
            let mut current =
                coloring_violation(g, &cur_pi, &cur_blocks).expect("validated") as f64;
            let mut temp = params.initial_temperature;
            for _ in 0..params.iterations {
                if current == 0.0 {
                    break;
                }
                if rng.random::<f64>() < 0.4 && cur_blocks.len() > 1 {
                    // shift one slot between adjacent blocks
                    let b = rng.random_range(0..cur_blocks.len() - 1);
                    let left_to_right = rng.random::<bool>();
                    let ok = if left_to_right {
                        cur_blocks[b] > 1
                    } else {
                        cur_blocks[b + 1] > 1
                    };
                    if ok {
                        if left_to_right {
                            cur_blocks[b] -= 1;
                            cur_blocks[b + 1] += 1;
                        } else {
                            cur_blocks[b] += 1;
                            cur_blocks[b + 1] -= 1;
                        }
                        let e = coloring_violation(g, &cur_pi, &cur_blocks).expect("validated")
                            as f64;
                        if accept(e - current, temp, &mut rng) {
                            current = e;
                        } else if left_to_right {
                            cur_blocks[b] += 1;
                            cur_blocks[b + 1] -= 1;
                        } else {
                            cur_blocks[b] -= 1;
                            cur_blocks[b + 1] += 1;
                        }
                    }
                } else {
                    let a = rng.random_range(0..n);
                    let b2 = rng.random_range(0..n);
                    if a != b2 {
                        cur_pi.swap_positions(a, b2);
                        let e = coloring_violation(g, &cur_pi, &cur_blocks).expect("validated")
                            as f64;
                        if accept(e - current, temp, &mut rng) {
                            current = e;
                        } else {
                            cur_pi.swap_positions(a, b2);
                        }
                    }
                }
                temp *= params.cooling_rate;
            }
            if current == 0.0 {
                found = Some((cur_pi, cur_blocks));
                break;
            }
        }
        match found {
            Some((p, b)) => {
                pi = p;
                blocks = b;
            }
            None => break,
        }
    }
    SolveOutcome {
        evaluation: Evaluation {
            objective: blocks.len() as f64,
            violation: coloring_violation(g, &pi, &blocks).expect("validated"),
            feasible: true,
        },
        candidate: CandidateSolution::with_blocks(pi, blocks),
    }
}

fn anneal_sat(inst: &crate::sat::SatInstance, params: &AnnealParams) -> Result<SolveOutcome> {
    let enc = SatEncoding::build(inst)?;
    let n2 = 2 * inst.num_vars;
    let m = inst.clauses.len();
    let nn = n2 + m;
    let energy = |pi: &Permutation| {
        let check = sat_check(&enc, pi).expect("clause block is fixed by construction");
        let shortfall: i64 = check.clause_cover[nn - m..]
            .iter()
            .map(|&c| (1 - c).max(0))
            .sum();
        (check.complementarity + shortfall) as f64
    };
    let mut overall: Option<(Permutation, f64)> = None;
    for restart in 0..params.restarts {
        let mut rng = restart_rng(params.seed, restart);
        // random order of the literal block, clause block fixed pointwise
        let mut literal: Vec<usize> = (1..=n2).collect();
        use rand::seq::SliceRandom;
        literal.shuffle(&mut rng);
        let full: Vec<usize> = literal.into_iter().chain(n2 + 1..=nn).collect();
        let init = Permutation::from_one_based(&full)?;
        let (pi, e) = anneal_permutation(
            init,
            energy,
            MoveSet {
                segment_reversal: false,
                boundary_k: Some(inst.num_vars),
                limit: Some(n2),
            },
            params.iterations,
            params.initial_temperature,
            params.cooling_rate,
            Some(0.0),
            &mut rng,
        );
        let better = overall.as_ref().map_or(true, |(_, be)| e < *be);
        if better {
            overall = Some((pi, e));
        }
        if overall.as_ref().unwrap().1 <= 0.0 {
            break;
        }
    }
    let (pi, e) = overall.expect("restarts >= 1");
    Ok(SolveOutcome {
        candidate: CandidateSolution::new(Problem::Sat, pi),
        evaluation: Evaluation {
            objective: if e == 0.0 { 1.0 } else { 0.0 },
            violation: e as i64,
            feasible: e == 0.0,
        },
    })
}

/// Simulated annealing front end. Deterministic for a given seed; every
/// candidate reported feasible re-verifies exactly through the evaluators.
pub fn anneal(problem: Problem, instance: &Instance, params: &AnnealParams) -> Result<SolveOutcome> {
    params.validate()?;
    let outcome = match (problem, instance) {
        (Problem::Tsp, Instance::Tsp(inst)) => {
            let (pi, _) = anneal_objective(
                inst.n,
                |p| tsp_length(inst, p).expect("validated"),
                MoveSet {
                    segment_reversal: true,
                    boundary_k: None,
                    limit: None,
                },
                params,
            );
            let candidate = CandidateSolution::new(Problem::Tsp, pi);
            let evaluation = evaluate(instance, &candidate)?;
            SolveOutcome {
                candidate,
                evaluation,
            }
        }
        (Problem::Qap, Instance::Qap(inst)) => {
            let (pi, _) = anneal_objective(
                inst.n,
                |p| qap_value(inst, p).expect("validated"),
                MoveSet::swaps_only(),
                params,
            );
            let candidate = CandidateSolution::new(Problem::Qap, pi);
            let evaluation = evaluate(instance, &candidate)?;
            SolveOutcome {
                candidate,
                evaluation,
            }
        }
        (Problem::Gi, Instance::GraphPair(g1, g2)) => {
            let (pi, _) = anneal_objective(
                g1.n(),
                |p| gi_distance(g1, g2, p).expect("validated") as f64,
                MoveSet::swaps_only(),
                params,
            );
            let candidate = CandidateSolution::new(Problem::Gi, pi);
            let evaluation = evaluate(instance, &candidate)?;
            SolveOutcome {
                candidate,
                evaluation,
            }
        }
        (Problem::Mis | Problem::Mvc | Problem::Mds | Problem::Clique, Instance::Graph(g)) => {
            let outcome = anneal_subset(problem, g, params);
            let evaluation = evaluate(instance, &outcome.candidate)?;
            SolveOutcome {
                candidate: outcome.candidate,
                evaluation,
            }
        }
        (Problem::MaxCut, Instance::Graph(g)) => anneal_maxcut(g, params),
        (Problem::Coloring, Instance::Graph(g)) => {
            let outcome = anneal_coloring(g, params);
            let evaluation = evaluate(instance, &outcome.candidate)?;
            SolveOutcome {
                candidate: outcome.candidate,
                evaluation,
            }
        }
        (Problem::Sat, Instance::Sat(inst)) => anneal_sat(inst, params)?,
        _ => {
            return Err(Error::UnsupportedProblem(format!(
                "anneal: {problem} does not match the given instance"
            )))
        }
    };
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::demo_mis_graph;
    use crate::sat::appendix_formula;
    use crate::TspInstance;

    fn quick_params(seed: u64) -> AnnealParams {
        AnnealParams {
            seed,
            iterations: 4000,
            initial_temperature: 1.0,
            cooling_rate: 0.999,
            restarts: 3,
        }
    }

    #[test]
    fn tsp_unit_ring_reaches_optimum() {
        let inst = Instance::Tsp(TspInstance::unit_ring(5, 10.0));
        let r = anneal(Problem::Tsp, &inst, &quick_params(7)).unwrap();
        assert_eq!(r.evaluation.objective, 5.0);
    }

    #[test]
    fn mis_demo_graph_finds_k3() {
        let inst = Instance::Graph(demo_mis_graph());
        for seed in 0..5 {
            let r = anneal(Problem::Mis, &inst, &quick_params(seed)).unwrap();
            assert!(r.evaluation.feasible);
            assert_eq!(r.candidate.k, Some(3), "seed {seed}");
        }
    }

    #[test]
    fn mis_edgeless_takes_all_vertices() {
        let inst = Instance::Graph(Graph::edgeless(6));
        let r = anneal(Problem::Mis, &inst, &quick_params(1)).unwrap();
        assert_eq!(r.candidate.k, Some(6));
        assert!(r.evaluation.feasible);
    }

    #[test]
    fn mvc_edgeless_reaches_zero() {
        let inst = Instance::Graph(Graph::edgeless(4));
        let r = anneal(Problem::Mvc, &inst, &quick_params(1)).unwrap();
        assert_eq!(r.candidate.k, Some(0));
        assert!(r.evaluation.feasible);
    }

    #[test]
    fn maxcut_k4_reaches_four() {
        let inst = Instance::Graph(Graph::complete(4));
        let r = anneal(Problem::MaxCut, &inst, &quick_params(3)).unwrap();
        assert_eq!(r.evaluation.objective, 4.0);
    }

    #[test]
    fn coloring_c5_needs_three() {
        let inst = Instance::Graph(Graph::cycle(5));
        let r = anneal(Problem::Coloring, &inst, &quick_params(11)).unwrap();
        assert!(r.evaluation.feasible);
        assert_eq!(r.evaluation.objective, 3.0);
    }

    #[test]
    fn sat_appendix_satisfied() {
        let formula = appendix_formula();
        let inst = Instance::Sat(formula.clone());
        let r = anneal(Problem::Sat, &inst, &quick_params(42)).unwrap();
        assert!(r.evaluation.feasible);
        let sol = crate::extract_solution(&inst, &r.candidate).unwrap();
        let crate::DiscreteSolution::Assignment(a) = sol else {
            panic!("expected assignment");
        };
        assert!(formula.eval(&a).unwrap());
    }

    #[test]
    fn identical_seeds_identical_outputs() {
        let inst = Instance::Graph(demo_mis_graph());
        let a = anneal(Problem::Mis, &inst, &quick_params(123)).unwrap();
        let b = anneal(Problem::Mis, &inst, &quick_params(123)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_params_rejected() {
        let inst = Instance::Graph(demo_mis_graph());
        let mut p = quick_params(1);
        p.iterations = 0;
        assert!(anneal(Problem::Mis, &inst, &p).is_err());
        let mut p = quick_params(1);
        p.cooling_rate = 1.5;
        assert!(anneal(Problem::Mis, &inst, &p).is_err());
    }
}
