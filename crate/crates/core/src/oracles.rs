//! Independent brute-force solvers and an exhaustive search over the
//! permutation formulations. The brute oracles never touch the trace
//! machinery; agreement between the two routes is what certifies the
//! formulations on small instances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulations::{
    clique_violation, coloring_violation, gi_distance, maxcut_value, mds_coverage, mis_violation,
    mvc_violation, qap_value, tsp_length, DiscreteSolution, Problem, QapInstance, TspInstance,
};
use crate::graph::Graph;
use crate::perm::Permutation;
use crate::sat::{sat_check, SatEncoding, SatInstance};

/// Size limits for the exhaustive searches. Exceeding a limit is an error,
/// never a silent truncation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OracleLimits {
    /// Max vertices for 2^n subset enumeration.
    pub subset: usize,
    /// Max permutation size for n! formulation search.
    pub perm: usize,
    /// Max cities/facilities for tour and assignment enumeration.
    pub tour: usize,
    /// Max variables for 2^n SAT model enumeration.
    pub sat_vars: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            subset: 20,
            perm: 8,
            tour: 10,
            sat_vars: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub problem: Problem,
    pub optimum: f64,
    /// Lexicographically smallest witness attaining the optimum; `None` only
    /// for an unsatisfiable SAT instance.
    pub witness: Option<DiscreteSolution>,
}

fn check_limit(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::TooLarge { what, size, limit });
    }
    Ok(())
}

fn mask_to_set(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

fn is_independent(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(a, &u)| set[a + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

fn is_clique(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(a, &u)| set[a + 1..].iter().all(|&v| g.has_edge(u, v)))
}

fn is_cover(g: &Graph, set: &[usize]) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| set.contains(&u) || set.contains(&v))
}

fn is_dominating(g: &Graph, set: &[usize]) -> bool {
    (1..=g.n()).all(|v| set.contains(&v) || set.iter().any(|&u| g.has_edge(u, v)))
}

/// Replaces `best` when `candidate` is strictly better, or equal and
/// lexicographically smaller. `better` says whether the first size beats
/// the second.
fn prefer(
    best: &mut Option<(usize, Vec<usize>)>,
    size: usize,
    set: Vec<usize>,
    better: impl Fn(usize, usize) -> bool,
) {
    match best {
        None => *best = Some((size, set)),
        Some((bs, bset)) => {
            if better(size, *bs) || (size == *bs && set < *bset) {
                *best = Some((size, set));
            }
        }
    }
}

/// Exact optimum for MIS, MVC, MDS, or Max-Clique by 2^n subset enumeration.
pub fn brute_subset(problem: Problem, g: &Graph, limits: &OracleLimits) -> Result<OracleResult> {
    let n = g.n();
    check_limit("subset enumeration", n, limits.subset)?;
    let maximize = matches!(problem, Problem::Mis | Problem::Clique);
    let feasible: fn(&Graph, &[usize]) -> bool = match problem {
        Problem::Mis => is_independent,
        Problem::Clique => is_clique,
        Problem::Mvc => is_cover,
        Problem::Mds => is_dominating,
        _ => {
            return Err(Error::UnsupportedProblem(format!(
                "brute_subset does not handle {problem}"
            )))
        }
    };
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0..(1u32 << n) {
        let set = mask_to_set(mask, n);
        if problem == Problem::Mds && set.is_empty() && n > 0 {
            continue; // a dominating set must be nonempty on a nonempty graph
        }
        if feasible(g, &set) {
            if maximize {
                prefer(&mut best, set.len(), set, |a, b| a > b);
            } else {
                prefer(&mut best, set.len(), set, |a, b| a < b);
            }
        }
    }
    let (size, set) = best.expect("empty or full set is always feasible for one direction");
    Ok(OracleResult {
        problem,
        optimum: size as f64,
        witness: Some(DiscreteSolution::VertexSet(set)),
    })
}

/// Exact maximum cut over all bipartitions.
pub fn brute_maxcut(g: &Graph, limits: &OracleLimits) -> Result<OracleResult> {
    let n = g.n();
    check_limit("cut enumeration", n, limits.subset)?;
    if n < 2 {
        return Err(Error::InvalidInstance("max cut needs n >= 2".into()));
    }
    let edges = g.edges();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 1..(1u32 << n) - 1 {
        let left = mask_to_set(mask, n);
        let cut = edges
            .iter()
            .filter(|&&(u, v)| (mask & (1 << (u - 1)) != 0) != (mask & (1 << (v - 1)) != 0))
            .count();
        prefer(&mut best, cut, left, |a, b| a > b);
    }
    let (cut, left) = best.expect("n >= 2 has at least one bipartition");
    let right: Vec<usize> = (1..=n).filter(|v| !left.contains(v)).collect();
    Ok(OracleResult {
        problem: Problem::MaxCut,
        optimum: cut as f64,
        witness: Some(DiscreteSolution::Bipartition(left, right)),
    })
}

fn proper_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    // Backtracking over vertices 1..n; colors 0..k with the usual
    // symmetry break (vertex i may open at most one new color).
    fn go(g: &Graph, k: usize, colors: &mut Vec<usize>, used: usize) -> bool {
        let v = colors.len();
        if v == g.n() {
            return true;
        }
        let open = (used + 1).min(k);
        for c in 0..open {
            if (0..v).all(|u| colors[u] != c || !g.has_edge(u + 1, v + 1)) {
                colors.push(c);
                if go(g, k, colors, used.max(c + 1)) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    let mut colors = Vec::with_capacity(g.n());
    go(g, k, &mut colors, 0).then_some(colors)
}

/// Chromatic number by increasing-k backtracking search.
pub fn brute_chromatic(g: &Graph, limits: &OracleLimits) -> Result<OracleResult> {
    let n = g.n();
    check_limit("coloring search", n, limits.subset)?;
    if n == 0 {
        return Err(Error::InvalidInstance("empty graph".into()));
    }
    for k in 1..=n {
        if let Some(colors) = proper_coloring(g, k) {
            let used = colors.iter().max().unwrap() + 1;
            let mut classes = vec![Vec::new(); used];
            for (v, &c) in colors.iter().enumerate() {
                classes[c].push(v + 1);
            }
            return Ok(OracleResult {
                problem: Problem::Coloring,
                optimum: used as f64,
                witness: Some(DiscreteSolution::Coloring(classes)),
            });
        }
    }
    unreachable!("k = n always admits a proper coloring")
}

/// Exact TSP optimum by enumerating all tours starting at city 1.
pub fn brute_tsp(inst: &TspInstance, limits: &OracleLimits) -> Result<OracleResult> {
    check_limit("tour enumeration", inst.n, limits.tour)?;
    let n = inst.n;
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut rest = Permutation::identity(n - 1);
    loop {
        let tour: Vec<usize> = std::iter::once(1)
            .chain(rest.as_slice().iter().map(|&v| v + 2))
            .collect();
        let pi = Permutation::from_one_based(&tour)?;
        let len = tsp_length(inst, &pi)?;
        match &mut best {
            None => best = Some((len, tour)),
            Some((bl, bt)) => {
                if len < *bl - 1e-12 || ((len - *bl).abs() <= 1e-12 && tour < *bt) {
                    *bl = len;
                    *bt = tour;
                }
            }
        }
        if !rest.next_lex() {
            break;
        }
    }
    let (len, tour) = best.expect("at least one tour exists");
    Ok(OracleResult {
        problem: Problem::Tsp,
        optimum: len,
        witness: Some(DiscreteSolution::Tour(tour)),
    })
}

/// Exact QAP optimum over all n! assignments.
pub fn brute_qap(inst: &QapInstance, limits: &OracleLimits) -> Result<OracleResult> {
    check_limit("assignment enumeration", inst.n, limits.tour)?;
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut pi = Permutation::identity(inst.n);
    loop {
        let value = qap_value(inst, &pi)?;
        let map = pi.one_based();
        match &mut best {
            None => best = Some((value, map)),
            Some((bv, bm)) => {
                if value < *bv - 1e-12 || ((value - *bv).abs() <= 1e-12 && map < *bm) {
                    *bv = value;
                    *bm = map;
                }
            }
        }
        if !pi.next_lex() {
            break;
        }
    }
    let (value, map) = best.expect("at least one assignment exists");
    Ok(OracleResult {
        problem: Problem::Qap,
        optimum: value,
        witness: Some(DiscreteSolution::Mapping(map)),
    })
}

/// Enumerates all 2^n assignments in lexicographic order (false < true,
/// variable 1 most significant) and returns every model.
pub fn brute_sat_models(inst: &SatInstance, limits: &OracleLimits) -> Result<Vec<Vec<bool>>> {
    let n = inst.num_vars;
    check_limit("model enumeration", n, limits.sat_vars)?;
    let mut models = Vec::new();
    for mask in 0..(1u64 << n) {
        let assignment: Vec<bool> = (0..n).map(|v| mask & (1 << (n - 1 - v)) != 0).collect();
        if inst.eval(&assignment)? {
            models.push(assignment);
        }
    }
    Ok(models)
}

/// Satisfiability (optimum 1/0) with the lexicographically first model.
pub fn brute_sat(inst: &SatInstance, limits: &OracleLimits) -> Result<OracleResult> {
    let models = brute_sat_models(inst, limits)?;
    Ok(OracleResult {
        problem: Problem::Sat,
        optimum: if models.is_empty() { 0.0 } else { 1.0 },
        witness: models.first().cloned().map(DiscreteSolution::Assignment),
    })
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 1..=(left - (parts - 1)) {
            prefix.push(first);
            go(left - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= n {
        go(n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn prefix_set(pi: &Permutation, k: usize) -> Vec<usize> {
    let mut set: Vec<usize> = (0..k).map(|i| pi.apply(i) + 1).collect();
    set.sort_unstable();
    set
}

/// Exhausts the formulation's `(pi, k)` space (and compositions, for
/// coloring) and reports the optimum under the trace constraints. Must agree
/// with the brute oracles; that agreement is the faithfulness certificate.
pub fn formulation_search(
    problem: Problem,
    instance: &crate::formulations::Instance,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    use crate::formulations::Instance;
    match (problem, instance) {
        (Problem::Mis | Problem::Clique, Instance::Graph(g)) => {
            let n = g.n();
            check_limit("permutation enumeration", n, limits.perm)?;
            let violation = if problem == Problem::Mis {
                mis_violation
            } else {
                clique_violation
            };
            let mut best: Option<(usize, Vec<usize>)> = None;
            let mut pi = Permutation::identity(n);
            loop {
                for k in (1..=n).rev() {
                    if violation(g, &pi, k)? == 0 {
                        prefer(&mut best, k, prefix_set(&pi, k), |a, b| a > b);
                        break; // larger k failed already, smaller k can't beat this pi's best
                    }
                }
                if !pi.next_lex() {
                    break;
                }
            }
            let (k, set) = best.expect("k = 1 is always feasible");
            Ok(OracleResult {
                problem,
                optimum: k as f64,
                witness: Some(DiscreteSolution::VertexSet(set)),
            })
        }
        (Problem::Mvc, Instance::Graph(g)) => {
            let n = g.n();
            check_limit("permutation enumeration", n, limits.perm)?;
            let mut best: Option<(usize, Vec<usize>)> = None;
            let mut pi = Permutation::identity(n);
            loop {
                for k in 0..=n {
                    if mvc_violation(g, &pi, k)? == 0 {
                        prefer(&mut best, k, prefix_set(&pi, k), |a, b| a < b);
                        break;
                    }
                }
                if !pi.next_lex() {
                    break;
                }
            }
            let (k, set) = best.expect("k = n is always feasible");
            Ok(OracleResult {
                problem,
                optimum: k as f64,
                witness: Some(DiscreteSolution::VertexSet(set)),
            })
        }
        (Problem::Mds, Instance::Graph(g)) => {
            let n = g.n();
            check_limit("permutation enumeration", n, limits.perm)?;
            let mut best: Option<(usize, Vec<usize>)> = None;
            let mut pi = Permutation::identity(n);
            loop {
                for k in 1..=n {
                    if mds_coverage(g, &pi, k)?.iter().all(|&c| c >= 1) {
                        prefer(&mut best, k, prefix_set(&pi, k), |a, b| a < b);
                        break;
                    }
                }
                if !pi.next_lex() {
                    break;
                }
            }
            let (k, set) = best.expect("k = n is always feasible");
            Ok(OracleResult {
                problem,
                optimum: k as f64,
                witness: Some(DiscreteSolution::VertexSet(set)),
            })
        }
        (Problem::MaxCut, Instance::Graph(g)) => {
            let n = g.n();
            check_limit("permutation enumeration", n, limits.perm)?;
            let mut best: Option<(usize, Vec<usize>)> = None;
            let mut pi = Permutation::identity(n);
            loop {
                for k in 1..n {
                    let cut = maxcut_value(g, &pi, k)? as usize;
                    prefer(&mut best, cut, prefix_set(&pi, k), |a, b| a > b);
                }
                if !pi.next_lex() {
                    break;
                }
            }
            let (cut, left) = best.expect("n >= 2 gives at least one cut");
            let right: Vec<usize> = (1..=n).filter(|v| !left.contains(v)).collect();
            Ok(OracleResult {
                problem,
                optimum: cut as f64,
                witness: Some(DiscreteSolution::Bipartition(left, right)),
            })
        }
        (Problem::Coloring, Instance::Graph(g)) => {
            let n = g.n();
            check_limit("permutation enumeration", n, limits.perm)?;
            for k in 1..=n {
                for blocks in compositions(n, k) {
                    let mut pi = Permutation::identity(n);
                    loop {
                        if coloring_violation(g, &pi, &blocks)? == 0 {
                            let mut classes = Vec::with_capacity(k);
                            let mut start = 0;
                            for &b in &blocks {
                                let mut class: Vec<usize> =
                                    (start..start + b).map(|i| pi.apply(i) + 1).collect();
                                class.sort_unstable();
                                classes.push(class);
                                start += b;
                            }
                            return Ok(OracleResult {
                                problem,
                                optimum: k as f64,
                                witness: Some(DiscreteSolution::Coloring(classes)),
                            });
                        }
                        if !pi.next_lex() {
                            break;
                        }
                    }
                }
            }
            unreachable!("singleton blocks are always a proper coloring")
        }
        (Problem::Tsp, Instance::Tsp(inst)) => {
            check_limit("permutation enumeration", inst.n, limits.perm)?;
            let mut best: Option<(f64, Vec<usize>)> = None;
            let mut pi = Permutation::identity(inst.n);
            loop {
                let len = tsp_length(inst, &pi)?;
                let map = pi.one_based();
                match &mut best {
                    None => best = Some((len, map)),
                    Some((bl, bm)) => {
                        if len < *bl - 1e-12 || ((len - *bl).abs() <= 1e-12 && map < *bm) {
                            *bl = len;
                            *bm = map;
                        }
                    }
                }
                if !pi.next_lex() {
                    break;
                }
            }
            let (len, map) = best.expect("at least one tour");
            Ok(OracleResult {
                problem,
                optimum: len,
                witness: Some(DiscreteSolution::Tour(map)),
            })
        }
        (Problem::Qap, Instance::Qap(inst)) => {
            check_limit("permutation enumeration", inst.n, limits.perm)?;
            brute_qap(inst, &OracleLimits {
                tour: limits.perm,
                ..*limits
            })
        }
        (Problem::Gi, Instance::GraphPair(g1, g2)) => {
            let n = g1.n();
            check_limit("permutation enumeration", n, limits.perm)?;
            let mut best: Option<(i64, Vec<usize>)> = None;
            let mut pi = Permutation::identity(n);
            loop {
                let d = gi_distance(g1, g2, &pi)?;
                let map = pi.one_based();
                match &mut best {
                    None => best = Some((d, map)),
                    Some((bd, bm)) => {
                        if d < *bd || (d == *bd && map < *bm) {
                            *bd = d;
                            *bm = map;
                        }
                    }
                }
                if !pi.next_lex() {
                    break;
                }
            }
            let (d, map) = best.expect("at least one mapping");
            Ok(OracleResult {
                problem,
                optimum: d as f64,
                witness: Some(DiscreteSolution::Mapping(map)),
            })
        }
        (Problem::Sat, Instance::Sat(inst)) => {
            let enc = SatEncoding::build(inst)?;
            let n2 = 2 * inst.num_vars;
            check_limit("literal permutation enumeration", n2, limits.perm)?;
            let m = inst.clauses.len();
            let mut best: Option<Vec<bool>> = None;
            let mut literal_pi = Permutation::identity(n2);
            loop {
                let full: Vec<usize> = literal_pi
                    .one_based()
                    .into_iter()
                    .chain(n2 + 1..=n2 + m)
                    .collect();
                let pi = Permutation::from_one_based(&full)?;
                if sat_check(&enc, &pi)?.feasible(m) {
                    let assignment = enc.extract_assignment(&pi)?;
                    match &mut best {
                        None => best = Some(assignment),
                        Some(b) => {
                            // lexicographic with true < false to mirror model order?
                            // keep plain Vec<bool> ordering: false < true
                            if assignment < *b {
                                *b = assignment;
                            }
                        }
                    }
                }
                if !literal_pi.next_lex() {
                    break;
                }
            }
            Ok(OracleResult {
                problem,
                optimum: if best.is_some() { 1.0 } else { 0.0 },
                witness: best.map(DiscreteSolution::Assignment),
            })
        }
        _ => Err(Error::UnsupportedProblem(format!(
            "formulation_search: {problem} does not match the given instance"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulations::Instance;
    use crate::graph::demo_mis_graph;
    use crate::sat::appendix_formula;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn demo_graph_mis_is_145() {
        let r = brute_subset(Problem::Mis, &demo_mis_graph(), &limits()).unwrap();
        assert_eq!(r.optimum, 3.0);
        assert_eq!(r.witness, Some(DiscreteSolution::VertexSet(vec![1, 4, 5])));
    }

    #[test]
    fn demo_graph_mds_is_one() {
        let r = brute_subset(Problem::Mds, &demo_mis_graph(), &limits()).unwrap();
        assert_eq!(r.optimum, 1.0);
        assert_eq!(r.witness, Some(DiscreteSolution::VertexSet(vec![2])));
    }

    #[test]
    fn demo_graph_mvc_is_two() {
        let r = brute_subset(Problem::Mvc, &demo_mis_graph(), &limits()).unwrap();
        assert_eq!(r.optimum, 2.0);
        assert_eq!(r.witness, Some(DiscreteSolution::VertexSet(vec![2, 3])));
    }

    #[test]
    fn complete_graph_clique_is_n() {
        let r = brute_subset(Problem::Clique, &Graph::complete(5), &limits()).unwrap();
        assert_eq!(r.optimum, 5.0);
    }

    #[test]
    fn maxcut_small_cases() {
        assert_eq!(brute_maxcut(&Graph::complete(4), &limits()).unwrap().optimum, 4.0);
        assert_eq!(brute_maxcut(&Graph::edgeless(4), &limits()).unwrap().optimum, 0.0);
        let k23 = Graph::from_edges(5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert_eq!(brute_maxcut(&k23, &limits()).unwrap().optimum, 6.0);
    }

    #[test]
    fn chromatic_small_cases() {
        assert_eq!(brute_chromatic(&Graph::complete(3), &limits()).unwrap().optimum, 3.0);
        assert_eq!(brute_chromatic(&Graph::cycle(5), &limits()).unwrap().optimum, 3.0);
        assert_eq!(brute_chromatic(&Graph::cycle(6), &limits()).unwrap().optimum, 2.0);
        assert_eq!(brute_chromatic(&Graph::edgeless(4), &limits()).unwrap().optimum, 1.0);
    }

    #[test]
    fn tsp_unit_ring_optimum_is_n() {
        let inst = TspInstance::unit_ring(6, 10.0);
        let r = brute_tsp(&inst, &limits()).unwrap();
        assert_eq!(r.optimum, 6.0);
    }

    #[test]
    fn tsp_brute_matches_full_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 6;
        let mut cost = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let c = rng.random_range(1.0..9.0);
                cost[i][j] = c;
                cost[j][i] = c;
            }
        }
        let inst = TspInstance::new(cost).unwrap();
        let fixed_start = brute_tsp(&inst, &limits()).unwrap().optimum;
        // re-check against the unrestricted n! enumeration
        let mut pi = Permutation::identity(n);
        let mut best = f64::INFINITY;
        loop {
            best = best.min(tsp_length(&inst, &pi).unwrap());
            if !pi.next_lex() {
                break;
            }
        }
        assert!((fixed_start - best).abs() < 1e-12);
    }

    #[test]
    fn sat_appendix_contains_listed_models() {
        let inst = appendix_formula();
        let models = brute_sat_models(&inst, &limits()).unwrap();
        for listed in [
            vec![true, true, true, true],
            vec![true, true, false, true],
            vec![true, false, true, false],
            vec![false, true, false, false],
            vec![false, false, false, false],
        ] {
            assert!(models.contains(&listed), "missing model {listed:?}");
        }
        assert_eq!(brute_sat(&inst, &limits()).unwrap().optimum, 1.0);
    }

    #[test]
    fn sat_contradiction_unsatisfiable() {
        let inst = SatInstance::new(1, vec![vec![1], vec![-1]]).unwrap();
        let r = brute_sat(&inst, &limits()).unwrap();
        assert_eq!(r.optimum, 0.0);
        assert!(r.witness.is_none());
    }

    #[test]
    fn sat_empty_clause_list_satisfiable() {
        let inst = SatInstance::new(2, vec![]).unwrap();
        assert_eq!(brute_sat(&inst, &limits()).unwrap().optimum, 1.0);
    }

    #[test]
    fn size_limits_are_errors() {
        let tight = OracleLimits {
            subset: 3,
            perm: 3,
            tour: 3,
            sat_vars: 1,
        };
        assert!(brute_subset(Problem::Mis, &Graph::complete(4), &tight).is_err());
        assert!(brute_tsp(&TspInstance::unit_ring(4, 9.0), &tight).is_err());
        assert!(brute_sat(&SatInstance::new(2, vec![vec![1, 2]]).unwrap(), &tight).is_err());
    }

    #[test]
    fn formulation_search_agrees_on_fixtures() {
        let lim = limits();
        let g = demo_mis_graph();
        let gi = Instance::Graph(g.clone());
        assert_eq!(formulation_search(Problem::Mis, &gi, &lim).unwrap().optimum, 3.0);
        assert_eq!(
            formulation_search(Problem::MaxCut, &Instance::Graph(Graph::complete(4)), &lim)
                .unwrap()
                .optimum,
            4.0
        );
        assert_eq!(
            formulation_search(Problem::Coloring, &Instance::Graph(Graph::cycle(5)), &lim)
                .unwrap()
                .optimum,
            3.0
        );
        assert_eq!(
            formulation_search(Problem::Mds, &Instance::Graph(Graph::cycle(5)), &lim)
                .unwrap()
                .optimum,
            2.0
        );
    }

    #[test]
    fn formulation_search_sat_appendix_feasible() {
        let r = formulation_search(
            Problem::Sat,
            &Instance::Sat(appendix_formula()),
            &limits(),
        )
        .unwrap();
        assert_eq!(r.optimum, 1.0);
        let Some(DiscreteSolution::Assignment(a)) = r.witness else {
            panic!("expected assignment witness");
        };
        assert!(appendix_formula().eval(&a).unwrap());
    }

    #[test]
    fn gi_search_finds_isomorphism() {
        // C4 labeled 1-2-3-4 vs C4 labeled 1-3-2-4
        let g1 = Graph::cycle(4);
        let g2 = Graph::from_edges(4, &[(1, 3), (3, 2), (2, 4), (4, 1)]).unwrap();
        let r = formulation_search(Problem::Gi, &Instance::GraphPair(g1, g2), &limits()).unwrap();
        assert_eq!(r.optimum, 0.0);
    }

    #[test]
    fn random_suite_oracle_vs_formulation() {
        let lim = limits();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for round in 0..12 {
            let n = 4 + round % 3; // 4..6 here; the full n <= 7 sweep runs in acceptance
            let density = [0.2, 0.5, 0.8][round % 3];
            let g = Graph::random(n, density, &mut rng);
            let gi = Instance::Graph(g.clone());
            for problem in [Problem::Mis, Problem::Mvc, Problem::Mds, Problem::Clique] {
                let brute = brute_subset(problem, &g, &lim).unwrap();
                let form = formulation_search(problem, &gi, &lim).unwrap();
                assert_eq!(brute.optimum, form.optimum, "{problem} on n={n} d={density}");
            }
            assert_eq!(
                brute_maxcut(&g, &lim).unwrap().optimum,
                formulation_search(Problem::MaxCut, &gi, &lim).unwrap().optimum
            );
            assert_eq!(
                brute_chromatic(&g, &lim).unwrap().optimum,
                formulation_search(Problem::Coloring, &gi, &lim).unwrap().optimum
            );
            // dualities
            let mis = brute_subset(Problem::Mis, &g, &lim).unwrap().optimum;
            let mvc = brute_subset(Problem::Mvc, &g, &lim).unwrap().optimum;
            assert_eq!(mis + mvc, n as f64);
            let clique = brute_subset(Problem::Clique, &g, &lim).unwrap().optimum;
            let mis_comp = brute_subset(Problem::Mis, &g.complement(), &lim).unwrap().optimum;
            assert_eq!(clique, mis_comp);
        }
    }

    #[test]
    fn witnesses_reverify_through_formulations() {
        let lim = limits();
        let g = demo_mis_graph();
        for problem in [Problem::Mis, Problem::Mvc, Problem::Mds, Problem::Clique] {
            let r = brute_subset(problem, &g, &lim).unwrap();
            let Some(DiscreteSolution::VertexSet(set)) = r.witness else {
                panic!("expected vertex set");
            };
            // build a permutation placing the witness first and re-check
            let rest: Vec<usize> = (1..=g.n()).filter(|v| !set.contains(v)).collect();
            let map: Vec<usize> = set.iter().chain(rest.iter()).copied().collect();
            let pi = Permutation::from_one_based(&map).unwrap();
            let k = set.len();
            let ok = match problem {
                Problem::Mis => mis_violation(&g, &pi, k).unwrap() == 0,
                Problem::Mvc => mvc_violation(&g, &pi, k).unwrap() == 0,
                Problem::Mds => mds_coverage(&g, &pi, k).unwrap().iter().all(|&c| c >= 1),
                Problem::Clique => clique_violation(&g, &pi, k).unwrap() == 0,
                _ => unreachable!(),
            };
            assert!(ok, "{problem} witness failed re-verification");
        }
    }

    #[test]
    fn maxcut_cut_edge_count_maximum_when_bipartition() {
        let g = Graph::cycle(6);
        assert_eq!(brute_maxcut(&g, &limits()).unwrap().optimum, 6.0);
    }
}
