//! The coverage-approximation pipeline: keep the budget `k` exact and settle
//! for a `(1 - ε)` fraction of the coverage target.
//!
//! For a small target the exact solver is invoked directly. Otherwise red
//! vertices whose blue neighborhoods overlap heavily are linked in a conflict
//! graph; a purple/green separation coloring isolates candidate solution
//! pieces; each blue vertex keeps at most one coverage edge per purple
//! component (sparsification), making per-vertex degrees an additive coverage
//! surrogate; and a maximum-weight tree on at most `k` vertices in the
//! connectivity graph is lifted back as the answer.

mod ktree;

pub use ktree::max_weight_k_tree;

use crate::config::{Limits, Route, SearchMode, SolverConfig};
use crate::error::SolverError;
use crate::exact::exact_solve_by_t;
use crate::graph::{ConnGraph, InfeasibleReason, Instance, Outcome, RedBlueGraph, Solution};
use crate::util::BitSet;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact rational accuracy parameter in `(0, 1)`. Every threshold derived
/// from it is compared by integer cross-multiplication; no floating point
/// enters a correctness decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self, SolverError> {
        if num == 0 || num >= den {
            return Err(SolverError::InvalidParameter(format!(
                "epsilon must lie strictly between 0 and 1, got {num}/{den}"
            )));
        }
        Ok(Epsilon { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌈ε·x⌉`.
    pub fn ceil_mul(&self, x: u64) -> u64 {
        ((self.num as u128 * x as u128).div_ceil(self.den as u128)) as u64
    }

    /// `⌈1/ε⌉`.
    pub fn inv_ceil(&self) -> u64 {
        self.den.div_ceil(self.num)
    }

    /// Conflict edge test: `shared >= ε t / k²`, cleared to
    /// `shared · k² · den >= num · t`.
    pub fn conflict_edge(&self, shared: usize, t: usize, k: usize) -> bool {
        let lhs = shared as u128 * (k as u128 * k as u128) * self.den as u128;
        let rhs = self.num as u128 * t as u128;
        lhs >= rhs
    }

    /// Small-target routing test: `t <= k² d / ε`, cleared to
    /// `t · num <= k² · d · den`.
    pub fn small_target(&self, t: usize, k: usize, d: usize) -> bool {
        let lhs = t as u128 * self.num as u128;
        let rhs = (k as u128 * k as u128) * d as u128 * self.den as u128;
        lhs <= rhs
    }

    /// Approximate-coverage acceptance: `coverage >= (1 - ε) t`, cleared to
    /// `coverage · den >= (den - num) · t`.
    pub fn coverage_acceptable(&self, coverage: usize, t: usize) -> bool {
        coverage as u128 * self.den as u128 >= (self.den - self.num) as u128 * t as u128
    }
}

impl std::str::FromStr for Epsilon {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = s.split_once('/').ok_or_else(|| {
            SolverError::InvalidParameter(format!("epsilon `{s}` is not of the form N/D"))
        })?;
        let parse = |x: &str| {
            x.trim().parse::<u64>().map_err(|_| {
                SolverError::InvalidParameter(format!("epsilon component `{x}` is not an integer"))
            })
        };
        Epsilon::new(parse(num)?, parse(den)?)
    }
}

impl std::fmt::Display for Epsilon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Auxiliary graph on the red vertices joining pairs whose blue
/// neighborhoods overlap in at least `ε t / k²` vertices.
#[derive(Clone, Debug)]
pub struct ConflictGraph {
    pub graph: ConnGraph,
    pub eps: Epsilon,
    pub t: usize,
    pub k: usize,
}

impl ConflictGraph {
    pub fn max_degree(&self) -> usize {
        (0..self.graph.vertex_count())
            .map(|v| self.graph.degree(v))
            .max()
            .unwrap_or(0)
    }
}

pub fn build_conflict_graph(inst: &Instance, eps: Epsilon) -> ConflictGraph {
    assert!(inst.k >= 1 && inst.t >= 1, "conflict graph needs k, t >= 1");
    let n = inst.red_count();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let shared = inst.cov.common_blue_count(u, v);
            if eps.conflict_edge(shared, inst.t, inst.k) {
                edges.push((u, v));
            }
        }
    }
    ConflictGraph {
        graph: ConnGraph::new(n, &edges).expect("conflict graph is well-formed"),
        eps,
        t: inst.t,
        k: inst.k,
    }
}

/// Diagnostic bound on the conflict-graph degree for a biclique-free
/// coverage graph in the large-target regime: `(d-1) · (e k² / ε)^d`.
/// Never used for correctness branching.
pub fn conflict_degree_bound(k: usize, d: usize, eps: f64) -> f64 {
    if d == 0 {
        return 0.0;
    }
    ((d - 1) as f64) * (std::f64::consts::E * (k * k) as f64 / eps).powi(d as i32)
}

/// Two-coloring of the red vertices; purple vertices survive the separation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationColoring {
    pub purple: Vec<bool>,
}

impl SeparationColoring {
    pub fn all_purple(n: usize) -> Self {
        SeparationColoring {
            purple: vec![true; n],
        }
    }
}

/// How separation colorings are produced.
#[derive(Clone, Debug)]
pub enum ColoringMode<'a> {
    /// Independent trials, each vertex purple with probability `1/(1+Δ)`
    /// where `Δ` is the conflict-graph maximum degree (all purple when the
    /// conflict graph is edgeless).
    Randomized { trials: u64, seed: u64 },
    /// All `2^|R|` colorings.
    Exhaustive,
    /// The single coloring that keeps a known set purple and its conflict
    /// neighborhood green (test utility).
    Witness(&'a [usize]),
}

pub fn gen_colorings(
    conflict: &ConflictGraph,
    mode: ColoringMode<'_>,
    limits: &Limits,
) -> Result<Colorings, SolverError> {
    let n = conflict.graph.vertex_count();
    let inner = match mode {
        ColoringMode::Randomized { trials, seed } => {
            if trials == 0 {
                return Err(SolverError::InvalidParameter(
                    "randomized coloring generation needs at least one trial".into(),
                ));
            }
            let delta = conflict.max_degree();
            ColoringsInner::Randomized {
                n,
                purple_prob: 1.0 / (1.0 + delta as f64),
                seed,
                trials: trials.min(limits.max_trials),
                next: 0,
            }
        }
        ColoringMode::Exhaustive => {
            if n >= 63 || (1u64 << n) > limits.max_exhaustive_colorings {
                return Err(SolverError::ResourceLimit(format!(
                    "2^{n} separation colorings exceed the exhaustive limit {}",
                    limits.max_exhaustive_colorings
                )));
            }
            ColoringsInner::Exhaustive {
                n,
                next: 0,
                total: 1u64 << n,
            }
        }
        ColoringMode::Witness(solution) => {
            let mut purple = vec![true; n];
            for &v in solution {
                for &u in conflict.graph.neighbors(v) {
                    purple[u] = false;
                }
            }
            for &v in solution {
                purple[v] = true;
            }
            ColoringsInner::Witness {
                coloring: Some(SeparationColoring { purple }),
            }
        }
    };
    Ok(Colorings { inner })
}

pub struct Colorings {
    inner: ColoringsInner,
}

enum ColoringsInner {
    Randomized {
        n: usize,
        purple_prob: f64,
        seed: u64,
        trials: u64,
        next: u64,
    },
    Exhaustive {
        n: usize,
        next: u64,
        total: u64,
    },
    Witness {
        coloring: Option<SeparationColoring>,
    },
}

impl Iterator for Colorings {
    type Item = SeparationColoring;

    fn next(&mut self) -> Option<SeparationColoring> {
        match &mut self.inner {
            ColoringsInner::Randomized {
                n,
                purple_prob,
                seed,
                trials,
                next,
            } => {
                if next >= trials {
                    return None;
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed ^ *next);
                *next += 1;
                let purple = (0..*n)
                    .map(|_| rng.random::<f64>() < *purple_prob)
                    .collect();
                Some(SeparationColoring { purple })
            }
            ColoringsInner::Exhaustive { n, next, total } => {
                if next >= total {
                    return None;
                }
                let mask = *next;
                *next += 1;
                let purple = (0..*n).map(|v| mask >> v & 1 == 1).collect();
                Some(SeparationColoring { purple })
            }
            ColoringsInner::Witness { coloring } => coloring.take(),
        }
    }
}

/// Connected components of the conflict graph restricted to purple vertices,
/// with components larger than `k` discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurpleComponents {
    pub components: Vec<Vec<usize>>,
}

pub fn filter_purple(
    conflict: &ConflictGraph,
    coloring: &SeparationColoring,
    k: usize,
) -> PurpleComponents {
    let n = conflict.graph.vertex_count();
    assert_eq!(coloring.purple.len(), n);
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if !coloring.purple[start] || seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in conflict.graph.neighbors(v) {
                if coloring.purple[u] && !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        if comp.len() <= k {
            components.push(comp);
        }
    }
    PurpleComponents { components }
}

/// Coverage subgraph in which each blue vertex keeps at most one edge into
/// each purple component. Red vertices are the surviving component members.
#[derive(Clone, Debug)]
pub struct SparsifiedGraph {
    /// Surviving red vertices, sorted.
    pub survivors: Vec<usize>,
    /// Component index per survivor, parallel to `survivors`.
    pub component_of: Vec<usize>,
    /// Kept blue neighbors per survivor, parallel to `survivors`.
    pub adj: Vec<Vec<usize>>,
    pub blue_count: usize,
}

impl SparsifiedGraph {
    pub fn position(&self, red: usize) -> Option<usize> {
        self.survivors.binary_search(&red).ok()
    }

    pub fn degree(&self, red: usize) -> usize {
        self.position(red).map_or(0, |p| self.adj[p].len())
    }

    /// Sparsified neighborhood of a set of original red ids.
    pub fn neighborhood(&self, reds: &[usize]) -> Vec<usize> {
        let mut seen = BitSet::new(self.blue_count);
        for &r in reds {
            if let Some(p) = self.position(r) {
                for &b in &self.adj[p] {
                    seen.insert(b);
                }
            }
        }
        seen.iter().collect()
    }

    pub fn neighborhood_size(&self, reds: &[usize]) -> usize {
        self.neighborhood(reds).len()
    }
}

/// Keeps, for every blue vertex and every component with coverage edges into
/// it, exactly one edge: the one to the smallest red index. Any choice
/// satisfies the sparsifier properties; the smallest index makes runs
/// reproducible.
pub fn sparsify(cov: &RedBlueGraph, comps: &PurpleComponents) -> SparsifiedGraph {
    let mut survivors: Vec<usize> = comps.components.iter().flatten().copied().collect();
    survivors.sort_unstable();
    let mut comp_of_red = vec![usize::MAX; cov.red_count()];
    for (ci, comp) in comps.components.iter().enumerate() {
        for &r in comp {
            comp_of_red[r] = ci;
        }
    }
    let component_of: Vec<usize> = survivors.iter().map(|&r| comp_of_red[r]).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); survivors.len()];
    let mut keeper: Vec<usize> = Vec::new();
    for b in 0..cov.blue_count() {
        keeper.clear();
        keeper.resize(comps.components.len(), usize::MAX);
        for &r in cov.reds_of(b) {
            let ci = comp_of_red[r];
            if ci != usize::MAX && r < keeper[ci] {
                keeper[ci] = r;
            }
        }
        for &r in keeper.iter() {
            if r != usize::MAX {
                let pos = survivors.binary_search(&r).expect("keeper is a survivor");
                adj[pos].push(b);
            }
        }
    }
    SparsifiedGraph {
        survivors,
        component_of,
        adj,
        blue_count: cov.blue_count(),
    }
}

/// Sparsified degrees as the coverage surrogate weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFn {
    /// Red ids, sorted (same order as the sparsified survivors).
    pub survivors: Vec<usize>,
    /// Weight per survivor: its degree in the sparsified graph.
    pub weight: Vec<u64>,
}

impl WeightFn {
    pub fn weight_of(&self, red: usize) -> u64 {
        self.survivors
            .binary_search(&red)
            .map_or(0, |p| self.weight[p])
    }

    pub fn total(&self, reds: &[usize]) -> u64 {
        reds.iter().map(|&r| self.weight_of(r)).sum()
    }
}

pub fn weights(spar: &SparsifiedGraph) -> WeightFn {
    WeightFn {
        survivors: spar.survivors.clone(),
        weight: spar.adj.iter().map(|l| l.len() as u64).collect(),
    }
}

/// Keeps `|S| <= k` exact and guarantees coverage at least `(1 - ε) t` on
/// feasible instances (in completeness mode); may report infeasibility
/// otherwise, which is always a correct verdict for the exact target.
pub fn epas_solve(
    inst: &Instance,
    eps: Epsilon,
    d: usize,
    config: &SolverConfig,
) -> Result<Outcome, SolverError> {
    if d == 0 {
        return Err(SolverError::InvalidParameter(
            "biclique parameter d must be at least 1".into(),
        ));
    }
    if config.limits.check_kdd {
        match inst.cov.is_kdd_free(d, config.limits.kdd_check_budget) {
            Ok(true) => {}
            Ok(false) => {
                return Err(SolverError::InvalidParameter(format!(
                    "coverage graph is not K_{{{d},{d}}}-free"
                )))
            }
            Err(_) => {} // too large to certify; trusted
        }
    }
    if inst.terminals.len() > inst.k {
        return Ok(Outcome::Infeasible(InfeasibleReason::TerminalsExceedBudget));
    }
    if inst.t == 0 {
        return exact_solve_by_t(inst, config.exact_mode, &config.limits);
    }
    if inst.k == 0 || inst.red_count() == 0 {
        return Ok(Outcome::Infeasible(InfeasibleReason::EmptySearchSpace));
    }

    let take_exact = match config.route {
        Route::Auto => eps.small_target(inst.t, inst.k, d),
        Route::ForceExact => true,
        Route::ForcePipeline => false,
    };
    if take_exact {
        return exact_solve_by_t(inst, config.exact_mode, &config.limits);
    }

    let conflict = build_conflict_graph(inst, eps);
    let coloring_mode = match config.coloring_mode {
        SearchMode::Exhaustive => ColoringMode::Exhaustive,
        SearchMode::Randomized { trials, seed } => ColoringMode::Randomized {
            trials: trials
                .unwrap_or_else(|| default_separation_trials(inst.k, conflict.max_degree()))
                .min(config.limits.max_trials)
                .max(1),
            seed,
        },
    };

    let mut best: Option<(u64, Vec<usize>)> = None;
    for coloring in gen_colorings(&conflict, coloring_mode, &config.limits)? {
        let comps = filter_purple(&conflict, &coloring, inst.k);
        if comps.components.is_empty() {
            continue;
        }
        let spar = sparsify(&inst.cov, &comps);
        if inst.terminals.iter().any(|t| spar.position(*t).is_none()) {
            continue; // a terminal was separated away
        }
        let w = weights(&spar);
        let host = inst.conn.induced(&spar.survivors);
        let host_terminals: Vec<usize> = inst
            .terminals
            .iter()
            .map(|t| spar.position(*t).unwrap())
            .collect();
        let found = max_weight_k_tree(
            &host,
            &w.weight,
            inst.k,
            &host_terminals,
            config.tree_mode,
            &config.limits,
        )?;
        if let Some(local) = found {
            let verts: Vec<usize> = local.iter().map(|&p| spar.survivors[p]).collect();
            let total = w.total(&verts);
            let cand = (total, verts);
            let improves = match &best {
                None => true,
                Some(b) => {
                    cand.0 > b.0
                        || (cand.0 == b.0 && cand.1.len() < b.1.len())
                        || (cand.0 == b.0 && cand.1.len() == b.1.len() && cand.1 < b.1)
                }
            };
            if improves {
                best = Some(cand);
            }
        }
    }

    match best {
        Some((total, verts)) if total >= inst.t as u64 => {
            let sol = Solution::certified(inst, verts);
            debug_assert!(sol.connected && sol.size() <= inst.k);
            Ok(Outcome::Feasible(sol))
        }
        _ => Ok(Outcome::Infeasible(
            InfeasibleReason::NoConnectedSetCoversTarget,
        )),
    }
}

/// Coverage approximation with a mandatory terminal set threaded through
/// both the exact branch and the tree search.
pub fn steiner_epas_solve(
    inst: &Instance,
    eps: Epsilon,
    d: usize,
    config: &SolverConfig,
) -> Result<Outcome, SolverError> {
    if inst.terminals.len() > inst.k {
        return Ok(Outcome::Infeasible(InfeasibleReason::TerminalsExceedBudget));
    }
    epas_solve(inst, eps, d, config)
}

fn default_separation_trials(k: usize, delta: usize) -> u64 {
    // success probability of one trial is at least ((1+Δ)·e)^-k for the
    // hidden solution; cap the cost, the caller can always raise trials
    let per = ((1 + delta) as f64 * std::f64::consts::E).powi(k as i32);
    (per * 4f64.ln()).ceil().min(1e18) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RedBlueGraph;

    fn chain_instance(k: usize, t: usize) -> Instance {
        let conn = ConnGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let cov = RedBlueGraph::from_red_adj(3, 4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        Instance::new(conn, cov, k, t, vec![]).unwrap()
    }

    #[test]
    fn epsilon_arithmetic() {
        let half = Epsilon::new(1, 2).unwrap();
        assert_eq!(half.ceil_mul(3), 2);
        assert_eq!(half.inv_ceil(), 2);
        assert!(Epsilon::new(0, 2).is_err());
        assert!(Epsilon::new(2, 2).is_err());
        assert_eq!(
            "1/4".parse::<Epsilon>().unwrap(),
            Epsilon::new(1, 4).unwrap()
        );
        assert!("0.5".parse::<Epsilon>().is_err());
    }

    #[test]
    fn conflict_edges_at_threshold() {
        // threshold εt/k² = 1: adjacent chain pairs share exactly one blue
        let inst = chain_instance(2, 8);
        let conf = build_conflict_graph(&inst, Epsilon::new(1, 2).unwrap());
        assert_eq!(conf.graph.edges(), vec![(0, 1), (1, 2)]);

        // threshold 2: all intersections are 1, so no edges
        let inst = chain_instance(2, 16);
        let conf = build_conflict_graph(&inst, Epsilon::new(1, 2).unwrap());
        assert_eq!(conf.graph.edge_count(), 0);
    }

    #[test]
    fn degree_bound_values() {
        assert_eq!(conflict_degree_bound(5, 1, 0.3), 0.0);
        let b = conflict_degree_bound(2, 2, 1.0);
        assert!((b - (4.0 * std::f64::consts::E).powi(2)).abs() < 1e-9);
        let b = conflict_degree_bound(2, 2, 0.5);
        assert!((b - (8.0 * std::f64::consts::E).powi(2)).abs() < 1e-9);
    }

    #[test]
    fn coloring_generation() {
        let inst = chain_instance(2, 16);
        let conf = build_conflict_graph(&inst, Epsilon::new(1, 2).unwrap());
        let limits = Limits::default();

        // edgeless conflict graph: purple probability 1
        let all: Vec<_> = gen_colorings(
            &conf,
            ColoringMode::Randomized { trials: 3, seed: 5 },
            &limits,
        )
        .unwrap()
        .collect();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|c| c.purple.iter().all(|&p| p)));

        let all: Vec<_> = gen_colorings(&conf, ColoringMode::Exhaustive, &limits)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 8);

        // witness: keep {0,1} purple, green out their conflict neighbors
        let inst = chain_instance(2, 8);
        let conf = build_conflict_graph(&inst, Epsilon::new(1, 2).unwrap());
        let w: Vec<_> = gen_colorings(&conf, ColoringMode::Witness(&[0, 1]), &limits)
            .unwrap()
            .collect();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].purple, vec![true, true, false]);
    }

    #[test]
    fn purple_filtering() {
        let inst = chain_instance(2, 8);
        let conf = build_conflict_graph(&inst, Epsilon::new(1, 2).unwrap());
        // conflict edges {0-1, 1-2}; all purple forms one size-3 component
        let c = SeparationColoring::all_purple(3);
        assert!(filter_purple(&conf, &c, 2).components.is_empty());

        let c = SeparationColoring {
            purple: vec![true, false, true],
        };
        assert_eq!(
            filter_purple(&conf, &c, 2).components,
            vec![vec![0], vec![2]]
        );

        let inst = chain_instance(1, 16);
        let conf = build_conflict_graph(&inst, Epsilon::new(1, 2).unwrap());
        let c = SeparationColoring::all_purple(3);
        assert_eq!(
            filter_purple(&conf, &c, 1).components,
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn sparsification_tie_break() {
        let cov = RedBlueGraph::from_red_adj(2, 1, &[vec![0], vec![0]]).unwrap();
        let comps = PurpleComponents {
            components: vec![vec![0, 1]],
        };
        let spar = sparsify(&cov, &comps);
        assert_eq!(spar.degree(0), 1);
        assert_eq!(spar.degree(1), 0);

        let comps = PurpleComponents {
            components: vec![vec![0], vec![1]],
        };
        let spar = sparsify(&cov, &comps);
        assert_eq!((spar.degree(0), spar.degree(1)), (1, 1));
    }

    #[test]
    fn sparsification_chain_example() {
        let cov = RedBlueGraph::from_red_adj(3, 4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let comps = PurpleComponents {
            components: vec![vec![0, 1], vec![2]],
        };
        let spar = sparsify(&cov, &comps);
        // blue 1 drops its edge to red 1 (red 0 wins the component);
        // blue 2 keeps both edges (different components)
        assert_eq!(spar.adj, vec![vec![0, 1], vec![2], vec![2, 3]]);
        let w = weights(&spar);
        assert_eq!(w.weight, vec![2, 1, 2]);
        assert_eq!(w.weight_of(1), 1);
    }

    #[test]
    fn weight_edge_cases() {
        let cov = RedBlueGraph::from_red_adj(2, 3, &[vec![0, 1, 2], vec![]]).unwrap();
        let comps = PurpleComponents {
            components: vec![vec![0], vec![1]],
        };
        let w = weights(&sparsify(&cov, &comps));
        assert_eq!(w.weight_of(0), 3); // one red with all of B attached
        assert_eq!(w.weight_of(1), 0); // isolated surviving red
    }

    #[test]
    fn epas_small_target_delegates_to_exact() {
        let inst = chain_instance(2, 3);
        let out = epas_solve(
            &inst,
            Epsilon::new(1, 2).unwrap(),
            2,
            &SolverConfig::completeness(),
        )
        .unwrap();
        let sol = out.solution().expect("feasible");
        assert!(sol.coverage >= 3 && sol.size() <= 2 && sol.connected);
    }

    #[test]
    fn epas_disjoint_neighborhoods_are_exact() {
        // disjoint red neighborhoods: edgeless conflict graph, weights are
        // true degrees, answer is exact even through the pipeline
        let conn = ConnGraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let cov =
            RedBlueGraph::from_red_adj(4, 8, &[vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]])
                .unwrap();
        let inst = Instance::new(conn, cov, 2, 4, vec![]).unwrap();
        let mut config = SolverConfig::completeness();
        config.route = Route::ForcePipeline;
        let out = epas_solve(&inst, Epsilon::new(1, 2).unwrap(), 2, &config).unwrap();
        let sol = out.solution().expect("feasible");
        assert_eq!(sol.coverage, 4);
        assert_eq!(sol.size(), 2);
    }

    #[test]
    fn epas_reports_infeasible_when_weights_fall_short() {
        let conn = ConnGraph::new(2, &[(0, 1)]).unwrap();
        let cov = RedBlueGraph::from_red_adj(2, 4, &[vec![0], vec![1]]).unwrap();
        let inst = Instance::new(conn, cov, 2, 4, vec![]).unwrap();
        let mut config = SolverConfig::completeness();
        config.route = Route::ForcePipeline;
        let out = epas_solve(&inst, Epsilon::new(1, 2).unwrap(), 2, &config).unwrap();
        assert_eq!(
            out,
            Outcome::Infeasible(InfeasibleReason::NoConnectedSetCoversTarget)
        );
    }

    #[test]
    fn steiner_variant() {
        let inst = chain_instance(2, 3);
        let eps = Epsilon::new(1, 2).unwrap();
        let config = SolverConfig::completeness();

        // no terminals: identical to the plain solver
        let plain = epas_solve(&inst, eps, 2, &config).unwrap();
        let steiner = steiner_epas_solve(&inst, eps, 2, &config).unwrap();
        assert_eq!(plain, steiner);

        let mut with_term = inst.clone();
        with_term.terminals = vec![2];
        let out = steiner_epas_solve(&with_term, eps, 2, &config).unwrap();
        let sol = out.solution().expect("feasible");
        assert!(sol.vertices.contains(&2) && sol.coverage >= 3);

        // terminals {0, 2} cannot be connected within k = 2 on the path
        let mut blocked = inst.clone();
        blocked.terminals = vec![0, 2];
        let out = steiner_epas_solve(&blocked, eps, 2, &config).unwrap();
        assert!(!out.is_feasible());
    }

    #[test]
    fn steiner_budget_check() {
        let mut inst = chain_instance(2, 3);
        inst.terminals = vec![0, 1, 2];
        inst.k = 2; // bypasses Instance::new validation on purpose
        let out = steiner_epas_solve(
            &inst,
            Epsilon::new(1, 2).unwrap(),
            2,
            &SolverConfig::completeness(),
        )
        .unwrap();
        assert_eq!(
            out,
            Outcome::Infeasible(InfeasibleReason::TerminalsExceedBudget)
        );
    }

    #[test]
    fn epas_rejects_wrong_d() {
        let conn = ConnGraph::new(2, &[(0, 1)]).unwrap();
        let cov = RedBlueGraph::from_red_adj(2, 2, &[vec![0, 1], vec![0, 1]]).unwrap();
        let inst = Instance::new(conn, cov, 1, 1, vec![]).unwrap();
        let err = epas_solve(
            &inst,
            Epsilon::new(1, 2).unwrap(),
            2,
            &SolverConfig::completeness(),
        );
        assert!(matches!(err, Err(SolverError::InvalidParameter(_))));
    }
}
