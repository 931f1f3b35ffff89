//! Exact solver parameterized by the coverage target `t`.
//!
//! A random (or exhaustively enumerated) coloring of the blue vertices with
//! `t` colors turns the problem into a directed Steiner out-tree search on a
//! derived digraph with three arc types: bidirected connectivity arcs,
//! red-to-blue coverage arcs, and one arc from each blue vertex to the
//! terminal of its color class. A coloring that is injective on some
//! witness's covered set makes the derived instance solvable, and any
//! solution tree peels back to a valid red set.

use crate::config::{Limits, SearchMode};
use crate::error::SolverError;
use crate::graph::{Digraph, InfeasibleReason, Instance, OutTree, Outcome, Solution};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Assignment of one color in `0..classes` to every blue vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlueColoring {
    classes: usize,
    assignment: Vec<usize>,
}

impl BlueColoring {
    pub fn new(classes: usize, assignment: Vec<usize>) -> Result<Self, SolverError> {
        if classes == 0 {
            return Err(SolverError::InvalidParameter(
                "a blue coloring needs at least one class".into(),
            ));
        }
        if let Some(&bad) = assignment.iter().find(|&&c| c >= classes) {
            return Err(SolverError::InvalidParameter(format!(
                "color {bad} out of range for {classes} classes"
            )));
        }
        Ok(BlueColoring {
            classes,
            assignment,
        })
    }

    pub fn uniform<R: Rng>(blue_count: usize, classes: usize, rng: &mut R) -> Self {
        assert!(classes >= 1);
        BlueColoring {
            classes,
            assignment: (0..blue_count)
                .map(|_| rng.random_range(0..classes))
                .collect(),
        }
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn color_of(&self, b: usize) -> usize {
        self.assignment[b]
    }
}

/// The derived out-tree instance. Vertex layout: reds, then blues, then one
/// terminal per color class, then one pendant per instance terminal.
#[derive(Clone, Debug)]
pub struct OutTreeReduction {
    pub digraph: Digraph,
    pub terminals: Vec<usize>,
    pub budget: usize,
    pub red_count: usize,
    pub blue_count: usize,
    pub color_classes: usize,
    pub pendant_count: usize,
}

impl OutTreeReduction {
    pub fn vertex_count(&self) -> usize {
        self.red_count + self.blue_count + self.color_classes + self.pendant_count
    }

    pub fn is_red(&self, v: usize) -> bool {
        v < self.red_count
    }

    pub fn blue_vertex(&self, b: usize) -> usize {
        self.red_count + b
    }

    pub fn color_vertex(&self, c: usize) -> usize {
        self.red_count + self.blue_count + c
    }

    pub fn pendant_vertex(&self, i: usize) -> usize {
        self.red_count + self.blue_count + self.color_classes + i
    }
}

/// Builds the derived digraph for a coloring with `t` classes. Requires
/// `t >= 1`; the `t = 0` case is handled before the reduction.
///
/// Arcs: both directions per connectivity edge, one red->blue arc per
/// coverage edge, and one arc from each blue vertex to its class terminal.
/// With instance terminals, each terminal gets a private pendant vertex that
/// joins the terminal set, and the vertex budget grows accordingly.
pub fn build_out_tree_reduction(inst: &Instance, f: &BlueColoring) -> OutTreeReduction {
    let t = f.classes();
    assert!(t >= 1, "the reduction needs at least one color class");
    assert_eq!(f.assignment.len(), inst.blue_count());
    let nr = inst.red_count();
    let nb = inst.blue_count();
    let steiner = inst.terminals.len();
    let n = nr + nb + t + steiner;

    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (u, v) in inst.conn.edges() {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    for (r, b) in inst.cov.edges() {
        arcs.push((r, nr + b));
    }
    for b in 0..nb {
        arcs.push((nr + b, nr + nb + f.color_of(b)));
    }
    for (i, &term) in inst.terminals.iter().enumerate() {
        arcs.push((term, nr + nb + t + i));
    }

    let digraph = Digraph::new(n, &arcs).expect("derived digraph is well-formed");
    let terminals: Vec<usize> = (0..t)
        .map(|c| nr + nb + c)
        .chain((0..steiner).map(|i| nr + nb + t + i))
        .collect();
    OutTreeReduction {
        digraph,
        terminals,
        budget: inst.k + 2 * t + 2 * steiner,
        red_count: nr,
        blue_count: nb,
        color_classes: t,
        pendant_count: steiner,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Unset,
    Init,
    Ext(u32),
    Merge(u32),
}

/// Minimum-vertex out-tree containing all of `terminals`, if one with at
/// most `p` vertices exists.
///
/// Dynamic program over (terminal subset, root): arc extension
/// `cost[X][v] = min over arcs (v,u) of cost[X][u] + 1` and subset merge
/// `cost[X∪Y][v] = cost[X][v] + cost[Y][v] - 1` (the shared root counted
/// once). The root is part of the state, so the answer is the minimum of
/// `cost[full][v]` over all vertices.
pub fn solve_steiner_out_tree(
    d: &Digraph,
    terminals: &[usize],
    p: usize,
    limits: &Limits,
) -> Result<Option<OutTree>, SolverError> {
    solve_out_tree_filtered(d, terminals, p, None, limits)
}

/// Same DP with the root restricted to vertices allowed by the mask.
pub(crate) fn solve_out_tree_filtered(
    d: &Digraph,
    terminals: &[usize],
    p: usize,
    allowed_roots: Option<&[bool]>,
    limits: &Limits,
) -> Result<Option<OutTree>, SolverError> {
    let n = d.vertex_count();
    let terminals = crate::util::canonicalize(terminals.to_vec());
    if terminals.len() > limits.max_terminals {
        return Err(SolverError::ResourceLimit(format!(
            "{} terminals exceed the out-tree DP limit {}",
            terminals.len(),
            limits.max_terminals
        )));
    }
    if let Some(&bad) = terminals.iter().find(|&&v| v >= n) {
        return Err(SolverError::InvalidParameter(format!(
            "terminal {bad} out of range for digraph on {n} vertices"
        )));
    }
    if n == 0 || p == 0 || p < terminals.len() {
        return Ok(None);
    }
    let root_ok = |v: usize| allowed_roots.is_none_or(|m| m[v]);
    if terminals.is_empty() {
        // any single allowed vertex is a minimum tree
        return Ok((0..n).find(|&v| root_ok(v)).map(OutTree::singleton));
    }

    let tn = terminals.len();
    let masks = 1usize << tn;
    let full = masks - 1;
    const INF: u32 = u32::MAX;
    let mut cost = vec![INF; masks * n];
    let mut prov = vec![Step::Unset; masks * n];
    let in_adj = d.in_adjacency();

    for (i, &tv) in terminals.iter().enumerate() {
        cost[(1 << i) * n + tv] = 1;
        prov[(1 << i) * n + tv] = Step::Init;
    }

    for mask in 1..masks {
        let base = mask * n;
        // merge complete subtrees that share the root
        if mask & (mask - 1) != 0 {
            let lsb = mask & mask.wrapping_neg();
            let mut s = (mask - 1) & mask;
            while s > 0 {
                if s & lsb != 0 && s != mask {
                    let rest = mask ^ s;
                    for v in 0..n {
                        let a = cost[s * n + v];
                        let b = cost[rest * n + v];
                        if a != INF && b != INF {
                            let cand = a + b - 1;
                            if cand as usize <= p && cand < cost[base + v] {
                                cost[base + v] = cand;
                                prov[base + v] = Step::Merge(s as u32);
                            }
                        }
                    }
                }
                s = (s - 1) & mask;
            }
        }
        // grow a new root above the current one (unit arc costs: Dial buckets)
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); p + 1];
        for v in 0..n {
            let c = cost[base + v];
            if c != INF && (c as usize) <= p {
                buckets[c as usize].push(v);
            }
        }
        for c in 1..=p {
            let mut i = 0;
            while i < buckets[c].len() {
                let v = buckets[c][i];
                i += 1;
                if cost[base + v] as usize != c {
                    continue;
                }
                if c + 1 > p {
                    continue;
                }
                for &u in &in_adj[v] {
                    let cand = (c + 1) as u32;
                    if cand < cost[base + u] {
                        cost[base + u] = cand;
                        prov[base + u] = Step::Ext(v as u32);
                        buckets[c + 1].push(u);
                    }
                }
            }
        }
    }

    let mut best: Option<(u32, usize)> = None;
    for v in 0..n {
        if !root_ok(v) {
            continue;
        }
        let c = cost[full * n + v];
        if c != INF && (c as usize) <= p && best.is_none_or(|(bc, _)| c < bc) {
            best = Some((c, v));
        }
    }
    let Some((opt, root)) = best else {
        return Ok(None);
    };

    // collect the arcs of one optimal derivation, then take its BFS tree
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut stack = vec![(full, root)];
    while let Some((mask, v)) = stack.pop() {
        match prov[mask * n + v] {
            Step::Init => {}
            Step::Ext(child) => {
                arcs.push((v, child as usize));
                stack.push((mask, child as usize));
            }
            Step::Merge(s) => {
                let s = s as usize;
                stack.push((s, v));
                stack.push((mask ^ s, v));
            }
            Step::Unset => {
                return Err(SolverError::Internal(
                    "reconstruction reached an unset DP state".into(),
                ))
            }
        }
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &arcs {
        children[a].push(b);
    }
    for list in &mut children {
        list.sort_unstable();
        list.dedup();
    }
    let mut tree = OutTree::singleton(root);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut seen = vec![false; n];
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &u in &children[v] {
            if !seen[u] {
                seen[u] = true;
                tree.parent.insert(u, v);
                queue.push_back(u);
            }
        }
    }
    debug_assert!(tree.size() <= opt as usize);
    debug_assert!(tree.is_valid_in(d));
    debug_assert!(terminals
        .iter()
        .all(|t| tree.parent.contains_key(t) || *t == tree.root));
    Ok(Some(tree))
}

/// Peels the derived tree back to a red set and re-verifies every contract:
/// size within budget, terminals contained, connectivity, and coverage.
/// A verification failure signals a bug in the reduction or the DP.
pub fn extract_solution(
    tree: &OutTree,
    reduction: &OutTreeReduction,
    inst: &Instance,
) -> Result<Vec<usize>, SolverError> {
    let reds: Vec<usize> = tree
        .vertices()
        .into_iter()
        .filter(|&v| reduction.is_red(v))
        .collect();
    let report = inst.verify(&reds, inst.t);
    if !report.all_ok() {
        return Err(SolverError::Internal(format!(
            "extracted red set {reds:?} failed verification: {report:?}"
        )));
    }
    Ok(reds)
}

fn default_exact_trials(t: usize) -> u64 {
    // e^t, the expected number of colorings until one is injective on a
    // fixed t-subset
    (t as f64).exp().ceil() as u64
}

fn try_coloring(
    inst: &Instance,
    f: &BlueColoring,
    limits: &Limits,
) -> Result<Option<Vec<usize>>, SolverError> {
    let reduction = build_out_tree_reduction(inst, f);
    let allowed: Vec<bool> = (0..reduction.vertex_count())
        .map(|v| reduction.is_red(v))
        .collect();
    let tree = solve_out_tree_filtered(
        &reduction.digraph,
        &reduction.terminals,
        reduction.budget,
        Some(&allowed),
        limits,
    )?;
    let Some(tree) = tree else {
        return Ok(None);
    };
    let red_size = tree
        .vertices()
        .iter()
        .filter(|&&v| reduction.is_red(v))
        .count();
    if !inst.terminals.is_empty() && red_size > inst.k {
        // the Steiner budget k + 2t + 2|T| leaves slack of |T| red vertices;
        // a minimum tree using it certifies nothing for this coloring
        return Ok(None);
    }
    extract_solution(&tree, &reduction, inst).map(Some)
}

/// Exact decision and witness search, parameterized by `t`.
///
/// Randomized mode samples independent uniform colorings (default `⌈e^t⌉`
/// trials, capped); a feasible verdict is always certified, an infeasible
/// verdict is correct with constant probability. Exhaustive mode enumerates
/// all `t^|B|` colorings and is complete: a feasible instance always yields
/// a witness because some coloring is injective on the covered set.
pub fn exact_solve_by_t(
    inst: &Instance,
    mode: SearchMode,
    limits: &Limits,
) -> Result<Outcome, SolverError> {
    if inst.terminals.len() > inst.k {
        return Ok(Outcome::Infeasible(InfeasibleReason::TerminalsExceedBudget));
    }
    if inst.t == 0 {
        return solve_trivial_target(inst, limits);
    }
    if inst.t > inst.blue_count() {
        return Ok(Outcome::Infeasible(
            InfeasibleReason::NoConnectedSetCoversTarget,
        ));
    }
    if inst.k == 0 || inst.red_count() == 0 {
        return Ok(Outcome::Infeasible(InfeasibleReason::EmptySearchSpace));
    }

    let t = inst.t;
    let nb = inst.blue_count();
    match mode {
        SearchMode::Exhaustive => {
            let total = (t as u128).checked_pow(nb as u32).unwrap_or(u128::MAX);
            if total > limits.max_exhaustive_colorings as u128 {
                return Err(SolverError::ResourceLimit(format!(
                    "{t}^{nb} colorings exceed the exhaustive limit {}",
                    limits.max_exhaustive_colorings
                )));
            }
            let mut assignment = vec![0usize; nb];
            loop {
                let f = BlueColoring::new(t, assignment.clone())?;
                if let Some(s) = try_coloring(inst, &f, limits)? {
                    return Ok(Outcome::Feasible(Solution::certified(inst, s)));
                }
                // mixed-radix increment, least significant digit first
                let mut i = 0;
                loop {
                    if i == nb {
                        return Ok(Outcome::Infeasible(
                            InfeasibleReason::NoConnectedSetCoversTarget,
                        ));
                    }
                    assignment[i] += 1;
                    if assignment[i] < t {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
            }
        }
        SearchMode::Randomized { trials, seed } => {
            let trials = trials
                .unwrap_or_else(|| default_exact_trials(t))
                .min(limits.max_trials)
                .max(1);
            for trial in 0..trials {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
                let f = BlueColoring::uniform(nb, t, &mut rng);
                if let Some(s) = try_coloring(inst, &f, limits)? {
                    return Ok(Outcome::Feasible(Solution::certified(inst, s)));
                }
            }
            Ok(Outcome::Infeasible(
                InfeasibleReason::NoConnectedSetCoversTarget,
            ))
        }
    }
}

/// `t = 0`: the empty set suffices unless terminals must be spanned, in which
/// case the cheapest connected superset within budget is searched directly on
/// the connectivity graph.
fn solve_trivial_target(inst: &Instance, limits: &Limits) -> Result<Outcome, SolverError> {
    if inst.terminals.is_empty() {
        return Ok(Outcome::Feasible(Solution::certified(inst, vec![])));
    }
    let mut arcs = Vec::new();
    for (u, v) in inst.conn.edges() {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    let d = Digraph::new(inst.red_count(), &arcs).expect("bidirected connectivity digraph");
    match solve_steiner_out_tree(&d, &inst.terminals, inst.k, limits)? {
        Some(tree) => Ok(Outcome::Feasible(Solution::certified(
            inst,
            tree.vertices(),
        ))),
        None => Ok(Outcome::Infeasible(
            InfeasibleReason::NoConnectedSetCoversTarget,
        )),
    }
}
