//! Brute-force reference implementations.
//!
//! These are the ground truth the solvers are tested against, so they share
//! nothing with the solver code paths beyond the core graph types. Connected
//! sets are enumerated canonically (each set generated exactly once from its
//! smallest vertex, extension-list style), which reaches |R| around 16 at
//! small budgets. Oracles refuse oversized inputs instead of degrading.

use crate::error::SolverError;
use crate::graph::{ConnGraph, Digraph, InfeasibleReason, Instance, OutTree, Outcome, Solution};
use std::time::{Duration, Instant};

/// Input ceilings; exceeding one yields an explicit refusal.
#[derive(Clone, Debug)]
pub struct OracleLimits {
    pub max_red: usize,
    pub max_subset_size: usize,
    pub max_digraph_vertices: usize,
    pub time_budget: Duration,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_red: 18,
            max_subset_size: 8,
            max_digraph_vertices: 16,
            time_budget: Duration::from_secs(60),
        }
    }
}

fn check_size(inst_red: usize, k: usize, limits: &OracleLimits) -> Result<(), SolverError> {
    if inst_red > limits.max_red {
        return Err(SolverError::ResourceLimit(format!(
            "{inst_red} red vertices exceed the oracle limit {}",
            limits.max_red
        )));
    }
    if k > limits.max_subset_size {
        return Err(SolverError::ResourceLimit(format!(
            "subset size {k} exceeds the oracle limit {}",
            limits.max_subset_size
        )));
    }
    Ok(())
}

/// Enumerates every connected vertex set of size 1..=max_size exactly once,
/// rooted at its smallest vertex: the extension list holds vertices larger
/// than the root that neighbor the current set and were not yet offered.
fn for_each_connected_set(
    conn: &ConnGraph,
    max_size: usize,
    deadline: Instant,
    visit: &mut impl FnMut(&[usize]),
) -> Result<(), SolverError> {
    #[allow(clippy::too_many_arguments)]
    fn extend(
        conn: &ConnGraph,
        root: usize,
        set: &mut Vec<usize>,
        extension: Vec<usize>,
        max_size: usize,
        deadline: Instant,
        visit: &mut impl FnMut(&[usize]),
        ticks: &mut u32,
    ) -> Result<(), SolverError> {
        *ticks += 1;
        if (*ticks).is_multiple_of(4096) && Instant::now() > deadline {
            return Err(SolverError::ResourceLimit(
                "oracle enumeration exceeded its time budget".into(),
            ));
        }
        visit(set);
        if set.len() == max_size {
            return Ok(());
        }
        for (i, &v) in extension.iter().enumerate() {
            let mut next_ext: Vec<usize> = extension[i + 1..].to_vec();
            for &u in conn.neighbors(v) {
                if u > root && !set.contains(&u) && !extension.contains(&u) {
                    next_ext.push(u);
                }
            }
            set.push(v);
            extend(conn, root, set, next_ext, max_size, deadline, visit, ticks)?;
            set.pop();
        }
        Ok(())
    }

    if max_size == 0 {
        return Ok(());
    }
    let mut ticks = 0u32;
    for root in 0..conn.vertex_count() {
        let extension: Vec<usize> = conn
            .neighbors(root)
            .iter()
            .copied()
            .filter(|&u| u > root)
            .collect();
        extend(
            conn,
            root,
            &mut vec![root],
            extension,
            max_size,
            deadline,
            visit,
            &mut ticks,
        )?;
    }
    Ok(())
}

fn sorted(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s
}

fn contains_all(set: &[usize], required: &[usize]) -> bool {
    required.iter().all(|r| set.binary_search(r).is_ok())
}

/// Decision oracle: a maximum-coverage witness among connected sets of size
/// at most `k` containing the terminals, or infeasibility.
pub fn brute_force_decide(inst: &Instance, limits: &OracleLimits) -> Result<Outcome, SolverError> {
    check_size(inst.red_count(), inst.k, limits)?;
    if inst.terminals.len() > inst.k {
        return Ok(Outcome::Infeasible(InfeasibleReason::TerminalsExceedBudget));
    }
    if inst.t == 0 && inst.terminals.is_empty() {
        return Ok(Outcome::Feasible(Solution::certified(inst, vec![])));
    }
    let deadline = Instant::now() + limits.time_budget;
    let mut best: Option<(usize, Vec<usize>)> = None;
    for_each_connected_set(&inst.conn, inst.k, deadline, &mut |set| {
        let s = sorted(set);
        if !contains_all(&s, &inst.terminals) {
            return;
        }
        let coverage = inst.cov.coverage(&s);
        let replaces = match &best {
            None => true,
            Some((bc, bs)) => {
                coverage > *bc
                    || (coverage == *bc && s.len() < bs.len())
                    || (coverage == *bc && s.len() == bs.len() && s < *bs)
            }
        };
        if replaces {
            best = Some((coverage, s));
        }
    })?;
    match best {
        Some((coverage, set)) if coverage >= inst.t => {
            Ok(Outcome::Feasible(Solution::certified(inst, set)))
        }
        _ => Ok(Outcome::Infeasible(
            InfeasibleReason::NoConnectedSetCoversTarget,
        )),
    }
}

/// Best achievable coverage with a connected set of size at most `k`
/// containing the terminals, with a witness. `(0, [])` when nothing
/// qualifies.
pub fn brute_force_best_coverage(
    inst: &Instance,
    k: usize,
    limits: &OracleLimits,
) -> Result<(usize, Vec<usize>), SolverError> {
    check_size(inst.red_count(), k, limits)?;
    let deadline = Instant::now() + limits.time_budget;
    let mut best: Option<(usize, Vec<usize>)> = None;
    for_each_connected_set(&inst.conn, k, deadline, &mut |set| {
        let s = sorted(set);
        if !contains_all(&s, &inst.terminals) {
            return;
        }
        let coverage = inst.cov.coverage(&s);
        let replaces = match &best {
            None => true,
            Some((bc, bs)) => {
                coverage > *bc
                    || (coverage == *bc && s.len() < bs.len())
                    || (coverage == *bc && s.len() == bs.len() && s < *bs)
            }
        };
        if replaces {
            best = Some((coverage, s));
        }
    })?;
    Ok(best.unwrap_or((0, Vec::new())))
}

/// Minimum size of a connected set containing the terminals that covers at
/// least `t`, with a witness. The search runs over every set size up to
/// `|R|`; a `None` verdict is therefore exact, never an artifact of a size
/// cap.
pub fn brute_force_min_size(
    inst: &Instance,
    t: usize,
    limits: &OracleLimits,
) -> Result<Option<(usize, Vec<usize>)>, SolverError> {
    if inst.red_count() > limits.max_red {
        return Err(SolverError::ResourceLimit(format!(
            "{} red vertices exceed the oracle limit {}",
            inst.red_count(),
            limits.max_red
        )));
    }
    if t == 0 && inst.terminals.is_empty() {
        return Ok(Some((0, Vec::new())));
    }
    let deadline = Instant::now() + limits.time_budget;
    let mut best: Option<Vec<usize>> = None;
    for_each_connected_set(&inst.conn, inst.red_count(), deadline, &mut |set| {
        let s = sorted(set);
        if !contains_all(&s, &inst.terminals) || inst.cov.coverage(&s) < t {
            return;
        }
        let replaces = match &best {
            None => true,
            Some(b) => s.len() < b.len() || (s.len() == b.len() && s < *b),
        };
        if replaces {
            best = Some(s);
        }
    })?;
    Ok(best.map(|s| (s.len(), s)))
}

/// Exact optimum of the maximum-weight tree subproblem by enumeration.
pub fn brute_force_max_weight_tree(
    conn: &ConnGraph,
    weights: &[u64],
    k: usize,
    terminals: &[usize],
    limits: &OracleLimits,
) -> Result<Option<Vec<usize>>, SolverError> {
    check_size(conn.vertex_count(), k, limits)?;
    if terminals.len() > k {
        return Ok(None);
    }
    let deadline = Instant::now() + limits.time_budget;
    let mut best: Option<(u64, Vec<usize>)> = None;
    for_each_connected_set(conn, k, deadline, &mut |set| {
        let s = sorted(set);
        if !contains_all(&s, terminals) {
            return;
        }
        let w: u64 = s.iter().map(|&v| weights[v]).sum();
        let replaces = match &best {
            None => true,
            Some((bw, bs)) => {
                w > *bw
                    || (w == *bw && s.len() < bs.len())
                    || (w == *bw && s.len() == bs.len() && s < *bs)
            }
        };
        if replaces {
            best = Some((w, s));
        }
    })?;
    Ok(best.map(|(_, s)| s))
}

/// Minimum out-tree through every terminal, by enumerating vertex subsets in
/// (size, lexicographic) order and testing for a spanning arborescence.
pub fn brute_force_steiner_out_tree(
    d: &Digraph,
    terminals: &[usize],
    p: usize,
    limits: &OracleLimits,
) -> Result<Option<OutTree>, SolverError> {
    let n = d.vertex_count();
    if n > limits.max_digraph_vertices {
        return Err(SolverError::ResourceLimit(format!(
            "{n} digraph vertices exceed the oracle limit {}",
            limits.max_digraph_vertices
        )));
    }
    let terminals = crate::util::canonicalize(terminals.to_vec());
    if terminals.iter().any(|&v| v >= n) || p == 0 || n == 0 {
        return Ok(None);
    }
    if terminals.is_empty() {
        return Ok(Some(OutTree::singleton(0)));
    }
    let deadline = Instant::now() + limits.time_budget;
    for size in terminals.len()..=p.min(n) {
        let mut found: Option<OutTree> = None;
        crate::util::for_each_combination(n, size, |subset| {
            if Instant::now() > deadline {
                return false;
            }
            if !contains_all(subset, &terminals) {
                return true;
            }
            for &root in subset {
                if let Some(tree) = arborescence_of(d, subset, root) {
                    found = Some(tree);
                    return false;
                }
            }
            true
        });
        if Instant::now() > deadline {
            return Err(SolverError::ResourceLimit(
                "oracle enumeration exceeded its time budget".into(),
            ));
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// BFS arborescence of the induced subdigraph, if `root` reaches everything.
fn arborescence_of(d: &Digraph, subset: &[usize], root: usize) -> Option<OutTree> {
    let mut tree = OutTree::singleton(root);
    let mut seen = vec![false; d.vertex_count()];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &u in d.out_neighbors(v) {
            if subset.binary_search(&u).is_ok() && !seen[u] {
                seen[u] = true;
                reached += 1;
                tree.parent.insert(u, v);
                queue.push_back(u);
            }
        }
    }
    (reached == subset.len()).then_some(tree)
}

/// Optima of the classical problems the encoders start from, by direct
/// subset enumeration. Used to certify encoder equivalence.
pub mod source {
    use crate::encode::SetSystem;
    use crate::graph::ConnGraph;
    use crate::util::{for_each_combination, BitSet};

    /// Max elements covered by at most `k` sets.
    pub fn max_coverage_opt(ss: &SetSystem, k: usize) -> usize {
        let mut best = 0;
        for size in 0..=k.min(ss.sets.len()) {
            for_each_combination(ss.sets.len(), size, |chosen| {
                let mut seen = BitSet::new(ss.universe_size);
                for &i in chosen {
                    for &e in &ss.sets[i] {
                        seen.insert(e);
                    }
                }
                best = best.max(seen.count());
                true
            });
        }
        best
    }

    /// Max sets hit by at most `k` universe elements.
    pub fn hitting_opt(ss: &SetSystem, k: usize) -> usize {
        let mut best = 0;
        for size in 0..=k.min(ss.universe_size) {
            for_each_combination(ss.universe_size, size, |chosen| {
                let hit = ss
                    .sets
                    .iter()
                    .filter(|set| set.iter().any(|e| chosen.binary_search(e).is_ok()))
                    .count();
                best = best.max(hit);
                true
            });
        }
        best
    }

    /// Max vertices dominated (closed neighborhoods) by at most `k` vertices.
    pub fn pds_opt(g: &ConnGraph, k: usize) -> usize {
        let n = g.vertex_count();
        let mut best = 0;
        for size in 0..=k.min(n) {
            for_each_combination(n, size, |chosen| {
                let mut seen = BitSet::new(n);
                for &v in chosen {
                    seen.insert(v);
                    for &u in g.neighbors(v) {
                        seen.insert(u);
                    }
                }
                best = best.max(seen.count());
                true
            });
        }
        best
    }

    /// Max edges covered by at most `k` vertices.
    pub fn pvc_opt(g: &ConnGraph, k: usize) -> usize {
        let n = g.vertex_count();
        let edges = g.edges();
        let mut best = 0;
        for size in 0..=k.min(n) {
            for_each_combination(n, size, |chosen| {
                let covered = edges
                    .iter()
                    .filter(|(u, v)| {
                        chosen.binary_search(u).is_ok() || chosen.binary_search(v).is_ok()
                    })
                    .count();
                best = best.max(covered);
                true
            });
        }
        best
    }

    /// Max vertices dominated by a connected set of at most `k` vertices.
    pub fn bcds_opt(g: &ConnGraph, k: usize) -> usize {
        let n = g.vertex_count();
        let mut best = 0;
        for size in 0..=k.min(n) {
            for_each_combination(n, size, |chosen| {
                if !g.is_connected_in(chosen) {
                    return true;
                }
                let mut seen = BitSet::new(n);
                for &v in chosen {
                    seen.insert(v);
                    for &u in g.neighbors(v) {
                        seen.insert(u);
                    }
                }
                best = best.max(seen.count());
                true
            });
        }
        best
    }
}
