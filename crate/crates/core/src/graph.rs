//! Graph representations and the problem instance/solution model.
//!
//! Red vertices carry the selection and connectivity structure; blue vertices
//! are the coverage targets. All vertex indices are dense and 0-based;
//! adjacency lists are kept sorted so that set operations and serialized
//! output are deterministic.

use crate::error::BuildError;
use crate::util::{canonicalize, intersection_size, is_sorted_set, BitSet};
use std::collections::{BTreeMap, VecDeque};

/// Simple undirected graph on the red vertices (the connectivity graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl ConnGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, BuildError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(BuildError::IndexOutOfRange {
                    index: u.max(v),
                    count: n,
                });
            }
            if u == v {
                return Err(BuildError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(ConnGraph { n, adj })
    }

    pub fn empty(n: usize) -> Self {
        ConnGraph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        ConnGraph { n, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Whether the subgraph induced on `set` is connected. Empty and
    /// singleton sets count as connected.
    pub fn is_connected_in(&self, set: &[usize]) -> bool {
        debug_assert!(is_sorted_set(set));
        assert!(
            set.iter().all(|&v| v < self.n),
            "vertex set out of range for graph on {} vertices",
            self.n
        );
        if set.len() <= 1 {
            return true;
        }
        let mut member = BitSet::new(self.n);
        for &v in set {
            member.insert(v);
        }
        let mut seen = BitSet::new(self.n);
        let mut queue = VecDeque::from([set[0]]);
        seen.insert(set[0]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if member.contains(u) && !seen.contains(u) {
                    seen.insert(u);
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == set.len()
    }

    /// All vertices within distance `r` of `sources` (multi-source BFS).
    /// `ball(X, 0) = X`.
    pub fn ball(&self, sources: &[usize], r: usize) -> Vec<usize> {
        assert!(sources.iter().all(|&v| v < self.n));
        let mut dist: Vec<Option<usize>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            if d == r {
                continue;
            }
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        (0..self.n).filter(|&v| dist[v].is_some()).collect()
    }

    /// Multi-source BFS distances; unreachable vertices get `None`.
    /// Also returns BFS parents (sources have themselves as parent).
    pub fn distances_from(&self, sources: &[usize]) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut dist: Vec<Option<usize>> = vec![None; self.n];
        let mut parent: Vec<usize> = (0..self.n).collect();
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(dist[v].unwrap() + 1);
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        (dist, parent)
    }

    /// Subgraph induced on `verts` (sorted), reindexed to `0..verts.len()`.
    /// Position `i` of the new graph corresponds to `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> ConnGraph {
        debug_assert!(is_sorted_set(verts));
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| pos[u] != usize::MAX)
                    .map(|&u| pos[u])
                    .collect()
            })
            .collect();
        ConnGraph {
            n: verts.len(),
            adj,
        }
    }

    /// Connected, with exactly `n - 1` edges. The empty graph is not a tree.
    pub fn is_tree(&self) -> bool {
        self.n >= 1
            && self.edge_count() == self.n - 1
            && self.is_connected_in(&(0..self.n).collect::<Vec<_>>())
    }
}

/// Bipartite coverage graph between red and blue vertices. The red-side and
/// blue-side adjacency lists mirror the same edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedBlueGraph {
    red_count: usize,
    blue_count: usize,
    red_adj: Vec<Vec<usize>>,
    blue_adj: Vec<Vec<usize>>,
}

impl RedBlueGraph {
    pub fn new(
        red_count: usize,
        blue_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, BuildError> {
        let mut red_adj = vec![Vec::new(); red_count];
        let mut blue_adj = vec![Vec::new(); blue_count];
        for &(r, b) in edges {
            if r >= red_count {
                return Err(BuildError::IndexOutOfRange {
                    index: r,
                    count: red_count,
                });
            }
            if b >= blue_count {
                return Err(BuildError::IndexOutOfRange {
                    index: b,
                    count: blue_count,
                });
            }
            red_adj[r].push(b);
        }
        for (r, list) in red_adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &b in list.iter() {
                blue_adj[b].push(r);
            }
        }
        // blue_adj inherits sortedness from the red scan order
        Ok(RedBlueGraph {
            red_count,
            blue_count,
            red_adj,
            blue_adj,
        })
    }

    pub fn from_red_adj(
        red_count: usize,
        blue_count: usize,
        red_adj: &[Vec<usize>],
    ) -> Result<Self, BuildError> {
        let edges: Vec<(usize, usize)> = red_adj
            .iter()
            .enumerate()
            .flat_map(|(r, bs)| bs.iter().map(move |&b| (r, b)))
            .collect();
        if red_adj.len() != red_count {
            return Err(BuildError::Invalid(format!(
                "red adjacency has {} rows for {} red vertices",
                red_adj.len(),
                red_count
            )));
        }
        Self::new(red_count, blue_count, &edges)
    }

    pub fn red_count(&self) -> usize {
        self.red_count
    }

    pub fn blue_count(&self) -> usize {
        self.blue_count
    }

    pub fn edge_count(&self) -> usize {
        self.red_adj.iter().map(Vec::len).sum()
    }

    /// Edges as `(red, blue)`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for r in 0..self.red_count {
            for &b in &self.red_adj[r] {
                out.push((r, b));
            }
        }
        out
    }

    pub fn blues_of(&self, r: usize) -> &[usize] {
        &self.red_adj[r]
    }

    pub fn reds_of(&self, b: usize) -> &[usize] {
        &self.blue_adj[b]
    }

    pub fn red_degree(&self, r: usize) -> usize {
        self.red_adj[r].len()
    }

    /// Union of the blue neighborhoods of `set`, as a sorted vector.
    pub fn neighborhood(&self, set: &[usize]) -> Vec<usize> {
        assert!(
            set.iter().all(|&r| r < self.red_count),
            "red set out of range for {} red vertices",
            self.red_count
        );
        let mut seen = BitSet::new(self.blue_count);
        for &r in set {
            for &b in &self.red_adj[r] {
                seen.insert(b);
            }
        }
        seen.iter().collect()
    }

    /// `|N(set)|` without materializing the neighborhood.
    pub fn coverage(&self, set: &[usize]) -> usize {
        assert!(set.iter().all(|&r| r < self.red_count));
        let mut seen = BitSet::new(self.blue_count);
        for &r in set {
            for &b in &self.red_adj[r] {
                seen.insert(b);
            }
        }
        seen.count()
    }

    pub fn common_blue_count(&self, u: usize, v: usize) -> usize {
        intersection_size(&self.red_adj[u], &self.red_adj[v])
    }

    /// Whether no `d` red vertices share `d` common blue neighbors
    /// (no K_{d,d} subgraph with the red side in `R`).
    ///
    /// Refuses when `C(red_count, d)` exceeds `budget`; the actual search
    /// prunes on intersection size and typically does far less work.
    pub fn is_kdd_free(&self, d: usize, budget: u64) -> Result<bool, crate::error::SolverError> {
        assert!(d >= 1, "biclique parameter d must be at least 1");
        if crate::util::binomial(self.red_count, d) > budget as u128 {
            return Err(crate::error::SolverError::ResourceLimit(format!(
                "C({}, {}) exceeds the K_{{d,d}} check budget {}",
                self.red_count, d, budget
            )));
        }
        // depth-first over red d-subsets, carrying the running intersection
        fn search(
            g: &RedBlueGraph,
            d: usize,
            start: usize,
            chosen: usize,
            inter: &[usize],
        ) -> bool {
            if chosen == d {
                return inter.len() >= d; // found a K_{d,d}
            }
            for r in start..g.red_count {
                let next: Vec<usize> = if chosen == 0 {
                    g.red_adj[r].clone()
                } else {
                    inter
                        .iter()
                        .copied()
                        .filter(|b| g.red_adj[r].binary_search(b).is_ok())
                        .collect()
                };
                if next.len() >= d && search(g, d, r + 1, chosen + 1, &next) {
                    return true;
                }
            }
            false
        }
        Ok(!search(self, d, 0, 0, &[]))
    }

    /// Restriction to a sorted red subset. Blue vertices outside the union of
    /// the kept neighborhoods are dropped too. Returns the restricted graph
    /// plus the original blue ids, position-aligned with the new blue indices.
    pub fn restrict(&self, reds: &[usize]) -> (RedBlueGraph, Vec<usize>) {
        debug_assert!(is_sorted_set(reds));
        let kept_blues = self.neighborhood(reds);
        let mut blue_pos = vec![usize::MAX; self.blue_count];
        for (i, &b) in kept_blues.iter().enumerate() {
            blue_pos[b] = i;
        }
        let red_adj: Vec<Vec<usize>> = reds
            .iter()
            .map(|&r| self.red_adj[r].iter().map(|&b| blue_pos[b]).collect())
            .collect();
        let g = RedBlueGraph::from_red_adj(reds.len(), kept_blues.len(), &red_adj)
            .expect("restriction of a valid graph is valid");
        (g, kept_blues)
    }
}

/// Directed graph, stored as out-adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, BuildError> {
        let mut out_adj = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(BuildError::IndexOutOfRange {
                    index: u.max(v),
                    count: n,
                });
            }
            out_adj[u].push(v);
        }
        for list in &mut out_adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Digraph { out_adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_adjacency(&self) -> Vec<Vec<usize>> {
        let mut in_adj = vec![Vec::new(); self.out_adj.len()];
        for (u, outs) in self.out_adj.iter().enumerate() {
            for &v in outs {
                in_adj[v].push(u);
            }
        }
        in_adj
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }
}

/// Directed out-tree: a unique root of in-degree 0, every other vertex with
/// in-degree exactly 1, all arcs directed away from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutTree {
    pub root: usize,
    /// child -> parent, excluding the root.
    pub parent: BTreeMap<usize, usize>,
}

impl OutTree {
    pub fn singleton(root: usize) -> Self {
        OutTree {
            root,
            parent: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.parent.len()
    }

    /// Sorted vertex set.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.parent.keys().copied().collect();
        vs.push(self.root);
        vs.sort_unstable();
        vs
    }

    /// Checks the out-tree structure against a host digraph: every stored arc
    /// exists in the host, and every vertex reaches the root through parents
    /// without cycles.
    pub fn is_valid_in(&self, host: &Digraph) -> bool {
        if self.parent.contains_key(&self.root) {
            return false;
        }
        for (&c, &p) in &self.parent {
            if p >= host.vertex_count() || c >= host.vertex_count() {
                return false;
            }
            if host.out_neighbors(p).binary_search(&c).is_err() {
                return false;
            }
        }
        // walk up from every vertex; a cycle would exceed the tree size
        for &start in self.parent.keys() {
            let mut v = start;
            let mut steps = 0;
            while v != self.root {
                match self.parent.get(&v) {
                    Some(&p) => v = p,
                    None => return false,
                }
                steps += 1;
                if steps > self.parent.len() {
                    return false;
                }
            }
        }
        true
    }
}

/// Why a solver concluded there is no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// No connected set of size at most k dominates t blue vertices.
    NoConnectedSetCoversTarget,
    /// More terminals than the budget k allows.
    TerminalsExceedBudget,
    /// No candidate set exists at all (k = 0 with t > 0, empty red side, ...).
    EmptySearchSpace,
}

impl std::fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InfeasibleReason::NoConnectedSetCoversTarget => {
                write!(f, "no-connected-k-set-covers-t")
            }
            InfeasibleReason::TerminalsExceedBudget => write!(f, "budget-exceeded-by-terminals"),
            InfeasibleReason::EmptySearchSpace => write!(f, "empty-search-space"),
        }
    }
}

/// A solved red set with certificates recomputed from the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub vertices: Vec<usize>,
    pub coverage: usize,
    pub connected: bool,
}

impl Solution {
    /// Builds a solution by recomputing coverage and connectivity from
    /// scratch; never trusts the caller's certificates.
    pub fn certified(inst: &Instance, vertices: Vec<usize>) -> Solution {
        let vertices = canonicalize(vertices);
        let coverage = inst.cov.coverage(&vertices);
        let connected = inst.conn.is_connected_in(&vertices);
        Solution {
            vertices,
            coverage,
            connected,
        }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Verdict of a solver run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Solution),
    Infeasible(InfeasibleReason),
}

impl Outcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Feasible(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Feasible(s) => Some(s),
            Outcome::Infeasible(_) => None,
        }
    }
}

/// Field-by-field verification report for a candidate red set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub size_ok: bool,
    pub terminals_ok: bool,
    pub connected: bool,
    pub coverage: usize,
    pub meets_target: bool,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.size_ok && self.terminals_ok && self.connected && self.meets_target
    }
}

/// A full problem input: connectivity graph, coverage graph, budget `k`,
/// coverage target `t`, and an optional terminal set that any solution must
/// contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub conn: ConnGraph,
    pub cov: RedBlueGraph,
    pub k: usize,
    pub t: usize,
    pub terminals: Vec<usize>,
}

impl Instance {
    pub fn new(
        conn: ConnGraph,
        cov: RedBlueGraph,
        k: usize,
        t: usize,
        terminals: Vec<usize>,
    ) -> Result<Self, BuildError> {
        if conn.vertex_count() != cov.red_count() {
            return Err(BuildError::RedCountMismatch {
                conn: conn.vertex_count(),
                cov: cov.red_count(),
            });
        }
        if k > cov.red_count() {
            return Err(BuildError::BudgetTooLarge {
                k,
                red_count: cov.red_count(),
            });
        }
        let terminals = canonicalize(terminals);
        if let Some(&bad) = terminals.iter().find(|&&v| v >= cov.red_count()) {
            return Err(BuildError::IndexOutOfRange {
                index: bad,
                count: cov.red_count(),
            });
        }
        if terminals.len() > k {
            return Err(BuildError::TooManyTerminals {
                terminals: terminals.len(),
                k,
            });
        }
        Ok(Instance {
            conn,
            cov,
            k,
            t,
            terminals,
        })
    }

    pub fn red_count(&self) -> usize {
        self.cov.red_count()
    }

    pub fn blue_count(&self) -> usize {
        self.cov.blue_count()
    }

    /// Recomputes every certificate for `set` against `coverage_target`.
    pub fn verify(&self, set: &[usize], coverage_target: usize) -> VerifyReport {
        let set = canonicalize(set.to_vec());
        let coverage = self.cov.coverage(&set);
        VerifyReport {
            size_ok: set.len() <= self.k,
            terminals_ok: self.terminals.iter().all(|t| set.binary_search(t).is_ok()),
            connected: self.conn.is_connected_in(&set),
            coverage,
            meets_target: coverage >= coverage_target,
        }
    }
}
