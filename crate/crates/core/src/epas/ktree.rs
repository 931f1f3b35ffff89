//! Maximum-weight tree on at most `k` vertices, optionally through a
//! terminal set.
//!
//! Exhaustive mode enumerates connected vertex sets directly. Randomized mode
//! is color coding: sample a uniform `k`-coloring, force terminals into
//! distinct reserved colors (dropping non-terminals that drew a reserved
//! color), and run the colorful-tree dynamic program over
//! (color subset, root vertex) states.

use crate::config::{Limits, SearchMode};
use crate::error::SolverError;
use crate::graph::ConnGraph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Candidate ordering: higher weight first, then fewer vertices, then
/// lexicographically smaller vertex set.
fn better(a: &(u64, Vec<usize>), b: &(u64, Vec<usize>)) -> bool {
    a.0 > b.0
        || (a.0 == b.0 && a.1.len() < b.1.len())
        || (a.0 == b.0 && a.1.len() == b.1.len() && a.1 < b.1)
}

/// Finds a connected set `S` with `|S| <= k` and `terminals ⊆ S` maximizing
/// total weight. Returns `None` only when no such set exists (terminals that
/// cannot be connected within the budget, or an empty host).
pub fn max_weight_k_tree(
    conn: &ConnGraph,
    weights: &[u64],
    k: usize,
    terminals: &[usize],
    mode: SearchMode,
    limits: &Limits,
) -> Result<Option<Vec<usize>>, SolverError> {
    let n = conn.vertex_count();
    assert_eq!(weights.len(), n);
    debug_assert!(crate::util::is_sorted_set(terminals));
    if n == 0 || k == 0 || terminals.len() > k {
        return Ok(None);
    }
    match mode {
        SearchMode::Exhaustive => exhaustive_search(conn, weights, k, terminals, limits),
        SearchMode::Randomized { trials, seed } => {
            color_coding_search(conn, weights, k, terminals, trials, seed, limits)
        }
    }
}

/// Grows connected supersets of each anchor vertex using only vertices larger
/// than the anchor, branching on inclusion of the smallest frontier
/// candidate. Every connected set is visited exactly once, rooted at its
/// minimum vertex.
fn exhaustive_search(
    conn: &ConnGraph,
    weights: &[u64],
    k: usize,
    terminals: &[usize],
    limits: &Limits,
) -> Result<Option<Vec<usize>>, SolverError> {
    struct Search<'a> {
        conn: &'a ConnGraph,
        weights: &'a [u64],
        k: usize,
        terminals: &'a [usize],
        best: Option<(u64, Vec<usize>)>,
        visited: u64,
        budget: u64,
    }
    impl Search<'_> {
        fn consider(&mut self, set: &[usize], weight: u64) {
            if !self.terminals.iter().all(|t| set.binary_search(t).is_ok()) {
                return;
            }
            let cand = (weight, set.to_vec());
            if self.best.as_ref().is_none_or(|b| better(&cand, b)) {
                self.best = Some(cand);
            }
        }
        /// `set` is sorted; `frontier` holds candidate extensions (all larger
        /// than the anchor, adjacent to `set`, not banned on this branch).
        fn grow(
            &mut self,
            set: &mut Vec<usize>,
            weight: u64,
            frontier: &[usize],
            banned: &mut Vec<bool>,
        ) -> Result<(), SolverError> {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(SolverError::ResourceLimit(format!(
                    "connected-set enumeration exceeded {} sets",
                    self.budget
                )));
            }
            let sorted: Vec<usize> = {
                let mut s = set.clone();
                s.sort_unstable();
                s
            };
            self.consider(&sorted, weight);
            if set.len() == self.k {
                return Ok(());
            }
            let Some((&next, rest)) = frontier.split_first() else {
                return Ok(());
            };
            // include `next`
            set.push(next);
            let mut extended: Vec<usize> = rest.to_vec();
            for &u in self.conn.neighbors(next) {
                if u > set[0] && !banned[u] && !set.contains(&u) && !extended.contains(&u) {
                    extended.push(u);
                }
            }
            self.grow(set, weight + self.weights[next], &extended, banned)?;
            set.pop();
            // exclude `next` on this whole branch
            banned[next] = true;
            self.grow(set, weight, rest, banned)?;
            banned[next] = false;
            Ok(())
        }
    }

    let n = conn.vertex_count();
    let mut search = Search {
        conn,
        weights,
        k,
        terminals,
        best: None,
        visited: 0,
        budget: limits.max_enumerated_subsets,
    };
    // the anchor is the minimum of the set; with terminals present it cannot
    // exceed the smallest terminal
    let max_anchor = terminals.first().copied().unwrap_or(n - 1);
    #[allow(clippy::needless_range_loop)]
    for anchor in 0..=max_anchor {
        let mut banned = vec![false; n];
        let frontier: Vec<usize> = conn
            .neighbors(anchor)
            .iter()
            .copied()
            .filter(|&u| u > anchor)
            .collect();
        search.grow(&mut vec![anchor], weights[anchor], &frontier, &mut banned)?;
    }
    Ok(search.best.map(|(_, set)| set))
}

fn default_color_coding_trials(k: usize) -> u64 {
    // e^k * k * ln 4 trials: a fixed colorful target survives one trial with
    // probability at least e^-k
    ((k as f64).exp() * (k as f64) * 4f64.ln()).ceil() as u64
}

fn color_coding_search(
    conn: &ConnGraph,
    weights: &[u64],
    k: usize,
    terminals: &[usize],
    trials: Option<u64>,
    seed: u64,
    limits: &Limits,
) -> Result<Option<Vec<usize>>, SolverError> {
    if k > limits.max_color_classes {
        return Err(SolverError::ResourceLimit(format!(
            "k = {k} exceeds the color-coding limit {}",
            limits.max_color_classes
        )));
    }
    let trials = trials
        .unwrap_or_else(|| default_color_coding_trials(k))
        .min(limits.max_trials)
        .max(1);
    let n = conn.vertex_count();
    let reserved = terminals.len();
    let mut best: Option<(u64, Vec<usize>)> = None;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
        let mut color: Vec<Option<usize>> = (0..n).map(|_| Some(rng.random_range(0..k))).collect();
        for (i, &t) in terminals.iter().enumerate() {
            color[t] = Some(i);
        }
        for (v, slot) in color.iter_mut().enumerate() {
            if slot.is_some_and(|c| c < reserved) && terminals.binary_search(&v).is_err() {
                *slot = None; // non-terminal drew a reserved color
            }
        }
        if let Some(cand) = colorful_tree_dp(conn, weights, k, reserved, &color) {
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        }
    }
    Ok(best.map(|(_, set)| set))
}

/// Max-weight tree whose vertices carry pairwise distinct colors, over all
/// trees whose color set contains every reserved color. `dp[mask][v]` is the
/// best weight of a colorful tree rooted at `v` using exactly the colors in
/// `mask`; trees merge at the root one child subtree at a time.
fn colorful_tree_dp(
    conn: &ConnGraph,
    weights: &[u64],
    k: usize,
    reserved: usize,
    color: &[Option<usize>],
) -> Option<(u64, Vec<usize>)> {
    const NONE: u64 = u64::MAX;
    let n = conn.vertex_count();
    let masks = 1usize << k;
    let reserved_mask = (1usize << reserved) - 1;
    let mut dp = vec![NONE; masks * n];
    // provenance: (submask for the root side, attached neighbor) per state
    let mut prov: Vec<(u32, u32)> = vec![(0, 0); masks * n];

    for v in 0..n {
        if let Some(c) = color[v] {
            dp[(1 << c) * n + v] = weights[v];
        }
    }
    for mask in 1..masks {
        for v in 0..n {
            let Some(cv) = color[v] else { continue };
            if mask & (1 << cv) == 0 {
                continue;
            }
            // split mask into the part kept at v and a complete subtree
            // hanging off a neighbor u
            let mut sub = (mask - 1) & mask;
            while sub > 0 {
                if sub & (1 << cv) != 0 {
                    let rest = mask ^ sub;
                    let a = dp[sub * n + v];
                    if a != NONE {
                        for &u in conn.neighbors(v) {
                            let b = dp[rest * n + u];
                            if b != NONE {
                                let cand = a + b;
                                if dp[mask * n + v] == NONE || cand > dp[mask * n + v] {
                                    dp[mask * n + v] = cand;
                                    prov[mask * n + v] = (sub as u32, u as u32);
                                }
                            }
                        }
                    }
                }
                sub = (sub - 1) & mask;
            }
        }
    }

    let mut best: Option<(u64, usize, usize)> = None; // weight, mask, root
    for mask in 1..masks {
        if mask & reserved_mask != reserved_mask {
            continue;
        }
        for v in 0..n {
            let w = dp[mask * n + v];
            if w != NONE && best.is_none_or(|(bw, _, _)| w > bw) {
                best = Some((w, mask, v));
            }
        }
    }
    let (weight, mask, root) = best?;
    let mut set = Vec::new();
    let mut stack = vec![(mask, root)];
    while let Some((m, v)) = stack.pop() {
        if m.count_ones() == 1 {
            set.push(v);
            continue;
        }
        let (sub, u) = prov[m * n + v];
        stack.push((sub as usize, v));
        stack.push(((m ^ sub as usize), u as usize));
    }
    Some((weight, crate::util::canonicalize(set)))
}
