//! Reductions from classical coverage problems into the red-blue model.
//!
//! Each encoder doubles as a test-instance generator: the clique mode makes
//! connectivity vacuous, the star mode routes it through a fresh center, and
//! the vertex-cover gadget produces instances where connectivity genuinely
//! binds.

use crate::error::BuildError;
use crate::graph::{ConnGraph, Instance, RedBlueGraph};

/// A set system `(U, F)`: element indices below `universe_size`, sets listed
/// by their elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    pub universe_size: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetSystem {
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<Self, BuildError> {
        let mut canonical = Vec::with_capacity(sets.len());
        for set in sets {
            if let Some(&bad) = set.iter().find(|&&e| e >= universe_size) {
                return Err(BuildError::IndexOutOfRange {
                    index: bad,
                    count: universe_size,
                });
            }
            canonical.push(crate::util::canonicalize(set));
        }
        Ok(SetSystem {
            universe_size,
            sets: canonical,
        })
    }
}

/// Connectivity layer attached by an encoder.
#[derive(Clone, Debug)]
pub enum ConnMode {
    /// Complete graph: the connectivity requirement is vacuous.
    Clique,
    /// Fresh center `z` (appended as the last red index, coverage degree 0)
    /// adjacent to everything; the budget grows to `k + 1`.
    Star,
    /// Caller-supplied graph on the red vertices.
    Custom(ConnGraph),
    /// The vertex-cover gadget: a universal vertex plus pendant edges that
    /// force it into any good solution.
    Gadget,
}

/// Max Coverage: red vertices are the sets, blue vertices the universe.
pub fn from_max_coverage(
    ss: &SetSystem,
    k: usize,
    t: usize,
    mode: ConnMode,
) -> Result<Instance, BuildError> {
    let m = ss.sets.len();
    let (conn, k_prime, red_count) = match mode {
        ConnMode::Clique => (ConnGraph::complete(m), k, m),
        ConnMode::Star => (star_graph(m), k + 1, m + 1),
        ConnMode::Custom(g) => {
            if g.vertex_count() != m {
                return Err(BuildError::Invalid(format!(
                    "custom connectivity graph has {} vertices for {m} sets",
                    g.vertex_count()
                )));
            }
            (g, k, m)
        }
        ConnMode::Gadget => {
            return Err(BuildError::Invalid(
                "the gadget mode applies only to the vertex-cover encoder".into(),
            ))
        }
    };
    let mut red_adj = ss.sets.clone();
    red_adj.resize(red_count, Vec::new());
    let cov = RedBlueGraph::from_red_adj(red_count, ss.universe_size, &red_adj)?;
    Instance::new(conn, cov, k_prime.min(red_count), t, vec![])
}

/// Partial Dominating Set on `g`: two copies of `V(g)`, with each red copy
/// adjacent to the blue copies of its closed neighborhood.
pub fn from_partial_dominating_set(
    g: &ConnGraph,
    k: usize,
    t: usize,
    mode: ConnMode,
) -> Result<Instance, BuildError> {
    let n = g.vertex_count();
    let (conn, k_prime, red_count) = match mode {
        ConnMode::Clique => (ConnGraph::complete(n), k, n),
        ConnMode::Star => (star_graph(n), k + 1, n + 1),
        _ => {
            return Err(BuildError::Invalid(
                "the dominating-set encoder supports clique and star modes".into(),
            ))
        }
    };
    let mut red_adj = closed_neighborhood_adj(g);
    red_adj.resize(red_count, Vec::new());
    let cov = RedBlueGraph::from_red_adj(red_count, n, &red_adj)?;
    Instance::new(conn, cov, k_prime.min(red_count), t, vec![])
}

/// Budgeted Connected Dominating Set: connectivity graph is `g` itself, so
/// `|N_cov(S)| = |N_g[S]|` by construction.
pub fn from_budgeted_cds(g: &ConnGraph, k: usize, t: usize) -> Result<Instance, BuildError> {
    let n = g.vertex_count();
    let cov = RedBlueGraph::from_red_adj(n, n, &closed_neighborhood_adj(g))?;
    Instance::new(g.clone(), cov, k.min(n), t, vec![])
}

/// Partial Vertex Cover: red vertices are the vertices of `g`, blue vertices
/// its edges. The gadget mode adds a universal vertex `z` plus one pendant
/// per original edge, shifting the parameters to `k + 1` and `m + n + t`.
pub fn from_partial_vertex_cover(
    g: &ConnGraph,
    k: usize,
    t: usize,
    mode: ConnMode,
) -> Result<Instance, BuildError> {
    let n = g.vertex_count();
    match mode {
        ConnMode::Clique | ConnMode::Star => {
            let (conn, k_prime, red_count) = match mode {
                ConnMode::Clique => (ConnGraph::complete(n), k, n),
                _ => (star_graph(n), k + 1, n + 1),
            };
            let edges = g.edges();
            let mut red_adj = vec![Vec::new(); red_count];
            for (j, &(u, v)) in edges.iter().enumerate() {
                red_adj[u].push(j);
                red_adj[v].push(j);
            }
            let cov = RedBlueGraph::from_red_adj(red_count, edges.len(), &red_adj)?;
            Instance::new(conn, cov, k_prime.min(red_count), t, vec![])
        }
        ConnMode::Gadget => {
            let m = g.edge_count();
            // g, plus universal z at index n, plus m pendants on z
            let mut edges = g.edges();
            for v in 0..n {
                edges.push((v, n));
            }
            for i in 0..m {
                edges.push((n, n + 1 + i));
            }
            let big = ConnGraph::new(n + 1 + m, &edges)?;
            let big_edges = big.edges();
            let mut red_adj = vec![Vec::new(); n + 1 + m];
            for (j, &(u, v)) in big_edges.iter().enumerate() {
                red_adj[u].push(j);
                red_adj[v].push(j);
            }
            let cov = RedBlueGraph::from_red_adj(n + 1 + m, big_edges.len(), &red_adj)?;
            Instance::new(big, cov, (k + 1).min(n + 1 + m), m + n + t, vec![])
        }
        ConnMode::Custom(_) => Err(BuildError::Invalid(
            "the vertex-cover encoder supports clique, star and gadget modes".into(),
        )),
    }
}

/// Partial Hitting Set: roles flipped, red vertices are universe elements,
/// blue vertices the sets; connectivity is a clique on the elements.
pub fn from_partial_hitting_set(
    ss: &SetSystem,
    k: usize,
    t: usize,
) -> Result<Instance, BuildError> {
    let mut red_adj = vec![Vec::new(); ss.universe_size];
    for (j, set) in ss.sets.iter().enumerate() {
        for &e in set {
            red_adj[e].push(j);
        }
    }
    let cov = RedBlueGraph::from_red_adj(ss.universe_size, ss.sets.len(), &red_adj)?;
    Instance::new(
        ConnGraph::complete(ss.universe_size),
        cov,
        k.min(ss.universe_size),
        t,
        vec![],
    )
}

fn star_graph(leaves: usize) -> ConnGraph {
    let center = leaves;
    let edges: Vec<(usize, usize)> = (0..leaves).map(|v| (v, center)).collect();
    ConnGraph::new(leaves + 1, &edges).expect("star is well-formed")
}

fn closed_neighborhood_adj(g: &ConnGraph) -> Vec<Vec<usize>> {
    (0..g.vertex_count())
        .map(|u| {
            let mut nb = g.neighbors(u).to_vec();
            nb.push(u);
            crate::util::canonicalize(nb)
        })
        .collect()
}
