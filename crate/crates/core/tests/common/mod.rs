//! Seeded generators shared by the integration tests.

use conncover_core::graph::{ConnGraph, Digraph, Instance, RedBlueGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_conn(rng: &mut ChaCha8Rng, n: usize, extra_edge_prob: f64) -> ConnGraph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    ConnGraph::new(n, &edges).unwrap()
}

pub fn random_cov(rng: &mut ChaCha8Rng, r: usize, b: usize, edge_prob: f64) -> RedBlueGraph {
    let mut edges = Vec::new();
    for x in 0..r {
        for y in 0..b {
            if rng.random_bool(edge_prob) {
                edges.push((x, y));
            }
        }
    }
    RedBlueGraph::new(r, b, &edges).unwrap()
}

pub fn random_instance(
    rng: &mut ChaCha8Rng,
    max_r: usize,
    max_b: usize,
    max_k: usize,
    max_t: usize,
) -> Instance {
    let r = rng.random_range(1..=max_r);
    let b = rng.random_range(1..=max_b);
    let conn = random_conn(rng, r, 0.25);
    let cov = random_cov(rng, r, b, 0.4);
    let k = rng.random_range(0..=max_k.min(r));
    let t = rng.random_range(0..=max_t);
    Instance::new(conn, cov, k, t, vec![]).unwrap()
}

pub fn random_digraph(rng: &mut ChaCha8Rng, max_n: usize, arc_prob: f64) -> Digraph {
    let n = rng.random_range(2..=max_n);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(arc_prob) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new(n, &arcs).unwrap()
}
