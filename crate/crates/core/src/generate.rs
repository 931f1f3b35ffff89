//! Seeded instance generators for tests and benchmarks.

use crate::error::SolverError;
use crate::graph::{ConnGraph, Instance, RedBlueGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Random tree plus extra edges for connectivity, random coverage lists.
    RandomBipartite,
    /// Path connectivity, one private blue per red: biclique-free by
    /// construction.
    Matching,
    /// Grid connectivity, random coverage lists.
    GridConn,
    /// Random attachment tree connectivity, random coverage lists.
    TreeConn,
    /// Complete connectivity, random coverage lists.
    CliqueConn,
}

impl std::str::FromStr for Family {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random-bipartite" => Ok(Family::RandomBipartite),
            "matching" => Ok(Family::Matching),
            "grid-conn" => Ok(Family::GridConn),
            "tree-conn" => Ok(Family::TreeConn),
            "clique-conn" => Ok(Family::CliqueConn),
            other => Err(SolverError::InvalidParameter(format!(
                "unknown family `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub family: Family,
    pub red_count: usize,
    pub blue_count: usize,
    pub max_red_degree: usize,
    pub k: usize,
    /// Coverage target; defaults to half of the reachable blue vertices.
    pub t: Option<usize>,
    /// Resample the coverage graph until it is K_{d,d}-free for this `d`.
    pub d_free: Option<usize>,
    pub seed: u64,
}

const RESAMPLE_BUDGET: usize = 200;

/// Deterministic in all parameters including the seed.
pub fn generate(params: &GenParams) -> Result<Instance, SolverError> {
    if params.red_count == 0 {
        return Err(SolverError::InvalidParameter(
            "need at least one red vertex".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let conn = build_conn(params, &mut rng);
    for _attempt in 0..RESAMPLE_BUDGET {
        let cov = build_cov(params, &mut rng);
        if let Some(d) = params.d_free {
            if !cov.is_kdd_free(d, 2_000_000)? {
                continue;
            }
        }
        let t = params
            .t
            .unwrap_or_else(|| {
                cov.coverage(&(0..params.red_count).collect::<Vec<_>>())
                    .div_ceil(2)
            })
            .max(1);
        let k = params.k.min(params.red_count);
        return Instance::new(conn, cov, k, t, vec![]).map_err(SolverError::from);
    }
    Err(SolverError::ResourceLimit(format!(
        "no K_{{d,d}}-free sample within {RESAMPLE_BUDGET} attempts"
    )))
}

fn build_conn(params: &GenParams, rng: &mut ChaCha8Rng) -> ConnGraph {
    let n = params.red_count;
    match params.family {
        Family::Matching => {
            let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
            ConnGraph::new(n, &edges).unwrap()
        }
        Family::CliqueConn => ConnGraph::complete(n),
        Family::GridConn => {
            let cols = (n as f64).sqrt().ceil() as usize;
            let mut edges = Vec::new();
            for v in 0..n {
                if v % cols + 1 < cols && v + 1 < n {
                    edges.push((v, v + 1));
                }
                if v + cols < n {
                    edges.push((v, v + cols));
                }
            }
            ConnGraph::new(n, &edges).unwrap()
        }
        Family::TreeConn => {
            let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
            ConnGraph::new(n, &edges).unwrap()
        }
        Family::RandomBipartite => {
            let mut edges: Vec<(usize, usize)> =
                (1..n).map(|v| (rng.random_range(0..v), v)).collect();
            for _ in 0..n / 2 {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            ConnGraph::new(n, &edges).unwrap()
        }
    }
}

fn build_cov(params: &GenParams, rng: &mut ChaCha8Rng) -> RedBlueGraph {
    let nr = params.red_count;
    let nb = params.blue_count;
    match params.family {
        Family::Matching => {
            let red_adj: Vec<Vec<usize>> = (0..nr)
                .map(|r| if r < nb { vec![r] } else { vec![] })
                .collect();
            RedBlueGraph::from_red_adj(nr, nb, &red_adj).unwrap()
        }
        _ => {
            let cap = params.max_red_degree.min(nb);
            let blues: Vec<usize> = (0..nb).collect();
            let red_adj: Vec<Vec<usize>> = (0..nr)
                .map(|_| {
                    let deg = rng.random_range(0..=cap);
                    let mut pool = blues.clone();
                    pool.shuffle(rng);
                    pool.truncate(deg);
                    pool
                })
                .collect();
            RedBlueGraph::from_red_adj(nr, nb, &red_adj).unwrap()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_family_is_biclique_free() {
        let params = GenParams {
            family: Family::Matching,
            red_count: 5,
            blue_count: 5,
            max_red_degree: 3,
            k: 2,
            t: None,
            d_free: None,
            seed: 9,
        };
        let inst = generate(&params).unwrap();
        assert_eq!(inst.cov.edge_count(), 5);
        assert!(inst.cov.is_kdd_free(2, 1 << 20).unwrap());
    }

    #[test]
    fn same_seed_same_instance() {
        let params = GenParams {
            family: Family::RandomBipartite,
            red_count: 7,
            blue_count: 9,
            max_red_degree: 4,
            k: 3,
            t: None,
            d_free: None,
            seed: 1234,
        };
        assert_eq!(generate(&params).unwrap(), generate(&params).unwrap());
    }

    #[test]
    fn d_free_resampling_certifies() {
        let params = GenParams {
            family: Family::RandomBipartite,
            red_count: 6,
            blue_count: 8,
            max_red_degree: 4,
            k: 3,
            t: None,
            d_free: Some(2),
            seed: 7,
        };
        let inst = generate(&params).unwrap();
        assert!(inst.cov.is_kdd_free(2, 1 << 20).unwrap());
    }
}
