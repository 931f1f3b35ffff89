//! Plain-Rust back end of the browser demo: JSON strings in, JSON strings
//! out. Kept free of wasm types so it is testable on any target.

use conncover_core::config::{Route, SolverConfig};
use conncover_core::epas::{
    build_conflict_graph, conflict_degree_bound, epas_solve, filter_purple, gen_colorings,
    max_weight_k_tree, sparsify, weights, ColoringMode, Epsilon,
};
use conncover_core::exact::exact_solve_by_t;
use conncover_core::format::{parse_instance, to_canonical_string, Metadata};
use conncover_core::generate::{Family, GenParams};
use conncover_core::oracle::{brute_force_decide, OracleLimits};
use conncover_core::pas::pas_outer;
use conncover_core::{Instance, Outcome, SearchMode, SolverError};
use serde::Serialize;

/// The browser works at desk scale; refuse anything that would freeze a tab.
const MAX_DEMO_REDS: usize = 14;

pub fn generate(
    family: &str,
    nr: usize,
    nb: usize,
    max_red_degree: usize,
    k: usize,
    seed: u64,
    d_free: Option<usize>,
) -> Result<String, String> {
    let family: Family = family.parse().map_err(|e: SolverError| e.to_string())?;
    if nr > MAX_DEMO_REDS || nb > 40 {
        return Err(format!(
            "demo sizes are capped at {MAX_DEMO_REDS} reds / 40 blues"
        ));
    }
    let params = GenParams {
        family,
        red_count: nr,
        blue_count: nb,
        max_red_degree,
        k,
        t: None,
        d_free,
        seed,
    };
    let inst = conncover_core::generate::generate(&params).map_err(|e| e.to_string())?;
    let meta = Metadata {
        name: None,
        d_hint: d_free,
        seed: Some(seed),
    };
    Ok(to_canonical_string(&inst, Some(meta)))
}

#[derive(Serialize)]
struct SolveView {
    algo: String,
    verdict: String,
    reason: Option<String>,
    vertices: Vec<usize>,
    size: Option<usize>,
    coverage: Option<usize>,
    covered_blues: Vec<usize>,
    size_ok: Option<bool>,
    connected: Option<bool>,
}

fn load(instance_json: &str) -> Result<Instance, String> {
    let (inst, _) = parse_instance(instance_json).map_err(|e| e.to_string())?;
    if inst.red_count() > MAX_DEMO_REDS {
        return Err(format!(
            "demo instances are capped at {MAX_DEMO_REDS} red vertices"
        ));
    }
    Ok(inst)
}

pub fn solve(
    instance_json: &str,
    algo: &str,
    epsilon: &str,
    d: usize,
    seed: u64,
    exhaustive: bool,
) -> Result<String, String> {
    let inst = load(instance_json)?;
    let config = if exhaustive {
        SolverConfig::completeness()
    } else {
        SolverConfig::randomized(seed)
    };
    let needs_eps = matches!(algo, "epas" | "pas");
    let eps = if needs_eps {
        Some(epsilon.parse::<Epsilon>().map_err(|e| e.to_string())?)
    } else {
        None
    };
    let outcome = match algo {
        "brute" => brute_force_decide(&inst, &OracleLimits::default()),
        "exact-t" => exact_solve_by_t(&inst, config.exact_mode, &config.limits),
        "epas" => epas_solve(&inst, eps.unwrap(), d.max(1), &config),
        "pas" => pas_outer(&inst, eps.unwrap(), d.max(1), &config),
        other => return Err(format!("unknown algorithm `{other}`")),
    }
    .map_err(|e| e.to_string())?;

    let view = match outcome {
        Outcome::Feasible(sol) => SolveView {
            algo: algo.to_string(),
            verdict: "solution".into(),
            reason: None,
            covered_blues: inst.cov.neighborhood(&sol.vertices),
            size: Some(sol.size()),
            coverage: Some(sol.coverage),
            size_ok: Some(sol.size() <= inst.k),
            connected: Some(sol.connected),
            vertices: sol.vertices,
        },
        Outcome::Infeasible(reason) => SolveView {
            algo: algo.to_string(),
            verdict: "infeasible".into(),
            reason: Some(reason.to_string()),
            vertices: vec![],
            size: None,
            coverage: None,
            covered_blues: vec![],
            size_ok: None,
            connected: None,
        },
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct PipelineView {
    small_target: bool,
    conflict_edges: Vec<(usize, usize)>,
    max_degree: usize,
    degree_bound: f64,
    purple: Vec<bool>,
    components: Vec<Vec<usize>>,
    survivors: Vec<usize>,
    weights: Vec<(usize, u64)>,
    tree: Option<Vec<usize>>,
    tree_weight: u64,
    coverage: Option<usize>,
    meets_relaxed_target: bool,
}

/// Walks the coverage-approximation pipeline with exhaustive colorings and
/// reports the stages of the winning one: conflict edges, the separation,
/// the surviving components, the surrogate weights and the chosen tree.
pub fn pipeline(instance_json: &str, epsilon: &str, d: usize) -> Result<String, String> {
    let inst = load(instance_json)?;
    let eps = epsilon.parse::<Epsilon>().map_err(|e| e.to_string())?;
    let d = d.max(1);
    if inst.k == 0 || inst.t == 0 {
        return Err("the pipeline view needs k >= 1 and t >= 1".into());
    }
    let mut config = SolverConfig::completeness();
    config.route = Route::ForcePipeline;
    config.limits.check_kdd = false; // the view is structural, any instance goes

    let conflict = build_conflict_graph(&inst, eps);
    let mut best: Option<(u64, Vec<usize>, Vec<bool>)> = None;
    let colorings = gen_colorings(&conflict, ColoringMode::Exhaustive, &config.limits)
        .map_err(|e| e.to_string())?;
    for coloring in colorings {
        let comps = filter_purple(&conflict, &coloring, inst.k);
        if comps.components.is_empty() {
            continue;
        }
        let spar = sparsify(&inst.cov, &comps);
        let w = weights(&spar);
        let host = inst.conn.induced(&spar.survivors);
        let found = max_weight_k_tree(
            &host,
            &w.weight,
            inst.k,
            &[],
            SearchMode::Exhaustive,
            &config.limits,
        )
        .map_err(|e| e.to_string())?;
        if let Some(local) = found {
            let verts: Vec<usize> = local.iter().map(|&p| spar.survivors[p]).collect();
            let total = w.total(&verts);
            if best
                .as_ref()
                .is_none_or(|(bw, bv, _)| total > *bw || (total == *bw && verts < *bv))
            {
                best = Some((total, verts, coloring.purple.clone()));
            }
        }
    }

    let purple = best
        .as_ref()
        .map(|(_, _, p)| p.clone())
        .unwrap_or_else(|| vec![true; inst.red_count()]);
    let coloring = conncover_core::epas::SeparationColoring {
        purple: purple.clone(),
    };
    let comps = filter_purple(&conflict, &coloring, inst.k);
    let spar = sparsify(&inst.cov, &comps);
    let w = weights(&spar);
    let (tree, tree_weight) = match &best {
        Some((total, verts, _)) => (Some(verts.clone()), *total),
        None => (None, 0),
    };
    let coverage = tree.as_ref().map(|t| inst.cov.coverage(t));
    let view = PipelineView {
        small_target: eps.small_target(inst.t, inst.k, d),
        conflict_edges: conflict.graph.edges(),
        max_degree: conflict.max_degree(),
        degree_bound: conflict_degree_bound(inst.k, d, eps.as_f64()),
        purple,
        components: comps.components.clone(),
        survivors: spar.survivors.clone(),
        weights: spar
            .survivors
            .iter()
            .copied()
            .zip(w.weight.iter().copied())
            .collect(),
        tree,
        tree_weight,
        coverage,
        meets_relaxed_target: coverage.is_some_and(|c| eps.coverage_acceptable(c, inst.t)),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_solve_pipeline_round_trip() {
        let file = generate("tree-conn", 6, 6, 3, 2, 11, Some(2)).unwrap();
        let solved = solve(&file, "exact-t", "", 0, 1, true).unwrap();
        let view: serde_json::Value = serde_json::from_str(&solved).unwrap();
        assert!(view["verdict"] == "solution" || view["verdict"] == "infeasible");

        let piped = pipeline(&file, "1/2", 2).unwrap();
        let view: serde_json::Value = serde_json::from_str(&piped).unwrap();
        assert!(view["purple"].as_array().unwrap().len() == 6);
    }

    #[test]
    fn pipeline_matches_direct_epas_weights() {
        let file = generate("matching", 5, 5, 3, 2, 3, None).unwrap();
        let piped = pipeline(&file, "1/2", 2).unwrap();
        let view: serde_json::Value = serde_json::from_str(&piped).unwrap();
        // disjoint neighborhoods: conflict graph is edgeless, weights are
        // the true degrees (all 1 for a matching)
        assert_eq!(view["conflict_edges"].as_array().unwrap().len(), 0);
        for pair in view["weights"].as_array().unwrap() {
            assert_eq!(pair[1], 1);
        }
    }

    #[test]
    fn demo_size_cap_is_enforced() {
        assert!(generate("matching", 40, 5, 3, 2, 0, None).is_err());
    }
}
