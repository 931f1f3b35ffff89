//! Solver configuration: search modes, routing overrides and resource limits.

/// How a search over random trials (colorings, color-coding runs) proceeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Seeded independent trials; `trials = None` selects the per-algorithm
    /// default, capped by [`Limits::max_trials`]. Trial `i` derives its RNG
    /// from `seed ^ i`, so results are reproducible and schedule-independent.
    Randomized { trials: Option<u64>, seed: u64 },
    /// Enumerate the whole trial space. Guarantees completeness but is only
    /// viable at small scale; guarded by [`Limits`].
    Exhaustive,
}

/// Overrides the small-target routing decision of the approximation drivers.
/// `Auto` follows the threshold test; the forced variants exist for testing
/// and benchmarking both code paths on the same inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Auto,
    ForceExact,
    ForcePipeline,
}

/// Hard ceilings. Exceeding one yields an explicit resource error, never a
/// silently degraded verdict.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Upper bound on enumerated colorings (`t^|B|` blue colorings for the
    /// exact solver, `2^|R|` separation colorings for the pipeline).
    pub max_exhaustive_colorings: u64,
    /// Upper bound on enumerated vertex subsets (exhaustive tree search,
    /// cover-seed enumeration).
    pub max_enumerated_subsets: u64,
    /// Maximum terminal count for the out-tree dynamic program.
    pub max_terminals: usize,
    /// Maximum color classes for the color-coding tree search.
    pub max_color_classes: usize,
    /// Cap applied to randomized trial counts.
    pub max_trials: u64,
    /// Budget for the biclique-freeness check (`C(|R|, d)` combinations).
    pub kdd_check_budget: u64,
    /// Whether approximation drivers verify biclique-freeness up front.
    pub check_kdd: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_exhaustive_colorings: 5_000_000,
            max_enumerated_subsets: 5_000_000,
            max_terminals: 20,
            max_color_classes: 20,
            max_trials: 20_000,
            kdd_check_budget: 2_000_000,
            check_kdd: true,
        }
    }
}

/// Bundle of search modes for the solver stack: the exact solver's coloring
/// trials, the pipeline's separation colorings, and the tree search.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub exact_mode: SearchMode,
    pub coloring_mode: SearchMode,
    pub tree_mode: SearchMode,
    pub route: Route,
    pub limits: Limits,
}

impl SolverConfig {
    /// Seeded randomized trials everywhere, with per-algorithm defaults.
    pub fn randomized(seed: u64) -> Self {
        let mode = SearchMode::Randomized { trials: None, seed };
        SolverConfig {
            exact_mode: mode,
            coloring_mode: mode,
            tree_mode: mode,
            route: Route::Auto,
            limits: Limits::default(),
        }
    }

    /// Exhaustive everywhere: on a feasible instance the solvers are
    /// guaranteed to find a witness (subject to resource limits).
    pub fn completeness() -> Self {
        SolverConfig {
            exact_mode: SearchMode::Exhaustive,
            coloring_mode: SearchMode::Exhaustive,
            tree_mode: SearchMode::Exhaustive,
            route: Route::Auto,
            limits: Limits::default(),
        }
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig::randomized(0)
    }
}
