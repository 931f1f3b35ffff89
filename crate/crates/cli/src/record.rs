//! Run records and their CSV form.

pub const CSV_HEADER: &str =
    "algo,epsilon,d,seed,trials,verdict,size,coverage,wall_time_ms,opt_coverage,opt_size";

#[derive(Clone, Debug)]
pub struct RunRecord {
    pub algo: String,
    pub epsilon: Option<String>,
    pub d: Option<usize>,
    pub seed: u64,
    pub trials: Option<String>,
    pub verdict: Verdict,
    pub vertices: Vec<usize>,
    pub size: Option<usize>,
    pub coverage: Option<usize>,
    pub wall_time_ms: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Solution,
    Infeasible,
    ResourceError,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Solution => write!(f, "solution"),
            Verdict::Infeasible => write!(f, "infeasible"),
            Verdict::ResourceError => write!(f, "resource_error"),
        }
    }
}

fn opt_string<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl RunRecord {
    /// The nine record fields shared by `solve` output and bench rows.
    pub fn base_fields(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.algo,
            opt_string(&self.epsilon),
            opt_string(&self.d),
            self.seed,
            opt_string(&self.trials),
            self.verdict,
            opt_string(&self.size),
            opt_string(&self.coverage),
            self.wall_time_ms,
        )
    }

    pub fn csv_row(&self, opt_coverage: Option<usize>, opt_size: Option<usize>) -> String {
        format!(
            "{},{},{}",
            self.base_fields(),
            opt_string(&opt_coverage),
            opt_string(&opt_size),
        )
    }
}
