//! Tunable limits and defaults for the analysis pipeline.

/// Resource caps and search budgets.
///
/// The defaults are sized for the supported dimension range (ambient
/// dimensions at most eight) and keep every exact computation tractable.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Upper bound on both ambient dimensions `n` and `r`.
    pub max_dim: usize,
    /// Upper bound on the number of supplied generators.
    pub max_generators: usize,
    /// Upper bound on the number of maximal minors enumerated for the
    /// characteristic ideal.
    pub max_minors: usize,
    /// Number of random basis candidates tried when searching for a generic
    /// basis (the identity is always tried first).
    pub genericity_trials: usize,
    /// Maximum number of slicing rounds when accumulating the span of the
    /// characteristic variety.
    pub max_rounds: usize,
    /// Random linear cuts tried per codimension in each slicing round.
    pub trials_per_cut: usize,
    /// Number of consecutive rounds without growth required to declare the
    /// accumulated span stable.
    pub stable_rounds: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_dim: 8,
            max_generators: 512,
            max_minors: 20_000,
            genericity_trials: 32,
            max_rounds: 12,
            trials_per_cut: 2,
            stable_rounds: 3,
        }
    }
}
