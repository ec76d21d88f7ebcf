//! Fixed thresholds and tolerances shared by the solvers, estimators and
//! the acceptance suite.

/// Exhaustive search refuses when the largest subset layer it may have to
/// enumerate, `max_{k <= cap} C(n, k)`, exceeds this.
pub const BRUTE_FORCE_MAX_LAYER: u128 = 1_000_000_000;

/// Largest universe (number of object pairs) a cover instance may hold.
pub const MAX_UNIVERSE_PAIRS: usize = 10_000_000;

/// Largest distinguisher table (candidates × universe pairs, in bits).
pub const MAX_COVER_BITS: u128 = 1 << 32;

/// Above this many universe pairs the greedy wrappers skip materializing the
/// cover instance and run the equivalent partition-refinement greedy.
pub const GREEDY_PARTITION_THRESHOLD: usize = 2_000_000;

/// Monte Carlo tolerances are `Z_SCORE * stderr + slack`.
pub const Z_SCORE: f64 = 4.0;

/// Finite-n slack for the non-distinguishing probability `q` and the
/// distance-profile frequencies.
pub const Q_SLACK: f64 = 0.005;

/// Finite-n slack for the joint failure probability `s_p`.
pub const SP_SLACK: f64 = 0.01;

/// Rejection attempts per graph before the configuration sampler gives up on
/// it and draws a fresh graph.
pub const REJECTION_BUDGET: u64 = 1_000_000;

/// Estimators report a degenerate regime when more than this fraction of
/// trials needed a fresh graph.
pub const DEGENERATE_FRACTION: f64 = 0.01;

/// Profile tables flag diameter contamination above this OTHER frequency.
pub const OTHER_BIN_LIMIT: f64 = 0.01;

/// Exponent below which the Suen bound is reported as an underflowed zero.
pub const SUEN_UNDERFLOW_EXPONENT: f64 = -700.0;

/// Environment variable capping the worker count (0 or unset = automatic).
pub const THREADS_ENV: &str = "EDIMLAB_THREADS";
