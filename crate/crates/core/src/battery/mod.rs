//! Seeded acceptance battery and the random generators behind it.
//!
//! Every criterion draws from its own ChaCha stream keyed by the seed and the
//! trial index, so results do not depend on thread scheduling.

mod criteria;
pub mod measures;
pub mod sets;

pub use criteria::{
    doubled_cube_set, exact_cover, run_all, run_criterion, symmetry_verdicts,
    uncertainty_trials, CriterionReport, TrialSummary, NAMES,
};
