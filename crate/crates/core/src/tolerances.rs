//! Default numerical tolerances shared by tests, the experiment runner and
//! the acceptance suite. Experiment configs may override them per run.

/// Spectrum and dense-matrix comparisons.
pub const SPECTRUM: f64 = 1e-9;

/// Matrix identities that hold term by term (boson vs. logical form).
pub const EXACT_MATRIX: f64 = 1e-12;

/// Unitarity of emitted circuits and exact propagators.
pub const UNITARITY: f64 = 1e-10;

/// Success probabilities and stabilizer expectations.
pub const PROBABILITY: f64 = 1e-10;

/// Norm of prepared ancilla states.
pub const PREP_NORM: f64 = 1e-12;

/// Allowed `‖M − M†‖_max` for assembled Hamiltonians.
pub const HERMITICITY: f64 = 1e-12;

/// Amplitudes at or below this magnitude are omitted from state dumps.
pub const DUMP_THRESHOLD: f64 = 1e-12;
