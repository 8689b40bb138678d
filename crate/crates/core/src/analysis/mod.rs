//! Entropies, output-rate recursions and rate measurements.
//!
//! Rates are always output digits (base `D`) per input source symbol, and
//! the matching entropy bound is the per-symbol source entropy in base `D`.

mod compare;
pub(crate) mod entropy;
mod rates;
mod stats;

pub use compare::{
    compare_csv, compare_rows, e4_base_rate_formula, psi_squared_base_rate_formula, CompareRow,
    COMPARE_HEADER,
};
pub use entropy::shannon_entropy;
pub use rates::{
    base_rate, class_output_totals, empirical_rate, entropy_bound, exact_rate,
    fixed_point_residual, rate_report, sample_source, truncated_rate, ClassTotal, RateReport,
    MAX_EXACT_STRINGS, MAX_RECURSION_EVALUATIONS,
};
pub use stats::{chi_square_uniformity, ChiSquare};
