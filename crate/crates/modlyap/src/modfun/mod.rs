//! Weakly holomorphic modular functions given by truncated q-expansions.

mod admissible;
mod eval;
mod series;

pub use admissible::{check_admissible, sup_norm, AdmissibilityReport};
pub use eval::{eval_arc, eval_q, eval_tau, reduce_to_fundamental_domain};
pub use series::{const_series, j_coefficients_exact, j_series, q_max, FourierSeries};
