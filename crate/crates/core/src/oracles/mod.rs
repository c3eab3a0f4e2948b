//! Independent estimates of the heat content used to validate the expansion.

mod rbm;
mod spectral;

pub use rbm::{
    exit_tail_probability, fold_into, rbm_heat_content, rbm_step, run_path, McScheme, McSpec, Reflector,
    MAX_REFLECTIONS,
};
pub use spectral::{eigen_integral, polygon_cos_integral, spectral_heat_content, Rect, SpectralSpec, SpectralTable};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    /// Truncation bound (spectral) or one standard error (Monte Carlo).
    pub err: f64,
    pub method: String,
}
