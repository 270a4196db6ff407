use serde::{Deserialize, Serialize};

/// Numerical settings shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Relative truncation tolerance for power series.
    pub target_rel_tol: f64,
    pub series_max_terms: usize,
    /// Argument above which the power series for `I` is replaced by the
    /// continued-fraction route. `None` means `30 + |nu|`.
    pub switch_x: Option<f64>,
    /// Orders closer than this to an integer use the integer-order K series.
    pub near_integer_eps: f64,
    /// Absolute tolerance of the adaptive quadrature.
    pub quad_abs_tol: f64,
    /// Relative tolerance of the adaptive quadrature.
    pub quad_rel_tol: f64,
    pub quad_max_panels: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target_rel_tol: 1e-13,
            series_max_terms: 500,
            switch_x: None,
            near_integer_eps: 1e-6,
            quad_abs_tol: 1e-300,
            quad_rel_tol: 1e-13,
            quad_max_panels: 4000,
        }
    }
}

impl EvalConfig {
    pub fn switch_x_for(&self, nu: f64) -> f64 {
        self.switch_x.unwrap_or(30.0 + nu.abs())
    }

    /// Checks that every tolerance is positive.
    pub fn validate(&self) -> crate::Result<()> {
        let ok = self.target_rel_tol > 0.0
            && self.series_max_terms > 0
            && self.switch_x.is_none_or(|s| s > 0.0)
            && self.near_integer_eps > 0.0
            && self.quad_abs_tol > 0.0
            && self.quad_rel_tol > 0.0
            && self.quad_max_panels > 0;
        if ok {
            Ok(())
        } else {
            crate::error::domain("EvalConfig tolerances must be strictly positive")
        }
    }
}

/// Settings for the brute-force reference oracles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    /// Largest finite-difference step; the tableau shrinks it geometrically.
    pub fd_step: f64,
    /// Number of rows in the Richardson tableau.
    pub richardson_levels: usize,
    pub quad_abs_tol: f64,
    pub quad_rel_tol: f64,
    /// Budget on integrand evaluations in the tanh-sinh oracle.
    pub max_panels: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            fd_step: 0.2,
            richardson_levels: 10,
            quad_abs_tol: 1e-12,
            quad_rel_tol: 1e-10,
            max_panels: 200_000,
        }
    }
}
