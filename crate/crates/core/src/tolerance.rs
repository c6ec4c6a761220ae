use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every decision procedure.
///
/// All comparisons are relative to the natural scale of the quantity being
/// compared (the anchor norm, the direction norm, the operator norm).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Below this norm a vector is treated as zero.
    pub eps_zero: f64,
    /// Norm-equality, functional activity and deduplication slack.
    pub eps_eq: f64,
    /// Width of the band in which a verdict is reported inconclusive.
    pub eps_band: f64,
    /// Membership slack for norm attainment sets.
    pub eps_attain: f64,
    /// Dip threshold used by the golden-section orthogonality oracles.
    pub eps_oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_zero: 1e-12,
            eps_eq: 1e-9,
            eps_band: 1e-7,
            eps_attain: 1e-8,
            eps_oracle: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn is_valid(&self) -> bool {
        [
            self.eps_zero,
            self.eps_eq,
            self.eps_band,
            self.eps_attain,
            self.eps_oracle,
        ]
        .iter()
        .all(|t| t.is_finite() && *t > 0.0)
    }
}
