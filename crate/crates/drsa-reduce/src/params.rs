//! Reduction parameter schedule.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest tile scale at which every gadget's measured cost table is stable
/// (constant offsets across scales); established by the calibration sweep in
/// the gadget verifier and re-checked by the acceptance suite.
pub const ALPHA_MIN: i64 = 4;

/// Tile and cascade sizes for one compiled reduction. The default schedule
/// grows polynomially in n*m; desk-scale runs override the fields, subject
/// to `alpha >= ALPHA_MIN`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub alpha: i64,
    pub beta: i64,
    /// Inclusive bounds for splitter cascade sizes; the depth solver picks
    /// each splitter's size inside them.
    pub gamma_lo: i64,
    pub gamma_hi: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("alpha-too-small: alpha {alpha} is below the calibrated minimum {min}")]
    AlphaTooSmall { alpha: i64, min: i64 },
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

impl Parameters {
    /// Default schedule: alpha = (nm)^4, beta = 20(nm)^2 and cascade sizes
    /// strictly between (nm)^3 and 4(nm)^3.
    pub fn default_schedule(n: usize, m: usize) -> Result<Parameters, ParamError> {
        let nm = (n as i64) * (m as i64);
        let alpha = nm.pow(4);
        if alpha < ALPHA_MIN {
            return Err(ParamError::AlphaTooSmall {
                alpha,
                min: ALPHA_MIN,
            });
        }
        Ok(Parameters {
            alpha,
            beta: 20 * nm.pow(2),
            gamma_lo: nm.pow(3) + 1,
            gamma_hi: 4 * nm.pow(3) - 1,
        })
    }

    pub fn with_overrides(
        alpha: i64,
        beta: i64,
        gamma_lo: i64,
        gamma_hi: i64,
    ) -> Result<Parameters, ParamError> {
        if alpha < ALPHA_MIN {
            return Err(ParamError::AlphaTooSmall {
                alpha,
                min: ALPHA_MIN,
            });
        }
        if beta < 1 || gamma_lo < 1 || gamma_hi < gamma_lo {
            return Err(ParamError::Invalid(format!(
                "beta {} gamma [{},{}]",
                beta, gamma_lo, gamma_hi
            )));
        }
        Ok(Parameters {
            alpha,
            beta,
            gamma_lo,
            gamma_hi,
        })
    }

    /// Tile side length.
    pub fn tile(&self) -> i64 {
        4 * self.alpha + 2
    }
}

/// Cells per grid side for an n-variable, m-clause reduction.
pub fn grid_side(n: usize, m: usize) -> usize {
    1 + m + 2 * n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_scale_values() {
        let p = Parameters::default_schedule(3, 5).unwrap();
        assert_eq!(p.alpha, 50625);
        assert_eq!(p.beta, 4500);
        assert_eq!(grid_side(3, 5), 12);
        assert!(p.gamma_lo > 3375 && p.gamma_hi < 13500);
    }

    #[test]
    fn small_schedule() {
        let p = Parameters::default_schedule(2, 2).unwrap();
        assert_eq!(p.alpha, 256);
        assert_eq!(p.beta, 320);
    }

    #[test]
    fn unit_schedule_rejected() {
        assert!(matches!(
            Parameters::default_schedule(1, 1),
            Err(ParamError::AlphaTooSmall { alpha: 1, .. })
        ));
    }
}
