//! Numerical policy knobs shared across the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::SeriesTolerance;

/// Largest Fock dimension a constructor may grow to.
pub const DEFAULT_MAX_DIM: usize = 16_384;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Convergence policy for every infinite series.
    pub series: SeriesTolerance,
    /// Certified bound on the probability mass beyond the truncation.
    pub tail_tol: f64,
    /// Hard cap on the Fock dimension of constructed states.
    pub max_dim: usize,
    /// Completeness deficit `1 - sum_k |<alpha,k|psi>|^2` accepted when
    /// cutting the Wigner series.
    pub wigner_deficit_tol: f64,
    /// Largest displaced-number index the Wigner series may reach.
    pub max_wigner_k: usize,
    /// Poisson tail of the coherent-state kernel that the Husimi overlap
    /// must cover.
    pub kernel_tail_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            series: SeriesTolerance::default(),
            tail_tol: 1e-14,
            max_dim: DEFAULT_MAX_DIM,
            wigner_deficit_tol: 1e-10,
            max_wigner_k: 4096,
            kernel_tail_tol: 1e-14,
        }
    }
}

/// Named tolerance presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Default,
    Strict,
    Fast,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "default" => Ok(Profile::Default),
            "strict" => Ok(Profile::Strict),
            "fast" => Ok(Profile::Fast),
            other => Err(Error::InvalidParameter(format!(
                "unknown tolerance profile '{other}' (expected default, strict or fast)"
            ))),
        }
    }
}

impl Tolerances {
    pub fn profile(profile: Profile) -> Self {
        let base = Tolerances::default();
        match profile {
            Profile::Default => base,
            Profile::Strict => Tolerances {
                series: SeriesTolerance {
                    rel_tol: 1e-15,
                    ..base.series
                },
                tail_tol: 1e-16,
                wigner_deficit_tol: 1e-13,
                kernel_tail_tol: 1e-16,
                ..base
            },
            Profile::Fast => Tolerances {
                series: SeriesTolerance {
                    rel_tol: 1e-9,
                    ..base.series
                },
                tail_tol: 1e-11,
                wigner_deficit_tol: 1e-8,
                kernel_tail_tol: 1e-11,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.series.validate()?;
        for (name, v) in [
            ("tail_tol", self.tail_tol),
            ("wigner_deficit_tol", self.wigner_deficit_tol),
            ("kernel_tail_tol", self.kernel_tail_tol),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if self.max_dim == 0 || self.max_wigner_k == 0 {
            return Err(Error::InvalidParameter("dimension caps must be positive".into()));
        }
        Ok(())
    }
}
