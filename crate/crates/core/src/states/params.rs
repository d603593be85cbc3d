use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Kerr deformation, fixed by the single ratio `chi/omega0`.
///
/// With `Omega = omega0 - chi` the deformation function is
/// `f(n)^2 = 1 + n chi/Omega`, so that `H = hbar Omega n f(n)^2` reproduces
/// `hbar omega0 [(1 - chi/omega0) n + (chi/omega0) n^2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct KerrParams {
    chi_over_omega0: f64,
}

impl KerrParams {
    pub fn new(chi_over_omega0: f64) -> Result<Self> {
        if !(chi_over_omega0 > 0.0 && chi_over_omega0 < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "chi/omega0 must lie in the open interval (0, 1), got {chi_over_omega0}"
            )));
        }
        Ok(KerrParams { chi_over_omega0 })
    }

    pub fn chi_over_omega0(&self) -> f64 {
        self.chi_over_omega0
    }

    /// `(omega0 - chi)/chi`, always positive.
    pub fn omega_over_chi(&self) -> f64 {
        (1.0 - self.chi_over_omega0) / self.chi_over_omega0
    }

    /// `omega0/chi`, always greater than one.
    pub fn omega0_over_chi(&self) -> f64 {
        1.0 / self.chi_over_omega0
    }

    /// `f(n)^2 = 1 + n chi/(omega0 - chi)`.
    pub fn deformation_sq(&self, n: usize) -> f64 {
        1.0 + n as f64 / self.omega_over_chi()
    }

    pub fn deformation(&self, n: usize) -> f64 {
        self.deformation_sq(n).sqrt()
    }
}

impl TryFrom<f64> for KerrParams {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        KerrParams::new(v)
    }
}

impl From<KerrParams> for f64 {
    fn from(p: KerrParams) -> f64 {
        p.chi_over_omega0
    }
}
