//! State construction: coherent, photon-added, and the two Kerr nonlinear
//! coherent-state families with their photon-added variants.
//!
//! Every family is built from its closed-form Fock expansion with a certified
//! truncation (see [`build`]). [`add_photons`] applies the deformed creation
//! operator directly and serves as the independent route for checking the
//! photon-added closed forms.

mod build;
mod fock;
mod ladder;
mod params;

use num_complex::Complex64;

pub(crate) use build::ln_norm_d;
pub use build::zeta;
pub use fock::{Family, FockState, FockStateJson, StateSpec};
pub use ladder::DeformedLadder;
pub use params::KerrParams;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// `e^{-|alpha|^2/2} alpha^n / sqrt(n!)`.
pub fn coherent(alpha: Complex64, dim: usize) -> Result<FockState> {
    StateSpec::coherent(alpha).build(dim, &Tolerances::default())
}

/// Photon-added coherent state, normalized through `L_m(-|alpha|^2) m!`.
pub fn pacs(alpha: Complex64, m: u32, dim: usize) -> Result<FockState> {
    StateSpec::pacs(alpha, m).build(dim, &Tolerances::default())
}

/// Eigenstate of `A = a f(n)`, normalized through `0F1(omega0/chi; (omega0-chi)/chi |alpha|^2)`.
pub fn nlcs_eigenstate(alpha: Complex64, params: KerrParams, dim: usize) -> Result<FockState> {
    StateSpec::nlcs(alpha, params).build(dim, &Tolerances::default())
}

/// Deformed displacement of the vacuum:
/// `c_n = (1-|zeta|^2)^{b/2} sqrt((b)_n/n!) zeta^n`, `b = omega0/chi`.
pub fn docs(alpha: Complex64, params: KerrParams, dim: usize) -> Result<FockState> {
    StateSpec::docs(alpha, params).build(dim, &Tolerances::default())
}

/// `(A^dagger)^m` on the eigenstate family, normalized through `2F3`.
pub fn dpancs_a(alpha: Complex64, m: u32, params: KerrParams, dim: usize) -> Result<FockState> {
    StateSpec::dpancs_a(alpha, m, params).build(dim, &Tolerances::default())
}

/// `(A^dagger)^m` on the displaced family, normalized through `2F1`.
pub fn dpancs_d(alpha: Complex64, m: u32, params: KerrParams, dim: usize) -> Result<FockState> {
    StateSpec::dpancs_d(alpha, m, params).build(dim, &Tolerances::default())
}

/// Normalized `(A^dagger)^m |state>` by repeated matrix application.
///
/// Whatever the creation operator pushes past the truncation is dropped, so
/// the state should carry enough levels to hold the photon-added tail.
pub fn add_photons(state: &FockState, m: u32, ladder: &DeformedLadder) -> Result<FockState> {
    if ladder.dimension() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: ladder.dimension(),
            got: state.dim(),
        });
    }
    let mut v = state.coefficients().to_vec();
    for _ in 0..m {
        v = ladder.create(&v);
    }
    let label = StateSpec {
        family: Family::Custom,
        m: state.label().m + m,
        params: Some(*ladder.params()),
        ..*state.label()
    };
    FockState::custom(v, label)
}
