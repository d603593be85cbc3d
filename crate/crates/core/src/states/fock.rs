use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::KerrParams;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// The state families this crate can construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Glauber coherent state.
    Coherent,
    /// Photon-added coherent state `(a^dagger)^m |alpha>`.
    Pacs,
    /// Eigenstate of the deformed annihilation operator.
    Nlcs,
    /// Deformed displacement of the vacuum.
    Docs,
    /// `(A^dagger)^m` applied to an `Nlcs` state.
    DpancsA,
    /// `(A^dagger)^m` applied to a `Docs` state.
    DpancsD,
    /// Anything built by hand or by operator application; not regenerable.
    Custom,
}

impl Family {
    pub const CONSTRUCTIBLE: [Family; 6] = [
        Family::Coherent,
        Family::Pacs,
        Family::Nlcs,
        Family::Docs,
        Family::DpancsA,
        Family::DpancsD,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Coherent => "coherent",
            Family::Pacs => "pacs",
            Family::Nlcs => "nlcs",
            Family::Docs => "docs",
            Family::DpancsA => "dpancs-a",
            Family::DpancsD => "dpancs-d",
            Family::Custom => "custom",
        }
    }

    /// Whether the family depends on `chi/omega0`.
    pub fn is_deformed(&self) -> bool {
        matches!(self, Family::Nlcs | Family::Docs | Family::DpancsA | Family::DpancsD)
    }

    /// Whether the family carries a photon-addition count `m`.
    pub fn adds_photons(&self) -> bool {
        matches!(self, Family::Pacs | Family::DpancsA | Family::DpancsD)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::CONSTRUCTIBLE
            .iter()
            .chain(std::iter::once(&Family::Custom))
            .find(|f| f.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown state family '{s}'")))
    }
}

/// Provenance of a state: which family and parameters produced it.
///
/// For every family except [`Family::Custom`] this is also a recipe, so a
/// state can be rebuilt at a larger truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub family: Family,
    pub alpha: Complex64,
    pub m: u32,
    pub params: Option<KerrParams>,
}

impl StateSpec {
    pub fn coherent(alpha: Complex64) -> Self {
        StateSpec {
            family: Family::Coherent,
            alpha,
            m: 0,
            params: None,
        }
    }

    pub fn pacs(alpha: Complex64, m: u32) -> Self {
        StateSpec {
            family: Family::Pacs,
            alpha,
            m,
            params: None,
        }
    }

    pub fn nlcs(alpha: Complex64, params: KerrParams) -> Self {
        StateSpec {
            family: Family::Nlcs,
            alpha,
            m: 0,
            params: Some(params),
        }
    }

    pub fn docs(alpha: Complex64, params: KerrParams) -> Self {
        StateSpec {
            family: Family::Docs,
            alpha,
            m: 0,
            params: Some(params),
        }
    }

    pub fn dpancs_a(alpha: Complex64, m: u32, params: KerrParams) -> Self {
        StateSpec {
            family: Family::DpancsA,
            alpha,
            m,
            params: Some(params),
        }
    }

    pub fn dpancs_d(alpha: Complex64, m: u32, params: KerrParams) -> Self {
        StateSpec {
            family: Family::DpancsD,
            alpha,
            m,
            params: Some(params),
        }
    }

    /// Generic constructor used by the CLI; rejects inconsistent combinations.
    pub fn new(family: Family, alpha: Complex64, m: u32, params: Option<KerrParams>) -> Result<Self> {
        let spec = StateSpec {
            family,
            alpha,
            m,
            params,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return Err(Error::InvalidParameter("alpha must be finite".into()));
        }
        if self.family == Family::Custom {
            return Ok(());
        }
        match (self.family.is_deformed(), self.params.is_some()) {
            (true, false) => {
                return Err(Error::InvalidParameter(format!(
                    "family {} requires chi/omega0",
                    self.family
                )))
            }
            (false, true) => {
                return Err(Error::InvalidParameter(format!(
                    "family {} is undeformed and takes no chi/omega0",
                    self.family
                )))
            }
            _ => {}
        }
        if !self.family.adds_photons() && self.m != 0 {
            return Err(Error::InvalidParameter(format!(
                "family {} takes no photon-addition count m",
                self.family
            )));
        }
        Ok(())
    }

    /// Build the state with at least `min_dim` levels and a certified tail.
    pub fn build(&self, min_dim: usize, tol: &Tolerances) -> Result<FockState> {
        super::build::build(self, min_dim, tol)
    }
}

/// A pure state as a truncated vector of Fock amplitudes `c_n`, `n < dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    coefficients: Vec<Complex64>,
    label: StateSpec,
    tail_bound: f64,
}

impl FockState {
    pub(crate) fn from_parts(coefficients: Vec<Complex64>, label: StateSpec, tail_bound: f64) -> Self {
        FockState {
            coefficients,
            label,
            tail_bound,
        }
    }

    /// A hand-built state. The vector is normalized and taken as exact.
    pub fn custom(coefficients: Vec<Complex64>, label: StateSpec) -> Result<Self> {
        let norm = coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::ZeroNorm);
        }
        Ok(FockState {
            coefficients: coefficients.into_iter().map(|c| c / norm).collect(),
            label: StateSpec {
                family: Family::Custom,
                ..label
            },
            tail_bound: 0.0,
        })
    }

    /// Fock state `|n>` embedded in `dim` levels.
    pub fn number_state(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: dim,
            });
        }
        let mut c = vec![Complex64::new(0.0, 0.0); dim];
        c[n] = Complex64::new(1.0, 0.0);
        Ok(FockState {
            coefficients: c,
            label: StateSpec {
                family: Family::Custom,
                alpha: Complex64::new(0.0, 0.0),
                m: n as u32,
                params: None,
            },
            tail_bound: 0.0,
        })
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn label(&self) -> &StateSpec {
        &self.label
    }

    /// Certified upper bound on the probability mass outside the truncation.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn is_regenerable(&self) -> bool {
        self.label.family != Family::Custom
    }

    /// This state with at least `min_dim` levels, rebuilding from the label
    /// when necessary.
    pub fn extended(&self, min_dim: usize, tol: &Tolerances) -> Result<FockState> {
        if min_dim <= self.dim() {
            return Ok(self.clone());
        }
        if !self.is_regenerable() {
            return Err(Error::TruncationInsufficient {
                needed: min_dim,
                available: self.dim(),
            });
        }
        self.label.build(min_dim, tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FockStateJson::from(self)).expect("state serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: FockStateJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("state JSON: {e}")))?;
        raw.try_into()
    }
}

/// Wire format: `{family, alpha_re, alpha_im, m, chi_over_omega0, dim, coefficients: [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FockStateJson {
    pub family: Family,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub m: u32,
    pub chi_over_omega0: Option<f64>,
    pub dim: usize,
    pub coefficients: Vec<[f64; 2]>,
}

impl From<&FockState> for FockStateJson {
    fn from(s: &FockState) -> Self {
        FockStateJson {
            family: s.label.family,
            alpha_re: s.label.alpha.re,
            alpha_im: s.label.alpha.im,
            m: s.label.m,
            chi_over_omega0: s.label.params.map(|p| p.chi_over_omega0()),
            dim: s.dim(),
            coefficients: s.coefficients.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<FockStateJson> for FockState {
    type Error = Error;

    fn try_from(raw: FockStateJson) -> Result<Self> {
        if raw.coefficients.len() != raw.dim {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                got: raw.coefficients.len(),
            });
        }
        let params = raw.chi_over_omega0.map(KerrParams::new).transpose()?;
        let label = StateSpec {
            family: raw.family,
            alpha: Complex64::new(raw.alpha_re, raw.alpha_im),
            m: raw.m,
            params,
        };
        label.validate()?;
        let coefficients: Vec<Complex64> = raw
            .coefficients
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        let norm_sqr: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
        if !(norm_sqr > 0.0) {
            return Err(Error::ZeroNorm);
        }
        Ok(FockState {
            coefficients,
            label,
            tail_bound: (1.0 - norm_sqr).max(0.0),
        })
    }
}
