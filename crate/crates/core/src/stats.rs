//! Photon-number statistics: distributions, moments and the Mandel parameter.
//!
//! The Mandel parameter here is `Q = Var(n)/<n>`, so a Poissonian
//! distribution gives `Q = 1`, sub-Poissonian light `Q < 1` and
//! super-Poissonian light `Q > 1`. The standard `Q - 1` is available as
//! [`standard_q`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{hyp_pfq, ln_factorials, ln_pochhammer, SeriesTolerance};
use crate::states::{ln_norm_d, zeta, Family, FockState, KerrParams, StateSpec};
use crate::tolerance::Tolerances;
use crate::Complex64;

/// Missing mass tolerated before a closed-form distribution is reported as
/// not normalizable within its `kmax`.
const MASS_CHECK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    pub probabilities: Vec<f64>,
    pub source_label: StateSpec,
}

impl PhotonDistribution {
    pub fn total_mass(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// `<n>`, normalized by the captured mass.
    pub fn mean(&self) -> f64 {
        let mass = self.total_mass();
        self.probabilities
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum::<f64>()
            / mass
    }

    /// `<n^2> - <n>^2`, accumulated as a centered second moment.
    pub fn variance(&self) -> f64 {
        let mass = self.total_mass();
        let mean = self.mean();
        self.probabilities
            .iter()
            .enumerate()
            .map(|(k, p)| (k as f64 - mean).powi(2) * p)
            .sum::<f64>()
            / mass
    }

    pub fn mandel_q(&self) -> Result<f64> {
        let mean = self.mean();
        if !(mean > 0.0) {
            return Err(Error::ZeroMeanPhotonNumber);
        }
        Ok(self.variance() / mean)
    }
}

/// `P_k = |c_k|^2`.
pub fn photon_distribution(state: &FockState) -> PhotonDistribution {
    PhotonDistribution {
        probabilities: state.probabilities(),
        source_label: *state.label(),
    }
}

/// `Var(n)/<n>` of the state.
pub fn mandel_q(state: &FockState) -> Result<f64> {
    photon_distribution(state).mandel_q()
}

/// Standard Mandel parameter `Var(n)/<n> - 1`.
pub fn standard_q(q: f64) -> f64 {
    q - 1.0
}

/// `e * ln_x` with the convention `0 * ln 0 = 0`.
fn ln_pow(ln_x: f64, e: usize) -> f64 {
    if e == 0 {
        0.0
    } else {
        e as f64 * ln_x
    }
}

fn finish(probabilities: Vec<f64>, kmax: usize, label: StateSpec) -> Result<PhotonDistribution> {
    let mass: f64 = probabilities.iter().sum();
    if !((1.0 - mass).abs() < MASS_CHECK) {
        return Err(Error::NotNormalizable { kmax, mass });
    }
    Ok(PhotonDistribution {
        probabilities,
        source_label: label,
    })
}

fn check_kmax(m: u32, kmax: usize) -> Result<()> {
    if kmax < m as usize {
        return Err(Error::InvalidParameter(format!(
            "kmax = {kmax} must be at least m = {m}"
        )));
    }
    Ok(())
}

/// Photon-number distribution of the deformed photon-added eigenstate family
/// from its explicit formula, for `k = 0..=kmax`:
///
/// `P_k = r^{k-m} k! (b)_k |alpha|^{2(k-m)} / (N m! (b)_m [(k-m)!]^2 [(b)_{k-m}]^2)`
///
/// with `r = (omega0-chi)/chi`, `b = omega0/chi` and
/// `N = 2F3(b+m, m+1; b, b, 1; r |alpha|^2)`. Entries with `k < m` are zero.
/// The result is not renormalized: if the captured mass falls short of one
/// the call fails with [`Error::NotNormalizable`].
pub fn closed_form_distribution_a(
    alpha: Complex64,
    m: u32,
    params: KerrParams,
    kmax: usize,
) -> Result<PhotonDistribution> {
    check_kmax(m, kmax)?;
    let (r, b) = (params.omega_over_chi(), params.omega0_over_chi());
    let mf = m as f64;
    let x = alpha.norm_sqr();
    let ln_n = hyp_pfq(&[b + mf, mf + 1.0], &[b, b, 1.0], r * x, &SeriesTolerance::default())?.ln();
    let lf = ln_factorials(kmax + 1);
    let ln_a = alpha.norm().ln();
    let mu = m as usize;
    let base = -ln_n - lf[mu] - ln_pochhammer(b, m)?;
    let mut p = vec![0.0; kmax + 1];
    for k in mu..=kmax {
        let d = k - mu;
        let ln_p = base + ln_pow(r.ln(), d) + lf[k] + ln_pochhammer(b, k as u32)? + 2.0 * ln_pow(ln_a, d)
            - 2.0 * lf[d]
            - 2.0 * ln_pochhammer(b, d as u32)?;
        p[k] = ln_p.exp();
    }
    finish(p, kmax, StateSpec::dpancs_a(alpha, m, params))
}

/// Photon-number distribution of the deformed photon-added displaced family
/// from its explicit formula, for `k = 0..=kmax`:
///
/// `P_k = k! (b)_k |zeta|^{2(k-m)} / (N m! (b)_m [(k-m)!]^2)`
///
/// with `N = 2F1(b+m, m+1; 1; |zeta|^2)`.
pub fn closed_form_distribution_d(
    alpha: Complex64,
    m: u32,
    params: KerrParams,
    kmax: usize,
) -> Result<PhotonDistribution> {
    check_kmax(m, kmax)?;
    let b = params.omega0_over_chi();
    let s2 = zeta(alpha, params.omega_over_chi()).norm_sqr();
    let ln_n = ln_norm_d(alpha.norm() / params.omega_over_chi().sqrt(), b, m);
    let lf = ln_factorials(kmax + 1);
    let mu = m as usize;
    let base = -ln_n - lf[mu] - ln_pochhammer(b, m)?;
    let mut p = vec![0.0; kmax + 1];
    for k in mu..=kmax {
        let d = k - mu;
        let ln_p = base + lf[k] + ln_pochhammer(b, k as u32)? + ln_pow(s2.ln(), d) - 2.0 * lf[d];
        p[k] = ln_p.exp();
    }
    finish(p, kmax, StateSpec::dpancs_d(alpha, m, params))
}

/// Mandel parameter over a list of real amplitudes for one family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MandelSweep {
    pub family: Family,
    pub m: u32,
    pub params: Option<KerrParams>,
    pub alphas: Vec<f64>,
    /// `None` where the point failed; the reason is in `errors`.
    pub q_values: Vec<Option<f64>>,
    #[serde(skip)]
    pub errors: Vec<Option<Error>>,
}

impl MandelSweep {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = (f64, &Error)> {
        self.alphas
            .iter()
            .zip(&self.errors)
            .filter_map(|(a, e)| e.as_ref().map(|e| (*a, e)))
    }
}

/// `Q` at `alpha = 0`: the number state `|m>` gives 0 for `m >= 1`; for
/// `m = 0` the vacuum is excluded and the `alpha -> 0+` limit, 1, is used.
fn q_at_origin(m: u32) -> f64 {
    if m == 0 {
        1.0
    } else {
        0.0
    }
}

/// Build the state at each real `alpha` and take its Mandel parameter.
///
/// Points are evaluated in parallel; output order follows `alphas`. A point
/// that fails keeps its error and the sweep continues.
pub fn mandel_sweep(
    family: Family,
    m: u32,
    params: Option<KerrParams>,
    alphas: &[f64],
    tol: &Tolerances,
) -> Result<MandelSweep> {
    StateSpec::new(family, Complex64::new(1.0, 0.0), m, params)?;
    tol.validate()?;
    if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a >= 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "sweep amplitudes must be finite and nonnegative, got {a}"
        )));
    }
    let results: Vec<Result<f64>> = alphas
        .par_iter()
        .map(|&a| {
            if a == 0.0 {
                return Ok(q_at_origin(m));
            }
            let spec = StateSpec::new(family, Complex64::new(a, 0.0), m, params)?;
            mandel_q(&spec.build(1, tol)?)
        })
        .collect();
    let (q_values, errors) = results
        .into_iter()
        .map(|r| match r {
            Ok(q) => (Some(q), None),
            Err(e) => (None, Some(e)),
        })
        .unzip();
    Ok(MandelSweep {
        family,
        m,
        params,
        alphas: alphas.to_vec(),
        q_values,
        errors,
    })
}
