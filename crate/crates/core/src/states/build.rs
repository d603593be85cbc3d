//! Certified construction of every state family from its closed form.
//!
//! Each family is written as `c_{m+n} = t_n / sqrt(N)` where `t_0 = 1`, the
//! ratio `|t_{n+1}/t_n|` is known in closed form and nonincreasing in `n`,
//! and the squared norm `N = sum_n |t_n|^2` is a closed-form special
//! function. Amplitudes are accumulated in log-magnitude with an exact phase
//! `e^{i n phi}`, so large dimensions neither overflow nor drift.
//!
//! Because `p_{n+1}/p_n` is nonincreasing, once `rho = p_{n+1}/p_n < 1` the
//! mass beyond index `n` is bounded by `p_n rho/(1 - rho)`. Construction stops
//! at the first dimension where that bound drops below `tail_tol`.

use num_complex::Complex64;

use super::fock::{Family, FockState, StateSpec};
use crate::error::{Error, Result};
use crate::specfun::{hyp_pfq, laguerre};
use crate::tolerance::Tolerances;

/// Deviation of the coefficient sum from the closed-form norm that is
/// treated as a bug rather than roundoff.
const NORM_CHECK: f64 = 1e-10;

struct Recipe {
    /// Index of the first nonzero amplitude.
    offset: usize,
    /// `ln |t_{n+1}/t_n|`.
    ln_ratio: Box<dyn Fn(usize) -> f64>,
    /// `ln N`.
    ln_norm: f64,
    /// Phase angle `phi` in `t_n ~ e^{i n phi}`.
    phase: f64,
}

/// `zeta(alpha) = e^{i phi} tanh(|alpha| / sqrt((omega0-chi)/chi))`.
pub fn zeta(alpha: Complex64, omega_over_chi: f64) -> Complex64 {
    let (r, phi) = alpha.to_polar();
    Complex64::from_polar((r / omega_over_chi.sqrt()).tanh(), phi)
}

/// `ln 2F1(b+m, m+1; 1; tanh^2 theta)` via Euler's transformation
/// `(1-s^2)^{-b-2m} 2F1(1-b-m, -m; 1; s^2)`, a degree-m polynomial with
/// positive terms, and `ln(1 - tanh^2) = -2 ln cosh` without cancellation.
pub(crate) fn ln_norm_d(theta: f64, b: f64, m: u32) -> f64 {
    let mf = m as f64;
    let ln_sech2 = -2.0 * (theta + (-2.0 * theta).exp().ln_1p() - std::f64::consts::LN_2);
    let s2 = theta.tanh().powi(2);
    let (mut term, mut poly) = (1.0, 1.0);
    for k in 0..m {
        let kf = k as f64;
        term *= (1.0 - b - mf + kf) * (kf - mf) / ((kf + 1.0) * (kf + 1.0)) * s2;
        poly += term;
    }
    -(b + 2.0 * mf) * ln_sech2 + poly.ln()
}

fn recipe(spec: &StateSpec, tol: &Tolerances) -> Result<Recipe> {
    let offset = spec.m as usize;
    let m = spec.m as f64;
    let (amp, phase) = spec.alpha.to_polar();
    let ln_amp = amp.ln();
    let x = amp * amp;
    let series = &tol.series;

    let recipe = match spec.family {
        Family::Coherent => Recipe {
            offset: 0,
            ln_ratio: Box::new(move |n| ln_amp - 0.5 * ((n + 1) as f64).ln()),
            ln_norm: x,
            phase,
        },
        Family::Pacs => {
            // with t_0 = 1: N = e^{|alpha|^2} L_m(-|alpha|^2)
            let lag = laguerre(spec.m, -x)?;
            Recipe {
                offset,
                ln_ratio: Box::new(move |n| {
                    let nf = n as f64;
                    ln_amp + 0.5 * (nf + m + 1.0).ln() - (nf + 1.0).ln()
                }),
                ln_norm: x + lag.ln(),
                phase,
            }
        }
        Family::Nlcs => {
            let p = spec.params.expect("validated");
            let (r, b) = (p.omega_over_chi(), p.omega0_over_chi());
            let norm = hyp_pfq(&[], &[b], r * x, series)?;
            Recipe {
                offset: 0,
                ln_ratio: Box::new(move |n| {
                    let nf = n as f64;
                    ln_amp + 0.5 * (r.ln() - (nf + 1.0).ln() - (b + nf).ln())
                }),
                ln_norm: norm.ln(),
                phase,
            }
        }
        Family::Docs => {
            let p = spec.params.expect("validated");
            let b = p.omega0_over_chi();
            let z = zeta(spec.alpha, p.omega_over_chi());
            let s = z.norm();
            let ln_s = s.ln();
            Recipe {
                offset: 0,
                ln_ratio: Box::new(move |n| {
                    let nf = n as f64;
                    ln_s + 0.5 * ((b + nf).ln() - (nf + 1.0).ln())
                }),
                // sum_n (b)_n |zeta|^{2n}/n! = (1 - |zeta|^2)^{-b}
                ln_norm: ln_norm_d(spec.alpha.norm() / p.omega_over_chi().sqrt(), b, 0),
                phase: z.arg(),
            }
        }
        Family::DpancsA => {
            let p = spec.params.expect("validated");
            let (r, b) = (p.omega_over_chi(), p.omega0_over_chi());
            let norm = hyp_pfq(&[b + m, m + 1.0], &[b, b, 1.0], r * x, series)?;
            Recipe {
                offset,
                ln_ratio: Box::new(move |n| {
                    let nf = n as f64;
                    ln_amp + 0.5 * r.ln() + 0.5 * ((m + 1.0 + nf).ln() + (b + m + nf).ln())
                        - (nf + 1.0).ln()
                        - (b + nf).ln()
                }),
                ln_norm: norm.ln(),
                phase,
            }
        }
        Family::DpancsD => {
            let p = spec.params.expect("validated");
            let b = p.omega0_over_chi();
            let z = zeta(spec.alpha, p.omega_over_chi());
            let s = z.norm();
            let ln_s = s.ln();
            let norm_ln = ln_norm_d(spec.alpha.norm() / p.omega_over_chi().sqrt(), b, spec.m);
            Recipe {
                offset,
                ln_ratio: Box::new(move |n| {
                    let nf = n as f64;
                    ln_s + 0.5 * ((m + 1.0 + nf).ln() + (b + m + nf).ln()) - (nf + 1.0).ln()
                }),
                ln_norm: norm_ln,
                phase: z.arg(),
            }
        }
        Family::Custom => {
            return Err(Error::InvalidParameter(
                "custom states have no closed form to build from".into(),
            ))
        }
    };
    if !recipe.ln_norm.is_finite() {
        return Err(Error::Overflow("normalization constant"));
    }
    Ok(recipe)
}

pub(crate) fn build(spec: &StateSpec, min_dim: usize, tol: &Tolerances) -> Result<FockState> {
    spec.validate()?;
    tol.validate()?;
    let offset = spec.m as usize;
    let min_dim = min_dim.max(offset + 1);
    if min_dim > tol.max_dim {
        return Err(Error::InvalidParameter(format!(
            "requested dimension {min_dim} exceeds the cap {}",
            tol.max_dim
        )));
    }

    // alpha = 0 is the Fock state |m> for every family (zeta(0) = 0 as well)
    if spec.alpha.norm() == 0.0 {
        let mut c = vec![Complex64::new(0.0, 0.0); min_dim];
        c[offset] = Complex64::new(1.0, 0.0);
        return Ok(FockState::from_parts(c, *spec, 0.0));
    }

    let recipe = recipe(spec, tol)?;
    debug_assert_eq!(recipe.offset, offset);
    let mut coefficients = vec![Complex64::new(0.0, 0.0); offset];
    let mut ln_t = 0.0;
    let mut n = 0usize;
    let tail_bound = loop {
        let ln_p = 2.0 * ln_t - recipe.ln_norm;
        coefficients.push(Complex64::from_polar((0.5 * ln_p).exp(), n as f64 * recipe.phase));

        let ln_r = (recipe.ln_ratio)(n);
        let rho = (2.0 * ln_r).exp();
        let bound = if rho < 1.0 {
            ln_p.exp() * rho / (1.0 - rho)
        } else {
            f64::INFINITY
        };
        if coefficients.len() >= min_dim && bound < tol.tail_tol {
            break bound;
        }
        if coefficients.len() >= tol.max_dim {
            return Err(Error::TruncationFailed {
                family: spec.family.to_string(),
                max_dim: tol.max_dim,
                tail_bound: bound,
            });
        }
        ln_t += ln_r;
        n += 1;
    };

    let norm_sqr: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
    let deviation = (norm_sqr - 1.0).abs();
    if !(deviation < NORM_CHECK) {
        return Err(Error::NormalizationMismatch { deviation });
    }
    Ok(FockState::from_parts(coefficients, *spec, tail_bound))
}
