use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use super::displaced::DisplacedNumberBasis;
use crate::error::{Error, Result};
use crate::specfun::{assoc_laguerre, hyp_pfq, ln_factorials};
use crate::states::{ln_norm_d, zeta, FockState, KerrParams};
use crate::tolerance::Tolerances;

/// Rounding bound on the captured mass above which a closed-form Wigner
/// value is rejected.
const MAX_CANCELLATION_NOISE: f64 = 1e-7;

/// First number of displaced-number terms tried before doubling.
const INITIAL_K: usize = 32;

/// A Wigner value together with the certificate of its series cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerSeries {
    pub value: f64,
    /// Number of displaced-number terms summed.
    pub terms: usize,
    /// `||psi||^2 - sum_{k < terms} |<alpha,k|psi>|^2`.
    pub deficit: f64,
}

/// `(2/pi) sum_k (-1)^k |<alpha,k|psi>|^2`, cut where the completeness
/// deficit drops below `tol.wigner_deficit_tol`.
///
/// The displaced number states are complete, so the deficit is exactly the
/// mass of the omitted terms and bounds the alternating tail. Accuracy is
/// otherwise limited by the state's own truncation: amplitudes omitted from a
/// tail of mass `t` enter each `|<alpha,k|psi>|^2` at order `sqrt(t)`.
pub fn wigner_series(state: &FockState, alpha: Complex64, tol: &Tolerances) -> Result<WignerSeries> {
    let psi = state.coefficients();
    let norm = state.norm_sqr();
    let mut cols = INITIAL_K.min(tol.max_wigner_k);
    loop {
        let ov = DisplacedNumberBasis::new(alpha, psi.len(), cols).overlaps(psi);
        let mut captured = 0.0;
        let mut value = 0.0;
        for (k, o) in ov.iter().enumerate() {
            let p = o.norm_sqr();
            captured += p;
            value += if k % 2 == 0 { p } else { -p };
            let deficit = norm - captured;
            if deficit < tol.wigner_deficit_tol {
                return Ok(WignerSeries {
                    value: FRAC_2_PI * value,
                    terms: k + 1,
                    deficit,
                });
            }
        }
        if cols >= tol.max_wigner_k {
            return Err(Error::WignerTail {
                kmax: cols,
                deficit: norm - captured,
            });
        }
        cols = (2 * cols).min(tol.max_wigner_k);
    }
}

/// Wigner function at `alpha` with at most `kmax` displaced-number terms.
pub fn wigner(state: &FockState, alpha: Complex64, kmax: usize) -> Result<f64> {
    let tol = Tolerances {
        max_wigner_k: kmax,
        ..Tolerances::default()
    };
    Ok(wigner_series(state, alpha, &tol)?.value)
}

/// `(2/pi) e^{-2|alpha - beta|^2}`.
pub fn wigner_coherent(beta: Complex64, alpha: Complex64) -> f64 {
    FRAC_2_PI * (-2.0 * (alpha - beta).norm_sqr()).exp()
}

/// `D(gamma) psi` on `dim` levels, renormalized.
pub fn displace_state(state: &FockState, gamma: Complex64, dim: usize) -> Result<FockState> {
    let basis = DisplacedNumberBasis::new(gamma, dim, state.dim());
    FockState::custom(basis.apply(state.coefficients()), *state.label())
}

/// The explicit series for a photon-added family whose amplitudes are
/// `c_{n+m} = N^{-1/2} w^n sqrt((m+1)_n) h_n / n!`:
///
/// `<alpha,k|psi> = e^{-|alpha|^2/2} N^{-1/2} sqrt(k!/m!) sum_{l<=k} (-alpha)^l/l!
///     sum_n C(n+m, k-l) (alpha*)^{n+m-k+l} w^n h_n / n!`
///
/// For fixed `n` the sum over `l` is `(alpha*)^{n+m-k} L_k^{(n+m-k)}(|alpha|^2)`,
/// an alternating series that loses about `e^{|alpha|^2}` relative accuracy
/// when summed termwise. It is evaluated as that Laguerre polynomial instead,
/// reflected to a nonnegative superscript for `n + m < k`, so every power of
/// `alpha` is nonnegative and each term is bounded by `|c_{n+m}|`.
struct OverlapSeries<'a> {
    alpha: Complex64,
    w: Complex64,
    m: usize,
    ln_norm: f64,
    ln_h_step: &'a dyn Fn(usize) -> f64,
    max_terms: usize,
    /// `ln (h_n / n!)`, grown on demand.
    ln_g: Vec<f64>,
    lf: Vec<f64>,
}

/// Bound on the omitted amplitude mass of a single overlap.
const OVERLAP_TAIL: f64 = 1e-17;

impl OverlapSeries<'_> {
    fn grow(&mut self, len: usize) {
        while self.ln_g.len() < len {
            let n = self.ln_g.len() - 1;
            let next = self.ln_g[n] + (self.ln_h_step)(n) - ((n + 1) as f64).ln();
            self.ln_g.push(next);
        }
        if self.lf.len() < len + self.m + 1 {
            self.lf = ln_factorials(2 * (len + self.m + 1));
        }
    }

    /// `ln |c_{n+m}|`.
    fn ln_c(&self, n: usize) -> f64 {
        let big_n = n + self.m;
        -0.5 * self.ln_norm + pow_ln(self.w.norm().ln(), n) + 0.5 * (self.lf[big_n] - self.lf[self.m]) + self.ln_g[n]
    }

    /// `<alpha,k|psi>` and the sum of the moduli of its terms.
    fn overlap(&mut self, k: usize) -> Result<(Complex64, f64)> {
        self.grow(k + 2);
        let x = self.alpha.norm_sqr();
        let ln_a = self.alpha.norm().ln();
        let (ph_ac, ph_na) = (self.alpha.conj().arg(), (-self.alpha).arg());
        let ph_w = self.w.arg();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        for n in 0.. {
            if n >= self.max_terms {
                return Err(Error::NonConvergence {
                    series: "wigner closed-form series",
                    terms: self.max_terms,
                });
            }
            self.grow(n + 3);
            let big_n = n + self.m;
            let ln_c = self.ln_c(n);
            let (ln_elem, lag, phase) = if big_n >= k {
                let lag = assoc_laguerre(k as u32, (big_n - k) as i64, x)?;
                let ln_e = 0.5 * (self.lf[k] - self.lf[big_n]) + pow_ln(ln_a, big_n - k);
                (ln_e, lag, (big_n - k) as f64 * ph_ac)
            } else {
                let lag = assoc_laguerre(big_n as u32, (k - big_n) as i64, x)?;
                let ln_e = 0.5 * (self.lf[big_n] - self.lf[k]) + pow_ln(ln_a, k - big_n);
                (ln_e, lag, (k - big_n) as f64 * ph_na)
            };
            if lag != 0.0 {
                let mag = (-0.5 * x + ln_elem + lag.abs().ln() + ln_c).exp();
                let term = Complex64::from_polar(mag.copysign(lag), phase + n as f64 * ph_w);
                sum += term;
                abs_sum += mag;
            }
            // |<k|D|N>| <= 1 and |c_{N+1}/c_N| is nonincreasing, so the
            // geometric bound covers every omitted term
            let rho = (self.ln_c(n + 1) - ln_c).exp();
            let exhausted = self.w.norm() == 0.0 || (rho < 1.0 && ln_c.exp() * rho / (1.0 - rho) < OVERLAP_TAIL);
            if exhausted {
                break;
            }
        }
        Ok((sum, abs_sum))
    }

    /// Stops once the completeness deficit is below `deficit_tol`, or below
    /// the rounding bound of the captured mass if that is larger.
    fn evaluate(&mut self, deficit_tol: f64, max_k: usize) -> Result<f64> {
        let mut captured = 0.0;
        let mut value = 0.0;
        let mut noise = 0.0;
        for k in 0..max_k {
            let (ov, ov_abs) = self.overlap(k)?;
            let amp = ov.norm();
            let err = ov_abs * (k + 2) as f64 * f64::EPSILON;
            let p = amp * amp;
            captured += p;
            noise += err * (2.0 * amp + err);
            value += if k % 2 == 0 { p } else { -p };
            let deficit = 1.0 - captured;
            if deficit < deficit_tol.max(noise) {
                if noise > MAX_CANCELLATION_NOISE {
                    return Err(Error::WignerTail { kmax: k + 1, deficit });
                }
                return Ok(FRAC_2_PI * value);
            }
        }
        Err(Error::WignerTail {
            kmax: max_k,
            deficit: 1.0 - captured,
        })
    }
}

/// `e * ln_x` with `0 * ln 0 = 0`.
fn pow_ln(ln_x: f64, e: usize) -> f64 {
    if e == 0 {
        0.0
    } else {
        e as f64 * ln_x
    }
}

fn closed(
    alpha: Complex64,
    w: Complex64,
    m: u32,
    ln_norm: f64,
    ln_h_step: &dyn Fn(usize) -> f64,
    tol: &Tolerances,
) -> Result<f64> {
    let mut sum = OverlapSeries {
        alpha,
        w,
        m: m as usize,
        ln_norm,
        ln_h_step,
        max_terms: tol.series.max_terms,
        ln_g: vec![0.0],
        lf: ln_factorials(64),
    };
    sum.evaluate(tol.wigner_deficit_tol, tol.max_wigner_k)
}

/// Wigner function at `alpha` of the deformed photon-added eigenstate
/// family with amplitude `beta`, from the explicit triple sum with
/// `w = beta`, `h_n = r^{n/2} sqrt((b+m)_n)/(b)_n` and
/// `N = 2F3(b+m, m+1; b, b, 1; r |beta|^2)`.
pub fn wigner_closed_a(alpha: Complex64, beta: Complex64, m: u32, params: KerrParams) -> Result<f64> {
    wigner_closed_a_with(alpha, beta, m, params, &Tolerances::default())
}

pub fn wigner_closed_a_with(
    alpha: Complex64,
    beta: Complex64,
    m: u32,
    params: KerrParams,
    tol: &Tolerances,
) -> Result<f64> {
    let (r, b, mf) = (params.omega_over_chi(), params.omega0_over_chi(), m as f64);
    let norm = hyp_pfq(&[b + mf, mf + 1.0], &[b, b, 1.0], r * beta.norm_sqr(), &tol.series)?;
    let step = move |n: usize| {
        let nf = n as f64;
        0.5 * r.ln() + 0.5 * (b + mf + nf).ln() - (b + nf).ln()
    };
    closed(alpha, beta, m, norm.ln(), &step, tol)
}

/// Wigner function at `alpha` of the deformed photon-added displaced family
/// with amplitude `beta`: `w = zeta(beta)`, `h_n = sqrt((b+m)_n)` and
/// `N = 2F1(b+m, m+1; 1; |zeta|^2)`.
pub fn wigner_closed_d(alpha: Complex64, beta: Complex64, m: u32, params: KerrParams) -> Result<f64> {
    wigner_closed_d_with(alpha, beta, m, params, &Tolerances::default())
}

pub fn wigner_closed_d_with(
    alpha: Complex64,
    beta: Complex64,
    m: u32,
    params: KerrParams,
    tol: &Tolerances,
) -> Result<f64> {
    let (b, mf) = (params.omega0_over_chi(), m as f64);
    let w = zeta(beta, params.omega_over_chi());
    let ln_norm = ln_norm_d(beta.norm() / params.omega_over_chi().sqrt(), b, m);
    let step = move |n: usize| 0.5 * (b + mf + n as f64).ln();
    closed(alpha, w, m, ln_norm, &step, tol)
}

/// Upper bound on `|W|`.
pub const WIGNER_BOUND: f64 = 2.0 / PI;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    #[test]
    fn number_state_one_at_origin() {
        let s = FockState::number_state(1, 4).unwrap();
        let w = wigner(&s, Complex64::new(0.0, 0.0), 64).unwrap();
        assert!((w + FRAC_2_PI).abs() < 1e-10);
    }

    #[test]
    fn coherent_is_gaussian() {
        let beta = Complex64::new(1.0, -0.5);
        let s = states::coherent(beta, 1).unwrap();
        for a in [
            Complex64::new(0.0, 0.0),
            Complex64::new(2.0, 1.0),
            Complex64::new(-1.5, 0.3),
        ] {
            let w = wigner(&s, a, 4096).unwrap();
            assert!((w - wigner_coherent(beta, a)).abs() < 1e-6);
        }
    }

    #[test]
    fn closed_forms_at_origin_are_finite_and_agree() {
        let p = KerrParams::new(0.15).unwrap();
        let beta = Complex64::new(1.1, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let s = states::dpancs_a(beta, 1, p, 1).unwrap();
        let generic = wigner(&s, zero, 4096).unwrap();
        let closed = wigner_closed_a(zero, beta, 1, p).unwrap();
        assert!((generic - closed).abs() < 1e-8, "{generic} vs {closed}");
    }

    #[test]
    fn tail_limit_is_reported() {
        let s = states::coherent(Complex64::new(3.0, 0.0), 1).unwrap();
        let err = wigner(&s, Complex64::new(-3.0, 0.0), 4).unwrap_err();
        assert!(matches!(err, Error::WignerTail { kmax: 4, .. }));
    }

    #[test]
    fn closed_forms_match_extended_precision_far_from_the_state() {
        // 80-digit sums of (2/pi) sum_k (-1)^k |<k|D(-z)|psi>|^2
        let p = KerrParams::new(0.15).unwrap();
        let beta = Complex64::new(1.1, 0.0);
        let cases = [
            (true, Complex64::new(2.0, 0.0), 0.3034451942606073),
            (true, Complex64::new(4.0, 0.0), 5.608817416878771e-8),
            (false, Complex64::new(4.0, 0.0), 8.727753168693806e-5),
            (false, Complex64::new(0.0, 3.0), 3.315540259670476e-10),
        ];
        for (family_a, z, reference) in cases {
            let w = if family_a {
                wigner_closed_a(z, beta, 1, p).unwrap()
            } else {
                wigner_closed_d(z, beta, 1, p).unwrap()
            };
            assert!((w - reference).abs() < 1e-10, "{z}: {w} vs {reference}");
        }
    }

    #[test]
    fn closed_forms_survive_the_grid_corners() {
        let p = KerrParams::new(0.15).unwrap();
        let beta = Complex64::new(1.1, 0.0);
        let s = states::dpancs_d(beta, 1, p, 1).unwrap();
        for z in [
            Complex64::new(-4.0, 4.0),
            Complex64::new(-4.0, -4.0),
            Complex64::new(4.0, 4.0),
        ] {
            let closed = wigner_closed_d(z, beta, 1, p).unwrap();
            let generic = wigner(&s, z, 4096).unwrap();
            assert!((closed - generic).abs() < 1e-9, "{z}: {closed} vs {generic}");
        }
    }
}
