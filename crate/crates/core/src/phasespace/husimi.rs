use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{hyp_pfq, laguerre, ln_factorials, SeriesTolerance};
use crate::states::{ln_norm_d, zeta, FockState, KerrParams};
use crate::tolerance::Tolerances;

/// Smallest `N` with `sum_{n >= N} e^{-x} x^n/n! < tol`.
///
/// The Poisson ratio `x/(n+1)` is nonincreasing, so once it drops below one
/// the tail from `N` is at most `p_N / (1 - x/(N+1))`.
pub fn kernel_dim(x: f64, tol: f64) -> usize {
    let mut ln_p = -x;
    let mut n = 0usize;
    loop {
        let rho = x / (n + 1) as f64;
        if rho < 1.0 && ln_p.exp() / (1.0 - rho) < tol {
            return n;
        }
        if x > 0.0 {
            ln_p += x.ln() - ((n + 1) as f64).ln();
        } else {
            return n + 1;
        }
        n += 1;
    }
}

/// `<z|psi> = e^{-|z|^2/2} sum_n (z*)^n c_n / sqrt(n!)` over the stored levels.
pub(crate) fn coherent_overlap(coefficients: &[Complex64], z: Complex64) -> Complex64 {
    let zc = z.conj();
    let mut kernel = Complex64::new((-0.5 * z.norm_sqr()).exp(), 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, c) in coefficients.iter().enumerate() {
        acc += kernel * c;
        kernel *= zc / ((n + 1) as f64).sqrt();
    }
    acc
}

/// Whether the stored levels cover the coherent kernel at `|z|^2 = x`.
///
/// The amplitude error is at most `sqrt(state_tail * kernel_tail)`, so a
/// state with an exact (zero) tail is always covered.
pub(crate) fn covers(state: &FockState, x: f64, tol: &Tolerances) -> bool {
    state.tail_bound() == 0.0 || kernel_dim(x, tol.kernel_tail_tol) <= state.dim()
}

/// A copy of `state` long enough for every `|z| <= radius`.
pub(crate) fn prepare(state: &FockState, radius: f64, tol: &Tolerances) -> Result<FockState> {
    let x = radius * radius;
    if covers(state, x, tol) {
        return Ok(state.clone());
    }
    state.extended(kernel_dim(x, tol.kernel_tail_tol), tol)
}

/// `(1/pi) |<z|psi>|^2`.
///
/// Regenerable states are rebuilt with more levels when the coherent kernel
/// at `|z|` reaches past the truncation; other states report
/// [`Error::TruncationInsufficient`].
pub fn husimi(state: &FockState, z: Complex64, tol: &Tolerances) -> Result<f64> {
    let state = prepare(state, z.norm(), tol)?;
    Ok(coherent_overlap(state.coefficients(), z).norm_sqr() / PI)
}

/// `(1/pi) e^{-|z - alpha|^2}`.
pub fn husimi_coherent(alpha: Complex64, z: Complex64) -> f64 {
    (-(z - alpha).norm_sqr()).exp() / PI
}

/// `(1/pi) |z|^{2m} e^{-|z-alpha|^2} / (m! L_m(-|alpha|^2))`.
pub fn husimi_pacs_closed(alpha: Complex64, m: u32, z: Complex64) -> Result<f64> {
    let lag = laguerre(m, -alpha.norm_sqr())?;
    let lf = ln_factorials(m as usize + 1);
    let ln_zm = if m == 0 { 0.0 } else { m as f64 * z.norm_sqr().ln() };
    Ok((ln_zm - (z - alpha).norm_sqr() - lf[m as usize] - lag.ln()).exp() / PI)
}

/// `(1/pi) e^{-|z|^2} |z|^{2m} / (N m!) |sum_n (z* w)^n / n! h_n|^2` where
/// `ln h_n` is supplied incrementally.
fn husimi_series(
    z: Complex64,
    w: Complex64,
    m: u32,
    ln_norm: f64,
    ln_h_step: impl Fn(usize) -> f64,
    tol: &SeriesTolerance,
) -> Result<f64> {
    let u = z.conj() * w;
    let (ln_u, phase) = (u.norm().ln(), u.arg());
    let mut monitor = tol.monitor();
    let mut sum = Complex64::new(0.0, 0.0);
    // ln |u^n h_n / n!|
    let mut ln_t = 0.0f64;
    let mut n = 0usize;
    loop {
        let term = Complex64::from_polar(ln_t.exp(), n as f64 * phase);
        sum += term;
        if u.norm() == 0.0 || monitor.observe("husimi series", n, term.norm(), sum.norm())? {
            break;
        }
        ln_t += ln_u + ln_h_step(n) - ((n + 1) as f64).ln();
        n += 1;
    }
    let lf = ln_factorials(m as usize + 1);
    let ln_zm = if m == 0 { 0.0 } else { m as f64 * z.norm_sqr().ln() };
    let ln_pre = -z.norm_sqr() + ln_zm - ln_norm - lf[m as usize];
    let q = (ln_pre + 2.0 * sum.norm().ln()).exp() / PI;
    if q.is_finite() {
        Ok(q)
    } else {
        Err(Error::Overflow("husimi series"))
    }
}

/// Husimi function of the deformed photon-added eigenstate family from its
/// explicit series:
///
/// `Q(z) = e^{-|z|^2} |z|^{2m} / (pi N m!) |sum_n (z* alpha)^n/n! r^{n/2} sqrt((b+m)_n)/(b)_n|^2`
///
/// with `N = 2F3(b+m, m+1; b, b, 1; r |alpha|^2)`.
pub fn husimi_closed_a(alpha: Complex64, m: u32, params: KerrParams, z: Complex64) -> Result<f64> {
    let tol = SeriesTolerance::default();
    let (r, b, mf) = (params.omega_over_chi(), params.omega0_over_chi(), m as f64);
    let norm = hyp_pfq(&[b + mf, mf + 1.0], &[b, b, 1.0], r * alpha.norm_sqr(), &tol)?;
    husimi_series(
        z,
        alpha,
        m,
        norm.ln(),
        |n| {
            let nf = n as f64;
            0.5 * r.ln() + 0.5 * (b + mf + nf).ln() - (b + nf).ln()
        },
        &tol,
    )
}

/// Husimi function of the deformed photon-added displaced family:
///
/// `Q(z) = e^{-|z|^2} |z|^{2m} / (pi N m!) |sum_n (z* zeta)^n/n! sqrt((b+m)_n)|^2`
///
/// with `N = 2F1(b+m, m+1; 1; |zeta|^2)`.
pub fn husimi_closed_d(alpha: Complex64, m: u32, params: KerrParams, z: Complex64) -> Result<f64> {
    let tol = SeriesTolerance::default();
    let (b, mf) = (params.omega0_over_chi(), m as f64);
    let w = zeta(alpha, params.omega_over_chi());
    let ln_norm = ln_norm_d(alpha.norm() / params.omega_over_chi().sqrt(), b, m);
    husimi_series(z, w, m, ln_norm, |n| 0.5 * (b + mf + n as f64).ln(), &tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    #[test]
    fn kernel_dim_covers_poisson_tail() {
        assert_eq!(kernel_dim(0.0, 1e-14), 1);
        let x = 16.0;
        let n = kernel_dim(x, 1e-14);
        let mut p = (-x).exp();
        let mut head = 0.0;
        for k in 0..n {
            head += p;
            p *= x / (k + 1) as f64;
        }
        assert!(1.0 - head < 1e-13);
    }

    #[test]
    fn vacuum_at_origin() {
        let v = states::coherent(Complex64::new(0.0, 0.0), 1).unwrap();
        let q = husimi(&v, Complex64::new(0.0, 0.0), &Tolerances::default()).unwrap();
        assert!((q - 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn custom_state_too_short_is_reported() {
        let coeffs = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        let raw = states::FockStateJson {
            family: states::Family::Custom,
            alpha_re: 0.0,
            alpha_im: 0.0,
            m: 0,
            chi_over_omega0: None,
            dim: 2,
            coefficients: coeffs.iter().map(|c| [c.re * 0.7, c.im]).collect(),
        };
        let s: FockState = raw.try_into().unwrap();
        let err = husimi(&s, Complex64::new(3.0, 0.0), &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::TruncationInsufficient { .. }));
    }

    #[test]
    fn closed_forms_reduce_to_coherent() {
        let p = KerrParams::new(1e-9).unwrap();
        let a = Complex64::new(0.9, 0.4);
        for z in [Complex64::new(0.1, -0.3), Complex64::new(1.2, 0.7)] {
            let g = husimi_coherent(a, z);
            assert!((husimi_closed_a(a, 0, p, z).unwrap() - g).abs() < 1e-8);
            assert!((husimi_pacs_closed(a, 0, z).unwrap() - g).abs() < 1e-14);
        }
    }
}
