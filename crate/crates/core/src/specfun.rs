//! Special-function kernels: Pochhammer symbols, Laguerre polynomials
//! (plain and associated, including negative superscripts), the generalized
//! hypergeometric series `pFq`, and the deformed factorial `f(n)!`.
//!
//! Everything here is plain `f64` arithmetic. Pochhammer symbols are exact
//! products, so nonpositive arguments never hit a Gamma-function pole.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::KerrParams;

/// Truncation policy shared by every infinite-series evaluation.
///
/// A series is declared converged once `|term_n| < rel_tol * |partial_sum|`
/// (or `|term_n| < abs_tol`) holds for three consecutive terms with `n >= 5`.
/// Reaching `max_terms` first is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesTolerance {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        SeriesTolerance {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_terms: 10_000,
        }
    }
}

impl SeriesTolerance {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self> {
        let tol = SeriesTolerance {
            rel_tol,
            abs_tol,
            max_terms,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be nonnegative, got {}",
                self.abs_tol
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidParameter("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    pub fn monitor(&self) -> SeriesMonitor {
        SeriesMonitor {
            tol: *self,
            small_run: 0,
        }
    }
}

/// Number of consecutive small terms required before stopping.
const SMALL_RUN: usize = 3;
/// Minimum term index before the stopping rule may fire.
const MIN_TERMS: usize = 5;

/// Running state of the termination rule for one series.
#[derive(Debug, Clone)]
pub struct SeriesMonitor {
    tol: SeriesTolerance,
    small_run: usize,
}

impl SeriesMonitor {
    /// Feed the magnitude of term `n` and of the partial sum including it.
    /// Returns `Ok(true)` once the series may stop.
    pub fn observe(&mut self, series: &'static str, n: usize, term_abs: f64, sum_abs: f64) -> Result<bool> {
        if !term_abs.is_finite() || !sum_abs.is_finite() {
            return Err(Error::Overflow(series));
        }
        if term_abs < self.tol.rel_tol * sum_abs || term_abs < self.tol.abs_tol {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        if self.small_run >= SMALL_RUN && n >= MIN_TERMS {
            return Ok(true);
        }
        if n + 1 >= self.tol.max_terms {
            return Err(Error::NonConvergence {
                series,
                terms: self.tol.max_terms,
            });
        }
        Ok(false)
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, evaluated as a product.
pub fn pochhammer(a: f64, n: u32) -> Result<f64> {
    let mut acc = 1.0;
    for j in 0..n {
        acc *= a + j as f64;
        if !acc.is_finite() {
            return Err(Error::Overflow("pochhammer"));
        }
    }
    Ok(acc)
}

/// `ln (a)_n` for `a > 0`, as a sum of logarithms.
pub fn ln_pochhammer(a: f64, n: u32) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "ln_pochhammer requires a > 0, got {a}"
        )));
    }
    Ok((0..n).map(|j| (a + j as f64).ln()).sum())
}

/// `ln n!` for `n = 0..len`.
pub fn ln_factorials(len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut acc = 0.0;
    for n in 0..len {
        if n > 0 {
            acc += (n as f64).ln();
        }
        out.push(acc);
    }
    out
}

/// Laguerre polynomial `L_m(x)`.
pub fn laguerre(m: u32, x: f64) -> Result<f64> {
    assoc_laguerre(m, 0, x)
}

/// Associated Laguerre polynomial `L_n^{(k)}(x)` of degree `n` and integer
/// superscript `k`, which may be negative.
///
/// For `x <= 0` and `k >= 0` the defining finite sum has only positive terms
/// and is summed directly; for `x > 0` it cancels badly, so the three-term
/// recurrence in the degree is used instead. For `-n <= k < 0` the reflection
/// `L_n^{(-k)}(x) = (-x)^k (n-k)!/n! L_{n-k}^{(k)}(x)` reduces to a
/// nonnegative superscript. Below `-n` the finite sum is taken with
/// generalized binomial coefficients.
pub fn assoc_laguerre(n: u32, k: i64, x: f64) -> Result<f64> {
    let value = if k >= 0 {
        if x <= 0.0 {
            laguerre_finite_sum(n, k, x)
        } else {
            laguerre_recurrence(n, k as f64, x)
        }
    } else if -k <= n as i64 {
        let j = (-k) as u32;
        let reduced = assoc_laguerre(n - j, j as i64, x)?;
        // (n-j)!/n! = 1 / (n-j+1)_j
        let scale = (-x).powi(j as i32) / pochhammer((n - j + 1) as f64, j)?;
        scale * reduced
    } else {
        laguerre_finite_sum(n, k, x)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow("assoc_laguerre"))
    }
}

/// `sum_{j=0}^n (-1)^j C(n+k, n-j) x^j / j!` with the generalized binomial.
fn laguerre_finite_sum(n: u32, k: i64, x: f64) -> f64 {
    let kf = k as f64;
    if k >= 0 || x == 0.0 {
        // C(n+k, n) = prod_{i=1}^{n} (k+i)/i, nonzero for k >= 0
        let mut term = (1..=n).fold(1.0, |acc, i| acc * (kf + i as f64) / i as f64);
        if x == 0.0 {
            return term;
        }
        let mut sum = term;
        for j in 0..n {
            term *= -x * (n - j) as f64 / ((j as f64 + 1.0) * (kf + j as f64 + 1.0));
            sum += term;
        }
        return sum;
    }
    // Negative k: leading binomials may vanish, so run downward from
    // j = n where C(n+k, 0) = 1.
    let mut term = (1..=n).fold(1.0, |acc, i| acc * -x / i as f64);
    let mut sum = term;
    for j in (1..=n).rev() {
        term *= (kf + j as f64) / (n - j + 1) as f64 * j as f64 / -x;
        sum += term;
    }
    sum
}

fn laguerre_recurrence(n: u32, k: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + k - x) * cur - (jf + k) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized hypergeometric series
/// `pFq(a; b; x) = sum_n [prod (a_i)_n / prod (b_j)_n] x^n / n!`,
/// summed by term-ratio recurrence under `tol`.
pub fn hyp_pfq(numerator: &[f64], denominator: &[f64], x: f64, tol: &SeriesTolerance) -> Result<f64> {
    tol.validate()?;
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("pFq argument must be finite, got {x}")));
    }
    let terminates_at = numerator
        .iter()
        .filter(|a| **a <= 0.0 && a.fract() == 0.0)
        .map(|a| (-a) as usize)
        .min();
    if x == 0.0 {
        return Ok(1.0);
    }
    if terminates_at.is_none() {
        let (p, q) = (numerator.len(), denominator.len());
        if p > q + 1 {
            return Err(Error::Domain(format!("{p}F{q} diverges for every x != 0")));
        }
        if p == q + 1 && x.abs() >= 1.0 {
            return Err(Error::Domain(format!("{p}F{q} requires |x| < 1, got {x}")));
        }
    }

    let mut term = 1.0;
    let mut sum = 1.0;
    let mut monitor = tol.monitor();
    for n in 0.. {
        if terminates_at == Some(n) {
            return Ok(sum);
        }
        let nf = n as f64;
        let mut ratio = x / (nf + 1.0);
        for &a in numerator {
            ratio *= a + nf;
        }
        for &b in denominator {
            let d = b + nf;
            if d == 0.0 {
                return Err(Error::DenominatorPole { param: b, term: n });
            }
            ratio /= d;
        }
        term *= ratio;
        sum += term;
        if monitor.observe("hyp_pfq", n + 1, term.abs(), sum.abs())? {
            break;
        }
    }
    Ok(sum)
}

/// Deformed factorial `f(n)! = f(n) f(n-1) ... f(0)` with `f(0) = 1`, for the
/// Kerr deformation `f(k)^2 = 1 + k chi/(omega0 - chi)`.
pub fn f_factorial(n: u32, params: &KerrParams) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * params.deformation(k as usize))
}
