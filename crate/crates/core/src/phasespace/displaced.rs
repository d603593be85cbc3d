use num_complex::Complex64;

use crate::specfun::ln_factorials;
use crate::states::FockState;

/// Rescale a diagonal run once its magnitude passes this.
const RESCALE: f64 = 1e150;

/// Matrix elements `<n|D(alpha)|k>` for `n < rows`, `k < cols`.
///
/// Column `k` is the displaced number state `|alpha,k>` in the Fock basis.
/// Along each diagonal `n - k = d >= 0`
///
/// `<k+d|D(alpha)|k> = e^{-|alpha|^2/2} sqrt(k!/(k+d)!) alpha^d L_k^{(d)}(|alpha|^2)`
///
/// and above the diagonal the same holds with `alpha -> -alpha*`. Each
/// diagonal is generated by the degree recurrence of `L_k^{(d)}` with the
/// factorial ratio folded in, so no element overflows and the cost is one
/// pass over the matrix. Entries of the truncated rows are exact: no element
/// depends on rows beyond `rows`.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacedNumberBasis {
    alpha: Complex64,
    rows: usize,
    cols: usize,
    elements: Vec<Complex64>,
}

impl DisplacedNumberBasis {
    pub fn new(alpha: Complex64, rows: usize, cols: usize) -> Self {
        let mut elements = vec![Complex64::new(0.0, 0.0); rows * cols];
        let x = alpha.norm_sqr();
        let lf = ln_factorials(rows.max(cols) + 1);
        for d in 0..rows {
            let len = cols.min(rows - d);
            for (k, v) in diagonal(alpha, x, d, len, &lf).into_iter().enumerate() {
                elements[(k + d) * cols + k] = v;
            }
        }
        let reflected = -alpha.conj();
        for d in 1..cols {
            let len = rows.min(cols - d);
            for (n, v) in diagonal(reflected, x, d, len, &lf).into_iter().enumerate() {
                elements[n * cols + n + d] = v;
            }
        }
        DisplacedNumberBasis {
            alpha,
            rows,
            cols,
            elements,
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `<n|D(alpha)|k>`.
    pub fn element(&self, n: usize, k: usize) -> Complex64 {
        self.elements[n * self.cols + k]
    }

    /// `|alpha,k>` restricted to the first `rows` Fock levels.
    pub fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.rows).map(|n| self.element(n, k)).collect()
    }

    /// `<alpha,k|psi>` for `k < cols`, where `psi` has at most `rows` levels.
    pub fn overlaps(&self, psi: &[Complex64]) -> Vec<Complex64> {
        assert!(psi.len() <= self.rows, "state longer than the basis rows");
        let mut out = vec![Complex64::new(0.0, 0.0); self.cols];
        for (n, c) in psi.iter().enumerate() {
            let row = &self.elements[n * self.cols..(n + 1) * self.cols];
            for (o, e) in out.iter_mut().zip(row) {
                *o += e.conj() * c;
            }
        }
        out
    }

    /// `D(alpha) psi` on the first `rows` levels, `psi` having at most `cols`.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        assert!(psi.len() <= self.cols, "state longer than the basis columns");
        (0..self.rows)
            .map(|n| {
                let row = &self.elements[n * self.cols..(n + 1) * self.cols];
                row.iter().zip(psi).map(|(e, c)| e * c).sum()
            })
            .collect()
    }
}

/// `e^{-x/2} sqrt(j!/(j+d)!) a^d L_j^{(d)}(x)` for `j = 0..len`.
fn diagonal(a: Complex64, x: f64, d: usize, len: usize, lf: &[f64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    if d > 0 && a.norm() == 0.0 {
        out.resize(len, Complex64::new(0.0, 0.0));
        return out;
    }
    let df = d as f64;
    let ln_t0 = -0.5 * x + if d > 0 { df * a.norm().ln() } else { 0.0 } - 0.5 * lf[d];
    let phase = Complex64::from_polar(1.0, df * a.arg());
    // t_j = exp(scale) * s_j with s_0 = 1
    let mut scale = ln_t0;
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    for j in 0..len {
        out.push(phase * (cur * scale.exp()));
        let jf = j as f64;
        let next =
            ((2.0 * jf + 1.0 + df - x) * cur - (jf * (jf + df)).sqrt() * prev) / ((jf + 1.0) * (jf + df + 1.0)).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
            scale += RESCALE.ln();
        }
    }
    out
}

/// `<alpha,k|psi>` for `k = 0..=kmax`.
pub fn displaced_number_overlaps(alpha: Complex64, state: &FockState, kmax: usize) -> Vec<Complex64> {
    DisplacedNumberBasis::new(alpha, state.dim(), kmax + 1).overlaps(state.coefficients())
}
