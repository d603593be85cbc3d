use num_complex::Complex64;

use super::params::KerrParams;

/// Deformed ladder operators `A = a f(n)`, `A^dagger = f(n) a^dagger` on a
/// truncated Fock space, applied matrix-free.
///
/// `A|n> = sqrt(n) f(n) |n-1>` and `A^dagger|n> = sqrt(n+1) f(n+1) |n+1>`;
/// creation drops whatever would land at index `dimension`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformedLadder {
    params: KerrParams,
    dimension: usize,
}

impl DeformedLadder {
    pub fn new(params: KerrParams, dimension: usize) -> Self {
        DeformedLadder { params, dimension }
    }

    pub fn params(&self) -> &KerrParams {
        &self.params
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    fn check(&self, v: &[Complex64]) {
        assert_eq!(v.len(), self.dimension, "vector length does not match ladder dimension");
    }

    pub fn annihilate(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.check(v);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dimension];
        for n in 1..self.dimension {
            out[n - 1] = v[n] * ((n as f64).sqrt() * self.params.deformation(n));
        }
        out
    }

    pub fn create(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.check(v);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dimension];
        for n in 0..self.dimension.saturating_sub(1) {
            out[n + 1] = v[n] * (((n + 1) as f64).sqrt() * self.params.deformation(n + 1));
        }
        out
    }

    pub fn number(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.check(v);
        v.iter().enumerate().map(|(n, c)| c * n as f64).collect()
    }

    /// Eigenvalue of `[A, A^dagger]` on `|n>`: `1 + chi/(omega0-chi) + 2n chi/(omega0-chi)`.
    pub fn commutator_eigenvalue(&self, n: usize) -> f64 {
        let inv = 1.0 / self.params.omega_over_chi();
        1.0 + inv + 2.0 * n as f64 * inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_is_diagonal_with_closed_form() {
        let p = KerrParams::new(0.15).unwrap();
        let dim = 40;
        let ladder = DeformedLadder::new(p, dim);
        // the top level is clipped by the truncation
        for n in 0..dim - 1 {
            let mut e = vec![Complex64::new(0.0, 0.0); dim];
            e[n] = Complex64::new(1.0, 0.0);
            let ac = ladder.annihilate(&ladder.create(&e));
            let ca = ladder.create(&ladder.annihilate(&e));
            let expect = ladder.commutator_eigenvalue(n);
            for (j, (x, y)) in ac.iter().zip(&ca).enumerate() {
                let c = x - y;
                let target = if j == n { expect } else { 0.0 };
                assert!((c.re - target).abs() < 1e-12 && c.im.abs() < 1e-12, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn number_commutes_as_lowering() {
        // [A, n] = A
        let p = KerrParams::new(0.3).unwrap();
        let ladder = DeformedLadder::new(p, 12);
        let v: Vec<Complex64> = (0..12)
            .map(|k| Complex64::new(1.0 / (k as f64 + 1.0), 0.1 * k as f64))
            .collect();
        let an = ladder.annihilate(&ladder.number(&v));
        let na = ladder.number(&ladder.annihilate(&v));
        let a = ladder.annihilate(&v);
        for k in 0..12 {
            assert!((an[k] - na[k] - a[k]).norm() < 1e-12);
        }
    }
}
