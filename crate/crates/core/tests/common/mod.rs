//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use nlcs_core::Complex64;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Dense complex matrix, row-major.
#[derive(Clone)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = c(1.0);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x.norm() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * o.a[k * n + j];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `exp(M)` by scaling and squaring with a Taylor series.
    pub fn expm(&self) -> Mat {
        let norm = self.norm1();
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as i32
        } else {
            0
        };
        let a = self.scale(0.5f64.powi(s));
        let mut result = Mat::identity(self.n);
        let mut term = Mat::identity(self.n);
        for k in 1..40 {
            term = term.mul(&a).scale(1.0 / k as f64);
            result = result.add(&term);
            if term.norm1() < 1e-18 {
                break;
            }
        }
        for _ in 0..s {
            result = result.mul(&result);
        }
        result
    }
}

/// `D(alpha) = exp(alpha a^dagger - alpha* a)` on `n` truncated levels.
pub fn displacement_matrix(alpha: Complex64, n: usize) -> Mat {
    let mut g = Mat::zeros(n);
    for k in 0..n - 1 {
        let s = ((k + 1) as f64).sqrt();
        // <k+1| a^dagger |k> and <k| a |k+1>
        g.a[(k + 1) * n + k] += alpha * s;
        g.a[k * n + k + 1] -= alpha.conj() * s;
    }
    g.expm()
}

/// Separable discrete convolution of `w` (row-major `ny x nx`, spacings
/// `dx`, `dy`) with `(2/pi) exp(-2 |z|^2)`.
pub fn gaussian_smooth(w: &[f64], nx: usize, ny: usize, dx: f64, dy: f64) -> Vec<f64> {
    let kern = |d: f64| (-2.0 * d * d).exp();
    let mut tmp = vec![0.0; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let mut acc = 0.0;
            for k in 0..nx {
                acc += w[j * nx + k] * kern((i as f64 - k as f64) * dx);
            }
            tmp[j * nx + i] = acc * dx;
        }
    }
    let mut out = vec![0.0; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let mut acc = 0.0;
            for l in 0..ny {
                acc += tmp[l * nx + i] * kern((j as f64 - l as f64) * dy);
            }
            out[j * nx + i] = acc * dy * std::f64::consts::FRAC_2_PI;
        }
    }
    out
}
