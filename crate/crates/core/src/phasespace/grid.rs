use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex64;

/// Rectangular grid over the complex plane.
///
/// Point `(i, j)` sits at `z = x_i + i y_j` with
/// `x_i = x_min + i (x_max - x_min)/(nx - 1)` and likewise for `y_j`, so both
/// endpoints are included. Values over the grid are stored row-major with
/// `y` as the slow index: `values[j * nx + i]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl PhaseSpaceGrid {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let grid = PhaseSpaceGrid {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// `[min, max]^2` with `n` points per axis.
    pub fn square(min: f64, max: f64, n: usize) -> Result<Self> {
        Self::new(min, max, min, max, n, n)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(self.x_min < self.x_max) || !(self.y_min < self.y_max) {
            return Err(Error::InvalidParameter(format!(
                "grid bounds must be finite with min < max, got x [{}, {}], y [{}, {}]",
                self.x_min, self.x_max, self.y_min, self.y_max
            )));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 points per axis, got {} x {}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i == self.nx - 1 {
            self.x_max
        } else {
            self.x_min + i as f64 * self.dx()
        }
    }

    pub fn y(&self, j: usize) -> f64 {
        if j == self.ny - 1 {
            self.y_max
        } else {
            self.y_min + j as f64 * self.dy()
        }
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.x(i), self.y(j))
    }

    /// Largest `|z|` over the grid, attained at a corner.
    pub fn max_modulus(&self) -> f64 {
        let x = self.x_min.abs().max(self.x_max.abs());
        let y = self.y_min.abs().max(self.y_max.abs());
        x.hypot(y)
    }
}

/// Parses `min:max:n` as a square grid, e.g. `-4:4:161`.
impl FromStr for PhaseSpaceGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("grid spec '{s}' is not of the form min:max:n"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let min: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let max: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        PhaseSpaceGrid::square(min, max, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_square_spec() {
        let g: PhaseSpaceGrid = "-4:4:161".parse().unwrap();
        assert_eq!((g.nx, g.ny), (161, 161));
        assert_eq!(g.x(0), -4.0);
        assert_eq!(g.x(160), 4.0);
        assert!((g.dx() - 0.05).abs() < 1e-15);
        assert_eq!(g.x(80), 0.0);
    }

    #[test]
    fn rejects_malformed_specs() {
        for s in ["-4:4", "4:-4:10", "a:b:c", "0:1:1", "-1:1:x"] {
            assert!(s.parse::<PhaseSpaceGrid>().is_err(), "{s}");
        }
    }
}
