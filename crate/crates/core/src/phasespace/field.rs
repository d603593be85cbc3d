use std::f64::consts::FRAC_1_PI;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::PhaseSpaceGrid;
use super::husimi::{coherent_overlap, husimi_closed_a, husimi_closed_d, husimi_coherent, husimi_pacs_closed, prepare};
use super::wigner::{wigner_closed_a_with, wigner_closed_d_with, wigner_coherent, wigner_series, WIGNER_BOUND};
use crate::error::{Error, Result};
use crate::states::{Family, FockState, StateSpec};
use crate::tolerance::Tolerances;

/// Version of the JSON field layout.
pub const FIELD_SCHEMA_VERSION: u32 = 1;

/// Slack allowed on the Husimi and Wigner bounds.
const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Husimi,
    Wigner,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::Husimi => "husimi",
            FieldKind::Wigner => "wigner",
        })
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "husimi" => Ok(FieldKind::Husimi),
            "wigner" => Ok(FieldKind::Wigner),
            other => Err(Error::InvalidParameter(format!("unknown field kind '{other}'"))),
        }
    }
}

/// What a field is evaluated from.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSource {
    /// Overlaps of a Fock vector with coherent or displaced number states.
    State(FockState),
    /// The explicit series of the family named by the spec.
    ClosedForm(StateSpec),
}

impl FieldSource {
    fn label(&self) -> FieldLabel {
        let (spec, path) = match self {
            FieldSource::State(s) => (*s.label(), "generic"),
            FieldSource::ClosedForm(spec) => (*spec, "closed-form"),
        };
        FieldLabel {
            family: spec.family,
            alpha_re: spec.alpha.re,
            alpha_im: spec.alpha.im,
            m: spec.m,
            chi_over_omega0: spec.params.map(|p| p.chi_over_omega0()),
            path: path.to_string(),
        }
    }
}

/// Provenance carried with every field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldLabel {
    pub family: Family,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub m: u32,
    pub chi_over_omega0: Option<f64>,
    /// `generic` or `closed-form`.
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceField {
    pub grid: PhaseSpaceGrid,
    pub kind: FieldKind,
    /// Row-major, `values[j * nx + i]` at `z = x_i + i y_j`.
    pub values: Vec<f64>,
    pub source_label: FieldLabel,
}

#[derive(Serialize)]
struct FieldJson<'a> {
    schema_version: u32,
    grid: &'a PhaseSpaceGrid,
    kind: FieldKind,
    values: &'a [f64],
    source_label: &'a FieldLabel,
}

impl PhaseSpaceField {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid.nx + i]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    fn trapezoid(&self, f: impl Fn(f64) -> f64) -> f64 {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let w = |i: usize, n: usize| if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        let mut acc = 0.0;
        for j in 0..ny {
            let mut row = 0.0;
            for i in 0..nx {
                row += w(i, nx) * f(self.value(i, j));
            }
            acc += w(j, ny) * row;
        }
        acc * self.grid.dx() * self.grid.dy()
    }

    /// Trapezoid-rule integral over the grid.
    pub fn integral(&self) -> f64 {
        self.trapezoid(|v| v)
    }

    /// Trapezoid-rule integral of `|value|`.
    pub fn abs_integral(&self) -> f64 {
        self.trapezoid(f64::abs)
    }

    /// `int |W| - 1`; zero for a nonnegative normalized field.
    pub fn negativity(&self) -> f64 {
        self.abs_integral() - 1.0
    }

    /// Largest `|value|` on the grid edges, for checking containment.
    pub fn boundary_max(&self) -> f64 {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let mut m = 0.0f64;
        for i in 0..nx {
            m = m.max(self.value(i, 0).abs()).max(self.value(i, ny - 1).abs());
        }
        for j in 0..ny {
            m = m.max(self.value(0, j).abs()).max(self.value(nx - 1, j).abs());
        }
        m
    }

    /// Whether every value respects `0 <= Q <= 1/pi` or `|W| <= 2/pi`.
    pub fn within_bounds(&self) -> bool {
        match self.kind {
            FieldKind::Husimi => self.min() >= -BOUND_SLACK && self.max() <= FRAC_1_PI + BOUND_SLACK,
            FieldKind::Wigner => self.values.iter().all(|v| v.abs() <= WIGNER_BOUND + BOUND_SLACK),
        }
    }

    /// `x,y,value` lines with a header, in storage order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y,value")?;
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                writeln!(out, "{},{},{}", self.grid.x(i), self.grid.y(j), self.value(i, j))?;
            }
        }
        Ok(())
    }

    /// `{schema_version, grid, kind, values, source_label}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FieldJson {
            schema_version: FIELD_SCHEMA_VERSION,
            grid: &self.grid,
            kind: self.kind,
            values: &self.values,
            source_label: &self.source_label,
        })
        .expect("field serialization is infallible")
    }
}

fn closed_point(kind: FieldKind, spec: &StateSpec, z: Complex64, tol: &Tolerances) -> Result<f64> {
    let a = spec.alpha;
    let p = spec.params;
    match (kind, spec.family) {
        (FieldKind::Husimi, Family::Coherent) => Ok(husimi_coherent(a, z)),
        (FieldKind::Husimi, Family::Pacs) => husimi_pacs_closed(a, spec.m, z),
        (FieldKind::Husimi, Family::Nlcs | Family::DpancsA) => husimi_closed_a(a, spec.m, p.expect("validated"), z),
        (FieldKind::Husimi, Family::Docs | Family::DpancsD) => husimi_closed_d(a, spec.m, p.expect("validated"), z),
        (FieldKind::Wigner, Family::Coherent) => Ok(wigner_coherent(a, z)),
        (FieldKind::Wigner, Family::Nlcs | Family::DpancsA) => {
            wigner_closed_a_with(z, a, spec.m, p.expect("validated"), tol)
        }
        (FieldKind::Wigner, Family::Docs | Family::DpancsD) => {
            wigner_closed_d_with(z, a, spec.m, p.expect("validated"), tol)
        }
        (kind, family) => Err(Error::InvalidParameter(format!(
            "no closed-form {kind} for family {family}"
        ))),
    }
}

/// Evaluate `kind` at every grid point.
///
/// Points run in parallel but each value depends only on its own point, so
/// the result is identical for any thread count. The first failing point in
/// storage order is reported with its location.
pub fn field_over_grid(
    kind: FieldKind,
    source: &FieldSource,
    grid: &PhaseSpaceGrid,
    tol: &Tolerances,
) -> Result<PhaseSpaceField> {
    grid.validate()?;
    tol.validate()?;
    // Husimi needs the kernel covered once for the whole grid
    let prepared = match (kind, source) {
        (FieldKind::Husimi, FieldSource::State(s)) => Some(prepare(s, grid.max_modulus(), tol)?),
        _ => None,
    };
    if let FieldSource::ClosedForm(spec) = source {
        spec.validate()?;
    }
    let nx = grid.nx;
    let results: Vec<Result<f64>> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let z = grid.point(idx % nx, idx / nx);
            match (kind, source) {
                (FieldKind::Husimi, FieldSource::State(_)) => {
                    let s = prepared.as_ref().expect("prepared above");
                    Ok(coherent_overlap(s.coefficients(), z).norm_sqr() * FRAC_1_PI)
                }
                (FieldKind::Wigner, FieldSource::State(s)) => Ok(wigner_series(s, z, tol)?.value),
                (kind, FieldSource::ClosedForm(spec)) => closed_point(kind, spec, z, tol),
            }
        })
        .collect();
    let mut values = Vec::with_capacity(results.len());
    for (idx, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => values.push(v),
            Err(e) => {
                let (i, j) = (idx % nx, idx / nx);
                return Err(Error::GridPoint {
                    i,
                    j,
                    x: grid.x(i),
                    y: grid.y(j),
                    source: Box::new(e),
                });
            }
        }
    }
    Ok(PhaseSpaceField {
        grid: *grid,
        kind,
        values,
        source_label: source.label(),
    })
}
