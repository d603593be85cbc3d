//! Validated run configuration.
//!
//! Everything the CLI computes is described by a [`RunConfig`]; figure
//! presets are lists of them. Validation happens before any computation and
//! names the offending flag.

use std::path::PathBuf;

use anyhow::{bail, Result};
use nlcs_core::{Complex64, Family, KerrParams, PhaseSpaceGrid, StateSpec, Tolerances};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    State,
    Dist,
    Mandel,
    Husimi,
    Wigner,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::State => "state",
            Command::Dist => "dist",
            Command::Mandel => "mandel",
            Command::Husimi => "husimi",
            Command::Wigner => "wigner",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Real amplitudes `alpha_min, alpha_min + h, ..., alpha_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sweep {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn alphas(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.alpha_min];
        }
        let h = (self.alpha_max - self.alpha_min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.alpha_max
                } else {
                    self.alpha_min + i as f64 * h
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub family: Family,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub m: u32,
    pub chi_over_omega0: Option<f64>,
    /// Minimum Fock dimension; construction may grow past it.
    pub dim: usize,
    pub grid: Option<PhaseSpaceGrid>,
    pub sweep: Option<Sweep>,
    /// Evaluate the family's explicit series instead of the state vector.
    pub closed_form: bool,
    pub out: PathBuf,
    pub format: Format,
    pub tolerances: Tolerances,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.family == Family::Custom {
            bail!(
                "--family custom cannot be constructed; choose one of coherent, pacs, nlcs, docs, dpancs-a, dpancs-d"
            );
        }
        match (self.family.is_deformed(), self.chi_over_omega0) {
            (true, None) => bail!("--chi is required for family {}", self.family),
            (false, Some(_)) => bail!("--chi is not accepted for the undeformed family {}", self.family),
            (true, Some(chi)) if !(chi > 0.0 && chi < 1.0) => {
                bail!("--chi must lie in the open interval (0, 1), got {chi}")
            }
            _ => {}
        }
        if self.m != 0 && !self.family.adds_photons() {
            bail!(
                "--m is only accepted for photon-added families (pacs, dpancs-a, dpancs-d), not {}",
                self.family
            );
        }
        if !(self.alpha_re.is_finite() && self.alpha_im.is_finite()) {
            bail!("--alpha and --alpha-im must be finite");
        }
        if self.dim == 0 {
            bail!("--dim must be at least 1");
        }
        if let Err(e) = self.tolerances.validate() {
            bail!("tolerance flags (--rel-tol, --tail-tol, --tolerance-profile): {e}");
        }
        match self.command {
            Command::Mandel => {
                let s = self.sweep.ok_or_else(|| anyhow::anyhow!("mandel needs a sweep"))?;
                if !(s.alpha_min.is_finite() && s.alpha_min >= 0.0) {
                    bail!("--alpha-min must be finite and nonnegative, got {}", s.alpha_min);
                }
                if !(s.alpha_max.is_finite() && s.alpha_max >= s.alpha_min) {
                    bail!(
                        "--alpha-max must be finite and at least --alpha-min, got {}",
                        s.alpha_max
                    );
                }
                if s.steps == 0 {
                    bail!("--steps must be at least 1");
                }
                if self.closed_form {
                    bail!("--closed-form is not available for mandel");
                }
            }
            Command::Husimi | Command::Wigner => {
                let g = self.grid.ok_or_else(|| anyhow::anyhow!("--grid is required"))?;
                if let Err(e) = g.validate() {
                    bail!("--grid: {e}");
                }
                if self.closed_form {
                    let ok = match (self.command, self.family) {
                        (Command::Husimi, _) => true,
                        (Command::Wigner, Family::Pacs) => false,
                        _ => true,
                    };
                    if !ok {
                        bail!(
                            "--closed-form: no closed-form Wigner function for family {}",
                            self.family
                        );
                    }
                }
            }
            Command::Dist => {
                if self.closed_form
                    && !matches!(
                        self.family,
                        Family::DpancsA | Family::DpancsD | Family::Nlcs | Family::Docs
                    )
                {
                    bail!(
                        "--closed-form distributions exist only for the deformed families, not {}",
                        self.family
                    );
                }
            }
            Command::State => {
                if self.closed_form {
                    bail!("--closed-form is not available for state");
                }
            }
        }
        Ok(())
    }

    pub fn params(&self) -> Option<KerrParams> {
        self.chi_over_omega0.map(|c| KerrParams::new(c).expect("validated"))
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.alpha_re, self.alpha_im)
    }

    pub fn spec(&self) -> Result<StateSpec> {
        Ok(StateSpec::new(self.family, self.alpha(), self.m, self.params())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(command: Command, family: Family) -> RunConfig {
        RunConfig {
            command,
            family,
            alpha_re: 1.0,
            alpha_im: 0.0,
            m: 0,
            chi_over_omega0: None,
            dim: 1,
            grid: Some("-4:4:11".parse().unwrap()),
            sweep: Some(Sweep {
                alpha_min: 0.0,
                alpha_max: 4.0,
                steps: 5,
            }),
            closed_form: false,
            out: PathBuf::from("out.csv"),
            format: Format::Csv,
            tolerances: Tolerances::default(),
        }
    }

    fn message(c: &RunConfig) -> String {
        c.validate().unwrap_err().to_string()
    }

    #[test]
    fn messages_name_the_offending_flag() {
        let mut c = base(Command::Dist, Family::Coherent);
        c.chi_over_omega0 = Some(0.1);
        assert!(message(&c).contains("--chi"));

        let c = base(Command::Dist, Family::Nlcs);
        assert!(message(&c).contains("--chi is required"));

        let mut c = base(Command::Dist, Family::Docs);
        c.chi_over_omega0 = Some(1.5);
        assert!(message(&c).contains("--chi must lie"));

        let mut c = base(Command::Dist, Family::Coherent);
        c.m = 2;
        assert!(message(&c).contains("--m"));

        let mut c = base(Command::Mandel, Family::Pacs);
        c.sweep = Some(Sweep {
            alpha_min: 2.0,
            alpha_max: 1.0,
            steps: 3,
        });
        assert!(message(&c).contains("--alpha-max"));

        let mut c = base(Command::Wigner, Family::Pacs);
        c.closed_form = true;
        assert!(message(&c).contains("--closed-form"));
    }

    #[test]
    fn valid_configuration_passes() {
        let mut c = base(Command::Wigner, Family::DpancsA);
        c.m = 1;
        c.chi_over_omega0 = Some(0.15);
        c.validate().unwrap();
        assert_eq!(c.spec().unwrap().family, Family::DpancsA);
    }

    #[test]
    fn sweep_endpoints_are_exact() {
        let s = Sweep {
            alpha_min: 0.0,
            alpha_max: 4.0,
            steps: 81,
        };
        let a = s.alphas();
        assert_eq!(a.len(), 81);
        assert_eq!(a[0], 0.0);
        assert_eq!(a[80], 4.0);
        assert!((a[1] - 0.05).abs() < 1e-15);
    }
}
