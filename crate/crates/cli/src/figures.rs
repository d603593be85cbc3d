use std::path::Path;

use anyhow::{bail, Result};
use nlcs_core::{Family, PhaseSpaceGrid, Tolerances};

use crate::config::{Command, Format, RunConfig, Sweep};

const KERR_FIG1: f64 = 0.1;
const KERR: f64 = 0.15;

fn base(command: Command, family: Family, alpha: f64, m: u32, chi: Option<f64>, tol: &Tolerances) -> RunConfig {
    RunConfig {
        command,
        family,
        alpha_re: alpha,
        alpha_im: 0.0,
        m,
        chi_over_omega0: chi,
        dim: 1,
        grid: None,
        sweep: None,
        closed_form: false,
        out: Default::default(),
        format: Format::Csv,
        tolerances: *tol,
    }
}

fn field(command: Command, family: Family, beta: f64, m: u32, grid: &str, tol: &Tolerances) -> Result<RunConfig> {
    Ok(RunConfig {
        grid: Some(grid.parse::<PhaseSpaceGrid>()?),
        ..base(command, family, beta, m, Some(KERR), tol)
    })
}

/// The run configurations that regenerate figure `n`, writing into `dir`.
pub fn figure_configs(n: u32, dir: &Path, tol: &Tolerances) -> Result<Vec<RunConfig>> {
    let mut configs = match n {
        1 => vec![
            base(Command::Dist, Family::Pacs, 3.0, 1, None, tol),
            base(Command::Dist, Family::DpancsA, 3.0, 1, Some(KERR_FIG1), tol),
            base(Command::Dist, Family::DpancsD, 3.0, 1, Some(KERR_FIG1), tol),
        ],
        2 => {
            let sweep = Sweep {
                alpha_min: 0.0,
                alpha_max: 4.0,
                steps: 81,
            };
            let mut v = Vec::new();
            for m in [0, 1] {
                for (family, chi) in [
                    (Family::Pacs, None),
                    (Family::DpancsA, Some(KERR)),
                    (Family::DpancsD, Some(KERR)),
                ] {
                    v.push(RunConfig {
                        sweep: Some(sweep),
                        ..base(Command::Mandel, family, 0.0, m, chi, tol)
                    });
                }
            }
            v
        }
        3 => vec![field(Command::Husimi, Family::DpancsA, 1.1, 1, "-4:4:161", tol)?],
        4 => vec![field(Command::Husimi, Family::DpancsD, 1.1, 1, "-4:4:161", tol)?],
        5 => vec![field(Command::Wigner, Family::DpancsA, 1.1, 1, "-4:4:161", tol)?],
        6 => vec![field(Command::Wigner, Family::DpancsD, 1.1, 1, "-4:4:161", tol)?],
        7 => vec![field(Command::Wigner, Family::DpancsA, 0.5, 4, "-3:3:161", tol)?],
        other => bail!("figure must be between 1 and 7, got {other}"),
    };
    for c in &mut configs {
        let name = match c.command {
            Command::Mandel => format!("fig{n}_{}_{}_m{}.csv", c.command.name(), c.family, c.m),
            _ => format!("fig{n}_{}_{}.csv", c.command.name(), c.family),
        };
        c.out = dir.join(name);
    }
    Ok(configs)
}
