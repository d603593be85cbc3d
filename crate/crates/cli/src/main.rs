//! `nlcs`: build nonlinear coherent states and export their photon
//! statistics and phase-space functions as CSV or JSON.

mod config;
mod figures;
mod run;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use nlcs_core::{Family, PhaseSpaceGrid, Profile, Tolerances};

use config::{Command, Format, RunConfig, Sweep};

#[derive(Parser)]
#[command(name = "nlcs", version, about = "Nonlinear coherent states in a Kerr medium")]
struct Cli {
    /// Tolerance preset: default, strict or fast.
    #[arg(long, global = true, env = "NLCS_TOLERANCE_PROFILE", default_value = "default")]
    tolerance_profile: String,

    /// Relative tolerance of every series evaluation.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    /// Certified bound on the Fock-space truncation tail.
    #[arg(long, global = true)]
    tail_tol: Option<f64>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fock coefficients of a state.
    State {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Photon-number distribution P_k.
    Dist {
        #[command(flatten)]
        state: StateArgs,
        /// Use the explicit distribution formula instead of |c_k|^2.
        #[arg(long)]
        closed_form: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Mandel parameter over a range of real alpha.
    Mandel {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0.0)]
        alpha_min: f64,
        #[arg(long, default_value_t = 4.0)]
        alpha_max: f64,
        /// Number of sweep points, endpoints included.
        #[arg(long, default_value_t = 81)]
        steps: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Husimi Q function over a grid.
    Husimi {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Wigner function over a grid.
    Wigner {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write the data behind figure 1 to 7.
    Figure {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=7))]
        n: u32,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// coherent, pacs, nlcs, docs, dpancs-a or dpancs-d.
    #[arg(long)]
    family: Family,
    /// Number of added photons.
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Kerr ratio chi/omega0 in (0, 1); deformed families only.
    #[arg(long)]
    chi: Option<f64>,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Real part of alpha.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Imaginary part of alpha.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha_im: f64,
    /// Minimum Fock dimension.
    #[arg(long, default_value_t = 1)]
    dim: usize,
}

#[derive(Args)]
struct FieldArgs {
    /// Square grid min:max:n.
    #[arg(long, default_value = "-4:4:161", allow_hyphen_values = true)]
    grid: PhaseSpaceGrid,
    /// Evaluate the family's explicit series instead of the state vector.
    #[arg(long)]
    closed_form: bool,
}

#[derive(Args)]
struct OutArgs {
    /// Output data file; a `.meta.json` sidecar is written next to it.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

fn tolerances(cli: &Cli) -> Result<Tolerances> {
    let profile: Profile = cli.tolerance_profile.parse().context("--tolerance-profile")?;
    let mut tol = Tolerances::profile(profile);
    if let Some(r) = cli.rel_tol {
        tol.series.rel_tol = r;
    }
    if let Some(t) = cli.tail_tol {
        tol.tail_tol = t;
    }
    Ok(tol)
}

fn state_config(command: Command, s: StateArgs, out: OutArgs, tol: Tolerances) -> RunConfig {
    RunConfig {
        command,
        family: s.family.family,
        alpha_re: s.alpha,
        alpha_im: s.alpha_im,
        m: s.family.m,
        chi_over_omega0: s.family.chi,
        dim: s.dim,
        grid: None,
        sweep: None,
        closed_form: false,
        out: out.out,
        format: out.format,
        tolerances: tol,
    }
}

fn main() -> Result<()> {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let tol = tolerances(&cli)?;
    let configs = match cli.command {
        Cmd::State { state, out } => vec![state_config(Command::State, state, out, tol)],
        Cmd::Dist {
            state,
            closed_form,
            out,
        } => vec![RunConfig {
            closed_form,
            ..state_config(Command::Dist, state, out, tol)
        }],
        Cmd::Mandel {
            family,
            alpha_min,
            alpha_max,
            steps,
            out,
        } => vec![RunConfig {
            command: Command::Mandel,
            family: family.family,
            alpha_re: 0.0,
            alpha_im: 0.0,
            m: family.m,
            chi_over_omega0: family.chi,
            dim: 1,
            grid: None,
            sweep: Some(Sweep {
                alpha_min,
                alpha_max,
                steps,
            }),
            closed_form: false,
            out: out.out,
            format: out.format,
            tolerances: tol,
        }],
        Cmd::Husimi { state, field, out } => vec![RunConfig {
            grid: Some(field.grid),
            closed_form: field.closed_form,
            ..state_config(Command::Husimi, state, out, tol)
        }],
        Cmd::Wigner { state, field, out } => vec![RunConfig {
            grid: Some(field.grid),
            closed_form: field.closed_form,
            ..state_config(Command::Wigner, state, out, tol)
        }],
        Cmd::Figure { n, out_dir } => figures::figure_configs(n, &out_dir, &tol)?,
    };
    for config in &configs {
        let written = run::run(config, &argv)?;
        eprintln!("wrote {} ({})", written.data.display(), written.sidecar.display());
    }
    Ok(())
}
