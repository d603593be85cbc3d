use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use nlcs_core::phasespace::field_over_grid;
use nlcs_core::stats::{
    closed_form_distribution_a, closed_form_distribution_d, mandel_sweep, photon_distribution, standard_q,
    PhotonDistribution,
};
use nlcs_core::{Family, FieldKind, FieldSource, MandelSweep};
use serde::Serialize;
use serde_json::json;

use crate::config::{Command, Format, RunConfig};

/// Version of every JSON document this tool writes.
pub const SCHEMA_VERSION: u32 = 1;

/// Result of one run: the data file and what it held.
#[derive(Debug)]
pub struct RunOutput {
    pub data: PathBuf,
    pub sidecar: PathBuf,
}

/// `<out>.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

#[derive(Serialize)]
struct Sidecar<'a> {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    argv: &'a [String],
    config: &'a RunConfig,
    data_file: String,
    /// Points that failed and were left empty in the data file.
    failed_points: Vec<String>,
    wall_time_s: f64,
}

/// Execute `config`, write its data file and the metadata sidecar.
///
/// A mandel sweep with failed points still writes both files, then
/// reports the failures as an error.
pub fn run(config: &RunConfig, argv: &[String]) -> Result<RunOutput> {
    config.validate()?;
    let start = Instant::now();
    let (bytes, failed) = compute(config)?;
    write_file(&config.out, &bytes)?;
    let sidecar = sidecar_path(&config.out);
    let meta = Sidecar {
        schema_version: SCHEMA_VERSION,
        tool: "nlcs",
        version: env!("CARGO_PKG_VERSION"),
        argv,
        config,
        data_file: config.out.display().to_string(),
        failed_points: failed.clone(),
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&meta)? + "\n";
    write_file(&sidecar, text.as_bytes())?;
    if !failed.is_empty() {
        bail!(
            "{} point(s) failed certification (left empty in {}): {}",
            failed.len(),
            config.out.display(),
            failed.join("; ")
        );
    }
    Ok(RunOutput {
        data: config.out.clone(),
        sidecar,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn compute(config: &RunConfig) -> Result<(Vec<u8>, Vec<String>)> {
    let tol = &config.tolerances;
    let context = || format!("{} for family {}", config.command.name(), config.family);
    match config.command {
        Command::State => {
            let state = config.spec()?.build(config.dim, tol).with_context(context)?;
            let bytes = match config.format {
                Format::Json => (state.to_json() + "\n").into_bytes(),
                Format::Csv => {
                    let mut s = String::from("n,re,im\n");
                    for (n, c) in state.coefficients().iter().enumerate() {
                        writeln!(s, "{n},{},{}", c.re, c.im)?;
                    }
                    s.into_bytes()
                }
            };
            Ok((bytes, vec![]))
        }
        Command::Dist => {
            let dist = distribution(config).with_context(context)?;
            Ok((render_distribution(config, &dist)?, vec![]))
        }
        Command::Mandel => {
            let alphas = config.sweep.expect("validated").alphas();
            let sweep = mandel_sweep(config.family, config.m, config.params(), &alphas, tol).with_context(context)?;
            let failed = sweep.failures().map(|(a, e)| format!("alpha = {a}: {e}")).collect();
            Ok((render_mandel(config, &sweep)?, failed))
        }
        Command::Husimi | Command::Wigner => {
            let kind = if config.command == Command::Husimi {
                FieldKind::Husimi
            } else {
                FieldKind::Wigner
            };
            let spec = config.spec()?;
            let source = if config.closed_form {
                FieldSource::ClosedForm(spec)
            } else {
                FieldSource::State(spec.build(config.dim, tol).with_context(context)?)
            };
            let grid = config.grid.expect("validated");
            let field = field_over_grid(kind, &source, &grid, tol).with_context(context)?;
            let bytes = match config.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    field.write_csv(&mut buf)?;
                    buf
                }
                Format::Json => (field.to_json() + "\n").into_bytes(),
            };
            Ok((bytes, vec![]))
        }
    }
}

fn distribution(config: &RunConfig) -> Result<PhotonDistribution> {
    let state = config.spec()?.build(config.dim, &config.tolerances)?;
    if !config.closed_form {
        return Ok(photon_distribution(&state));
    }
    let kmax = state.dim() - 1;
    let p = config.params().expect("validated");
    Ok(match config.family {
        Family::Nlcs | Family::DpancsA => closed_form_distribution_a(config.alpha(), config.m, p, kmax)?,
        _ => closed_form_distribution_d(config.alpha(), config.m, p, kmax)?,
    })
}

fn render_distribution(config: &RunConfig, dist: &PhotonDistribution) -> Result<Vec<u8>> {
    Ok(match config.format {
        Format::Csv => {
            let mut s = String::from("k,probability\n");
            for (k, p) in dist.probabilities.iter().enumerate() {
                writeln!(s, "{k},{p}")?;
            }
            s.into_bytes()
        }
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "family": config.family,
                "alpha_re": config.alpha_re,
                "alpha_im": config.alpha_im,
                "m": config.m,
                "chi_over_omega0": config.chi_over_omega0,
                "mean": dist.mean(),
                "variance": dist.variance(),
                "probabilities": dist.probabilities,
            });
            (serde_json::to_string(&doc)? + "\n").into_bytes()
        }
    })
}

fn render_mandel(config: &RunConfig, sweep: &MandelSweep) -> Result<Vec<u8>> {
    let chi = config.chi_over_omega0.map(|c| c.to_string()).unwrap_or_default();
    Ok(match config.format {
        Format::Csv => {
            let mut s = String::from("alpha,q_paper,q_standard,family,m,chi_over_omega0\n");
            for (a, q) in sweep.alphas.iter().zip(&sweep.q_values) {
                let (qp, qs) = match q {
                    Some(q) => (q.to_string(), standard_q(*q).to_string()),
                    None => (String::new(), String::new()),
                };
                writeln!(s, "{a},{qp},{qs},{},{},{chi}", config.family, config.m)?;
            }
            s.into_bytes()
        }
        Format::Json => {
            let points: Vec<_> = sweep
                .alphas
                .iter()
                .zip(&sweep.q_values)
                .map(|(a, q)| json!({"alpha": a, "q_paper": q, "q_standard": q.map(standard_q)}))
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "family": config.family,
                "m": config.m,
                "chi_over_omega0": config.chi_over_omega0,
                "points": points,
            });
            (serde_json::to_string(&doc)? + "\n").into_bytes()
        }
    })
}
