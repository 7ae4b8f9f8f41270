//! Command-line front end for the `spinflip` library: single-point rates,
//! parameter sweeps, asymptotic validation and the material presets.

pub mod config;
pub mod error;
pub mod eval;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use spinflip::materials::skin_depth;
use spinflip::materials::PRESET_NAMES;
use spinflip::{validate_asymptotic, validity_report, Material, TransitionSpec};

use config::{OutputFormat, RunConfig};
pub use error::CliError;
use eval::Row;

#[derive(Debug, Parser)]
#[command(
    name = "spinflip",
    version,
    about = "Spin-flip lifetimes of a trapped atom above a conducting slab"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single scenario
    Rate(Common),
    /// Tabulate rates along temperature, distance or frequency
    Sweep(Common),
    /// Compare the near-field closed form with full quadrature on a (T, z) grid
    Validate(Common),
    /// List the material presets
    Presets,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON config file; flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Prefix the output with a provenance header
    #[arg(long)]
    pub meta: bool,
    /// Re-check the rate assembly identities on every row; exit 1 on violation
    #[arg(long)]
    pub audit: bool,
    #[command(flatten)]
    pub params: RunConfig,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        Ok(base.overlay(self.params.clone()).with_defaults())
    }

    fn meta(&self, command: &str, config: &RunConfig) -> Option<Vec<String>> {
        self.meta.then(|| {
            let now = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            vec![
                format!("spinflip {}", env!("CARGO_PKG_VERSION")),
                format!("command: {command}"),
                format!(
                    "config: {}",
                    serde_json::to_string(config).expect("config serializes")
                ),
                format!("generated_unix_s: {now}"),
            ]
        })
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(p) => std::fs::write(p, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }

    fn check_audit(&self, rows: &[Row]) -> Result<(), CliError> {
        if !self.audit {
            return Ok(());
        }
        let failures = eval::audit(rows);
        if failures.is_empty() {
            Ok(())
        } else {
            Err(CliError::Audit(failures.join("; ")))
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Rate(c) => cmd_rate(c),
        Command::Sweep(c) => cmd_sweep(c),
        Command::Validate(c) => cmd_validate(c),
        Command::Presets => {
            print!("{}", presets_table());
            Ok(())
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("spinflip: {e}");
            e.exit_code()
        }
    }
}

pub fn cmd_rate(c: &Common) -> Result<(), CliError> {
    let config = c.resolve()?;
    config.reject_sweep("rate")?;
    config.reject_grid("rate")?;
    let settings = config.quadrature()?;
    let (rows, errors) = eval::evaluate(&config, &settings, None)?;
    if let Some(e) = errors
        .iter()
        .find(|e| !matches!(e, spinflip::Error::Quadrature(_)))
    {
        return Err(CliError::Config(e.to_string()));
    }
    let report = validity_report(&rows[0].scenario)?;
    let meta = c.meta("rate", &config);
    let text = match config.output.unwrap_or(OutputFormat::Text) {
        OutputFormat::Text => {
            let mut s = String::new();
            if let Some(lines) = &meta {
                for l in lines {
                    s.push_str(&format!("# {l}\n"));
                }
            }
            s + &render::text(&rows, &report)
        }
        OutputFormat::Csv => render::csv(&rows, meta.as_deref())?,
        OutputFormat::Json => {
            let m = &rows[0].medium;
            let mut extra = Map::new();
            extra.insert(
                "medium".into(),
                json!({
                    "ns_fraction": m.ns_fraction,
                    "nn_fraction": m.nn_fraction,
                    "lambda_L_m": m.lambda_l.finite(),
                    "skin_depth_m": m.skin_depth.finite(),
                    "sigma_n_S_per_m": m.sigma_n.is_finite().then_some(m.sigma_n),
                }),
            );
            extra.insert("validity".into(), render::validity_json(&report));
            render::json_document(&config, &rows, extra, meta.as_deref())
        }
    };
    c.emit(&text)?;
    if let Some(e) = errors.into_iter().next() {
        return Err(e.into());
    }
    c.check_audit(&rows)
}

pub fn cmd_sweep(c: &Common) -> Result<(), CliError> {
    let config = c.resolve()?;
    config.reject_grid("sweep")?;
    let sweep = config.sweep()?;
    let settings = config.quadrature()?;
    let format = config.output.unwrap_or(OutputFormat::Csv);
    if format == OutputFormat::Text {
        return Err(CliError::Config("`sweep` writes csv or json".into()));
    }
    let points: Vec<Result<Vec<Row>, CliError>> = sweep
        .values()
        .into_par_iter()
        .map(|v| eval::evaluate(&sweep.apply(&config, v), &settings, Some(v)).map(|(rows, _)| rows))
        .collect();
    let mut rows = Vec::new();
    for p in points {
        rows.extend(p?);
    }
    let meta = c.meta("sweep", &config);
    let text = match format {
        OutputFormat::Json => render::json_document(&config, &rows, Map::new(), meta.as_deref()),
        _ => render::csv(&rows, meta.as_deref())?,
    };
    c.emit(&text)?;
    if !rows.iter().any(|r| r.rate().is_some()) {
        return Err(CliError::Quadrature("no sweep point succeeded".into()));
    }
    c.check_audit(&rows)
}

struct GridPoint {
    temperature_k: f64,
    distance_m: f64,
    deviation: f64,
    tau_full: f64,
    tau_asymptotic: f64,
    warnings: Vec<&'static str>,
}

pub fn cmd_validate(c: &Common) -> Result<(), CliError> {
    let config = c.resolve()?;
    config.reject_sweep("validate")?;
    let material = config.material()?;
    if material.as_superconductor().is_none() {
        return Err(CliError::Config(format!(
            "`validate` needs a superconductor, `{}` is a {}",
            config.material_name(),
            material.kind()
        )));
    }
    let settings = config.quadrature()?;
    let tolerance = config.tolerance()?;
    let (temps, dists) = config.grid()?;
    let cells: Vec<(f64, f64)> = temps
        .iter()
        .flat_map(|&t| dists.iter().map(move |&z| (t, z)))
        .collect();
    let evaluated: Vec<Result<(GridPoint, Vec<Row>), CliError>> = cells
        .into_par_iter()
        .map(|(t, z)| {
            let point = RunConfig {
                temperature: Some(t),
                distance_um: Some(z),
                ..config.clone()
            };
            let s = point.scenario()?;
            let v = validate_asymptotic(&s, &settings)?;
            let rows = ["full", "asymptotic"]
                .into_iter()
                .zip([v.full, v.asymptotic])
                .map(|(method, r)| Row {
                    axis_value: None,
                    scenario: s,
                    material: config.material_name().to_string(),
                    method,
                    medium: spinflip::medium_response(&s.material, t, s.omega())
                        .expect("validated scenario"),
                    result: Ok(r),
                })
                .collect();
            Ok((
                GridPoint {
                    temperature_k: t,
                    distance_m: s.distance_m,
                    deviation: v.deviation,
                    tau_full: v.full.tau,
                    tau_asymptotic: v.asymptotic.tau,
                    warnings: v.validity.warnings().map(|w| w.name).collect(),
                },
                rows,
            ))
        })
        .collect();
    let mut grid = Vec::new();
    let mut rows = Vec::new();
    for e in evaluated {
        let (g, r) = e?;
        grid.push(g);
        rows.extend(r);
    }
    let max = grid.iter().map(|g| g.deviation).fold(0.0, f64::max);
    let mean = grid.iter().map(|g| g.deviation).sum::<f64>() / grid.len() as f64;
    let meta = c.meta("validate", &config);
    let text = match config.output.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Text => return Err(CliError::Config("`validate` writes csv or json".into())),
        OutputFormat::Json => {
            let mut extra = Map::new();
            extra.insert(
                "grid".into(),
                Value::Array(
                    grid.iter()
                        .map(|g| {
                            json!({
                                "temperature_K": g.temperature_k,
                                "distance_m": g.distance_m,
                                "deviation": g.deviation,
                                "tau_full_s": g.tau_full,
                                "tau_asymptotic_s": g.tau_asymptotic,
                                "warnings": g.warnings,
                            })
                        })
                        .collect(),
                ),
            );
            extra.insert(
                "summary".into(),
                json!({
                    "max_deviation": max,
                    "mean_deviation": mean,
                    "tolerance": tolerance,
                    "points": grid.len(),
                }),
            );
            render::json_document(&config, &rows, extra, meta.as_deref())
        }
        OutputFormat::Csv => {
            let mut s = String::new();
            if let Some(lines) = &meta {
                for l in lines {
                    s.push_str(&format!("# {l}\n"));
                }
            }
            s.push_str("temperature_K,distance_m,deviation,tau_full_s,tau_asymptotic_s,warnings\n");
            for g in &grid {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    render::number(Some(g.temperature_k)),
                    render::number(Some(g.distance_m)),
                    render::number(Some(g.deviation)),
                    render::number(Some(g.tau_full)),
                    render::number(Some(g.tau_asymptotic)),
                    g.warnings.join(";")
                ));
            }
            eprintln!(
                "max_deviation {} mean_deviation {} over {} points (tolerance {tolerance})",
                render::number(Some(max)),
                render::number(Some(mean)),
                grid.len()
            );
            s
        }
    };
    c.emit(&text)?;
    c.check_audit(&rows)?;
    if max > tolerance {
        return Err(CliError::Tolerance(format!(
            "max deviation {max:e} exceeds tolerance {tolerance:e}"
        )));
    }
    Ok(())
}

pub fn presets_table() -> String {
    let nu = 560e3;
    let omega = TransitionSpec::new(nu)
        .expect("positive frequency")
        .angular_frequency();
    let mut s = format!(
        "{:<12} {:<18} {:>13} {:>11} {:>7} {:>4} {:>19}\n",
        "name", "kind", "lambda_L0_nm", "sigma_S/m", "Tc_K", "p", "delta_560kHz_um"
    );
    for name in PRESET_NAMES {
        let m = Material::preset(name).expect("listed preset exists");
        let dash = || "-".to_string();
        let (lambda, sigma, tc, p) = match &m {
            Material::Superconductor(sc) => (
                format!("{}", sc.lambda_l0_m * 1e9),
                format!("{:e}", sc.sigma_normal),
                format!("{}", sc.tc_k),
                format!("{}", sc.gc_exponent),
            ),
            Material::NormalMetal(nm) => {
                (dash(), format!("{:.4e}", nm.conductivity()), dash(), dash())
            }
            Material::PerfectConductor => (dash(), "inf".into(), dash(), dash()),
        };
        let delta = match &m {
            Material::Superconductor(sc) => skin_depth(sc.sigma_normal, omega).finite(),
            Material::NormalMetal(nm) => skin_depth(nm.conductivity(), omega).finite(),
            Material::PerfectConductor => Some(0.0),
        }
        .map_or(dash(), |d| format!("{:.3}", d * 1e6));
        s.push_str(&format!(
            "{name:<12} {:<18} {lambda:>13} {sigma:>11} {tc:>7} {p:>4} {delta:>19}\n",
            m.kind()
        ));
    }
    s
}
