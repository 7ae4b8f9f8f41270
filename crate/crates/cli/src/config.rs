//! Flat run configuration shared by the command-line flags and `--config` files.

use std::path::Path;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use spinflip::{
    Material, NormalMetal, QuadratureSettings, Scenario, Superconductor, TransitionSpec,
};

use crate::error::CliError;

pub const DEFAULT_TEMPERATURE_K: f64 = 4.2;
pub const DEFAULT_DISTANCE_UM: f64 = 50.0;
pub const DEFAULT_FREQUENCY_KHZ: f64 = 560.0;
pub const DEFAULT_SWEEP_POINTS: usize = 100;
pub const DEFAULT_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Full,
    Asymptotic,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Temperature,
    Distance,
    Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

/// Every field is optional so that a file and the flags can be layered.
/// JSON keys are the flag names with `_` for `-`.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Material preset (see `presets`), or `superconductor` / `normal-metal` for custom parameters
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub material: Option<String>,
    /// Temperature [K]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    /// Atom-surface distance [μm]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_um: Option<f64>,
    /// Transition frequency [kHz]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_khz: Option<f64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodChoice>,
    /// Output format; `text` is available for `rate` only
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputFormat>,

    /// London length at T = 0 [nm]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_l0_nm: Option<f64>,
    /// Normal-state conductivity [S/m]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Transition temperature [K]
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tc: Option<f64>,
    /// Exponent p in n_s/n₀ = 1 − (T/T_c)^p
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gc_exponent: Option<f64>,
    /// Superconducting gap frequency 2Δ(0)/ħ [rad/s], used for the validity report
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_freq_rad_s: Option<f64>,
    /// Normal-metal skin depth [μm] at `--skin-depth-ref-khz`
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skin_depth_um: Option<f64>,
    /// Reference frequency of `--skin-depth-um` [kHz]; defaults to the transition frequency
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skin_depth_ref_khz: Option<f64>,

    /// Weight of Ĩ∥ in the slab factor
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin_weight_parallel: Option<f64>,
    /// Weight of Ĩ⊥ in the slab factor
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin_weight_perp: Option<f64>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    /// Bisection budget per evaluation
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_subdivisions: Option<usize>,
    /// Evanescent cutoff Λ: the spectrum is truncated where 2ukz = Λ
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_cutoff: Option<f64>,

    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_axis: Option<Axis>,
    /// First axis value, in the axis' flag units (K, μm or kHz)
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_stop: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_points: Option<usize>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_scale: Option<Scale>,

    /// Largest acceptable asymptotic deviation for `validate`
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_t_min: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_t_max: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_t_points: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_z_min_um: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_z_max_um: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_z_points: Option<usize>,
}

macro_rules! layer {
    ($base:ident, $top:ident; $($f:ident),* $(,)?) => {
        RunConfig { $($f: $top.$f.or($base.$f)),* }
    };
}

impl RunConfig {
    /// Reads a flat config, or the `config` object embedded in a JSON result.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let value = match value {
            serde_json::Value::Object(mut map) if map.contains_key("config") => {
                map.remove("config").unwrap_or_default()
            }
            other => other,
        };
        serde_json::from_value(value)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        layer!(base, top;
            material, temperature, distance_um, frequency_khz, method, output,
            lambda_l0_nm, sigma, tc, gc_exponent, gap_freq_rad_s, skin_depth_um, skin_depth_ref_khz,
            spin_weight_parallel, spin_weight_perp,
            rel_tol, abs_tol, max_subdivisions, tail_cutoff,
            sweep_axis, sweep_start, sweep_stop, sweep_points, sweep_scale,
            tolerance, grid_t_min, grid_t_max, grid_t_points, grid_z_min_um, grid_z_max_um, grid_z_points,
        )
    }

    /// Fills the scenario and quadrature defaults so the config records everything used.
    pub fn with_defaults(mut self) -> RunConfig {
        let q = QuadratureSettings::default();
        self.material.get_or_insert_with(|| "nb".to_string());
        self.temperature.get_or_insert(DEFAULT_TEMPERATURE_K);
        self.distance_um.get_or_insert(DEFAULT_DISTANCE_UM);
        self.frequency_khz.get_or_insert(DEFAULT_FREQUENCY_KHZ);
        self.method.get_or_insert(MethodChoice::Full);
        self.rel_tol.get_or_insert(q.rel_tol);
        self.abs_tol.get_or_insert(q.abs_tol);
        self.max_subdivisions.get_or_insert(q.max_subdivisions);
        self.tail_cutoff.get_or_insert(q.tail_exponent_cutoff);
        self
    }

    fn has_sweep(&self) -> bool {
        self.sweep_axis.is_some()
            || self.sweep_start.is_some()
            || self.sweep_stop.is_some()
            || self.sweep_points.is_some()
            || self.sweep_scale.is_some()
    }

    fn has_grid(&self) -> bool {
        self.tolerance.is_some()
            || self.grid_t_min.is_some()
            || self.grid_t_max.is_some()
            || self.grid_t_points.is_some()
            || self.grid_z_min_um.is_some()
            || self.grid_z_max_um.is_some()
            || self.grid_z_points.is_some()
    }

    pub fn reject_sweep(&self, command: &str) -> Result<(), CliError> {
        if self.has_sweep() {
            return Err(CliError::Config(format!(
                "sweep settings are not accepted by `{command}`"
            )));
        }
        Ok(())
    }

    pub fn reject_grid(&self, command: &str) -> Result<(), CliError> {
        if self.has_grid() {
            return Err(CliError::Config(format!(
                "validation grid settings are not accepted by `{command}`"
            )));
        }
        Ok(())
    }

    pub fn method(&self) -> MethodChoice {
        self.method.unwrap_or(MethodChoice::Full)
    }

    pub fn material_name(&self) -> &str {
        self.material.as_deref().unwrap_or("nb")
    }

    pub fn material(&self) -> Result<Material, CliError> {
        let name = self.material_name();
        let frequency_hz = self.frequency_khz.unwrap_or(DEFAULT_FREQUENCY_KHZ) * 1e3;
        let base = match name {
            "superconductor" => {
                let (Some(l), Some(s), Some(tc)) = (self.lambda_l0_nm, self.sigma, self.tc) else {
                    return Err(CliError::Config(
                        "a custom superconductor needs --lambda-l0-nm, --sigma and --tc".into(),
                    ));
                };
                Material::Superconductor(Superconductor::new(l * 1e-9, s, tc)?)
            }
            "normal-metal" => {
                if self.sigma.is_none() && self.skin_depth_um.is_none() {
                    return Err(CliError::Config(
                        "a custom normal metal needs --sigma or --skin-depth-um".into(),
                    ));
                }
                Material::NormalMetal(NormalMetal::from_conductivity(1.0)?)
            }
            preset => Material::preset(preset)
                .ok_or_else(|| CliError::Config(format!("unknown material `{preset}`")))?,
        };
        match base {
            Material::Superconductor(mut sc) => {
                self.reject(&[
                    ("skin-depth-um", self.skin_depth_um.is_some()),
                    ("skin-depth-ref-khz", self.skin_depth_ref_khz.is_some()),
                ])?;
                if let Some(l) = self.lambda_l0_nm {
                    sc.lambda_l0_m = l * 1e-9;
                }
                let mut sc = Superconductor::new(
                    sc.lambda_l0_m,
                    self.sigma.unwrap_or(sc.sigma_normal),
                    self.tc.unwrap_or(sc.tc_k),
                )?
                .with_gc_exponent(self.gc_exponent.unwrap_or(sc.gc_exponent))?;
                if let Some(g) = self.gap_freq_rad_s.or(sc.gap_freq_rad_s) {
                    sc = sc.with_gap_frequency(g)?;
                }
                Ok(Material::Superconductor(sc))
            }
            Material::NormalMetal(m) => {
                self.reject_superconducting(name)?;
                match (self.sigma, self.skin_depth_um) {
                    (Some(_), Some(_)) => Err(CliError::Config(
                        "give either --sigma or --skin-depth-um, not both".into(),
                    )),
                    (Some(s), None) => {
                        Ok(Material::NormalMetal(NormalMetal::from_conductivity(s)?))
                    }
                    (None, Some(d)) => {
                        let reference = self.skin_depth_ref_khz.map_or(frequency_hz, |f| f * 1e3);
                        Ok(Material::NormalMetal(NormalMetal::from_skin_depth(
                            d * 1e-6,
                            reference,
                        )?))
                    }
                    (None, None) => {
                        self.reject(&[("skin-depth-ref-khz", self.skin_depth_ref_khz.is_some())])?;
                        Ok(Material::NormalMetal(m))
                    }
                }
            }
            Material::PerfectConductor => {
                self.reject_superconducting(name)?;
                self.reject(&[
                    ("sigma", self.sigma.is_some()),
                    ("skin-depth-um", self.skin_depth_um.is_some()),
                    ("skin-depth-ref-khz", self.skin_depth_ref_khz.is_some()),
                ])?;
                Ok(Material::PerfectConductor)
            }
        }
    }

    fn reject_superconducting(&self, name: &str) -> Result<(), CliError> {
        self.reject(&[
            ("lambda-l0-nm", self.lambda_l0_nm.is_some()),
            ("tc", self.tc.is_some()),
            ("gc-exponent", self.gc_exponent.is_some()),
            ("gap-freq-rad-s", self.gap_freq_rad_s.is_some()),
        ])
        .map_err(|e| CliError::Config(format!("{e} for material `{name}`")))
    }

    fn reject(&self, flags: &[(&str, bool)]) -> Result<(), CliError> {
        match flags.iter().find(|(_, set)| *set) {
            Some((flag, _)) => Err(CliError::Config(format!("--{flag} does not apply"))),
            None => Ok(()),
        }
    }

    pub fn transition(&self) -> Result<TransitionSpec, CliError> {
        let t = TransitionSpec::new(self.frequency_khz.unwrap_or(DEFAULT_FREQUENCY_KHZ) * 1e3)?;
        Ok(t.with_spin_weights(
            self.spin_weight_parallel.unwrap_or(t.spin_weight_parallel),
            self.spin_weight_perp.unwrap_or(t.spin_weight_perp),
        )?)
    }

    pub fn scenario(&self) -> Result<Scenario, CliError> {
        Ok(Scenario::new(
            self.transition()?,
            self.distance_um.unwrap_or(DEFAULT_DISTANCE_UM) * 1e-6,
            self.temperature.unwrap_or(DEFAULT_TEMPERATURE_K),
            self.material()?,
        )?)
    }

    pub fn quadrature(&self) -> Result<QuadratureSettings, CliError> {
        let d = QuadratureSettings::default();
        let q = QuadratureSettings {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
            max_subdivisions: self.max_subdivisions.unwrap_or(d.max_subdivisions),
            tail_exponent_cutoff: self.tail_cutoff.unwrap_or(d.tail_exponent_cutoff),
        };
        q.validate()?;
        Ok(q)
    }

    pub fn sweep(&self) -> Result<SweepSpec, CliError> {
        let (Some(axis), Some(start), Some(stop)) =
            (self.sweep_axis, self.sweep_start, self.sweep_stop)
        else {
            return Err(CliError::Config(
                "a sweep needs --sweep-axis, --sweep-start and --sweep-stop".into(),
            ));
        };
        SweepSpec::new(
            axis,
            start,
            stop,
            self.sweep_points.unwrap_or(DEFAULT_SWEEP_POINTS),
            self.sweep_scale.unwrap_or(Scale::Linear),
        )
    }

    pub fn grid(&self) -> Result<(Vec<f64>, Vec<f64>), CliError> {
        let t = SweepSpec::new(
            Axis::Temperature,
            self.grid_t_min.unwrap_or(1.0),
            self.grid_t_max.unwrap_or(7.0),
            self.grid_t_points.unwrap_or(8),
            Scale::Linear,
        )?;
        let z = SweepSpec::new(
            Axis::Distance,
            self.grid_z_min_um.unwrap_or(10.0),
            self.grid_z_max_um.unwrap_or(100.0),
            self.grid_z_points.unwrap_or(8),
            Scale::Linear,
        )?;
        Ok((t.values(), z.values()))
    }

    pub fn tolerance(&self) -> Result<f64, CliError> {
        let tol = self.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Config(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        Ok(tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn new(
        axis: Axis,
        start: f64,
        stop: f64,
        points: usize,
        scale: Scale,
    ) -> Result<Self, CliError> {
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(CliError::Config(format!(
                "sweep needs start < stop, got {start} and {stop}"
            )));
        }
        if points < 2 {
            return Err(CliError::Config(format!(
                "sweep needs at least 2 points, got {points}"
            )));
        }
        if scale == Scale::Log && start <= 0.0 {
            return Err(CliError::Config(
                "a log sweep needs a positive start".into(),
            ));
        }
        Ok(Self {
            axis,
            start,
            stop,
            points,
            scale,
        })
    }

    /// Axis values in flag units; the end points are exact.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * f,
                    Scale::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }

    /// `base` with the swept quantity set to `value`.
    pub fn apply(&self, base: &RunConfig, value: f64) -> RunConfig {
        let mut c = base.clone();
        match self.axis {
            Axis::Temperature => c.temperature = Some(value),
            Axis::Distance => c.distance_um = Some(value),
            Axis::Frequency => c.frequency_khz = Some(value),
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlay_prefers_top() {
        let file = RunConfig {
            temperature: Some(1.0),
            distance_um: Some(20.0),
            ..Default::default()
        };
        let flags = RunConfig {
            temperature: Some(3.0),
            ..Default::default()
        };
        let c = file.overlay(flags);
        assert_eq!(c.temperature, Some(3.0));
        assert_eq!(c.distance_um, Some(20.0));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"temprature": 4.2}"#).is_err());
        let c: RunConfig =
            serde_json::from_str(r#"{"temperature": 4.2, "method": "both"}"#).unwrap();
        assert_eq!(c.method, Some(MethodChoice::Both));
    }

    #[test]
    fn sweep_values_hit_end_points() {
        let s = SweepSpec::new(Axis::Distance, 10.0, 100.0, 7, Scale::Log).unwrap();
        let v = s.values();
        assert_eq!(v[0], 10.0);
        assert_eq!(v[6], 100.0);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(SweepSpec::new(Axis::Distance, 0.0, 1.0, 5, Scale::Log).is_err());
        assert!(SweepSpec::new(Axis::Temperature, 2.0, 1.0, 5, Scale::Linear).is_err());
        assert!(SweepSpec::new(Axis::Temperature, 1.0, 2.0, 1, Scale::Linear).is_err());
    }

    #[test]
    fn material_overrides() {
        let c = RunConfig {
            material: Some("nb".into()),
            tc: Some(9.0),
            ..Default::default()
        };
        assert_eq!(c.material().unwrap().as_superconductor().unwrap().tc_k, 9.0);
        let c = RunConfig {
            material: Some("al".into()),
            tc: Some(9.0),
            ..Default::default()
        };
        assert!(c.material().is_err());
        let c = RunConfig {
            material: Some("superconductor".into()),
            tc: Some(9.0),
            ..Default::default()
        };
        assert!(c.material().is_err());
        let c = RunConfig {
            material: Some("normal-metal".into()),
            sigma: Some(3e7),
            ..Default::default()
        };
        assert!(matches!(c.material().unwrap(), Material::NormalMetal(_)));
        let c = RunConfig {
            material: Some("copper".into()),
            ..Default::default()
        };
        assert!(c.material().is_err());
    }
}
