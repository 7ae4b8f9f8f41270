//! Per-point evaluation shared by `rate` and `sweep`.

use spinflip::{
    asymptotic_rate, full_rate, medium_response, MediumResponse, QuadratureSettings, RateBreakdown,
    Scenario,
};

use crate::config::{MethodChoice, RunConfig};
use crate::error::CliError;

pub const STATUS_OK: &str = "ok";

#[derive(Debug, Clone)]
pub struct Row {
    pub axis_value: Option<f64>,
    pub scenario: Scenario,
    pub material: String,
    pub method: &'static str,
    pub medium: MediumResponse,
    pub result: Result<RateBreakdown, String>,
}

impl Row {
    pub fn rate(&self) -> Option<&RateBreakdown> {
        self.result.as_ref().ok()
    }

    pub fn status(&self) -> &str {
        match &self.result {
            Ok(_) => STATUS_OK,
            Err(s) => s,
        }
    }
}

fn status_of(e: &spinflip::Error) -> String {
    match e {
        spinflip::Error::Quadrature(_) => "quadrature-failed".into(),
        spinflip::Error::AboveTransition { .. } => "above-transition".into(),
        spinflip::Error::NotSuperconductor { .. } | spinflip::Error::PerfectConductor { .. } => {
            "not-applicable".into()
        }
        _ => "error".into(),
    }
}

/// One row per requested method. Errors in the scenario itself are returned;
/// failures of an individual method are recorded in the row.
pub fn evaluate(
    config: &RunConfig,
    settings: &QuadratureSettings,
    axis_value: Option<f64>,
) -> Result<(Vec<Row>, Vec<spinflip::Error>), CliError> {
    let scenario = config.scenario()?;
    let medium = medium_response(&scenario.material, scenario.temperature_k, scenario.omega())?;
    let methods: &[MethodChoice] = match config.method() {
        MethodChoice::Both => &[MethodChoice::Full, MethodChoice::Asymptotic],
        MethodChoice::Full => &[MethodChoice::Full],
        MethodChoice::Asymptotic => &[MethodChoice::Asymptotic],
    };
    let mut rows = Vec::with_capacity(methods.len());
    let mut errors = Vec::new();
    for m in methods {
        let (label, r) = match m {
            MethodChoice::Asymptotic => ("asymptotic", asymptotic_rate(&scenario)),
            _ => ("full", full_rate(&scenario, settings)),
        };
        let result = r.map_err(|e| {
            let s = status_of(&e);
            errors.push(e);
            s
        });
        rows.push(Row {
            axis_value,
            scenario,
            material: config.material_name().to_string(),
            method: label,
            medium,
            result,
        });
    }
    Ok((rows, errors))
}

/// Invariant violations among the successful rows.
pub fn audit<'a>(rows: impl IntoIterator<Item = &'a Row>) -> Vec<String> {
    rows.into_iter()
        .filter_map(|r| {
            let rate = r.rate()?;
            rate.check_invariants().err().map(|e| {
                format!(
                    "T={} K z={} m {}: {e}",
                    r.scenario.temperature_k, r.scenario.distance_m, r.method
                )
            })
        })
        .collect()
}
