//! Transition and geometry description of one rate evaluation, plus the
//! regime checks that say whether the two-fluid and near-field pictures apply.

use std::f64::consts::PI;

use crate::constants::SI;
use crate::error::{require_non_negative, require_positive, Result};
use crate::halfspace::SpinWeights;
use crate::materials::{self, Material};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSpec {
    /// ν [Hz].
    pub frequency_hz: f64,
    pub spin_weight_parallel: f64,
    pub spin_weight_perp: f64,
}

impl TransitionSpec {
    pub fn new(frequency_hz: f64) -> Result<Self> {
        require_positive("frequency_hz", frequency_hz)?;
        Ok(Self {
            frequency_hz,
            spin_weight_parallel: 1.0,
            spin_weight_perp: 1.0,
        })
    }

    pub fn with_spin_weights(mut self, parallel: f64, perp: f64) -> Result<Self> {
        require_non_negative("spin_weight_parallel", parallel)?;
        require_non_negative("spin_weight_perp", perp)?;
        self.spin_weight_parallel = parallel;
        self.spin_weight_perp = perp;
        Ok(self)
    }

    /// ω = 2πν [rad/s].
    pub fn angular_frequency(&self) -> f64 {
        2.0 * PI * self.frequency_hz
    }

    /// k = ω/c [1/m].
    pub fn wavenumber(&self) -> f64 {
        self.angular_frequency() / SI.c
    }

    /// λ = 2π/k [m].
    pub fn wavelength(&self) -> f64 {
        2.0 * PI / self.wavenumber()
    }

    pub fn spin_weights(&self) -> SpinWeights {
        SpinWeights {
            parallel: self.spin_weight_parallel,
            perp: self.spin_weight_perp,
        }
    }
}

pub fn angular_frequency(t: &TransitionSpec) -> f64 {
    t.angular_frequency()
}

/// An atom at height `distance_m` above a thick slab of `material`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub transition: TransitionSpec,
    pub distance_m: f64,
    pub temperature_k: f64,
    pub material: Material,
}

impl Scenario {
    pub fn new(
        transition: TransitionSpec,
        distance_m: f64,
        temperature_k: f64,
        material: Material,
    ) -> Result<Self> {
        let s = Self {
            transition,
            distance_m,
            temperature_k,
            material,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("frequency_hz", self.transition.frequency_hz)?;
        require_non_negative("spin_weight_parallel", self.transition.spin_weight_parallel)?;
        require_non_negative("spin_weight_perp", self.transition.spin_weight_perp)?;
        require_positive("distance_m", self.distance_m)?;
        require_non_negative("temperature_k", self.temperature_k)?;
        materials::check_material(&self.material)
    }

    pub fn omega(&self) -> f64 {
        self.transition.angular_frequency()
    }

    /// Dimensionless height k·z.
    pub fn kz(&self) -> f64 {
        self.transition.wavenumber() * self.distance_m
    }

    pub fn medium(&self) -> Result<materials::MediumResponse> {
        materials::medium_response(&self.material, self.temperature_k, self.omega())
    }
}

/// A check passes when `ratio < threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityCheck {
    pub name: &'static str,
    pub ratio: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub checks: Vec<ValidityCheck>,
}

pub const CHECK_GAP: &str = "omega_over_gap";
pub const CHECK_LONDON_DISTANCE: &str = "london_over_distance";
pub const CHECK_DISTANCE_WAVELENGTH: &str = "distance_over_wavelength";
pub const CHECK_LONDON_SKIN: &str = "london_over_skin_depth";

impl ValidityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ValidityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn passes(&self, name: &str) -> bool {
        self.get(name).is_none_or(|c| c.passed)
    }

    /// λ_L(T) ≪ z ≪ λ.
    pub fn near_field(&self) -> bool {
        self.passes(CHECK_LONDON_DISTANCE) && self.passes(CHECK_DISTANCE_WAVELENGTH)
    }

    /// ω ≪ ω_g, or no gap declared.
    pub fn two_fluid_valid(&self) -> bool {
        self.passes(CHECK_GAP)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &ValidityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Threshold each ratio must stay under. The defaults are 0.1, except λ_L/z at
/// 0.01: the closed form deviates from quadrature by roughly 4λ_L/z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityFactors {
    pub gap: f64,
    pub london_distance: f64,
    pub distance_wavelength: f64,
    pub london_skin: f64,
}

impl Default for ValidityFactors {
    fn default() -> Self {
        Self {
            gap: 0.1,
            london_distance: 0.01,
            distance_wavelength: 0.1,
            london_skin: 0.1,
        }
    }
}

pub fn validity_report(s: &Scenario) -> Result<ValidityReport> {
    validity_report_with(s, &ValidityFactors::default())
}

/// Regime checks for `s`. Only warns; an out-of-regime scenario is still valid input.
pub fn validity_report_with(s: &Scenario, factors: &ValidityFactors) -> Result<ValidityReport> {
    s.validate()?;
    let check = |name, ratio: f64, threshold| ValidityCheck {
        name,
        ratio,
        threshold,
        passed: ratio < threshold,
    };
    let mut checks = Vec::new();
    if let Material::Superconductor(sc) = &s.material {
        if let Some(gap) = sc.gap_freq_rad_s {
            checks.push(check(CHECK_GAP, s.omega() / gap, factors.gap));
        }
        let lambda = materials::london_length(&s.material, s.temperature_k)?.meters();
        checks.push(check(
            CHECK_LONDON_DISTANCE,
            lambda / s.distance_m,
            factors.london_distance,
        ));
        checks.push(check(
            CHECK_DISTANCE_WAVELENGTH,
            s.distance_m / s.transition.wavelength(),
            factors.distance_wavelength,
        ));
        let sigma_n = materials::normal_conductivity(&s.material, s.temperature_k)?;
        let delta = materials::skin_depth(sigma_n, s.omega());
        let ratio = if delta.is_infinite() {
            0.0
        } else {
            lambda / delta.meters()
        };
        checks.push(check(CHECK_LONDON_SKIN, ratio, factors.london_skin));
    } else {
        checks.push(check(
            CHECK_DISTANCE_WAVELENGTH,
            s.distance_m / s.transition.wavelength(),
            factors.distance_wavelength,
        ));
    }
    Ok(ValidityReport { checks })
}
