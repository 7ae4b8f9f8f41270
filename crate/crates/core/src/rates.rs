//! Spin-flip rates and lifetimes.
//!
//! The total rate splits into a free-space part and a slab part, both
//! enhanced by thermal photons:
//! Γ = (Γ⁰ + Γ^slab)(n̄_th + 1), with Γ^slab = Γ⁰·(w∥ Re Ĩ∥ + w⊥ Re Ĩ⊥).

use std::f64::consts::PI;

use crate::constants::SI;
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::halfspace::{self, QuadratureSettings};
use crate::materials::{self, Material};
use crate::numeric::rel_diff;
use crate::scenario::{validity_report, Scenario, ValidityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    FullQuadrature,
    Asymptotic,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::FullQuadrature => "full",
            Method::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBreakdown {
    /// Γ⁰ [1/s].
    pub gamma0: f64,
    /// Re Ĩ∥; absent for the asymptotic method.
    pub i_par: Option<f64>,
    /// Re Ĩ⊥; absent for the asymptotic method.
    pub i_perp: Option<f64>,
    /// Im Ĩ∥ and Im Ĩ⊥, kept as diagnostics.
    pub i_par_imag: Option<f64>,
    pub i_perp_imag: Option<f64>,
    /// Γ^slab [1/s].
    pub gamma_slab: f64,
    pub n_th: f64,
    /// Γ^B [1/s].
    pub gamma_total: f64,
    /// τ = 1/Γ^B [s].
    pub tau: f64,
    pub method: Method,
    /// Relative error of `gamma_total` from quadrature; absent for the asymptotic method.
    pub error_estimate: Option<f64>,
}

impl RateBreakdown {
    fn assemble(gamma0: f64, gamma_slab: f64, n_th: f64, method: Method) -> Self {
        let gamma_total = (gamma0 + gamma_slab) * (n_th + 1.0);
        Self {
            gamma0,
            i_par: None,
            i_perp: None,
            i_par_imag: None,
            i_perp_imag: None,
            gamma_slab,
            n_th,
            gamma_total,
            tau: 1.0 / gamma_total,
            method,
            error_estimate: None,
        }
    }

    /// Re-checks the assembly identities, returning a description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let assembled = (self.gamma0 + self.gamma_slab) * (self.n_th + 1.0);
        if self.gamma_total != assembled {
            return Err(format!(
                "gamma_total {} != (gamma0 + gamma_slab)(n_th + 1) = {}",
                self.gamma_total, assembled
            ));
        }
        if !(self.gamma_total > 0.0 && self.gamma_total.is_finite()) {
            return Err(format!("gamma_total {} is not positive", self.gamma_total));
        }
        if rel_diff(self.tau * self.gamma_total, 1.0) > 4.0 * f64::EPSILON {
            return Err(format!("tau·gamma_total = {}", self.tau * self.gamma_total));
        }
        Ok(())
    }
}

/// Γ⁰ = μ₀(μ_B g_S)² k³/(24πħ), the zero-temperature free-space rate.
pub fn free_space_rate(omega: f64) -> f64 {
    let k = omega / SI.c;
    let m = SI.mu_b * SI.g_s;
    SI.mu0 * m * m * k * k * k / (24.0 * PI * SI.hbar)
}

/// n̄_th = 1/(e^{ħω/k_BT} − 1); zero at T = 0.
pub fn thermal_occupation(omega: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    // expm1 keeps full precision at the ħω/k_BT ~ 1e-8 typical of rf transitions
    1.0 / (SI.hbar * omega / (SI.k_b * t)).exp_m1()
}

fn checked(omega: f64, t: f64) -> Result<()> {
    require_positive("omega", omega)?;
    require_non_negative("temperature", t)
}

/// Rate from the full spectral integrals.
pub fn full_rate(s: &Scenario, settings: &QuadratureSettings) -> Result<RateBreakdown> {
    s.validate()?;
    let omega = s.omega();
    checked(omega, s.temperature_k)?;
    let eps = materials::permittivity(&s.material, s.temperature_k, omega)?;
    let sf = halfspace::slab_factor(&eps, s.kz(), s.transition.spin_weights(), settings)?;
    let gamma0 = free_space_rate(omega);
    let n_th = thermal_occupation(omega, s.temperature_k);
    let mut out = RateBreakdown::assemble(gamma0, gamma0 * sf.value, n_th, Method::FullQuadrature);
    out.i_par = Some(sf.parallel.real());
    out.i_perp = Some(sf.perp.real());
    out.i_par_imag = Some(sf.parallel.value.im);
    out.i_perp_imag = Some(sf.perp.value.im);
    out.error_estimate = Some(sf.error / (1.0 + sf.value).abs());
    Ok(out)
}

/// 2(3/4)³ λ_L³/(k³δ²z⁴): the near-field slab correction for λ_L ≪ δ, λ_L ≪ z ≪ λ.
pub fn asymptotic_correction(s: &Scenario) -> Result<f64> {
    s.validate()?;
    let sc = match &s.material {
        Material::Superconductor(sc) => sc,
        Material::PerfectConductor => {
            return Err(Error::PerfectConductor {
                operation: "asymptotic_rate",
            })
        }
        other => {
            return Err(Error::NotSuperconductor {
                operation: "asymptotic_rate",
                material: other.kind(),
            })
        }
    };
    if s.temperature_k >= sc.tc_k {
        return Err(Error::AboveTransition {
            operation: "asymptotic_rate",
            temperature_k: s.temperature_k,
            tc_k: sc.tc_k,
        });
    }
    let omega = s.omega();
    let lambda = materials::london_length(&s.material, s.temperature_k)?.meters();
    let sigma_n = materials::normal_conductivity(&s.material, s.temperature_k)?;
    let inv_delta2 = materials::skin_depth(sigma_n, omega).inverse_square();
    let k = s.transition.wavenumber();
    let z = s.distance_m;
    Ok(2.0 * 0.75_f64.powi(3) * lambda.powi(3) * inv_delta2 / (k.powi(3) * z.powi(4)))
}

/// Rate from the closed-form near-field law.
pub fn asymptotic_rate(s: &Scenario) -> Result<RateBreakdown> {
    let correction = asymptotic_correction(s)?;
    let omega = s.omega();
    let gamma0 = free_space_rate(omega);
    let n_th = thermal_occupation(omega, s.temperature_k);
    Ok(RateBreakdown::assemble(
        gamma0,
        gamma0 * correction,
        n_th,
        Method::Asymptotic,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCheck {
    /// |Γ_asym − Γ_full|/Γ_full.
    pub deviation: f64,
    pub full: RateBreakdown,
    pub asymptotic: RateBreakdown,
    pub validity: ValidityReport,
}

/// Compares the closed form against full quadrature for one scenario.
pub fn validate_asymptotic(s: &Scenario, settings: &QuadratureSettings) -> Result<AsymptoticCheck> {
    let asymptotic = asymptotic_rate(s)?;
    let full = full_rate(s, settings)?;
    Ok(AsymptoticCheck {
        deviation: rel_diff(asymptotic.gamma_total, full.gamma_total),
        full,
        asymptotic,
        validity: validity_report(s)?,
    })
}
