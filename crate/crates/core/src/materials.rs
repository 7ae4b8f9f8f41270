//! Linear electromagnetic response of the slab material.
//!
//! Superconductors follow the two-fluid picture: a London (inductive) channel
//! carried by the superconducting fraction n_s/n₀ and an Ohmic channel carried
//! by the normal fraction n_n/n₀ = 1 − n_s/n₀. In the low-frequency regime the
//! two channels combine into
//!
//! ```text
//! ε(ω) = 1 − 1/(k²λ_L²(T)) + i·2/(k²δ²(T)),   δ(T) = √(2/(ωμ₀σ_n(T)))
//! ```
//!
//! Unbounded lengths (λ_L above T_c, δ at T = 0) are carried as
//! [`Depth::Infinite`] so that their terms drop out instead of producing
//! `∞ − ∞`.

use num_complex::Complex64;

use crate::constants::SI;
use crate::error::{require_non_negative, require_positive, Error, Result};

/// A penetration length that may be unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Depth {
    Finite(f64),
    Infinite,
}

impl Depth {
    /// 1/d², which is zero for an unbounded length.
    pub fn inverse_square(self) -> f64 {
        match self {
            Depth::Finite(d) => 1.0 / (d * d),
            Depth::Infinite => 0.0,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Depth::Finite(d) => Some(d),
            Depth::Infinite => None,
        }
    }

    /// The length in metres, with `f64::INFINITY` for the unbounded case.
    pub fn meters(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Depth::Infinite)
    }
}

/// Two-fluid (London + Ohm) superconductor parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superconductor {
    /// Zero-temperature London length λ_L(0) [m].
    pub lambda_l0_m: f64,
    /// Normal-state conductivity σ [S/m].
    pub sigma_normal: f64,
    /// Transition temperature T_c [K].
    pub tc_k: f64,
    /// Exponent p of n_s/n₀ = 1 − (T/T_c)^p.
    pub gc_exponent: f64,
    /// Gap frequency ω_g = 2Δ(0)/ħ [rad/s], used only for validity checks.
    pub gap_freq_rad_s: Option<f64>,
}

impl Superconductor {
    pub const DEFAULT_GC_EXPONENT: f64 = 4.0;

    pub fn new(lambda_l0_m: f64, sigma_normal: f64, tc_k: f64) -> Result<Self> {
        require_positive("lambda_l0_m", lambda_l0_m)?;
        require_positive("sigma_normal", sigma_normal)?;
        require_positive("tc_k", tc_k)?;
        Ok(Self {
            lambda_l0_m,
            sigma_normal,
            tc_k,
            gc_exponent: Self::DEFAULT_GC_EXPONENT,
            gap_freq_rad_s: None,
        })
    }

    pub fn with_gc_exponent(mut self, exponent: f64) -> Result<Self> {
        require_positive("gc_exponent", exponent)?;
        self.gc_exponent = exponent;
        Ok(self)
    }

    pub fn with_gap_frequency(mut self, gap_freq_rad_s: f64) -> Result<Self> {
        require_positive("gap_freq_rad_s", gap_freq_rad_s)?;
        self.gap_freq_rad_s = Some(gap_freq_rad_s);
        Ok(self)
    }

    /// n_s/n₀ at temperature `t`.
    pub fn superfluid_fraction(&self, t: f64) -> Result<f64> {
        gorter_casimir_fraction(t, self.tc_k, self.gc_exponent)
    }
}

/// Ohmic metal with a temperature-independent conductivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalMetal {
    sigma: f64,
}

impl NormalMetal {
    pub fn from_conductivity(sigma: f64) -> Result<Self> {
        require_positive("sigma", sigma)?;
        Ok(Self { sigma })
    }

    /// Builds the metal from its skin depth δ at a reference frequency,
    /// storing σ = 2/(ω_ref μ₀ δ²).
    pub fn from_skin_depth(skin_depth_m: f64, reference_frequency_hz: f64) -> Result<Self> {
        require_positive("skin_depth_m", skin_depth_m)?;
        require_positive("reference_frequency_hz", reference_frequency_hz)?;
        let omega = 2.0 * std::f64::consts::PI * reference_frequency_hz;
        Self::from_conductivity(2.0 / (omega * SI.mu0 * skin_depth_m * skin_depth_m))
    }

    pub fn conductivity(&self) -> f64 {
        self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Material {
    Superconductor(Superconductor),
    NormalMetal(NormalMetal),
    PerfectConductor,
}

/// Names accepted by [`Material::preset`].
pub const PRESET_NAMES: [&str; 4] = ["nb", "nb-nonlocal", "al", "perfect"];

impl Material {
    /// Niobium: λ_L(0) = 35 nm, σ = 2·10⁹ S/m, T_c = 8.31 K.
    pub fn niobium() -> Self {
        Material::Superconductor(Superconductor {
            lambda_l0_m: 35e-9,
            sigma_normal: 2e9,
            tc_k: 8.31,
            gc_exponent: Superconductor::DEFAULT_GC_EXPONENT,
            gap_freq_rad_s: None,
        })
    }

    /// Niobium with the London length tripled to mimic non-local screening.
    pub fn niobium_nonlocal() -> Self {
        match Self::niobium() {
            Material::Superconductor(sc) => Material::Superconductor(Superconductor {
                lambda_l0_m: 3.0 * 35e-9,
                ..sc
            }),
            _ => unreachable!(),
        }
    }

    /// Aluminium as a normal metal with δ = 110 μm at 560 kHz.
    pub fn aluminium() -> Self {
        Material::NormalMetal(
            NormalMetal::from_skin_depth(110e-6, 560e3).expect("preset parameters are valid"),
        )
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "nb" => Some(Self::niobium()),
            "nb-nonlocal" => Some(Self::niobium_nonlocal()),
            "al" => Some(Self::aluminium()),
            "perfect" => Some(Material::PerfectConductor),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Material::Superconductor(_) => "superconductor",
            Material::NormalMetal(_) => "normal-metal",
            Material::PerfectConductor => "perfect-conductor",
        }
    }

    pub fn as_superconductor(&self) -> Option<&Superconductor> {
        match self {
            Material::Superconductor(sc) => Some(sc),
            _ => None,
        }
    }
}

/// Complex relative permittivity, or the perfect-conductor sentinel whose
/// reflection coefficients are fixed at r_s = −1, r_p = +1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity {
    Dielectric(Complex64),
    PerfectConductor,
}

impl Permittivity {
    pub fn value(&self) -> Option<Complex64> {
        match self {
            Permittivity::Dielectric(eps) => Some(*eps),
            Permittivity::PerfectConductor => None,
        }
    }
}

/// Temperature- and frequency-resolved response of a material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumResponse {
    pub ns_fraction: f64,
    pub nn_fraction: f64,
    pub lambda_l: Depth,
    /// σ_n(T) [S/m]; infinite for the perfect conductor.
    pub sigma_n: f64,
    pub skin_depth: Depth,
    pub epsilon: Permittivity,
}

/// Gorter–Casimir superfluid fraction n_s/n₀ = 1 − (T/T_c)^p, clamped to [0, 1].
pub fn gorter_casimir_fraction(t: f64, tc: f64, exponent: f64) -> Result<f64> {
    require_non_negative("temperature", t)?;
    require_positive("tc", tc)?;
    require_positive("gc_exponent", exponent)?;
    Ok(1.0 - normal_fraction(t, tc, exponent))
}

// n_n/n₀; n_s/n₀ is formed as 1 − this so that the two sum to exactly 1.
fn normal_fraction(t: f64, tc: f64, exponent: f64) -> f64 {
    if t >= tc {
        1.0
    } else {
        (t / tc).powf(exponent).clamp(0.0, 1.0)
    }
}

/// λ_L(T) = λ_L(0)/√(n_s/n₀); unbounded for T ≥ T_c.
pub fn london_length(material: &Material, t: f64) -> Result<Depth> {
    let sc = material
        .as_superconductor()
        .ok_or(Error::NotSuperconductor {
            operation: "london_length",
            material: material.kind(),
        })?;
    let ns = sc.superfluid_fraction(t)?;
    if ns <= 0.0 {
        Ok(Depth::Infinite)
    } else {
        Ok(Depth::Finite(sc.lambda_l0_m / ns.sqrt()))
    }
}

/// σ_n(T): (n_n/n₀)·σ for a superconductor, σ for a normal metal.
pub fn normal_conductivity(material: &Material, t: f64) -> Result<f64> {
    require_non_negative("temperature", t)?;
    match material {
        Material::Superconductor(sc) => {
            Ok(sc.sigma_normal * normal_fraction(t, sc.tc_k, sc.gc_exponent))
        }
        Material::NormalMetal(m) => Ok(m.sigma),
        Material::PerfectConductor => Err(Error::PerfectConductor {
            operation: "normal_conductivity",
        }),
    }
}

/// δ = √(2/(ωμ₀σ_n)); unbounded when σ_n = 0.
pub fn skin_depth(sigma_n: f64, omega: f64) -> Depth {
    if sigma_n <= 0.0 {
        Depth::Infinite
    } else {
        Depth::Finite((2.0 / (omega * SI.mu0 * sigma_n)).sqrt())
    }
}

/// Low-frequency permittivity ε(ω).
///
/// Normal metals keep only the Ohmic term, ε = 1 + i·2/(k²δ²).
pub fn permittivity(material: &Material, t: f64, omega: f64) -> Result<Permittivity> {
    require_non_negative("temperature", t)?;
    require_positive("omega", omega)?;
    let k2 = (omega / SI.c).powi(2);
    let (lambda, delta) = match material {
        Material::PerfectConductor => return Ok(Permittivity::PerfectConductor),
        Material::Superconductor(_) => (
            london_length(material, t)?,
            skin_depth(normal_conductivity(material, t)?, omega),
        ),
        Material::NormalMetal(m) => (Depth::Infinite, skin_depth(m.sigma, omega)),
    };
    Ok(Permittivity::Dielectric(Complex64::new(
        1.0 - lambda.inverse_square() / k2,
        2.0 * delta.inverse_square() / k2,
    )))
}

/// σ(T) = 2/(ωμ₀δ²) + i/(ωμ₀λ_L²).
pub fn optical_conductivity(material: &Material, t: f64, omega: f64) -> Result<Complex64> {
    require_non_negative("temperature", t)?;
    require_positive("omega", omega)?;
    let (lambda, delta) = match material {
        Material::PerfectConductor => {
            return Err(Error::PerfectConductor {
                operation: "optical_conductivity",
            })
        }
        Material::Superconductor(_) => (
            london_length(material, t)?,
            skin_depth(normal_conductivity(material, t)?, omega),
        ),
        Material::NormalMetal(m) => (Depth::Infinite, skin_depth(m.sigma, omega)),
    };
    let wm = omega * SI.mu0;
    Ok(Complex64::new(
        2.0 * delta.inverse_square() / wm,
        lambda.inverse_square() / wm,
    ))
}

pub fn medium_response(material: &Material, t: f64, omega: f64) -> Result<MediumResponse> {
    require_non_negative("temperature", t)?;
    require_positive("omega", omega)?;
    let epsilon = permittivity(material, t, omega)?;
    let response = match material {
        Material::Superconductor(sc) => {
            let nn = normal_fraction(t, sc.tc_k, sc.gc_exponent);
            let sigma_n = normal_conductivity(material, t)?;
            MediumResponse {
                ns_fraction: 1.0 - nn,
                nn_fraction: nn,
                lambda_l: london_length(material, t)?,
                sigma_n,
                skin_depth: skin_depth(sigma_n, omega),
                epsilon,
            }
        }
        Material::NormalMetal(m) => MediumResponse {
            ns_fraction: 0.0,
            nn_fraction: 1.0,
            lambda_l: Depth::Infinite,
            sigma_n: m.sigma,
            skin_depth: skin_depth(m.sigma, omega),
            epsilon,
        },
        Material::PerfectConductor => MediumResponse {
            ns_fraction: 0.0,
            nn_fraction: 1.0,
            lambda_l: Depth::Infinite,
            sigma_n: f64::INFINITY,
            skin_depth: Depth::Finite(0.0),
            epsilon,
        },
    };
    Ok(response)
}

pub(crate) fn check_material(material: &Material) -> Result<()> {
    match material {
        Material::Superconductor(sc) => {
            require_positive("lambda_l0_m", sc.lambda_l0_m)?;
            require_positive("sigma_normal", sc.sigma_normal)?;
            require_positive("tc_k", sc.tc_k)?;
            require_positive("gc_exponent", sc.gc_exponent)?;
            if let Some(g) = sc.gap_freq_rad_s {
                require_positive("gap_freq_rad_s", g)?;
            }
            Ok(())
        }
        Material::NormalMetal(m) => require_positive("sigma", m.sigma),
        Material::PerfectConductor => Ok(()),
    }
}
