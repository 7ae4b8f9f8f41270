//! Magnetic spin-flip rates of a trapped two-level atom above a thick slab.
//!
//! The slab may be a two-fluid superconductor, an Ohmic normal metal, or a
//! perfect conductor. Rates come either from full quadrature of the
//! reflection integrals ([`rates::full_rate`]) or from the near-field
//! closed form valid for superconductors ([`rates::asymptotic_rate`]).
//!
//! ```
//! use spinflip::{full_rate, Material, QuadratureSettings, Scenario, TransitionSpec};
//!
//! let s = Scenario::new(TransitionSpec::new(560e3)?, 50e-6, 4.2, Material::niobium())?;
//! let r = full_rate(&s, &QuadratureSettings::default())?;
//! assert!(r.tau > 1e10);
//! # Ok::<(), spinflip::Error>(())
//! ```

pub mod constants;
pub mod error;
pub mod halfspace;
pub mod materials;
pub mod numeric;
pub mod rates;
pub mod scenario;

pub use constants::{PhysicalConstants, SI};
pub use error::{Error, QuadratureError, Result};
pub use halfspace::{
    fresnel, integral_parallel, integral_perp, slab_factor, QuadratureSettings, SlabFactor,
    SpectralIntegral, SpectralPoint, SpinWeights,
};
pub use materials::{
    medium_response, permittivity, Depth, Material, MediumResponse, NormalMetal, Permittivity,
    Superconductor,
};
pub use rates::{
    asymptotic_rate, free_space_rate, full_rate, thermal_occupation, validate_asymptotic,
    AsymptoticCheck, Method, RateBreakdown,
};
pub use scenario::{validity_report, Scenario, TransitionSpec, ValidityCheck, ValidityReport};
