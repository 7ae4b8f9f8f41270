//! CODATA 2018 physical constants in SI units.

/// The fixed table of constants used by every rate evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Vacuum permeability [N/A²].
    pub mu0: f64,
    /// Reduced Planck constant [J·s].
    pub hbar: f64,
    /// Boltzmann constant [J/K].
    pub k_b: f64,
    /// Bohr magneton [J/T].
    pub mu_b: f64,
    /// Electron spin g-factor, taken as exactly 2.
    pub g_s: f64,
    /// Speed of light in vacuum [m/s].
    pub c: f64,
    /// Electron mass [kg].
    pub m_e: f64,
    /// Elementary charge [C].
    pub e: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        mu0: 1.256_637_062_12e-6,
        hbar: 1.054_571_817e-34,
        k_b: 1.380_649e-23,
        mu_b: 9.274_010_078_3e-24,
        g_s: 2.0,
        c: 299_792_458.0,
        m_e: 9.109_383_701_5e-31,
        e: 1.602_176_634e-19,
    };

    /// Vacuum permittivity ε₀ = 1/(μ₀c²) [F/m].
    pub fn epsilon0(&self) -> f64 {
        1.0 / (self.mu0 * self.c * self.c)
    }
}

/// The constants table in use throughout the crate.
pub const SI: PhysicalConstants = PhysicalConstants::CODATA_2018;
