//! Reflection of the atom's near field by a vacuum/slab interface.
//!
//! The slab correction to the spin-flip rate is carried by two spectral
//! integrals over the transverse wavenumber q (in units of k):
//!
//! ```text
//! Ĩ∥ = 3/8 ∫₀^∞ dq (q/η̃₀) e^{2iη̃₀kz} [r_p − η̃₀² r_s]
//! Ĩ⊥ = 3/4 ∫₀^∞ dq (q³/η̃₀) e^{2iη̃₀kz} r_s
//! ```
//!
//! with η̃₀ = √(1 − q²), η̃ = √(ε − q²). The physical values are the real
//! parts; the full complex integrals are kept as a diagnostic.
//!
//! The range is split at q = 1. On the propagating side q = cos φ turns
//! q dq/η̃₀ into cos φ dφ. On the evanescent side q = √(1 + u²) gives
//! q dq/η̃₀ = −i du and a decaying weight e^{−2ukz}; the u range is cut where
//! 2ukz reaches the tail cutoff Λ.

mod quadrature;

use num_complex::Complex64;

use crate::error::{invalid, require_positive, QuadratureError, Result};
use crate::materials::Permittivity;
use crate::numeric::sqrt_upper;
use quadrature::{integrate, Estimate, Exhausted, Tolerance};

/// Tolerances and truncation rule for the spectral integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Panel bisections allowed per sector.
    pub max_subdivisions: usize,
    /// Λ: the evanescent sector stops at 2·u·kz = Λ.
    pub tail_exponent_cutoff: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-300,
            max_subdivisions: 60,
            tail_exponent_cutoff: 45.0,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        require_positive("rel_tol", self.rel_tol)?;
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(invalid("abs_tol", "must be finite and >= 0"));
        }
        require_positive("tail_exponent_cutoff", self.tail_exponent_cutoff)?;
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            rel: self.rel_tol,
            abs: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

/// η̃₀ = √(1 − q²) on the branch where e^{2iη̃₀kz} stays bounded.
pub fn eta0(q: f64) -> Complex64 {
    // (1 − q)(1 + q) avoids cancellation near q = 1
    let s = (1.0 - q) * (1.0 + q);
    if s >= 0.0 {
        Complex64::new(s.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-s).sqrt())
    }
}

/// η̃ = √(ε − q²) with Im η̃ ≥ 0.
pub fn eta(q: f64, epsilon: Complex64) -> Complex64 {
    sqrt_upper(epsilon - q * q)
}

/// One sample of the reflection physics at transverse wavenumber q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub q: f64,
    pub eta0: Complex64,
    /// `None` for the perfect conductor.
    pub eta: Option<Complex64>,
    pub rs: Complex64,
    pub rp: Complex64,
}

impl SpectralPoint {
    pub fn new(q: f64, epsilon: &Permittivity) -> Self {
        let e0 = eta0(q);
        match epsilon {
            Permittivity::PerfectConductor => Self {
                q,
                eta0: e0,
                eta: None,
                rs: Complex64::new(-1.0, 0.0),
                rp: Complex64::new(1.0, 0.0),
            },
            Permittivity::Dielectric(eps) => {
                let e = eta(q, *eps);
                let (rs, rp) = reflection(*eps, e0, e, (1.0 - q) * (1.0 + q));
                Self {
                    q,
                    eta0: e0,
                    eta: Some(e),
                    rs,
                    rp,
                }
            }
        }
    }
}

/// Fresnel coefficients (r_s, r_p) of the vacuum/slab interface.
pub fn fresnel(q: f64, epsilon: &Permittivity) -> (Complex64, Complex64) {
    let p = SpectralPoint::new(q, epsilon);
    (p.rs, p.rp)
}

// r_s = (η̃₀ − η̃)/(η̃₀ + η̃) and r_p = (εη̃₀ − η̃)/(εη̃₀ + η̃), rewritten through
// η̃₀² − η̃² = 1 − ε so that weak contrasts (ε → 1) lose no precision. The r_p
// numerator ε²η̃₀² − η̃² = (ε − 1)((ε + 1)η̃₀² − 1) takes η̃₀² directly: forming
// it as 1 − q² would round away the η̃₀² ~ 1/|ε| scale near q = 1.
fn reflection(
    eps: Complex64,
    eta0: Complex64,
    eta: Complex64,
    eta0_sq: f64,
) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    if eps == one {
        return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let ds = eta0 + eta;
    let rs = (one - eps) / (ds * ds);
    let dp = eps * eta0 + eta;
    let rp = (eps - one) * ((eps + one) * eta0_sq - one) / (dp * dp);
    (rs, rp)
}

/// Value of one spectral integral, prefactor included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralIntegral {
    /// Full complex integral; the physical contribution is `value.re`.
    pub value: Complex64,
    /// Contribution of 0 ≤ q < 1.
    pub propagating: Complex64,
    /// Contribution of q > 1 (truncated at the tail cutoff).
    pub evanescent: Complex64,
    /// Absolute error estimate of `value.re`.
    pub error: f64,
    /// Absolute error estimate of `value.im`.
    pub error_im: f64,
}

impl SpectralIntegral {
    pub fn real(&self) -> f64 {
        self.value.re
    }
}

/// Weights applied to Ĩ∥ and Ĩ⊥ in the slab factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinWeights {
    pub parallel: f64,
    pub perp: f64,
}

impl Default for SpinWeights {
    fn default() -> Self {
        Self {
            parallel: 1.0,
            perp: 1.0,
        }
    }
}

/// Γ^slab/Γ⁰ with its two contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabFactor {
    pub parallel: SpectralIntegral,
    pub perp: SpectralIntegral,
    pub weights: SpinWeights,
    /// w∥·Re Ĩ∥ + w⊥·Re Ĩ⊥.
    pub value: f64,
    /// Absolute error bound on `value`.
    pub error: f64,
}

const PAR_PREFACTOR: f64 = 3.0 / 8.0;
const PERP_PREFACTOR: f64 = 3.0 / 4.0;

// Integrands on the propagating sector in φ = π/2 − θ, so q = cos φ and
// η̃₀ = sin φ: [Ĩ∥, Ĩ⊥] without prefactors. Small φ (q → 1) stays exact.
fn propagating_integrand(epsilon: &Permittivity, kz: f64, phi: f64) -> [Complex64; 2] {
    let (e0, q) = phi.sin_cos();
    let phase = Complex64::new(0.0, 2.0 * e0 * kz).exp();
    let (rs, rp) = match epsilon {
        Permittivity::PerfectConductor => (Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)),
        Permittivity::Dielectric(eps) => {
            // ε − q² = (ε − 1) + η̃₀²
            let e = sqrt_upper(eps - 1.0 + e0 * e0);
            reflection(*eps, Complex64::new(e0, 0.0), e, e0 * e0)
        }
    };
    [phase * (rp - rs * (e0 * e0)) * q, phase * rs * (q * q * q)]
}

// Integrands on the evanescent sector, u = √(q² − 1) ∈ (0, u_max].
fn evanescent_integrand(epsilon: &Permittivity, kz: f64, u: f64) -> [Complex64; 2] {
    let weight = (-2.0 * u * kz).exp();
    let u2 = u * u;
    let (rs, rp) = match epsilon {
        Permittivity::PerfectConductor => (Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)),
        Permittivity::Dielectric(eps) => {
            let e = sqrt_upper(eps - 1.0 - u2);
            reflection(*eps, Complex64::new(0.0, u), e, -u2)
        }
    };
    let minus_i = Complex64::new(0.0, -weight);
    [minus_i * (rp + rs * u2), minus_i * rs * (1.0 + u2)]
}

// Smallest structure around the branch point q = 1, in units of η̃₀: r_s and
// r_p vary on the scales √|ε − 1| and 1/√|ε|.
fn branch_scale(epsilon: &Permittivity) -> f64 {
    let s = match epsilon {
        Permittivity::PerfectConductor => 1.0,
        Permittivity::Dielectric(eps) => {
            let contrast = (eps - 1.0).norm().sqrt();
            let screening = if eps.norm() > 1.0 {
                eps.norm().powf(-0.5)
            } else {
                1.0
            };
            contrast.min(screening).min(1.0)
        }
    };
    // floor keeps (η̃₀ + η̃)² clear of underflow
    (1e-2 * s).max(1e-60)
}

// Two points per decade from `lo` up to (excluding) `hi`.
fn geometric(lo: f64, hi: f64) -> Vec<f64> {
    if lo >= hi {
        return Vec::new();
    }
    let n = (2.0 * (hi / lo).log10()).ceil().max(1.0) as usize;
    let ratio = (hi / lo).powf(1.0 / n as f64);
    (0..n).map(|i| lo * ratio.powi(i as i32)).collect()
}

fn finish(mut points: Vec<f64>) -> Vec<f64> {
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

fn propagating_breakpoints(epsilon: &Permittivity, kz: f64) -> Vec<f64> {
    // about four panels per radian of accumulated phase 2kz
    let n = 4 + (2.0 * kz).ceil() as usize;
    let h = std::f64::consts::FRAC_PI_2 / n as f64;
    let mut points = vec![0.0];
    points.extend(geometric(branch_scale(epsilon), h));
    points.extend((1..=n).map(|i| i as f64 * h));
    // total-internal-reflection edge q² = Re ε
    if let Permittivity::Dielectric(eps) = epsilon {
        if eps.re > 0.0 && eps.re < 1.0 {
            points.push(eps.re.sqrt().acos());
        }
    }
    finish(points)
}

fn evanescent_breakpoints(epsilon: &Permittivity, kz: f64, cutoff: f64) -> Vec<f64> {
    let u_max = cutoff / (2.0 * kz);
    let mut points = vec![0.0];
    points.extend(geometric(branch_scale(epsilon).min(1e-2 * u_max), u_max));
    points.push(u_max);
    if let Permittivity::Dielectric(eps) = epsilon {
        let edge = (eps.re - 1.0).max(0.0).sqrt();
        if edge > 0.0 && edge < u_max {
            points.push(edge);
        }
    }
    finish(points)
}

fn sector_breakpoints(
    epsilon: &Permittivity,
    kz: f64,
    settings: &QuadratureSettings,
) -> [Vec<f64>; 2] {
    [
        propagating_breakpoints(epsilon, kz),
        evanescent_breakpoints(epsilon, kz, settings.tail_exponent_cutoff),
    ]
}

// Runs the two sectors as segments 0 (propagating) and 1 (evanescent).
fn run<const N: usize>(
    epsilon: &Permittivity,
    kz: f64,
    settings: &QuadratureSettings,
    select: impl Fn([Complex64; 2]) -> [Complex64; N],
    prefactors: [f64; N],
) -> Result<[SpectralIntegral; N]> {
    require_positive("kz", kz)?;
    settings.validate()?;
    let f = |segment: usize, x: f64| {
        if segment == 0 {
            select(propagating_integrand(epsilon, kz, x))
        } else {
            select(evanescent_integrand(epsilon, kz, x))
        }
    };
    match integrate(
        f,
        &sector_breakpoints(epsilon, kz, settings),
        settings.tolerance(),
    ) {
        Ok(est) => Ok(std::array::from_fn(|c| assemble(prefactors[c], c, &est))),
        Err(Exhausted(est)) => {
            let partial = (0..N).map(|c| est.total.value[c] * prefactors[c]).sum();
            Err(QuadratureError {
                partial,
                error_re: (0..N).map(|c| est.total.error_re[c] * prefactors[c]).sum(),
                error_im: (0..N).map(|c| est.total.error_im[c] * prefactors[c]).sum(),
                subdivisions: est.subdivisions,
            }
            .into())
        }
    }
}

fn assemble<const N: usize>(prefactor: f64, c: usize, est: &Estimate<N>) -> SpectralIntegral {
    let (prop, evan) = (&est.segments[0], &est.segments[1]);
    SpectralIntegral {
        value: est.total.value[c] * prefactor,
        propagating: prop.value[c] * prefactor,
        evanescent: evan.value[c] * prefactor,
        error: prefactor * est.total.error_re[c],
        error_im: prefactor * est.total.error_im[c],
    }
}

/// Ĩ∥ as a complex number; the physical value is its real part.
pub fn integral_parallel(
    epsilon: &Permittivity,
    kz: f64,
    settings: &QuadratureSettings,
) -> Result<SpectralIntegral> {
    let [out] = run(epsilon, kz, settings, |v| [v[0]], [PAR_PREFACTOR])?;
    Ok(out)
}

/// Ĩ⊥ as a complex number; the physical value is its real part.
pub fn integral_perp(
    epsilon: &Permittivity,
    kz: f64,
    settings: &QuadratureSettings,
) -> Result<SpectralIntegral> {
    let [out] = run(epsilon, kz, settings, |v| [v[1]], [PERP_PREFACTOR])?;
    Ok(out)
}

/// Γ^slab/Γ⁰ = w∥·Re Ĩ∥ + w⊥·Re Ĩ⊥, evaluating both integrals on shared nodes.
pub fn slab_factor(
    epsilon: &Permittivity,
    kz: f64,
    weights: SpinWeights,
    settings: &QuadratureSettings,
) -> Result<SlabFactor> {
    let [parallel, perp] = run(
        epsilon,
        kz,
        settings,
        |v| v,
        [PAR_PREFACTOR, PERP_PREFACTOR],
    )?;
    Ok(SlabFactor {
        parallel,
        perp,
        weights,
        value: weights.parallel * parallel.real() + weights.perp * perp.real(),
        error: weights.parallel.abs() * parallel.error + weights.perp.abs() * perp.error,
    })
}
