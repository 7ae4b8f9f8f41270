//! Reference spectral integrals by composite Simpson with one Richardson step.
//!
//! Written from the raw reflection formulas with no shared code: direct
//! Fresnel quotients, the principal complex square root, a uniform grid in
//! the incidence angle for q < 1 (log-graded toward grazing incidence) and a
//! log grid in u = √(q² − 1) for q > 1.

use num_complex::Complex64;

const CUTOFF: f64 = 60.0;
const U_MIN: f64 = 1e-14;
const GRAZING: f64 = 1e-2;
const PSI_MIN: f64 = 1e-16;

pub enum Slab {
    Dielectric(Complex64),
    Mirror,
}

fn reflect(slab: &Slab, q2: Complex64, eta0: Complex64) -> (Complex64, Complex64) {
    match slab {
        Slab::Mirror => (Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)),
        Slab::Dielectric(eps) => {
            let eta = (eps - q2).sqrt();
            (
                (eta0 - eta) / (eta0 + eta),
                (eps * eta0 - eta) / (eps * eta0 + eta),
            )
        }
    }
}

fn simpson<F: Fn(f64) -> [Complex64; 2]>(f: &F, a: f64, b: f64, n: usize) -> [Complex64; 2] {
    let h = (b - a) / n as f64;
    let mut acc = [Complex64::new(0.0, 0.0); 2];
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let v = f(a + h * i as f64);
        acc[0] += v[0] * w;
        acc[1] += v[1] * w;
    }
    [acc[0] * (h / 3.0), acc[1] * (h / 3.0)]
}

fn richardson<F: Fn(f64) -> [Complex64; 2]>(f: F, a: f64, b: f64, n: usize) -> [Complex64; 2] {
    let coarse = simpson(&f, a, b, n);
    let fine = simpson(&f, a, b, 2 * n);
    [
        fine[0] + (fine[0] - coarse[0]) / 15.0,
        fine[1] + (fine[1] - coarse[1]) / 15.0,
    ]
}

/// Complex [Ĩ∥, Ĩ⊥] at dimensionless height kz.
pub fn integrals(slab: &Slab, kz: f64, n: usize) -> [Complex64; 2] {
    let i = Complex64::new(0.0, 1.0);
    // q = sin θ, dq q/η₀ = sin θ dθ; the grazing end is resolved in ψ = π/2 − θ = e^s
    let prop_term = |q: f64, c: f64| {
        let eta0 = Complex64::new(c, 0.0);
        let (rs, rp) = reflect(slab, Complex64::new(q * q, 0.0), eta0);
        let ph = (i * 2.0 * kz * eta0).exp();
        [ph * (rp - eta0 * eta0 * rs) * q, ph * rs * q * q * q]
    };
    let bulk = richardson(
        |th: f64| {
            let (q, c) = th.sin_cos();
            prop_term(q, c)
        },
        0.0,
        std::f64::consts::FRAC_PI_2 - GRAZING,
        n,
    );
    let grazing = richardson(
        |s: f64| {
            let psi = s.exp();
            let (c, q) = psi.sin_cos();
            let [a, b] = prop_term(q, c);
            [a * psi, b * psi]
        },
        PSI_MIN.ln(),
        GRAZING.ln(),
        n,
    );
    let prop = [bulk[0] + grazing[0], bulk[1] + grazing[1]];
    // u = e^s, q dq/η₀ = −i du = −i u ds
    let u_max = CUTOFF / (2.0 * kz);
    let evan = richardson(
        |s: f64| {
            let u = s.exp();
            let eta0 = Complex64::new(0.0, u);
            let (rs, rp) = reflect(slab, Complex64::new(1.0 + u * u, 0.0), eta0);
            let w = -i * u * (-2.0 * u * kz).exp();
            [w * (rp - eta0 * eta0 * rs), w * rs * (1.0 + u * u)]
        },
        U_MIN.ln(),
        u_max.ln(),
        n,
    );
    [(prop[0] + evan[0]) * 0.375, (prop[1] + evan[1]) * 0.75]
}
