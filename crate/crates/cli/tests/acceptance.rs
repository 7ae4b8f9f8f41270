//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use oracle::Slab;
use rayon::prelude::*;
use spinflip::materials::optical_conductivity;
use spinflip::{
    free_space_rate, full_rate, medium_response, permittivity, slab_factor, thermal_occupation,
    validate_asymptotic, Material, Permittivity, QuadratureSettings, Scenario, SpinWeights,
    TransitionSpec, SI,
};

const NU: f64 = 560e3;
const Z: f64 = 50e-6;

struct Report {
    failed: Vec<u32>,
}

impl Report {
    fn record(&mut self, id: u32, title: &str, checks: &[(bool, String)]) {
        let pass = checks.iter().all(|(ok, _)| *ok);
        println!(
            "criterion {id} {}: {title}",
            if pass { "PASS" } else { "FAIL" }
        );
        for (ok, detail) in checks {
            println!("    [{}] {detail}", if *ok { "ok" } else { "FAIL" });
        }
        if !pass {
            self.failed.push(id);
        }
    }
}

fn transition() -> TransitionSpec {
    TransitionSpec::new(NU).unwrap()
}

fn scenario(material: Material, t: f64, z: f64) -> Scenario {
    Scenario::new(transition(), z, t, material).unwrap()
}

fn settings() -> QuadratureSettings {
    QuadratureSettings::default()
}

fn tau(material: Material, t: f64) -> f64 {
    full_rate(&scenario(material, t, Z), &settings())
        .unwrap()
        .tau
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn free_space_lifetime() -> Vec<(bool, String)> {
    let omega = transition().angular_frequency();
    let tau0 = 1.0 / free_space_rate(omega);
    // CODATA 2018 values typed independently of the library constants
    let (mu0, mu_b, hbar, c): (f64, f64, f64, f64) = (
        1.25663706212e-6,
        9.2740100783e-24,
        1.054571817e-34,
        299792458.0,
    );
    let k = 2.0 * std::f64::consts::PI * NU / c;
    let hand = 24.0 * std::f64::consts::PI * hbar / (mu0 * (2.0 * mu_b).powi(2) * k.powi(3));
    let rel = (tau0 - hand).abs() / hand;
    vec![
        (
            tau0 / 1e25 <= 1.5 && 1e25 / tau0 <= 1.5,
            format!("tau0 = {tau0:.4e} s, within x1.5 of 1e25 s"),
        ),
        (
            rel <= 1e-6,
            format!("hand evaluation {hand:.10e} s, rel diff {rel:.2e} <= 1e-6"),
        ),
    ]
}

fn plateau() -> Vec<(bool, String)> {
    let temps = linspace(1.0, 7.5, 100);
    let start = Instant::now();
    let taus: Vec<f64> = temps
        .par_iter()
        .map(|&t| tau(Material::niobium(), t))
        .collect();
    let elapsed = start.elapsed();
    let (i_min, tau_min) =
        taus.iter().enumerate().fold(
            (0, f64::INFINITY),
            |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc },
        );
    let below: Vec<f64> = temps
        .iter()
        .zip(&taus)
        .filter(|(_, v)| **v < 1e9)
        .map(|(t, _)| *t)
        .collect();
    let t42 = tau(Material::niobium(), 4.2);
    vec![
        (
            below.is_empty(),
            format!(
                "tau_s >= 1e9 s on [1, 7.5] K: min {tau_min:.3e} s at {:.3} K; {} of 100 points below (from {:.3} K)",
                temps[i_min],
                below.len(),
                below.first().copied().unwrap_or(f64::NAN)
            ),
        ),
        ((1e10..=1e12).contains(&t42), format!("tau_s(4.2 K) = {t42:.4e} s in [1e10, 1e12]")),
        (elapsed < Duration::from_secs(5), format!("100-point sweep in {elapsed:.2?} < 5 s")),
    ]
}

fn boost() -> Vec<(bool, String)> {
    let r42 = tau(Material::niobium(), 4.2) / tau(Material::aluminium(), 4.2);
    let r0 = tau(Material::niobium(), 0.0) / tau(Material::aluminium(), 0.0);
    vec![
        (
            r42 >= 1e9,
            format!("tau_s/tau_n at 4.2 K = {r42:.4e} >= 1e9"),
        ),
        (
            (1e16..=1e20).contains(&r0),
            format!("tau_s/tau_n at T = 0 = {r0:.4e} in [1e16, 1e20]"),
        ),
    ]
}

fn asymptotic_law() -> Vec<(bool, String)> {
    let temps = linspace(1.0, 7.0, 8);
    let dists = linspace(10e-6, 100e-6, 8);
    let start = Instant::now();
    let dev: Vec<Vec<f64>> = temps
        .par_iter()
        .map(|&t| {
            dists
                .iter()
                .map(|&z| {
                    validate_asymptotic(&scenario(Material::niobium(), t, z), &settings())
                        .unwrap()
                        .deviation
                })
                .collect()
        })
        .collect();
    let elapsed = start.elapsed();
    let max = dev.iter().flatten().fold(0.0_f64, |a, &b| a.max(b));
    // λ_L/z falls with z; λ_L/z and λ_L/δ both fall as T drops
    let along_z = dev.iter().all(|row| row.windows(2).all(|w| w[1] <= w[0]));
    let along_t = (1..temps.len()).all(|i| (0..dists.len()).all(|j| dev[i][j] >= dev[i - 1][j]));
    vec![
        (
            max < 0.05,
            format!("max deviation {max:.4e} < 0.05 on the 8x8 grid"),
        ),
        (
            along_z && along_t,
            "deviation shrinks with z and with falling T".to_string(),
        ),
        (
            elapsed < Duration::from_secs(10),
            format!("grid in {elapsed:.2?} < 10 s"),
        ),
    ]
}

fn limits() -> Vec<(bool, String)> {
    let nb = full_rate(&scenario(Material::niobium(), 0.0, Z), &settings()).unwrap();
    let pc = full_rate(&scenario(Material::PerfectConductor, 0.0, Z), &settings()).unwrap();
    let kz = scenario(Material::PerfectConductor, 0.0, Z).kz();
    let mirror = slab_factor(
        &Permittivity::PerfectConductor,
        1e-7,
        SpinWeights::default(),
        &settings(),
    )
    .unwrap();
    let (p, q) = (mirror.parallel.real(), mirror.perp.real());
    vec![
        (
            (nb.gamma_slab / nb.gamma0).abs() <= 1e-5,
            format!(
                "Nb, T = 0: |gamma_slab|/gamma0 = {:.3e} <= 1e-5",
                (nb.gamma_slab / nb.gamma0).abs()
            ),
        ),
        (
            (pc.gamma_slab / pc.gamma0).abs() <= 1e-5,
            format!(
                "perfect conductor, kz = {kz:.3e}: |gamma_slab|/gamma0 = {:.3e} <= 1e-5",
                (pc.gamma_slab / pc.gamma0).abs()
            ),
        ),
        (
            (p - 0.5).abs() <= 1e-3 && (q + 0.5).abs() <= 1e-3,
            format!("perfect conductor, kz = 1e-7: I_par = {p:.12}, I_perp = {q:.12}"),
        ),
    ]
}

fn oracle_equivalence() -> Vec<(bool, String)> {
    let omega = transition().angular_frequency();
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut cases = 0;
    for name in ["nb", "al", "perfect"] {
        let eps = permittivity(&Material::preset(name).unwrap(), 4.2, omega).unwrap();
        let slab = match eps {
            Permittivity::Dielectric(e) => Slab::Dielectric(e),
            Permittivity::PerfectConductor => Slab::Mirror,
        };
        for kz in [1e-7, 1e-6, 1e-5, 1e-4] {
            let got = slab_factor(&eps, kz, SpinWeights::default(), &settings()).unwrap();
            let want = oracle::integrals(&slab, kz, 1 << 15);
            for (a, b) in [
                (got.parallel.real(), want[0].re),
                (got.perp.real(), want[1].re),
            ] {
                worst = worst.max((a - b).abs() / b.abs());
            }
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    vec![
        (
            cases == 12 && worst <= 1e-6,
            format!("{cases} scenarios, worst rel diff {worst:.3e} <= 1e-6"),
        ),
        (
            elapsed < Duration::from_secs(60),
            format!("including oracle in {elapsed:.2?} < 60 s"),
        ),
    ]
}

fn properties() -> Vec<(bool, String)> {
    let omega = transition().angular_frequency();
    let eps0 = 1.0 / (SI.mu0 * SI.c * SI.c);
    let nb = Material::niobium();
    let tc = nb.as_superconductor().unwrap().tc_k;
    let temps = linspace(0.0, 1.2 * tc, 241);

    let mut passive = true;
    let mut sum_rule = 0.0_f64;
    let mut eps_sigma = 0.0_f64;
    for m in [
        Material::niobium(),
        Material::niobium_nonlocal(),
        Material::aluminium(),
    ] {
        for &t in &temps {
            let r = medium_response(&m, t, omega).unwrap();
            let e = r.epsilon.value().unwrap();
            passive &= e.im >= 0.0;
            sum_rule = sum_rule.max((r.ns_fraction + r.nn_fraction - 1.0).abs());
            let s = optical_conductivity(&m, t, omega).unwrap();
            let from_sigma = num_complex::Complex64::new(1.0, 0.0)
                + num_complex::Complex64::i() * s / (eps0 * omega);
            eps_sigma = eps_sigma.max((e - from_sigma).norm() / e.norm());
        }
    }

    let rate = |t: f64| {
        full_rate(&scenario(Material::niobium(), t, Z), &settings())
            .unwrap()
            .gamma_total
    };
    let at_tc = rate(tc);
    let jump = ((rate(tc * (1.0 - 1e-12)) - at_tc) / at_tc)
        .abs()
        .max(((rate(tc * (1.0 + 1e-12)) - at_tc) / at_tc).abs());

    let mut z4 = 0.0_f64;
    for t in [1.0, 4.2, 7.0] {
        let eps = permittivity(&nb, t, omega).unwrap();
        for kz in [1e-7, 1e-6, 1e-5] {
            let a = slab_factor(&eps, kz, SpinWeights::default(), &settings())
                .unwrap()
                .value;
            let b = slab_factor(&eps, 2.0 * kz, SpinWeights::default(), &settings())
                .unwrap()
                .value;
            z4 = z4.max((16.0 * b / a - 1.0).abs());
        }
    }

    let x: f64 = 1e-9;
    let t = SI.hbar * omega / (SI.k_b * x);
    let series = 1.0 / x - 0.5 + x / 12.0 - x.powi(3) / 720.0;
    let bose = ((thermal_occupation(omega, t) - series) / series).abs();

    vec![
        (
            passive,
            "Im eps >= 0 for nb, nb-nonlocal, al on [0, 1.2 Tc]".to_string(),
        ),
        (
            sum_rule == 0.0,
            format!("|n_s + n_n - 1| max {sum_rule:.1e}"),
        ),
        (
            eps_sigma <= 1e-12,
            format!("eps vs 1 + i sigma/(eps0 omega): max rel {eps_sigma:.2e} <= 1e-12"),
        ),
        (
            jump <= 1e-6,
            format!("gamma continuity at Tc (1 +- 1e-12): rel jump {jump:.2e} <= 1e-6"),
        ),
        (
            z4 <= 0.02,
            format!("z^-4 scaling of slab correction: max rel dev {z4:.2e} <= 0.02"),
        ),
        (
            bose <= 1e-6,
            format!("n_th at hbar omega/kT = 1e-9 vs series: rel {bose:.2e} <= 1e-6"),
        ),
    ]
}

fn determinism() -> Vec<(bool, String)> {
    let args = [
        "sweep",
        "--material",
        "nb",
        "--distance-um",
        "50",
        "--frequency-khz",
        "560",
        "--sweep-axis",
        "temperature",
        "--sweep-start",
        "0.5",
        "--sweep-stop",
        "8.31",
        "--sweep-points",
        "100",
    ];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_spinflip"))
            .args(args)
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let golden = std::fs::read(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/nb_temperature_sweep.csv"),
    )
    .unwrap();
    vec![
        (
            a.status.success() && a.stdout == b.stdout,
            format!("two runs byte-identical ({} bytes)", a.stdout.len()),
        ),
        (
            a.stdout == golden,
            "matches tests/golden/nb_temperature_sweep.csv".to_string(),
        ),
    ]
}

fn main() {
    let mut report = Report { failed: Vec::new() };
    report.record(1, "free-space lifetime", &free_space_lifetime());
    report.record(2, "Nb lifetime plateau", &plateau());
    report.record(3, "superconducting boost over Al", &boost());
    report.record(4, "near-field closed form vs quadrature", &asymptotic_law());
    report.record(
        5,
        "zero-temperature and perfect-conductor limits",
        &limits(),
    );
    report.record(
        6,
        "adaptive quadrature vs Simpson oracle",
        &oracle_equivalence(),
    );
    report.record(7, "property suites", &properties());
    report.record(8, "sweep determinism", &determinism());
    if report.failed.is_empty() {
        println!("acceptance: all 8 criteria passed");
    } else {
        println!("acceptance: failed criteria {:?}", report.failed);
        std::process::exit(1);
    }
}
