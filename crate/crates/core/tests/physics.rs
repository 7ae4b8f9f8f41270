use spinflip::{
    full_rate, permittivity, slab_factor, thermal_occupation, validate_asymptotic, Material,
    QuadratureSettings, Scenario, SpinWeights, TransitionSpec, SI,
};

const NU: f64 = 560e3;

fn transition() -> TransitionSpec {
    TransitionSpec::new(NU).unwrap()
}

fn scenario(material: Material, t: f64, z: f64) -> Scenario {
    Scenario::new(transition(), z, t, material).unwrap()
}

fn nb_tc() -> f64 {
    Material::niobium().as_superconductor().unwrap().tc_k
}

fn omega() -> f64 {
    transition().angular_frequency()
}

#[test]
fn evanescent_sector_has_no_real_part_for_real_permittivity() {
    let settings = QuadratureSettings::default();
    for eps in [
        permittivity(&Material::niobium(), 0.0, omega()).unwrap(),
        permittivity(&Material::PerfectConductor, 0.0, omega()).unwrap(),
    ] {
        for kz in [1e-7, 1e-5, 1e-3] {
            let sf = slab_factor(&eps, kz, SpinWeights::default(), &settings).unwrap();
            for part in [sf.parallel, sf.perp] {
                assert!(
                    part.evanescent.re.abs() <= 1e-12 * part.value.re.abs(),
                    "kz={kz:e}: {:e} vs {:e}",
                    part.evanescent.re,
                    part.value.re
                );
            }
        }
    }
}

#[test]
fn slab_correction_follows_inverse_fourth_power() {
    let settings = QuadratureSettings::default();
    for t in [2.0, 4.0, 4.2, 6.0] {
        let eps = permittivity(&Material::niobium(), t, omega()).unwrap();
        for kz in [1e-7, 1e-6, 1e-5] {
            let near = slab_factor(&eps, kz, SpinWeights::default(), &settings).unwrap();
            let far = slab_factor(&eps, 2.0 * kz, SpinWeights::default(), &settings).unwrap();
            let ratio = far.value / near.value * 16.0;
            assert!((ratio - 1.0).abs() < 0.02, "T={t} kz={kz:e}: {ratio}");
        }
    }
}

#[test]
fn tail_truncation_is_sound() {
    let kz = scenario(Material::niobium(), 4.2, 50e-6).kz();
    let eps = permittivity(&Material::niobium(), 4.2, omega()).unwrap();
    let at = |cutoff: f64| {
        let s = QuadratureSettings {
            tail_exponent_cutoff: cutoff,
            ..QuadratureSettings::default()
        };
        slab_factor(&eps, kz, SpinWeights::default(), &s)
            .unwrap()
            .value
    };
    let reference = at(60.0);
    let default = at(45.0);
    let rel_tol = QuadratureSettings::default().rel_tol;
    assert!(((default - reference) / reference).abs() < 10.0 * rel_tol);

    // the u³e^{−2ukz} weight leaves a fraction Γ(4, Λ)/3! beyond the cutoff
    let halved = at(22.0);
    let l: f64 = 22.0;
    let bound = (-l).exp() * (1.0 + l + l * l / 2.0 + l * l * l / 6.0);
    let change = ((halved - default) / default).abs();
    assert!(
        change < 1.05 * bound && change > 0.5 * bound,
        "{change:e} vs {bound:e}"
    );
}

#[test]
fn zero_temperature_superconductor_recovers_free_space() {
    let settings = QuadratureSettings::default();
    for z in [10e-6, 50e-6, 85e-6] {
        let r = full_rate(&scenario(Material::niobium(), 0.0, z), &settings).unwrap();
        assert!(
            r.gamma_slab.abs() / r.gamma0 <= 1e-5,
            "z={z}: {}",
            r.gamma_slab / r.gamma0
        );
        assert_eq!(r.gamma_total, r.gamma0 + r.gamma_slab);
    }
}

#[test]
fn perfect_conductor_stays_within_mirror_bounds() {
    let settings = QuadratureSettings::default();
    for (t, z) in [(0.0, 50e-6), (4.2, 50e-6), (4.2, 1e-3), (300.0, 10e-6)] {
        let s = scenario(Material::PerfectConductor, t, z);
        let r = full_rate(&s, &settings).unwrap();
        let floor = r.gamma0 * (r.n_th + 1.0);
        assert!((r.gamma_total / floor - 1.0).abs() <= s.kz(), "T={t} z={z}");
    }
    let mirror = permittivity(&Material::PerfectConductor, 0.0, omega()).unwrap();
    for kz in [1e-7, 1e-5, 1e-3] {
        let sf = slab_factor(&mirror, kz, SpinWeights::default(), &settings).unwrap();
        assert!((sf.parallel.real() - 0.5).abs() < 1e-3);
        assert!((sf.perp.real() + 0.5).abs() < 1e-3);
    }
}

#[test]
fn niobium_rate_grows_with_temperature() {
    let settings = QuadratureSettings::default();
    let tc = nb_tc();
    let mut last = 0.0;
    for i in 0..=40 {
        let t = tc * i as f64 / 40.0;
        let g = full_rate(&scenario(Material::niobium(), t, 50e-6), &settings)
            .unwrap()
            .gamma_total;
        assert!(g >= last, "T={t}: {g:e} < {last:e}");
        last = g;
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

#[test]
fn asymptotic_form_tracks_full_quadrature() {
    let settings = QuadratureSettings::default();
    let temps = grid(1.0, 7.0, 8);
    let dists = grid(10e-6, 100e-6, 8);
    let dev: Vec<Vec<f64>> = temps
        .iter()
        .map(|&t| {
            dists
                .iter()
                .map(|&z| {
                    validate_asymptotic(&scenario(Material::niobium(), t, z), &settings)
                        .unwrap()
                        .deviation
                })
                .collect()
        })
        .collect();
    for (i, row) in dev.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            assert!(d < 0.05, "T={} z={}: {d}", temps[i], dists[j]);
            if j > 0 {
                assert!(d <= row[j - 1], "z ordering at T={}", temps[i]);
            }
            if i > 0 {
                assert!(d >= dev[i - 1][j], "T ordering at z={}", dists[j]);
            }
        }
    }
}

#[test]
fn large_asymptotic_deviation_is_flagged() {
    let settings = QuadratureSettings::default();
    let tc = nb_tc();
    let mut flagged = 0;
    for f in [0.9, 0.95, 0.99, 0.995, 0.999, 0.9999] {
        for z in [5e-6, 10e-6, 50e-6, 100e-6] {
            let v =
                validate_asymptotic(&scenario(Material::niobium(), f * tc, z), &settings).unwrap();
            if v.deviation > 0.05 {
                assert!(
                    !v.validity.all_passed(),
                    "T={} z={z}: {}",
                    f * tc,
                    v.deviation
                );
                flagged += 1;
            }
        }
    }
    assert!(flagged > 0);
}

#[test]
fn rate_is_continuous_across_tc() {
    let settings = QuadratureSettings::default();
    let tc = nb_tc();
    let rate = |t: f64| {
        full_rate(&scenario(Material::niobium(), t, 50e-6), &settings)
            .unwrap()
            .gamma_total
    };
    let at = rate(tc);
    let jump = |f: f64| ((rate(tc * (1.0 - f)) - at) / at).abs();
    assert!(jump(1e-12) < 1e-6, "{:e}", jump(1e-12));
    assert!(((rate(tc * (1.0 + 1e-12)) - at) / at).abs() < 1e-6);
    let (a, b) = (jump(1e-9), jump(1e-10));
    assert!((a / b - 10.0).abs() < 1.0, "{a:e} {b:e}");
}

#[test]
fn bose_factor_matches_series_at_tiny_argument() {
    let x: f64 = 1e-9;
    let t = SI.hbar * omega() / (SI.k_b * x);
    let series = 1.0 / x - 0.5 + x / 12.0;
    let n = thermal_occupation(omega(), t);
    assert!(((n - series) / series).abs() < 1e-6);
}
