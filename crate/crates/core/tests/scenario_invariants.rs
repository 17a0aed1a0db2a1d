//! Scenario-level invariants: ramped-RF compensation of inhomogeneity,
//! integrator-step robustness at the default policy, validity of the solid
//! closed forms at non-integer rotor-to-difference ratios, the degeneracy
//! flag at the recoupling boundary, and the brute-force sign laws.

use spincp::constants::{hz, to_hz};
use spincp::powder::{OrientationSet, RfDistribution};
use spincp::presets;
use spincp::scenarios::{
    compare_aht_vs_brute, run_buildup, scan_offset, ComparisonOutcome, InitialPrep, Phase,
    RfInhomogeneity, RfProfile, ScenarioConfig,
};
use spincp::solid::CrystalliteOrientation;
use spincp::SpinSystem;

#[test]
fn ramped_rf_recovers_inhomogeneity_losses() {
    // with a 5% RF spread, sweeping the amplitude through the matching
    // condition must do at least as well as sitting on it
    let mut cw = presets::fig2_config(450.0);
    cw.inhomogeneity = Some(RfInhomogeneity {
        fraction: 0.05,
        model: RfDistribution::Gaussian,
    });
    cw.out_points = 300;
    let mut ramped = cw.clone();
    ramped.rf = RfProfile::LinearRamp { span: 0.05 };
    let (max_cw, _) = run_buildup(&cw).unwrap().max_of("Ix").unwrap();
    let (max_ramp, _) = run_buildup(&ramped).unwrap().max_of("Ix").unwrap();
    println!("inhomogeneous plateaus: cw {max_cw:.3}, ramped {max_ramp:.3}");
    assert!(max_ramp >= max_cw, "ramp {max_ramp} below cw {max_cw}");
}

#[test]
fn step_halving_is_inert_at_default_policy() {
    // ramped liquid run (time-dependent path)
    let mut config = presets::fig2_config(300.0);
    config.rf = RfProfile::LinearRamp { span: 0.05 };
    config.out_points = 120;
    let base = run_buildup(&config).unwrap();
    let mut halved = config.clone();
    halved.step_override = Some(config.default_step() / 2.0);
    let fine = run_buildup(&halved).unwrap();
    for (name, _) in &base.channels {
        for (a, b) in base
            .channel(name)
            .unwrap()
            .iter()
            .zip(fine.channel(name).unwrap())
        {
            assert!((a - b).abs() < 1e-5, "liquid channel {name}: {a} vs {b}");
        }
    }
    // solid rotor-periodic path; 41 points over 4 ms puts every grid time on
    // a step boundary of both runs, so the comparison sees pure integrator
    // truncation rather than grid snapping
    let orientation = CrystalliteOrientation::from_degrees(10.0, 45.0, 80.0);
    let mut config = presets::fig4_config(OrientationSet::single(orientation), 4.0e-3);
    config.out_points = 41;
    let base = run_buildup(&config).unwrap();
    let mut halved = config.clone();
    halved.step_override = Some(config.default_step() / 2.0);
    let fine = run_buildup(&halved).unwrap();
    for (name, _) in &base.channels {
        for (a, b) in base
            .channel(name)
            .unwrap()
            .iter()
            .zip(fine.channel(name).unwrap())
        {
            assert!((a - b).abs() < 1e-5, "solid channel {name}: {a} vs {b}");
        }
    }
}

#[test]
fn non_integer_k_agreement_holds() {
    // the closed forms are algebraic in k = w_R / Delta; agreement with
    // brute force persists away from integer ratios
    let orientation = CrystalliteOrientation::from_degrees(10.0, 45.0, 80.0);
    for k in [40.0, 17.3, 7.0, 3.6] {
        let delta_hz = 40_000.0 / k;
        let system = SpinSystem::builder()
            .proton("H1")
            .at([0.0, 0.0, 2.2])
            .proton("H2")
            .at([0.0, 0.0, 0.0])
            .carbon13("C")
            .at([1.1, 0.0, 0.0])
            .shift_hz("H1", delta_hz / 2.0)
            .shift_hz("H2", -delta_hz / 2.0)
            .build()
            .unwrap();
        let mut config = presets::fig4_config(OrientationSet::single(orientation), 1.0);
        config.system = system;
        config.omega1 = hz(delta_hz);
        // window of one effective-rotation period at this k
        let report_probe = {
            let mut c = config.clone();
            c.tau_sl = 1.0e-3;
            c.out_points = 8;
            compare_aht_vs_brute(&c).unwrap()
        };
        let _ = report_probe;
        let fset = spincp::solid::FourierSet::from_system(&config.system, &orientation).unwrap();
        let d_ss = *fset.get(0, 1).unwrap();
        let d_minus = fset.get(0, 2).unwrap().sub(fset.get(1, 2).unwrap());
        let aht = spincp::solid::solid_aht_coefficients(
            &d_ss,
            &d_minus,
            hz(delta_hz),
            k,
            spincp::solid::DeltaSign::Positive,
        )
        .unwrap();
        config.tau_sl = (1.15 * std::f64::consts::TAU / aht.omega_eff).clamp(2e-3, 0.08);
        config.out_points = 200;
        let report = compare_aht_vs_brute(&config).unwrap();
        let dev = report.deviation("Ix").unwrap();
        let (max_b, _) = report.brute.max_of("Ix").unwrap();
        println!(
            "k = {k}: rms {:.4}, brute max {max_b:.3} ({:.2}% of max)",
            dev.rms,
            100.0 * dev.rms / max_b
        );
        assert!(
            dev.rms < 0.05 * max_b,
            "k = {k}: rms {} exceeds 5% of {max_b}",
            dev.rms
        );
    }
}

#[test]
fn k_two_reports_degeneracy_instead_of_agreement() {
    let orientation = CrystalliteOrientation::from_degrees(10.0, 45.0, 80.0);
    let delta_hz = 20_000.0; // k = 40 kHz / 20 kHz = 2
    let system = SpinSystem::builder()
        .proton("H1")
        .at([0.0, 0.0, 2.2])
        .proton("H2")
        .at([0.0, 0.0, 0.0])
        .carbon13("C")
        .at([1.1, 0.0, 0.0])
        .shift_hz("H1", delta_hz / 2.0)
        .shift_hz("H2", -delta_hz / 2.0)
        .build()
        .unwrap();
    let mut config = presets::fig4_config(OrientationSet::single(orientation), 1.0e-3);
    config.system = system;
    config.omega1 = hz(delta_hz);
    config.out_points = 40;
    let report = compare_aht_vs_brute(&config).unwrap();
    match report.outcome {
        ComparisonOutcome::DegenerateK { k, .. } => {
            assert!((k - 2.0).abs() < 1e-9, "flagged k = {k}");
        }
        ComparisonOutcome::Compared(_) => panic!("k = 2 must flag the recoupling degeneracy"),
    }
    assert!(report.analytic.is_none());
}

#[test]
fn liquid_sign_flips_with_mirrored_shifts() {
    let base = presets::fig2_config(300.0);
    let mirrored_system = presets::fig2_system(-300.0);
    let mut mirrored = base.clone();
    mirrored.system = mirrored_system;
    let ts_p = run_buildup(&base).unwrap();
    let ts_n = run_buildup(&mirrored).unwrap();
    let ix_p = ts_p.channel("Ix").unwrap();
    let ix_n = ts_n.channel("Ix").unwrap();
    let max_p = ix_p.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    for (a, b) in ix_p.iter().zip(ix_n) {
        assert!((a + b).abs() <= 0.01 * max_p, "asymmetry {a} vs {b}");
    }
}

#[test]
fn offset_profile_mirror_symmetry() {
    // mirrored shifts with mirrored preparation scan identically under an
    // offset sign flip
    let config = presets::fig2_config(300.0);
    let mut mirrored = config.clone();
    mirrored.system = presets::fig2_system(-300.0);
    mirrored.prep = InitialPrep::AntiLongitudinal { sign: -1.0 };
    let offsets: Vec<f64> = (-2..=2).map(|k| hz(40.0 * k as f64)).collect();
    let neg_offsets: Vec<f64> = offsets.iter().rev().map(|o| -o).collect();
    let p = scan_offset(&config, &offsets).unwrap();
    let m = scan_offset(&mirrored, &neg_offsets).unwrap();
    for (a, b) in p.max_over_tau.iter().zip(m.max_over_tau.iter().rev()) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

#[test]
fn large_offset_quenches_transfer() {
    let mut config = presets::fig2_config(300.0);
    config.out_points = 200;
    let on_resonance = run_buildup(&config).unwrap();
    let (max_on, _) = on_resonance.max_of("Ix").unwrap();
    let profile = scan_offset(&config, &[hz(20_000.0)]).unwrap();
    println!("on-resonance {max_on:.3}, far-offset {:.5}", profile.max_over_tau[0]);
    assert!(profile.max_over_tau[0] < 0.05 * max_on);
}

#[test]
fn glycine_like_site_inversions_give_opposite_signals() {
    let a = run_buildup(&presets::glycine_like_config(true)).unwrap();
    let b = run_buildup(&presets::glycine_like_config(false)).unwrap();
    let (max_a, _) = a.max_of("Ix").unwrap();
    let ix_a = a.channel("Ix").unwrap();
    let ix_b = b.channel("Ix").unwrap();
    assert!(max_a.abs() > 0.05, "transfer too weak to test: {max_a}");
    for (x, y) in ix_a.iter().zip(ix_b) {
        assert!((x + y).abs() < 1e-8 * 4.0 + 1e-12, "{x} vs {y}");
    }
}

#[test]
fn solid_phase_requires_mas_fields() {
    let mut config = presets::fig4_config(
        OrientationSet::single(CrystalliteOrientation::identity()),
        1.0e-3,
    );
    config.phase = Phase::Liquid;
    assert!(run_buildup(&config).is_err());
}

#[test]
fn fixed_tau_figure_of_merit_reported() {
    let mut config = presets::fig2_config(300.0);
    config.out_points = 150;
    let delta = config.delta();
    let grid: Vec<f64> = (0..5).map(|k| delta + hz(-2.0 + k as f64)).collect();
    let p = spincp::scenarios::scan_rf(&config, &grid).unwrap();
    assert_eq!(p.max_over_tau.len(), p.at_fixed_tau.len());
    for (m, f) in p.max_over_tau.iter().zip(&p.at_fixed_tau) {
        assert!(f <= m, "fixed-tau value {f} above max-over-tau {m}");
    }
    assert!(to_hz(p.argmax) > 0.0);
}
