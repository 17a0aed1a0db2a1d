//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line with the measured values before asserting. Tolerances are
//! pinned in code; quoted runtimes are for a desktop-class machine and are
//! asserted generously.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines immediately.

use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spincp::constants::{hz, to_hz, THERMAL_S_OVER_I};
use spincp::liquid::{self, LiquidParams};
use spincp::magnus::{project_coefficients, second_order_average_hamiltonian};
use spincp::operator::Operator;
use spincp::powder::{generate_orientations, OrientationScheme, OrientationSet, RfDistribution};
use spincp::presets::{self, FieldPreset};
use spincp::scenarios::{
    compare_aht_vs_brute, run_buildup, scan_rf, RfInhomogeneity, ScenarioConfig,
};
use spincp::solid::{
    solid_aht_coefficients, solid_fourier_components, CrystalliteOrientation, DeltaSign,
    FourierSet, PairFourier,
};
use spincp::spin::{
    embed_operator, fictitious_operator, zq_dq_operator, Axis, FicAxis, Subspace, ZqDqKind,
};
use spincp::SpinSystem;

struct Criterion {
    name: &'static str,
    started: Instant,
    failures: Vec<String>,
    details: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            started: Instant::now(),
            failures: Vec::new(),
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if ok {
            self.details.push(detail);
        } else {
            self.failures.push(detail);
        }
    }

    fn finish(mut self, runtime_limit_s: Option<f64>) {
        let elapsed = self.started.elapsed().as_secs_f64();
        if let Some(limit) = runtime_limit_s {
            self.check(
                elapsed < limit,
                format!("runtime {elapsed:.1} s (limit {limit:.0} s)"),
            );
        }
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut notes: Vec<String> = Vec::new();
        notes.extend(self.failures.iter().cloned());
        notes.extend(self.details.iter().cloned());
        println!("ACCEPTANCE {}: {verdict} — {}", self.name, notes.join("; "));
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {}",
            self.name,
            self.failures.join("; ")
        );
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Three-stage refinement of the RF optimum by the max-over-tau figure of
/// merit, finishing on a 0.05 Hz grid.
fn locate_rf_optimum(config: &ScenarioConfig, center: f64) -> f64 {
    let coarse = scan_rf(config, &linspace(center - hz(40.0), center + hz(40.0), 41)).unwrap();
    let mid = scan_rf(
        config,
        &linspace(coarse.argmax - hz(3.0), coarse.argmax + hz(3.0), 25),
    )
    .unwrap();
    let fine = scan_rf(
        config,
        &linspace(mid.argmax - hz(0.6), mid.argmax + hz(0.6), 25),
    )
    .unwrap();
    fine.argmax
}

#[test]
fn criterion_01_liquid_matching() {
    let mut c = Criterion::new("1 liquid matching");
    for (delta, paper_hz) in [(150.0, 127.8), (300.0, 288.6), (450.0, 442.4)] {
        let config = presets::fig2_config(delta);
        let eq12 = config.omega1;
        let found = locate_rf_optimum(&config, eq12);
        let found_hz = to_hz(found);
        c.check(
            (found_hz - paper_hz).abs() <= 2.0,
            format!("delta {delta}: optimum {found_hz:.2} Hz vs reference {paper_hz} Hz"),
        );
        c.check(
            (to_hz(eq12) - found_hz).abs() <= 2.0,
            format!(
                "delta {delta}: closed form {:.2} Hz within 2 Hz of scan {found_hz:.2} Hz",
                to_hz(eq12)
            ),
        );
    }
    c.finish(Some(120.0));
}

#[test]
fn criterion_02_full_enhancement() {
    let mut c = Criterion::new("2 full enhancement");
    let config = presets::fig2_config(450.0);
    let ts = run_buildup(&config).unwrap();
    let (max_ix, at) = ts.max_of("Ix").unwrap();
    c.check(
        max_ix >= 3.9,
        format!("matched buildup max Ix {max_ix:.4} at {:.1} ms (threshold 3.9)", at * 1e3),
    );
    c.finish(Some(30.0));
}

#[test]
fn criterion_03_liquid_aht_fidelity() {
    let mut c = Criterion::new("3 liquid closed-form fidelity");
    let rms_of = |delta: f64| {
        let config = presets::fig2_config(delta);
        let report = compare_aht_vs_brute(&config).unwrap();
        report.deviation("Ix").unwrap().rms
    };
    let rms_450 = rms_of(450.0);
    let rms_150 = rms_of(150.0);
    c.check(
        rms_450 < 0.05 * THERMAL_S_OVER_I,
        format!("RMS(Ix) at 450 Hz = {rms_450:.4} (limit {:.2})", 0.05 * THERMAL_S_OVER_I),
    );
    c.check(
        rms_150 > rms_450,
        format!("convergence trend: RMS at 150 Hz ({rms_150:.4}) > RMS at 450 Hz ({rms_450:.4})"),
    );
    c.finish(None);
}

#[test]
fn criterion_04_inverse_transfer() {
    let mut c = Criterion::new("4 inverse transfer");
    let config = presets::fig3_config();
    let ts = run_buildup(&config).unwrap();
    let (max, at_s) = ts.max_of("S1z-S2z").unwrap();
    let at_ms = at_s * 1e3;
    c.check(
        (max - 0.5).abs() <= 0.05,
        format!("peak amplitude {max:.4} (reference 0.5 +- 0.05)"),
    );
    c.check(
        (at_ms - 216.3).abs() <= 10.0,
        format!("peak at {at_ms:.1} ms (reference 216.3 +- 10 ms)"),
    );
    c.finish(Some(60.0));
}

#[test]
fn criterion_05_solid_crystallite_fidelity() {
    let mut c = Criterion::new("5 solid single-crystallite fidelity");
    for orientation in presets::fig4_orientations() {
        let system = presets::fig4_system();
        let fset = FourierSet::from_system(&system, &orientation).unwrap();
        let d_ss = *fset.get(0, 1).unwrap();
        let d_minus = fset.get(0, 2).unwrap().sub(fset.get(1, 2).unwrap());
        let aht =
            solid_aht_coefficients(&d_ss, &d_minus, hz(1000.0), 40.0, DeltaSign::Positive)
                .unwrap();
        let window = (1.15 * std::f64::consts::TAU / aht.omega_eff).clamp(2e-3, 0.06);
        let config = presets::fig4_config(OrientationSet::single(orientation), window);
        let report = compare_aht_vs_brute(&config).unwrap();
        let dev = report.deviation("Ix").unwrap();
        let (max_b, _) = report.brute.max_of("Ix").unwrap();
        c.check(
            dev.rms < 0.05 * max_b,
            format!(
                "({:.0},{:.0},{:.0}) deg: rms {:.4} = {:.2}% of max {:.3}",
                orientation.alpha.to_degrees(),
                orientation.beta.to_degrees(),
                orientation.gamma.to_degrees(),
                dev.rms,
                100.0 * dev.rms / max_b,
                max_b
            ),
        );
    }
    c.finish(Some(300.0));
}

fn transfer_basis(system: &SpinSystem) -> Vec<Operator> {
    let pair = (0, 1);
    let i_spin = 2;
    let p23 = fictitious_operator(system, pair, Subspace::ZeroQuantum, FicAxis::Unit).unwrap();
    let s_z = fictitious_operator(system, pair, Subspace::ZeroQuantum, FicAxis::Z).unwrap();
    let iz_block = embed_operator(system, i_spin, Axis::Z).unwrap().dot(&p23);
    vec![
        iz_block.add(&s_z),
        iz_block.sub(&s_z),
        zq_dq_operator(system, pair, i_spin, ZqDqKind::ZqX).unwrap(),
        zq_dq_operator(system, pair, i_spin, ZqDqKind::ZqY).unwrap(),
    ]
}

#[test]
fn criterion_06_closed_forms_vs_numeric_engine() {
    let mut c = Criterion::new("6 closed forms vs numeric engine");
    let mut rng = ChaCha8Rng::seed_from_u64(611);
    let solid_system = SpinSystem::builder()
        .proton("H1")
        .proton("H2")
        .carbon13("C")
        .shift_hz("H1", 500.0)
        .shift_hz("H2", -500.0)
        .build()
        .unwrap();
    let mut worst_solid = 0.0_f64;
    let mut worst_liquid = 0.0_f64;
    for _ in 0..100 {
        // solid draw: random Fourier entries, k in [3, 100] clear of the
        // degenerate ratios
        let delta = hz(rng.gen_range(300.0..3000.0));
        let mut k: f64 = rng.gen_range(3.0..100.0);
        if (k - k.round()).abs() < 1e-3 {
            k += 0.01;
        }
        let mut rnd = |scale: f64| -> PairFourier {
            PairFourier {
                d1: C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)),
                d2: C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)),
            }
        };
        let d_ss = rnd(hz(10_000.0));
        let d_s1i = rnd(hz(15_000.0));
        let d_s2i = rnd(hz(15_000.0));
        let d_minus = d_s1i.sub(&d_s2i);
        let fset = FourierSet::from_entries(vec![
            ((0, 1), d_ss),
            ((0, 2), d_s1i),
            ((1, 2), d_s2i),
        ]);
        let comps =
            solid_fourier_components(&solid_system, 0, 1, 2, &fset, delta, k * delta, delta)
                .unwrap();
        let h_ave = second_order_average_hamiltonian(&comps, delta).unwrap();
        let (coeffs, _) = project_coefficients(&h_ave, &transfer_basis(&solid_system)).unwrap();
        let aht = solid_aht_coefficients(&d_ss, &d_minus, delta, k, DeltaSign::Positive).unwrap();
        let expect = [aht.a, aht.b, aht.c1, aht.c2];
        let scale = expect.iter().map(|v| v.abs()).fold(1.0_f64, f64::max);
        for (got, want) in coeffs.iter().zip(expect) {
            worst_solid = worst_solid.max((got - want).abs() / scale);
        }

        // liquid draw
        let delta_hz = rng.gen_range(80.0..600.0);
        let system = presets::fig2_system(delta_hz);
        let params = LiquidParams {
            system: &system,
            i_spin: 2,
            s1: 0,
            s2: 1,
            omega1: hz(rng.gen_range(0.8..1.2) * delta_hz),
            i_offset: 0.0,
        };
        let laht = liquid::liquid_aht_coefficients(&params).unwrap();
        let comps = liquid::liquid_fourier_components(&params).unwrap();
        let h_ave = second_order_average_hamiltonian(&comps, laht.delta).unwrap();
        let i_z = embed_operator(&system, 2, Axis::Z).unwrap();
        let mut h2 = h_ave.clone();
        h2.axpy(C64::new(-(params.omega1 - laht.delta), 0.0), &i_z);
        let (coeffs, _) = project_coefficients(&h2, &transfer_basis(&system)).unwrap();
        let expect = [laht.a, laht.b, laht.c, 0.0];
        let scale = expect.iter().map(|v| v.abs()).fold(hz(0.1), f64::max);
        for (got, want) in coeffs.iter().zip(expect) {
            worst_liquid = worst_liquid.max((got - want).abs() / scale);
        }
    }
    c.check(
        worst_solid <= 1e-9,
        format!("solid A,B,C1,C2 worst relative deviation {worst_solid:.2e} over 100 draws"),
    );
    c.check(
        worst_liquid <= 1e-9,
        format!("liquid A,B,C worst relative deviation {worst_liquid:.2e} over 100 draws"),
    );
    c.finish(Some(60.0));
}

#[test]
fn criterion_07_powder_ceiling() {
    let mut c = Criterion::new("7 powder ceiling");
    let full = generate_orientations(OrientationScheme::FibonacciGamma, 233, 8, 0).unwrap();
    let config = presets::fig4_config(full, 25.0e-3);
    let ts = run_buildup(&config).unwrap();
    let (max_ix, at) = ts.max_of("Ix").unwrap();
    let lo = 0.35 * THERMAL_S_OVER_I;
    let hi = 0.65 * THERMAL_S_OVER_I;
    c.check(
        (lo..=hi).contains(&max_ix),
        format!(
            "powder-averaged max Ix {max_ix:.3} at {:.1} ms, inside [{lo:.2}, {hi:.2}]",
            at * 1e3
        ),
    );
    // convergence: halving the sphere density moves the maximum by < 2%
    let half = generate_orientations(OrientationScheme::FibonacciGamma, 116, 8, 0).unwrap();
    let config_half = presets::fig4_config(half, 25.0e-3);
    let (max_half, _) = run_buildup(&config_half).unwrap().max_of("Ix").unwrap();
    c.check(
        (max_half - max_ix).abs() < 0.02 * max_ix,
        format!("sphere-density convergence: {max_half:.3} vs {max_ix:.3}"),
    );
    c.finish(Some(900.0));
}

#[test]
fn criterion_08_sign_law() {
    let mut c = Criterion::new("8 sign law");
    let orientation = CrystalliteOrientation::from_degrees(70.0, 20.0, 50.0);
    let positive = presets::fig4_config(OrientationSet::single(orientation), 8.0e-3);
    let mut negative = positive.clone();
    negative.system = SpinSystem::builder()
        .proton("H1")
        .at([0.0, 0.0, 2.2])
        .proton("H2")
        .at([0.0, 0.0, 0.0])
        .carbon13("C")
        .at([1.1, 0.0, 0.0])
        .shift_hz("H1", -500.0)
        .shift_hz("H2", 500.0)
        .build()
        .unwrap();
    let ts_p = run_buildup(&positive).unwrap();
    let ts_n = run_buildup(&negative).unwrap();
    let ix_p = ts_p.channel("Ix").unwrap();
    let ix_n = ts_n.channel("Ix").unwrap();
    let max_p = ix_p.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let worst = ix_p
        .iter()
        .zip(ix_n)
        .map(|(a, b)| (a + b).abs())
        .fold(0.0_f64, f64::max);
    c.check(
        worst <= 0.01 * max_p,
        format!(
            "mirrored-shift run flips the transferred signal: worst |Ix+ + Ix-| = {worst:.2e} \
             vs 1% of max {max_p:.3}"
        ),
    );
    c.finish(None);
}

#[test]
fn criterion_09_null_transfer() {
    let mut c = Criterion::new("9 null transfer");
    let limit = 1e-3 * THERMAL_S_OVER_I;
    let max_ix = |config: &ScenarioConfig| {
        run_buildup(config)
            .unwrap()
            .channel("Ix")
            .unwrap()
            .iter()
            .fold(0.0_f64, |a, v| a.max(v.abs()))
    };
    // liquid, equal heteronuclear couplings
    let mut config = presets::fig2_config(300.0);
    config.system = SpinSystem::builder()
        .proton("H1")
        .proton("H2")
        .carbon13("C")
        .shift_hz("H1", 150.0)
        .shift_hz("H2", -150.0)
        .j_hz("H1", "H2", 8.5)
        .j_hz("H1", "C", 86.0)
        .j_hz("H2", "C", 86.0)
        .build()
        .unwrap();
    config.omega1 = hz(300.0 + 8.5_f64.powi(2) / 600.0);
    config.tau_sl = 0.3;
    let v = max_ix(&config);
    c.check(v <= limit, format!("liquid equal heteronuclear couplings: max |Ix| {v:.2e}"));
    // liquid, no homonuclear coupling
    let mut config = presets::fig2_config(300.0);
    config.system = SpinSystem::builder()
        .proton("H1")
        .proton("H2")
        .carbon13("C")
        .shift_hz("H1", 150.0)
        .shift_hz("H2", -150.0)
        .j_hz("H1", "C", 172.0)
        .j_hz("H2", "C", 8.0)
        .build()
        .unwrap();
    config.omega1 = hz(300.0 - 164.0_f64.powi(2) / (8.0 * 300.0));
    config.tau_sl = 0.3;
    let v = max_ix(&config);
    c.check(v <= limit, format!("liquid without homonuclear coupling: max |Ix| {v:.2e}"));
    // solid, identically vanishing heteronuclear difference (antipodal
    // protons around the carbon share every Fourier coefficient)
    let orientation = CrystalliteOrientation::from_degrees(30.0, 60.0, 20.0);
    let mut config = presets::fig4_config(OrientationSet::single(orientation), 10.0e-3);
    config.system = SpinSystem::builder()
        .proton("H1")
        .at([0.0, 0.0, 1.1])
        .proton("H2")
        .at([0.0, 0.0, -1.1])
        .carbon13("C")
        .at([0.0, 0.0, 0.0])
        .shift_hz("H1", 500.0)
        .shift_hz("H2", -500.0)
        .build()
        .unwrap();
    let v = max_ix(&config);
    c.check(v <= limit, format!("solid with D-(t) = 0: max |Ix| {v:.2e}"));
    // solid, no homonuclear coupling (explicit constants, collinear model)
    let mut config = presets::fig4_config(OrientationSet::single(orientation), 10.0e-3);
    config.system = SpinSystem::builder()
        .proton("H1")
        .proton("H2")
        .carbon13("C")
        .shift_hz("H1", 500.0)
        .shift_hz("H2", -500.0)
        .dipolar_hz("H1", "C", -20_000.0)
        .dipolar_hz("H2", "C", -5_000.0)
        .build()
        .unwrap();
    let v = max_ix(&config);
    c.check(v <= limit, format!("solid with d_SS(t) = 0: max |Ix| {v:.2e}"));
    c.finish(None);
}

#[test]
fn criterion_10_conservation_suite() {
    // purity (1e-8) and per-step unitarity (1e-10) are enforced inside the
    // propagators, and every scenario run carries a total-z guard at 1e-8;
    // completing the representative runs demonstrates all three, and the
    // total-z channel is re-verified explicitly here
    let mut c = Criterion::new("10 conservation suite");
    let liquid = presets::fig2_config(450.0);
    let solid = presets::fig4_config(
        OrientationSet::single(CrystalliteOrientation::from_degrees(10.0, 45.0, 80.0)),
        5.0e-3,
    );
    let inverse = presets::fig3_config();
    for (tag, config) in [("liquid", &liquid), ("solid", &solid), ("inverse", &inverse)] {
        match run_buildup(config) {
            Ok(_) => c.check(true, format!("{tag}: guards held")),
            Err(e) => c.check(false, format!("{tag}: {e}")),
        }
    }
    // explicit total-z check on a solid member
    let system = presets::fig4_system();
    let orientation = CrystalliteOrientation::from_degrees(10.0, 45.0, 80.0);
    let fset = FourierSet::from_system(&system, &orientation).unwrap();
    let mas =
        spincp::solid::MasHamiltonian::new(&system, &fset, hz(1000.0), 0.0, hz(40_000.0)).unwrap();
    let s1z = embed_operator(&system, 0, Axis::Z).unwrap();
    let s2z = embed_operator(&system, 1, Axis::Z).unwrap();
    let rho0 =
        spincp::propagate::DeviationState::new(s1z.sub(&s2z).scale_re(THERMAL_S_OVER_I)).unwrap();
    let obs = vec![spincp::propagate::Observable::new("sum", s1z.add(&s2z)).unwrap()];
    let grid: Vec<f64> = (0..=50).map(|k| 2.0e-3 * k as f64 / 50.0).collect();
    let ts = spincp::propagate::evolve_piecewise(
        |t| mas.at(t),
        &rho0,
        2.0e-3,
        125e-9,
        &obs,
        &grid,
    )
    .unwrap();
    let sum = ts.channel("sum").unwrap();
    let drift = sum
        .iter()
        .map(|v| (v - sum[0]).abs())
        .fold(0.0_f64, f64::max);
    c.check(drift <= 1e-8, format!("total abundant z drift {drift:.2e} (limit 1e-8)"));
    c.finish(None);
}

fn local_maxima(x: &[f64], y: &[f64]) -> Vec<(f64, f64)> {
    let mut peaks = Vec::new();
    for k in 1..y.len() - 1 {
        if y[k] > y[k - 1] && y[k] >= y[k + 1] {
            peaks.push((x[k], y[k]));
        }
    }
    peaks
}

#[test]
fn criterion_11_qualitative_trends() {
    let mut c = Criterion::new("11 qualitative multi-spin trends");
    let powder = presets::fig5_powder();

    // broad matching near the shift difference at 40 kHz
    let config40 = presets::fig5_config(FieldPreset::Mhz600, 40_000.0, powder.clone());
    let grid40 = linspace(hz(1200.0), hz(3800.0), 14);
    let p40 = scan_rf(&config40, &grid40).unwrap();
    let argmax_hz = to_hz(p40.argmax);
    c.check(
        (2000.0..=3000.0).contains(&argmax_hz),
        format!("40 kHz optimum at {argmax_hz:.0} Hz, near the 2.5 kHz shift difference"),
    );
    let peak = p40.max_over_tau.iter().cloned().fold(f64::MIN, f64::max);
    let above_half: Vec<f64> = p40
        .x
        .iter()
        .zip(&p40.max_over_tau)
        .filter(|(_, v)| **v >= 0.5 * peak)
        .map(|(x, _)| to_hz(*x))
        .collect();
    let breadth = above_half.iter().cloned().fold(f64::MIN, f64::max)
        - above_half.iter().cloned().fold(f64::MAX, f64::min);
    c.check(
        breadth >= 400.0,
        format!("matching breadth at half maximum {breadth:.0} Hz (liquid matching is Hz-wide)"),
    );

    // two matching conditions at 80 kHz
    let config80 = presets::fig5_config(FieldPreset::Mhz600, 80_000.0, powder.clone());
    let grid80 = linspace(hz(500.0), hz(3400.0), 16);
    let p80 = scan_rf(&config80, &grid80).unwrap();
    let peaks = local_maxima(&p80.x, &p80.max_over_tau);
    let low = peaks
        .iter()
        .filter(|(x, _)| (700.0..=1400.0).contains(&to_hz(*x)))
        .map(|(_, v)| *v)
        .fold(f64::MIN, f64::max);
    let high = peaks
        .iter()
        .filter(|(x, _)| (2000.0..=3000.0).contains(&to_hz(*x)))
        .map(|(_, v)| *v)
        .fold(f64::MIN, f64::max);
    let valley = p80
        .x
        .iter()
        .zip(&p80.max_over_tau)
        .filter(|(x, _)| (1500.0..=2000.0).contains(&to_hz(**x)))
        .map(|(_, v)| *v)
        .fold(f64::MAX, f64::min);
    c.check(
        low > f64::MIN && high > f64::MIN && low > 1.3 * valley && high > 1.3 * valley,
        format!(
            "two matching conditions at 80 kHz: peaks {low:.2} and {high:.2} over valley {valley:.2}"
        ),
    );

    // transfer efficiency non-decreasing with MAS rate
    let mut effs = Vec::new();
    for mas in presets::FIG5_MAS_RATES_HZ {
        let config = presets::fig5_config(FieldPreset::Mhz600, mas, powder.clone());
        let (m, _) = run_buildup(&config).unwrap().max_of("Ix").unwrap();
        effs.push(m);
    }
    c.check(
        effs[0] <= effs[1] && effs[1] <= effs[2],
        format!(
            "efficiency non-decreasing 20/40/80 kHz: {:.2} <= {:.2} <= {:.2}",
            effs[0], effs[1], effs[2]
        ),
    );

    // the five-spin liquid plateau drops below 3.0 with 5% inhomogeneity
    let mut optimized = presets::s2_config();
    optimized.tau_sl = 0.7;
    optimized.out_points = 350;
    let scan = scan_rf(&optimized, &linspace(hz(258.0), hz(282.0), 13)).unwrap();
    optimized.omega1 = scan.argmax;
    let (plateau0, _) = run_buildup(&optimized).unwrap().max_of("Ix").unwrap();
    let mut inhomogeneous = optimized.clone();
    inhomogeneous.inhomogeneity = Some(RfInhomogeneity {
        fraction: 0.05,
        model: RfDistribution::Gaussian,
    });
    let (plateau5, _) = run_buildup(&inhomogeneous).unwrap().max_of("Ix").unwrap();
    c.check(
        plateau5 < 3.0 && plateau5 <= plateau0,
        format!(
            "five-spin plateau {plateau0:.2} drops to {plateau5:.2} with 5% inhomogeneity \
             (threshold 3.0)"
        ),
    );
    c.finish(None);
}
