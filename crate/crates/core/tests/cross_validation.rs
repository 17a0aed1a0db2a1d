//! Cross-validation of the closed-form second-order coefficients against the
//! generic numeric averaging engine, and of the averaged dynamics against
//! exact propagation. The two routes share no code beyond the operator
//! algebra, so agreement pins both.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spincp::constants::hz;
use spincp::liquid::{self, LiquidParams};
use spincp::magnus::{project_coefficients, second_order_average_hamiltonian};
use spincp::operator::Operator;
use spincp::propagate::{evolve_piecewise, DeviationState, Observable};
use spincp::solid::{
    solid_aht_coefficients, solid_fourier_components, CrystalliteOrientation, DeltaSign,
    FourierSet, PairFourier,
};
use spincp::spin::{
    embed_operator, fictitious_operator, zq_dq_operator, Axis, FicAxis, Subspace, ZqDqKind,
};
use spincp::SpinSystem;

fn three_spin_solid(delta_hz: f64) -> SpinSystem {
    SpinSystem::builder()
        .proton("H1")
        .at([0.0, 0.0, 2.2])
        .proton("H2")
        .at([0.0, 0.0, 0.0])
        .carbon13("C")
        .at([1.1, 0.0, 0.0])
        .shift_hz("H1", delta_hz / 2.0)
        .shift_hz("H2", -delta_hz / 2.0)
        .build()
        .unwrap()
}

/// Projection basis spanning the transfer block: (Iz + Sz), (Iz - Sz), and
/// the quadrature pair of the requested kind; Iz is restricted to the
/// zero-quantum block, where the paper's coefficient list lives.
fn transfer_basis(system: &SpinSystem, dq: bool) -> Vec<Operator> {
    let pair = (0, 1);
    let i_spin = 2;
    let p23 = fictitious_operator(system, pair, Subspace::ZeroQuantum, FicAxis::Unit).unwrap();
    let s_z = fictitious_operator(system, pair, Subspace::ZeroQuantum, FicAxis::Z).unwrap();
    let iz_block = embed_operator(system, i_spin, Axis::Z).unwrap().dot(&p23);
    let (qx, qy) = if dq {
        (
            zq_dq_operator(system, pair, i_spin, ZqDqKind::DqX).unwrap(),
            zq_dq_operator(system, pair, i_spin, ZqDqKind::DqY).unwrap(),
        )
    } else {
        (
            zq_dq_operator(system, pair, i_spin, ZqDqKind::ZqX).unwrap(),
            zq_dq_operator(system, pair, i_spin, ZqDqKind::ZqY).unwrap(),
        )
    };
    vec![iz_block.add(&s_z), iz_block.sub(&s_z), qx, qy]
}

fn random_fourier(rng: &mut impl Rng, scale: f64) -> PairFourier {
    let mut c = || C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
    PairFourier { d1: c(), d2: c() }
}

#[test]
fn solid_closed_forms_match_engine_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_811);
    let system = three_spin_solid(1000.0);
    for draw in 0..100 {
        let delta = hz(rng.gen_range(300.0..3000.0));
        let mut k: f64 = rng.gen_range(3.0..100.0);
        if (k - k.round()).abs() < 1e-3 {
            k += 0.01;
        }
        let omega_r = k * delta;
        let d_ss = random_fourier(&mut rng, hz(10_000.0));
        let d_s1i = random_fourier(&mut rng, hz(15_000.0));
        let d_s2i = random_fourier(&mut rng, hz(15_000.0));
        let d_minus = d_s1i.sub(&d_s2i);
        let fset = FourierSet::from_entries(vec![
            ((0, 1), d_ss),
            ((0, 2), d_s1i),
            ((1, 2), d_s2i),
        ]);
        // matched RF so the p = 0 component vanishes
        let comps =
            solid_fourier_components(&system, 0, 1, 2, &fset, delta, omega_r, delta).unwrap();
        let h_ave = second_order_average_hamiltonian(&comps, delta).unwrap();
        let basis = transfer_basis(&system, false);
        let (coeffs, residual) = project_coefficients(&h_ave, &basis).unwrap();
        let aht =
            solid_aht_coefficients(&d_ss, &d_minus, delta, k, DeltaSign::Positive).unwrap();
        let scale = [aht.a, aht.b, aht.c1, aht.c2]
            .iter()
            .map(|v| v.abs())
            .fold(1.0_f64, f64::max);
        for (got, expect) in coeffs.iter().zip([aht.a, aht.b, aht.c1, aht.c2]) {
            assert!(
                (got - expect).abs() <= 1e-9 * scale,
                "draw {draw}: engine {got} vs closed form {expect} (k = {k})"
            );
        }
        assert!(
            residual <= 1e-9 * h_ave.frobenius_norm().max(scale),
            "draw {draw}: residual {residual}"
        );
    }
}

#[test]
fn liquid_closed_forms_match_engine_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for draw in 0..100 {
        let delta_hz = rng.gen_range(80.0..600.0);
        let j_hh = rng.gen_range(0.5..20.0);
        let j1 = rng.gen_range(50.0..200.0);
        let j2 = rng.gen_range(0.0..20.0);
        let system = SpinSystem::builder()
            .proton("H1")
            .proton("H2")
            .carbon13("C")
            .shift_hz("H1", delta_hz / 2.0)
            .shift_hz("H2", -delta_hz / 2.0)
            .j_hz("H1", "H2", j_hh)
            .j_hz("H1", "C", j1)
            .j_hz("H2", "C", j2)
            .build()
            .unwrap();
        let params = LiquidParams {
            system: &system,
            i_spin: 2,
            s1: 0,
            s2: 1,
            omega1: hz(rng.gen_range(0.8..1.2) * delta_hz),
            i_offset: 0.0,
        };
        let aht = liquid::liquid_aht_coefficients(&params).unwrap();
        let comps = liquid::liquid_fourier_components(&params).unwrap();
        let h_ave = second_order_average_hamiltonian(&comps, aht.delta).unwrap();
        let i_z = embed_operator(&system, 2, Axis::Z).unwrap();
        let mut h2 = h_ave.clone();
        h2.axpy(C64::new(-(params.omega1 - aht.delta), 0.0), &i_z);
        let mut basis = transfer_basis(&system, false);
        basis.push(
            fictitious_operator(&system, (0, 1), Subspace::ZeroQuantum, FicAxis::Z)
                .unwrap()
                .dot(&embed_operator(&system, 2, Axis::X).unwrap()),
        );
        let (coeffs, residual) = project_coefficients(&h2, &basis).unwrap();
        let expect = [aht.a, aht.b, aht.c, 0.0, aht.d];
        let scale = expect.iter().map(|v| v.abs()).fold(hz(1.0), f64::max);
        for (got, want) in coeffs.iter().zip(expect) {
            assert!(
                (got - want).abs() <= 1e-9 * scale,
                "draw {draw}: engine {got} vs closed form {want}"
            );
        }
        assert!(residual <= 1e-9 * h2.frobenius_norm().max(scale));
    }
}

#[test]
fn negative_shift_difference_switches_to_double_quantum_block() {
    // with the pair shifts mirrored the slow coherences are double-quantum;
    // the engine output must be spanned by the DQ basis with the mapped
    // coefficients, and the ZQ quadratures must vanish
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let system = three_spin_solid(-1000.0);
    for _ in 0..20 {
        let delta_abs = hz(rng.gen_range(500.0..2000.0));
        let k: f64 = rng.gen_range(3.0..60.0);
        let omega_r = k * delta_abs;
        let d_ss = random_fourier(&mut rng, hz(8_000.0));
        let d_s1i = random_fourier(&mut rng, hz(12_000.0));
        let d_s2i = random_fourier(&mut rng, hz(12_000.0));
        let d_minus = d_s1i.sub(&d_s2i);
        let fset = FourierSet::from_entries(vec![
            ((0, 1), d_ss),
            ((0, 2), d_s1i),
            ((1, 2), d_s2i),
        ]);
        let comps = solid_fourier_components(
            &system, 0, 1, 2, &fset, -delta_abs, omega_r, delta_abs,
        )
        .unwrap();
        let h_ave = second_order_average_hamiltonian(&comps, delta_abs).unwrap();
        let basis = transfer_basis(&system, true);
        let (coeffs, residual) = project_coefficients(&h_ave, &basis).unwrap();
        let aht =
            solid_aht_coefficients(&d_ss, &d_minus, delta_abs, k, DeltaSign::Negative).unwrap();
        let expect = aht.transfer_basis_coefficients();
        let scale = expect.iter().map(|v| v.abs()).fold(hz(1.0), f64::max);
        for (got, want) in coeffs.iter().zip(expect) {
            assert!(
                (got - want).abs() <= 1e-9 * scale,
                "engine {got} vs mapped closed form {want}"
            );
        }
        assert!(residual <= 1e-9 * h_ave.frobenius_norm().max(scale));
    }
}

#[test]
fn zq_operator_properties() {
    let system = three_spin_solid(1000.0);
    let zq_x = zq_dq_operator(&system, (0, 1), 2, ZqDqKind::ZqX).unwrap();
    let zq_y = zq_dq_operator(&system, (0, 1), 2, ZqDqKind::ZqY).unwrap();
    assert!(zq_x.is_hermitian(1e-12));
    assert!(zq_x.trace().norm() < 1e-12);
    // su(2) closure on the transfer block: [ZQx, ZQy] = i (Iz - Sz) P / 2
    let p23 = fictitious_operator(&system, (0, 1), Subspace::ZeroQuantum, FicAxis::Unit).unwrap();
    let s_z = fictitious_operator(&system, (0, 1), Subspace::ZeroQuantum, FicAxis::Z).unwrap();
    let iz_block = embed_operator(&system, 2, Axis::Z).unwrap().dot(&p23);
    let expect = iz_block.sub(&s_z).scale(C64::new(0.0, 0.5));
    assert!(zq_x.commutator(&zq_y).sub(&expect).frobenius_norm() < 1e-12);
}

#[test]
fn zq_block_is_standard_flip_flop() {
    // restricted to the zero-quantum pair subspace tensor the rare spin, the
    // operator is the familiar two-level flip-flop built here from explicit
    // 4x4 matrices as an independent oracle
    let system = three_spin_solid(1000.0);
    let zq_x = zq_dq_operator(&system, (0, 1), 2, ZqDqKind::ZqX).unwrap();
    // full-space basis indices with (s1, s2) in (up,down)/(down,up) and any
    // rare state; bit 0 of the index is the rare spin, bits 2,1 the pair
    let block_states: Vec<usize> = vec![
        0b010, // up down, rare up
        0b011, // up down, rare down
        0b100, // down up, rare up
        0b101, // down up, rare down
    ];
    let mut block = [[C64::new(0.0, 0.0); 4]; 4];
    for (r, &i) in block_states.iter().enumerate() {
        for (c, &j) in block_states.iter().enumerate() {
            block[r][c] = zq_x.matrix()[[i, j]];
        }
    }
    // fictitious-up = pair up/down; ZQx flips (fict up, rare down) with
    // (fict down, rare up): entries (1,2) and (2,1) are 1/2
    for r in 0..4 {
        for c in 0..4 {
            let expect = if (r, c) == (1, 2) || (r, c) == (2, 1) {
                C64::new(0.5, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            assert!(
                (block[r][c] - expect).norm() < 1e-14,
                "block[{r}][{c}] = {}",
                block[r][c]
            );
        }
    }
}

#[test]
fn subspace_confinement_under_full_tilted_hamiltonian() {
    // evolving the anti-longitudinal state under the full tilted Hamiltonian
    // equals evolving under its zero-quantum block alone
    let system = spincp::presets::fig2_system(300.0);
    let params = LiquidParams {
        system: &system,
        i_spin: 2,
        s1: 0,
        s2: 1,
        omega1: hz(288.9),
        i_offset: 0.0,
    };
    let h_full = liquid::tilt_to_rf_frame(
        &liquid::build_liquid_hamiltonian(&params).unwrap(),
        &system,
        2,
    )
    .unwrap();
    let p23 = fictitious_operator(&system, (0, 1), Subspace::ZeroQuantum, FicAxis::Unit).unwrap();
    let h_block = p23.dot(&h_full).dot(&p23);
    let s1z = embed_operator(&system, 0, Axis::Z).unwrap();
    let s2z = embed_operator(&system, 1, Axis::Z).unwrap();
    let rho0 = DeviationState::new(s1z.sub(&s2z)).unwrap();
    let observables = vec![
        Observable::new("Iz", embed_operator(&system, 2, Axis::Z).unwrap()).unwrap(),
        Observable::new("S1z", s1z).unwrap(),
        Observable::new("S2z", s2z).unwrap(),
    ];
    let grid: Vec<f64> = (0..=60).map(|k| 0.3 * k as f64 / 60.0).collect();
    let step = 1.0 / (100.0 * 300.0);
    let a = evolve_piecewise(|_| h_full.clone(), &rho0, 0.3, step, &observables, &grid).unwrap();
    let b = evolve_piecewise(|_| h_block.clone(), &rho0, 0.3, step, &observables, &grid).unwrap();
    for (name, _) in &a.channels {
        for (x, y) in a
            .channel(name)
            .unwrap()
            .iter()
            .zip(b.channel(name).unwrap())
        {
            assert!((x - y).abs() < 1e-8, "channel {name}: {x} vs {y}");
        }
    }
}

#[test]
fn mas_sampler_conserves_purity_and_total_z() {
    // one crystallite, worst-case-ish orientation, full spin-lock run
    let system = three_spin_solid(1000.0);
    let orientation = CrystalliteOrientation::from_degrees(30.0, 60.0, 20.0);
    let fset = FourierSet::from_system(&system, &orientation).unwrap();
    let mas = spincp::solid::MasHamiltonian::new(&system, &fset, hz(1000.0), 0.0, hz(40_000.0))
        .unwrap();
    let s1z = embed_operator(&system, 0, Axis::Z).unwrap();
    let s2z = embed_operator(&system, 1, Axis::Z).unwrap();
    let rho0 = DeviationState::new(s1z.sub(&s2z).scale_re(4.0)).unwrap();
    let sum_z = Observable::new("sumSz", s1z.add(&s2z)).unwrap();
    let grid: Vec<f64> = (0..=40).map(|k| 2.0e-3 * k as f64 / 40.0).collect();
    let ts = evolve_piecewise(
        |t| mas.at(t),
        &rho0,
        2.0e-3,
        125.0e-9,
        std::slice::from_ref(&sum_z),
        &grid,
    )
    .unwrap();
    let channel = ts.channel("sumSz").unwrap();
    for v in channel {
        assert!((v - channel[0]).abs() <= 1e-8, "total z drifted: {v}");
    }
}
