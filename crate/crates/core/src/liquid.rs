//! Liquid-state rotating-frame Hamiltonians, their tilted-frame form and
//! Fourier decomposition over the designated-pair shift difference, the
//! closed-form second-order coefficients with the RF matching condition, and
//! the analytic forward/inverse transfer trajectories at match.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::operator::Operator;
use crate::propagate::TimeSeries;
use crate::spin::{
    embed_operator, fictitious_operator, Axis, FicAxis, Species, SpinError, SpinSystem, Subspace,
};

#[derive(Debug, Error)]
pub enum LiquidError {
    #[error("system must contain exactly one rare-I spin")]
    RareSpinCount,
    #[error("designated i_spin must be the rare-I spin")]
    BadISpin,
    #[error("designated transfer pair must be two distinct abundant-S spins")]
    BadPair,
    #[error("shift difference of the designated pair must be nonzero")]
    DeltaZero,
    #[error(
        "shift difference of the designated pair is negative; swap the pair \
         labels for the averaged-Hamiltonian path (the transferred signal \
         then changes sign)"
    )]
    NegativeDelta,
    #[error(
        "RF amplitude {omega1:.6e} rad/s is away from the matching value \
         {opt:.6e} rad/s; the analytic trajectory only holds at match"
    )]
    RfMismatch { omega1: f64, opt: f64 },
    #[error("analytic paths require on-resonance rare-spin irradiation (i_offset = 0)")]
    OffResonance,
    #[error("designated subsystem must be exactly three spins (S1, S2, I)")]
    NotThreeSpin,
    #[error(transparent)]
    Spin(#[from] SpinError),
}

/// Designated three-spin parameters within a (possibly larger) J-coupled
/// system, plus the rare-spin RF amplitude and offset (rad/s).
#[derive(Clone, Debug)]
pub struct LiquidParams<'a> {
    pub system: &'a SpinSystem,
    pub i_spin: usize,
    pub s1: usize,
    pub s2: usize,
    pub omega1: f64,
    pub i_offset: f64,
}

impl<'a> LiquidParams<'a> {
    pub fn validate(&self) -> Result<(), LiquidError> {
        let rare = self.system.single_rare().ok_or(LiquidError::RareSpinCount)?;
        if self.i_spin != rare {
            return Err(LiquidError::BadISpin);
        }
        if self.s1 == self.s2
            || self.s1 >= self.system.n_spins()
            || self.s2 >= self.system.n_spins()
            || self.system.spin(self.s1).species != Species::AbundantS
            || self.system.spin(self.s2).species != Species::AbundantS
        {
            return Err(LiquidError::BadPair);
        }
        Ok(())
    }

    /// Shift difference of the designated pair, rad/s.
    pub fn delta(&self) -> f64 {
        self.system.shift(self.s1) - self.system.shift(self.s2)
    }

    pub fn sigma(&self) -> f64 {
        self.system.shift(self.s1) + self.system.shift(self.s2)
    }

    pub fn j_ss(&self) -> f64 {
        self.system.j_coupling(self.s1, self.s2)
    }

    pub fn j_minus(&self) -> f64 {
        self.system.j_coupling(self.s1, self.i_spin) - self.system.j_coupling(self.s2, self.i_spin)
    }

    pub fn j_plus(&self) -> f64 {
        self.system.j_coupling(self.s1, self.i_spin) + self.system.j_coupling(self.s2, self.i_spin)
    }
}

/// Rotating-frame Hamiltonian: RF and offset on the rare spin, abundant-spin
/// shifts, the full homonuclear J network with flip-flop terms, and secular
/// heteronuclear J couplings.
pub fn build_liquid_hamiltonian(params: &LiquidParams) -> Result<Operator, LiquidError> {
    params.validate()?;
    let sys = params.system;
    let i = params.i_spin;
    let mut h = embed_operator(sys, i, Axis::X)?.scale_re(params.omega1);
    let w_i = sys.shift(i) + params.i_offset;
    if w_i != 0.0 {
        h.axpy(C64::new(w_i, 0.0), &embed_operator(sys, i, Axis::Z)?);
    }
    for s in sys.abundant_indices() {
        let w = sys.shift(s);
        if w != 0.0 {
            h.axpy(C64::new(w, 0.0), &embed_operator(sys, s, Axis::Z)?);
        }
    }
    for (a, b, j) in sys.j_pairs() {
        if j == 0.0 {
            continue;
        }
        let a_ab = sys.spin(a).species == Species::AbundantS;
        let b_ab = sys.spin(b).species == Species::AbundantS;
        if a_ab && b_ab {
            let zz = embed_operator(sys, a, Axis::Z)?.dot(&embed_operator(sys, b, Axis::Z)?);
            let ff = embed_operator(sys, a, Axis::Plus)?
                .dot(&embed_operator(sys, b, Axis::Minus)?)
                .add(
                    &embed_operator(sys, a, Axis::Minus)?
                        .dot(&embed_operator(sys, b, Axis::Plus)?),
                );
            h.axpy(C64::new(j, 0.0), &zz.add(&ff.scale_re(0.5)));
        } else {
            // heteronuclear: secular z-z form only
            let zz = embed_operator(sys, a, Axis::Z)?.dot(&embed_operator(sys, b, Axis::Z)?);
            h.axpy(C64::new(j, 0.0), &zz);
        }
    }
    Ok(h)
}

/// Rotate into the rare-spin RF frame: exp(+i pi/2 Iy) h exp(-i pi/2 Iy),
/// taking the RF term w1 Ix into w1 Iz and Iz into -Ix.
pub fn tilt_to_rf_frame(
    h: &Operator,
    system: &SpinSystem,
    i_spin: usize,
) -> Result<Operator, LiquidError> {
    let iy = embed_operator(system, i_spin, Axis::Y)?;
    // exp(i theta Iy) = cos(theta/2) + 2 i sin(theta/2) Iy for spin-1/2
    let theta = std::f64::consts::FRAC_PI_2;
    let r = Operator::identity(system.dim())
        .scale_re((theta / 2.0).cos())
        .add(&iy.scale(C64::new(0.0, 2.0 * (theta / 2.0).sin())));
    Ok(r.dot(h).dot(&r.dagger()))
}

/// Fourier components over the base frequency Delta of the tilted
/// interaction-frame three-spin Hamiltonian: only p = 0, +1, -1 are present.
pub fn liquid_fourier_components(
    params: &LiquidParams,
) -> Result<Vec<(f64, Operator)>, LiquidError> {
    params.validate()?;
    if params.system.n_spins() != 3 {
        return Err(LiquidError::NotThreeSpin);
    }
    if params.i_offset != 0.0 {
        return Err(LiquidError::OffResonance);
    }
    let delta = params.delta();
    if delta == 0.0 {
        return Err(LiquidError::DeltaZero);
    }
    if delta < 0.0 {
        return Err(LiquidError::NegativeDelta);
    }
    let sys = params.system;
    let pair = (params.s1, params.s2);
    let i_z = embed_operator(sys, params.i_spin, Axis::Z)?;
    let i_plus = embed_operator(sys, params.i_spin, Axis::Plus)?;
    let i_minus = embed_operator(sys, params.i_spin, Axis::Minus)?;
    let s_plus = fictitious_operator(sys, pair, Subspace::ZeroQuantum, FicAxis::Plus)?;
    let s_minus = fictitious_operator(sys, pair, Subspace::ZeroQuantum, FicAxis::Minus)?;
    let s_z = fictitious_operator(sys, pair, Subspace::ZeroQuantum, FicAxis::Z)?;

    let h0 = i_z.scale_re(params.omega1 - delta);
    let mut h_p1 = s_plus.scale_re(0.5 * params.j_ss());
    h_p1.axpy(C64::new(-0.5 * params.j_minus(), 0.0), &s_z.dot(&i_plus));
    let mut h_m1 = s_minus.scale_re(0.5 * params.j_ss());
    h_m1.axpy(C64::new(-0.5 * params.j_minus(), 0.0), &s_z.dot(&i_minus));
    Ok(vec![(-1.0, h_m1), (0.0, h0), (1.0, h_p1)])
}

/// Closed-form second-order coefficients and the RF matching condition.
#[derive(Clone, Debug)]
pub struct LiquidAht {
    pub sigma: f64,
    pub delta: f64,
    pub j_plus: f64,
    pub j_minus: f64,
    /// Coefficient of (Iz + Sz), rad/s.
    pub a: f64,
    /// Coefficient of (Iz - Sz), rad/s.
    pub b: f64,
    /// Zero-quantum transfer rate, rad/s.
    pub c: f64,
    /// Coefficient of Sz Ix; reported but excluded from the analytic
    /// trajectories, which assume RF at match where it is negligible.
    pub d: f64,
    pub omega1_opt: f64,
}

pub fn liquid_aht_coefficients(params: &LiquidParams) -> Result<LiquidAht, LiquidError> {
    params.validate()?;
    let delta = params.delta();
    if delta == 0.0 {
        return Err(LiquidError::DeltaZero);
    }
    if delta < 0.0 {
        return Err(LiquidError::NegativeDelta);
    }
    let j_ss = params.j_ss();
    let j_minus = params.j_minus();
    let a = (j_minus * j_minus + 4.0 * j_ss * j_ss) / (16.0 * delta);
    let b = (j_minus * j_minus - 4.0 * j_ss * j_ss) / (16.0 * delta);
    let c = j_minus * j_ss / (2.0 * delta);
    let d = -(params.omega1 - delta) * j_minus / delta;
    let omega1_opt = delta + j_ss * j_ss / (2.0 * delta) - j_minus * j_minus / (8.0 * delta);
    Ok(LiquidAht {
        sigma: params.sigma(),
        delta,
        j_plus: params.j_plus(),
        j_minus,
        a,
        b,
        c,
        d,
        omega1_opt,
    })
}

fn matched_aht(params: &LiquidParams) -> Result<LiquidAht, LiquidError> {
    if params.i_offset != 0.0 {
        return Err(LiquidError::OffResonance);
    }
    let aht = liquid_aht_coefficients(params)?;
    if (params.omega1 - aht.omega1_opt).abs() > 1e-3 * aht.delta {
        return Err(LiquidError::RfMismatch {
            omega1: params.omega1,
            opt: aht.omega1_opt,
        });
    }
    Ok(aht)
}

/// Forward transfer at match, anti-longitudinal pair state into rare-spin
/// transverse magnetization: Ix grows as (p/2)(1 - cos C tau) while the
/// anti-longitudinal channel relaxes as (p/2)(1 + cos C tau).
pub fn liquid_forward_analytic(
    params: &LiquidParams,
    tau_grid: &[f64],
    initial_amplitude: f64,
) -> Result<TimeSeries, LiquidError> {
    let aht = matched_aht(params)?;
    let p = initial_amplitude;
    let mut ix = Vec::with_capacity(tau_grid.len());
    let mut s_diff = Vec::with_capacity(tau_grid.len());
    for &t in tau_grid {
        let c = (aht.c * t).cos();
        ix.push(0.5 * p * (1.0 - c));
        s_diff.push(0.5 * p * (1.0 + c));
    }
    let s1z = s_diff.clone();
    let s2z: Vec<f64> = s_diff.iter().map(|v| -v).collect();
    Ok(TimeSeries {
        times: tau_grid.to_vec(),
        channels: vec![
            ("Ix".into(), ix),
            ("S1z-S2z".into(), s_diff),
            ("S1z".into(), s1z),
            ("S2z".into(), s2z),
        ],
        metadata: Default::default(),
    })
}

/// Inverse transfer at match, spin-locked rare-spin magnetization into the
/// anti-longitudinal pair state: the pair channel grows as (p/4)(1 - cos C
/// tau), peaking at half the initial rare-spin amplitude, while Ix decays to
/// (3/4 + cos/4) p.
pub fn liquid_inverse_analytic(
    params: &LiquidParams,
    tau_grid: &[f64],
    initial_amplitude: f64,
) -> Result<TimeSeries, LiquidError> {
    let aht = matched_aht(params)?;
    let p = initial_amplitude;
    let mut ix = Vec::with_capacity(tau_grid.len());
    let mut s_diff = Vec::with_capacity(tau_grid.len());
    for &t in tau_grid {
        let c = (aht.c * t).cos();
        ix.push(p * (0.75 + 0.25 * c));
        s_diff.push(0.25 * p * (1.0 - c));
    }
    let s1z = s_diff.clone();
    let s2z: Vec<f64> = s_diff.iter().map(|v| -v).collect();
    Ok(TimeSeries {
        times: tau_grid.to_vec(),
        channels: vec![
            ("Ix".into(), ix),
            ("S1z-S2z".into(), s_diff),
            ("S1z".into(), s1z),
            ("S2z".into(), s2z),
        ],
        metadata: Default::default(),
    })
}
