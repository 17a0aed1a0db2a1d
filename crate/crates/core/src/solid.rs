//! Magic-angle-spinning Hamiltonians with time-periodic dipolar couplings,
//! crystallite-frame geometry, the Fourier decomposition of the tilted
//! interaction-frame Hamiltonian, closed-form second-order coefficients of its
//! average, and the resulting effective-rotation trajectory.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::constants::{HBAR, MU0_OVER_4PI, TAU};
use crate::magnus::MagnusError;
use crate::operator::Operator;
use crate::propagate::TimeSeries;
use crate::spin::{
    embed_operator, fictitious_operator, Axis, FicAxis, Species, SpinError, SpinSystem, Subspace,
};

#[derive(Debug, Error)]
pub enum SolidError {
    #[error("internuclear distance must be positive, got {0}")]
    BadDistance(f64),
    #[error("spin {0} has no coordinates")]
    MissingGeometry(usize),
    #[error("spins {0} and {1} have coincident coordinates")]
    CoincidentCoordinates(usize, usize),
    #[error("no Fourier data for pair ({0}, {1})")]
    MissingPairData(usize, usize),
    #[error("shift difference of the designated pair must be nonzero")]
    DeltaZero,
    #[error(
        "k = omega_R/Delta = {0:.6} sits at a rotational-resonance degeneracy \
         (|k| within 1e-6 of 1 or 2, the onset of HORROR-like first-order recoupling); \
         the second-order coefficients are singular there"
    )]
    DegenerateK(f64),
    #[error("closed-form coefficient has spurious imaginary part ({0:.3e} relative)")]
    NotReal(f64),
    #[error("designated subsystem must be exactly three spins (S1, S2, I)")]
    NotThreeSpin,
    #[error("system must contain exactly one rare-I spin")]
    RareSpinCount,
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Magnus(#[from] MagnusError),
}

/// Sign of the designated-pair shift difference: the transfer Hamiltonian is
/// zero-quantum for positive differences and double-quantum for negative
/// ones, flipping the sign of the transferred rare-spin signal.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DeltaSign {
    Positive,
    Negative,
}

/// Dipolar coupling constant b = -mu0 gamma_i gamma_j hbar / (4 pi r^3) in
/// rad/s, for gyromagnetic ratios in rad s^-1 T^-1 and r in Angstrom.
pub fn dipolar_constant(gamma_i: f64, gamma_j: f64, r_angstrom: f64) -> Result<f64, SolidError> {
    if !(r_angstrom > 0.0) {
        return Err(SolidError::BadDistance(r_angstrom));
    }
    let r = r_angstrom * 1e-10;
    Ok(-MU0_OVER_4PI * gamma_i * gamma_j * HBAR / (r * r * r))
}

/// Crystallite orientation as Euler angles (radians) of the molecular frame
/// with respect to the rotor-fixed frame, composed as Rz(alpha) Ry(beta)
/// Rz(gamma).
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CrystalliteOrientation {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl CrystalliteOrientation {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn from_degrees(alpha: f64, beta: f64, gamma: f64) -> Self {
        let d = std::f64::consts::PI / 180.0;
        Self::new(alpha * d, beta * d, gamma * d)
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// Apply the rotation to a molecular-frame vector, yielding rotor-frame
    /// components.
    pub fn rotate(&self, v: [f64; 3]) -> [f64; 3] {
        let rz = |a: f64, v: [f64; 3]| {
            let (s, c) = a.sin_cos();
            [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]]
        };
        let ry = |b: f64, v: [f64; 3]| {
            let (s, c) = b.sin_cos();
            [c * v[0] + s * v[2], v[1], -s * v[0] + c * v[2]]
        };
        rz(self.alpha, ry(self.beta, rz(self.gamma, v)))
    }
}

/// Polar and azimuthal angles of a pair's internuclear vector about the rotor
/// axis, for a given crystallite orientation.
pub fn pair_rotor_angles(
    system: &SpinSystem,
    pair: (usize, usize),
    orientation: &CrystalliteOrientation,
) -> Result<(f64, f64), SolidError> {
    let pa = system
        .position(pair.0)
        .ok_or(SolidError::MissingGeometry(pair.0))?;
    let pb = system
        .position(pair.1)
        .ok_or(SolidError::MissingGeometry(pair.1))?;
    let d = [pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2]];
    let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if r == 0.0 {
        return Err(SolidError::CoincidentCoordinates(pair.0, pair.1));
    }
    let u = orientation.rotate([d[0] / r, d[1] / r, d[2] / r]);
    let beta_p = u[2].clamp(-1.0, 1.0).acos();
    let gamma_p = u[1].atan2(u[0]).rem_euclid(TAU);
    Ok((beta_p, gamma_p))
}

/// Fourier coefficients d^(n), n in {+-1, +-2}, of one pair's MAS-modulated
/// dipolar coupling (d^(0) = 0 at the magic angle). Negative orders follow by
/// conjugation, so the time-domain coupling is real.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PairFourier {
    pub d1: C64,
    pub d2: C64,
}

impl PairFourier {
    pub fn zero() -> Self {
        Self {
            d1: C64::new(0.0, 0.0),
            d2: C64::new(0.0, 0.0),
        }
    }

    pub fn coeff(&self, n: i32) -> C64 {
        match n {
            1 => self.d1,
            2 => self.d2,
            -1 => self.d1.conj(),
            -2 => self.d2.conj(),
            _ => C64::new(0.0, 0.0),
        }
    }

    /// Real time-domain coupling sum_n d^(n) exp(i n w_R t).
    pub fn at(&self, omega_r: f64, t: f64) -> f64 {
        let e1 = C64::from_polar(1.0, omega_r * t);
        let e2 = C64::from_polar(1.0, 2.0 * omega_r * t);
        2.0 * (self.d1 * e1).re + 2.0 * (self.d2 * e2).re
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            d1: self.d1 - rhs.d1,
            d2: self.d2 - rhs.d2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.d1.norm() == 0.0 && self.d2.norm() == 0.0
    }
}

/// MAS Fourier coefficients of a dipolar coupling b at pair angles
/// (beta_p, gamma_p) in the rotor frame:
/// d^(+-1) = -(b / 2 sqrt 2) sin(2 beta_p) exp(+-i gamma_p),
/// d^(+-2) =  (b / 4) sin^2(beta_p) exp(+-2 i gamma_p).
pub fn mas_fourier_coefficients(b: f64, beta_p: f64, gamma_p: f64) -> PairFourier {
    let a1 = -b / (2.0 * std::f64::consts::SQRT_2) * (2.0 * beta_p).sin();
    let a2 = b / 4.0 * beta_p.sin().powi(2);
    PairFourier {
        d1: C64::from_polar(1.0, gamma_p) * a1,
        d2: C64::from_polar(1.0, 2.0 * gamma_p) * a2,
    }
}

/// Per-pair MAS Fourier coefficients for every dipolar-coupled pair of a
/// system at one crystallite orientation.
#[derive(Clone, Debug)]
pub struct FourierSet {
    entries: Vec<((usize, usize), PairFourier)>,
}

impl FourierSet {
    /// Build from system geometry. Pairs without coordinates but with an
    /// explicit dipolar constant are modeled with their internuclear axis
    /// along the molecular z-axis (collinear-chain model).
    pub fn from_system(
        system: &SpinSystem,
        orientation: &CrystalliteOrientation,
    ) -> Result<Self, SolidError> {
        let mut entries = Vec::new();
        for (a, b, bc) in system.dipolar_pairs() {
            let (beta_p, gamma_p) =
                if system.position(a).is_some() && system.position(b).is_some() {
                    pair_rotor_angles(system, (a, b), orientation)?
                } else {
                    let u = orientation.rotate([0.0, 0.0, 1.0]);
                    (u[2].clamp(-1.0, 1.0).acos(), u[1].atan2(u[0]).rem_euclid(TAU))
                };
            entries.push(((a.min(b), a.max(b)), mas_fourier_coefficients(bc, beta_p, gamma_p)));
        }
        Ok(Self { entries })
    }

    pub fn from_entries(entries: Vec<((usize, usize), PairFourier)>) -> Self {
        Self {
            entries: entries
                .into_iter()
                .map(|((a, b), f)| ((a.min(b), a.max(b)), f))
                .collect(),
        }
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&PairFourier> {
        let key = (a.min(b), a.max(b));
        self.entries.iter().find(|(k, _)| *k == key).map(|(_, f)| f)
    }

    pub fn entries(&self) -> &[((usize, usize), PairFourier)] {
        &self.entries
    }
}

/// Precomputed MAS Hamiltonian sampler: static shift/offset part, the RF
/// operator, and one coupling template per dipolar pair.
pub struct MasHamiltonian {
    static_part: Operator,
    rf_op: Operator,
    templates: Vec<(PairFourier, Operator)>,
    pub omega_r: f64,
    pub omega1: f64,
}

impl MasHamiltonian {
    pub fn new(
        system: &SpinSystem,
        fset: &FourierSet,
        omega1: f64,
        i_offset: f64,
        omega_r: f64,
    ) -> Result<Self, SolidError> {
        let i_spin = system.single_rare().ok_or(SolidError::RareSpinCount)?;
        let dim = system.dim();
        let mut static_part = Operator::zeros(dim);
        for s in 0..system.n_spins() {
            let w = system.shift(s) + if s == i_spin { i_offset } else { 0.0 };
            if w != 0.0 {
                static_part.axpy(C64::new(w, 0.0), &embed_operator(system, s, Axis::Z)?);
            }
        }
        let rf_op = embed_operator(system, i_spin, Axis::X)?;
        let mut templates = Vec::new();
        for (a, b, _) in system.dipolar_pairs() {
            let f = *fset.get(a, b).ok_or(SolidError::MissingPairData(a, b))?;
            let both_abundant = system.spin(a).species == Species::AbundantS
                && system.spin(b).species == Species::AbundantS;
            let template = if both_abundant {
                // 2 Sa_z Sb_z - 1/2 (Sa+ Sb- + Sa- Sb+)
                let zz = embed_operator(system, a, Axis::Z)?
                    .dot(&embed_operator(system, b, Axis::Z)?);
                let ff = embed_operator(system, a, Axis::Plus)?
                    .dot(&embed_operator(system, b, Axis::Minus)?)
                    .add(
                        &embed_operator(system, a, Axis::Minus)?
                            .dot(&embed_operator(system, b, Axis::Plus)?),
                    );
                zz.scale_re(2.0).sub(&ff.scale_re(0.5))
            } else {
                // 2 S_z I_z (heteronuclear secular form)
                let (s, i) = if system.spin(a).species == Species::AbundantS {
                    (a, b)
                } else {
                    (b, a)
                };
                embed_operator(system, s, Axis::Z)?
                    .dot(&embed_operator(system, i, Axis::Z)?)
                    .scale_re(2.0)
            };
            templates.push((f, template));
        }
        Ok(Self {
            static_part,
            rf_op,
            templates,
            omega_r,
            omega1,
        })
    }

    pub fn at(&self, t: f64) -> Operator {
        self.at_scaled(t, 1.0)
    }

    /// Sample with the RF amplitude scaled (inhomogeneity member or ramp).
    pub fn at_scaled(&self, t: f64, rf_scale: f64) -> Operator {
        let mut h = self.static_part.clone();
        h.axpy(C64::new(self.omega1 * rf_scale, 0.0), &self.rf_op);
        for (f, template) in &self.templates {
            let d = f.at(self.omega_r, t);
            if d != 0.0 {
                h.axpy(C64::new(d, 0.0), template);
            }
        }
        h
    }
}

/// One-shot sampler matching the precomputed path.
pub fn sample_mas_hamiltonian(
    system: &SpinSystem,
    fset: &FourierSet,
    omega1: f64,
    i_offset: f64,
    omega_r: f64,
    t: f64,
) -> Result<Operator, SolidError> {
    Ok(MasHamiltonian::new(system, fset, omega1, i_offset, omega_r)?.at(t))
}

/// Fourier components of the tilted interaction-frame three-spin Hamiltonian
/// on the base frequency |Delta|: orders p = n k +- 1 for n in {+-1, +-2}
/// with k = omega_R / |Delta|, plus the p = 0 residual (omega1 - |Delta|) Iz.
///
/// For a negative shift difference the raising/lowering pairing of the
/// fictitious pair operators swaps (the slow coherences are double-quantum),
/// which is what flips the sign of the transferred signal.
pub fn solid_fourier_components(
    system: &SpinSystem,
    s1: usize,
    s2: usize,
    i_spin: usize,
    fset: &FourierSet,
    delta: f64,
    omega_r: f64,
    omega1: f64,
) -> Result<Vec<(f64, Operator)>, SolidError> {
    if system.n_spins() != 3 {
        return Err(SolidError::NotThreeSpin);
    }
    if delta == 0.0 {
        return Err(SolidError::DeltaZero);
    }
    let base = delta.abs();
    let k = omega_r / base;
    let d_ss = *fset.get(s1, s2).ok_or(SolidError::MissingPairData(s1, s2))?;
    let d_s1i = *fset
        .get(s1, i_spin)
        .ok_or(SolidError::MissingPairData(s1, i_spin))?;
    let d_s2i = *fset
        .get(s2, i_spin)
        .ok_or(SolidError::MissingPairData(s2, i_spin))?;
    let d_minus = d_s1i.sub(&d_s2i);

    let pair = (s1, s2);
    let s_plus = fictitious_operator(system, pair, Subspace::ZeroQuantum, FicAxis::Plus)?;
    let s_minus = fictitious_operator(system, pair, Subspace::ZeroQuantum, FicAxis::Minus)?;
    let s_z = fictitious_operator(system, pair, Subspace::ZeroQuantum, FicAxis::Z)?;
    let i_plus = embed_operator(system, i_spin, Axis::Plus)?;
    let i_minus = embed_operator(system, i_spin, Axis::Minus)?;
    let i_z = embed_operator(system, i_spin, Axis::Z)?;
    let sz_i_plus = s_z.dot(&i_plus);
    let sz_i_minus = s_z.dot(&i_minus);

    let mut comps: Vec<(f64, Operator)> = Vec::with_capacity(9);
    comps.push((0.0, i_z.scale_re(omega1 - base)));
    for n in [-2i32, -1, 1, 2] {
        let d_n = d_ss.coeff(n);
        let dm_n = d_minus.coeff(n);
        // raising sideband p = n k + 1
        let (s_raise, s_lower) = match delta_sign_of(delta) {
            DeltaSign::Positive => (&s_plus, &s_minus),
            DeltaSign::Negative => (&s_minus, &s_plus),
        };
        let mut h_raise = s_raise.scale(C64::new(-0.5, 0.0) * d_n);
        h_raise.axpy(-dm_n, &sz_i_plus);
        comps.push((n as f64 * k + 1.0, h_raise));
        // lowering sideband p = n k - 1
        let mut h_lower = s_lower.scale(C64::new(-0.5, 0.0) * d_n);
        h_lower.axpy(-dm_n, &sz_i_minus);
        comps.push((n as f64 * k - 1.0, h_lower));
    }
    Ok(comps)
}

pub fn delta_sign_of(delta: f64) -> DeltaSign {
    if delta >= 0.0 {
        DeltaSign::Positive
    } else {
        DeltaSign::Negative
    }
}

/// Closed-form second-order coefficients of the solid transfer Hamiltonian
/// and the derived effective-rotation parameters.
#[derive(Clone, Debug)]
pub struct SolidAht {
    /// omega_R / |Delta|; need not be an integer.
    pub k: f64,
    /// Coefficients of (Iz + Sz), (Iz - Sz), ZQx, ZQy for the positive-sign
    /// (mirrored when necessary) problem, rad/s.
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    pub c_eff: f64,
    pub chi: f64,
    pub omega_eff: f64,
    pub phi: f64,
    pub delta_sign: DeltaSign,
}

impl SolidAht {
    /// Coefficients of the transfer Hamiltonian in the basis appropriate to
    /// the shift-difference sign: (Iz + Sz, Iz - Sz, ZQx, ZQy) for positive,
    /// (Iz + Sz, Iz - Sz, DQx, DQy) for negative.
    pub fn transfer_basis_coefficients(&self) -> [f64; 4] {
        match self.delta_sign {
            DeltaSign::Positive => [self.a, self.b, self.c1, self.c2],
            DeltaSign::Negative => [self.b, self.a, -self.c1, -self.c2],
        }
    }

    /// Sign carried by the transferred rare-spin transverse channel.
    pub fn ix_sign(&self) -> f64 {
        match self.delta_sign {
            DeltaSign::Positive => 1.0,
            DeltaSign::Negative => -1.0,
        }
    }
}

fn require_real(z: C64) -> Result<f64, SolidError> {
    let scale = z.norm().max(1.0);
    if z.im.abs() > 1e-10 * scale {
        return Err(SolidError::NotReal(z.im.abs() / scale));
    }
    Ok(z.re)
}

/// Second-order coefficients from the pair Fourier entries. `delta` is the
/// magnitude of the designated-pair shift difference (rad/s) and
/// k = omega_R / delta; `d_minus` is the Fourier-term-by-term difference of
/// the two heteronuclear couplings in designated order.
pub fn solid_aht_coefficients(
    d_ss: &PairFourier,
    d_minus: &PairFourier,
    delta: f64,
    k: f64,
    delta_sign: DeltaSign,
) -> Result<SolidAht, SolidError> {
    if delta <= 0.0 || !delta.is_finite() {
        return Err(SolidError::DeltaZero);
    }
    if (k.abs() - 1.0).abs() < 1e-6 || (k.abs() - 2.0).abs() < 1e-6 {
        return Err(SolidError::DegenerateK(k));
    }
    let den1 = 1.0 - k * k;
    let den2 = 1.0 - 4.0 * k * k;
    let dd = |n: i32| d_ss.coeff(-n) * d_ss.coeff(n);
    let mm = |n: i32| d_minus.coeff(-n) * d_minus.coeff(n);
    let cross_sym = |n: i32| d_minus.coeff(-n) * d_ss.coeff(n) + d_minus.coeff(n) * d_ss.coeff(-n);
    let cross_asym = |n: i32| d_minus.coeff(-n) * d_ss.coeff(n) - d_minus.coeff(n) * d_ss.coeff(-n);

    let a = require_real((dd(1) / den1 + dd(2) / den2 + mm(1) / den1 + mm(2) / den2) / (2.0 * delta))?;
    let b = require_real(-(dd(1) / den1 + dd(2) / den2 - mm(1) / den1 - mm(2) / den2) / (2.0 * delta))?;
    let c1 = require_real(-(cross_sym(1) / den1 + cross_sym(2) / den2) / delta)?;
    let c2 = require_real(
        C64::new(0.0, -k) * (cross_asym(1) / den1 + 2.0 * cross_asym(2) / den2) / delta,
    )?;

    let c_eff = c1.hypot(c2);
    let chi = c2.atan2(c1);
    let omega_eff = (2.0 * b).hypot(c_eff);
    let phi = c_eff.atan2(2.0 * b);
    Ok(SolidAht {
        k,
        a,
        b,
        c1,
        c2,
        c_eff,
        chi,
        omega_eff,
        phi,
        delta_sign,
    })
}

/// Analytic transfer trajectory of the effective-rotation Hamiltonian:
/// the rare-spin transverse channel grows as (sign) (p/2) sin^2(phi)
/// (1 - cos(omega_eff t)) while the anti-longitudinal channel loses the same
/// fraction; coherent terms invisible under decoupled detection are omitted.
pub fn solid_forward_analytic(
    aht: &SolidAht,
    tau_grid: &[f64],
    initial_amplitude: f64,
) -> TimeSeries {
    let s2 = aht.phi.sin().powi(2);
    let sign = aht.ix_sign();
    let p = initial_amplitude;
    let mut ix = Vec::with_capacity(tau_grid.len());
    let mut s_diff = Vec::with_capacity(tau_grid.len());
    for &t in tau_grid {
        let transferred = 0.5 * s2 * (1.0 - (aht.omega_eff * t).cos());
        ix.push(sign * p * transferred);
        s_diff.push(p * (1.0 - transferred));
    }
    let s1z = s_diff.clone();
    let s2z: Vec<f64> = s_diff.iter().map(|v| -v).collect();
    TimeSeries {
        times: tau_grid.to_vec(),
        channels: vec![
            ("Ix".into(), ix),
            ("S1z-S2z".into(), s_diff),
            ("S1z".into(), s1z),
            ("S2z".into(), s2z),
        ],
        metadata: Default::default(),
    }
}

/// Static-solid RF matching value
/// omega1_opt = Delta + d_SS^2/(2 Delta) - (D_S1I - D_S2I)^2/(2 Delta).
/// Advisory only: the static second-order analysis rarely applies to rigid
/// proton networks, which is why the MAS route exists.
pub fn static_matching_rf(
    delta: f64,
    d_ss: f64,
    d_s1i: f64,
    d_s2i: f64,
) -> Result<f64, SolidError> {
    if delta == 0.0 {
        return Err(SolidError::DeltaZero);
    }
    let dm = d_s1i - d_s2i;
    Ok(delta + d_ss * d_ss / (2.0 * delta) - dm * dm / (2.0 * delta))
}
