//! Spin systems and product-space operator construction: single-spin
//! embeddings, fictitious two-level operators on a designated abundant-spin
//! pair, and the zero/double-quantum operators coupling that pair to the rare
//! spin.
//!
//! Basis conventions: spin 0 is the leftmost tensor factor; each spin-1/2 is
//! ordered (up, down); for a pair (s1, s2) the four product states are
//! numbered 1 = up/up, 2 = up/down, 3 = down/up, 4 = down/down, so the
//! zero-quantum subspace is spanned by states 2 and 3 and the double-quantum
//! subspace by 1 and 4.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::constants;
use crate::operator::{kron, Operator};

pub const MAX_SPINS: usize = 8;

#[derive(Debug, Error)]
pub enum SpinError {
    #[error("spin index {0} out of range (system has {1} spins)")]
    IndexOutOfRange(usize, usize),
    #[error("pair indices must be distinct, got ({0}, {1})")]
    IdenticalIndices(usize, usize),
    #[error("spin {0} must be an abundant-S spin")]
    NotAbundant(usize),
    #[error("spin {0} must be the rare-I spin")]
    NotRare(usize),
    #[error("indices ({0}, {1}, {2}) must not overlap")]
    OverlappingIndices(usize, usize, usize),
}

#[derive(Debug, Error)]
pub enum SpinSystemError {
    #[error("spin count {0} outside 1..={MAX_SPINS} (dimension guard 2^N <= 256)")]
    SpinCount(usize),
    #[error("duplicate spin label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown spin label {0:?}")]
    UnknownLabel(String),
    #[error("coupling ({0}, {1}) references a spin pair with identical members")]
    SelfCoupling(usize, usize),
    #[error(
        "explicit dipolar constant for pair ({0}, {1}) is {2:.6e} rad/s but the \
         geometry-derived value is {3:.6e} rad/s"
    )]
    GeometryDipolarMismatch(usize, usize, f64, f64),
    #[error("non-finite parameter for {0}")]
    NonFinite(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Species {
    AbundantS,
    RareI,
}

#[derive(Clone, Debug)]
pub struct Spin {
    pub label: String,
    pub species: Species,
    /// Gyromagnetic ratio, rad s^-1 T^-1.
    pub gamma: f64,
}

/// An immutable spin system: labels, species, isotropic shifts, J and dipolar
/// coupling networks, and optional geometry.
#[derive(Clone, Debug)]
pub struct SpinSystem {
    spins: Vec<Spin>,
    /// Isotropic shifts, rad/s.
    shifts: Vec<f64>,
    /// Symmetric J map, rad/s, keyed by (min, max).
    j: BTreeMap<(usize, usize), f64>,
    /// Symmetric dipolar-constant map, rad/s, keyed by (min, max).
    dipolar: BTreeMap<(usize, usize), f64>,
    /// Optional coordinates, Angstrom.
    positions: Vec<Option<[f64; 3]>>,
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl SpinSystem {
    pub fn builder() -> SpinSystemBuilder {
        SpinSystemBuilder::default()
    }

    pub fn n_spins(&self) -> usize {
        self.spins.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.spins.len()
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn spin(&self, idx: usize) -> &Spin {
        &self.spins[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.spins.iter().position(|s| s.label == label)
    }

    /// Shift in rad/s.
    pub fn shift(&self, idx: usize) -> f64 {
        self.shifts[idx]
    }

    /// J coupling in rad/s (0 when absent).
    pub fn j_coupling(&self, a: usize, b: usize) -> f64 {
        *self.j.get(&pair_key(a, b)).unwrap_or(&0.0)
    }

    pub fn j_pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.j.iter().map(|(&(a, b), &v)| (a, b, v))
    }

    /// Dipolar constant in rad/s: the explicit entry when present, otherwise
    /// derived from geometry, otherwise 0.
    pub fn dipolar_constant(&self, a: usize, b: usize) -> f64 {
        if let Some(&b_ab) = self.dipolar.get(&pair_key(a, b)) {
            return b_ab;
        }
        self.dipolar_from_geometry(a, b).unwrap_or(0.0)
    }

    /// All pairs carrying a nonzero dipolar constant (explicit or derived).
    pub fn dipolar_pairs(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n_spins();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let v = self.dipolar_constant(a, b);
                if v != 0.0 {
                    out.push((a, b, v));
                }
            }
        }
        out
    }

    fn dipolar_from_geometry(&self, a: usize, b: usize) -> Option<f64> {
        let (pa, pb) = (self.positions[a]?, self.positions[b]?);
        let r = distance(pa, pb);
        crate::solid::dipolar_constant(self.spins[a].gamma, self.spins[b].gamma, r).ok()
    }

    pub fn position(&self, idx: usize) -> Option<[f64; 3]> {
        self.positions[idx]
    }

    pub fn abundant_indices(&self) -> Vec<usize> {
        (0..self.n_spins())
            .filter(|&i| self.spins[i].species == Species::AbundantS)
            .collect()
    }

    pub fn rare_indices(&self) -> Vec<usize> {
        (0..self.n_spins())
            .filter(|&i| self.spins[i].species == Species::RareI)
            .collect()
    }

    /// The unique rare-I spin, when there is exactly one.
    pub fn single_rare(&self) -> Option<usize> {
        let rare = self.rare_indices();
        (rare.len() == 1).then(|| rare[0])
    }
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

#[derive(Default)]
pub struct SpinSystemBuilder {
    spins: Vec<Spin>,
    positions: Vec<Option<[f64; 3]>>,
    pending_positions: Vec<(String, [f64; 3])>,
    shifts_hz: Vec<(String, f64)>,
    j_hz: Vec<(String, String, f64)>,
    dipolar_hz: Vec<(String, String, f64)>,
}

impl SpinSystemBuilder {
    pub fn spin(mut self, label: &str, species: Species, gamma: f64) -> Self {
        self.spins.push(Spin {
            label: label.to_string(),
            species,
            gamma,
        });
        self.positions.push(None);
        self
    }

    pub fn proton(self, label: &str) -> Self {
        self.spin(label, Species::AbundantS, constants::GAMMA_1H)
    }

    pub fn carbon13(self, label: &str) -> Self {
        self.spin(label, Species::RareI, constants::GAMMA_13C)
    }

    /// Attach coordinates (Angstrom) to the most recently added spin.
    pub fn at(mut self, xyz: [f64; 3]) -> Self {
        if let Some(last) = self.positions.last_mut() {
            *last = Some(xyz);
        }
        self
    }

    /// Attach coordinates (Angstrom) by label; resolved at build time.
    pub fn position(mut self, label: &str, xyz: [f64; 3]) -> Self {
        self.pending_positions.push((label.to_string(), xyz));
        self
    }

    pub fn shift_hz(mut self, label: &str, f: f64) -> Self {
        self.shifts_hz.push((label.to_string(), f));
        self
    }

    pub fn j_hz(mut self, a: &str, b: &str, f: f64) -> Self {
        self.j_hz.push((a.to_string(), b.to_string(), f));
        self
    }

    pub fn dipolar_hz(mut self, a: &str, b: &str, f: f64) -> Self {
        self.dipolar_hz.push((a.to_string(), b.to_string(), f));
        self
    }

    pub fn build(self) -> Result<SpinSystem, SpinSystemError> {
        let n = self.spins.len();
        if n == 0 || n > MAX_SPINS {
            return Err(SpinSystemError::SpinCount(n));
        }
        let mut labels = std::collections::BTreeSet::new();
        for s in &self.spins {
            if !labels.insert(s.label.clone()) {
                return Err(SpinSystemError::DuplicateLabel(s.label.clone()));
            }
            if !s.gamma.is_finite() {
                return Err(SpinSystemError::NonFinite(format!("gamma of {}", s.label)));
            }
        }
        let mut sys = SpinSystem {
            spins: self.spins,
            shifts: vec![0.0; n],
            j: BTreeMap::new(),
            dipolar: BTreeMap::new(),
            positions: self.positions,
        };
        for (label, xyz) in &self.pending_positions {
            let i = sys
                .index_of(label)
                .ok_or_else(|| SpinSystemError::UnknownLabel(label.clone()))?;
            sys.positions[i] = Some(*xyz);
        }
        for (label, f) in &self.shifts_hz {
            if !f.is_finite() {
                return Err(SpinSystemError::NonFinite(format!("shift of {label}")));
            }
            let i = sys
                .index_of(label)
                .ok_or_else(|| SpinSystemError::UnknownLabel(label.clone()))?;
            sys.shifts[i] = constants::hz(*f);
        }
        for (a, b, f) in &self.j_hz {
            let (i, j) = resolve_pair(&sys, a, b)?;
            if !f.is_finite() {
                return Err(SpinSystemError::NonFinite(format!("J({a},{b})")));
            }
            sys.j.insert(pair_key(i, j), constants::hz(*f));
        }
        for (a, b, f) in &self.dipolar_hz {
            let (i, j) = resolve_pair(&sys, a, b)?;
            if !f.is_finite() {
                return Err(SpinSystemError::NonFinite(format!("dipolar({a},{b})")));
            }
            let explicit = constants::hz(*f);
            if let Some(derived) = sys.dipolar_from_geometry(i, j) {
                let scale = derived.abs().max(1.0);
                if (explicit - derived).abs() > 1e-6 * scale {
                    return Err(SpinSystemError::GeometryDipolarMismatch(
                        i, j, explicit, derived,
                    ));
                }
            }
            sys.dipolar.insert(pair_key(i, j), explicit);
        }
        Ok(sys)
    }
}

fn resolve_pair(
    sys: &SpinSystem,
    a: &str,
    b: &str,
) -> Result<(usize, usize), SpinSystemError> {
    let i = sys
        .index_of(a)
        .ok_or_else(|| SpinSystemError::UnknownLabel(a.to_string()))?;
    let j = sys
        .index_of(b)
        .ok_or_else(|| SpinSystemError::UnknownLabel(b.to_string()))?;
    if i == j {
        return Err(SpinSystemError::SelfCoupling(i, j));
    }
    Ok((i, j))
}

/// Cartesian or ladder axis of a single-spin operator.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

fn single_spin_matrix(axis: Axis) -> Array2<C64> {
    let z = |re: f64, im: f64| C64::new(re, im);
    match axis {
        Axis::X => ndarray::array![[z(0.0, 0.0), z(0.5, 0.0)], [z(0.5, 0.0), z(0.0, 0.0)]],
        Axis::Y => ndarray::array![[z(0.0, 0.0), z(0.0, -0.5)], [z(0.0, 0.5), z(0.0, 0.0)]],
        Axis::Z => ndarray::array![[z(0.5, 0.0), z(0.0, 0.0)], [z(0.0, 0.0), z(-0.5, 0.0)]],
        Axis::Plus => ndarray::array![[z(0.0, 0.0), z(1.0, 0.0)], [z(0.0, 0.0), z(0.0, 0.0)]],
        Axis::Minus => ndarray::array![[z(0.0, 0.0), z(0.0, 0.0)], [z(1.0, 0.0), z(0.0, 0.0)]],
    }
}

/// Single-spin operator tensored with identities on all other spins.
pub fn embed_operator(
    system: &SpinSystem,
    spin: usize,
    axis: Axis,
) -> Result<Operator, SpinError> {
    let n = system.n_spins();
    if spin >= n {
        return Err(SpinError::IndexOutOfRange(spin, n));
    }
    let single = Operator::new(single_spin_matrix(axis)).expect("2x2");
    let mut out = Operator::identity(1);
    for k in 0..n {
        let factor = if k == spin {
            single.clone()
        } else {
            Operator::identity(2)
        };
        out = kron(&out, &factor);
    }
    Ok(out)
}

/// Two-level subspace of an abundant-spin pair: states (up/down, down/up)
/// for the zero-quantum subspace, (up/up, down/down) for the double-quantum
/// one.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Subspace {
    ZeroQuantum,
    DoubleQuantum,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FicAxis {
    X,
    Y,
    Z,
    Plus,
    Minus,
    Unit,
}

/// Fictitious spin-1/2 operator of the named pair subspace, embedded in the
/// full space (identity on all other spins).
pub fn fictitious_operator(
    system: &SpinSystem,
    s_pair: (usize, usize),
    subspace: Subspace,
    axis: FicAxis,
) -> Result<Operator, SpinError> {
    let (s1, s2) = s_pair;
    let n = system.n_spins();
    if s1 >= n {
        return Err(SpinError::IndexOutOfRange(s1, n));
    }
    if s2 >= n {
        return Err(SpinError::IndexOutOfRange(s2, n));
    }
    if s1 == s2 {
        return Err(SpinError::IdenticalIndices(s1, s2));
    }
    for &s in &[s1, s2] {
        if system.spin(s).species != Species::AbundantS {
            return Err(SpinError::NotAbundant(s));
        }
    }
    let e = |spin, ax| embed_operator(system, spin, ax).expect("validated");
    let i_c = C64::new(0.0, 1.0);
    let half = C64::new(0.5, 0.0);
    let op = match subspace {
        Subspace::ZeroQuantum => {
            let plus = e(s1, Axis::Plus).dot(&e(s2, Axis::Minus));
            let minus = e(s1, Axis::Minus).dot(&e(s2, Axis::Plus));
            match axis {
                FicAxis::Plus => plus,
                FicAxis::Minus => minus,
                FicAxis::X => plus.add(&minus).scale(half),
                FicAxis::Y => plus.sub(&minus).scale(half / i_c),
                FicAxis::Z => e(s1, Axis::Z).sub(&e(s2, Axis::Z)).scale(half),
                FicAxis::Unit => {
                    let zz = e(s1, Axis::Z).dot(&e(s2, Axis::Z));
                    Operator::identity(system.dim())
                        .scale(half)
                        .sub(&zz.scale_re(2.0))
                }
            }
        }
        Subspace::DoubleQuantum => {
            let plus = e(s1, Axis::Plus).dot(&e(s2, Axis::Plus));
            let minus = e(s1, Axis::Minus).dot(&e(s2, Axis::Minus));
            match axis {
                FicAxis::Plus => plus,
                FicAxis::Minus => minus,
                FicAxis::X => plus.add(&minus).scale(half),
                FicAxis::Y => plus.sub(&minus).scale(half / i_c),
                FicAxis::Z => e(s1, Axis::Z).add(&e(s2, Axis::Z)).scale(half),
                FicAxis::Unit => {
                    let zz = e(s1, Axis::Z).dot(&e(s2, Axis::Z));
                    Operator::identity(system.dim())
                        .scale(half)
                        .add(&zz.scale_re(2.0))
                }
            }
        }
    };
    Ok(op)
}

/// Quadrature zero/double-quantum operators coupling the rare spin to the
/// fictitious pair subspace.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ZqDqKind {
    ZqX,
    ZqY,
    DqX,
    DqY,
}

pub fn zq_dq_operator(
    system: &SpinSystem,
    s_pair: (usize, usize),
    i_spin: usize,
    kind: ZqDqKind,
) -> Result<Operator, SpinError> {
    let (s1, s2) = s_pair;
    if i_spin >= system.n_spins() {
        return Err(SpinError::IndexOutOfRange(i_spin, system.n_spins()));
    }
    if i_spin == s1 || i_spin == s2 {
        return Err(SpinError::OverlappingIndices(s1, s2, i_spin));
    }
    if system.spin(i_spin).species != Species::RareI {
        return Err(SpinError::NotRare(i_spin));
    }
    let i_plus = embed_operator(system, i_spin, Axis::Plus)?;
    let i_minus = embed_operator(system, i_spin, Axis::Minus)?;
    let s_plus = fictitious_operator(system, s_pair, Subspace::ZeroQuantum, FicAxis::Plus)?;
    let s_minus = fictitious_operator(system, s_pair, Subspace::ZeroQuantum, FicAxis::Minus)?;
    let half = C64::new(0.5, 0.0);
    let i_c = C64::new(0.0, 1.0);
    let op = match kind {
        ZqDqKind::ZqX => i_plus
            .dot(&s_minus)
            .add(&i_minus.dot(&s_plus))
            .scale(half),
        ZqDqKind::ZqY => i_plus
            .dot(&s_minus)
            .sub(&i_minus.dot(&s_plus))
            .scale(half / i_c),
        ZqDqKind::DqX => i_plus
            .dot(&s_plus)
            .add(&i_minus.dot(&s_minus))
            .scale(half),
        ZqDqKind::DqY => i_plus
            .dot(&s_plus)
            .sub(&i_minus.dot(&s_minus))
            .scale(half / i_c),
    };
    Ok(op)
}
