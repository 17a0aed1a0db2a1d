//! Generic numeric second-order average-Hamiltonian engine for a
//! time-periodic Hamiltonian written as Fourier components
//! H(t) = sum_p H_p exp(i p w t) with base frequency w.
//!
//! The second-order effective Hamiltonian is
//!
//!   H_ave = H_0 - (1/2) sum_{p != 0} [H_{-p}, H_p] / (p w)
//!               +       sum_{p != 0} [H_0, H_p]    / (p w)
//!
//! Fourier orders p may be any nonzero reals (sideband combinations of two
//! incommensurate frequencies are expressed on the slower base); each
//! component must come with its mirror at -p equal to its adjoint, so the
//! time-domain Hamiltonian is Hermitian.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::operator::Operator;

#[derive(Debug, Error)]
pub enum MagnusError {
    #[error("base frequency must be nonzero")]
    ZeroBaseFrequency,
    #[error("duplicate Fourier order p = {0}")]
    DuplicateComponent(f64),
    #[error("component at p = {0} has no mirror at -p")]
    MissingConjugatePartner(f64),
    #[error(
        "components at p = +-{0} are not adjoint mirrors (relative deviation {1:.3e}); \
         the time-domain Hamiltonian would not be Hermitian"
    )]
    NonConjugateSymmetric(f64, f64),
    #[error("component dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("averaged Hamiltonian failed the Hermiticity check ({0:.3e})")]
    NonHermitianResult(f64),
    #[error("projection basis is degenerate")]
    DegenerateBasis,
}

const MATCH_TOL: f64 = 1e-9;

fn find_mirror(components: &[(f64, Operator)], p: f64) -> Option<&Operator> {
    components
        .iter()
        .find(|(q, _)| (q + p).abs() <= MATCH_TOL * p.abs().max(1.0))
        .map(|(_, h)| h)
}

/// Second-order average of Fourier components over the base period.
/// Returns H_0 plus the second-order corrections.
pub fn second_order_average_hamiltonian(
    components: &[(f64, Operator)],
    base_freq: f64,
) -> Result<Operator, MagnusError> {
    if base_freq == 0.0 || !base_freq.is_finite() {
        return Err(MagnusError::ZeroBaseFrequency);
    }
    let dim = components
        .first()
        .map(|(_, h)| h.dim())
        .unwrap_or(1);
    for (i, (p, h)) in components.iter().enumerate() {
        if h.dim() != dim {
            return Err(MagnusError::DimensionMismatch(dim, h.dim()));
        }
        for (q, _) in &components[i + 1..] {
            if (p - q).abs() <= MATCH_TOL * p.abs().max(1.0) {
                return Err(MagnusError::DuplicateComponent(*p));
            }
        }
    }
    let h0 = components
        .iter()
        .find(|(p, _)| p.abs() <= MATCH_TOL)
        .map(|(_, h)| h.clone())
        .unwrap_or_else(|| Operator::zeros(dim));

    // Conjugate-symmetry gate: a violation signals a caller bug.
    for (p, h) in components {
        if p.abs() <= MATCH_TOL {
            continue;
        }
        let mirror =
            find_mirror(components, *p).ok_or(MagnusError::MissingConjugatePartner(*p))?;
        let dev = mirror.sub(&h.dagger()).frobenius_norm()
            / h.frobenius_norm().max(1.0);
        if dev > 1e-10 {
            return Err(MagnusError::NonConjugateSymmetric(p.abs(), dev));
        }
    }

    let mut acc = h0.clone();
    for (p, h_p) in components {
        if p.abs() <= MATCH_TOL {
            continue;
        }
        let h_mp = find_mirror(components, *p).expect("checked above");
        let w = 1.0 / (p * base_freq);
        acc.axpy(C64::new(-0.5 * w, 0.0), &h_mp.commutator(h_p));
        acc.axpy(C64::new(w, 0.0), &h0.commutator(h_p));
    }

    let dev = acc.hermiticity_deviation();
    if dev > 1e-10 {
        return Err(MagnusError::NonHermitianResult(dev));
    }
    Ok(acc)
}

/// Least-squares coefficients of `h` in a (possibly non-orthogonal) Hermitian
/// operator basis, via the Gram matrix of Frobenius inner products. Returns
/// the coefficients and the Frobenius norm of the residual h - sum c_i Q_i.
pub fn project_coefficients(
    h: &Operator,
    basis: &[Operator],
) -> Result<(Vec<f64>, f64), MagnusError> {
    let n = basis.len();
    let mut gram = vec![0.0; n * n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            gram[i * n + j] = basis[i].inner(&basis[j]);
        }
        rhs[i] = basis[i].inner(h);
    }
    let coeffs = solve_dense(&mut gram, &mut rhs, n).ok_or(MagnusError::DegenerateBasis)?;
    let mut residual = h.clone();
    for (c, q) in coeffs.iter().zip(basis) {
        residual.axpy(C64::new(-c, 0.0), q);
    }
    Ok((coeffs, residual.frobenius_norm()))
}

/// Gaussian elimination with partial pivoting on a small dense system.
fn solve_dense(a: &mut [f64], b: &mut [f64], n: usize) -> Option<Vec<f64>> {
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i * n + col]
                .abs()
                .partial_cmp(&a[j * n + col].abs())
                .unwrap()
        })?;
        if a[pivot * n + col].abs() < 1e-14 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        for row in (col + 1)..n {
            let f = a[row * n + col] / a[col * n + col];
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut s = b[col];
        for k in (col + 1)..n {
            s -= a[col * n + k] * x[k];
        }
        x[col] = s / a[col * n + col];
    }
    Some(x)
}
