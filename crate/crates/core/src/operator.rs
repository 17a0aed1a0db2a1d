//! Dense complex operators on the 2^N product space, with the Hermitian
//! eigendecomposition used to build exact piecewise-constant propagators.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use thiserror::Error;

/// Relative Frobenius tolerance for Hermiticity flags.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Frobenius tolerance for unitarity flags.
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("operator matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operator is not Hermitian (relative deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("operator contains non-finite entries")]
    NonFinite,
}

/// A dense complex operator. Immutable after construction; all arithmetic
/// returns fresh values, so sharing across threads is safe.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    mat: Array2<C64>,
}

impl Operator {
    pub fn new(mat: Array2<C64>) -> Result<Self, OperatorError> {
        if mat.nrows() != mat.ncols() {
            return Err(OperatorError::NotSquare(mat.nrows(), mat.ncols()));
        }
        Ok(Self { mat })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: Array2::zeros((dim, dim)),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: Array2::eye(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> Array2<C64> {
        self.mat
    }

    pub fn dagger(&self) -> Self {
        Self {
            mat: self.mat.t().mapv(|z| z.conj()),
        }
    }

    /// Matrix product self * rhs.
    pub fn dot(&self, rhs: &Self) -> Self {
        Self {
            mat: self.mat.dot(&rhs.mat),
        }
    }

    /// [self, rhs] = self*rhs - rhs*self.
    pub fn commutator(&self, rhs: &Self) -> Self {
        Self {
            mat: self.mat.dot(&rhs.mat) - rhs.mat.dot(&self.mat),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            mat: self.mat.mapv(|z| z * factor),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat + &rhs.mat,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat - &rhs.mat,
        }
    }

    /// In-place axpy: self += factor * rhs. The one mutating helper, used by
    /// Hamiltonian assembly loops before the operator is published.
    pub fn axpy(&mut self, factor: C64, rhs: &Self) {
        self.mat.zip_mut_with(&rhs.mat, |a, &b| *a += factor * b);
    }

    pub fn trace(&self) -> C64 {
        self.mat.diag().iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Re Tr(self^dagger * rhs), the Frobenius inner product for Hermitian
    /// operands.
    pub fn inner(&self, rhs: &Self) -> f64 {
        self.mat
            .iter()
            .zip(rhs.mat.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    pub fn is_finite(&self) -> bool {
        self.mat.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// || A - A^dagger ||_F / max(1, ||A||_F).
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let d = self.mat[[i, j]] - self.mat[[j, i]].conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt() / self.frobenius_norm().max(1.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// || U^dagger U - 1 ||_F.
    pub fn unitarity_deviation(&self) -> f64 {
        let utu = self.dagger().dot(self);
        let mut acc = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let expect = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                acc += (utu.mat[[i, j]] - expect).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Eigendecomposition of a Hermitian operator: H = V diag(w) V^dagger with
    /// real eigenvalues in ascending order and orthonormal columns.
    pub fn eigh(&self) -> Result<Eigh, OperatorError> {
        if !self.is_finite() {
            return Err(OperatorError::NonFinite);
        }
        let dev = self.hermiticity_deviation();
        if dev > 1e-10 {
            return Err(OperatorError::NotHermitian(dev));
        }
        let n = self.dim();
        let m = faer::Mat::<faer::complex_native::c64>::from_fn(n, n, |i, j| {
            let z = self.mat[[i, j]];
            faer::complex_native::c64::new(z.re, z.im)
        });
        let evd = m.selfadjoint_eigendecomposition(faer::Side::Lower);
        let values: Vec<f64> = (0..n).map(|i| evd.s().column_vector().read(i).re).collect();
        let mut vectors = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                let z = evd.u().read(i, j);
                vectors[[i, j]] = C64::new(z.re, z.im);
            }
        }
        Ok(Eigh { values, vectors })
    }
}

/// Eigendecomposition of a Hermitian operator, reusable across time steps of
/// a constant Hamiltonian.
pub struct Eigh {
    pub values: Vec<f64>,
    /// Columns are the eigenvectors.
    pub vectors: Array2<C64>,
}

impl Eigh {
    /// U(dt) = exp(-i H dt), exactly unitary up to the orthonormality of the
    /// eigenvector basis.
    pub fn propagator(&self, dt: f64) -> Operator {
        let n = self.values.len();
        // V * diag(exp(-i w dt)) * V^dagger
        let mut scaled = self.vectors.clone();
        for (j, &w) in self.values.iter().enumerate() {
            let phase = C64::from_polar(1.0, -w * dt);
            scaled.column_mut(j).mapv_inplace(|z| z * phase);
        }
        let vdag = self.vectors.t().mapv(|z| z.conj());
        let mat = scaled.dot(&vdag);
        debug_assert_eq!(mat.nrows(), n);
        Operator { mat }
    }
}

/// Tensor (Kronecker) product.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    Operator {
        mat: ndarray::linalg::kron(&a.mat, &b.mat),
    }
}
