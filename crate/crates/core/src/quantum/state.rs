use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::linalg::{conjugate, gaussian_complex, hermiticity_residual, is_finite, ray_projector, ComplexMatrix};
use crate::error::{Error, Result};

/// Hermiticity, trace and positivity tolerance for states.
pub const STATE_TOLERANCE: f64 = 1e-9;

/// Validated density matrix: Hermitian, PSD and unit trace up to
/// [`STATE_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::Shape(format!("density matrix is {}x{}", matrix.nrows(), matrix.ncols())));
        }
        if !is_finite(&matrix) {
            return Err(Error::Validation("density matrix has non-finite entries".into()));
        }
        let herm = hermiticity_residual(&matrix);
        if herm > STATE_TOLERANCE {
            return Err(Error::Validation(format!("density matrix not Hermitian (residual {herm:e})")));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STATE_TOLERANCE || trace.im.abs() > STATE_TOLERANCE {
            return Err(Error::Validation(format!("density matrix trace is {trace}")));
        }
        let rho = DensityMatrix { matrix };
        spectrum(&rho)?;
        Ok(rho)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix { matrix: ComplexMatrix::identity(d, d) / Complex64::new(d as f64, 0.0) }
    }

    /// |ψ⟩⟨ψ| for the normalised `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let v = DVector::from_column_slice(psi);
        if v.norm() == 0.0 || !v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain("state vector must be finite and nonzero".into()));
        }
        Ok(DensityMatrix { matrix: ray_projector(&v) })
    }

    pub fn pure_real(psi: &[f64]) -> Result<Self> {
        DensityMatrix::pure(&psi.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// diag(p) for a probability vector `p`.
    pub fn diagonal(p: &[f64]) -> Result<Self> {
        let m =
            ComplexMatrix::from_diagonal(&DVector::from_iterator(p.len(), p.iter().map(|&x| Complex64::new(x, 0.0))));
        DensityMatrix::new(m)
    }

    pub fn haar_pure<R: Rng>(d: usize, rng: &mut R) -> Self {
        let psi: Vec<Complex64> = (0..d).map(|_| gaussian_complex(rng)).collect();
        DensityMatrix::pure(&psi).expect("gaussian vector is nonzero almost surely")
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// U†ρU
    pub fn conjugated(&self, u: &ComplexMatrix) -> Self {
        let m = conjugate(&self.matrix, u);
        DensityMatrix { matrix: (&m + m.adjoint()) * Complex64::new(0.5, 0.0) }
    }
}

/// Eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts descending; entries must be finite.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("spectrum entries must be finite".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Eigenvalues of ρ, descending. Small negative eigenvalues within tolerance
/// are clamped to 0; larger ones are an error.
pub fn spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    let eig = rho.matrix.clone().symmetric_eigenvalues();
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -STATE_TOLERANCE {
        return Err(Error::Validation(format!("state is not positive semidefinite (eigenvalue {min:e})")));
    }
    Spectrum::new(eig.iter().map(|&x| x.max(0.0)).collect())
}

/// Whether `s1 ≺ s2`: every descending prefix sum of `s2` dominates that of
/// `s1`, with equal totals.
pub fn majorizes(s1: &Spectrum, s2: &Spectrum) -> Result<bool> {
    if s1.0.len() != s2.0.len() {
        return Err(Error::Shape(format!("spectra of length {} and {}", s1.0.len(), s2.0.len())));
    }
    const TOL: f64 = 1e-12;
    let (mut a, mut b) = (0.0, 0.0);
    for (x, y) in s1.0.iter().zip(&s2.0) {
        a += x;
        b += y;
        if b < a - TOL {
            return Ok(false);
        }
    }
    Ok((a - b).abs() <= TOL * s1.0.len() as f64)
}
