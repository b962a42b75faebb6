use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type ComplexMatrix = DMatrix<Complex64>;

pub(crate) fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// max |A - A†|
pub(crate) fn hermiticity_residual(m: &ComplexMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn frobenius(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Re tr(A B) without forming the product.
pub(crate) fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc.re
}

/// Rank-1 projector onto the (normalised) ray `v`.
pub(crate) fn ray_projector(v: &DVector<Complex64>) -> ComplexMatrix {
    let u = v / Complex64::new(v.norm(), 0.0);
    &u * u.adjoint()
}

pub(crate) fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal moved into Q.
pub fn haar_unitary<R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix {
    let z = ComplexMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// U†XU
pub(crate) fn conjugate(x: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    u.adjoint() * x * u
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..6 {
            let u = haar_unitary(d, &mut rng);
            let err = frobenius(&(u.adjoint() * &u - ComplexMatrix::identity(d, d)));
            assert!(err < 1e-12, "{err}");
        }
    }
}
