//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use nalgebra::{DMatrix, DVector};

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a symmetric matrix. `vectors` holds eigenvectors as
/// columns, in the same (unsorted) order as `values`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
    pub sweeps: usize,
}

/// Diagonalises `a` by cyclic plane rotations until the off-diagonal mass
/// drops below machine precision relative to the diagonal. Only the upper
/// triangle of `a` is assumed meaningful; the input is symmetrised first.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> SymmetricEigen {
    assert!(a.is_square(), "jacobi_eigen needs a square matrix");
    let n = a.nrows();
    let mut a = (a + a.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);

    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)] * a[(p, q)])
            .sum();
        let diag: f64 = (0..n).map(|p| a[(p, p)] * a[(p, p)]).sum();
        if off <= (f64::EPSILON * f64::EPSILON) * diag.max(f64::MIN_POSITIVE) {
            break;
        }
        sweeps += 1;

        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                // tangent of the rotation angle, smaller root for stability
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    SymmetricEigen { values: a.diagonal(), vectors: v, sweeps }
}
