//! Normal modes of the harmonic expansion about the equilibrium.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};

use crate::jacobi::jacobi_eigen;
use crate::potential::potential_hessian;
use crate::{Configuration, Error, Result, SystemSpec};

/// Mode frequencies `v_i` (ascending) and the orthogonal matrix `U` whose
/// row `i` maps a displacement vector `z` to the mode coordinate
/// `q_i = (U z)_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalModes {
    pub frequencies: Vec<f64>,
    pub mode_matrix: DMatrix<f64>,
}

impl NormalModes {
    pub fn n(&self) -> usize {
        self.frequencies.len()
    }

    /// `U^T diag(v^2) U`, the Hessian the modes were built from.
    pub fn hessian(&self) -> DMatrix<f64> {
        let v2 = DVector::from_iterator(self.n(), self.frequencies.iter().map(|v| v * v));
        self.mode_matrix.transpose() * DMatrix::from_diagonal(&v2) * &self.mode_matrix
    }

    /// `M = U^T diag(v) U`; the ground state is `exp(-z^T M z / 2)` up to
    /// normalisation.
    pub fn precision_matrix(&self) -> DMatrix<f64> {
        let v = DVector::from_vec(self.frequencies.clone());
        let m = self.mode_matrix.transpose() * DMatrix::from_diagonal(&v) * &self.mode_matrix;
        (&m + m.transpose()) * 0.5
    }

    pub fn mode_vector(&self, mode: usize) -> Vec<f64> {
        self.mode_matrix.row(mode).iter().copied().collect()
    }

    /// Mode coordinates `q = U z` of a displacement vector.
    pub fn to_mode_coordinates(&self, z: &[f64]) -> Vec<f64> {
        (&self.mode_matrix * DVector::from_column_slice(z)).iter().copied().collect()
    }
}

pub fn compute_modes(spec: &SystemSpec, config: &Configuration) -> Result<NormalModes> {
    if spec.interaction().is_hard_core() {
        return Err(Error::UnsupportedLimit);
    }
    let hessian = potential_hessian(spec, &config.positions)?;
    modes_from_hessian(&hessian)
}

/// Diagonalises a symmetric Hessian into sorted, sign-fixed normal modes.
pub fn modes_from_hessian(hessian: &DMatrix<f64>) -> Result<NormalModes> {
    let n = hessian.nrows();
    let eig = jacobi_eigen(hessian);

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| {
            let mut vec: Vec<f64> = eig.vectors.column(k).iter().copied().collect();
            fix_sign(&mut vec);
            (eig.values[k], vec)
        })
        .collect();

    if let Some(&(lowest, _)) = pairs.iter().min_by(|a, b| a.0.total_cmp(&b.0)) {
        if !(lowest > 0.0) {
            return Err(Error::DegenerateHessian(lowest));
        }
    }

    let scale = pairs.iter().fold(1.0f64, |m, p| m.max(p.0.abs()));
    pairs.sort_by(|a, b| {
        if (a.0 - b.0).abs() <= 1e-12 * scale {
            lexicographic(&a.1, &b.1)
        } else {
            a.0.total_cmp(&b.0)
        }
    });

    let frequencies = pairs.iter().map(|p| p.0.sqrt()).collect();
    let mode_matrix = DMatrix::from_fn(n, n, |i, j| pairs[i].1[j]);
    Ok(NormalModes { frequencies, mode_matrix })
}

/// Makes the first entry of largest magnitude positive. Entries equal in
/// magnitude up to round-off count as ties so the choice is reproducible.
fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(pivot) = v.iter().position(|x| x.abs() >= max - 1e-10 * max) {
        if v[pivot] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}
