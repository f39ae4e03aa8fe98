use nalgebra::DMatrix;

/// Central-difference gradient.
pub fn fd_gradient(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|k| {
            probe[k] = x[k] + h;
            let up = f(&probe);
            probe[k] = x[k] - h;
            let down = f(&probe);
            probe[k] = x[k];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Central differences of an analytic gradient, symmetrised.
pub fn fd_hessian(grad: impl Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64) -> DMatrix<f64> {
    let n = x.len();
    let mut probe = x.to_vec();
    let mut out = DMatrix::zeros(n, n);
    for k in 0..n {
        probe[k] = x[k] + h;
        let up = grad(&probe);
        probe[k] = x[k] - h;
        let down = grad(&probe);
        probe[k] = x[k];
        for j in 0..n {
            out[(j, k)] = (up[j] - down[j]) / (2.0 * h);
        }
    }
    (&out + out.transpose()) * 0.5
}

/// `max|a - b| / max(max|a|, 1)`.
pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}
