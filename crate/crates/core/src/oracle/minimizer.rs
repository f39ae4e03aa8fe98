use crate::potential::potential_gradient;
use crate::{lattice_guess, Configuration, CoordinateKind, Error, Interaction, Result, SystemSpec};

const MAX_SWEEPS: usize = 500_000;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Change of the scaled potential when coordinate `k` moves by `delta`,
/// computed term by term so it stays accurate for tiny `delta`.
fn coordinate_change(spec: &SystemSpec, pos: &[f64], k: usize, delta: f64) -> f64 {
    let p = pos[k];
    let mut change = match spec.interaction() {
        Interaction::PowerLaw(_) => p * delta + 0.5 * delta * delta,
        _ => 2.0 * p * delta + delta * delta,
    };
    for (j, &q) in pos.iter().enumerate() {
        if j == k {
            continue;
        }
        // relative change of the separation |p - q|
        let rel = if p > q { delta / (p - q) } else { -delta / (q - p) };
        if rel <= -1.0 {
            return f64::INFINITY;
        }
        let sep = (p - q).abs();
        change += match spec.interaction() {
            Interaction::PowerLaw(d) => sep.powf(-d) * (-d * rel.ln_1p()).exp_m1(),
            _ => -2.0 * rel.ln_1p(),
        };
    }
    change
}

/// Golden-section search for the minimiser of a convex function on `[lo, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-17 + 1e-15 * (lo.abs() + hi.abs()) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    if f(mid) <= 0.0 { mid } else { 0.0 }
}

/// Cyclic coordinate descent with a golden-section line search per
/// coordinate, started from the unit lattice. Uses potential values only.
/// Converged when a full sweep moves no coordinate by more than `tol`.
pub fn independent_minimum(spec: &SystemSpec, tol: f64) -> Result<Configuration> {
    let kind = match spec.interaction() {
        Interaction::PowerLaw(_) => CoordinateKind::Beta,
        Interaction::LogLimit => CoordinateKind::Alpha,
        Interaction::HardCoreLimit => return Err(Error::UnsupportedLimit),
    };
    let n = spec.n();
    let mut pos = lattice_guess(n).positions;
    let mut largest = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        largest = 0.0f64;
        for k in 0..n {
            let left = if k > 0 { pos[k] - pos[k - 1] } else { f64::INFINITY };
            let right = if k + 1 < n { pos[k + 1] - pos[k] } else { f64::INFINITY };
            let reach = left.min(right).min(2.0 * (n as f64));
            let lo = -0.5 * if k > 0 { left } else { reach };
            let hi = 0.5 * if k + 1 < n { right } else { reach };
            let step = golden_section(|delta| coordinate_change(spec, &pos, k, delta), lo, hi);
            pos[k] += step;
            largest = largest.max(step.abs());
        }
        if largest <= tol {
            let grad = potential_gradient(spec, &pos)?;
            let residual = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
            return Ok(Configuration { positions: pos, kind, residual, tolerance: tol });
        }
    }
    Err(Error::NoConvergence { max_iter: MAX_SWEEPS, residual: largest })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_particles() {
        let spec = SystemSpec::new(2, Interaction::PowerLaw(1.0)).unwrap();
        let c = independent_minimum(&spec, 1e-14).unwrap();
        assert!((c.positions[1] - c.positions[0] - 2f64.powf(1.0 / 3.0)).abs() < 1e-8);
    }

    #[test]
    fn log_limit_middle_at_origin() {
        let spec = SystemSpec::new(3, Interaction::LogLimit).unwrap();
        let c = independent_minimum(&spec, 1e-14).unwrap();
        assert!(c.positions[1].abs() < 1e-10);
    }

    #[test]
    fn small_moves_resolved() {
        let spec = SystemSpec::new(3, Interaction::PowerLaw(2.0)).unwrap();
        let pos = [-1.0, 0.0, 1.2];
        let direct = |delta: f64| {
            let mut moved = pos;
            moved[2] += delta;
            crate::potential_value(&spec, &moved).unwrap() - crate::potential_value(&spec, &pos).unwrap()
        };
        let accurate = coordinate_change(&spec, &pos, 2, 1e-3);
        assert!((accurate - direct(1e-3)).abs() < 1e-12);
    }
}
