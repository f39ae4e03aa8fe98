//! Scaled classical potential of the trapped chain.
//!
//! For a power-law exponent `d` the strength `g` is scaled out through
//! `x = g^(1/(2+d)) beta`, leaving
//!
//! ```text
//! V(beta) = 1/2 sum_i beta_i^2 + sum_{i>j} |beta_i - beta_j|^(-d)
//! ```
//!
//! In the logarithmic small-`d` limit the coordinates are `x = sqrt(d g) alpha`
//! and
//!
//! ```text
//! V(alpha) = sum_i alpha_i^2 - sum_{i>j} ln (alpha_i - alpha_j)^2
//! ```
//!
//! whose Hessian is reported with an extra factor 1/2 so that it equals the
//! physical-coordinate Hessian. The hard-core limit has no smooth potential.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::{Error, Result};

/// Pair interaction `|x|^(-d)` or one of its two limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interaction {
    PowerLaw(f64),
    /// `d -> 0`: `|x|^(-d) -> 1 - d ln|x|`.
    LogLimit,
    /// `d -> infinity`: equilibrium is the unit lattice.
    HardCoreLimit,
}

impl Interaction {
    pub fn power_law(d: f64) -> Result<Self> {
        if d.is_finite() && d > 0.0 {
            Ok(Interaction::PowerLaw(d))
        } else {
            Err(Error::InvalidSpec(format!("power-law exponent must be finite and > 0, got {d}")))
        }
    }

    /// The exponent for `PowerLaw`, `None` for the limits.
    pub fn exponent(&self) -> Option<f64> {
        match *self {
            Interaction::PowerLaw(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_hard_core(&self) -> bool {
        matches!(self, Interaction::HardCoreLimit)
    }
}

impl fmt::Display for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interaction::PowerLaw(d) if (1e-4..1e16).contains(d) => write!(f, "{d}"),
            Interaction::PowerLaw(d) => write!(f, "{d:e}"),
            Interaction::LogLimit => f.write_str("log"),
            Interaction::HardCoreLimit => f.write_str("inf"),
        }
    }
}

impl FromStr for Interaction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "log" => Ok(Interaction::LogLimit),
            "inf" => Ok(Interaction::HardCoreLimit),
            other => {
                let d: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("unrecognised exponent token {other:?}")))?;
                Interaction::power_law(d)
            }
        }
    }
}

/// Particle number and interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    n_particles: usize,
    interaction: Interaction,
}

impl SystemSpec {
    pub fn new(n_particles: usize, interaction: Interaction) -> Result<Self> {
        if n_particles < 2 {
            return Err(Error::InvalidSpec(format!("need at least 2 particles, got {n_particles}")));
        }
        if let Interaction::PowerLaw(d) = interaction {
            Interaction::power_law(d)?;
        }
        Ok(SystemSpec { n_particles, interaction })
    }

    pub fn n(&self) -> usize {
        self.n_particles
    }

    pub fn interaction(&self) -> Interaction {
        self.interaction
    }
}

fn check_positions(spec: &SystemSpec, pos: &[f64]) -> Result<()> {
    if pos.len() != spec.n() {
        return Err(Error::InvalidSpec(format!(
            "expected {} positions, got {}",
            spec.n(),
            pos.len()
        )));
    }
    for i in 1..pos.len() {
        if !(pos[i] > pos[i - 1]) {
            return Err(Error::CoincidentPositions(i - 1, i));
        }
    }
    Ok(())
}

pub fn potential_value(spec: &SystemSpec, pos: &[f64]) -> Result<f64> {
    check_positions(spec, pos)?;
    let n = pos.len();
    match spec.interaction() {
        Interaction::PowerLaw(d) => {
            let mut v = 0.5 * pos.iter().map(|p| p * p).sum::<f64>();
            for i in 0..n {
                for j in 0..i {
                    v += (pos[i] - pos[j]).powf(-d);
                }
            }
            Ok(v)
        }
        Interaction::LogLimit => {
            let mut v = pos.iter().map(|p| p * p).sum::<f64>();
            for i in 0..n {
                for j in 0..i {
                    v -= 2.0 * (pos[i] - pos[j]).ln();
                }
            }
            Ok(v)
        }
        Interaction::HardCoreLimit => Err(Error::UnsupportedLimit),
    }
}

pub fn potential_gradient(spec: &SystemSpec, pos: &[f64]) -> Result<Vec<f64>> {
    check_positions(spec, pos)?;
    let n = pos.len();
    match spec.interaction() {
        Interaction::PowerLaw(d) => {
            let mut g = pos.to_vec();
            for i in 0..n {
                for j in 0..i {
                    // pos[i] > pos[j]; the pair pushes i right and j left
                    let f = d * (pos[i] - pos[j]).powf(-d - 1.0);
                    g[i] -= f;
                    g[j] += f;
                }
            }
            Ok(g)
        }
        Interaction::LogLimit => {
            let mut g: Vec<f64> = pos.iter().map(|p| 2.0 * p).collect();
            for i in 0..n {
                for j in 0..i {
                    let f = 2.0 / (pos[i] - pos[j]);
                    g[i] -= f;
                    g[j] += f;
                }
            }
            Ok(g)
        }
        Interaction::HardCoreLimit => Err(Error::UnsupportedLimit),
    }
}

/// Analytic Hessian. For `LogLimit` this is half the second-derivative
/// matrix of the scaled potential.
pub fn potential_hessian(spec: &SystemSpec, pos: &[f64]) -> Result<DMatrix<f64>> {
    check_positions(spec, pos)?;
    let n = pos.len();
    let pair_curvature: Box<dyn Fn(f64) -> f64> = match spec.interaction() {
        Interaction::PowerLaw(d) => Box::new(move |s: f64| d * (d + 1.0) * s.powf(-d - 2.0)),
        Interaction::LogLimit => Box::new(|s: f64| 1.0 / (s * s)),
        Interaction::HardCoreLimit => return Err(Error::UnsupportedLimit),
    };
    let mut h = DMatrix::<f64>::identity(n, n);
    for i in 0..n {
        for j in 0..i {
            let c = pair_curvature(pos[i] - pos[j]);
            h[(i, i)] += c;
            h[(j, j)] += c;
            h[(i, j)] -= c;
            h[(j, i)] -= c;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, i: Interaction) -> SystemSpec {
        SystemSpec::new(n, i).unwrap()
    }

    #[test]
    fn two_particle_values() {
        // s = (2d)^(1/(2+d)) minimises s^2/4 + s^-d; at d = 2, s = sqrt(2)
        let s = 2f64.sqrt();
        let v = potential_value(&spec(2, Interaction::PowerLaw(2.0)), &[-s / 2.0, s / 2.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-14);

        let v = potential_value(&spec(2, Interaction::LogLimit), &[-s / 2.0, s / 2.0]).unwrap();
        assert!((v - (1.0 - 2f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn coincident_and_hard_core_rejected() {
        let err = potential_value(&spec(2, Interaction::PowerLaw(1.0)), &[0.0, 0.0]).unwrap_err();
        assert_eq!(err, Error::CoincidentPositions(0, 1));
        let err = potential_gradient(&spec(2, Interaction::HardCoreLimit), &[-0.5, 0.5]).unwrap_err();
        assert_eq!(err, Error::UnsupportedLimit);
        assert!(potential_hessian(&spec(3, Interaction::HardCoreLimit), &[-1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn two_particle_stationary() {
        let s = 2f64.sqrt();
        for i in [Interaction::PowerLaw(2.0), Interaction::LogLimit] {
            let g = potential_gradient(&spec(2, i), &[-s / 2.0, s / 2.0]).unwrap();
            assert!(g.iter().all(|x| x.abs() < 1e-12), "{i}: {g:?}");
        }
    }

    #[test]
    fn symmetric_gradient_is_antisymmetric() {
        for i in [Interaction::PowerLaw(0.7), Interaction::PowerLaw(3.0), Interaction::LogLimit] {
            let g = potential_gradient(&spec(3, i), &[-0.8, 0.0, 0.8]).unwrap();
            assert_eq!(g[0], -g[2]);
            assert_eq!(g[1], 0.0);
        }
    }

    #[test]
    fn two_particle_hessian_spectrum() {
        for d in [0.5, 1.0, 2.0, 6.0] {
            let s = (2.0f64 * d).powf(1.0 / (2.0 + d));
            let h = potential_hessian(&spec(2, Interaction::PowerLaw(d)), &[-s / 2.0, s / 2.0]).unwrap();
            let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
            ev.sort_by(f64::total_cmp);
            assert!((ev[0] - 1.0).abs() < 1e-12);
            assert!((ev[1] - (d + 2.0)).abs() < 1e-10, "d={d}: {ev:?}");
        }
        let s = 2f64.sqrt();
        let h = potential_hessian(&spec(2, Interaction::LogLimit), &[-s / 2.0, s / 2.0]).unwrap();
        let u = nalgebra::DVector::from_element(2, 0.5f64.sqrt());
        assert!((&h * &u - &u).amax() < 1e-14);
        assert_eq!(h, h.transpose());
    }

    #[test]
    fn interaction_tokens() {
        assert_eq!("log".parse::<Interaction>().unwrap(), Interaction::LogLimit);
        assert_eq!("inf".parse::<Interaction>().unwrap(), Interaction::HardCoreLimit);
        assert_eq!("2.5".parse::<Interaction>().unwrap(), Interaction::PowerLaw(2.5));
        assert!("-1".parse::<Interaction>().is_err());
        assert!("0".parse::<Interaction>().is_err());
        assert!(SystemSpec::new(1, Interaction::LogLimit).is_err());
    }
}
