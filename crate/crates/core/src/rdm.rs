//! One-body reduced density matrix of the harmonic ground state in the
//! strong-coupling limit.
//!
//! Each particle contributes a Gaussian kernel about its equilibrium site,
//!
//! ```text
//! rho_i(x, x') = A exp(-a (u^2 + u'^2) + b u u'),   u = x - x_i,
//! ```
//!
//! whose eigenfunctions are Hermite functions of width `eta = sqrt(4a^2 - b^2)`
//! with geometric occupancies `lambda_l = A sqrt(pi (1 - y^2) / eta) y^l`.
//! Kernels on different sites do not overlap, so the spectrum of the whole
//! matrix is the union of the per-site ladders.
//!
//! `(a, b)` come from integrating `|psi|^2`'s partner coordinates out of the
//! ground-state Gaussian: with `M = U^T diag(v) U` partitioned about the
//! site coordinate into `m`, `r` and `M_rr`, and `w = r^T M_rr^-1 r`,
//! `a = m/2 - w/4` and `b = w/2`. `A` is fixed by giving each site trace
//! `1/N`.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::{Configuration, Error, NormalModes, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteKernel {
    /// 1-based site index.
    pub site: usize,
    pub center: f64,
    pub amplitude: f64,
    pub a: f64,
    pub b: f64,
    pub eta: f64,
    pub y: f64,
}

impl SiteKernel {
    pub fn from_parameters(site: usize, center: f64, amplitude: f64, a: f64, b: f64) -> Self {
        let (p, m) = ((2.0 * a + b).sqrt(), (2.0 * a - b).sqrt());
        SiteKernel {
            site,
            center,
            amplitude,
            a,
            b,
            eta: (4.0 * a * a - b * b).sqrt(),
            y: (p - m) / (p + m),
        }
    }

    /// Exponent of the diagonal, `c = -2a + b`.
    pub fn c(&self) -> f64 {
        -2.0 * self.a + self.b
    }

    /// Standard deviation of the site density peak.
    pub fn std_width(&self) -> f64 {
        1.0 / (2.0 * (2.0 * self.a - self.b)).sqrt()
    }

    pub fn value(&self, x: f64, x_prime: f64) -> f64 {
        let (u, v) = (x - self.center, x_prime - self.center);
        self.amplitude * (-self.a * (u * u + v * v) + self.b * u * v).exp()
    }

    pub fn lambda0(&self) -> f64 {
        self.amplitude * (PI * (1.0 - self.y * self.y) / self.eta).sqrt()
    }

    pub fn occupancy(&self, l: usize) -> f64 {
        self.lambda0() * self.y.powi(l as i32)
    }

    /// Sum of the whole occupancy ladder.
    pub fn trace(&self) -> f64 {
        self.amplitude * (PI * (1.0 + self.y) / (self.eta * (1.0 - self.y))).sqrt()
    }

    /// Sum of squared occupancies, `A^2 pi / eta`.
    pub fn purity(&self) -> f64 {
        self.amplitude * self.amplitude * PI / self.eta
    }

    pub fn recentered(&self, center: f64) -> Self {
        SiteKernel { center, ..*self }
    }
}

pub fn site_kernel(modes: &NormalModes, config: &Configuration, site: usize) -> Result<SiteKernel> {
    let n = modes.n();
    if site == 0 || site > n || config.n() != n {
        return Err(Error::InvalidSite { site, n });
    }
    let k = site - 1;
    let precision = modes.precision_matrix();
    let others: Vec<usize> = (0..n).filter(|&j| j != k).collect();

    let m = precision[(k, k)];
    let r = DVector::from_iterator(n - 1, others.iter().map(|&j| precision[(j, k)]));
    let block = DMatrix::from_fn(n - 1, n - 1, |i, j| precision[(others[i], others[j])]);
    let chol = Cholesky::new(block).ok_or(Error::SingularBlock)?;
    let w = r.dot(&chol.solve(&r));

    let a = 0.5 * m - 0.25 * w;
    let b = 0.5 * w;
    let amplitude = ((2.0 * a - b) / PI).sqrt() / n as f64;
    Ok(SiteKernel::from_parameters(site, config.positions[k], amplitude, a, b))
}

/// Kernels for every site; mirror partners share one computation.
pub fn site_kernels(modes: &NormalModes, config: &Configuration) -> Result<Vec<SiteKernel>> {
    let n = modes.n();
    let half: Vec<SiteKernel> =
        (1..=n.div_ceil(2)).map(|site| site_kernel(modes, config, site)).collect::<Result<_>>()?;
    Ok((1..=n)
        .map(|site| {
            let base = half[site.min(n + 1 - site) - 1];
            SiteKernel { site, center: config.positions[site - 1], ..base }
        })
        .collect())
}

/// Normalised natural orbital `u_l` of a site, a Hermite function of
/// width `1/sqrt(eta)` centred on the site.
pub fn natural_orbital(kernel: &SiteKernel, l: usize, x: f64) -> f64 {
    kernel.eta.powf(0.25) * hermite_function(l, kernel.eta.sqrt() * (x - kernel.center))
}

/// `H_l(t) exp(-t^2/2) / sqrt(2^l l! sqrt(pi))` by the three-term recurrence
/// on the normalised functions, which stays finite for large `l`.
pub fn hermite_function(l: usize, t: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * t * t).exp();
    for k in 0..l {
        let next = (2.0 / (k + 1) as f64).sqrt() * t * cur - (k as f64 / (k + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn site_density(kernel: &SiteKernel, x: f64) -> f64 {
    let u = x - kernel.center;
    kernel.amplitude * (kernel.c() * u * u).exp()
}

/// Geometric occupancy ladders of all sites plus the derived purity,
/// degree of correlation `K = 1/P` and relative excess `(K - N)/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancySpectrum {
    /// `ladders[i][l]` is the occupancy of orbital `l` on site `i + 1`.
    pub ladders: Vec<Vec<f64>>,
    pub ratios: Vec<f64>,
    /// Per-site truncation order.
    pub l_max: Vec<usize>,
    /// Per-site mass beyond `l_max`.
    pub tails: Vec<f64>,
    pub site_purities: Vec<f64>,
    pub purity: f64,
    pub k: f64,
    pub delta_k: f64,
}

impl OccupancySpectrum {
    pub fn n(&self) -> usize {
        self.ladders.len()
    }

    /// Leading occupancy of a 1-based site.
    pub fn lambda0(&self, site: usize) -> f64 {
        self.ladders[site - 1][0]
    }

    pub fn tail_bound(&self) -> f64 {
        self.tails.iter().sum()
    }

    /// Trace carried by the orbitals beyond the `N` leading ones.
    pub fn residual_mass(&self) -> f64 {
        1.0 - self.ladders.iter().map(|l| l[0]).sum::<f64>()
    }

    pub fn trace(&self) -> f64 {
        self.ladders.iter().flatten().sum::<f64>() + self.tail_bound()
    }

    /// Purity summed directly over the truncated ladders.
    pub fn truncated_purity(&self) -> f64 {
        self.ladders.iter().flatten().map(|x| x * x).sum()
    }

    /// All occupancies, largest first.
    pub fn sorted_occupancies(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.ladders.iter().flatten().copied().collect();
        all.sort_by(|a, b| b.total_cmp(a));
        all
    }
}

pub fn occupancy_spectrum(kernels: &[SiteKernel], tail_tol: f64) -> OccupancySpectrum {
    let n = kernels.len();
    let mut ladders = Vec::with_capacity(n);
    let mut l_max = Vec::with_capacity(n);
    let mut tails = Vec::with_capacity(n);
    for kernel in kernels {
        let y = kernel.y;
        let mut ladder = vec![kernel.lambda0()];
        let tail_after = |last: f64| if y > 0.0 { last * y / (1.0 - y) } else { 0.0 };
        while tail_after(*ladder.last().unwrap()) >= tail_tol {
            let next = ladder.last().unwrap() * y;
            ladder.push(next);
        }
        tails.push(tail_after(*ladder.last().unwrap()));
        l_max.push(ladder.len() - 1);
        ladders.push(ladder);
    }

    let site_purities: Vec<f64> = kernels.iter().map(SiteKernel::purity).collect();
    // mirror partners carry equal ladders: twice the left half, plus the
    // unpaired middle site for odd N
    let mut purity = 2.0 * site_purities[..n / 2].iter().sum::<f64>();
    if n % 2 == 1 {
        purity += site_purities[n / 2];
    }
    let k = 1.0 / purity;
    OccupancySpectrum {
        ladders,
        ratios: kernels.iter().map(|k| k.y).collect(),
        l_max,
        tails,
        site_purities,
        purity,
        k,
        delta_k: (k - n as f64) / n as f64,
    }
}

/// Density built from the leading orbital of each site only.
pub fn rank_n_density_approximation(kernels: &[SiteKernel], spectrum: &OccupancySpectrum, x: f64) -> f64 {
    kernels
        .iter()
        .zip(&spectrum.ladders)
        .map(|(k, ladder)| {
            let u0 = natural_orbital(k, 0, x);
            ladder[0] * u0 * u0
        })
        .sum()
}
