use wigmol_core::oracle::{
    evaluation_grid, fd_hessian, independent_minimum, nystrom_grid, nystrom_occupancies, quadrature_kernel,
    relative_error, QuadratureSpec,
};
use wigmol_core::potential::{potential_hessian, potential_value};
use wigmol_core::verify;
use wigmol_core::*;

fn solution(n: usize, i: Interaction) -> HarmonicSolution {
    HarmonicSolution::compute(&SystemSpec::new(n, i).unwrap()).unwrap()
}

#[test]
fn quadrature_converges_with_order() {
    let sol = solution(3, Interaction::PowerLaw(1.0));
    let k = sol.kernels().unwrap()[0];
    let coarse = QuadratureSpec { points_per_dim: 20, ..Default::default() };
    let fine = QuadratureSpec { points_per_dim: 40, ..Default::default() };
    for &x in &evaluation_grid(k.center, k.std_width(), &fine, 5) {
        let xp = k.center + 0.5 * k.std_width();
        let a = quadrature_kernel(sol.modes().unwrap(), sol.configuration(), 1, x, xp, &coarse).unwrap();
        let b = quadrature_kernel(sol.modes().unwrap(), sol.configuration(), 1, x, xp, &fine).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

#[test]
fn quadrature_matches_closed_kernel_off_diagonal() {
    let quad = QuadratureSpec::default();
    for (n, d) in [(2, 1.0), (3, 2.0)] {
        let sol = solution(n, Interaction::PowerLaw(d));
        assert!(verify::kernel_quadrature_error(&sol, &quad).unwrap() < 1e-6);
    }
}

#[test]
fn quadrature_in_four_particles() {
    let sol = solution(4, Interaction::PowerLaw(1.0));
    let quad = QuadratureSpec { points_per_dim: 24, ..Default::default() };
    let k = sol.kernels().unwrap()[1];
    let x = k.center + 0.7 * k.std_width();
    let q = quadrature_kernel(sol.modes().unwrap(), sol.configuration(), 2, x, k.center, &quad).unwrap();
    assert!((q - k.value(x, k.center)).abs() < 1e-8);
}

#[test]
fn nystrom_ladder() {
    let sol = solution(2, Interaction::PowerLaw(1.0));
    let k = sol.kernels().unwrap()[0];
    let ev = nystrom_occupancies(|x, xp| k.value(x, xp), &nystrom_grid(&k), 5);
    assert!((ev[0] - k.lambda0()).abs() < 1e-5);
    for w in ev.windows(2) {
        assert!((w[1] / w[0] - k.y).abs() < 1e-4);
    }
}

#[test]
fn momentum_matches_two_dimensional_quadrature() {
    for (n, d) in [(2, 1.0), (3, 2.0)] {
        let sol = solution(n, Interaction::PowerLaw(d));
        assert!(verify::momentum_quadrature_error(&sol, &[0.0, 0.3, 1.5]).unwrap() < 1e-6);
    }
}

#[test]
fn independent_minimizer_agrees_with_newton() {
    let spec = SystemSpec::new(5, Interaction::PowerLaw(2.0)).unwrap();
    let newton = solve_equilibrium(&spec, SolverOptions::default()).unwrap();
    let oracle = independent_minimum(&spec, 1e-14).unwrap();
    assert!(relative_error(&newton.positions, &oracle.positions) < 1e-8);
    assert!(independent_minimum(&SystemSpec::new(3, Interaction::HardCoreLimit).unwrap(), 1e-12).is_err());
}

#[test]
fn solution_independent_of_start() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for n in [2, 5, 8, 12] {
        for i in [Interaction::PowerLaw(1.0), Interaction::PowerLaw(6.0), Interaction::LogLimit] {
            let spec = SystemSpec::new(n, i).unwrap();
            let reference = solve_equilibrium(&spec, SolverOptions::default()).unwrap();
            let lattice = lattice_guess(n).positions;
            let doubled: Vec<f64> = lattice.iter().map(|p| 2.0 * p).collect();
            let spacing = rng.random_range(0.3..3.0);
            let random: Vec<f64> = lattice.iter().map(|p| spacing * p).collect();
            for start in [lattice, doubled, random] {
                let c = solve_equilibrium_from(&spec, &start, SolverOptions::default()).unwrap();
                assert!(relative_error(&reference.positions, &c.positions) < 1e-10, "N={n} {i}");
            }
        }
    }
}

#[test]
fn equilibrium_is_a_local_minimum() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for i in [Interaction::PowerLaw(0.5), Interaction::PowerLaw(2.0), Interaction::LogLimit] {
        let spec = SystemSpec::new(6, i).unwrap();
        let c = solve_equilibrium(&spec, SolverOptions::default()).unwrap();
        let v0 = potential_value(&spec, &c.positions).unwrap();
        for _ in 0..20 {
            let moved: Vec<f64> = c.positions.iter().map(|p| p + 1e-3 * rng.random_range(-1.0..1.0)).collect();
            assert!(potential_value(&spec, &moved).unwrap() > v0);
        }
    }
}

#[test]
fn two_particle_separation_closed_form() {
    for d in [0.1, 0.5, 1.0, 3.0, 10.0, 40.0] {
        let c = solve_equilibrium(&SystemSpec::new(2, Interaction::PowerLaw(d)).unwrap(), SolverOptions::default())
            .unwrap();
        let s = (2.0f64 * d).powf(1.0 / (2.0 + d));
        assert!((c.positions[1] - c.positions[0] - s).abs() < 1e-10, "d={d}");
    }
}

#[test]
fn approach_to_lattice() {
    for n in [2, 4, 7] {
        let devs: Vec<f64> = [10.0, 50.0, 200.0]
            .iter()
            .map(|&d| {
                solve_equilibrium(&SystemSpec::new(n, Interaction::PowerLaw(d)).unwrap(), SolverOptions::default())
                    .unwrap()
                    .lattice_deviation()
            })
            .collect();
        assert!(devs[0] > devs[1] && devs[1] > devs[2], "N={n}: {devs:?}");
    }
}

/// Unscaled potential `x^2/2 + g |x_i - x_j|^-d`.
fn physical_potential(g: f64, d: f64, x: &[f64]) -> f64 {
    let mut v = 0.5 * x.iter().map(|p| p * p).sum::<f64>();
    for i in 0..x.len() {
        for j in 0..i {
            v += g * (x[i] - x[j]).abs().powf(-d);
        }
    }
    v
}

#[test]
fn physical_hessian_is_independent_of_strength() {
    let d = 1.5;
    let spec = SystemSpec::new(4, Interaction::PowerLaw(d)).unwrap();
    let c = solve_equilibrium(&spec, SolverOptions::default()).unwrap();
    let scaled = potential_hessian(&spec, &c.positions).unwrap();
    for g in [1.0, 10.0, 1000.0] {
        let x = physical_centers(&c, &spec, g, None).unwrap();
        let grad = |p: &[f64]| oracle::fd_gradient(|q| physical_potential(g, d, q), p, 1e-4);
        let fd = fd_hessian(grad, &x, 1e-4);
        assert!(relative_error(scaled.as_slice(), fd.as_slice()) < 1e-5, "g={g}");
    }
}

#[test]
fn frequencies_at_least_trap_frequency() {
    for n in 2..=12 {
        for d in [0.5, 1.0, 2.0, 6.0] {
            let sol = solution(n, Interaction::PowerLaw(d));
            assert!(sol.modes().unwrap().frequencies.iter().all(|&v| v >= 1.0 - 1e-12));
        }
    }
}

#[test]
fn off_diagonal_suppressed_at_large_d() {
    for n in [2, 3, 5] {
        let small = solution(n, Interaction::PowerLaw(1.0));
        let large = solution(n, Interaction::PowerLaw(100.0));
        for (a, b) in small.kernels().unwrap().iter().zip(large.kernels().unwrap()) {
            assert!(b.a > a.a);
        }
    }
}

#[test]
fn delta_k_grows_with_n() {
    for d in [Interaction::LogLimit, Interaction::PowerLaw(1.0), Interaction::PowerLaw(6.0)] {
        let dk: Vec<f64> = (2..=12).map(|n| solution(n, d).spectrum().unwrap().delta_k).collect();
        assert!(dk.windows(2).all(|w| w[1] > w[0]), "{d}: {dk:?}");
    }
}

#[test]
fn hard_core_solution() {
    let sol = solution(3, Interaction::HardCoreLimit);
    assert_eq!(sol.configuration().positions, vec![-1.0, 0.0, 1.0]);
    assert_eq!(sol.spectrum().unwrap_err(), Error::InfiniteDegeneracy);
    assert_eq!(sol.kernels().unwrap_err(), Error::UnsupportedLimit);
    assert!(sol.momentum_distribution(&[0.0]).is_err());
    let rho = sol.density_profile(Placement::AutoSpacing, None).unwrap();
    assert!((rho.trapezoid() - 1.0).abs() < 1e-8);
}

#[test]
fn verify_suite_passes() {
    let checks = verify::run_all().unwrap();
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}
