use rayon::prelude::*;
use wigmol_core::observables::default_k_grid;
use wigmol_core::{
    physical_centers, HarmonicSolution, Interaction, Placement, SampledFunction, SolverOptions, SystemSpec,
};

use crate::args::{parse_grid, Resolved};
use crate::table::{Cell, Table};
use crate::CliError;

/// Above this excess the chain counts as strongly correlated.
const CRITICAL_DELTA_K: f64 = 0.2;

#[derive(Debug, Clone)]
pub enum Task {
    Equilibrium { g: Option<f64>, d_aux: Option<f64> },
    Modes,
    Kernel,
    Spectrum,
    ScanK,
    Density { placement: Placement, grid: Option<Vec<f64>> },
    Momentum { grid: Vec<f64> },
}

impl Task {
    pub fn density(
        resolved: &Resolved,
        g: Option<f64>,
        d_aux: Option<f64>,
        spacing: Option<f64>,
        x: Option<&str>,
    ) -> Result<Task, CliError> {
        let c = &resolved.config;
        let g = g.or(c.g);
        let spacing = spacing.or(c.spacing);
        let placement = match (g, spacing) {
            (Some(_), Some(_)) => return Err(CliError::Usage("--g and --spacing are mutually exclusive".into())),
            (Some(g), None) => Placement::Physical { g, d_aux: d_aux.or(c.d_aux) },
            (None, Some(s)) => Placement::Spacing(s),
            (None, None) => Placement::AutoSpacing,
        };
        let grid = x.or(c.x.as_deref()).map(parse_grid).transpose()?;
        Ok(Task::Density { placement, grid })
    }

    pub fn momentum(resolved: &Resolved, k: Option<&str>) -> Result<Task, CliError> {
        let grid = match k.or(resolved.config.k.as_deref()) {
            Some(text) => parse_grid(text)?,
            None => default_k_grid(),
        };
        Ok(Task::Momentum { grid })
    }

    fn table(&self, sol: &HarmonicSolution) -> wigmol_core::Result<Table> {
        let mut t;
        match self {
            Task::Equilibrium { g, d_aux } => {
                let config = sol.configuration();
                let positions = match g {
                    Some(g) => physical_centers(config, sol.spec(), *g, *d_aux)?,
                    None => config.positions.clone(),
                };
                t = Table::new(&["site", "position"]);
                for (i, p) in positions.into_iter().enumerate() {
                    t.rows.push(vec![Cell::Int(i as i64 + 1), Cell::Float(p)]);
                }
            }
            Task::Modes => {
                t = Table::new(&["mode", "frequency"]);
                for (i, v) in sol.modes()?.frequencies.iter().enumerate() {
                    t.rows.push(vec![Cell::Int(i as i64), Cell::Float(*v)]);
                }
            }
            Task::Kernel => {
                t = Table::new(&["site", "center", "A", "a", "b", "eta", "y", "lambda0"]);
                for k in sol.kernels()? {
                    t.rows.push(vec![
                        Cell::Int(k.site as i64),
                        Cell::Float(k.center),
                        Cell::Float(k.amplitude),
                        Cell::Float(k.a),
                        Cell::Float(k.b),
                        Cell::Float(k.eta),
                        Cell::Float(k.y),
                        Cell::Float(k.lambda0()),
                    ]);
                }
            }
            Task::Spectrum => {
                t = Table::new(&["site", "l", "lambda"]);
                for (site, ladder) in sol.spectrum()?.ladders.iter().enumerate() {
                    for (l, lambda) in ladder.iter().enumerate() {
                        t.rows.push(vec![Cell::Int(site as i64 + 1), Cell::Int(l as i64), Cell::Float(*lambda)]);
                    }
                }
            }
            Task::ScanK => {
                let (k, dk) = match sol.spectrum() {
                    Ok(s) => (s.k, s.delta_k),
                    // every occupancy vanishes: the correlation degree diverges
                    Err(_) if sol.spec().interaction().is_hard_core() => (f64::INFINITY, f64::INFINITY),
                    Err(e) => return Err(e),
                };
                t = Table::new(&["n", "d", "K", "delta_K"]);
                t.rows.push(vec![
                    Cell::Int(sol.spec().n() as i64),
                    Cell::Text(sol.spec().interaction().to_string()),
                    Cell::Float(k),
                    Cell::Float(dk),
                ]);
            }
            Task::Density { placement, grid } => {
                t = sampled(&sol.density_profile(*placement, grid.as_deref())?);
            }
            Task::Momentum { grid } => {
                t = sampled(&sol.momentum_distribution(grid)?);
            }
        }
        Ok(t)
    }
}

fn sampled(f: &SampledFunction) -> Table {
    let mut t = Table::new(&["abscissa", "value"]);
    t.rows.extend(f.iter().map(|(x, v)| vec![Cell::Float(x), Cell::Float(v)]));
    t
}

/// Evaluates every (N, d) combination, in parallel, and stitches the tables
/// together in sorted order.
pub fn run(task: &Task, resolved: &Resolved) -> Result<Table, CliError> {
    let combos: Vec<(usize, Interaction)> = resolved
        .n_list
        .iter()
        .flat_map(|&n| resolved.d_list.iter().map(move |&i| (n, i)))
        .collect();
    let tail_tol = resolved.tail_tol;
    let tables: Vec<Result<Table, CliError>> = combos
        .par_iter()
        .map(|&(n, i)| {
            let spec = SystemSpec::new(n, i)?;
            let sol = HarmonicSolution::compute_with(&spec, SolverOptions::default(), tail_tol)
                .map_err(|e| CliError::for_system(e, n, i))?;
            task.table(&sol).map_err(|e| CliError::for_system(e, n, i))
        })
        .collect();

    let multi = combos.len() > 1 && !matches!(task, Task::ScanK);
    let mut merged: Option<Table> = None;
    for ((n, i), table) in combos.iter().zip(tables) {
        let mut table = table?;
        if multi {
            table.prepend(&["n", "d"], &[Cell::Int(*n as i64), Cell::Text(i.to_string())]);
        }
        match merged.as_mut() {
            Some(m) => m.extend(table),
            None => merged = Some(table),
        }
    }
    let merged = merged.expect("particle and exponent lists are nonempty");
    if matches!(task, Task::ScanK) {
        report_critical_n(&merged, resolved);
    }
    Ok(merged)
}

/// Smallest scanned N whose logarithmic-limit excess passes the threshold.
/// Informational only, on the error stream.
fn report_critical_n(table: &Table, resolved: &Resolved) {
    if !resolved.d_list.contains(&Interaction::LogLimit) {
        return;
    }
    let hit = table.rows.iter().find_map(|row| match row.as_slice() {
        [Cell::Int(n), Cell::Text(d), _, Cell::Float(dk)] if d == "log" && *dk > CRITICAL_DELTA_K => Some(*n),
        _ => None,
    });
    let max_n = resolved.n_list.last().copied().unwrap_or(0);
    match hit {
        Some(n) => eprintln!("N_cr (d -> 0, delta_K > {CRITICAL_DELTA_K}): {n}"),
        None => eprintln!("N_cr (d -> 0, delta_K > {CRITICAL_DELTA_K}): not reached for N <= {max_n}"),
    }
}

pub fn verify() -> Result<(Table, bool), CliError> {
    let checks = wigmol_core::verify::run_all().map_err(CliError::from)?;
    let mut t = Table::new(&["check", "passed", "error", "tolerance"]);
    let mut all = true;
    for c in checks {
        all &= c.passed;
        t.rows.push(vec![
            Cell::Text(c.name),
            Cell::Text(if c.passed { "pass" } else { "fail" }.into()),
            Cell::Float(c.error),
            Cell::Float(c.tolerance),
        ]);
    }
    Ok((t, all))
}
