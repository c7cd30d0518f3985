//! Command-line front end: runs the experiments end-to-end and writes
//! portable CSV / 16-bit PGM artifacts. Outputs are deterministic — the
//! whole pipeline is sequential with fixed summation order, so identical
//! specs produce byte-identical files.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::PathBuf;

use crate::caustics;
use crate::domain::{
    assemble, intensity, InitialCondition, Profile, PulseSpec, SpaceGrid, SpaceTimeIntensity,
    WaveField,
};
use crate::error::{Error, Result};
use crate::exact;
use crate::io;
use crate::pde;
use crate::replication;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    Free,
    Sl2,
    Squeeze,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Square,
    Gaussian,
    Triangular,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Square => Profile::Square,
            ProfileArg::Gaussian => Profile::Gaussian,
            ProfileArg::Triangular => Profile::Triangular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Pgm,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Replicate,
    Gpe,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = -2.0)]
    pub xmin: f64,
    #[arg(long, default_value_t = 2.0)]
    pub xmax: f64,
    #[arg(long, default_value_t = 401)]
    pub nx: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TimeArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub tmin: f64,
    #[arg(long, default_value_t = 5e-2)]
    pub tmax: f64,
    #[arg(long, default_value_t = 25)]
    pub nt: usize,
    /// Linearly spaced times (default is log spacing: pattern detail lives
    /// at small t).
    #[arg(long, default_value_t = false)]
    pub linear_times: bool,
}

impl TimeArgs {
    fn times(&self) -> Result<Vec<f64>> {
        if !(self.tmin > 0.0) || !(self.tmax > self.tmin) || self.nt < 2 {
            return Err(Error::Validation(format!(
                "need 0 < tmin < tmax and nt >= 2, got tmin={}, tmax={}, nt={}",
                self.tmin, self.tmax, self.nt
            )));
        }
        let n = self.nt;
        Ok((0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                if self.linear_times {
                    self.tmin + f * (self.tmax - self.tmin)
                } else {
                    (self.tmin.ln() + f * (self.tmax.ln() - self.tmin.ln())).exp()
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output path; the format extension is appended when writing both.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

/// Full experiment description; clap builds it from the command line and the
/// acceptance/CLI tests build it directly.
#[derive(Debug, Parser)]
#[command(name = "dintime", version, about = "Diffraction-in-time wavepacket experiments")]
pub struct ExperimentSpec {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Space-time intensity of the closed-form square-packet solution.
    Exact {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One time slice of a truncated replication expansion.
    Replicate {
        #[arg(long, value_enum, default_value_t = MapArg::Free)]
        map: MapArg,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        #[arg(long, default_value_t = 1e-3)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, value_enum, default_value_t = ProfileArg::Square)]
        profile: ProfileArg,
        /// Edge smoothing of the building-block profile.
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Space-time intensity of a truncated replication expansion.
    Pattern {
        #[arg(long, value_enum, default_value_t = MapArg::Free)]
        map: MapArg,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, value_enum, default_value_t = ProfileArg::Square)]
        profile: ProfileArg,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Extract the outermost intensity ridge of the exact free pattern and
    /// fit the caustic parabola.
    Caustics {
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Split-step (Gross–Pitaevskii) evolution of a smoothed square packet.
    Gpe {
        #[arg(long, default_value_t = 0.0)]
        g: f64,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Harmonic trap frequency; 0 for free evolution.
        #[arg(long, default_value_t = 0.0)]
        omega: f64,
        /// Record a trace row every this many steps.
        #[arg(long, default_value_t = 100)]
        sample_every: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate two methods on a shared grid and write an error-norm table.
    Compare {
        #[arg(long, value_enum)]
        a: MethodArg,
        #[arg(long, value_enum)]
        b: MethodArg,
        #[arg(long, default_value_t = 200)]
        nmax: usize,
        #[arg(long, default_value_t = 1e-3)]
        t: f64,
        /// Edge smoothing shared by both methods (0 = ideal square packet).
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 1e-5)]
        dt: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn write_outputs(
    pattern: &SpaceTimeIntensity,
    output: &OutputArgs,
    meta: &[String],
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let csv_path = match output.format {
        FormatArg::Csv => Some(output.out.clone()),
        FormatArg::Both => Some(output.out.with_extension("csv")),
        FormatArg::Pgm => None,
    };
    let pgm_path = match output.format {
        FormatArg::Pgm => Some(output.out.clone()),
        FormatArg::Both => Some(output.out.with_extension("pgm")),
        FormatArg::Csv => None,
    };
    if let Some(p) = csv_path {
        io::write_csv(&p, pattern, meta)?;
        written.push(p);
    }
    if let Some(p) = pgm_path {
        io::write_pgm(&p, pattern)?;
        written.push(p);
    }
    Ok(written)
}

fn exact_pattern(grid: &SpaceGrid, times: &[f64]) -> Result<SpaceTimeIntensity> {
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let row: Result<Vec<f64>> = grid
            .points()
            .iter()
            .map(|&x| Ok(exact::exact_square_packet(x, t)?.norm_sqr()))
            .collect();
        values.push(row?);
    }
    SpaceTimeIntensity::new(times.to_vec(), grid.clone(), values)
}

fn expansion_for(
    map: MapArg,
    t: f64,
    nmax: usize,
    omega: f64,
) -> Result<replication::ReplicationExpansion> {
    match map {
        MapArg::Free => replication::free_terms(t, nmax),
        MapArg::Sl2 => replication::sl2_terms(replication::SL2Coeffs::harmonic(omega, t)?, nmax),
        MapArg::Squeeze => replication::squeeze_terms(t, nmax),
    }
}

fn replication_field(
    map: MapArg,
    t: f64,
    nmax: usize,
    omega: f64,
    profile: ProfileArg,
    eps: f64,
    grid: &SpaceGrid,
) -> Result<WaveField> {
    if !(eps >= 0.0) {
        return Err(Error::Validation(format!("eps must be >= 0, got {eps}")));
    }
    let exp = expansion_for(map, t, nmax, omega)?;
    let block = PulseSpec::new(0.0, 1.0, profile.into(), eps)?;
    replication::evaluate_with_profile(&exp, grid, &block)
}

fn method_field(
    method: MethodArg,
    t: f64,
    nmax: usize,
    eps: f64,
    dt: f64,
    grid: &SpaceGrid,
) -> Result<WaveField> {
    match method {
        MethodArg::Exact => {
            // eps = 0: closed-form solution of the ideal square packet.
            // eps > 0: there is no closed form for the smoothed packet, so
            // the quadrature oracle integrates the matching initial condition.
            let samples: Result<Vec<Complex64>> = if eps == 0.0 {
                grid.points().iter().map(|&x| exact::exact_square_packet(x, t)).collect()
            } else {
                let pulse = PulseSpec::new(0.0, 1.0, Profile::Square, eps)?;
                let ic = InitialCondition::new(vec![pulse], vec![Complex64::new(1.0, 0.0)])?;
                let params = exact::PropagatorParams::free(t)?;
                grid.points()
                    .iter()
                    .map(|&x| exact::propagator_quadrature(&ic, &params, x))
                    .collect()
            };
            WaveField::new(grid.clone(), samples?)
        }
        MethodArg::Replicate => {
            // Evolved-reference (identity) form of the free expansion: the
            // term list applied to the evolved solution itself, which is the
            // exact identity that truncation approximates. The constant
            // reference instead periodizes the solution with period 2 and
            // picks up image errors near |x| = 1.
            let exp = replication::free_terms(t, nmax)?;
            let reference = move |u: f64| {
                exact::exact_square_packet(u, t).unwrap_or(Complex64::new(f64::NAN, 0.0))
            };
            replication::evaluate_with(&exp, grid, &reference)
        }
        MethodArg::Gpe => {
            // g = 0 solver on its own periodic box, sampled back onto `grid`.
            let n = 2048usize;
            let box_grid = SpaceGrid::new_periodic(-16.0, 16.0, n)?;
            let eps = eps.max(pde::min_smoothing(&box_grid));
            let pulse = PulseSpec::new(0.0, 1.0, Profile::Square, eps)?;
            let ic = InitialCondition::new(vec![pulse], vec![Complex64::new(1.0, 0.0)])?;
            let f0 = assemble(&ic, &box_grid)?;
            let steps = (t / dt).round().max(1.0) as usize;
            let cfg = pde::SolverConfig::new(t / steps as f64, steps, 0.0, pde::Potential::Free)?;
            let out = pde::split_step_evolve(&f0, &cfg)?;
            let dx = box_grid.dx();
            let samples: Result<Vec<Complex64>> = grid
                .points()
                .iter()
                .map(|&x| {
                    let i = ((x - box_grid.x_min) / dx).round() as isize;
                    if i < 0 || i as usize >= n || (box_grid.point(i as usize) - x).abs() > 1e-9 {
                        return Err(Error::Validation(format!(
                            "comparison grid point {x} is not a solver grid point"
                        )));
                    }
                    Ok(out.samples[i as usize])
                })
                .collect();
            WaveField::new(grid.clone(), samples?)
        }
    }
}

/// Execute an experiment; returns the list of files written.
pub fn run(spec: &ExperimentSpec) -> Result<Vec<PathBuf>> {
    match &spec.command {
        Command::Exact { grid, time, output } => {
            let g = SpaceGrid::new(grid.xmin, grid.xmax, grid.nx)?;
            let times = time.times()?;
            let pattern = exact_pattern(&g, &times)?;
            write_outputs(&pattern, output, &["command: exact".into()])
        }
        Command::Replicate { map, nmax, t, omega, profile, eps, grid, output } => {
            let g = SpaceGrid::new(grid.xmin, grid.xmax, grid.nx)?;
            let f = replication_field(*map, *t, *nmax, *omega, *profile, *eps, &g)?;
            let pattern = SpaceTimeIntensity::new(vec![*t], g, vec![intensity(&f)])?;
            write_outputs(
                &pattern,
                output,
                &[format!("command: replicate map={map:?} nmax={nmax} t={t}")],
            )
        }
        Command::Pattern { map, nmax, omega, profile, eps, grid, time, output } => {
            let g = SpaceGrid::new(grid.xmin, grid.xmax, grid.nx)?;
            let times = time.times()?;
            let mut values = Vec::with_capacity(times.len());
            for &t in &times {
                let f = replication_field(*map, t, *nmax, *omega, *profile, *eps, &g)?;
                values.push(intensity(&f));
            }
            let pattern = SpaceTimeIntensity::new(times, g, values)?;
            write_outputs(
                &pattern,
                output,
                &[format!("command: pattern map={map:?} nmax={nmax}")],
            )
        }
        Command::Caustics { time, output } => {
            let g = SpaceGrid::new(0.0, 7.0, 14001)?;
            let times = time.times()?;
            let pattern = exact_pattern(&g, &times)?;
            let ridges = caustics::ridge_extract(&pattern, (0.5, 6.9))?;
            // seed the level from the outermost maximum below 0.75 at t0,
            // attributed to the far edge at -1/2
            let edge = -0.5;
            let seed = ridges.positions[0]
                .iter()
                .copied()
                .filter(|&x| x <= 0.75)
                .fold(f64::NEG_INFINITY, f64::max);
            if !seed.is_finite() {
                return Err(Error::Numerical("no seed ridge found at t0".into()));
            }
            let level0 = (seed - edge).powi(2) / (2.0 * ridges.times[0]);
            let tracked = caustics::select_ridge_by_level(&ridges, edge, level0);
            let (level, r2) = caustics::fit_parabola(&tracked, edge, 1.0)?;
            let (quad, lin) = caustics::model_residuals(&tracked, edge, 1.0, level)?;
            let rows: Vec<Vec<f64>> = tracked
                .times
                .iter()
                .zip(&tracked.positions)
                .map(|(&t, r)| vec![t, r[0]])
                .collect();
            io::write_table(
                &output.out,
                &[
                    "command: caustics".into(),
                    format!("fit: edge={edge} level={level} r2={r2}"),
                    format!("residuals: parabolic={quad} linear={lin}"),
                    "columns: t, ridge_x".into(),
                ],
                &rows,
            )?;
            Ok(vec![output.out.clone()])
        }
        Command::Gpe { g, dt, steps, eps, omega, sample_every, output } => {
            let box_grid = SpaceGrid::new_periodic(-16.0, 16.0, 2048)?;
            let eps = eps.max(pde::min_smoothing(&box_grid));
            let pulse = PulseSpec::new(0.0, 1.0, Profile::Square, eps)?;
            let ic = InitialCondition::new(vec![pulse], vec![Complex64::new(1.0, 0.0)])?;
            let f0 = assemble(&ic, &box_grid)?.normalized();
            let potential = if *omega > 0.0 {
                pde::Potential::Harmonic { omega: *omega }
            } else {
                pde::Potential::Free
            };
            let cfg = pde::SolverConfig::new(*dt, *steps, *g, potential)?;
            let (_, trace) = pde::split_step_trace(&f0, &cfg, *sample_every)?;
            write_outputs(
                &trace,
                output,
                &[format!("command: gpe g={g} dt={dt} steps={steps} eps={eps}")],
            )
        }
        Command::Compare { a, b, nmax, t, eps, dt, grid, output } => {
            let g = SpaceGrid::new(grid.xmin, grid.xmax, grid.nx)?;
            let fa = method_field(*a, *t, *nmax, *eps, *dt, &g)?;
            let fb = method_field(*b, *t, *nmax, *eps, *dt, &g)?;
            let mut sup: f64 = 0.0;
            for (x, y) in fa.samples.iter().zip(&fb.samples) {
                sup = sup.max((x - y).norm());
            }
            let l2 = crate::domain::l2_distance(&fa, &fb)?;
            io::write_table(
                &output.out,
                &[
                    format!(
                        "compare: a={a:?} b={b:?} nmax={nmax} t={t} n_points={}",
                        g.n_points
                    ),
                    "columns: t, sup, l2".into(),
                ],
                &[vec![*t, sup, l2]],
            )?;
            Ok(vec![output.out.clone()])
        }
    }
}
