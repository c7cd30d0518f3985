//! Grids, discontinuous initial conditions, complex fields and space-time
//! intensity containers shared by every solver.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform spatial grid on `[x_min, x_max]`, natural units (ħ = m = 1).
///
/// In non-periodic mode the grid includes both endpoints and
/// `dx = (x_max - x_min)/(n_points - 1)`; in periodic mode the right endpoint
/// is excluded and `dx = (x_max - x_min)/n_points`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub periodic: bool,
}

impl SpaceGrid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        Self::build(x_min, x_max, n_points, false)
    }

    pub fn new_periodic(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        Self::build(x_min, x_max, n_points, true)
    }

    fn build(x_min: f64, x_max: f64, n_points: usize, periodic: bool) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(Error::Validation(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 8 {
            return Err(Error::Validation(format!(
                "grid needs at least 8 points, got {n_points}"
            )));
        }
        Ok(SpaceGrid { x_min, x_max, n_points, periodic })
    }

    pub fn dx(&self) -> f64 {
        let denom = if self.periodic { self.n_points } else { self.n_points - 1 };
        (self.x_max - self.x_min) / denom as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }
}

/// Localized reference profile shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Square,
    Gaussian,
    Triangular,
}

/// One localized pulse: center x_j, width l_j, profile shape and edge
/// smoothing ε (ε = 0 means an ideal discontinuity; for ε > 0 the square
/// profile is ½[tanh((x−x_j+l_j/2)/ε) − tanh((x−x_j−l_j/2)/ε)]).
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSpec {
    pub center: f64,
    pub width: f64,
    pub profile: Profile,
    pub smoothing: f64,
}

impl PulseSpec {
    pub fn new(center: f64, width: f64, profile: Profile, smoothing: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::Validation(format!("pulse width must be > 0, got {width}")));
        }
        if !(smoothing >= 0.0) {
            return Err(Error::Validation(format!("smoothing must be >= 0, got {smoothing}")));
        }
        Ok(PulseSpec { center, width, profile, smoothing })
    }

    /// Unit square packet of width 1 centered at the origin with ideal edges.
    pub fn unit_square() -> Self {
        PulseSpec { center: 0.0, width: 1.0, profile: Profile::Square, smoothing: 0.0 }
    }

    /// Profile amplitude at `x`. An ideal square edge sample evaluates to ½,
    /// matching the Fourier-series value at the jump.
    pub fn eval(&self, x: f64) -> f64 {
        let u = x - self.center;
        let half = self.width / 2.0;
        match self.profile {
            Profile::Square => {
                if self.smoothing > 0.0 {
                    0.5 * (((u + half) / self.smoothing).tanh()
                        - ((u - half) / self.smoothing).tanh())
                } else if u.abs() < half {
                    1.0
                } else if u.abs() == half {
                    0.5
                } else {
                    0.0
                }
            }
            // ±3σ spans the width.
            Profile::Gaussian => {
                let sigma = self.width / 6.0;
                (-u * u / (2.0 * sigma * sigma)).exp()
            }
            Profile::Triangular => (1.0 - 2.0 * u.abs() / self.width).max(0.0),
        }
    }

    /// Half-width of the interval outside of which the profile is negligible.
    pub(crate) fn support_halfwidth(&self) -> f64 {
        // tanh and Gaussian tails below ~1e-14 past the padding used here.
        self.width / 2.0 + 17.0 * self.smoothing
    }
}

/// Superposition of amplitude-weighted pulses.
#[derive(Debug, Clone)]
pub struct InitialCondition {
    pub pulses: Vec<PulseSpec>,
    pub amplitudes: Vec<Complex64>,
}

impl InitialCondition {
    pub fn new(pulses: Vec<PulseSpec>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if pulses.is_empty() || pulses.len() != amplitudes.len() {
            return Err(Error::Validation(
                "need one amplitude per pulse and at least one pulse".into(),
            ));
        }
        let ic = InitialCondition { pulses, amplitudes };
        ic.check_overlap()?;
        Ok(ic)
    }

    /// The unit square packet with amplitude 1.
    pub fn unit_square() -> Self {
        InitialCondition {
            pulses: vec![PulseSpec::unit_square()],
            amplitudes: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// Ideal (ε = 0) pulse supports must be pairwise disjoint.
    pub(crate) fn check_overlap(&self) -> Result<()> {
        for i in 0..self.pulses.len() {
            for j in (i + 1)..self.pulses.len() {
                let (a, b) = (&self.pulses[i], &self.pulses[j]);
                if a.smoothing > 0.0 || b.smoothing > 0.0 {
                    continue;
                }
                let gap = (a.center - b.center).abs() - (a.width + b.width) / 2.0;
                if gap < 0.0 {
                    return Err(Error::Validation(format!(
                        "ideal pulses {i} and {j} overlap (gap {gap:.3e})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.pulses
            .iter()
            .zip(&self.amplitudes)
            .map(|(p, a)| a * p.eval(x))
            .sum()
    }

    /// Interval containing the (numerical) support of every pulse.
    pub fn support(&self) -> (f64, f64) {
        let lo = self
            .pulses
            .iter()
            .map(|p| p.center - p.support_halfwidth())
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .pulses
            .iter()
            .map(|p| p.center + p.support_halfwidth())
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }
}

/// Complex amplitude samples on a grid — the state evolved by every method.
#[derive(Debug, Clone)]
pub struct WaveField {
    pub grid: SpaceGrid,
    pub samples: Vec<Complex64>,
}

impl WaveField {
    pub fn new(grid: SpaceGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.n_points {
            return Err(Error::Validation(format!(
                "sample count {} does not match grid size {}",
                samples.len(),
                grid.n_points
            )));
        }
        Ok(WaveField { grid, samples })
    }

    /// Σ|ψᵢ|²·dx.
    pub fn norm_sq(&self) -> f64 {
        self.samples.iter().map(|c| c.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    /// Rescale to unit L² norm.
    pub fn normalized(mut self) -> Self {
        let n = self.norm_sq().sqrt();
        if n > 0.0 {
            for s in &mut self.samples {
                *s /= n;
            }
        }
        self
    }
}

/// |ψ|² over a (t, x) lattice — the diffraction pattern artifact.
#[derive(Debug, Clone)]
pub struct SpaceTimeIntensity {
    pub times: Vec<f64>,
    pub grid: SpaceGrid,
    pub values: Vec<Vec<f64>>,
}

impl SpaceTimeIntensity {
    pub fn new(times: Vec<f64>, grid: SpaceGrid, values: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Validation("one intensity row per time required".into()));
        }
        if !times.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Validation("times must be strictly increasing".into()));
        }
        for row in &values {
            if row.len() != grid.n_points {
                return Err(Error::Validation("row length must match grid".into()));
            }
            if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::Numerical("intensity entries must be finite and >= 0".into()));
            }
        }
        Ok(SpaceTimeIntensity { times, grid, values })
    }
}

/// Sample an initial condition on a grid.
///
/// Requires at least 16 samples per pulse width and rejects overlapping ideal
/// pulses. An ideal square pulse gives exactly 1 inside, 0 outside and ½ at a
/// sample landing exactly on an edge.
pub fn assemble(ic: &InitialCondition, grid: &SpaceGrid) -> Result<WaveField> {
    ic.check_overlap()?;
    let dx = grid.dx();
    for (j, p) in ic.pulses.iter().enumerate() {
        if p.width / dx < 16.0 {
            return Err(Error::Resolution(format!(
                "pulse {j} has {:.1} samples per width; need at least 16",
                p.width / dx
            )));
        }
        if p.center - p.width / 2.0 < grid.x_min || p.center + p.width / 2.0 > grid.x_max {
            return Err(Error::Validation(format!("pulse {j} extends outside the grid")));
        }
    }
    let samples = grid.points().iter().map(|&x| ic.eval(x)).collect();
    WaveField::new(grid.clone(), samples)
}

/// Elementwise |ψᵢ|².
pub fn intensity(field: &WaveField) -> Vec<f64> {
    field.samples.iter().map(|c| c.norm_sqr()).collect()
}

/// sqrt(Σ|aᵢ−bᵢ|²·dx). Symmetric; zero iff the samples are identical.
pub fn l2_distance(a: &WaveField, b: &WaveField) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::Validation("l2_distance requires identical grids".into()));
    }
    let s: f64 = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    Ok((s * a.grid.dx()).sqrt())
}
