//! Closed-form reference solutions and the brute-force propagator quadrature
//! oracle. The quadrature arbitrates every sign ambiguity elsewhere: any
//! formula-level result in the other modules is validated against it.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

use crate::domain::InitialCondition;
use crate::error::{Error, Result};
use crate::specfun::erf_complex;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which Gaussian propagator to integrate against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PropagatorKind {
    Free,
    Harmonic,
}

#[derive(Debug, Clone, Copy)]
pub struct PropagatorParams {
    pub kind: PropagatorKind,
    /// Trap frequency; only used by the harmonic kernel.
    pub omega: f64,
    pub t: f64,
}

impl PropagatorParams {
    pub fn free(t: f64) -> Result<Self> {
        Self::new(PropagatorKind::Free, 0.0, t)
    }

    pub fn harmonic(omega: f64, t: f64) -> Result<Self> {
        Self::new(PropagatorKind::Harmonic, omega, t)
    }

    fn new(kind: PropagatorKind, omega: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("propagator requires t > 0, got {t}")));
        }
        if kind == PropagatorKind::Harmonic {
            if !(omega >= 0.0) {
                return Err(Error::Domain(format!("omega must be >= 0, got {omega}")));
            }
            // Focal singularities of the harmonic kernel at omega*t = n*pi.
            let phase = omega * t / PI;
            if (phase - phase.round()).abs() < 1e-9 && phase.round() >= 1.0 {
                return Err(Error::Domain(format!(
                    "harmonic propagator focal singularity: omega*t = {:.6} pi",
                    phase
                )));
            }
        }
        Ok(PropagatorParams { kind, omega, t })
    }
}

/// ψ(x,t) = ½Erf[−e^{−iπ/4}(x−½)/√(2t)] − ½Erf[−e^{−iπ/4}(x+½)/√(2t)]
/// for the unit square packet released at t = 0.
pub fn exact_square_packet(x: f64, t: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "exact_square_packet requires t > 0, got {t}"
        )));
    }
    let root = Complex64::from_polar(1.0, -FRAC_PI_4);
    let scale = root / (2.0 * t).sqrt();
    let a = erf_complex(-scale * (x - 0.5))?;
    let b = erf_complex(-scale * (x + 0.5))?;
    Ok(0.5 * (a - b))
}

fn kernel(params: &PropagatorParams, x: f64, xp: f64) -> Complex64 {
    let t = params.t;
    match params.kind {
        PropagatorKind::Free => {
            // sqrt(1/(2 i pi t)) = e^{-i pi/4}/sqrt(2 pi t)
            let amp = Complex64::from_polar(1.0 / (2.0 * PI * t).sqrt(), -FRAC_PI_4);
            let d = x - xp;
            amp * (I * d * d / (2.0 * t)).exp()
        }
        PropagatorKind::Harmonic => {
            let w = params.omega;
            if w == 0.0 {
                return kernel(&PropagatorParams { kind: PropagatorKind::Free, ..*params }, x, xp);
            }
            let s = (w * t).sin();
            let c = (w * t).cos();
            // Branch of sqrt(omega/(2 pi i sin)) fixed by continuity from
            // t -> 0+ (Maslov phase); foci are excluded by construction, and
            // within each branch sector the phase is -pi/4 - floor(wt/pi)*pi/2.
            let sector = (w * t / PI).floor();
            let amp = Complex64::from_polar(
                (w / (2.0 * PI * s.abs())).sqrt(),
                -FRAC_PI_4 - sector * std::f64::consts::FRAC_PI_2,
            );
            amp * (I * w * ((x * x + xp * xp) * c - 2.0 * x * xp) / (2.0 * s)).exp()
        }
    }
}

/// Composite midpoint rule for ∫ K(x,x')ψ₀(x')dx' over [lo, hi] with n panels.
fn midpoint(
    ic: &InitialCondition,
    params: &PropagatorParams,
    x: f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Complex64 {
    let h = (hi - lo) / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let xp = lo + (j as f64 + 0.5) * h;
        acc += kernel(params, x, xp) * ic.eval(xp);
    }
    acc * h
}

/// THE ORACLE: Richardson-extrapolated composite midpoint quadrature of
/// ∫K(x,x';t,0)ψ₀(x')dx' over the initial condition's support, converged to
/// 1e−9. Slow but independent of every closed-form expression in the crate.
pub fn propagator_quadrature(
    ic: &InitialCondition,
    params: &PropagatorParams,
    x: f64,
) -> Result<Complex64> {
    const TOL: f64 = 1e-9;
    const MAX_LEVELS: usize = 14;

    let (lo, hi) = ic.support();
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Validation("initial condition must have compact support".into()));
    }

    // Richardson table over n = 256 * 2^k midpoint panels; the midpoint rule
    // has an even error expansion, so each column gains two orders.
    let mut table: Vec<Vec<Complex64>> = Vec::new();
    let mut n = 256usize;
    for k in 0..MAX_LEVELS {
        let mut row = vec![midpoint(ic, params, x, lo, hi, n)];
        for j in 1..=k {
            let f = 4f64.powi(j as i32);
            let v = (f * row[j - 1] - table[k - 1][j - 1]) / (f - 1.0);
            row.push(v);
        }
        if k > 0 {
            let best = row[k];
            let prev = table[k - 1][k - 1];
            if (best - prev).norm() < TOL {
                return Ok(best);
            }
        }
        table.push(row);
        n *= 2;
    }
    let last = table[MAX_LEVELS - 1][MAX_LEVELS - 1];
    let prev = table[MAX_LEVELS - 2][MAX_LEVELS - 2];
    Err(Error::Accuracy {
        context: format!("propagator_quadrature did not converge at x = {x}"),
        residual: (last - prev).norm(),
    })
}

/// Harmonic-oscillator solution from the free one through the lens relation
///
///   ψ_harm(x,t) = (1/√A)·e^{iCx²/(2A)}·ψ_free(x/A, B/A),
///
/// with A = cos ωt, B = sin(ωt)/ω, C = −ω sin ωt. Both propagators are
/// Gaussians; completing the square in the harmonic kernel and using
/// AD − BC = 1 reduces it to the free kernel at rescaled arguments. The
/// derived phase is validated against `propagator_quadrature` in the tests.
/// Valid before the first focal region (ωt < π/2, where B/A > 0).
pub fn harmonic_from_free(x: f64, t: f64, omega: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("harmonic_from_free requires t > 0, got {t}")));
    }
    if omega == 0.0 {
        return exact_square_packet(x, t);
    }
    let a = (omega * t).cos();
    if a.abs() < 1e-9 {
        return Err(Error::Domain(format!(
            "harmonic_from_free: focal singularity, cos(omega t) = {a:.3e}"
        )));
    }
    let b = (omega * t).sin() / omega;
    if b / a <= 0.0 {
        return Err(Error::Domain(
            "harmonic_from_free: only valid before the first focus (omega t < pi/2)".into(),
        ));
    }
    let c = -omega * (omega * t).sin();
    let phase = (I * c * x * x / (2.0 * a)).exp();
    Ok(phase / a.sqrt() * exact_square_packet(x / a, b / a)?)
}
