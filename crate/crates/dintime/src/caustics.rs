//! Caustic envelopes of the ray family ξ_n = const and ridge extraction
//! from computed intensity patterns.
//!
//! Treating the discrete ray index as continuous, the stationary point of
//! ξ(k) = −k²t/2 + k·(x − edge)·(−side) eliminates k and leaves the envelope
//! (x − edge)² = 2·level·t: parabolas (in the (x, t²)-sense) apexed at each
//! discontinuity.

use crate::domain::SpaceTimeIntensity;
use crate::error::{Error, Result};

/// A family of caustic parabolas sharing one generating edge.
#[derive(Debug, Clone)]
pub struct CausticFamily {
    pub edge: f64,
    /// +1 for envelopes opening toward +x, −1 toward −x.
    pub side: f64,
    pub levels: Vec<f64>,
}

impl CausticFamily {
    pub fn new(edge: f64, side: f64, levels: Vec<f64>) -> Result<Self> {
        if side != 1.0 && side != -1.0 {
            return Err(Error::Validation(format!("side must be ±1, got {side}")));
        }
        if levels.is_empty()
            || !levels.iter().all(|l| *l > 0.0)
            || !levels.windows(2).all(|w| w[0] < w[1])
        {
            return Err(Error::Validation(
                "levels must be strictly positive and ascending".into(),
            ));
        }
        Ok(CausticFamily { edge, side, levels })
    }
}

/// Intensity ridge locations per time row (ragged: one list per time).
#[derive(Debug, Clone)]
pub struct RidgeSet {
    pub times: Vec<f64>,
    pub positions: Vec<Vec<f64>>,
}

/// Envelope position x(t) = edge + side·√(2·level·t).
pub fn caustic_parabola(edge: f64, side: f64, level: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("caustic_parabola requires t > 0, got {t}")));
    }
    if !(level > 0.0) {
        return Err(Error::Domain(format!("caustic_parabola requires level > 0, got {level}")));
    }
    Ok(edge + side * (2.0 * level * t).sqrt())
}

/// SL(2) generalization: eliminating k from ξ(k) = k²AB/2 + kA(x−edge)·(−side)
/// gives (A(x−edge))² = 2·level·A·B, i.e. x = edge + side·√(2·level·B/A).
pub fn caustic_sl2(edge: f64, side: f64, level: f64, a: f64, b: f64) -> Result<f64> {
    if !(level > 0.0) {
        return Err(Error::Domain(format!("caustic_sl2 requires level > 0, got {level}")));
    }
    if !(b / a > 0.0) {
        return Err(Error::Domain(format!(
            "caustic_sl2 requires B/A > 0, got A = {a}, B = {b}"
        )));
    }
    Ok(edge + side * (2.0 * level * b / a).sqrt())
}

/// Strict local maxima of each intensity row inside `window`, refined to
/// sub-grid accuracy with a 3-point parabolic fit.
pub fn ridge_extract(pattern: &SpaceTimeIntensity, window: (f64, f64)) -> Result<RidgeSet> {
    let g = &pattern.grid;
    let (lo, hi) = window;
    if lo >= hi || lo < g.x_min || hi > g.x_max {
        return Err(Error::Validation(format!(
            "window [{lo}, {hi}] outside grid [{}, {}]",
            g.x_min, g.x_max
        )));
    }
    let dx = g.dx();
    let i_lo = ((lo - g.x_min) / dx).ceil() as usize;
    let i_hi = ((hi - g.x_min) / dx).floor() as usize;
    let mut positions = Vec::with_capacity(pattern.times.len());
    for row in &pattern.values {
        let mut ridges = Vec::new();
        for i in i_lo.max(1)..=i_hi.min(g.n_points - 2) {
            let (a, b, c) = (row[i - 1], row[i], row[i + 1]);
            if b > a && b > c {
                let denom = a - 2.0 * b + c;
                let off = if denom != 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
                ridges.push(g.point(i) + off * dx);
            }
        }
        positions.push(ridges);
    }
    Ok(RidgeSet { times: pattern.times.clone(), positions })
}

/// Per time row, keep only the maximum whose phase level (x−edge)²/(2t) is
/// nearest `level` — follows one member of the caustic family through the
/// pattern. Rows with no maxima are dropped.
pub fn select_ridge_by_level(ridge: &RidgeSet, edge: f64, level: f64) -> RidgeSet {
    let mut times = Vec::new();
    let mut positions = Vec::new();
    for (&t, row) in ridge.times.iter().zip(&ridge.positions) {
        if row.is_empty() {
            continue;
        }
        let best = row
            .iter()
            .copied()
            .min_by(|a, b| {
                let la = ((a - edge).powi(2) / (2.0 * t) - level).abs();
                let lb = ((b - edge).powi(2) / (2.0 * t) - level).abs();
                la.partial_cmp(&lb).unwrap()
            })
            .unwrap();
        times.push(t);
        positions.push(vec![best]);
    }
    RidgeSet { times, positions }
}

/// Least-squares fit of (x − edge)² = 2·level·t over every ridge point.
/// Returns (level, R²). `side` only validates that the points lie on the
/// claimed side of the edge.
pub fn fit_parabola(ridge: &RidgeSet, edge: f64, side: f64) -> Result<(f64, f64)> {
    let pts = flatten(ridge);
    if pts.len() < 5 {
        return Err(Error::Validation(format!(
            "fit_parabola needs at least 5 ridge points, got {}",
            pts.len()
        )));
    }
    let t0 = pts[0].0;
    if pts.iter().all(|(t, _)| *t == t0) {
        return Err(Error::Validation("degenerate fit: all ridge times equal".into()));
    }
    if pts.iter().any(|(_, x)| (x - edge) * side < 0.0) {
        return Err(Error::Validation(
            "ridge points lie on the wrong side of the edge".into(),
        ));
    }
    let (mut sty, mut stt) = (0.0, 0.0);
    for (t, x) in &pts {
        let y = (x - edge).powi(2);
        sty += t * y;
        stt += t * t;
    }
    let level = sty / (2.0 * stt);
    let mean_y = pts.iter().map(|(_, x)| (x - edge).powi(2)).sum::<f64>() / pts.len() as f64;
    let (mut ssr, mut sst) = (0.0, 0.0);
    for (t, x) in &pts {
        let y = (x - edge).powi(2);
        ssr += (y - 2.0 * level * t).powi(2);
        sst += (y - mean_y).powi(2);
    }
    let r2 = if sst > 0.0 { 1.0 - ssr / sst } else { 1.0 };
    Ok((level, r2))
}

/// Sum-of-squares residuals of the ridge trajectory against the parabolic
/// model x = edge + side·√(2·level·t) and against the best straight line
/// x = a + b·t. The ratio linear/parabolic quantifies how non-classical
/// (non-ballistic) the ridge is.
pub fn model_residuals(ridge: &RidgeSet, edge: f64, side: f64, level: f64) -> Result<(f64, f64)> {
    let pts = flatten(ridge);
    if pts.len() < 5 {
        return Err(Error::Validation("model_residuals needs at least 5 ridge points".into()));
    }
    let n = pts.len() as f64;
    let parabolic: f64 = pts
        .iter()
        .map(|(t, x)| (edge + side * (2.0 * level * t).sqrt() - x).powi(2))
        .sum();
    let (st, sx, stt, stx) = pts.iter().fold((0.0, 0.0, 0.0, 0.0), |(st, sx, stt, stx), (t, x)| {
        (st + t, sx + x, stt + t * t, stx + t * x)
    });
    let denom = n * stt - st * st;
    if denom == 0.0 {
        return Err(Error::Validation("degenerate fit: all ridge times equal".into()));
    }
    let b = (n * stx - st * sx) / denom;
    let a = (sx - b * st) / n;
    let linear: f64 = pts.iter().map(|(t, x)| (a + b * t - x).powi(2)).sum();
    Ok((parabolic, linear))
}

fn flatten(ridge: &RidgeSet) -> Vec<(f64, f64)> {
    ridge
        .times
        .iter()
        .zip(&ridge.positions)
        .flat_map(|(&t, row)| row.iter().map(move |&x| (t, x)))
        .collect()
}
