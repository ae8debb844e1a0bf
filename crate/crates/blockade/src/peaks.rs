//! Local maxima of sampled curves.

use crate::error::{AppError, Result};

/// A local maximum refined by a parabola through `ln y` at the three
/// bracketing samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    /// Sample index of the raw maximum.
    pub index: usize,
    /// Interpolated coordinate of the maximum.
    pub coord: f64,
    /// Sampled value at `index`.
    pub value: f64,
}

/// Vertex of the parabola through three points, or `None` when they are
/// collinear.
fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> Option<f64> {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let curvature = (d2 - d1) / (x[2] - x[0]);
    if !(curvature < 0.0) {
        return None;
    }
    // y' = d1 + curvature (2x − x0 − x1) = 0
    Some(0.5 * (x[0] + x[1] - d1 / curvature))
}

/// Finds interior samples strictly above the left neighbour and not below
/// the right one, sorted by coordinate.
///
/// Each peak is refined on `ln y` when all three values are positive, and on
/// `y` otherwise; the refined coordinate is clamped to the bracketing
/// interval. `NaN` samples never form or bracket a peak.
pub fn find_peaks(coords: &[f64], values: &[f64]) -> Result<Vec<Peak>> {
    if coords.len() != values.len() {
        return Err(AppError::Usage(format!("{} coordinates but {} values", coords.len(), values.len())));
    }
    if coords.len() < 3 {
        return Err(AppError::Usage("peak finding needs at least 3 samples".into()));
    }
    let mut peaks = Vec::new();
    for k in 1..values.len() - 1 {
        let (l, c, r) = (values[k - 1], values[k], values[k + 1]);
        if !(c > l && c >= r) {
            continue;
        }
        let x = [coords[k - 1], coords[k], coords[k + 1]];
        let y = if l > 0.0 && r > 0.0 { [l.ln(), c.ln(), r.ln()] } else { [l, c, r] };
        let coord = parabola_vertex(x, y).map_or(x[1], |v| v.clamp(x[0].min(x[2]), x[0].max(x[2])));
        peaks.push(Peak { index: k, coord, value: c });
    }
    peaks.sort_by(|a, b| a.coord.total_cmp(&b.coord));
    Ok(peaks)
}

/// Peaks whose height is at least `fraction` of the largest sample.
pub fn prominent_peaks(coords: &[f64], values: &[f64], fraction: f64) -> Result<Vec<Peak>> {
    let top = values.iter().copied().filter(|v| v.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    Ok(find_peaks(coords, values)?.into_iter().filter(|p| p.value >= fraction * top).collect())
}
