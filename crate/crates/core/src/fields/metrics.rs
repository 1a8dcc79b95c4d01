//! Field error metrics.

use super::field::{VectorField2D, VectorField3D};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ErrorMetrics {
    /// ‖a − b‖₂ / ‖a‖₂
    pub l2_relative: f64,
    /// max pointwise |a − b|
    pub linf: f64,
    /// linf / max pointwise |a|
    pub linf_relative: f64,
}

fn finish(num: f64, den: f64, linf: f64, peak: f64) -> ErrorMetrics {
    let l2_relative = if den == 0.0 {
        if num == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (num / den).sqrt()
    };
    let linf_relative = if peak > 0.0 { linf / peak } else if linf == 0.0 { 0.0 } else { f64::INFINITY };
    ErrorMetrics { l2_relative, linf, linf_relative }
}

/// Compares `b` against the reference `a`, ignoring nodes within `border`
/// cells of the grid edge.
pub fn error_metrics(a: &VectorField2D, b: &VectorField2D, border: usize) -> ErrorMetrics {
    assert_eq!(a.n, b.n, "grids differ");
    let n = a.n;
    let (mut num, mut den, mut linf, mut peak) = (0.0, 0.0, 0.0f64, 0.0f64);
    for iy in border..n.saturating_sub(border) {
        for ix in border..n.saturating_sub(border) {
            let i = iy * n + ix;
            let d2 = (a.u[i] - b.u[i]).powi(2) + (a.v[i] - b.v[i]).powi(2);
            num += d2;
            let a2 = a.u[i].powi(2) + a.v[i].powi(2);
            den += a2;
            peak = peak.max(a2.sqrt());
            linf = linf.max(d2.sqrt());
        }
    }
    finish(num, den, linf, peak)
}

pub fn error_metrics_3d(a: &VectorField3D, b: &VectorField3D) -> ErrorMetrics {
    assert_eq!(a.n, b.n, "grids differ");
    let (mut num, mut den, mut linf, mut peak) = (0.0, 0.0, 0.0f64, 0.0f64);
    for i in 0..a.comps[0].len() {
        let d2: f64 = (0..3).map(|c| (a.comps[c][i] - b.comps[c][i]).powi(2)).sum();
        num += d2;
        let a2 = (0..3).map(|c| a.comps[c][i].powi(2)).sum::<f64>();
        den += a2;
        peak = peak.max(a2.sqrt());
        linf = linf.max(d2.sqrt());
    }
    finish(num, den, linf, peak)
}
