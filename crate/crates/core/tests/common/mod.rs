//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use divfree::fast_transform::TapKind;
use divfree::frame2d::FrameSpec2D;
use divfree::grid::{fft_nd, omega_2d, omega_3d};
use divfree::windows::{radial_window, scaling_window};
use divfree::Complex64;
use std::f64::consts::PI;

/// Samples a 2D Fourier transform on the P-periodic grid and returns the
/// inverse transform ψ(x) = (1/2π) ∫ ψ̂(ω) e^{iω·x} dω at every integer x.
/// For ψ̂ supported in [−π, π]² this is exactly the P-periodization of ψ.
pub fn periodized_2d(p: usize, hat: impl Fn([f64; 2]) -> [Complex64; 2]) -> [Vec<Complex64>; 2] {
    let mut a = vec![Complex64::new(0.0, 0.0); p * p];
    let mut b = a.clone();
    for idx in 0..p * p {
        let h = hat(omega_2d(idx, p));
        a[idx] = h[0];
        b[idx] = h[1];
    }
    let w = (2.0 * PI / p as f64).powi(2) / (2.0 * PI);
    for c in [&mut a, &mut b] {
        fft_nd(c, &[p, p], true);
        c.iter_mut().for_each(|z| *z *= w);
    }
    [a, b]
}

/// 3D analogue with ψ(x) = (2π)^{-3/2} ∫ ψ̂(ω) e^{iω·x} dω.
pub fn periodized_3d(p: usize, hat: impl Fn([f64; 3]) -> [Complex64; 3]) -> [Vec<Complex64>; 3] {
    let mut out: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); p * p * p]);
    for idx in 0..p * p * p {
        let h = hat(omega_3d(idx, p));
        for c in 0..3 {
            out[c][idx] = h[c];
        }
    }
    let w = (2.0 * PI / p as f64).powi(3) / (2.0 * PI).powf(1.5);
    for c in out.iter_mut() {
        fft_nd(c, &[p, p, p], true);
        c.iter_mut().for_each(|z| *z *= w);
    }
    out
}

pub fn wrap(i: i64, p: usize) -> usize {
    i.rem_euclid(p as i64) as usize
}

// γ_t(φ) from its rotated harmonics and e^{iφ}
fn window_at(coeffs: &[Complex64], e: Complex64) -> Complex64 {
    let n0 = (coeffs.len() / 2) as i32;
    let mut v = Complex64::new(0.0, 0.0);
    let mut pw = e.powi(-n0);
    for c in coeffs {
        v += c * pw;
        pw *= e;
    }
    v
}

/// Filter taps as a Riemann sum over a P×P frequency grid of the product
/// of the two elements' windows: radial windows in level units times the
/// angular windows evaluated pointwise. Row-major, m_y outer, |m|∞ ≤ r.
pub fn dense_taps(spec: &FrameSpec2D, j: i32, kind: TapKind, radius: usize, p: usize) -> Vec<Complex64> {
    let (ratio, lo, hi): (f64, f64, f64) = match kind {
        TapKind::Alpha => (2.0, 0.0, 0.5 * PI),
        TapKind::Beta { .. } => (1.0, 0.25 * PI, PI),
        TapKind::Gamma { .. } | TapKind::Delta { .. } => (2.0, 0.25 * PI, 0.5 * PI),
    };
    let radial = |nu: f64| match kind {
        TapKind::Alpha => scaling_window(0.5 * nu) * scaling_window(nu),
        TapKind::Beta { .. } => scaling_window(0.5 * nu) * radial_window(nu),
        TapKind::Gamma { .. } => radial_window(nu) * radial_window(2.0 * nu),
        TapKind::Delta { .. } => radial_window(nu) * scaling_window(nu),
    };
    let (wa, wb) = match kind {
        TapKind::Alpha => (vec![], vec![]),
        TapKind::Beta { t } | TapKind::Delta { t } => (spec.window(j).rotated(t), vec![]),
        TapKind::Gamma { t, t_prime } => (spec.window(j).rotated(t), spec.window(j + 1).rotated(t_prime)),
    };
    let angular = |e: Complex64| match kind {
        TapKind::Alpha => Complex64::new(1.0, 0.0),
        TapKind::Beta { .. } => window_at(&wa, e).conj(),
        TapKind::Delta { .. } => window_at(&wa, e),
        TapKind::Gamma { .. } => window_at(&wb, e) * window_at(&wa, e).conj(),
    };
    let r = radius as i64;
    let w = (2 * r + 1) as usize;
    let dnu = 2.0 * PI / p as f64;
    let kmax = (hi / dnu).ceil() as i64;
    // e^{iν m} for every in-band ν and |m| ≤ r
    let phase: Vec<Vec<Complex64>> = (-kmax..=kmax)
        .map(|k| (-r..=r).map(|m| Complex64::from_polar(1.0, k as f64 * dnu * m as f64)).collect())
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); w * w];
    let mut row = vec![Complex64::new(0.0, 0.0); w];
    for ky in -kmax..=kmax {
        row.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        let ny = ky as f64 * dnu;
        for kx in -kmax..=kmax {
            let nx = kx as f64 * dnu;
            let rho = nx.hypot(ny);
            if rho >= hi || (rho <= lo && lo > 0.0) {
                continue;
            }
            let rad = radial(rho);
            if rad == 0.0 {
                continue;
            }
            let e = if rho > 0.0 { Complex64::new(nx / rho, ny / rho) } else { Complex64::new(1.0, 0.0) };
            let f = rad * angular(e);
            for (acc, ph) in row.iter_mut().zip(&phase[(kx + kmax) as usize]) {
                *acc += f * ph;
            }
        }
        let py = &phase[(ky + kmax) as usize];
        for (my, ph) in py.iter().enumerate() {
            for mx in 0..w {
                out[my * w + mx] += row[mx] * ph;
            }
        }
    }
    let scale = ratio / (2.0 * PI).powi(2) * dnu * dnu;
    out.iter_mut().for_each(|z| *z *= scale);
    out
}
