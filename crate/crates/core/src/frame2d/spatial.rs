//! Closed-form frame elements in frequency and in space.
//!
//! Positions are in grid cells and angular frequencies in radians per cell.

use super::spec::FrameSpec2D;
use crate::error::Result;
use crate::windows::angular2d::AngularWindow2D;
use crate::windows::radial::{radial_window, scaling_window, RadialProfile};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn e_theta(omega: [f64; 2]) -> Option<[f64; 2]> {
    let r = omega[0].hypot(omega[1]);
    (r > 0.0).then(|| [omega[1] / r, -omega[0] / r])
}

/// Fourier transform of ψ_{j,k,t}.
pub fn wavelet_hat_2d(spec: &FrameSpec2D, j: i32, k: [i64; 2], t: usize, omega: [f64; 2]) -> [Complex64; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let Some(e) = e_theta(omega) else { return [zero; 2] };
    let s = spec.spacing(j) as f64;
    let rho = omega[0].hypot(omega[1]);
    let r = radial_window(s * rho);
    if r == 0.0 {
        return [zero; 2];
    }
    let phase = Complex64::from_polar(1.0, -(omega[0] * k[0] as f64 + omega[1] * k[1] as f64) * s);
    let c = -I * (s / (2.0 * PI)) * spec.window(j).eval(t, omega[1].atan2(omega[0])) * r * phase;
    [c * e[0], c * e[1]]
}

/// Fourier transform of the scaling function φ_k on the coarsest lattice.
pub fn scaling_hat_2d(spec: &FrameSpec2D, k: [i64; 2], omega: [f64; 2]) -> [Complex64; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let Some(e) = e_theta(omega) else { return [zero; 2] };
    let sl = spec.scaling_spacing() as f64;
    let g = scaling_window(spec.spacing(spec.j_min()) as f64 * omega[0].hypot(omega[1]));
    let phase = Complex64::from_polar(1.0, -(omega[0] * k[0] as f64 + omega[1] * k[1] as f64) * sl);
    let c = -I * (sl / (2.0 * PI)) * g * phase;
    [c * e[0], c * e[1]]
}

/// Mother wavelet with orientation t of `window`, at a point `y` in
/// mother coordinates.
pub fn mother_wavelet_2d(window: &AngularWindow2D, t: usize, profile: &RadialProfile, y: [f64; 2]) -> Result<[Complex64; 2]> {
    let r = y[0].hypot(y[1]);
    let theta = if r > 0.0 { y[1].atan2(y[0]) } else { 0.0 };
    let big_n = window.order() as i64;
    let h = profile.kernels_2d(big_n as usize + 1, r)?;
    let hk = |k: i64| {
        let v = h[k.unsigned_abs() as usize];
        if k < 0 && k % 2 != 0 {
            -v
        } else {
            v
        }
    };
    let beta = window.rotated(t);
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (idx, b) in beta.iter().enumerate() {
        if b.norm_sqr() == 0.0 {
            continue;
        }
        let m = idx as i64 - big_n;
        for sigma in [-1i64, 1] {
            let k = m + sigma;
            let c = 0.5 * I.powi(k as i32) * b * Complex64::from_polar(hk(k), k as f64 * theta);
            out[0] += c * (-sigma as f64);
            out[1] += c * I;
        }
    }
    Ok(out)
}

/// ψ_{j,k,t} at grid position x.
pub fn wavelet_spatial_2d(spec: &FrameSpec2D, j: i32, k: [i64; 2], t: usize, x: [f64; 2]) -> Result<[Complex64; 2]> {
    let s = spec.spacing(j) as f64;
    let y = [(x[0] - s * k[0] as f64) / s, (x[1] - s * k[1] as f64) / s];
    let m = mother_wavelet_2d(spec.window(j), t, spec.profile(), y)?;
    let c = 1.0 / (2.0 * PI * s);
    Ok([m[0] * c, m[1] * c])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_mother_is_azimuthal() {
        let p = RadialProfile::default();
        let w = AngularWindow2D::isotropic();
        for y in [[0.7, -1.3], [3.0, 2.0], [0.0, 0.2]] {
            let v = mother_wavelet_2d(&w, 0, &p, y).unwrap();
            let r = y[0].hypot(y[1]);
            let h1 = p.kernel_2d(1, r).unwrap();
            assert!((v[0].re - h1 * y[1] / r).abs() < 1e-14);
            assert!((v[1].re + h1 * y[0] / r).abs() < 1e-14);
            assert!(v[0].im.abs() < 1e-15 && v[1].im.abs() < 1e-15);
        }
        let c = mother_wavelet_2d(&w, 0, &p, [0.0, 0.0]).unwrap();
        assert!(c[0].norm() < 1e-15 && c[1].norm() < 1e-15);
    }

    #[test]
    fn hat_is_tangential() {
        let spec = FrameSpec2D::from_config(&crate::windows::FrameConfig::default_2d()).unwrap();
        for om in [[0.5, 1.2], [-2.0, 0.3], [0.01, -0.9]] {
            let v = wavelet_hat_2d(&spec, 3, [2, -1], 4, om);
            let dot = v[0] * om[0] + v[1] * om[1];
            assert!(dot.norm() <= 1e-15 * (v[0].norm() + v[1].norm()) * om[0].hypot(om[1]));
            let p = scaling_hat_2d(&spec, [1, 1], [om[0] / 16.0, om[1] / 16.0]);
            assert!((p[0] * om[0] + p[1] * om[1]).norm() < 1e-15);
        }
        assert_eq!(wavelet_hat_2d(&spec, 3, [0, 0], 0, [0.0, 0.0]), [Complex64::new(0.0, 0.0); 2]);
    }
}
