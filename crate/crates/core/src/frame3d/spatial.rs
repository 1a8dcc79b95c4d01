//! Closed-form 3D frame elements in frequency and in space.

use super::hedgehog::tau;
use super::spec::FrameSpec3D;
use crate::error::Result;
use crate::special_fn::clebsch::GauntTable;
use crate::special_fn::sph_harm::{lm_index, sph_harm_all_vec};
use crate::special_fn::wigner::{apply, matmul, rotate_coefficients, transpose, Rotation};
use crate::windows::radial::{radial_window, scaling_window, RadialProfile};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

// Cyclic permutation with C e3 = e1, C e1 = e2.
const CYCLE: Rotation = [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];

fn cycle_power(p: usize) -> Rotation {
    let mut r = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _ in 0..p {
        r = matmul(&CYCLE, &r);
    }
    r
}

fn unit(v: [f64; 3]) -> Option<([f64; 3], f64)> {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (r > 0.0).then(|| ([v[0] / r, v[1] / r, v[2] / r], r))
}

fn phase(omega: [f64; 3], k: [i64; 3], s: f64) -> Complex64 {
    Complex64::from_polar(1.0, -s * (0..3).map(|i| omega[i] * k[i] as f64).sum::<f64>())
}

/// Fourier transform of ψ_{a,j,k,t}; `axis` picks τ_1, τ_2 or τ_3.
pub fn wavelet_hat_3d(spec: &FrameSpec3D, axis: usize, j: i32, k: [i64; 3], t: usize, omega: [f64; 3]) -> [Complex64; 3] {
    let Some((w, rho)) = unit(omega) else { return [ZERO; 3] };
    let s = spec.spacing(j) as f64;
    let r = radial_window(s * rho);
    if r == 0.0 {
        return [ZERO; 3];
    }
    let c = -I * (s / (2.0 * PI)).powf(1.5) * spec.window().eval(t, w) * r * phase(omega, k, s);
    tau(axis, w).map(|x| c * x)
}

pub fn scaling_hat_3d(spec: &FrameSpec3D, axis: usize, k: [i64; 3], omega: [f64; 3]) -> [Complex64; 3] {
    let Some((w, rho)) = unit(omega) else { return [ZERO; 3] };
    let sl = spec.scaling_spacing() as f64;
    let g = scaling_window(spec.spacing(spec.j_min()) as f64 * rho);
    let c = -I * (sl / (2.0 * PI)).powf(1.5) * g * phase(omega, k, sl);
    tau(axis, w).map(|x| c * x)
}

/// Axis-3 mother wavelet of the window with coefficients `kappa` (degree L,
/// (L+1)² entries).
fn mother_axis3(kappa: &[Complex64], table: &GauntTable, profile: &RadialProfile, y: [f64; 3]) -> Result<[Complex64; 3]> {
    let deg = (kappa.len() as f64).sqrt() as i64 - 1;
    let r = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
    let h = profile.kernels_3d(deg as usize + 1, r)?;
    let ylm = sph_harm_all_vec(deg as usize + 1, y);
    let mut out = [ZERO; 3];
    for l in 0..=deg {
        for m in -l..=l {
            let k = kappa[lm_index(l as usize, m)];
            if k.norm_sqr() == 0.0 {
                continue;
            }
            for big_l in [l - 1, l + 1] {
                if big_l < 0 {
                    continue;
                }
                let pre = k * I.powi(big_l as i32) * h[big_l as usize];
                for sigma in [-1i64, 1] {
                    let mm = m + sigma;
                    if mm.abs() > big_l {
                        continue;
                    }
                    let g = table.get(l, m, 1, sigma, big_l, mm);
                    if g == 0.0 {
                        continue;
                    }
                    let c = pre * g * ylm[lm_index(big_l as usize, mm)];
                    out[0] -= c;
                    out[1] += c * I * sigma as f64;
                }
            }
        }
    }
    let norm = 2.0 / 3f64.sqrt();
    Ok(out.map(|c| c * norm))
}

/// Mother wavelet for `axis` and orientation t, at `y` in mother coordinates.
pub fn mother_wavelet_3d(spec: &FrameSpec3D, axis: usize, t: usize, y: [f64; 3]) -> Result<[Complex64; 3]> {
    // τ_a = C^p e3 × ·, with p = 1 for τ_1, 2 for τ_2, 0 for τ_3
    let p = (axis + 1) % 3;
    let cp = cycle_power(p);
    let coeffs = spec.window().rotated(t);
    let m = if p == 0 {
        mother_axis3(coeffs, spec.gaunt(), spec.profile(), y)?
    } else {
        let k = rotate_coefficients(coeffs, &transpose(&cp))?;
        let y0 = apply(&transpose(&cp), y);
        mother_axis3(&k, spec.gaunt(), spec.profile(), y0)?
    };
    let mut out = [ZERO; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i] += m[j] * cp[i][j];
        }
    }
    Ok(out)
}

/// ψ_{a,j,k,t} at grid position x.
pub fn wavelet_spatial_3d(spec: &FrameSpec3D, axis: usize, j: i32, k: [i64; 3], t: usize, x: [f64; 3]) -> Result<[Complex64; 3]> {
    let s = spec.spacing(j) as f64;
    let y = [0, 1, 2].map(|i| (x[i] - s * k[i] as f64) / s);
    let m = mother_wavelet_3d(spec, axis, t, y)?;
    let c = (s * 2.0 * PI).powf(-1.5);
    Ok(m.map(|v| v * c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::angular3d::{zonal_window, OrientationSet};

    #[test]
    fn isotropic_mother_is_hedgehog() {
        let spec = FrameSpec3D::isotropic(16, 0, 1).unwrap();
        for y in [[0.7, -1.3, 0.4], [2.0, 0.5, -3.0], [0.0, 0.0, 1.1]] {
            let (u, r) = unit(y).unwrap();
            let h1 = spec.profile().kernel_3d(1, r).unwrap();
            for a in 0..3 {
                let v = mother_wavelet_3d(&spec, a, 0, y).unwrap();
                let want = tau(a, u).map(|x| (2.0 / PI).sqrt() * h1 * x);
                for i in 0..3 {
                    assert!((v[i] - want[i]).norm() < 1e-14, "a={a} {v:?} {want:?}");
                }
            }
        }
    }

    #[test]
    fn hat_is_tangential() {
        let w = zonal_window(&[1.0, 0.8, 0.3], OrientationSet::Icosahedron).unwrap();
        let spec = FrameSpec3D::new(16, 0, 1, w).unwrap();
        let om = [0.7, -1.1, 0.9];
        for a in 0..3 {
            let v = wavelet_hat_3d(&spec, a, 1, [1, 0, -2], 3, om);
            let d: Complex64 = (0..3).map(|i| v[i] * om[i]).sum();
            assert!(d.norm() < 1e-15);
            assert!(v.iter().any(|c| c.norm() > 1e-3));
        }
    }
}
