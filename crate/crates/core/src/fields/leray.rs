//! Spectral Helmholtz–Leray projection and divergence measure.

use super::field::{VectorField2D, VectorField3D};
use crate::grid::{fftfreq, omega_2d, omega_3d};
use num_complex::Complex64;

fn nyquist(i: usize, n: usize, dim: usize) -> bool {
    n % 2 == 0 && {
        let mut rem = i;
        (0..dim).any(|_| {
            let c = rem % n;
            rem /= n;
            fftfreq(c, n) == -(n as i64 / 2)
        })
    }
}

/// Removes the curl-free part spectrally. Nyquist modes, whose wavevector
/// sign is ambiguous, are dropped. Returns the projected field and the
/// fraction of energy removed.
pub fn leray_project(field: &VectorField2D) -> (VectorField2D, f64) {
    let n = field.n;
    let [mut u, mut v] = field.spectra();
    for i in 1..n * n {
        if nyquist(i, n, 2) {
            u[i] = Complex64::new(0.0, 0.0);
            v[i] = Complex64::new(0.0, 0.0);
            continue;
        }
        let w = omega_2d(i, n);
        let r2 = w[0] * w[0] + w[1] * w[1];
        let d = (u[i] * w[0] + v[i] * w[1]) / r2;
        u[i] -= d * w[0];
        v[i] -= d * w[1];
    }
    let (out, _) = VectorField2D::from_spectra(n, field.domain_length, [u, v]);
    let frac = removed(field.energy(), &out, field);
    (out, frac)
}

fn removed(e0: f64, out: &VectorField2D, inp: &VectorField2D) -> f64 {
    if e0 == 0.0 {
        return 0.0;
    }
    let d: f64 = out.u.iter().zip(&inp.u).chain(out.v.iter().zip(&inp.v)).map(|(a, b)| (a - b).powi(2)).sum();
    d / e0
}

pub fn leray_project_3d(field: &VectorField3D) -> (VectorField3D, f64) {
    let n = field.n;
    let mut s = field.spectra();
    for i in 1..n * n * n {
        if nyquist(i, n, 3) {
            for c in s.iter_mut() {
                c[i] = Complex64::new(0.0, 0.0);
            }
            continue;
        }
        let w = omega_3d(i, n);
        let r2: f64 = w.iter().map(|x| x * x).sum();
        let d = (s[0][i] * w[0] + s[1][i] * w[1] + s[2][i] * w[2]) / r2;
        for c in 0..3 {
            s[c][i] -= d * w[c];
        }
    }
    let (out, _) = VectorField3D::from_spectra(n, field.domain_length, s);
    let e0 = field.energy();
    let d: f64 = (0..3)
        .flat_map(|c| out.comps[c].iter().zip(&field.comps[c]))
        .map(|(a, b)| (a - b).powi(2))
        .sum();
    let frac = if e0 == 0.0 { 0.0 } else { d / e0 };
    (out, frac)
}

/// ‖ξ·û‖ / ‖|ξ| û‖ over nonzero wavevectors; 0 for divergence-free fields
/// and 1 for pure gradients.
pub fn divergence_spectral(field: &VectorField2D) -> f64 {
    let n = field.n;
    let [u, v] = field.spectra();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 1..n * n {
        let w = omega_2d(i, n);
        num += (u[i] * w[0] + v[i] * w[1]).norm_sqr();
        den += (w[0] * w[0] + w[1] * w[1]) * (u[i].norm_sqr() + v[i].norm_sqr());
    }
    if den == 0.0 {
        0.0
    } else {
        (num / den).sqrt()
    }
}

pub fn divergence_spectral_3d(field: &VectorField3D) -> f64 {
    let n = field.n;
    let s = field.spectra();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 1..n * n * n {
        let w = omega_3d(i, n);
        num += (s[0][i] * w[0] + s[1][i] * w[1] + s[2][i] * w[2]).norm_sqr();
        den += w.iter().map(|x| x * x).sum::<f64>() * (0..3).map(|c| s[c][i].norm_sqr()).sum::<f64>();
    }
    if den == 0.0 {
        0.0
    } else {
        (num / den).sqrt()
    }
}
