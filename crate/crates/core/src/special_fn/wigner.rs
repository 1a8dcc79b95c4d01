//! Wigner D-matrices acting on spherical-harmonic coefficient vectors.
//!
//! With R = Rz(α) Ry(β) Rz(γ) (active rotations), the matrix W returned by
//! [`wigner_d_euler`] satisfies y_lm(R⁻¹ω) = Σ_m' W[m][m'] y_lm'(ω), so the
//! coefficients of f∘R⁻¹ are Wᵀ times those of f.

use crate::error::{invalid, Result};
use crate::special_fn::sph_harm::SphericalDirection;
use num_complex::Complex64;

pub const MAX_DEGREE: usize = 16;

/// Row-major 3x3 rotation matrix.
pub type Rotation = [[f64; 3]; 3];

fn factorials() -> [f64; 2 * MAX_DEGREE + 2] {
    let mut f = [1.0; 2 * MAX_DEGREE + 2];
    for k in 1..f.len() {
        f[k] = f[k - 1] * k as f64;
    }
    f
}

/// Small Wigner d^l_{m' m}(β), row-major with index (m' + l, m + l).
pub fn wigner_small_d(l: usize, beta: f64) -> Vec<f64> {
    let f = factorials();
    let n = 2 * l + 1;
    let li = l as i64;
    let (s, c) = (0.5 * beta).sin_cos();
    let mut d = vec![0.0; n * n];
    for mp in -li..=li {
        for m in -li..=li {
            let pre = (f[(li + mp) as usize] * f[(li - mp) as usize] * f[(li + m) as usize] * f[(li - m) as usize]).sqrt();
            let mut sum = 0.0;
            let kmin = 0.max(m - mp);
            let kmax = (li + m).min(li - mp);
            for k in kmin..=kmax {
                let den = f[(li + m - k) as usize] * f[k as usize] * f[(mp - m + k) as usize] * f[(li - mp - k) as usize];
                let sign = if (mp - m + k) % 2 == 0 { 1.0 } else { -1.0 };
                sum += sign / den
                    * c.powi((2 * li + m - mp - 2 * k) as i32)
                    * s.powi((mp - m + 2 * k) as i32);
            }
            d[((mp + li) * n as i64 + m + li) as usize] = pre * sum;
        }
    }
    d
}

/// W for the rotation Rz(α) Ry(β) Rz(γ); row-major (m + l, m' + l).
pub fn wigner_d_euler(l: usize, alpha: f64, beta: f64, gamma: f64) -> Result<Vec<Complex64>> {
    if l > MAX_DEGREE {
        return invalid(format!("Wigner degree {l} above {MAX_DEGREE}"));
    }
    let n = 2 * l + 1;
    let d = wigner_small_d(l, beta);
    let li = l as i64;
    let mut w = vec![Complex64::new(0.0, 0.0); n * n];
    for m in -li..=li {
        for mp in -li..=li {
            let dd = d[((mp + li) * n as i64 + m + li) as usize];
            let ph = -(mp as f64) * alpha - (m as f64) * gamma;
            w[((m + li) * n as i64 + mp + li) as usize] = Complex64::from_polar(dd, ph);
        }
    }
    Ok(w)
}

/// W for the rotation taking the north pole to `dir`: Rz(φ) Ry(θ).
pub fn wigner_d(dir: SphericalDirection, l: usize) -> Result<Vec<Complex64>> {
    wigner_d_euler(l, dir.phi, dir.theta, 0.0)
}

pub fn rot_z(a: f64) -> Rotation {
    let (s, c) = a.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

pub fn rot_y(a: f64) -> Rotation {
    let (s, c) = a.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

pub fn matmul(a: &Rotation, b: &Rotation) -> Rotation {
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    r
}

pub fn apply(r: &Rotation, v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2])
}

pub fn transpose(r: &Rotation) -> Rotation {
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = r[j][i];
        }
    }
    t
}

pub fn euler_matrix(alpha: f64, beta: f64, gamma: f64) -> Rotation {
    matmul(&matmul(&rot_z(alpha), &rot_y(beta)), &rot_z(gamma))
}

/// z-y-z Euler angles of a proper rotation.
pub fn euler_angles(r: &Rotation) -> (f64, f64, f64) {
    let cb = r[2][2].clamp(-1.0, 1.0);
    let beta = cb.acos();
    let sb = beta.sin();
    if sb > 1e-12 {
        let alpha = r[1][2].atan2(r[0][2]);
        let gamma = r[2][1].atan2(-r[2][0]);
        (alpha, beta, gamma)
    } else if cb > 0.0 {
        (r[1][0].atan2(r[0][0]), 0.0, 0.0)
    } else {
        ((-r[1][0]).atan2(-r[0][0]), std::f64::consts::PI, 0.0)
    }
}

/// Coefficients of f∘R⁻¹ given those of f (degree-blocked, index l² + l + m).
pub fn rotate_coefficients(coeffs: &[Complex64], r: &Rotation) -> Result<Vec<Complex64>> {
    let lmax = (coeffs.len() as f64).sqrt() as usize - 1;
    if (lmax + 1) * (lmax + 1) != coeffs.len() {
        return invalid("coefficient vector length is not a square");
    }
    let (a, b, g) = euler_angles(r);
    let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len()];
    for l in 0..=lmax {
        let w = wigner_d_euler(l, a, b, g)?;
        let n = 2 * l + 1;
        let off = l * l;
        for mp in 0..n {
            out[off + mp] = (0..n).map(|m| coeffs[off + m] * w[m * n + mp]).sum();
        }
    }
    Ok(out)
}
