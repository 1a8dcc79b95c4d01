//! Orthonormal complex spherical harmonics with the Condon–Shortley phase.

use crate::error::{invalid, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const MAX_DEGREE: usize = 64;

/// A point on the unit sphere, colatitude `theta` and azimuth `phi`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SphericalDirection {
    pub theta: f64,
    pub phi: f64,
}

impl SphericalDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return invalid(format!("colatitude {theta} outside [0, pi]"));
        }
        Ok(SphericalDirection { theta, phi: phi.rem_euclid(2.0 * PI) })
    }

    pub fn north() -> Self {
        SphericalDirection { theta: 0.0, phi: 0.0 }
    }

    /// Direction of `v`; the zero vector maps to the north pole.
    pub fn from_vector(v: [f64; 3]) -> Self {
        let rxy = v[0].hypot(v[1]);
        if rxy == 0.0 && v[2] == 0.0 {
            return Self::north();
        }
        SphericalDirection {
            theta: rxy.atan2(v[2]),
            phi: v[1].atan2(v[0]).rem_euclid(2.0 * PI),
        }
    }

    pub fn to_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

#[inline]
pub fn lm_index(l: usize, m: i64) -> usize {
    (l * l) as usize + (l as i64 + m) as usize
}

/// y_lm at a direction.
pub fn sph_harm(l: usize, m: i64, dir: SphericalDirection) -> Result<Complex64> {
    if l > MAX_DEGREE || m.unsigned_abs() as usize > l {
        return invalid(format!("spherical harmonic ({l}, {m}) out of range"));
    }
    Ok(sph_harm_all(l, dir.theta.cos(), dir.theta.sin(), dir.phi)[lm_index(l, m)])
}

/// All y_lm with l ≤ lmax, indexed by [`lm_index`].
pub fn sph_harm_all(lmax: usize, cos_t: f64, sin_t: f64, phi: f64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); (lmax + 1) * (lmax + 1)];
    let mut pmm = (0.25 / PI).sqrt();
    for m in 0..=lmax {
        if m > 0 {
            pmm *= -((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * sin_t;
        }
        let e = Complex64::from_polar(1.0, m as f64 * phi);
        let mut p_lm2 = 0.0;
        let mut p_lm1 = pmm;
        out[lm_index(m, m as i64)] = e * pmm;
        for l in (m + 1)..=lmax {
            let (lf, mf) = (l as f64, m as f64);
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
            let p = a * (cos_t * p_lm1 - b * p_lm2);
            p_lm2 = p_lm1;
            p_lm1 = p;
            out[lm_index(l, m as i64)] = e * p;
        }
    }
    for l in 1..=lmax {
        for m in 1..=l {
            let v = out[lm_index(l, m as i64)].conj();
            out[lm_index(l, -(m as i64))] = if m % 2 == 0 { v } else { -v };
        }
    }
    out
}

/// Same as [`sph_harm_all`] for a Cartesian vector.
pub fn sph_harm_all_vec(lmax: usize, v: [f64; 3]) -> Vec<Complex64> {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if r == 0.0 {
        return sph_harm_all(lmax, 1.0, 0.0, 0.0);
    }
    let rxy = v[0].hypot(v[1]);
    sph_harm_all(lmax, v[2] / r, rxy / r, v[1].atan2(v[0]))
}
