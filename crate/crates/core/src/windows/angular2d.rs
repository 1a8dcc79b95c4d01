//! Directional windows on the circle.

use crate::error::{invalid, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Isotropic,
    Even,
    Odd,
    Mixed,
}

/// γ_t(θ) = Σ_n β_n e^{-i n t 2π/M} e^{i n θ}, t = 0..M.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularWindow2D {
    order: usize,
    orientations: usize,
    coeffs: Vec<Complex64>,
    parity: Parity,
}

/// Summary of the Gram operator of the orientation-by-harmonic matrix.
#[derive(Clone, Debug, Serialize)]
pub struct TightnessReport2D {
    pub diagonal: Vec<f64>,
    pub trace: f64,
    pub max_offdiag: f64,
    pub residual: f64,
}

fn classify(coeffs: &[Complex64], order: usize) -> Parity {
    let nz = |k: usize| coeffs[k].norm() > 0.0;
    if (0..coeffs.len()).all(|k| k == order || !nz(k)) {
        return Parity::Isotropic;
    }
    let even = (0..coeffs.len()).all(|k| (k + order) % 2 == 0 || !nz(k));
    let odd = (0..coeffs.len()).all(|k| (k + order) % 2 == 1 || !nz(k));
    match (even, odd) {
        (true, _) => Parity::Even,
        (_, true) => Parity::Odd,
        _ => Parity::Mixed,
    }
}

/// Gaussian-profile window with `order` = N harmonics each side and `m`
/// orientations, normalised so that M Σ|β_n|² = 1. `concentration` is the
/// profile width in harmonic index; larger values sharpen the directional
/// selectivity.
pub fn make_angular_window_2d(parity: Parity, order: usize, m: usize, concentration: f64) -> Result<AngularWindow2D> {
    if parity == Parity::Isotropic {
        return AngularWindow2D::from_coefficients(vec![Complex64::new(1.0, 0.0)], 1);
    }
    if m < 2 * order + 1 {
        return invalid(format!("{m} orientations cannot resolve {} harmonics", 2 * order + 1));
    }
    AngularWindow2D::from_coefficients(gaussian_profile(parity, order, m, concentration)?, m)
}

/// The coefficients behind [`make_angular_window_2d`] without the check on
/// the orientation count, so undersampled windows can be inspected.
pub fn gaussian_profile(parity: Parity, order: usize, m: usize, concentration: f64) -> Result<Vec<Complex64>> {
    if parity == Parity::Mixed || parity == Parity::Isotropic {
        return invalid("only even and odd Gaussian profiles exist");
    }
    if !(concentration > 0.0) || m == 0 {
        return invalid("concentration and orientation count must be positive");
    }
    let want = if parity == Parity::Even { 0 } else { 1 };
    let mut c: Vec<Complex64> = (-(order as i64)..=order as i64)
        .map(|n| {
            if n.rem_euclid(2) == want {
                Complex64::new((-(n * n) as f64 / (2.0 * concentration * concentration)).exp(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let norm: f64 = c.iter().map(|b| b.norm_sqr()).sum::<f64>() * m as f64;
    if norm == 0.0 {
        return invalid("window has no admissible harmonics");
    }
    c.iter_mut().for_each(|b| *b /= norm.sqrt());
    Ok(c)
}

impl AngularWindow2D {
    /// Raw construction; no tightness check, so deliberately defective
    /// windows can be built and inspected.
    pub fn from_coefficients(coeffs: Vec<Complex64>, orientations: usize) -> Result<Self> {
        if coeffs.len() % 2 == 0 || orientations == 0 {
            return invalid("coefficients must have odd length 2N+1 and M > 0");
        }
        let order = coeffs.len() / 2;
        let parity = classify(&coeffs, order);
        Ok(AngularWindow2D { order, orientations, coeffs, parity })
    }

    pub fn isotropic() -> Self {
        Self::from_coefficients(vec![Complex64::new(1.0, 0.0)], 1).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn orientations(&self) -> usize {
        self.orientations
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// β_n, zero outside |n| ≤ N.
    pub fn beta(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.order {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.order as i64) as usize]
        }
    }

    /// Coefficients of γ_t, index n + N.
    pub fn rotated(&self, t: usize) -> Vec<Complex64> {
        let n0 = self.order as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, b)| b * Complex64::from_polar(1.0, -((k as i64 - n0) as f64) * self.angle(t)))
            .collect()
    }

    /// Frequency-space angle of orientation t.
    pub fn angle(&self, t: usize) -> f64 {
        2.0 * PI * t as f64 / self.orientations as f64
    }

    pub fn eval(&self, t: usize, theta: f64) -> Complex64 {
        let n0 = self.order as i64;
        let a = self.angle(t);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, b)| b * Complex64::from_polar(1.0, (k as i64 - n0) as f64 * (theta - a)))
            .sum()
    }

    /// Σ_t |γ_t(θ)|², identically one for a tight window.
    pub fn energy(&self, theta: f64) -> f64 {
        (0..self.orientations).map(|t| self.eval(t, theta).norm_sqr()).sum()
    }
}

/// Gram operator D = U^H U with U[t][n] = β_n e^{-int2π/M}. The window is
/// tight, Σ_t |γ_t|² ≡ 1, iff D is diagonal with unit trace. `residual` is
/// the largest Fourier coefficient of Σ_t |γ_t|² − 1.
pub fn validate_tightness_2d(w: &AngularWindow2D) -> TightnessReport2D {
    let n = w.coeffs.len();
    let m = w.orientations;
    let u: Vec<Vec<Complex64>> = (0..m).map(|t| w.rotated(t)).collect();
    let mut diagonal = vec![0.0; n];
    let mut max_offdiag = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let d: Complex64 = (0..m).map(|t| u[t][a].conj() * u[t][b]).sum();
            if a == b {
                diagonal[a] = d.re;
            } else {
                max_offdiag = max_offdiag.max(d.norm());
            }
        }
    }
    let trace: f64 = diagonal.iter().sum();
    // Σ_t |γ_t(θ)|² = Σ_{a,b} D[a][b] e^{i(b-a)θ}; its constant term is the
    // trace and every other Fourier mode is a sum of off-diagonals
    let mut residual = (trace - 1.0).abs();
    for shift in 1..n {
        let s: Complex64 = (0..n - shift)
            .flat_map(|a| (0..m).map(move |t| (a, t)))
            .map(|(a, t)| u[t][a].conj() * u[t][a + shift])
            .sum();
        residual = residual.max(s.norm());
    }
    TightnessReport2D { diagonal, trace, max_offdiag, residual }
}
