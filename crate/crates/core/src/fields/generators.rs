//! Analytic divergence-free test fields.

use super::field::{VectorField2D, VectorField3D};
use crate::error::{invalid, Result};
use crate::grid::fftfreq;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// One stream-function mode a·sin(n x)·sin(m y).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub n: u32,
    pub m: u32,
    pub amplitude: f64,
}

/// Superposition of Laplacian eigenmodes on [0, L)².
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenfieldRecipe {
    pub modes: Vec<Mode>,
    pub domain_length: f64,
}

impl EigenfieldRecipe {
    pub fn single(n: u32, m: u32, amplitude: f64) -> Self {
        EigenfieldRecipe { modes: vec![Mode { n, m, amplitude }], domain_length: 2.0 * PI }
    }

    /// Four modes spread over four octaves of wavenumber, with velocity
    /// amplitude a·|k| halving from one mode to the next: 1, 1/2, 1/4, 1/8.
    pub fn canonical() -> Self {
        let modes = [(2u32, 1u32), (6, 5), (14, 11), (34, 29)]
            .into_iter()
            .enumerate()
            .map(|(i, (n, m))| Mode { n, m, amplitude: 0.5f64.powi(i as i32) / f64::from(n * n + m * m).sqrt() })
            .collect();
        EigenfieldRecipe { modes, domain_length: 2.0 * PI }
    }

    /// ∫|u|² over the domain; modes must be distinct.
    pub fn energy(&self) -> f64 {
        let k0 = 2.0 * PI / self.domain_length;
        let area = self.domain_length * self.domain_length;
        self.modes
            .iter()
            .map(|md| md.amplitude.powi(2) * k0 * k0 * (md.n.pow(2) + md.m.pow(2)) as f64 * area / 4.0)
            .sum()
    }
}

/// Samples u = (∂φ/∂y, −∂φ/∂x) of φ = Σ a sin(k n x) sin(k m y), k = 2π/L.
pub fn make_eigenfield(recipe: &EigenfieldRecipe, n_grid: usize) -> Result<VectorField2D> {
    if recipe.modes.is_empty() {
        return invalid("eigenfield recipe has no modes");
    }
    for md in &recipe.modes {
        if md.n == 0 || md.m == 0 {
            return invalid("mode indices must be at least 1");
        }
        if 2 * md.n.max(md.m) as usize >= n_grid {
            return invalid(format!("mode ({}, {}) is not resolved on a {n_grid} grid", md.n, md.m));
        }
    }
    let k0 = 2.0 * PI / recipe.domain_length;
    Ok(VectorField2D::from_fn(n_grid, recipe.domain_length, |x, y| {
        let mut out = [0.0; 2];
        for md in &recipe.modes {
            let (kn, km) = (k0 * md.n as f64, k0 * md.m as f64);
            out[0] += md.amplitude * km * (kn * x).sin() * (km * y).cos();
            out[1] -= md.amplitude * kn * (kn * x).cos() * (km * y).sin();
        }
        out
    }))
}

/// A compact vortex with stream function Γ(1 − r²/R²)⁴ inside radius R.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vortex {
    pub center: [f64; 2],
    pub radius: f64,
    pub strength: f64,
}

/// Sampled superposition of vortices (periodic minimum image) and a flag
/// telling whether any two cores overlap.
pub fn make_vortices(vortices: &[Vortex], n_grid: usize, domain_length: f64) -> Result<(VectorField2D, bool)> {
    for v in vortices {
        if !(v.radius > 0.0) || 2.0 * v.radius >= domain_length {
            return invalid("vortex radius must be positive and below half the domain");
        }
    }
    let wrap = |d: f64| d - domain_length * (d / domain_length).round();
    let field = VectorField2D::from_fn(n_grid, domain_length, |x, y| {
        let mut out = [0.0; 2];
        for v in vortices {
            let (dx, dy) = (wrap(x - v.center[0]), wrap(y - v.center[1]));
            let q = (dx * dx + dy * dy) / (v.radius * v.radius);
            if q < 1.0 {
                // ∇φ = −8Γ(1 − q)³ (dx, dy)/R²
                let g = -8.0 * v.strength * (1.0 - q).powi(3) / (v.radius * v.radius);
                out[0] += g * dy;
                out[1] -= g * dx;
            }
        }
        out
    });
    let mut overlap = false;
    for (i, a) in vortices.iter().enumerate() {
        for b in &vortices[i + 1..] {
            let d = wrap(a.center[0] - b.center[0]).hypot(wrap(a.center[1] - b.center[1]));
            overlap |= d < a.radius + b.radius;
        }
    }
    Ok((field, overlap))
}

/// Two staggered rows of counter-rotating vortices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VortexStreet {
    pub per_row: usize,
    pub spacing: f64,
    pub row_gap: f64,
    pub core_radius: f64,
    pub strength: f64,
    pub center: [f64; 2],
}

impl Default for VortexStreet {
    fn default() -> Self {
        VortexStreet { per_row: 4, spacing: 0.6, row_gap: 0.6, core_radius: 0.9, strength: 1.0, center: [PI, PI] }
    }
}

impl VortexStreet {
    pub fn vortices(&self) -> Vec<Vortex> {
        let mut v = Vec::new();
        let x0 = self.center[0] - 0.5 * self.spacing * (self.per_row as f64 - 1.0);
        for row in 0..2 {
            let sign = if row == 0 { 1.0 } else { -1.0 };
            let y = self.center[1] + sign * 0.5 * self.row_gap;
            let shift = if row == 0 { 0.0 } else { 0.5 * self.spacing };
            for i in 0..self.per_row {
                v.push(Vortex { center: [x0 + shift + i as f64 * self.spacing, y], radius: self.core_radius, strength: sign * self.strength });
            }
        }
        v
    }
}

/// Street field, Leray-projected; returns the field and the overlap flag.
pub fn make_vortex_street(street: &VortexStreet, n_grid: usize) -> Result<(VectorField2D, bool)> {
    let (f, overlap) = make_vortices(&street.vortices(), n_grid, 2.0 * PI)?;
    Ok((super::leray::leray_project(&f).0, overlap))
}

/// Horizontal jet u = (sech²((y − π)/δ), 0) on [0, 2π)².
pub fn make_shear_layer(n_grid: usize, width: f64) -> VectorField2D {
    VectorField2D::from_fn(n_grid, 2.0 * PI, |_, y| [1.0 / ((y - PI) / width).cosh().powi(2), 0.0])
}

/// Random divergence-free field on [0, 2π)² whose stream function has
/// independent uniform Fourier coefficients for 0 < |k| ≤ `k_max`,
/// scaled to unit mean-square speed. Deterministic in `seed`.
pub fn make_random_field(n_grid: usize, k_max: f64, seed: u64) -> Result<VectorField2D> {
    if !(k_max >= 1.0) || 2.0 * k_max >= n_grid as f64 {
        return invalid(format!("band limit {k_max} is not resolved on a {n_grid} grid"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n_grid;
    let mut psi = vec![Complex64::new(0.0, 0.0); n * n];
    for c in psi.iter_mut() {
        *c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    let mut su = vec![Complex64::new(0.0, 0.0); n * n];
    let mut sv = su.clone();
    for iy in 0..n {
        for ix in 0..n {
            let (kx, ky) = (fftfreq(ix, n), fftfreq(iy, n));
            let r = ((kx * kx + ky * ky) as f64).sqrt();
            if r == 0.0 || r > k_max {
                continue;
            }
            // Hermitian part so the field is real
            let mirror = ((n - iy) % n) * n + (n - ix) % n;
            let p = 0.5 * (psi[iy * n + ix] + psi[mirror].conj());
            su[iy * n + ix] = Complex64::new(0.0, ky as f64) * p;
            sv[iy * n + ix] = -Complex64::new(0.0, kx as f64) * p;
        }
    }
    let (mut f, _) = VectorField2D::from_spectra(n, 2.0 * PI, [su, sv]);
    let ms = f.u.iter().chain(&f.v).map(|x| x * x).sum::<f64>() / (n * n) as f64;
    if ms > 0.0 {
        let a = ms.sqrt().recip();
        f.u.iter_mut().chain(f.v.iter_mut()).for_each(|x| *x *= a);
    }
    Ok(f)
}

/// Single divergence-free mode on [0, 2π)³ with wavenumbers k = (a, b, c):
/// u ∝ (a cos·sin·sin, b sin·cos·sin, −(a² + b²)/c sin·sin·cos).
pub fn make_eigenfield_3d(n_grid: usize, k: [u32; 3], amplitude: f64) -> Result<VectorField3D> {
    if 2 * *k.iter().max().unwrap() as usize >= n_grid {
        return invalid("mode not resolved");
    }
    if k[2] == 0 {
        return invalid("third wavenumber must be positive");
    }
    let [a, b, c] = k.map(|x| x as f64);
    let wz = -(a * a + b * b) / (c * c);
    Ok(VectorField3D::from_fn(n_grid, 2.0 * PI, |x, y, z| {
        [
            amplitude * a * (a * x).cos() * (b * y).sin() * (c * z).sin(),
            amplitude * b * (a * x).sin() * (b * y).cos() * (c * z).sin(),
            amplitude * wz * c * (a * x).sin() * (b * y).sin() * (c * z).cos(),
        ]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::leray::divergence_spectral;

    #[test]
    fn eigenfield_energy_matches_closed_form() {
        let r = EigenfieldRecipe::canonical();
        let n = 128;
        let u = make_eigenfield(&r, n).unwrap();
        let cell = (2.0 * PI / n as f64).powi(2);
        assert!((u.energy() * cell / r.energy() - 1.0).abs() < 1e-12);
        assert!(make_eigenfield(&r, 64).is_err());
    }

    #[test]
    fn vortices_are_solenoidal_and_flag_overlap() {
        let (f, overlap) = make_vortices(&[Vortex { center: [1.0, 2.0], radius: 0.8, strength: 1.0 }], 64, 2.0 * PI).unwrap();
        assert!(!overlap);
        assert!(divergence_spectral(&crate::fields::leray::leray_project(&f).0) < 1e-12);
        let (s, overlap) = make_vortex_street(&VortexStreet::default(), 64).unwrap();
        assert!(overlap);
        assert!(divergence_spectral(&s) < 1e-12);
        let pair = [
            Vortex { center: [2.0, 3.0], radius: 0.5, strength: 1.0 },
            Vortex { center: [4.0, 3.0], radius: 0.5, strength: -1.0 },
        ];
        let (p, _) = make_vortices(&pair, 64, 2.0 * PI).unwrap();
        // circulation around the domain boundary
        let n = 64;
        let circ: f64 = (0..n).map(|i| p.u[i] - p.u[(n - 1) * n + i] + p.v[i * n + n - 1] - p.v[i * n]).sum();
        assert!(circ.abs() < 1e-12);
    }

    #[test]
    fn random_field_is_real_solenoidal_and_seeded() {
        let a = make_random_field(64, 12.0, 7).unwrap();
        assert_eq!(a, make_random_field(64, 12.0, 7).unwrap());
        assert_ne!(a, make_random_field(64, 12.0, 8).unwrap());
        assert!(divergence_spectral(&a) < 1e-12);
        assert!((a.energy() / (64.0 * 64.0) - 1.0).abs() < 1e-12);
        assert!(make_random_field(64, 40.0, 0).is_err());
    }

    #[test]
    fn eigenfield_3d_is_solenoidal() {
        let u = make_eigenfield_3d(16, [1, 2, 3], 1.0).unwrap();
        assert!(crate::fields::leray::divergence_spectral_3d(&u) < 1e-13);
    }
}
