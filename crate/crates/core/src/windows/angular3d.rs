//! Directional windows on the sphere.

use crate::error::{invalid, Result};
use crate::special_fn::clebsch::GauntTable;
use crate::special_fn::sph_harm::{lm_index, sph_harm_all_vec, SphericalDirection};
use crate::special_fn::wigner::{apply, euler_matrix, rotate_coefficients, transpose, Rotation};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationSet {
    Pole,
    Octahedron,
    Icosahedron,
}

impl OrientationSet {
    pub fn directions(self) -> Vec<SphericalDirection> {
        let pts: Vec<[f64; 3]> = match self {
            OrientationSet::Pole => vec![[0.0, 0.0, 1.0]],
            OrientationSet::Octahedron => vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ],
            OrientationSet::Icosahedron => {
                let g = 0.5 * (1.0 + 5f64.sqrt());
                let mut v = Vec::new();
                for &a in &[-1.0, 1.0] {
                    for &b in &[-g, g] {
                        v.push([0.0, a, b]);
                        v.push([a, b, 0.0]);
                        v.push([b, 0.0, a]);
                    }
                }
                v
            }
        };
        pts.into_iter().map(SphericalDirection::from_vector).collect()
    }
}

/// A window γ on the sphere (coefficients κ_lm, l ≤ L) together with the
/// rotated copies γ_t(ω) = γ(R_t⁻¹ω), where R_t takes the pole to λ_t.
#[derive(Clone, Debug)]
pub struct AngularWindow3D {
    degree: usize,
    kappa: Vec<Complex64>,
    orientations: Vec<SphericalDirection>,
    rotated: Vec<Vec<Complex64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessReport3D {
    /// (l, m, residual) for every l ≤ 2L
    pub residuals: Vec<(usize, i64, f64)>,
    pub max_residual: f64,
}

fn rotation_to(d: SphericalDirection) -> Rotation {
    euler_matrix(d.phi, d.theta, 0.0)
}

/// Builds a window from full coefficients κ_lm and rescales it so that the
/// constant part of Σ_t |γ_t|² equals one.
pub fn make_angular_window_3d(kappa: Vec<Complex64>, orientations: Vec<SphericalDirection>) -> Result<AngularWindow3D> {
    let degree = (kappa.len() as f64).sqrt() as usize;
    if degree == 0 || degree * degree != kappa.len() {
        return invalid("coefficient count must be (L+1)^2");
    }
    if orientations.is_empty() {
        return invalid("at least one orientation required");
    }
    let degree = degree - 1;
    if degree > 8 {
        return invalid("window degree above 8 is not supported");
    }
    let mut rotated = orientations
        .iter()
        .map(|d| rotate_coefficients(&kappa, &rotation_to(*d)))
        .collect::<Result<Vec<_>>>()?;
    let total: f64 = rotated.iter().flatten().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return invalid("window vanishes");
    }
    let scale = (4.0 * PI / total).sqrt();
    rotated.iter_mut().flatten().for_each(|c| *c *= scale);
    let kappa = kappa.into_iter().map(|c| c * scale).collect();
    Ok(AngularWindow3D { degree, kappa, orientations, rotated })
}

/// Zonal window from real profile coefficients κ_l0, l = 0..=L.
pub fn zonal_window(profile: &[f64], set: OrientationSet) -> Result<AngularWindow3D> {
    if profile.is_empty() {
        return invalid("empty zonal profile");
    }
    let l = profile.len() - 1;
    let mut kappa = vec![Complex64::new(0.0, 0.0); (l + 1) * (l + 1)];
    for (k, p) in profile.iter().enumerate() {
        kappa[lm_index(k, 0)] = Complex64::new(*p, 0.0);
    }
    make_angular_window_3d(kappa, set.directions())
}

impl AngularWindow3D {
    pub fn isotropic() -> Self {
        zonal_window(&[1.0], OrientationSet::Pole).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kappa(&self) -> &[Complex64] {
        &self.kappa
    }

    pub fn count(&self) -> usize {
        self.orientations.len()
    }

    pub fn orientations(&self) -> &[SphericalDirection] {
        &self.orientations
    }

    /// Coefficients of γ_t.
    pub fn rotated(&self, t: usize) -> &[Complex64] {
        &self.rotated[t]
    }

    /// γ_t at the direction of `v` through the rotated expansion.
    pub fn eval(&self, t: usize, v: [f64; 3]) -> Complex64 {
        let y = sph_harm_all_vec(self.degree, v);
        self.rotated[t].iter().zip(&y).map(|(a, b)| a * b).sum()
    }

    /// γ_t evaluated by rotating the argument back to the reference frame.
    pub fn eval_by_rotation(&self, t: usize, v: [f64; 3]) -> Complex64 {
        let back = apply(&transpose(&rotation_to(self.orientations[t])), v);
        let y = sph_harm_all_vec(self.degree, back);
        self.kappa.iter().zip(&y).map(|(a, b)| a * b).sum()
    }

    pub fn energy(&self, v: [f64; 3]) -> f64 {
        (0..self.count()).map(|t| self.eval(t, v).norm_sqr()).sum()
    }

    /// The same window with every orientation composed with a fixed rotation
    /// Q: γ'_t(ω) = γ_t(Q⁻¹ω).
    pub fn rotate_all(&self, q: &Rotation) -> Result<Self> {
        let rotated = self.rotated.iter().map(|w| rotate_coefficients(w, q)).collect::<Result<Vec<_>>>()?;
        Ok(AngularWindow3D { rotated, ..self.clone() })
    }
}

/// Expands Σ_t |γ_t|² − 1 in spherical harmonics through Gaunt coefficients
/// and reports each coefficient relative to the constant √(4π).
pub fn validate_tightness_3d(w: &AngularWindow3D, table: &GauntTable) -> Result<TightnessReport3D> {
    let lw = w.degree as i64;
    if table.max_degree() < w.degree {
        return invalid("Gaunt table does not cover the window degree");
    }
    let mut residuals = Vec::new();
    let mut max_residual = 0.0f64;
    for l in 0..=2 * lw {
        for m in -l..=l {
            let mut c = Complex64::new(0.0, 0.0);
            for rw in &w.rotated {
                for la in 0..=lw {
                    for ma in -la..=la {
                        let wa = rw[lm_index(la as usize, ma)];
                        if wa.norm() == 0.0 {
                            continue;
                        }
                        let mb = m + ma;
                        for lb in 0..=lw {
                            if mb.abs() > lb {
                                continue;
                            }
                            let g = table.get(la, -ma, lb, mb, l, m);
                            if g != 0.0 {
                                let sign = if ma.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                                c += wa.conj() * rw[lm_index(lb as usize, mb)] * (sign * g);
                            }
                        }
                    }
                }
            }
            let target = if l == 0 { (4.0 * PI).sqrt() } else { 0.0 };
            let r = (c - target).norm() / (4.0 * PI).sqrt();
            max_residual = max_residual.max(r);
            residuals.push((l as usize, m, r));
        }
    }
    Ok(TightnessReport3D { residuals, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_is_one() {
        let w = AngularWindow3D::isotropic();
        assert!((w.energy([0.3, 0.2, -0.9]) - 1.0).abs() < 1e-15);
        let t = GauntTable::new(1).unwrap();
        assert!(validate_tightness_3d(&w, &t).unwrap().max_residual < 1e-15);
    }

    #[test]
    fn rotated_expansion_matches_direct_rotation() {
        let w = zonal_window(&[1.0, 0.8, 0.3], OrientationSet::Icosahedron).unwrap();
        for t in 0..w.count() {
            for v in [[0.1, 0.5, -0.3], [1.0, 0.0, 0.0], [-0.2, -0.9, 0.4]] {
                assert!((w.eval(t, v) - w.eval_by_rotation(t, v)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn design_strength_controls_tightness() {
        let table = GauntTable::new(2).unwrap();
        let oct1 = zonal_window(&[1.0, 0.7], OrientationSet::Octahedron).unwrap();
        assert!(validate_tightness_3d(&oct1, &table).unwrap().max_residual < 1e-13);
        let ico2 = zonal_window(&[1.0, 0.7, 0.4], OrientationSet::Icosahedron).unwrap();
        assert!(validate_tightness_3d(&ico2, &table).unwrap().max_residual < 1e-13);
        let oct2 = zonal_window(&[1.0, 0.7, 0.4], OrientationSet::Octahedron).unwrap();
        assert!(validate_tightness_3d(&oct2, &table).unwrap().max_residual > 1e-3);
    }
}
