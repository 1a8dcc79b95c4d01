//! DFT-based analysis and synthesis.

use super::spec::FrameSpec2D;
use crate::error::{invalid, Result};
use crate::fields::field::VectorField2D;
use crate::grid::{fft_nd, lattice_index, omega_2d};
use crate::windows::radial::{radial_window, scaling_window};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Coefficients of one frame family on its periodic lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Band {
    /// lattice points per axis
    pub size: usize,
    /// lattice spacing in grid cells
    pub spacing: usize,
    pub data: Vec<Complex64>,
}

impl Band {
    pub fn zeros(size: usize, spacing: usize, dim: u32) -> Self {
        Band { size, spacing, data: vec![Complex64::new(0.0, 0.0); size.pow(dim)] }
    }

    pub fn energy(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Scaling coefficients at the coarsest level plus wavelet coefficients for
/// each level (outer index j − j_min) and orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientPyramid2D {
    pub grid_size: usize,
    pub j_min: i32,
    pub j_max: i32,
    pub scaling: Band,
    pub wavelets: Vec<Vec<Band>>,
    /// Spatial mean, which the frame cannot see.
    pub mean: [f64; 2],
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SynthesisReport {
    /// Largest imaginary part dropped when returning to real samples.
    pub imag_residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Family {
    Scaling,
    Wavelet(i32, usize),
    /// Scaling functions one level above j_max, on the unit lattice.
    Finest,
}

impl Family {
    pub(crate) fn all(spec: &FrameSpec2D) -> Vec<Family> {
        let mut v = vec![Family::Scaling];
        for j in spec.levels() {
            for t in 0..spec.orientations(j) {
                v.push(Family::Wavelet(j, t));
            }
        }
        v
    }

    pub(crate) fn spacing(self, spec: &FrameSpec2D) -> usize {
        match self {
            Family::Scaling => spec.scaling_spacing(),
            Family::Wavelet(j, _) => spec.spacing(j),
            Family::Finest => 1,
        }
    }

    /// Window value at angular frequency ω (rad per cell), polar (ρ, θ).
    pub(crate) fn window(self, spec: &FrameSpec2D, rho: f64, theta: f64) -> Complex64 {
        match self {
            Family::Scaling => Complex64::new(scaling_window(spec.spacing(spec.j_min()) as f64 * rho), 0.0),
            Family::Wavelet(j, t) => {
                let r = radial_window(spec.spacing(j) as f64 * rho);
                if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    spec.window(j).eval(t, theta) * r
                }
            }
            Family::Finest => Complex64::new(scaling_window(0.5 * rho), 0.0),
        }
    }
}

/// Tangential component S = û · e_θ with e_θ = (ω_y, −ω_x)/|ω|.
pub fn tangential_spectrum(field: &VectorField2D) -> Vec<Complex64> {
    let n = field.n;
    let [u, v] = field.spectra();
    (0..n * n)
        .map(|i| {
            let w = omega_2d(i, n);
            let r = w[0].hypot(w[1]);
            if r == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (u[i] * w[1] - v[i] * w[0]) / r
            }
        })
        .collect()
}

fn polar(i: usize, n: usize) -> (f64, f64) {
    let w = omega_2d(i, n);
    (w[0].hypot(w[1]), w[1].atan2(w[0]))
}

pub(crate) fn analyze_family(spec: &FrameSpec2D, fam: Family, s_hat: &[Complex64]) -> Band {
    let n = spec.grid_size();
    let s = fam.spacing(spec);
    let nl = n / s;
    let mut fold = vec![Complex64::new(0.0, 0.0); nl * nl];
    for (i, sv) in s_hat.iter().enumerate() {
        if sv.norm_sqr() == 0.0 {
            continue;
        }
        let (rho, theta) = polar(i, n);
        let w = fam.window(spec, rho, theta);
        if w.norm_sqr() != 0.0 {
            fold[lattice_index(i, n, 2, nl)] += I * sv * w.conj();
        }
    }
    fft_nd(&mut fold, &[nl, nl], true);
    let scale = s as f64 / (n * n) as f64;
    fold.iter_mut().for_each(|c| *c *= scale);
    Band { size: nl, spacing: s, data: fold }
}

/// Adds s(−i)W(ξ)Â[ξ mod n_l] for one family into `acc`.
pub(crate) fn synthesize_family(spec: &FrameSpec2D, fam: Family, band: &Band, acc: &mut [Complex64]) {
    let n = spec.grid_size();
    let nl = band.size;
    if band.data.iter().all(|c| c.norm_sqr() == 0.0) {
        return;
    }
    let mut a = band.data.clone();
    fft_nd(&mut a, &[nl, nl], false);
    let s = band.spacing as f64;
    for (i, o) in acc.iter_mut().enumerate() {
        let (rho, theta) = polar(i, n);
        if rho == 0.0 {
            continue;
        }
        let w = fam.window(spec, rho, theta);
        if w.norm_sqr() != 0.0 {
            *o += -I * s * w * a[lattice_index(i, n, 2, nl)];
        }
    }
}

/// Frame coefficients of `field`.
pub fn analyze_2d(field: &VectorField2D, spec: &FrameSpec2D) -> Result<CoefficientPyramid2D> {
    if field.n != spec.grid_size() {
        return invalid(format!("field grid {} does not match frame grid {}", field.n, spec.grid_size()));
    }
    let s_hat = tangential_spectrum(field);
    let fams = Family::all(spec);
    let mut bands: Vec<Band> = fams.par_iter().map(|f| analyze_family(spec, *f, &s_hat)).collect();
    let scaling = bands.remove(0);
    let mut wavelets = Vec::new();
    let mut it = bands.into_iter();
    for j in spec.levels() {
        wavelets.push((0..spec.orientations(j)).map(|_| it.next().unwrap()).collect());
    }
    Ok(CoefficientPyramid2D {
        grid_size: spec.grid_size(),
        j_min: spec.j_min(),
        j_max: spec.j_max(),
        scaling,
        wavelets,
        mean: field.mean(),
    })
}

/// Field from frame coefficients.
pub fn synthesize_2d(pyr: &CoefficientPyramid2D, spec: &FrameSpec2D) -> Result<(VectorField2D, SynthesisReport)> {
    pyr.check_layout(spec)?;
    let n = spec.grid_size();
    let fams = Family::all(spec);
    let acc = fams
        .par_iter()
        .fold(
            || vec![Complex64::new(0.0, 0.0); n * n],
            |mut acc, f| {
                synthesize_family(spec, *f, pyr.band(*f), &mut acc);
                acc
            },
        )
        .reduce(
            || vec![Complex64::new(0.0, 0.0); n * n],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(field_from_tangential(&acc, pyr.mean, spec))
}

/// Scaling coefficients ⟨u, φ⟩ one level above j_max: window ĝ(|ω|/2) on
/// the unit lattice. Input of the fast transform.
pub fn finest_scaling_2d(field: &VectorField2D, spec: &FrameSpec2D) -> Result<Band> {
    if field.n != spec.grid_size() {
        return invalid(format!("field grid {} does not match frame grid {}", field.n, spec.grid_size()));
    }
    Ok(analyze_family(spec, Family::Finest, &tangential_spectrum(field)))
}

/// Σ_k c_k φ_k for finest scaling coefficients, plus the mean.
pub fn synthesize_finest_2d(band: &Band, mean: [f64; 2], spec: &FrameSpec2D) -> Result<(VectorField2D, SynthesisReport)> {
    let n = spec.grid_size();
    if band.size != n || band.spacing != 1 {
        return invalid("finest band must sit on the unit lattice of the frame grid");
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); n * n];
    synthesize_family(spec, Family::Finest, band, &mut acc);
    Ok(field_from_tangential(&acc, mean, spec))
}

pub(crate) fn field_from_tangential(s_hat: &[Complex64], mean: [f64; 2], spec: &FrameSpec2D) -> (VectorField2D, SynthesisReport) {
    let n = spec.grid_size();
    let mut u = vec![Complex64::new(0.0, 0.0); n * n];
    let mut v = u.clone();
    for i in 1..n * n {
        let w = omega_2d(i, n);
        let r = w[0].hypot(w[1]);
        u[i] = s_hat[i] * (w[1] / r);
        v[i] = -s_hat[i] * (w[0] / r);
    }
    let nn = (n * n) as f64;
    u[0] = Complex64::new(mean[0] * nn, 0.0);
    v[0] = Complex64::new(mean[1] * nn, 0.0);
    let (f, imag) = VectorField2D::from_spectra(n, spec.domain_length(), [u, v]);
    (f, SynthesisReport { imag_residual: imag })
}

impl CoefficientPyramid2D {
    pub(crate) fn band(&self, f: Family) -> &Band {
        match f {
            Family::Scaling => &self.scaling,
            Family::Wavelet(j, t) => &self.wavelets[(j - self.j_min) as usize][t],
            Family::Finest => unreachable!("the finest band is not stored in a pyramid"),
        }
    }

    fn check_layout(&self, spec: &FrameSpec2D) -> Result<()> {
        let ok = self.grid_size == spec.grid_size()
            && self.j_min == spec.j_min()
            && self.j_max == spec.j_max()
            && self.scaling.size * spec.scaling_spacing() == spec.grid_size()
            && spec.levels().all(|j| {
                let l = &self.wavelets[(j - self.j_min) as usize];
                l.len() == spec.orientations(j) && l.iter().all(|b| b.size * spec.spacing(j) == spec.grid_size())
            });
        if ok {
            Ok(())
        } else {
            invalid("pyramid layout does not match frame")
        }
    }

    /// Band of level j, orientation t.
    pub fn wavelet(&self, j: i32, t: usize) -> &Band {
        &self.wavelets[(j - self.j_min) as usize][t]
    }

    /// All orientations of level j.
    pub fn wavelet_level(&self, j: i32) -> &[Band] {
        &self.wavelets[(j - self.j_min) as usize]
    }

    pub fn bands(&self) -> impl Iterator<Item = &Band> {
        std::iter::once(&self.scaling).chain(self.wavelets.iter().flatten())
    }

    fn bands_mut(&mut self) -> impl Iterator<Item = &mut Band> {
        std::iter::once(&mut self.scaling).chain(self.wavelets.iter_mut().flatten())
    }

    /// Σ |coefficient|² (the mean is not included).
    pub fn energy(&self) -> f64 {
        self.bands().map(Band::energy).sum()
    }

    /// Σ over nodes of |mean|².
    pub fn mean_energy(&self) -> f64 {
        (self.grid_size * self.grid_size) as f64 * (self.mean[0].powi(2) + self.mean[1].powi(2))
    }

    pub fn len(&self) -> usize {
        self.bands().map(|b| b.data.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Energy per orientation at level j.
    pub fn level_energy(&self, j: i32) -> Vec<f64> {
        self.wavelets[(j - self.j_min) as usize].iter().map(Band::energy).collect()
    }

    /// Copy with every wavelet level above `j` zeroed. Scaling
    /// coefficients and the mean are kept.
    pub fn truncated(&self, j: i32) -> Self {
        let mut out = self.clone();
        for (k, level) in out.wavelets.iter_mut().enumerate() {
            if self.j_min + k as i32 > j {
                level.iter_mut().flat_map(|b| b.data.iter_mut()).for_each(|c| *c = Complex64::new(0.0, 0.0));
            }
        }
        out
    }

    /// Copy keeping the `fraction` of coefficients with the largest modulus
    /// (ties broken by position) and zeroing the rest. Returns the number kept.
    pub fn keep_largest(&self, fraction: f64) -> (Self, usize) {
        let total = self.len();
        let keep = ((fraction.clamp(0.0, 1.0) * total as f64).round() as usize).min(total);
        let mut mags: Vec<(f64, usize)> =
            self.bands().flat_map(|b| b.data.iter()).map(|c| c.norm_sqr()).enumerate().map(|(i, m)| (m, i)).collect();
        mags.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        let mut kept = vec![false; total];
        for &(_, i) in mags.iter().take(keep) {
            kept[i] = true;
        }
        let mut out = self.clone();
        let mut idx = 0;
        for b in out.bands_mut() {
            for c in b.data.iter_mut() {
                if !kept[idx] {
                    *c = Complex64::new(0.0, 0.0);
                }
                idx += 1;
            }
        }
        (out, keep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{error_metrics, make_eigenfield, EigenfieldRecipe};
    use crate::windows::{make_angular_window_2d, FrameConfig, Parity};

    #[test]
    fn parseval_and_reconstruction() {
        let spec = FrameSpec2D::from_config(&FrameConfig::default_2d()).unwrap();
        let mut u = make_eigenfield(&EigenfieldRecipe::canonical(), 256).unwrap();
        u.u.iter_mut().for_each(|x| *x += 0.3);
        let pyr = analyze_2d(&u, &spec).unwrap();
        let ratio = (pyr.energy() + pyr.mean_energy()) / u.energy();
        assert!((ratio - 1.0).abs() < 1e-12, "{ratio}");
        let (back, rep) = synthesize_2d(&pyr, &spec).unwrap();
        assert!(error_metrics(&u, &back, 0).l2_relative < 1e-12);
        assert!(rep.imag_residual < 1e-12);
    }

    #[test]
    fn odd_windows_reconstruct() {
        let w = make_angular_window_2d(Parity::Odd, 3, 7, 1.5).unwrap();
        let spec = FrameSpec2D::uniform(64, 0, 2, w).unwrap();
        let u = make_eigenfield(&EigenfieldRecipe::single(3, 5, 1.0), 64).unwrap();
        let pyr = analyze_2d(&u, &spec).unwrap();
        assert!((pyr.energy() / u.energy() - 1.0).abs() < 1e-12);
        let (back, _) = synthesize_2d(&pyr, &spec).unwrap();
        assert!(error_metrics(&u, &back, 0).l2_relative < 1e-12);
    }

    #[test]
    fn keep_largest_counts() {
        let spec = FrameSpec2D::isotropic(32, 0, 1).unwrap();
        let u = make_eigenfield(&EigenfieldRecipe::single(3, 2, 1.0), 32).unwrap();
        let pyr = analyze_2d(&u, &spec).unwrap();
        let (k, kept) = pyr.keep_largest(0.1);
        assert_eq!(kept, (0.1 * pyr.len() as f64).round() as usize);
        assert!(k.bands().flat_map(|b| b.data.iter()).filter(|c| c.norm() > 0.0).count() <= kept);
        assert_eq!(pyr.truncated(1), pyr);
        assert!(pyr.truncated(-1).energy() <= pyr.energy());
    }
}
